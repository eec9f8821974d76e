//! Seed families for the lattice LP: the sets on which the rank arguments
//! behind Ingleton's inequality (with `U_{2,3}` as left factor) and `new_ineq`
//! (with `M(K_4)` as left factor) operate.
//!
//! Each argument is a sequence of steps `P → P ∪ Q` where `Q = X' × Y` is a
//! rectangle, `X × Y ⊆ P ∩ Q` and `φ(P ∪ Q) ≤ φ(P) + φ(Q) − φ(X × Y)`. The
//! seeds record `P`, `Q`, `X × Y`, `P ∩ Q` and `P ∪ Q` for every step, so
//! the derivation lives inside the seed family without any closure.

use crate::bitset::{self, singleton, SetWord};

struct Steps {
    n_right: usize,
    seeds: Vec<SetWord>,
}

impl Steps {
    fn new(n_right: usize) -> Self {
        Steps { n_right, seeds: Vec::new() }
    }

    fn rect(&self, x1: SetWord, x2: SetWord) -> SetWord {
        bitset::product(x1, x2, self.n_right)
    }

    fn push(&mut self, w: SetWord) -> SetWord {
        self.seeds.push(w);
        w
    }

    /// One step with rectangle `q = big × y` and sub-rectangle `small × y0`.
    fn step(&mut self, p: SetWord, big: SetWord, y: SetWord, small: SetWord, y0: SetWord) -> SetWord {
        let q = self.rect(big, y);
        let xy = self.rect(small, y0);
        debug_assert!(xy & !(p & q) == 0, "sub-rectangle must lie in P ∩ Q");
        self.seeds.extend([p, q, xy, p & q]);
        self.push(p | q)
    }

    /// Records `parts` and their prefix unions, for the bound
    /// `φ(⋃ parts) ≤ Σ φ(part)`.
    fn union_of(&mut self, parts: &[SetWord]) -> SetWord {
        let mut acc = 0;
        for &q in parts {
            self.seeds.extend([q, acc & q]);
            acc |= q;
            self.seeds.push(acc);
        }
        acc
    }

    /// Adds `{e} × extra` to row `e` of `p`, paying `φ2(row ∪ extra) − φ2(row)`.
    fn widen_row(&mut self, p: SetWord, e: usize, extra: SetWord) -> SetWord {
        let row = bitset::row(p, e, self.n_right);
        self.step(p, singleton(e), row | extra, singleton(e), row)
    }

    /// Adds `new × y` to `p` when `x × y ⊆ p`, paying `φ1`'s rank increase.
    fn spread(&mut self, p: SetWord, x: SetWord, new: SetWord, y: SetWord) -> SetWord {
        self.step(p, x | new, y, x, y)
    }
}

/// Seeds for `U_{2,3} ⊗ φ2` with variables `A, B, C, D ⊆ S2`; the left
/// factor's elements `u, v, w` are rows 0, 1, 2.
pub fn ingleton_seeds(n_right: usize, [a, b, c, d]: [SetWord; 4]) -> Vec<SetWord> {
    let mut s = Steps::new(n_right);
    let (u, v, w, all) = (1, 2, 4, 7);
    let top = a | b | c | d;
    let x = s.push(s.rect(all, a) | s.rect(u, b) | s.rect(v, c) | s.rect(w, d));
    let y = s.push(s.rect(u, a) | s.rect(all, b) | s.rect(v, c) | s.rect(w, d));

    // Upper bounds on φ(X) and φ(Y).
    let p = s.union_of(&[s.rect(u, a | b), s.rect(v, a | c)]);
    let p = s.spread(p, u | v, w, a);
    s.widen_row(p, 2, d);
    let p = s.union_of(&[s.rect(u, a | b), s.rect(v, b | c)]);
    let p = s.spread(p, u | v, w, b);
    s.widen_row(p, 2, d);

    // Lower bound on φ(X ∩ Y).
    let p = s.push(x & y);
    let p = s.widen_row(p, 0, top);
    let p = s.spread(p, u | w, v, d);
    let p = s.spread(p, u | v, w, c);
    let p = s.widen_row(p, 1, top);
    s.spread(p, u | v, w, top);

    // Lower bound on φ(X ∪ Y).
    let p = s.push(x | y);
    let p = s.widen_row(p, 1, top);
    let p = s.widen_row(p, 2, top);
    s.spread(p, v | w, u, top);
    s.seeds
}

/// Seeds for `M(K_4) ⊗ φ2` with `sets = [A1, A2, A3, B1, B2, B3, C1, C2, C3, D]`.
/// Rows 0..5 are `e1..e6` with triangles `e1e2e6, e1e3e5, e2e3e4, e4e5e6`.
pub fn new_ineq_seeds(n_right: usize, sets: [SetWord; 10]) -> Vec<SetWord> {
    let mut s = Steps::new(n_right);
    let e = |i: usize| singleton(i - 1);
    let all = bitset::full(6);
    let a = |i: usize| sets[(i - 1) % 3];
    let b = |i: usize| sets[3 + (i - 1) % 3];
    let c = |i: usize| sets[6 + (i - 1) % 3];
    let d = sets[9];
    let top = sets.iter().fold(0, |acc, &x| acc | x);

    let diag = |s: &Steps, f: &dyn Fn(usize) -> SetWord| (1..=3).fold(0, |acc, i| acc | s.rect(e(i), c(i)) | s.rect(e(i + 3), f(i)));
    let x = diag(&s, &a);
    let y = diag(&s, &b);
    s.seeds.extend([x, y, x & y, x | y]);

    // Upper bounds on φ(X) and φ(Y): the same argument with A and B swapped.
    for (p_of, q_of) in [(&a as &dyn Fn(usize) -> SetWord, &b as &dyn Fn(usize) -> SetWord), (&b, &a)] {
        let head = |s: &Steps, f: &dyn Fn(usize) -> SetWord| -> Vec<SetWord> {
            (1..=3).map(|i| s.rect(e(i), f(i + 1) | f(i + 2) | c(i))).collect()
        };
        // H: the three head rows, then e4, e5, e6 spread along the triangles.
        let rows = head(&s, p_of);
        let h = s.union_of(&rows);
        let h = s.spread(h, e(2) | e(3), e(4), p_of(1));
        let h = s.spread(h, e(1) | e(3), e(5), p_of(2));
        let h = s.spread(h, e(1) | e(2), e(6), p_of(3));
        // J, then J', then I.
        let mut rows = head(&s, q_of);
        rows.extend([s.rect(e(4), d), s.rect(e(5), d)]);
        let j = s.union_of(&rows);
        let j = s.spread(j, e(2) | e(3), e(4), q_of(1));
        let j = s.spread(j, e(1) | e(3), e(5), q_of(2));
        let j = s.spread(j, e(1) | e(2), e(6), q_of(3));
        let mut i_set = s.spread(j, e(4) | e(5), e(6), d);
        for k in 1..=3 {
            i_set = s.widen_row(i_set, k + 2, p_of(k));
        }
        s.seeds.extend([h & i_set]);
        // Lower bound on φ(H ∪ I) through the full rows e1, e2, e3.
        let mut p = s.push(h | i_set);
        for k in 0..3 {
            p = s.widen_row(p, k, top);
        }
        s.push(s.rect(e(1) | e(2) | e(3), top));
    }

    // φ(X ∩ Y) splits over the basis {e1, e2, e3}.
    let w = x & y;
    for k in 1..=3 {
        let rows = (1..=k).fold(0, |acc, i| acc | e(i));
        s.push(s.rect(rows, top));
        s.push(s.rect(e(k), top));
        s.push(w | s.rect(rows, top));
    }

    // Lower bound on φ(X ∪ Y).
    let p = x | y;
    let p = s.widen_row(p, 1, c(1));
    let p = s.spread(p, e(1) | e(2), e(6), c(1));
    let p = s.widen_row(p, 5, top);
    let p = s.spread(p, e(4) | e(6), e(5), a(1) | b(1));
    let p = s.widen_row(p, 4, top);
    let p = s.spread(p, e(1) | e(5) | e(6), all & !(e(1) | e(5) | e(6)), c(1));
    let p = s.spread(p, e(2) | e(5) | e(6), all & !(e(2) | e(5) | e(6)), c(2));
    let p = s.spread(p, e(3) | e(5) | e(6), all & !(e(3) | e(5) | e(6)), c(3));
    let p = s.spread(p, e(5) | e(6), e(4), top);
    let p = s.widen_row(p, 0, top);
    s.spread(p, e(1) | e(4) | e(5), all & !(e(1) | e(4) | e(5)), top);
    s.seeds
}
