//! The freest tensor product of a rank-3 matroid with a uniform matroid.
//!
//! The construction works in the extension `M~` of a simple rank-3 matroid
//! `M` that adds a point `e_P` for every pair `P` of disjoint lines and puts
//! `e_P` on both lines of `P`. `M~` is never materialised: the closure of an
//! independent set `A` of `M` in `M~` is `A` itself when `|A| ≤ 1`, the
//! extended line through `A` when `|A| = 2`, and everything when `|A| = 3`.
//! A set `⋃ A_i × {i}` is a basis of the product iff every `A_i` is
//! independent, `Σ|A_i| = 3k`, the `M~`-closures of any `k+1` of the `A_i`
//! have empty intersection, and any `n−k+1` of the `A_i` span `M`.

use crate::bitset::{self, card, elements, singleton, SetWord};
use crate::catalog::uniform;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::tensor::reduction::Reduction;

/// Basis-family size above which construction is refused.
const MAX_BASES: usize = 4_000_000;

/// Closure of an independent set of `M` inside `M~`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TildeClosure {
    Empty,
    Point(usize),
    /// Index into the line list.
    Line(usize),
    Full,
}

/// Line structure of a simple rank-3 matroid.
struct Lines {
    lines: Vec<SetWord>,
    /// `line_of[a][b]`: the line through points `a` and `b`.
    line_of: Vec<Vec<usize>>,
    has_disjoint: Vec<bool>,
}

impl Lines {
    fn new(m: &Matroid) -> Lines {
        let lines = m.flats_of_rank(2);
        let n = m.n();
        let mut line_of = vec![vec![usize::MAX; n]; n];
        for (i, &l) in lines.iter().enumerate() {
            for a in elements(l) {
                for b in elements(l) {
                    line_of[a][b] = i;
                }
            }
        }
        let has_disjoint = lines.iter().map(|&l| lines.iter().any(|&o| o & l == 0)).collect();
        Lines { lines, line_of, has_disjoint }
    }

    fn closure(&self, a: SetWord) -> TildeClosure {
        match card(a) {
            0 => TildeClosure::Empty,
            1 => TildeClosure::Point(a.trailing_zeros() as usize),
            2 => {
                let x = a.trailing_zeros() as usize;
                let y = (a & (a - 1)).trailing_zeros() as usize;
                TildeClosure::Line(self.line_of[x][y])
            }
            _ => TildeClosure::Full,
        }
    }

    /// Whether the closures have a common element of `M~`.
    fn meet(&self, cls: &[TildeClosure]) -> bool {
        let mut s_part = SetWord::MAX;
        let mut any_point = false;
        let mut distinct: Vec<usize> = Vec::new();
        for &c in cls {
            match c {
                TildeClosure::Empty => return false,
                TildeClosure::Full => {}
                TildeClosure::Point(x) => {
                    s_part &= singleton(x);
                    any_point = true;
                }
                TildeClosure::Line(l) => {
                    s_part &= self.lines[l];
                    if !distinct.contains(&l) {
                        distinct.push(l);
                    }
                }
            }
        }
        if s_part != 0 {
            return true;
        }
        // The new points: e_P lies on exactly the two lines of P.
        if any_point {
            return false;
        }
        match distinct.as_slice() {
            [l] => self.has_disjoint[*l],
            [a, b] => self.lines[*a] & self.lines[*b] == 0,
            _ => false,
        }
    }
}

/// Whether `basis`, read as the tuple `(A_1, …, A_n)` with `A_i` the `i`-th
/// column, meets the freest-family conditions for `M ⊗ U_{k,n}`.
pub fn satisfies_freest_conditions(m: &Matroid, k: usize, n: usize, basis: SetWord) -> bool {
    let lines = Lines::new(m);
    let parts: Vec<SetWord> = (0..n).map(|i| bitset::column(basis, i, m.n(), n)).collect();
    tuple_ok(m, &lines, &parts, k)
}

fn tuple_ok(m: &Matroid, lines: &Lines, parts: &[SetWord], k: usize) -> bool {
    let n = parts.len();
    if parts.iter().map(|&a| card(a) as usize).sum::<usize>() != 3 * k || !parts.iter().all(|&a| m.is_independent(a)) {
        return false;
    }
    let cls: Vec<TildeClosure> = parts.iter().map(|&a| lines.closure(a)).collect();
    for i in bitset::k_subsets(n, k + 1) {
        let sel: Vec<TildeClosure> = elements(i).map(|x| cls[x]).collect();
        if lines.meet(&sel) {
            return false;
        }
    }
    spans_all(m, parts, n - k + 1)
}

fn spans_all(m: &Matroid, parts: &[SetWord], size: usize) -> bool {
    bitset::k_subsets(parts.len(), size)
        .into_iter()
        .all(|j| m.rank(elements(j).fold(0, |acc, x| acc | parts[x])) == m.full_rank())
}

/// The freest member of `M ⊗ U_{k,n}` for a rank-3 matroid `M`, on the
/// row-major product ground `S × [n]`. Non-simple `M` is reduced to its
/// simplification and the result lifted back.
pub fn freest_rank3_uniform(m: &Matroid, k: usize, n: usize) -> Result<Matroid> {
    if m.full_rank() != 3 {
        return Err(Error::Precondition(format!("left factor has rank {}, expected 3", m.full_rank())));
    }
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("U_{{{k},{n}}} needs 1 ≤ k ≤ n")));
    }
    let total = m.n() * n;
    if total > bitset::MAX_GROUND {
        return Err(Error::SizeOverflow(total));
    }
    let u = uniform(k, n)?;
    if !m.is_simple() {
        let (si, left_map) = m.simplify();
        let simple = freest_rank3_uniform(&si, k, n)?;
        let red = Reduction { left: si, right: u.clone(), left_map, right_map: (0..n).map(Some).collect() };
        return Ok(red.lift(&simple)?.with_ground(m.ground().product(u.ground())?)?);
    }
    let lines = Lines::new(m);
    let indep: Vec<SetWord> = {
        let mut v: Vec<SetWord> = (0..=3).flat_map(|s| bitset::k_subsets(m.n(), s)).filter(|&a| m.is_independent(a)).collect();
        bitset::sort_lex(&mut v);
        v
    };
    let cls: Vec<TildeClosure> = indep.iter().map(|&a| lines.closure(a)).collect();
    let circuits_k: Vec<Vec<SetWord>> = (0..n)
        .map(|last| {
            // (k+1)-subsets whose largest index is `last`.
            bitset::k_subsets(n, k + 1).into_iter().filter(|&i| 63 - i.leading_zeros() as usize == last).collect()
        })
        .collect();

    let mut bases = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut parts: Vec<SetWord> = Vec::with_capacity(n);
    search(
        &mut Ctx { m, lines: &lines, indep: &indep, cls: &cls, circuits_k: &circuits_k, k, n },
        0,
        0,
        &mut chosen,
        &mut parts,
        &mut bases,
    )?;
    if bases.is_empty() {
        return Err(Error::Certification("freest family is empty".into()));
    }
    let ground = m.ground().product(u.ground())?;
    Ok(Matroid::from_bases(ground, 3 * k, bases)?.with_name(format!("freest({},uniform:{k},{n})", m.name().unwrap_or("M"))))
}

struct Ctx<'a> {
    m: &'a Matroid,
    lines: &'a Lines,
    indep: &'a [SetWord],
    cls: &'a [TildeClosure],
    circuits_k: &'a [Vec<SetWord>],
    k: usize,
    n: usize,
}

fn search(
    cx: &mut Ctx,
    pos: usize,
    used: usize,
    chosen: &mut Vec<usize>,
    parts: &mut Vec<SetWord>,
    out: &mut Vec<SetWord>,
) -> Result<()> {
    let target = 3 * cx.k;
    if pos == cx.n {
        if used == target && spans_all(cx.m, parts, cx.n - cx.k + 1) {
            let b = parts.iter().enumerate().fold(0, |acc, (i, &a)| acc | bitset::product(a, singleton(i), cx.n));
            out.push(b);
            if out.len() > MAX_BASES {
                return Err(Error::Precondition(format!("freest family exceeds {MAX_BASES} bases")));
            }
        }
        return Ok(());
    }
    let remaining = cx.n - pos - 1;
    for idx in 0..cx.indep.len() {
        let a = cx.indep[idx];
        let size = card(a) as usize;
        if used + size > target || used + size + 3 * remaining < target {
            continue;
        }
        chosen.push(idx);
        let ok = cx.circuits_k[pos].iter().all(|&i| {
            let sel: Vec<TildeClosure> = elements(i).map(|x| cx.cls[chosen[x]]).collect();
            !cx.lines.meet(&sel)
        });
        if ok {
            parts.push(a);
            search(cx, pos + 1, used + size, chosen, parts, out)?;
            parts.pop();
        }
        chosen.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogKey};
    use crate::tensor::check::is_tensor_product;

    #[test]
    fn u33_gives_three_copies_of_u23() {
        let p = freest_rank3_uniform(&uniform(3, 3).unwrap(), 2, 3).unwrap();
        let u23 = uniform(2, 3).unwrap();
        let sum = u23.direct_sum(&u23).unwrap().direct_sum(&u23).unwrap();
        assert!(p.is_isomorphic(&sum).is_some());
    }

    #[test]
    fn fano_times_u23_is_a_product() {
        let f = build(CatalogKey::Fano).unwrap();
        let u = uniform(2, 3).unwrap();
        let p = freest_rank3_uniform(&f, 2, 3).unwrap();
        assert_eq!(p.full_rank(), 6);
        assert!(is_tensor_product(&p, &f, &u).unwrap().is_product());
        assert!(p.bases().iter().all(|&b| satisfies_freest_conditions(&f, 2, 3, b)));
    }

    #[test]
    fn parallel_elements_are_lifted() {
        let u = uniform(2, 3).unwrap();
        let m = uniform(3, 4).unwrap();
        // Add a parallel copy of element 0 as element 4.
        let mut bases: Vec<SetWord> = m.bases().to_vec();
        for &b in m.bases() {
            if b & 1 != 0 {
                bases.push(b & !1 | 1 << 4);
            }
        }
        let m5 = Matroid::from_bases(crate::matroid::GroundSet::new(5).unwrap(), 3, bases).unwrap();
        let p = freest_rank3_uniform(&m5, 2, 3).unwrap();
        assert!(is_tensor_product(&p, &m5, &u).unwrap().is_product());
    }
}
