//! Backtracking enumeration of tensor products.
//!
//! Variables are the `r1·r2`-subsets of `S1 × S2` that respect every rank cap
//! known in advance: a union of nested rectangles `(X1×Y1) ∪ (X2×Y2)` with
//! `X1 ⊆ X2` and `Y2 ⊆ Y1` has rank `r1(X1)r2(Y1) + r1(X2)r2(Y2) − r1(X1)r2(Y2)`
//! in every tensor product, so a basis meets it in at most that many elements.
//! Each variable is labelled basis (IN) or non-basis (OUT). Propagation keeps
//! the basis exchange axiom and the row/column cover clauses consistent; a
//! leaf is exactly a tensor product (caps give `≤` on every rectangle, cover
//! clauses give `≥` on row and column rectangles).

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::bitset::{self, card, elements, singleton, SetWord};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::tensor::check::is_tensor_product;
use crate::tensor::{SearchBudget, StopReason};

const NONE: u32 = u32::MAX;
/// Refuse candidate spaces larger than this many `r`-subsets.
const MAX_SUBSETS: u64 = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: SearchBudget,
    /// Worker cap; `None` uses the rayon default.
    pub threads: Option<usize>,
    /// The tree is split into subtrees at this many decisions; the split and
    /// the per-subtree node budgets do not depend on `threads`.
    pub split_depth: u32,
    /// Stop once this many products are recorded (the result is then incomplete).
    pub max_products: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: SearchBudget::default(), threads: None, split_depth: 3, max_products: None }
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Distinct products, sorted by their basis lists.
    pub products: Vec<Matroid>,
    /// True iff the whole tree was exhausted.
    pub complete: bool,
    pub nodes: u64,
    pub stop: Option<StopReason>,
    /// Number of candidate bases after the rank caps.
    pub candidates: usize,
}

/// Enumerates `M1 ⊗ M2` under the default options with the given budget.
pub fn enumerate_tensor_products(m1: &Matroid, m2: &Matroid, budget: SearchBudget) -> Result<Enumeration> {
    enumerate_with(m1, m2, &SearchOptions { budget, ..SearchOptions::default() })
}

pub fn enumerate_with(m1: &Matroid, m2: &Matroid, opts: &SearchOptions) -> Result<Enumeration> {
    let problem = Arc::new(Problem::new(m1, m2)?);
    let deadline = opts.budget.time.map(|t| Instant::now() + t);

    let mut root = State::new(&problem);
    if !root.propagate(&problem) {
        return Ok(Enumeration { products: vec![], complete: true, nodes: 0, stop: None, candidates: problem.cands.len() });
    }
    // Canonical frontier: IN branch before OUT branch at each split level.
    let mut frontier = vec![root];
    let mut split_nodes = 0u64;
    for _ in 0..opts.split_depth {
        let mut next = Vec::new();
        for st in frontier {
            match st.first_unknown() {
                None => next.push(st),
                Some(v) => {
                    for val in [IN, OUT] {
                        split_nodes += 1;
                        let mut child = st.clone();
                        if child.assign(v, val) && child.propagate(&problem) {
                            next.push(child);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    let per_tree = opts.budget.nodes.saturating_sub(split_nodes) / (frontier.len().max(1) as u64);

    // Subtrees run in canonical batches; with a product cap, the answer is the
    // first `cap` leaves in subtree order, which no batch size can change.
    let batch = match opts.max_products {
        None => frontier.len().max(1),
        Some(_) => opts.threads.unwrap_or_else(rayon::current_num_threads).max(1),
    };
    let pool = match opts.threads {
        Some(t) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Precondition(e.to_string()))?,
        ),
        None => None,
    };
    let mut bases_lists: Vec<Vec<SetWord>> = Vec::new();
    let mut nodes = split_nodes;
    let mut stop = None;
    let mut pending = frontier.into_iter().peekable();
    while pending.peek().is_some() {
        let chunk: Vec<State> = pending.by_ref().take(batch).collect();
        let run = || -> Vec<SubResult> {
            chunk
                .into_par_iter()
                .map(|st| dfs(&problem, st, per_tree, deadline, opts.max_products))
                .collect()
        };
        let results = match &pool {
            Some(p) => p.install(run),
            None => run(),
        };
        let mut capped = false;
        for r in results {
            nodes += r.nodes;
            if r.stop != Some(StopReason::Products) {
                stop = stop.or(r.stop);
            }
            bases_lists.extend(r.leaves);
            if opts.max_products.is_some_and(|cap| bases_lists.len() >= cap) {
                capped = true;
                break;
            }
        }
        if capped {
            bases_lists.truncate(opts.max_products.unwrap_or(usize::MAX));
            stop = stop.or(Some(StopReason::Products));
            break;
        }
    }
    bases_lists.sort();
    bases_lists.dedup();
    let ground = m1.ground().product(m2.ground())?;
    let mut products = Vec::with_capacity(bases_lists.len());
    for bases in bases_lists {
        let p = Matroid::from_bases(ground.clone(), problem.r, bases)?;
        if let Some(v) = is_tensor_product(&p, m1, m2)?.into_result().err() {
            return Err(Error::Certification(format!("search leaf is not a tensor product: {v}")));
        }
        products.push(p);
    }
    Ok(Enumeration { products, complete: stop.is_none(), nodes, stop, candidates: problem.cands.len() })
}

struct Problem {
    r: usize,
    n: usize,
    words: usize,
    /// Candidate bases, in canonical lex order.
    cands: Vec<SetWord>,
    /// `col[x]`: candidates containing element `x`, as a bit row of `words` words.
    col: Vec<u64>,
    /// `nbr[(c·r + i)·n + f]`: index of `c − e_i + f`, or `NONE`.
    nbr: Vec<u32>,
    /// Cover clauses: some basis must be among these candidates.
    clauses: Vec<Vec<u64>>,
}

impl Problem {
    fn new(m1: &Matroid, m2: &Matroid) -> Result<Problem> {
        let (n1, n2) = (m1.n(), m2.n());
        let n = n1 * n2;
        if n > bitset::MAX_GROUND {
            return Err(Error::SizeOverflow(n));
        }
        let r = m1.full_rank() * m2.full_rank();
        if binomial(n as u64, r as u64) > MAX_SUBSETS {
            return Err(Error::Precondition(format!(
                "C({n},{r}) candidate bases exceed the search limit of {MAX_SUBSETS}"
            )));
        }
        let caps = cross_caps(m1, m2, r);
        let cands: Vec<SetWord> = bitset::k_subsets(n, r)
            .into_iter()
            .filter(|&b| caps.iter().all(|&(f, k)| card(b & f) as usize <= k))
            .collect();
        let index: HashMap<SetWord, u32> = cands.iter().enumerate().map(|(i, &b)| (b, i as u32)).collect();
        let words = cands.len().div_ceil(64).max(1);
        let mut col = vec![0u64; n * words];
        for (i, &b) in cands.iter().enumerate() {
            for x in elements(b) {
                col[x * words + i / 64] |= 1 << (i % 64);
            }
        }
        let mut nbr = vec![NONE; cands.len() * r * n];
        for (c, &b) in cands.iter().enumerate() {
            for (i, e) in elements(b).enumerate() {
                for f in elements(bitset::full(n) & !b) {
                    let swapped = b & !singleton(e) | singleton(f);
                    if let Some(&j) = index.get(&swapped) {
                        nbr[(c * r + i) * n + f] = j;
                    }
                }
            }
        }
        // ^{e1}B2 and B1^{e2} must be independent for non-loop e1, e2 and bases B1, B2.
        let mut clauses = Vec::new();
        let mut push_clause = |target: SetWord| {
            let mut mask = vec![0u64; words];
            for (i, &b) in cands.iter().enumerate() {
                if target & !b == 0 {
                    mask[i / 64] |= 1 << (i % 64);
                }
            }
            clauses.push(mask);
        };
        for e1 in elements(m1.full_set() & !m1.loops()) {
            for &b2 in m2.bases() {
                push_clause(bitset::product(singleton(e1), b2, n2));
            }
        }
        for e2 in elements(m2.full_set() & !m2.loops()) {
            for &b1 in m1.bases() {
                push_clause(bitset::product(b1, singleton(e2), n2));
            }
        }
        Ok(Problem { r, n, words, cands, col, nbr, clauses })
    }

    fn col(&self, x: usize) -> &[u64] {
        &self.col[x * self.words..(x + 1) * self.words]
    }
}

/// Nontrivial rank caps from nested rectangle unions over pairs of flats.
fn cross_caps(m1: &Matroid, m2: &Matroid, r: usize) -> Vec<(SetWord, usize)> {
    let n2 = m2.n();
    let f1: Vec<SetWord> = m1.flats().concat();
    let f2: Vec<SetWord> = m2.flats().concat();
    let mut caps: HashMap<SetWord, usize> = HashMap::new();
    for &x1 in &f1 {
        for &x2 in f1.iter().filter(|&&x2| x1 & !x2 == 0) {
            for &y1 in &f2 {
                for &y2 in f2.iter().filter(|&&y2| y2 & !y1 == 0) {
                    let set = bitset::product(x1, y1, n2) | bitset::product(x2, y2, n2);
                    let k = m1.rank(x1) * m2.rank(y1) + m1.rank(x2) * m2.rank(y2) - m1.rank(x1) * m2.rank(y2);
                    if k < (card(set) as usize).min(r) {
                        caps.entry(set).and_modify(|v| *v = (*v).min(k)).or_insert(k);
                    }
                }
            }
        }
    }
    let mut out: Vec<(SetWord, usize)> = caps.into_iter().collect();
    out.sort_unstable_by(|a, b| bitset::lex_cmp(a.0, b.0));
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

const UNKNOWN: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

#[derive(Clone)]
struct State {
    status: Vec<u8>,
    in_mask: Vec<u64>,
    unk_mask: Vec<u64>,
    trail: Vec<u32>,
    queue: Vec<u32>,
}

impl State {
    fn new(p: &Problem) -> State {
        let c = p.cands.len();
        let mut unk_mask = vec![0u64; p.words];
        for i in 0..c {
            unk_mask[i / 64] |= 1 << (i % 64);
        }
        State { status: vec![UNKNOWN; c], in_mask: vec![0; p.words], unk_mask, trail: Vec::new(), queue: Vec::new() }
    }

    fn first_unknown(&self) -> Option<u32> {
        self.unk_mask
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| (i * 64 + w.trailing_zeros() as usize) as u32)
    }

    /// Records `v := val`; false on a contradiction with an earlier value.
    fn assign(&mut self, v: u32, val: u8) -> bool {
        let i = v as usize;
        match self.status[i] {
            UNKNOWN => {
                self.status[i] = val;
                self.unk_mask[i / 64] &= !(1 << (i % 64));
                if val == IN {
                    self.in_mask[i / 64] |= 1 << (i % 64);
                }
                self.trail.push(v);
                self.queue.push(v);
                true
            }
            s => s == val,
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap() as usize;
            self.status[v] = UNKNOWN;
            self.unk_mask[v / 64] |= 1 << (v % 64);
            self.in_mask[v / 64] &= !(1 << (v % 64));
        }
        self.queue.clear();
    }

    /// Runs propagation to a fixpoint; false on conflict.
    fn propagate(&mut self, p: &Problem) -> bool {
        loop {
            while let Some(v) = self.queue.pop() {
                let c = v as usize;
                let b = p.cands[c];
                if self.status[c] == IN {
                    for (i, e) in elements(b).enumerate() {
                        if !self.eval_pair(p, c, i, e) {
                            return false;
                        }
                    }
                } else {
                    // c = B1 − e + f for B1 = c − f + e; those pairs lost a neighbour.
                    for (i, _f) in elements(b).enumerate() {
                        for e in elements(bitset::full(p.n) & !b) {
                            let b1 = p.nbr[(c * p.r + i) * p.n + e];
                            if b1 != NONE && self.status[b1 as usize] == IN {
                                let pos = elements(p.cands[b1 as usize]).position(|x| x == e).unwrap();
                                if !self.eval_pair(p, b1 as usize, pos, e) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
            match self.check_clauses(p) {
                None => return false,
                Some(true) => continue,
                Some(false) => return true,
            }
        }
    }

    /// Cover clauses; `Some(true)` if something was forced.
    fn check_clauses(&mut self, p: &Problem) -> Option<bool> {
        let mut forced = false;
        for mask in &p.clauses {
            if mask.iter().zip(&self.in_mask).any(|(m, i)| m & i != 0) {
                continue;
            }
            let mut only = None;
            let mut count = 0;
            for (w, (m, u)) in mask.iter().zip(&self.unk_mask).enumerate() {
                let hits = m & u;
                if hits != 0 {
                    count += hits.count_ones();
                    only = Some((w * 64 + hits.trailing_zeros() as usize) as u32);
                    if count > 1 {
                        break;
                    }
                }
            }
            match (count, only) {
                (0, _) => return None,
                (1, Some(v)) => {
                    if !self.assign(v, IN) {
                        return None;
                    }
                    forced = true;
                }
                _ => {}
            }
        }
        Some(forced)
    }

    /// Exchange for basis `B1 = cands[c]` and its `i`-th element `e`: every
    /// basis must meet `T = {e} ∪ {f : B1 − e + f is a basis}`.
    fn eval_pair(&mut self, p: &Problem, c: usize, i: usize, e: usize) -> bool {
        let b1 = p.cands[c];
        let base = (c * p.r + i) * p.n;
        let (mut t_all, mut t_in, mut t_unk) = (singleton(e), singleton(e), 0u64);
        for f in elements(bitset::full(p.n) & !b1) {
            let j = p.nbr[base + f];
            if j == NONE {
                continue;
            }
            match self.status[j as usize] {
                IN => {
                    t_all |= singleton(f);
                    t_in |= singleton(f);
                }
                UNKNOWN => {
                    t_all |= singleton(f);
                    t_unk |= singleton(f);
                }
                _ => {}
            }
        }
        let mut force_out = Vec::new();
        let mut needy = Vec::new();
        for w in 0..p.words {
            let hit_all = elements(t_all).fold(0u64, |acc, x| acc | p.col(x)[w]);
            if self.in_mask[w] & !hit_all != 0 {
                return false;
            }
            let mut out = self.unk_mask[w] & !hit_all;
            while out != 0 {
                force_out.push((w * 64 + out.trailing_zeros() as usize) as u32);
                out &= out - 1;
            }
            let hit_in = elements(t_in).fold(0u64, |acc, x| acc | p.col(x)[w]);
            let mut need = self.in_mask[w] & !hit_in;
            while need != 0 {
                needy.push(w * 64 + need.trailing_zeros() as usize);
                need &= need - 1;
            }
        }
        for v in force_out {
            if !self.assign(v, OUT) {
                return false;
            }
        }
        // A basis reaching T only through one undecided swap forces that swap.
        for b2 in needy {
            let inter = p.cands[b2] & t_unk;
            if card(inter) == 1 {
                let f = inter.trailing_zeros() as usize;
                if !self.assign(p.nbr[base + f], IN) {
                    return false;
                }
            }
        }
        true
    }
}

struct SubResult {
    leaves: Vec<Vec<SetWord>>,
    nodes: u64,
    stop: Option<StopReason>,
}

fn dfs(p: &Problem, mut st: State, budget: u64, deadline: Option<Instant>, max: Option<usize>) -> SubResult {
    let mut leaves = Vec::new();
    let mut nodes = 0u64;
    // (trail mark, variable, OUT branch already taken)
    let mut stack: Vec<(usize, u32, bool)> = Vec::new();
    let leaf = |st: &State| -> Vec<SetWord> {
        (0..p.cands.len()).filter(|&i| st.status[i] == IN).map(|i| p.cands[i]).collect()
    };
    let mut descend = true;
    loop {
        if descend {
            match st.first_unknown() {
                None => {
                    leaves.push(leaf(&st));
                    if max.is_some_and(|m| leaves.len() >= m) {
                        return SubResult { leaves, nodes, stop: Some(StopReason::Products) };
                    }
                }
                Some(v) => {
                    if nodes >= budget {
                        return SubResult { leaves, nodes, stop: Some(StopReason::Nodes) };
                    }
                    if nodes % 1024 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                        return SubResult { leaves, nodes, stop: Some(StopReason::Time) };
                    }
                    nodes += 1;
                    stack.push((st.trail.len(), v, false));
                    if st.assign(v, IN) && st.propagate(p) {
                        continue;
                    }
                }
            }
        }
        // Backtrack to the deepest frame with an untried OUT branch.
        descend = false;
        while let Some((mark, v, tried)) = stack.pop() {
            st.undo_to(mark);
            if !tried {
                nodes += 1;
                stack.push((mark, v, true));
                if st.assign(v, OUT) && st.propagate(p) {
                    descend = true;
                    break;
                }
            }
        }
        if !descend {
            return SubResult { leaves, nodes, stop: None };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, uniform, CatalogKey};

    #[test]
    fn u23_square_is_unique_cographic_k33() {
        let u = uniform(2, 3).unwrap();
        let e = enumerate_tensor_products(&u, &u, SearchBudget::nodes(1_000_000)).unwrap();
        assert!(e.complete);
        assert_eq!(e.products.len(), 1);
        assert_eq!(e.products[0].bases().len(), 81);
        assert!(e.products[0].is_isomorphic(&build(CatalogKey::CographicK33).unwrap()).is_some());
    }

    #[test]
    fn rank_one_factor_has_products() {
        let e = enumerate_tensor_products(&uniform(1, 2).unwrap(), &uniform(2, 3).unwrap(), SearchBudget::nodes(100_000))
            .unwrap();
        assert!(!e.products.is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 4), 126);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
