//! One-step modular extensions of matroids: the witness check, extraction
//! from a tensor product with `U_{2,3}`, and bounded search.
//!
//! An extension step for `(A, B)` is a matroid `M'` on `S' ⊇ S` with
//! `M'|S = M` and a set `Z ⊆ S'` with `r'(A ∪ Z) = r(A)`, `r'(B ∪ Z) = r(B)`
//! and `r'(Z) = r(A) + r(B) − r(A ∪ B)`. New elements come after `S`.

use std::cell::Cell;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::bitset::{self, card, elements, full, singleton, SetWord};
use crate::catalog::uniform;
use crate::error::{input, Error, Result};
use crate::matroid::{GroundSet, Matroid};
use crate::tensor::TensorCandidate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub base: Matroid,
    /// Matroid on `S'`; its first `|S|` elements are `S`.
    pub extended: Matroid,
    pub z: SetWord,
    pub pair: (SetWord, SetWord),
}

/// The first witness condition that fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionFailure {
    /// `A` or `B` leaves `S`, or `Z` leaves `S'`.
    Ground,
    /// `M'|S ≠ M`.
    Restriction,
    /// `r'(A ∪ Z) ≠ r(A)`.
    AUnionZ,
    /// `r'(B ∪ Z) ≠ r(B)`.
    BUnionZ,
    /// `r'(Z) ≠ r(A) + r(B) − r(A ∪ B)`.
    ZRank,
    /// `|S' \ S| > r(S)`.
    TooManyNew,
    /// `S' \ S` is dependent in `M'`.
    NewDependent,
    /// `r'(S') ≠ r(S)`.
    FullRank,
}

impl fmt::Display for ExtensionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExtensionFailure::Ground => "sets leave their ground",
            ExtensionFailure::Restriction => "extended matroid does not restrict to the base",
            ExtensionFailure::AUnionZ => "r'(A ∪ Z) differs from r(A)",
            ExtensionFailure::BUnionZ => "r'(B ∪ Z) differs from r(B)",
            ExtensionFailure::ZRank => "r'(Z) differs from r(A) + r(B) − r(A ∪ B)",
            ExtensionFailure::TooManyNew => "more new elements than r(S)",
            ExtensionFailure::NewDependent => "new elements are dependent",
            ExtensionFailure::FullRank => "extension changes the rank of the ground set",
        };
        f.write_str(s)
    }
}

/// `r(A) + r(B) − r(A ∪ B)`.
pub fn modular_defect(m: &Matroid, a: SetWord, b: SetWord) -> usize {
    m.rank(a) + m.rank(b) - m.rank(a | b)
}

pub fn verify_extension(w: &ExtensionWitness) -> std::result::Result<(), ExtensionFailure> {
    let (m, x) = (&w.base, &w.extended);
    let (a, b) = w.pair;
    let s = m.full_set();
    if x.n() < m.n() || (a | b) & !s != 0 || w.z & !x.full_set() != 0 {
        return Err(ExtensionFailure::Ground);
    }
    if x.restrict(s).map_or(true, |r| &r != m) {
        return Err(ExtensionFailure::Restriction);
    }
    if x.rank(a | w.z) != m.rank(a) {
        return Err(ExtensionFailure::AUnionZ);
    }
    if x.rank(b | w.z) != m.rank(b) {
        return Err(ExtensionFailure::BUnionZ);
    }
    if x.rank(w.z) != modular_defect(m, a, b) {
        return Err(ExtensionFailure::ZRank);
    }
    let new = x.full_set() & !s;
    if card(new) as usize > m.full_rank() {
        return Err(ExtensionFailure::TooManyNew);
    }
    if !x.is_independent(new) {
        return Err(ExtensionFailure::NewDependent);
    }
    if x.full_rank() != m.full_rank() {
        return Err(ExtensionFailure::FullRank);
    }
    Ok(())
}

/// Greedily extends `start` by elements of `x` to a maximal independent set.
fn extend_greedy(m: &Matroid, start: SetWord, x: SetWord) -> SetWord {
    let mut acc = start;
    for e in elements(x & !start) {
        if m.is_independent(acc | singleton(e)) {
            acc |= singleton(e);
        }
    }
    acc
}

/// The extension read off a tensor product `N ∈ M ⊗ U_{2,3}` with right
/// elements `u, v, w`: `N' = N/(A0^v ∪ B0^w) | (S^u ∪ C^v)` and `Z = C^v`,
/// where `B0` spans `B`, `A0 ∪ B0` spans `A ∪ B` and `A0 ∪ C` spans `A`,
/// all chosen lexicographically least.
pub fn extension_from_tensor(n: &TensorCandidate, a: SetWord, b: SetWord) -> Result<ExtensionWitness> {
    let m = n.left();
    if n.right() != &uniform(2, 3)? {
        return Err(Error::Precondition("the right factor must be U_{2,3}".into()));
    }
    if (a | b) & !m.full_set() != 0 {
        return input("A and B must be subsets of the left ground");
    }
    let (u, v, w) = (singleton(0), singleton(1), singleton(2));
    let b0 = m.max_independent_in(b);
    let a0 = extend_greedy(m, b0, a) & !b0;
    let c = extend_greedy(m, a0, a) & !a0;
    let con = bitset::product(a0, v, 3) | bitset::product(b0, w, 3);
    let keep = bitset::product(m.full_set(), u, 3) | bitset::product(c, v, 3);
    let p = n.matroid();
    let minor = p.minor(p.full_set() & !(keep | con), con)?;
    // The minor lists survivors by product index; move S^u first, then C^v.
    let survivors: Vec<usize> = elements(keep).collect();
    let n_left = m.n();
    let mut next_new = n_left;
    let perm: Vec<usize> = survivors
        .iter()
        .map(|&idx| {
            if idx % 3 == 0 {
                idx / 3
            } else {
                next_new += 1;
                next_new - 1
            }
        })
        .collect();
    let mut labels: Vec<String> = (0..n_left).map(|i| m.ground().label(i)).collect();
    labels.extend(elements(c).map(|i| format!("{}'", m.ground().label(i))));
    let extended = minor.permute(&perm)?.with_ground(GroundSet::labelled(labels)?)?;
    let z = full(next_new) & !full(n_left);
    let witness = ExtensionWitness { base: m.clone(), extended, z, pair: (a, b) };
    verify_extension(&witness).map_err(|f| Error::Certification(format!("extracted extension: {f}")))?;
    Ok(witness)
}

/// Node counter shared by a search and its subsearches.
#[derive(Debug)]
struct Counter {
    used: Cell<u64>,
    limit: u64,
}

impl Counter {
    fn new(limit: u64) -> Self {
        Counter { used: Cell::new(0), limit }
    }

    fn tick(&self) -> bool {
        self.used.set(self.used.get() + 1);
        self.used.get() <= self.limit
    }
}

/// The flats of a matroid with ranks and a containment-closed index.
struct Flats {
    list: Vec<SetWord>,
    rank: Vec<usize>,
    index: HashMap<SetWord, usize>,
}

impl Flats {
    fn new(m: &Matroid) -> Self {
        // Decreasing rank, canonical order within a rank.
        let list: Vec<SetWord> = m.flats().into_iter().rev().flatten().collect();
        let rank = list.iter().map(|&f| m.rank(f)).collect();
        let index = list.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        Flats { list, rank, index }
    }

    /// Smallest modular cut containing `cut`: up-closed, and closed under
    /// intersections of modular pairs.
    fn close(&self, m: &Matroid, cut: &mut [bool]) {
        loop {
            let mut changed = false;
            for i in 0..self.list.len() {
                if !cut[i] {
                    continue;
                }
                for j in 0..self.list.len() {
                    if !cut[j] && self.list[i] & !self.list[j] == 0 {
                        cut[j] = true;
                        changed = true;
                    }
                }
            }
            let members: Vec<usize> = (0..self.list.len()).filter(|&i| cut[i]).collect();
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    let (f, g) = (self.list[i], self.list[j]);
                    let meet = self.index[&m.closure(f & g)];
                    if !cut[meet] && self.rank[i] + self.rank[j] == m.rank(f | g) + self.rank[meet] {
                        cut[meet] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }
}

/// `M + z` for the modular cut `cut`: `z ∈ cl(X)` iff `cl(X) ∈ cut`.
fn extend_by_cut(m: &Matroid, flats: &Flats, cut: &[bool], label: String) -> Result<Matroid> {
    let n = m.n();
    let r = m.full_rank();
    let z = singleton(n);
    let mut bases: Vec<SetWord> = m.bases().to_vec();
    let mut seen: HashSet<SetWord> = HashSet::new();
    for &b in m.bases() {
        for i in bitset::k_subsets_of(b, r.saturating_sub(1)) {
            if r > 0 && seen.insert(i) && !cut[flats.index[&m.closure(i)]] {
                bases.push(i | z);
            }
        }
    }
    let mut labels: Vec<String> = (0..n).map(|i| m.ground().label(i)).collect();
    labels.push(label);
    Matroid::from_bases(GroundSet::labelled(labels)?, r, bases)
}

/// Largest valid `Z` in an extension: `cl'(A) ∩ cl'(B)`, if it has the rank
/// the pair requires.
fn best_z(x: &Matroid, a: SetWord, b: SetWord, defect: usize) -> Option<SetWord> {
    let z = x.closure(a) & x.closure(b);
    (x.rank(z) == defect).then_some(z)
}

/// Visits every extension by `t` new elements, each in `cl(A) ∩ cl(B)`,
/// whose best `Z` works. Returns `false` if the budget ran out.
fn visit_extensions(
    base: &Matroid,
    a: SetWord,
    b: SetWord,
    t: usize,
    counter: &Counter,
    f: &mut dyn FnMut(ExtensionWitness) -> bool,
) -> Result<VisitEnd> {
    let defect = modular_defect(base, a, b);
    fn rec(
        base: &Matroid,
        cur: &Matroid,
        a: SetWord,
        b: SetWord,
        defect: usize,
        left: usize,
        counter: &Counter,
        f: &mut dyn FnMut(ExtensionWitness) -> bool,
    ) -> Result<VisitEnd> {
        if !counter.tick() {
            return Ok(VisitEnd::Budget);
        }
        if left == 0 {
            if let Some(z) = best_z(cur, a, b, defect) {
                let w = ExtensionWitness { base: base.clone(), extended: cur.clone(), z, pair: (a, b) };
                if verify_extension(&w).is_ok() && f(w) {
                    return Ok(VisitEnd::Stopped);
                }
            }
            return Ok(VisitEnd::Exhausted);
        }
        let flats = Flats::new(cur);
        let mut start = vec![false; flats.list.len()];
        start[flats.index[&cur.closure(a)]] = true;
        start[flats.index[&cur.closure(b)]] = true;
        flats.close(cur, &mut start);
        let loops = flats.index[&cur.closure(0)];
        if start[loops] {
            return Ok(VisitEnd::Exhausted);
        }
        let label = format!("z{}", cur.n() - base.n() + 1);
        // Cuts are enumerated by deciding flats in order, exclusion first,
        // so the smallest cut (the freest placement) comes first.
        fn cuts(
            ctx: (&Matroid, &Matroid, SetWord, SetWord, usize, usize, &Flats, usize, &str),
            idx: usize,
            cut: &[bool],
            out: &mut Vec<bool>,
            counter: &Counter,
            f: &mut dyn FnMut(ExtensionWitness) -> bool,
        ) -> Result<VisitEnd> {
            let (base, cur, a, b, defect, left, flats, loops, label) = ctx;
            if idx == flats.list.len() {
                let next = extend_by_cut(cur, flats, cut, label.to_string())?;
                return rec(base, &next, a, b, defect, left - 1, counter, f);
            }
            if cut[idx] {
                return cuts(ctx, idx + 1, cut, out, counter, f);
            }
            if !counter.tick() {
                return Ok(VisitEnd::Budget);
            }
            out[idx] = true;
            let end = cuts(ctx, idx + 1, cut, out, counter, f)?;
            out[idx] = false;
            if end != VisitEnd::Exhausted {
                return Ok(end);
            }
            let mut with = cut.to_vec();
            with[idx] = true;
            flats.close(cur, &mut with);
            if with[loops] || (0..flats.list.len()).any(|i| with[i] && out[i]) {
                return Ok(VisitEnd::Exhausted);
            }
            cuts(ctx, idx + 1, &with, out, counter, f)
        }
        let mut out = vec![false; flats.list.len()];
        cuts((base, cur, a, b, defect, left, &flats, loops, &label), 0, &start, &mut out, counter, f)
    }
    rec(base, base, a, b, defect, t, counter, f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VisitEnd {
    Exhausted,
    Stopped,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSearch {
    pub witness: Option<ExtensionWitness>,
    /// Every extension with fewer new elements than this was ruled out.
    pub exhausted_below: usize,
    /// True iff the answer is final: a witness, or every `t ≤ defect` exhausted.
    pub complete: bool,
    pub nodes: u64,
}

/// Default node budget for extension searches.
pub const DEFAULT_EXTENSION_BUDGET: u64 = 1_000_000;

/// Searches extensions with `t = 0, 1, …, r(A) + r(B) − r(A ∪ B)` new
/// elements, each placed in `cl(A) ∩ cl(B)` through a modular cut, with
/// `Z = cl'(A) ∩ cl'(B)` (which may contain elements of `S`). Any extension
/// step can be reduced to this form, so exhausting all `t` is a refutation.
pub fn search_extension(m: &Matroid, a: SetWord, b: SetWord, budget: u64) -> Result<ExtensionSearch> {
    if (a | b) & !m.full_set() != 0 {
        return input("A and B must be subsets of the ground set");
    }
    let defect = modular_defect(m, a, b);
    if m.n() + defect > bitset::MAX_GROUND {
        return Err(Error::SizeOverflow(m.n() + defect));
    }
    let counter = Counter::new(budget);
    for t in 0..=defect {
        let mut found = None;
        let end = visit_extensions(m, a, b, t, &counter, &mut |w| {
            found = Some(w);
            true
        })?;
        match end {
            VisitEnd::Stopped => {
                return Ok(ExtensionSearch { witness: found, exhausted_below: t, complete: true, nodes: counter.used.get() })
            }
            VisitEnd::Budget => {
                return Ok(ExtensionSearch { witness: None, exhausted_below: t, complete: false, nodes: counter.used.get() })
            }
            VisitEnd::Exhausted => {}
        }
    }
    Ok(ExtensionSearch { witness: None, exhausted_below: defect + 1, complete: true, nodes: counter.used.get() })
}

/// One non-modular pair of flats with the extension chosen for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessNode {
    pub pair: (SetWord, SetWord),
    pub witness: ExtensionWitness,
    /// Witnesses for the extended matroid at the next level; empty at the
    /// last level or when the class was already settled.
    pub children: Vec<WitnessNode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KModularVerdict {
    Yes(Vec<WitnessNode>),
    /// No extension for `pair` is `(k−1)`-modular extendable, and the whole
    /// space was searched.
    No { pair: (SetWord, SetWord), level: usize },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KModularResult {
    pub verdict: KModularVerdict,
    pub nodes: u64,
}

/// Verdicts already settled, keyed by `(k, n, rank, #bases)` and matched up
/// to isomorphism.
type Memo = HashMap<(usize, usize, usize, usize), Vec<(Matroid, bool)>>;

fn memo_get(memo: &Memo, m: &Matroid, k: usize) -> Option<bool> {
    let key = (k, m.n(), m.full_rank(), m.bases().len());
    memo.get(&key)?.iter().find(|(x, _)| x.is_isomorphic(m).is_some()).map(|&(_, v)| v)
}

fn memo_put(memo: &mut Memo, m: &Matroid, k: usize, v: bool) {
    memo.entry((k, m.n(), m.full_rank(), m.bases().len())).or_default().push((m.clone(), v));
}

enum Level {
    Yes(Vec<WitnessNode>),
    No((SetWord, SetWord), usize),
    Budget,
}

/// Whether every pair of subsets admits an extension step whose result is
/// `(k−1)`-modular extendable. Pairs are reduced to pairs of flats (an
/// extension for `(A, B)` serves `(cl A, cl B)` and conversely), and modular
/// pairs use the trivial step `M' = M`, `Z = A ∩ B`.
pub fn k_modular_extendable(m: &Matroid, k: usize, budget: u64) -> Result<KModularResult> {
    let counter = Counter::new(budget);
    let mut memo = Memo::new();
    let verdict = match level(m, k, &counter, &mut memo, true)? {
        Level::Yes(tree) => KModularVerdict::Yes(tree),
        Level::No(pair, level) => KModularVerdict::No { pair, level },
        Level::Budget => KModularVerdict::Inconclusive,
    };
    Ok(KModularResult { verdict, nodes: counter.used.get() })
}

fn non_modular_pairs(m: &Matroid) -> Vec<(SetWord, SetWord)> {
    let flats: Vec<SetWord> = m.flats().into_iter().flatten().collect();
    let mut out = Vec::new();
    for (i, &f) in flats.iter().enumerate() {
        for &g in &flats[i + 1..] {
            if modular_defect(m, f, g) != m.rank(f & g) {
                out.push((f, g));
            }
        }
    }
    out
}

fn level(m: &Matroid, k: usize, counter: &Counter, memo: &mut Memo, keep_tree: bool) -> Result<Level> {
    if k == 0 {
        return Ok(Level::Yes(Vec::new()));
    }
    if let Some(v) = memo_get(memo, m, k) {
        if v {
            return Ok(Level::Yes(Vec::new()));
        }
    }
    // Modular pairs keep M itself, which must then pass level k−1.
    match level(m, k - 1, counter, memo, false)? {
        Level::Yes(_) => {}
        other => return Ok(other),
    }
    let mut tree = Vec::new();
    for (a, b) in non_modular_pairs(m) {
        if m.n() + modular_defect(m, a, b) > bitset::MAX_GROUND {
            return Err(Error::SizeOverflow(m.n() + modular_defect(m, a, b)));
        }
        let mut chosen: Option<WitnessNode> = None;
        let mut budget_hit = false;
        let mut err: Option<Error> = None;
        for t in 0..=modular_defect(m, a, b) {
            let end = visit_extensions(m, a, b, t, counter, &mut |w| {
                let res = level(&w.extended, k - 1, counter, memo, keep_tree);
                match res {
                    Ok(Level::Yes(children)) => {
                        chosen = Some(WitnessNode { pair: (a, b), witness: w, children });
                        true
                    }
                    Ok(Level::No(..)) => false,
                    Ok(Level::Budget) => {
                        budget_hit = true;
                        false
                    }
                    Err(e) => {
                        err = Some(e);
                        true
                    }
                }
            })?;
            if let Some(e) = err {
                return Err(e);
            }
            if end == VisitEnd::Budget {
                budget_hit = true;
            }
            if chosen.is_some() || budget_hit {
                break;
            }
        }
        match chosen {
            Some(node) => {
                if keep_tree {
                    tree.push(node);
                }
            }
            None if budget_hit => return Ok(Level::Budget),
            None => {
                memo_put(memo, m, k, false);
                return Ok(Level::No((a, b), k));
            }
        }
    }
    memo_put(memo, m, k, true);
    Ok(Level::Yes(tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogKey};
    use crate::field::FieldSpec;
    use crate::representation::{fano_matrix, tensor_from_reps, u23_matrix, TensorRep};

    fn fano_tensor() -> TensorCandidate {
        let a = fano_matrix(FieldSpec::Gf(2)).unwrap();
        let b = u23_matrix(FieldSpec::Gf(2)).unwrap();
        let TensorRep::Matroid(lin) = tensor_from_reps(&a, &b).unwrap() else { panic!() };
        let p = lin.to_matroid().unwrap();
        let left = crate::representation::matroid_from_rep(&a).unwrap();
        TensorCandidate::new(p, left, uniform(2, 3).unwrap()).unwrap()
    }

    fn set(items: &[usize]) -> SetWord {
        bitset::from_indices(items.iter().copied())
    }

    #[test]
    fn fano_lines_meet_in_a_point() {
        let f = build(CatalogKey::Fano).unwrap();
        let (a, b) = (set(&[0, 1, 5]), set(&[0, 2, 4]));
        let w = ExtensionWitness { base: f.clone(), extended: f.clone(), z: set(&[0]), pair: (a, b) };
        assert_eq!(verify_extension(&w), Ok(()));
        let bad = ExtensionWitness { z: set(&[0, 3]), ..w };
        assert_eq!(verify_extension(&bad), Err(ExtensionFailure::AUnionZ));
        let off = ExtensionWitness { z: 0, ..bad };
        assert_eq!(verify_extension(&off), Err(ExtensionFailure::ZRank));
    }

    #[test]
    fn modular_pair_with_empty_z() {
        let u = uniform(2, 4).unwrap();
        let w = ExtensionWitness { base: u.clone(), extended: u, z: 0, pair: (set(&[0]), set(&[1])) };
        assert_eq!(verify_extension(&w), Ok(()));
    }

    #[test]
    fn extraction_from_the_kronecker_tensor() {
        let n = fano_tensor();
        let lines = n.left().flats_of_rank(2);
        assert_eq!(lines.len(), 7);
        for (i, &a) in lines.iter().enumerate() {
            for &b in &lines[i + 1..] {
                let w = extension_from_tensor(&n, a, b).unwrap();
                assert_eq!(n.left().rank(a) + n.left().rank(b) - n.left().rank(a | b), w.extended.rank(w.z));
            }
        }
    }

    #[test]
    fn extraction_degenerate_pairs() {
        let n = fano_tensor();
        let a = n.left().flats_of_rank(2)[0];
        let w = extension_from_tensor(&n, a, a).unwrap();
        assert_eq!(w.extended.rank(w.z), 2);
        let w = extension_from_tensor(&n, 0, a).unwrap();
        assert_eq!(w.z, 0);
    }

    #[test]
    fn search_u23_points() {
        let s = search_extension(&uniform(2, 3).unwrap(), set(&[0]), set(&[1]), 1000).unwrap();
        assert!(s.complete);
        assert_eq!(s.witness.unwrap().extended.n(), 3);
    }

    #[test]
    fn search_needs_a_new_point_for_skew_lines() {
        // Two disjoint lines of U_{3,6} do not meet in S, so t = 0 fails.
        let m = uniform(3, 6).unwrap();
        let s = search_extension(&m, set(&[0, 1]), set(&[2, 3]), 10_000).unwrap();
        assert_eq!(s.exhausted_below, 1);
        let w = s.witness.unwrap();
        assert_eq!(w.extended.n(), 7);
        assert_eq!(w.z, singleton(6));
    }

    #[test]
    fn search_non_desargues_disjoint_lines() {
        let m = build(CatalogKey::NonDesargues).unwrap();
        let lines = m.flats_of_rank(2).into_iter().filter(|l| card(*l) == 3).collect::<Vec<_>>();
        let (a, b) = lines
            .iter()
            .flat_map(|&a| lines.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| a & b == 0)
            .unwrap();
        let s = search_extension(&m, a, b, 100_000).unwrap();
        assert!(s.witness.is_some());
    }

    #[test]
    fn k_zero_and_fano() {
        let f = build(CatalogKey::Fano).unwrap();
        assert!(matches!(k_modular_extendable(&f, 0, 10).unwrap().verdict, KModularVerdict::Yes(_)));
        assert!(matches!(k_modular_extendable(&f, 1, 100_000).unwrap().verdict, KModularVerdict::Yes(_)));
    }

    #[test]
    fn direct_sum_of_lines() {
        let u = uniform(2, 3).unwrap();
        let d = u.direct_sum(&u).unwrap();
        assert!(matches!(k_modular_extendable(&u, 1, 100_000).unwrap().verdict, KModularVerdict::Yes(_)));
        assert!(matches!(k_modular_extendable(&d, 1, 1_000_000).unwrap().verdict, KModularVerdict::Yes(_)));
    }
}
