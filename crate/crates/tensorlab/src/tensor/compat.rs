//! Bounded `k`-tensor-compatibility: chains `P1 ∈ M ⊗ N`, `P2 ∈ P1 ⊗ N`, …
//! built by search or by Kronecker products, and refutations by exhausted
//! search or by a violated linear rank inequality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::{self, card, elements, SetWord};
use crate::catalog::{build, CatalogKey};
use crate::error::{Error, Result};
use crate::inequalities::{self, search_violation, LinearRankInequality, Strategy, Witness};
use crate::matroid::Matroid;
use crate::representation::{matroid_from_rep, LinearMatroid, MatrixRep};
use crate::tensor::check::is_tensor_product;
use crate::tensor::enumerate::{enumerate_with, SearchOptions};
use crate::tensor::reduction::simplification_reduction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompatKind {
    Chain,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompatMethod {
    Exhaustive,
    Inequality,
    Kronecker,
}

/// One chain level: explicit when its bases can be listed, otherwise the
/// Kronecker matrix that represents it.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainLevel {
    Matroid(Matroid),
    Matrix(MatrixRep),
}

impl ChainLevel {
    pub fn size(&self) -> usize {
        match self {
            ChainLevel::Matroid(m) => m.n(),
            ChainLevel::Matrix(a) => a.element_count(),
        }
    }
}

/// Which input the inequality is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    Left,
    Right,
}

/// A refutation by a linear rank inequality: the other factor has `minor`
/// as a minor, every matroid compatible with `minor` satisfies `inequality`,
/// and `witness` violates it on `violated`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityRefutation {
    pub inequality: LinearRankInequality,
    pub minor: &'static str,
    pub violated: Factor,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompatCertificate {
    pub kind: CompatKind,
    pub method: CompatMethod,
    /// `P1, P2, …` for a chain; the deepest levels reached otherwise.
    pub levels: Vec<ChainLevel>,
    /// First level `j` with `T_j(M, N) = ∅`.
    pub refuted_at: Option<usize>,
    pub inequality: Option<InequalityRefutation>,
    pub nodes: u64,
    pub node_budget: u64,
    /// Isomorphism classes of products explored per level.
    pub classes: Vec<usize>,
    /// Random rectangle checks on levels too large for the exhaustive check.
    pub sampled_checks: usize,
}

#[derive(Debug, Clone)]
pub struct CompatOptions {
    pub search: SearchOptions,
    pub use_inequalities: bool,
    /// Assignments each inequality scan may try.
    pub scan_budget: u64,
    /// Seed and count for sampled rectangle checks.
    pub seed: u64,
    pub samples: usize,
}

impl Default for CompatOptions {
    fn default() -> Self {
        CompatOptions {
            search: SearchOptions::default(),
            use_inequalities: true,
            scan_budget: 5_000_000,
            seed: 0,
            samples: 500,
        }
    }
}

/// Ground sizes above this are not handed to the minor test.
const MINOR_TEST_LIMIT: usize = 16;

/// Whether `m` has a minor isomorphic to `target`, by trying every
/// contraction of an independent set of the right size followed by every
/// restriction of the right size.
pub fn has_minor(m: &Matroid, target: &Matroid) -> bool {
    let (n, r, tn, tr) = (m.n(), m.full_rank(), target.n(), target.full_rank());
    if tn > n || tr > r || n - tn < r - tr {
        return false;
    }
    let contractions: Vec<SetWord> = bitset::k_subsets(n, r - tr).into_iter().filter(|&c| m.is_independent(c)).collect();
    for c in contractions {
        let rest = m.full_set() & !c;
        for keep in bitset::k_subsets_of(rest, tn) {
            if m.rank(keep | c) - m.rank(c) != tr {
                continue;
            }
            let Ok(minor) = m.minor(rest & !keep, c) else { continue };
            if minor.bases().len() == target.bases().len() && minor.is_isomorphic(target).is_some() {
                return true;
            }
        }
    }
    false
}

/// `U_{2,3}` is a minor iff some circuit has at least three elements.
fn has_u23_minor(m: &Matroid) -> bool {
    m.circuits().iter().any(|&c| card(c) >= 3)
}

fn find_violation(ineq: &LinearRankInequality, m: &Matroid, budget: u64) -> Result<Option<Witness>> {
    let k = ineq.variables().len();
    let mut strategies = vec![];
    if k <= m.n() {
        strategies.push(Strategy::Singletons);
    }
    if 2 * k == m.n() {
        strategies.push(Strategy::CanonicalPairs);
    }
    strategies.push(Strategy::Flats);
    for s in strategies {
        if let Some(w) = search_violation(ineq, m, s, budget)?.witness {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Level-1 refutations: if one factor has `minor` as a minor, the other
/// must satisfy the inequality that `minor`-compatibility implies.
fn inequality_refutation(m: &Matroid, n: &Matroid, k_max: usize, budget: u64) -> Result<Option<(usize, InequalityRefutation)>> {
    type Rule = (&'static str, fn(&Matroid) -> bool, fn() -> LinearRankInequality);
    fn u23(x: &Matroid) -> bool {
        has_u23_minor(x)
    }
    fn minor_of(key: CatalogKey) -> impl Fn(&Matroid) -> bool {
        move |x: &Matroid| x.n() <= MINOR_TEST_LIMIT && build(key).is_ok_and(|t| has_minor(x, &t))
    }
    fn k4(x: &Matroid) -> bool {
        minor_of(CatalogKey::GraphicK4)(x)
    }
    fn f7(x: &Matroid) -> bool {
        minor_of(CatalogKey::Fano)(x)
    }
    fn f7_minus(x: &Matroid) -> bool {
        minor_of(CatalogKey::NonFano)(x)
    }
    let rules: [Rule; 4] = [
        ("uniform:2,3", u23, inequalities::ingleton),
        ("graphic-k4", k4, inequalities::new_ineq),
        ("fano", f7, inequalities::fano_ineq),
        ("non-fano", f7_minus, inequalities::non_fano_ineq),
    ];
    for (minor, holds, ineq) in rules {
        for (host, other, violated) in [(n, m, Factor::Left), (m, n, Factor::Right)] {
            let ineq = ineq();
            if ineq.variables().len() > other.n() || !holds(host) {
                continue;
            }
            if let Some(witness) = find_violation(&ineq, other, budget)? {
                return Ok(Some((1, InequalityRefutation { inequality: ineq, minor, violated, witness })));
            }
        }
    }
    // A 2-chain with a U_{2,3}-minor factor yields a product with M*(K_{3,3})
    // and hence with its minor M(K_4).
    if k_max >= 2 && has_u23_minor(n) {
        let ineq = inequalities::new_ineq();
        if ineq.variables().len() <= m.n() {
            if let Some(witness) = find_violation(&ineq, m, budget)? {
                let r = InequalityRefutation { inequality: ineq, minor: "uniform:2,3 (2-chain)", violated: Factor::Left, witness };
                return Ok(Some((2, r)));
            }
        }
    }
    Ok(None)
}

/// All tensor products of `p` and `n`, through the simplification reduction.
fn products(p: &Matroid, n: &Matroid, opts: &SearchOptions) -> Result<(Vec<Matroid>, bool, u64)> {
    if p.n() * n.n() > bitset::MAX_GROUND {
        return Err(Error::SizeOverflow(p.n() * n.n()));
    }
    if p.is_simple() && n.is_simple() {
        let e = enumerate_with(p, n, opts)?;
        return Ok((e.products, e.complete, e.nodes));
    }
    let red = simplification_reduction(p, n);
    let e = enumerate_with(&red.left, &red.right, opts)?;
    let lifted = e.products.iter().map(|q| red.lift(q)).collect::<Result<Vec<_>>>()?;
    Ok((lifted, e.complete, e.nodes))
}

struct Dfs<'a> {
    n: &'a Matroid,
    k_max: usize,
    opts: &'a SearchOptions,
    nodes: u64,
    complete: bool,
    deepest: usize,
    /// Classes known to have no continuation to `k_max`, per level.
    dead: Vec<Vec<Matroid>>,
    classes: Vec<usize>,
    oversize: bool,
}

impl Dfs<'_> {
    fn explore(&mut self, p: &Matroid, level: usize) -> Result<Option<Vec<Matroid>>> {
        self.deepest = self.deepest.max(level);
        if level == self.k_max {
            return Ok(Some(vec![p.clone()]));
        }
        if p.n() * self.n.n() > bitset::MAX_GROUND {
            self.oversize = true;
            return Ok(None);
        }
        let (found, complete, nodes) = products(p, self.n, self.opts)?;
        self.nodes += nodes;
        self.complete &= complete;
        let mut reps: Vec<Matroid> = Vec::new();
        for q in found {
            if !reps.iter().any(|r| r.is_isomorphic(&q).is_some()) {
                reps.push(q);
            }
        }
        self.classes[level] += reps.len();
        for q in reps {
            if self.dead[level].iter().any(|d| d.is_isomorphic(&q).is_some()) {
                continue;
            }
            if let Some(mut chain) = self.explore(&q, level + 1)? {
                chain.insert(0, p.clone());
                return Ok(Some(chain));
            }
            self.dead[level].push(q);
        }
        Ok(None)
    }
}

/// Iterative search for a chain of length `k_max`, after the inequality
/// fast path. A refutation is reported only when every enumeration on the
/// way was exhaustive.
pub fn tensor_compat_depth(m: &Matroid, n: &Matroid, k_max: usize, opts: &CompatOptions) -> Result<CompatCertificate> {
    let node_budget = opts.search.budget.nodes;
    let mut cert = CompatCertificate {
        kind: CompatKind::Inconclusive,
        method: CompatMethod::Exhaustive,
        levels: Vec::new(),
        refuted_at: None,
        inequality: None,
        nodes: 0,
        node_budget,
        classes: vec![0; k_max + 1],
        sampled_checks: 0,
    };
    if k_max == 0 {
        cert.kind = CompatKind::Chain;
        return Ok(cert);
    }
    if opts.use_inequalities {
        if let Some((level, r)) = inequality_refutation(m, n, k_max, opts.scan_budget)? {
            cert.kind = CompatKind::Refuted;
            cert.method = CompatMethod::Inequality;
            cert.refuted_at = Some(level);
            cert.inequality = Some(r);
            return Ok(cert);
        }
    }
    let mut dfs = Dfs {
        n,
        k_max,
        opts: &opts.search,
        nodes: 0,
        complete: true,
        deepest: 0,
        dead: vec![Vec::new(); k_max + 2],
        classes: vec![0; k_max + 2],
        oversize: false,
    };
    // Level 0 is M itself; the chain proper starts at level 1.
    let found = dfs.explore(m, 0)?;
    cert.nodes = dfs.nodes;
    cert.classes = dfs.classes[..=k_max].to_vec();
    match found {
        Some(chain) => {
            cert.kind = CompatKind::Chain;
            cert.levels = chain.into_iter().skip(1).map(ChainLevel::Matroid).collect();
        }
        None if dfs.complete && !dfs.oversize => {
            cert.kind = CompatKind::Refuted;
            cert.refuted_at = Some(dfs.deepest + 1);
        }
        None => {}
    }
    Ok(cert)
}

/// Explicit levels are listed only up to this many elements.
const EXPLICIT_LEVEL_LIMIT: usize = 24;

/// A chain `A ⊗ B ⊗ … ⊗ B` (left-associated, `k` factors of `B`) from
/// matrices. Kronecker products of representations are tensor products,
/// so the chain exists; each level is also checked, exhaustively when the
/// rectangle check is small enough and on random rectangles otherwise.
pub fn kronecker_chain(a: &MatrixRep, b: &MatrixRep, k: usize, opts: &CompatOptions) -> Result<CompatCertificate> {
    let right = LinearMatroid::new(b.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut levels = Vec::with_capacity(k);
    let mut prev = a.clone();
    let mut sampled = 0;
    for _ in 0..k {
        let next = prev.kronecker(b)?;
        let cols = next.element_count();
        let exhaustive_ok = prev.element_count() <= 20 && cols <= bitset::MAX_GROUND;
        if exhaustive_ok {
            let p = LinearMatroid::new(next.clone())?;
            let l = LinearMatroid::new(prev.clone())?;
            if let Some(v) = is_tensor_product(&p, &l, &right)?.into_result().err() {
                return Err(Error::Certification(format!("Kronecker level fails {v}")));
            }
        } else {
            sampled += check_sampled(&prev, b, &next, opts.samples, &mut rng)?;
        }
        levels.push(if cols <= EXPLICIT_LEVEL_LIMIT {
            ChainLevel::Matroid(matroid_from_rep(&next)?)
        } else {
            ChainLevel::Matrix(next.clone())
        });
        prev = next;
    }
    Ok(CompatCertificate {
        kind: CompatKind::Chain,
        method: CompatMethod::Kronecker,
        levels,
        refuted_at: None,
        inequality: None,
        nodes: 0,
        node_budget: opts.search.budget.nodes,
        classes: vec![1; k + 1],
        sampled_checks: sampled,
    })
}

/// `r(X1 × X2) = r(X1)·r(X2)` on random rectangles, each side a random subset.
fn check_sampled(prev: &MatrixRep, b: &MatrixRep, next: &MatrixRep, samples: usize, rng: &mut ChaCha8Rng) -> Result<usize> {
    let (n1, n2) = (prev.element_count(), b.element_count());
    for _ in 0..samples {
        let x1: Vec<usize> = (0..n1).filter(|_| rng.gen_bool(0.3)).collect();
        let x2: Vec<usize> = (0..n2).filter(|_| rng.gen_bool(0.5)).collect();
        let rect: Vec<usize> = x1.iter().flat_map(|&i| x2.iter().map(move |&j| i * n2 + j)).collect();
        let want = prev.rank_of_elements(&x1)? * b.rank_of_elements(&x2)?;
        let got = next.rank_of_elements(&rect)?;
        if want != got {
            return Err(Error::Certification(format!("Kronecker rectangle rank {got}, expected {want}")));
        }
    }
    Ok(samples)
}

/// Re-checks consecutive explicit levels of a chain certificate against
/// `is_tensor_product`, starting from `m`.
pub fn verify_chain(cert: &CompatCertificate, m: &Matroid, n: &Matroid) -> Result<bool> {
    if cert.kind != CompatKind::Chain {
        return Ok(false);
    }
    let mut prev = ChainLevel::Matroid(m.clone());
    for level in &cert.levels {
        if level.size() != prev.size() * n.n() {
            return Ok(false);
        }
        if let (ChainLevel::Matroid(p), ChainLevel::Matroid(q)) = (&prev, level) {
            if !is_tensor_product(q, p, n)?.is_product() {
                return Ok(false);
            }
        }
        prev = level.clone();
    }
    Ok(true)
}

/// Rank oracle over a chain level, for levels that fit in a set word.
pub fn level_rank(level: &ChainLevel, x: SetWord) -> usize {
    match level {
        ChainLevel::Matroid(m) => m.rank(x),
        ChainLevel::Matrix(a) => a.rank_of_elements(&elements(x).collect::<Vec<_>>()).unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::uniform;
    use crate::field::FieldSpec;
    use crate::representation::{fano_matrix, u23_matrix};
    use crate::tensor::SearchBudget;

    #[test]
    fn minor_detection() {
        let k33 = build(CatalogKey::CographicK33).unwrap();
        let k4 = build(CatalogKey::GraphicK4).unwrap();
        assert!(has_minor(&k33, &k4));
        assert!(!has_minor(&build(CatalogKey::Fano).unwrap(), &uniform(2, 4).unwrap()));
        assert!(has_minor(&build(CatalogKey::NonFano).unwrap(), &uniform(2, 4).unwrap()));
        assert!(has_u23_minor(&uniform(2, 3).unwrap()));
        assert!(!has_u23_minor(&uniform(2, 2).unwrap()));
    }

    #[test]
    fn vamos_refuted_by_ingleton() {
        let c = tensor_compat_depth(&build(CatalogKey::Vamos).unwrap(), &uniform(2, 3).unwrap(), 1, &CompatOptions::default()).unwrap();
        assert_eq!(c.kind, CompatKind::Refuted);
        assert_eq!(c.method, CompatMethod::Inequality);
        assert_eq!(c.refuted_at, Some(1));
        assert_eq!(c.inequality.unwrap().inequality.name(), "ingleton");
    }

    #[test]
    fn non_desargues_refuted_against_k4() {
        let nd = build(CatalogKey::NonDesargues).unwrap();
        let k4 = build(CatalogKey::GraphicK4).unwrap();
        let c = tensor_compat_depth(&nd, &k4, 1, &CompatOptions::default()).unwrap();
        assert_eq!(c.kind, CompatKind::Refuted);
        let r = c.inequality.unwrap();
        assert_eq!(r.inequality.name(), "new_ineq");
        assert_eq!(r.violated, Factor::Left);
    }

    #[test]
    fn u23_chain_by_search() {
        let u = uniform(2, 3).unwrap();
        let opts = CompatOptions { search: SearchOptions { budget: SearchBudget::nodes(1_000_000), ..Default::default() }, ..Default::default() };
        let c = tensor_compat_depth(&uniform(1, 2).unwrap(), &u, 2, &opts).unwrap();
        assert_eq!(c.kind, CompatKind::Chain);
        assert_eq!(c.levels.len(), 2);
        assert!(verify_chain(&c, &uniform(1, 2).unwrap(), &u).unwrap());
    }

    #[test]
    fn fano_kronecker_chain_of_three() {
        let f = FieldSpec::Gf(2);
        let c = kronecker_chain(&fano_matrix(f).unwrap(), &u23_matrix(f).unwrap(), 3, &CompatOptions { samples: 50, ..Default::default() })
            .unwrap();
        assert_eq!(c.levels.iter().map(ChainLevel::size).collect::<Vec<_>>(), vec![21, 63, 189]);
        assert!(matches!(c.levels[0], ChainLevel::Matroid(_)));
        assert_eq!(c.sampled_checks, 100);
    }
}
