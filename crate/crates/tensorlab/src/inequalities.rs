//! Linear rank inequalities as term lists, with evaluation and
//! violation-witness scans.
//!
//! An inequality is stored as `Σ coeff·φ(⋃ vars)` and is satisfied when that
//! slack is `≥ 0`. The printed form may put the larger side on either the
//! left or the right; [`Sense`] remembers which, so reports can show the two
//! sides the way the inequality is usually written.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::{self, elements, full, singleton, SetWord};
use crate::error::{input, Error, Result};
use crate::field::fmt_rational;
use crate::matroid::Matroid;
use crate::polymatroid::SetFunction;

/// A union of variables, as sorted variable indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetExpr(Vec<usize>);

impl SubsetExpr {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        SubsetExpr(vars)
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn resolve(&self, assignment: &[SetWord]) -> SetWord {
        self.0.iter().fold(0, |acc, &v| acc | assignment[v])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub expr: SubsetExpr,
}

/// Which side of the written inequality is the larger one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// Written `LHS ≥ RHS`; positive terms form the left side.
    GreaterEq,
    /// Written `LHS ≤ RHS`; positive terms form the right side.
    LessEq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRankInequality {
    name: String,
    variables: Vec<String>,
    terms: Vec<Term>,
    sense: Sense,
}

/// Both written sides and the slack at one assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sides {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub slack: BigRational,
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

impl LinearRankInequality {
    /// Builds an inequality from `(coeff, variable names)` terms.
    pub fn new(
        name: impl Into<String>,
        variables: Vec<String>,
        terms: Vec<(BigRational, Vec<String>)>,
        sense: Sense,
    ) -> Result<Self> {
        if variables.is_empty() {
            return input("an inequality needs at least one variable");
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return input(format!("variable {v} declared twice"));
            }
        }
        let mut out = Vec::with_capacity(terms.len());
        for (coeff, names) in terms {
            let mut idx = Vec::with_capacity(names.len());
            for n in &names {
                match variables.iter().position(|v| v == n) {
                    Some(i) => idx.push(i),
                    None => return input(format!("term uses undeclared variable {n}")),
                }
            }
            out.push(Term { coeff, expr: SubsetExpr::new(idx) });
        }
        let ineq = LinearRankInequality { name: name.into(), variables, terms: out, sense };
        ineq.validate()?;
        Ok(ineq)
    }

    fn validate(&self) -> Result<()> {
        let pos = self.terms.iter().any(|t| t.coeff.is_positive());
        let neg = self.terms.iter().any(|t| t.coeff.is_negative());
        if !(pos && neg) {
            return input(format!("{} needs a positive and a negative coefficient", self.name));
        }
        Ok(())
    }

    fn from_table(name: &str, vars: &[&str], terms: &[(i64, &[&str])], sense: Sense) -> Self {
        let variables = vars.iter().map(|s| s.to_string()).collect();
        let terms = terms.iter().map(|(c, names)| (int(*c), names.iter().map(|s| s.to_string()).collect())).collect();
        LinearRankInequality::new(name, variables, terms, sense).expect("built-in inequality is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    /// `a·self + b·other`, over the same variable list. Terms are kept
    /// separate, so evaluation is linear by construction.
    pub fn combine(&self, a: &BigRational, other: &Self, b: &BigRational) -> Result<Self> {
        if self.variables != other.variables {
            return input("combined inequalities must share their variables");
        }
        let scale = |ts: &[Term], k: &BigRational| ts.iter().map(|t| Term { coeff: &t.coeff * k, expr: t.expr.clone() }).collect::<Vec<_>>();
        let mut terms = scale(&self.terms, a);
        terms.extend(scale(&other.terms, b));
        terms.retain(|t| !t.coeff.is_zero());
        Ok(LinearRankInequality {
            name: format!("{}+{}", self.name, other.name),
            variables: self.variables.clone(),
            terms,
            sense: Sense::GreaterEq,
        })
    }

    /// Merges terms with equal expressions and drops zero coefficients.
    pub fn normalized(&self) -> Self {
        let mut acc: BTreeMap<SubsetExpr, BigRational> = BTreeMap::new();
        for t in &self.terms {
            *acc.entry(t.expr.clone()).or_insert_with(BigRational::zero) += &t.coeff;
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(expr, coeff)| Term { coeff, expr }).collect();
        LinearRankInequality { terms, ..self.clone() }
    }

    fn check_assignment<F: SetFunction + ?Sized>(&self, phi: &F, assignment: &[SetWord]) -> Result<()> {
        if assignment.len() != self.variables.len() {
            return input(format!(
                "{} needs {} variables, assignment has {}",
                self.name,
                self.variables.len(),
                assignment.len()
            ));
        }
        let ground = full(phi.ground_size());
        if let Some(v) = assignment.iter().position(|&x| x & !ground != 0) {
            return input(format!("variable {} leaves the ground set", self.variables[v]));
        }
        Ok(())
    }

    /// `Σ coeff·φ(expr)`; negative means the assignment violates the inequality.
    pub fn eval<F: SetFunction + ?Sized>(&self, phi: &F, assignment: &[SetWord]) -> Result<BigRational> {
        Ok(self.sides(phi, assignment)?.slack)
    }

    pub fn eval_named<F: SetFunction + ?Sized>(&self, phi: &F, assignment: &BTreeMap<String, SetWord>) -> Result<BigRational> {
        let sets = self
            .variables
            .iter()
            .map(|v| assignment.get(v).copied().ok_or_else(|| Error::Input(format!("variable {v} is not assigned"))))
            .collect::<Result<Vec<_>>>()?;
        self.eval(phi, &sets)
    }

    pub fn sides<F: SetFunction + ?Sized>(&self, phi: &F, assignment: &[SetWord]) -> Result<Sides> {
        self.check_assignment(phi, assignment)?;
        Ok(self.sides_with(|x| phi.eval(x), assignment))
    }

    fn sides_with(&self, mut f: impl FnMut(SetWord) -> BigRational, assignment: &[SetWord]) -> Sides {
        let (mut pos, mut neg) = (BigRational::zero(), BigRational::zero());
        for t in &self.terms {
            let v = f(t.expr.resolve(assignment)) * &t.coeff;
            if v.is_negative() {
                neg -= v;
            } else {
                pos += v;
            }
        }
        let slack = &pos - &neg;
        match self.sense {
            Sense::GreaterEq => Sides { lhs: pos, rhs: neg, slack },
            Sense::LessEq => Sides { lhs: neg, rhs: pos, slack },
        }
    }

    /// The term list in compact union notation, e.g. `A B + A C - A - ...`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != int(1) {
                s.push_str(&fmt_rational(&mag));
                s.push('·');
            }
            s.push_str(&self.expr_name(&t.expr));
        }
        s.push_str(" >= 0");
        s
    }

    pub fn expr_name(&self, e: &SubsetExpr) -> String {
        if e.vars().is_empty() {
            return "r(∅)".into();
        }
        let names: Vec<&str> = e.vars().iter().map(|&v| self.variables[v].as_str()).collect();
        format!("r({})", names.join(","))
    }
}

impl fmt::Display for LinearRankInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.render())
    }
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Ingleton: `r(AB)+r(AC)+r(AD)+r(BC)+r(BD) ≥ r(A)+r(B)+r(ABC)+r(ABD)+r(CD)`.
pub fn ingleton() -> LinearRankInequality {
    LinearRankInequality::from_table(
        "ingleton",
        &["A", "B", "C", "D"],
        &[
            (1, &["A", "B"]),
            (1, &["A", "C"]),
            (1, &["A", "D"]),
            (1, &["B", "C"]),
            (1, &["B", "D"]),
            (-1, &["A"]),
            (-1, &["B"]),
            (-1, &["A", "B", "C"]),
            (-1, &["A", "B", "D"]),
            (-1, &["C", "D"]),
        ],
        Sense::GreaterEq,
    )
}

/// Builds terms from digit strings such as `"234"` over `prefix1..prefix7`.
fn digit_terms(prefix: &str, plus: &[&str], minus: &[&str]) -> Vec<(BigRational, Vec<String>)> {
    let expand = |d: &str| d.chars().map(|c| format!("{prefix}{c}")).collect::<Vec<_>>();
    plus.iter().map(|d| (int(1), expand(d))).chain(minus.iter().map(|d| (int(-1), expand(d)))).collect()
}

/// Valid for ranks of subspace arrangements over fields of characteristic 2.
pub fn fano_ineq() -> LinearRankInequality {
    let terms = digit_terms(
        "B",
        &["4", "6", "234", "135", "126", "367", "147", "257"],
        &["36", "14", "27", "456", "12347", "123567"],
    );
    LinearRankInequality::new("fano", numbered("B", 7), terms, Sense::GreaterEq).expect("well formed")
}

/// Valid for ranks of subspace arrangements over fields of characteristic other than 2.
pub fn non_fano_ineq() -> LinearRankInequality {
    let terms = digit_terms(
        "A",
        &["4", "6", "126", "135", "234", "367", "147", "456", "257"],
        &["36", "14", "46", "25", "4567", "12347", "123567"],
    );
    LinearRankInequality::new("non_fano", numbered("A", 7), terms, Sense::GreaterEq).expect("well formed")
}

/// The inequality on `A_1..A_3, B_1..B_3, C_1..C_3, D` satisfied by every
/// polymatroid that has a tensor product with the rank function of `M(K_4)`.
/// Written with the smaller side on the left; indices are cyclic mod 3 and
/// expanded here once.
pub fn new_ineq() -> LinearRankInequality {
    let mut variables = numbered("A", 3);
    variables.extend(numbered("B", 3));
    variables.extend(numbered("C", 3));
    variables.push("D".into());
    let v = |p: &str, i: usize| format!("{p}{}", (i - 1) % 3 + 1);
    let mut terms: Vec<(BigRational, Vec<String>)> = Vec::new();
    // Larger (right-hand) side, positive.
    for i in 1..=3 {
        terms.push((int(2), vec![v("A", i + 1), v("A", i + 2), v("C", i)]));
        terms.push((int(2), vec![v("B", i + 1), v("B", i + 2), v("C", i)]));
        terms.push((int(2), vec![v("A", i), v("B", i), "D".into()]));
    }
    terms.push((int(1), vec!["C1".into(), "C2".into()]));
    terms.push((int(4), vec!["D".into()]));
    // Smaller (left-hand) side, negative.
    for i in 1..=3 {
        terms.push((int(-2), vec![v("A", i + 1), v("A", i + 2), v("B", i + 1), v("B", i + 2), v("C", i)]));
        terms.push((int(-1), vec![v("A", i), "D".into()]));
        terms.push((int(-1), vec![v("B", i), "D".into()]));
        terms.push((int(-1), vec![v("C", i)]));
    }
    for names in [&["C2"][..], &["A3", "B3", "C1"], &["A1", "A2", "B1", "B2"], &["C1", "C2", "C3"]] {
        terms.push((int(-1), names.iter().map(|s| s.to_string()).collect()));
    }
    LinearRankInequality::new("new_ineq", variables, terms, Sense::LessEq).expect("well formed")
}

/// The four built-in inequalities by name.
pub fn by_name(name: &str) -> Result<LinearRankInequality> {
    match name.to_ascii_lowercase().replace('-', "_").as_str() {
        "ingleton" | "ing" => Ok(ingleton()),
        "fano" | "fano_ineq" => Ok(fano_ineq()),
        "non_fano" | "nonfano" | "non_fano_ineq" => Ok(non_fano_ineq()),
        "new_ineq" | "newineq" | "new" => Ok(new_ineq()),
        _ => input(format!("unknown inequality {name}")),
    }
}

pub fn builtin() -> Vec<LinearRankInequality> {
    vec![ingleton(), fano_ineq(), non_fano_ineq(), new_ineq()]
}

/// How `search_violation` walks the assignment space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Variable `i` is element `i`; one assignment.
    Canonical,
    /// Variable `i` is `{2i, 2i+1}`; one assignment.
    CanonicalPairs,
    /// All injective maps of variables to singletons, lex order on the tuple.
    Singletons,
    /// All tuples of flats. Every term is a union of variables and
    /// `r(cl X ∪ Y) = r(X ∪ Y)`, so this covers every tuple of subsets.
    Flats,
    /// Exhaustive (through the flat reduction) when `n ≤ 7` and there are at
    /// most 4 variables; otherwise `budget` random tuples drawn from `seed`.
    AllSubsets { seed: u64 },
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(Strategy::Canonical),
            "canonical-pairs" | "pairs" => Ok(Strategy::CanonicalPairs),
            "singletons" => Ok(Strategy::Singletons),
            "flats" => Ok(Strategy::Flats),
            "all-subsets" => Ok(Strategy::AllSubsets { seed: 0 }),
            _ => input(format!("unknown strategy {s}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Vec<SetWord>,
    pub sides: Sides,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    /// First violating assignment in scan order.
    pub witness: Option<Witness>,
    /// Whether the whole space the strategy promises was covered.
    pub complete: bool,
    pub examined: u64,
}

/// Default number of assignments a scan may evaluate.
pub const DEFAULT_SCAN_BUDGET: u64 = 50_000_000;

const CHUNK: usize = 8192;

/// Scans assignments in a fixed order and returns the first violation.
/// Chunks are evaluated in parallel but the winner is the earliest in scan
/// order, so the result does not depend on the worker count.
pub fn search_violation(
    ineq: &LinearRankInequality,
    m: &Matroid,
    strategy: Strategy,
    budget: u64,
) -> Result<ScanOutcome> {
    let k = ineq.variables().len();
    let n = m.n();
    let table = RankTable::new(m);
    match strategy {
        Strategy::Canonical => {
            if k > n {
                return input(format!("{k} variables but only {n} elements"));
            }
            let a: Vec<SetWord> = (0..k).map(singleton).collect();
            Ok(single(ineq, &table, a))
        }
        Strategy::CanonicalPairs => {
            if 2 * k != n {
                return input(format!("canonical pairs need {} elements, matroid has {n}", 2 * k));
            }
            let a: Vec<SetWord> = (0..k).map(|i| singleton(2 * i) | singleton(2 * i + 1)).collect();
            Ok(single(ineq, &table, a))
        }
        Strategy::Singletons => {
            if k > n {
                return input(format!("{k} variables but only {n} elements"));
            }
            let options: Vec<SetWord> = (0..n).map(singleton).collect();
            Ok(scan(ineq, &table, &options, k, true, budget))
        }
        Strategy::Flats => {
            let options = all_flats(m);
            Ok(scan(ineq, &table, &options, k, false, budget))
        }
        Strategy::AllSubsets { seed } => {
            if n <= 7 && k <= 4 {
                let options = all_flats(m);
                Ok(scan(ineq, &table, &options, k, false, budget))
            } else {
                Ok(sample(ineq, &table, n, k, seed, budget))
            }
        }
    }
}

fn all_flats(m: &Matroid) -> Vec<SetWord> {
    let mut v: Vec<SetWord> = m.flats().into_iter().flatten().collect();
    bitset::sort_lex(&mut v);
    v
}

/// Rank values cached for small grounds; direct queries otherwise.
struct RankTable<'a> {
    m: &'a Matroid,
    table: Option<Vec<u8>>,
}

impl<'a> RankTable<'a> {
    fn new(m: &'a Matroid) -> Self {
        let table = (m.n() <= 20).then(|| (0..1u64 << m.n()).map(|x| m.rank(x) as u8).collect());
        RankTable { m, table }
    }

    fn rank(&self, x: SetWord) -> i64 {
        match &self.table {
            Some(t) => t[x as usize] as i64,
            None => self.m.rank(x) as i64,
        }
    }
}

/// Integer slack fast path; coefficients of the built-ins are integers.
fn slack_fast(ineq: &LinearRankInequality, table: &RankTable, a: &[SetWord]) -> Option<i64> {
    let mut s = 0i64;
    for t in ineq.terms() {
        if !t.coeff.is_integer() {
            return None;
        }
        let c: i64 = t.coeff.to_integer().try_into().ok()?;
        s += c * table.rank(t.expr.resolve(a));
    }
    Some(s)
}

fn is_violated(ineq: &LinearRankInequality, table: &RankTable, a: &[SetWord]) -> bool {
    match slack_fast(ineq, table, a) {
        Some(s) => s < 0,
        None => ineq.sides_with(|x| int(table.rank(x)), a).slack.is_negative(),
    }
}

fn witness(ineq: &LinearRankInequality, table: &RankTable, a: Vec<SetWord>) -> Witness {
    let sides = ineq.sides_with(|x| int(table.rank(x)), &a);
    Witness { assignment: a, sides }
}

fn single(ineq: &LinearRankInequality, table: &RankTable, a: Vec<SetWord>) -> ScanOutcome {
    let w = witness(ineq, table, a);
    let violated = w.sides.slack.is_negative();
    ScanOutcome { witness: violated.then_some(w), complete: true, examined: 1 }
}

/// Odometer over `options^k` (or injective tuples), last position fastest,
/// which is lex order on the tuple of option indices.
fn scan(
    ineq: &LinearRankInequality,
    table: &RankTable,
    options: &[SetWord],
    k: usize,
    injective: bool,
    budget: u64,
) -> ScanOutcome {
    let mut idx: Vec<usize> = if injective { (0..k).collect() } else { vec![0; k] };
    let mut examined = 0u64;
    let mut exhausted = options.is_empty() && k > 0;
    let mut chunk: Vec<Vec<SetWord>> = Vec::with_capacity(CHUNK);
    while !exhausted {
        chunk.clear();
        while chunk.len() < CHUNK && examined < budget && !exhausted {
            chunk.push(idx.iter().map(|&i| options[i]).collect());
            examined += 1;
            exhausted = !advance(&mut idx, options.len(), injective);
        }
        let hit = chunk.par_iter().position_first(|a| is_violated(ineq, table, a));
        if let Some(p) = hit {
            let examined = examined - (chunk.len() - p - 1) as u64;
            let w = witness(ineq, table, chunk.swap_remove(p));
            return ScanOutcome { witness: Some(w), complete: true, examined };
        }
        if examined >= budget {
            break;
        }
    }
    ScanOutcome { witness: None, complete: exhausted, examined }
}

fn advance(idx: &mut [usize], base: usize, injective: bool) -> bool {
    loop {
        let mut i = idx.len();
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < base {
                break;
            }
            idx[i] = 0;
        }
        if !injective || (1..idx.len()).all(|j| !idx[..j].contains(&idx[j])) {
            return true;
        }
    }
}

fn sample(ineq: &LinearRankInequality, table: &RankTable, n: usize, k: usize, seed: u64, budget: u64) -> ScanOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = full(n);
    let mut examined = 0u64;
    while examined < budget {
        let take = (budget - examined).min(CHUNK as u64) as usize;
        let chunk: Vec<Vec<SetWord>> = (0..take).map(|_| (0..k).map(|_| rng.gen::<u64>() & mask).collect()).collect();
        examined += take as u64;
        if let Some(p) = chunk.par_iter().position_first(|a| is_violated(ineq, table, a)) {
            let examined = examined - (take - p - 1) as u64;
            return ScanOutcome { witness: Some(witness(ineq, table, chunk[p].clone())), complete: true, examined };
        }
    }
    ScanOutcome { witness: None, complete: false, examined }
}

/// Names each variable's set with the matroid's labels, e.g. `A={a1,a2}`.
pub fn describe_assignment(ineq: &LinearRankInequality, m: &Matroid, a: &[SetWord]) -> Vec<(String, Vec<String>)> {
    ineq.variables()
        .iter()
        .zip(a)
        .map(|(v, &x)| (v.clone(), elements(x).map(|e| m.ground().label(e)).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogKey};

    fn singletons(k: usize) -> Vec<SetWord> {
        (0..k).map(singleton).collect()
    }

    /// Independent rank oracle: a rank-3 point-line configuration given by
    /// its lines. Rank of X is |X| for |X| ≤ 2, 2 if X lies on a line or
    /// has at most 2 points, else 3.
    fn config_rank(lines: &[SetWord], x: SetWord) -> i64 {
        match x.count_ones() {
            0..=2 => x.count_ones() as i64,
            _ if lines.iter().any(|&l| x & !l == 0) => 2,
            _ => 3,
        }
    }

    fn oracle_sides(ineq: &LinearRankInequality, lines: &[SetWord], a: &[SetWord]) -> (i64, i64) {
        let (mut pos, mut neg) = (0, 0);
        for t in ineq.terms() {
            let c: i64 = t.coeff.to_integer().try_into().unwrap();
            let v = c * config_rank(lines, t.expr.resolve(a));
            if v < 0 {
                neg -= v
            } else {
                pos += v
            }
        }
        (pos, neg)
    }

    fn lines_of(m: &Matroid) -> Vec<SetWord> {
        m.flats_of_rank(2).into_iter().filter(|l| l.count_ones() >= 3).collect()
    }

    #[test]
    fn fano_ineq_on_non_fano() {
        let m = build(CatalogKey::NonFano).unwrap();
        let ineq = fano_ineq();
        let s = ineq.sides(&m, &singletons(7)).unwrap();
        assert_eq!((s.lhs.clone(), s.rhs.clone()), (int(14), int(15)));
        assert_eq!(oracle_sides(&ineq, &lines_of(&m), &singletons(7)), (14, 15));
        assert_eq!(s.slack, int(-1));
    }

    #[test]
    fn non_fano_ineq_on_fano() {
        let m = build(CatalogKey::Fano).unwrap();
        let ineq = non_fano_ineq();
        let s = ineq.sides(&m, &singletons(7)).unwrap();
        assert_eq!((s.lhs, s.rhs, s.slack), (int(16), int(17), int(-1)));
        assert_eq!(oracle_sides(&ineq, &lines_of(&m), &singletons(7)), (16, 17));
    }

    #[test]
    fn new_ineq_on_non_desargues() {
        let m = build(CatalogKey::NonDesargues).unwrap();
        let ineq = new_ineq();
        // Variables A1..A3,B1..B3,C1..C3,D; ground d,a1..a3,b1..b3,c1..c3.
        let a: Vec<SetWord> = (1..10).chain([0]).map(singleton).collect();
        let s = ineq.sides(&m, &a).unwrap();
        assert_eq!((s.lhs, s.rhs, s.slack), (int(43), int(42), int(-1)));
        let (pos, neg) = oracle_sides(&ineq, &lines_of(&m), &a);
        assert_eq!((neg, pos), (43, 42));
    }

    #[test]
    fn new_ineq_expands_the_cyclic_sums() {
        let ineq = new_ineq();
        assert_eq!(ineq.terms().len(), 9 + 2 + 12 + 4);
        let total: BigRational = ineq.terms().iter().map(|t| t.coeff.clone()).sum();
        // 2·9 + 1 + 4 on the right, 2·3 + 9 + 4 on the left.
        assert_eq!(total, int(23 - 19));
    }

    #[test]
    fn ingleton_on_vamos_pairs() {
        let m = build(CatalogKey::Vamos).unwrap();
        let out = search_violation(&ingleton(), &m, Strategy::CanonicalPairs, 1).unwrap();
        let w = out.witness.unwrap();
        assert_eq!((w.sides.lhs, w.sides.rhs, w.sides.slack), (int(15), int(16), int(-1)));
    }

    #[test]
    fn empty_assignment_has_zero_slack() {
        let m = build(CatalogKey::Fano).unwrap();
        for ineq in builtin() {
            let k = ineq.variables().len();
            assert_eq!(ineq.eval(&m, &vec![0; k]).unwrap(), int(0));
        }
    }

    #[test]
    fn ingleton_holds_on_fano_exhaustively() {
        let m = build(CatalogKey::Fano).unwrap();
        let out = search_violation(&ingleton(), &m, Strategy::AllSubsets { seed: 0 }, DEFAULT_SCAN_BUDGET).unwrap();
        assert!(out.witness.is_none());
        assert!(out.complete);
        assert_eq!(out.examined, 16u64.pow(4));
    }

    #[test]
    fn singleton_scan_finds_the_identity_witness_first() {
        let m = build(CatalogKey::NonDesargues).unwrap();
        // Reorder the ground so variable i sits on element i.
        let perm: Vec<usize> = (0..10).map(|e| if e == 0 { 9 } else { e - 1 }).collect();
        let m = m.permute(&perm).unwrap();
        let out = search_violation(&new_ineq(), &m, Strategy::Singletons, 1000).unwrap();
        assert_eq!(out.examined, 1);
        assert_eq!(out.witness.unwrap().assignment, singletons(10));
    }

    #[test]
    fn missing_variables_are_rejected() {
        let m = build(CatalogKey::Fano).unwrap();
        assert!(ingleton().eval(&m, &[1, 2]).is_err());
        let named: BTreeMap<String, SetWord> = [("A".to_string(), 1)].into_iter().collect();
        assert!(ingleton().eval_named(&m, &named).is_err());
    }
}
