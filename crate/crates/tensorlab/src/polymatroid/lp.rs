//! Exact feasibility of the tensor-product LP restricted to a subset family.
//!
//! Variables are the values `x_W` of a putative tensor product on the family
//! members. Rows are monotonicity along covers, submodularity on pairs whose
//! meet and join are present, and rectangle equalities `x_{X1×X2} =
//! φ1(X1)·φ2(X2)`. For chains, level `i` lives on `S_{i−1} × T` and its
//! rectangles link back to level `i−1`.
//!
//! Rows are added lazily: each round solves the active rows exactly, then
//! scans every row against the model and activates the violated ones. A
//! subset of valid rows that is infeasible already refutes the whole system,
//! so the Farkas certificate of the last round is a certificate for all.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bitset::{self, card, singleton, SetWord};
use crate::error::{input, Error, Result};
use crate::inequalities::{LinearRankInequality, Sense};
use crate::polymatroid::lattice::{SubsetLattice, DEFAULT_LATTICE_CAP};
use crate::polymatroid::simplex::{self, Feasibility, LinRow, RowSense};
use crate::polymatroid::PolymatroidFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Mono,
    Submod,
    Rect,
    Link,
}

/// `(level, set)`; level 1 is the product of the two given factors.
pub type Key = (usize, SetWord);

/// One row `Σ coeffs·x ≥ rhs` (mono, submod) or `= rhs` (rect, link),
/// with its multiplier in a Farkas certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasRow {
    pub kind: RowKind,
    pub level: usize,
    /// Mono: `[A, B]`; submod: `[A, B, A∩B, A∪B]`; rect: `[X1×X2, X1, X2]`;
    /// link: `[X1×X2, X1, X2]` with `X1` on the previous level.
    pub sets: Vec<SetWord>,
    pub coeffs: Vec<(Key, BigRational)>,
    pub rhs: BigRational,
    pub multiplier: BigRational,
}

/// A level-1 rectangle pinned to `φ1(left)·φ2(right)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectValue {
    pub set: SetWord,
    pub left: SetWord,
    pub right: SetWord,
    pub left_value: BigRational,
    pub right_value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub feasible: bool,
    /// Values on every family member of every level, when feasible.
    pub model: Option<BTreeMap<Key, BigRational>>,
    /// Rows with nonzero multipliers, when infeasible.
    pub farkas: Option<Vec<FarkasRow>>,
    /// `Σ multiplier·rhs`; the certificate reads `0 ≥ contradiction > 0`.
    pub contradiction: Option<BigRational>,
    pub rects: Vec<RectValue>,
    pub left_n: usize,
    pub right_n: usize,
    pub left_labels: Vec<String>,
    pub right_labels: Vec<String>,
    pub rounds: usize,
    pub active_rows: usize,
}

/// Rows activated per round at most.
const ROUND_ROWS: usize = 400;
const MAX_ROUNDS: usize = 100_000;

#[derive(Debug, Clone)]
enum Slot {
    Const(BigRational),
    Var(usize),
}

#[derive(Debug, Clone)]
struct FullRow {
    kind: RowKind,
    level: usize,
    sets: Vec<SetWord>,
    entries: Vec<(Key, BigRational)>,
    sense: RowSense,
}

struct Level<'a> {
    lattice: &'a SubsetLattice,
    slots: Vec<Slot>,
    covers: Vec<(usize, usize)>,
    /// Full Boolean lattices use elemental rows, which imply all others.
    boolean: bool,
}

struct Engine<'a> {
    levels: Vec<Level<'a>>,
    var_keys: Vec<Key>,
    links: Vec<FullRow>,
    rects: Vec<RectValue>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl<'a> Engine<'a> {
    fn slot(&self, (lvl, set): Key) -> &Slot {
        let l = &self.levels[lvl - 1];
        &l.slots[l.lattice.index_of(set).expect("key is a family member")]
    }

    fn mono_row(&self, lvl: usize, a: SetWord, b: SetWord) -> FullRow {
        FullRow {
            kind: RowKind::Mono,
            level: lvl,
            sets: vec![a, b],
            entries: vec![((lvl, b), int(1)), ((lvl, a), int(-1))],
            sense: RowSense::Ge,
        }
    }

    fn submod_row(&self, lvl: usize, a: SetWord, b: SetWord) -> FullRow {
        FullRow {
            kind: RowKind::Submod,
            level: lvl,
            sets: vec![a, b, a & b, a | b],
            entries: vec![((lvl, a), int(1)), ((lvl, b), int(1)), ((lvl, a & b), int(-1)), ((lvl, a | b), int(-1))],
            sense: RowSense::Ge,
        }
    }

    /// Calls `f` on every mono and submod row of every level, in a fixed order.
    fn for_each_row(&self, mut f: impl FnMut(FullRow)) {
        for (li, l) in self.levels.iter().enumerate() {
            let lvl = li + 1;
            let lat = l.lattice;
            for &(a, b) in &l.covers {
                f(self.mono_row(lvl, lat.member(a), lat.member(b)));
            }
            if l.boolean {
                let n = lat.n_left() * lat.n_right();
                for x in 0..1u64 << n {
                    for i in (0..n).filter(|&i| x & singleton(i) == 0) {
                        for j in (i + 1..n).filter(|&j| x & singleton(j) == 0) {
                            f(self.submod_row(lvl, x | singleton(i), x | singleton(j)));
                        }
                    }
                }
            } else {
                let ms = lat.members();
                for i in 0..ms.len() {
                    for j in i + 1..ms.len() {
                        let (a, b) = (ms[i], ms[j]);
                        let (meet, join) = (a & b, a | b);
                        if meet != a && meet != b && lat.contains(meet) && lat.contains(join) {
                            f(self.submod_row(lvl, a, b));
                        }
                    }
                }
            }
        }
    }

    fn value(&self, key: Key, model: &[BigRational]) -> BigRational {
        match self.slot(key) {
            Slot::Const(v) => v.clone(),
            Slot::Var(i) => model[*i].clone(),
        }
    }

    fn row_value(&self, row: &FullRow, model: &[BigRational]) -> BigRational {
        row.entries.iter().map(|(k, c)| c * self.value(*k, model)).sum()
    }

    fn violated(&self, row: &FullRow, model: &[BigRational]) -> bool {
        let v = self.row_value(row, model);
        match row.sense {
            RowSense::Ge => v.is_negative(),
            RowSense::Eq => !v.is_zero(),
        }
    }

    /// Fills in variables no active row mentions with the largest known
    /// value below them, so that monotonicity from below holds.
    fn complete_model(&self, known: &[bool], model: &mut [BigRational]) {
        for l in &self.levels {
            let lat = l.lattice;
            let mut order: Vec<usize> = (0..lat.len()).collect();
            order.sort_by_key(|&i| card(lat.member(i)));
            let mut val: Vec<Option<BigRational>> = vec![None; lat.len()];
            for &i in &order {
                match &l.slots[i] {
                    Slot::Const(v) => val[i] = Some(v.clone()),
                    Slot::Var(v) if known[*v] => val[i] = Some(model[*v].clone()),
                    Slot::Var(v) => {
                        let m = lat.member(i);
                        let best = (0..lat.len())
                            .filter(|&j| j != i && bitset::is_subset(lat.member(j), m))
                            .filter_map(|j| val[j].clone())
                            .max()
                            .unwrap_or_else(BigRational::zero);
                        model[*v] = best.clone();
                        val[i] = Some(best);
                    }
                }
            }
        }
    }

    fn run(&self) -> Result<RunResult> {
        let nvars = self.var_keys.len();
        let mut active: Vec<FullRow> = self.links.clone();
        let mut seen: HashMap<Vec<SetWord>, ()> = HashMap::new();
        for r in &active {
            seen.insert(row_key(r), ());
        }
        for round in 1..=MAX_ROUNDS {
            // Restrict to variables mentioned by active rows.
            let mut dense: HashMap<usize, usize> = HashMap::new();
            let mut rows = Vec::with_capacity(active.len());
            for r in &active {
                let mut coeffs: Vec<(usize, BigRational)> = Vec::new();
                let mut rhs = BigRational::zero();
                for (k, c) in &r.entries {
                    match self.slot(*k) {
                        Slot::Const(v) => rhs -= c * v,
                        Slot::Var(i) => {
                            let next = dense.len();
                            let d = *dense.entry(*i).or_insert(next);
                            match coeffs.iter_mut().find(|(j, _)| *j == d) {
                                Some((_, cc)) => *cc += c,
                                None => coeffs.push((d, c.clone())),
                            }
                        }
                    }
                }
                rows.push(LinRow { coeffs, sense: r.sense, rhs });
            }
            match simplex::solve(dense.len(), &rows) {
                Feasibility::Infeasible(y) => {
                    debug_assert!(simplex::check_farkas(dense.len(), &rows, &y));
                    return Ok(RunResult::Infeasible { rows: active, y, rounds: round });
                }
                Feasibility::Feasible(x) => {
                    let mut model = vec![BigRational::zero(); nvars];
                    let mut known = vec![false; nvars];
                    for (&v, &d) in &dense {
                        model[v] = x[d].clone();
                        known[v] = true;
                    }
                    self.complete_model(&known, &mut model);
                    let mut fresh: Vec<FullRow> = Vec::new();
                    self.for_each_row(|row| {
                        if fresh.len() < ROUND_ROWS && self.violated(&row, &model) {
                            let k = row_key(&row);
                            if !seen.contains_key(&k) {
                                seen.insert(k, ());
                                fresh.push(row);
                            }
                        }
                    });
                    if fresh.is_empty() {
                        return Ok(RunResult::Feasible { model, rounds: round, active: active.len() });
                    }
                    active.extend(fresh);
                }
            }
        }
        Err(Error::Precondition(format!("LP did not settle within {MAX_ROUNDS} rounds")))
    }
}

fn row_key(r: &FullRow) -> Vec<SetWord> {
    let mut k = vec![r.kind as u64, r.level as u64];
    k.extend(&r.sets);
    k
}

enum RunResult {
    Feasible { model: Vec<BigRational>, rounds: usize, active: usize },
    Infeasible { rows: Vec<FullRow>, y: Vec<BigRational>, rounds: usize },
}

fn is_boolean(l: &SubsetLattice) -> bool {
    let n = l.n_left() * l.n_right();
    n < 32 && l.len() == 1usize << n
}

fn labels_of(f: &PolymatroidFn) -> Vec<String> {
    (0..f.n()).map(|i| f.labels().map_or_else(|| format!("s{i}"), |l| l[i].clone())).collect()
}

fn check_family(l: &SubsetLattice, n_left: usize, n_right: usize) -> Result<()> {
    if l.n_left() != n_left || l.n_right() != n_right {
        return input(format!(
            "family lives on {}x{}, expected {n_left}x{n_right}",
            l.n_left(),
            l.n_right()
        ));
    }
    if !l.contains(0) {
        return input("family must contain the empty set");
    }
    if l.is_closed() {
        for &a in l.members() {
            for &b in l.members() {
                if !l.contains(a & b) || !l.contains(a | b) {
                    return Err(Error::Input("lattice is not closed under ∩ and ∪".into()));
                }
            }
        }
    }
    Ok(())
}

/// Builds and solves the system for `levels[0]` on `S1 × S2` (pinned to
/// `φ1 ⊗ φ2` on rectangles) and, for a chain, `levels[i]` on `S_i × S2`.
fn solve_levels(phi1: &PolymatroidFn, phi2: &PolymatroidFn, lattices: &[&SubsetLattice]) -> Result<LpOutcome> {
    let mut levels: Vec<Level> = Vec::new();
    let mut var_keys: Vec<Key> = Vec::new();
    let mut links = Vec::new();
    let mut rects = Vec::new();
    for (li, &lat) in lattices.iter().enumerate() {
        let lvl = li + 1;
        let n_left = phi1.n() * phi2.n().pow(li as u32);
        check_family(lat, n_left, phi2.n())?;
        let mut slots = Vec::with_capacity(lat.len());
        for i in 0..lat.len() {
            let w = lat.member(i);
            let pinned = match lat.rectangle(i) {
                Some((x1, x2)) if lvl == 1 => {
                    let (a, b) = (phi1.value(x1).clone(), phi2.value(x2).clone());
                    rects.push(RectValue { set: w, left: x1, right: x2, left_value: a.clone(), right_value: b.clone() });
                    Some(a * b)
                }
                Some((_, _)) if w == 0 => Some(BigRational::zero()),
                _ => None,
            };
            match pinned {
                Some(v) => slots.push(Slot::Const(v)),
                None => {
                    slots.push(Slot::Var(var_keys.len()));
                    var_keys.push((lvl, w));
                }
            }
        }
        if lvl > 1 {
            let prev = lattices[li - 1];
            for (_, x1, x2) in lat.rectangles() {
                if x1 != 0 && prev.contains(x1) {
                    let w = bitset::product(x1, x2, phi2.n());
                    links.push(FullRow {
                        kind: RowKind::Link,
                        level: lvl,
                        sets: vec![w, x1, x2],
                        entries: vec![((lvl, w), int(1)), ((lvl - 1, x1), -phi2.value(x2).clone())],
                        sense: RowSense::Eq,
                    });
                }
            }
        }
        let boolean = is_boolean(lat);
        let covers = if boolean {
            let n = lat.n_left() * lat.n_right();
            let mut c = Vec::new();
            for x in 0..1u64 << n {
                for e in (0..n).filter(|&e| x & singleton(e) == 0) {
                    c.push((lat.index_of(x).unwrap(), lat.index_of(x | singleton(e)).unwrap()));
                }
            }
            c
        } else {
            lat.covers()
        };
        levels.push(Level { lattice: lat, slots, covers, boolean });
    }
    let engine = Engine { levels, var_keys, links, rects };
    let base = LpOutcome {
        feasible: false,
        model: None,
        farkas: None,
        contradiction: None,
        rects: engine.rects.clone(),
        left_n: phi1.n(),
        right_n: phi2.n(),
        left_labels: labels_of(phi1),
        right_labels: labels_of(phi2),
        rounds: 0,
        active_rows: 0,
    };
    match engine.run()? {
        RunResult::Feasible { model, rounds, active } => {
            let mut out = BTreeMap::new();
            for (li, l) in engine.levels.iter().enumerate() {
                for i in 0..l.lattice.len() {
                    let key = (li + 1, l.lattice.member(i));
                    out.insert(key, engine.value(key, &model));
                }
            }
            let outcome = LpOutcome { feasible: true, model: Some(out), rounds, active_rows: active, ..base };
            if !verify_model(&engine, &outcome) {
                return Err(Error::Certification("LP model fails re-verification".into()));
            }
            Ok(outcome)
        }
        RunResult::Infeasible { rows, y, rounds } => {
            let farkas = assemble_farkas(&engine, &rows, &y);
            let contradiction: BigRational = farkas.iter().map(|r| &r.rhs * &r.multiplier).sum();
            let outcome = LpOutcome {
                feasible: false,
                farkas: Some(farkas),
                contradiction: Some(contradiction),
                rounds,
                active_rows: rows.len(),
                ..base
            };
            if !verify_farkas(&outcome, phi1, phi2) {
                return Err(Error::Certification("Farkas certificate fails re-verification".into()));
            }
            Ok(outcome)
        }
    }
}

fn verify_model(engine: &Engine, outcome: &LpOutcome) -> bool {
    let model = outcome.model.as_ref().expect("feasible outcome has a model");
    let get = |k: &Key| model[k].clone();
    let mut ok = true;
    let check = |row: &FullRow| -> bool {
        let v: BigRational = row.entries.iter().map(|(k, c)| c * get(k)).sum();
        match row.sense {
            RowSense::Ge => !v.is_negative(),
            RowSense::Eq => v.is_zero(),
        }
    };
    engine.for_each_row(|row| ok &= check(&row));
    ok && engine.links.iter().all(check)
        && engine.rects.iter().all(|r| model[&(1, r.set)] == &r.left_value * &r.right_value)
}

/// Turns solver multipliers into a certificate over full rows: negative
/// variable coefficients are cancelled with cover chains down to `∅`, and
/// pinned rectangles get explicit equality rows.
fn assemble_farkas(engine: &Engine, rows: &[FullRow], y: &[BigRational]) -> Vec<FarkasRow> {
    let mut out: Vec<FarkasRow> = Vec::new();
    fn push(out: &mut Vec<FarkasRow>, row: &FullRow, m: BigRational) {
        if m.is_zero() {
            return;
        }
        let rhs = BigRational::zero();
        match out.iter_mut().find(|f| f.kind == row.kind && f.level == row.level && f.sets == row.sets) {
            Some(f) => f.multiplier += m,
            None => out.push(FarkasRow {
                kind: row.kind,
                level: row.level,
                sets: row.sets.clone(),
                coeffs: row.entries.clone(),
                rhs,
                multiplier: m,
            }),
        }
    }
    for (r, m) in rows.iter().zip(y) {
        push(&mut out, r, m.clone());
    }
    let mut combo: BTreeMap<Key, BigRational> = BTreeMap::new();
    for f in out.iter() {
        for (k, c) in &f.coeffs {
            *combo.entry(*k).or_insert_with(BigRational::zero) += c * &f.multiplier;
        }
    }
    // x ≥ 0 was implicit in the solver; realise it through covers.
    let repairs: Vec<(Key, BigRational)> = combo
        .iter()
        .filter(|(k, v)| v.is_negative() && matches!(engine.slot(**k), Slot::Var(_)))
        .map(|(k, v)| (*k, -v.clone()))
        .collect();
    for ((lvl, set), lambda) in repairs {
        let lat = engine.levels[lvl - 1].lattice;
        let chain = lat.chain_to(lat.index_of(set).unwrap());
        for w in chain.windows(2) {
            let row = engine.mono_row(lvl, lat.member(w[0]), lat.member(w[1]));
            for (k, c) in &row.entries {
                *combo.entry(*k).or_insert_with(BigRational::zero) += c * &lambda;
            }
            push(&mut out, &row, lambda.clone());
        }
    }
    for (k, g) in combo {
        if g.is_zero() {
            continue;
        }
        if let Slot::Const(v) = engine.slot(k) {
            let (x1, x2) = bitset_factors(engine, k);
            out.push(FarkasRow {
                kind: RowKind::Rect,
                level: k.0,
                sets: vec![k.1, x1, x2],
                coeffs: vec![(k, int(1))],
                rhs: v.clone(),
                multiplier: -g,
            });
        }
    }
    out.retain(|r| !r.multiplier.is_zero());
    out
}

fn bitset_factors(engine: &Engine, (lvl, set): Key) -> (SetWord, SetWord) {
    let l = engine.levels[lvl - 1].lattice;
    l.rectangle(l.index_of(set).unwrap()).unwrap_or((0, 0))
}

/// Exact re-verification: every row is a genuine constraint of the system
/// for these factors, the combination vanishes on every variable, and the
/// right-hand sides sum to a positive number.
pub fn verify_farkas(outcome: &LpOutcome, phi1: &PolymatroidFn, phi2: &PolymatroidFn) -> bool {
    let Some(rows) = &outcome.farkas else { return false };
    let n2 = phi2.n();
    let mut combo: BTreeMap<Key, BigRational> = BTreeMap::new();
    let mut total = BigRational::zero();
    for r in rows {
        let lvl = r.level;
        let expected: Vec<(Key, BigRational)> = match (r.kind, r.sets.as_slice()) {
            (RowKind::Mono, &[a, b]) if bitset::is_subset(a, b) && a != b => {
                vec![((lvl, b), int(1)), ((lvl, a), int(-1))]
            }
            (RowKind::Submod, &[a, b, m, j]) if m == a & b && j == a | b => {
                vec![((lvl, a), int(1)), ((lvl, b), int(1)), ((lvl, m), int(-1)), ((lvl, j), int(-1))]
            }
            (RowKind::Rect, &[w, x1, x2]) if lvl == 1 && w == bitset::product(x1, x2, n2) => {
                if r.rhs != phi1.value(x1) * phi2.value(x2) {
                    return false;
                }
                vec![((lvl, w), int(1))]
            }
            (RowKind::Rect, &[0, _, _]) if r.rhs.is_zero() => vec![((lvl, 0), int(1))],
            (RowKind::Link, &[w, x1, x2]) if lvl > 1 && w == bitset::product(x1, x2, n2) => {
                vec![((lvl, w), int(1)), ((lvl - 1, x1), -phi2.value(x2).clone())]
            }
            _ => return false,
        };
        if expected != r.coeffs {
            return false;
        }
        let inequality = matches!(r.kind, RowKind::Mono | RowKind::Submod);
        if inequality && (r.multiplier.is_negative() || !r.rhs.is_zero()) {
            return false;
        }
        if r.kind == RowKind::Link && !r.rhs.is_zero() {
            return false;
        }
        for (k, c) in &r.coeffs {
            *combo.entry(*k).or_insert_with(BigRational::zero) += c * &r.multiplier;
        }
        total += &r.rhs * &r.multiplier;
    }
    combo.values().all(|v| v.is_zero()) && total.is_positive() && outcome.contradiction.as_ref() == Some(&total)
}

/// Feasibility of a tensor product of `phi1` and `phi2` on `family`.
pub fn lp_tensor_feasible(phi1: &PolymatroidFn, phi2: &PolymatroidFn, family: &SubsetLattice) -> Result<LpOutcome> {
    solve_levels(phi1, phi2, &[family])
}

/// Feasibility of a `k`-level chain `x^1 ∈ φ ⊗ ψ, x^2 ∈ x^1 ⊗ ψ, …` with
/// `ε = 0`. Without explicit families, every level uses its full Boolean
/// lattice, which must fit in the default cap.
pub fn lp_chain_feasible(
    phi: &PolymatroidFn,
    k: usize,
    psi: &PolymatroidFn,
    families: Option<&[SubsetLattice]>,
) -> Result<LpOutcome> {
    if k == 0 {
        return input("a chain needs at least one level");
    }
    let owned: Vec<SubsetLattice>;
    let lattices: Vec<&SubsetLattice> = match families {
        Some(f) if f.len() == k => f.iter().collect(),
        Some(f) => return input(format!("{} families given for {k} levels", f.len())),
        None => {
            owned = (0..k)
                .map(|i| {
                    let n_left = phi.n() * psi.n().pow(i as u32);
                    SubsetLattice::full_boolean(n_left, psi.n(), DEFAULT_LATTICE_CAP)
                })
                .collect::<Result<_>>()?;
            owned.iter().collect()
        }
    };
    solve_levels(phi, psi, &lattices)
}

/// Which factor stays symbolic in [`render_farkas`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The inequality `Σ g_R·φ1(X1)·φ2(X2) ≥ 0` carried by a level-1
/// certificate, written over one factor's subsets with the other factor's
/// values as coefficients. Variables are that factor's elements; the
/// certificate makes it fail at the canonical singleton assignment.
pub fn render_farkas(outcome: &LpOutcome, side: Side) -> Result<LinearRankInequality> {
    let Some(rows) = &outcome.farkas else {
        return Err(Error::Precondition("a feasible outcome has no Farkas certificate".into()));
    };
    if rows.iter().any(|r| r.level != 1) {
        return Err(Error::Precondition("only single-level certificates can be rendered".into()));
    }
    let mut terms: BTreeMap<SetWord, BigRational> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.kind == RowKind::Rect) {
        let rect = outcome
            .rects
            .iter()
            .find(|x| x.set == r.sets[0])
            .ok_or_else(|| Error::Precondition("rectangle missing from the outcome".into()))?;
        // The rectangle row enters with multiplier −g_R.
        let g = -r.multiplier.clone();
        let (set, coeff) = match side {
            Side::Right => (rect.right, g * &rect.left_value),
            Side::Left => (rect.left, g * &rect.right_value),
        };
        *terms.entry(set).or_insert_with(BigRational::zero) += coeff;
    }
    let labels = match side {
        Side::Right => &outcome.right_labels,
        Side::Left => &outcome.left_labels,
    };
    let mut keys: Vec<SetWord> = terms.keys().copied().filter(|&s| s != 0).collect();
    bitset::sort_lex(&mut keys);
    let list: Vec<(BigRational, Vec<String>)> = keys
        .into_iter()
        .filter(|s| !terms[s].is_zero())
        .map(|s| (terms[&s].clone(), bitset::elements(s).map(|e| labels[e].clone()).collect()))
        .collect();
    if list.is_empty() {
        return Err(Error::Precondition("certificate does not mention the symbolic factor".into()));
    }
    LinearRankInequality::new("farkas", labels.clone(), list, Sense::GreaterEq)
}

/// The value the rendered inequality takes at the canonical assignment, as
/// predicted by the certificate: `−contradiction`.
pub fn rendered_slack(outcome: &LpOutcome) -> Option<BigRational> {
    outcome.contradiction.as_ref().map(|c| -c.clone())
}

/// Canonical singleton assignment for a rendered inequality.
pub fn canonical_assignment(n: usize) -> Vec<SetWord> {
    (0..n).map(singleton).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, uniform, CatalogKey};
    use crate::polymatroid::lattice::{build_family, build_lattice};
    use crate::polymatroid::seeds::{ingleton_seeds, new_ineq_seeds};

    fn rank(m: &crate::Matroid) -> PolymatroidFn {
        PolymatroidFn::from_matroid(m).unwrap()
    }

    #[test]
    fn u23_with_u22_is_feasible_on_the_full_lattice() {
        let phi1 = rank(&uniform(2, 3).unwrap());
        let phi2 = rank(&uniform(2, 2).unwrap());
        let l = SubsetLattice::full_boolean(3, 2, DEFAULT_LATTICE_CAP).unwrap();
        let out = lp_tensor_feasible(&phi1, &phi2, &l).unwrap();
        assert!(out.feasible);
        assert_eq!(out.model.as_ref().unwrap()[&(1, bitset::full(6))], int(4));
    }

    #[test]
    fn vamos_refuted_on_ingleton_family() {
        let phi1 = rank(&uniform(2, 3).unwrap());
        let phi2 = rank(&build(CatalogKey::Vamos).unwrap());
        let seeds = ingleton_seeds(8, [0b11, 0b1100, 0b11_0000, 0b1100_0000]);
        let fam = build_family(3, 8, &seeds, DEFAULT_LATTICE_CAP).unwrap();
        let out = lp_tensor_feasible(&phi1, &phi2, &fam).unwrap();
        assert!(!out.feasible);
        assert!(verify_farkas(&out, &phi1, &phi2));
        let ineq = render_farkas(&out, Side::Right).unwrap();
        let slack = ineq.eval(&phi2, &canonical_assignment(8)).unwrap();
        assert!(slack.is_negative());
        assert_eq!(Some(slack), rendered_slack(&out));
    }

    #[test]
    fn non_desargues_refuted_on_new_ineq_family() {
        let phi1 = rank(&build(CatalogKey::GraphicK4).unwrap());
        let phi2 = rank(&build(CatalogKey::NonDesargues).unwrap());
        let sets: Vec<SetWord> = (1..10).chain([0]).map(singleton).collect();
        let seeds = new_ineq_seeds(10, sets.try_into().unwrap());
        let fam = build_family(6, 10, &seeds, DEFAULT_LATTICE_CAP).unwrap();
        let out = lp_tensor_feasible(&phi1, &phi2, &fam).unwrap();
        assert!(!out.feasible);
        assert!(verify_farkas(&out, &phi1, &phi2));
        let ineq = render_farkas(&out, Side::Right).unwrap();
        assert!(ineq.eval(&phi2, &canonical_assignment(10)).unwrap().is_negative());
    }

    #[test]
    fn fano_with_u23_survives_its_ingleton_family() {
        // F7 has a tensor product with U23, so no seeded family can refute it.
        let phi1 = rank(&uniform(2, 3).unwrap());
        let phi2 = rank(&build(CatalogKey::Fano).unwrap());
        let seeds = ingleton_seeds(7, [0b1, 0b10, 0b100, 0b1000]);
        let fam = build_family(3, 7, &seeds, DEFAULT_LATTICE_CAP).unwrap();
        assert!(lp_tensor_feasible(&phi1, &phi2, &fam).unwrap().feasible);
    }

    #[test]
    fn chain_for_rank_one() {
        let u12 = rank(&uniform(1, 2).unwrap());
        let u23 = rank(&uniform(2, 3).unwrap());
        assert!(lp_chain_feasible(&u12, 1, &u23, None).unwrap().feasible);
    }

    #[test]
    fn small_closed_lattice() {
        let l = build_lattice(3, 2, &[0b000011, 0b001100], 64).unwrap();
        let phi1 = rank(&uniform(2, 3).unwrap());
        let phi2 = rank(&uniform(1, 2).unwrap());
        assert!(lp_tensor_feasible(&phi1, &phi2, &l).unwrap().feasible);
    }
}
