//! Dense exact-rational polymatroid functions, the Helgason lift and quotients.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::bitset::{self, card, elements, full, singleton, subsets, SetWord};
use crate::error::{input, Error, Result};
use crate::matroid::{GroundSet, Matroid};

/// Dense storage limit for polymatroid functions.
pub const MAX_POLY_GROUND: usize = 16;

/// A set function with `φ(∅) = 0` that is monotone and submodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolymatroidFn {
    n: usize,
    labels: Option<Vec<String>>,
    values: Vec<BigRational>,
}

impl PolymatroidFn {
    /// Checks all three invariants; `values[x]` is the value on subset `x`.
    pub fn new(n: usize, values: Vec<BigRational>) -> Result<Self> {
        if n > MAX_POLY_GROUND {
            return Err(Error::SizeOverflow(n));
        }
        if values.len() != 1 << n {
            return input(format!("expected {} values, got {}", 1usize << n, values.len()));
        }
        let f = PolymatroidFn { n, labels: None, values };
        f.check()?;
        Ok(f)
    }

    pub fn from_integers(n: usize, values: &[i64]) -> Result<Self> {
        Self::new(n, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return input("label count differs from ground size");
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels.as_ref().map_or_else(|| i.to_string(), |l| l[i].clone())
    }

    fn check(&self) -> Result<()> {
        if !self.values[0].is_zero() {
            return input("polymatroid value on the empty set must be 0");
        }
        let all = full(self.n);
        for x in 0..=all {
            for a in elements(all & !x) {
                let xa = x | singleton(a);
                if self.values[xa as usize] < self.values[x as usize] {
                    return input(format!("not monotone at {} + {a}", bitset::fmt_set(x)));
                }
                for b in elements(all & !xa) {
                    if b < a {
                        continue;
                    }
                    let xb = x | singleton(b);
                    let lhs = &self.values[xa as usize] + &self.values[xb as usize];
                    let rhs = &self.values[x as usize] + &self.values[(xa | xb) as usize];
                    if lhs < rhs {
                        return input(format!(
                            "not submodular at {} with {a}, {b}",
                            bitset::fmt_set(x)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Rank function of a matroid with at most 16 elements.
    pub fn from_matroid(m: &Matroid) -> Result<Self> {
        if m.n() > MAX_POLY_GROUND {
            return Err(Error::SizeOverflow(m.n()));
        }
        let values = (0..=full(m.n()))
            .map(|x| BigRational::from_integer((m.rank(x) as i64).into()))
            .collect();
        let f = PolymatroidFn { n: m.n(), labels: m.ground().labels().map(|l| l.to_vec()), values };
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, x: SetWord) -> &BigRational {
        &self.values[x as usize]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_integer(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    /// `k · φ` for a nonnegative rational `k`.
    pub fn scale(&self, k: &BigRational) -> Result<Self> {
        if *k < BigRational::zero() {
            return input("scaling factor must be nonnegative");
        }
        Ok(PolymatroidFn {
            n: self.n,
            labels: self.labels.clone(),
            values: self.values.iter().map(|v| v * k).collect(),
        })
    }

    fn int_value(&self, x: SetWord) -> Result<i64> {
        let v = &self.values[x as usize];
        if !v.is_integer() {
            return input("the Helgason lift needs an integer-valued function");
        }
        v.to_integer().to_i64().ok_or_else(|| Error::Input("value out of range".into()))
    }
}

/// Quotient of a matroid rank function or polymatroid by a partition.
pub trait SetFunction {
    fn ground_size(&self) -> usize;
    fn eval(&self, x: SetWord) -> BigRational;
}

impl SetFunction for PolymatroidFn {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn eval(&self, x: SetWord) -> BigRational {
        self.values[x as usize].clone()
    }
}

impl SetFunction for Matroid {
    fn ground_size(&self) -> usize {
        self.n()
    }
    fn eval(&self, x: SetWord) -> BigRational {
        BigRational::from_integer((self.rank(x) as i64).into())
    }
}

/// `(ψ/Q)(X) = ψ(⋃_{i ∈ X} T_i)`; `blocks` must partition the ground of `ψ`.
pub fn quotient<F: SetFunction + ?Sized>(psi: &F, blocks: &[SetWord]) -> Result<PolymatroidFn> {
    let n = psi.ground_size();
    let mut seen = 0;
    for &b in blocks {
        if b & seen != 0 || b & !full(n) != 0 {
            return input("quotient blocks overlap or leave the ground set");
        }
        seen |= b;
    }
    if seen != full(n) {
        return input("quotient blocks do not cover the ground set");
    }
    let q = blocks.len();
    if q > MAX_POLY_GROUND {
        return Err(Error::SizeOverflow(q));
    }
    let values = (0..=full(q))
        .map(|x| psi.eval(elements(x).fold(0, |acc, i| acc | blocks[i])))
        .collect();
    PolymatroidFn::new(q, values)
}

/// The Helgason matroid of an integer polymatroid together with the copy map.
#[derive(Debug, Clone)]
pub struct HelgasonLift {
    pub matroid: Matroid,
    /// `theta[c]` is the original element of copy `c`.
    pub theta: Vec<usize>,
}

impl HelgasonLift {
    /// Copies of each original element, as blocks of the lifted ground.
    pub fn blocks(&self, n: usize) -> Vec<SetWord> {
        let mut out = vec![0; n];
        for (c, &s) in self.theta.iter().enumerate() {
            out[s] |= singleton(c);
        }
        out
    }
}

/// Lifts `φ` to the matroid on `φ(s)` copies of each `s` with
/// `r(Z) = min_{X ⊆ Z} φ(θ(X)) + |Z \ X|`, then confirms `φ = r/θ`.
pub fn helgason_lift(phi: &PolymatroidFn) -> Result<HelgasonLift> {
    let n = phi.n();
    let mut theta = Vec::new();
    for s in 0..n {
        let copies = phi.int_value(singleton(s))?;
        for _ in 0..copies {
            theta.push(s);
        }
    }
    if theta.len() > bitset::MAX_GROUND {
        return Err(Error::SizeOverflow(theta.len()));
    }
    let big_n = theta.len();
    let mut blocks = vec![0u64; n];
    for (c, &s) in theta.iter().enumerate() {
        blocks[s] |= singleton(c);
    }
    let ints: Vec<i64> = (0..=full(n)).map(|x| phi.int_value(x)).collect::<Result<_>>()?;
    // Optimal X for fixed θ(X) = T is Z ∩ θ⁻¹(T), so minimise over T ⊆ θ(Z).
    let r_phi = |z: SetWord| -> i64 {
        let support = (0..n).filter(|&s| z & blocks[s] != 0).fold(0, |acc, s| acc | singleton(s));
        subsets(support)
            .map(|t| {
                let covered = elements(t).fold(0, |acc, s| acc | blocks[s]);
                ints[t as usize] + card(z & !covered) as i64
            })
            .min()
            .unwrap_or(0)
    };
    let rank = r_phi(full(big_n)) as usize;
    let mut bases = Vec::new();
    let mut stack: Vec<(SetWord, usize)> = vec![(0, 0)];
    while let Some((set, next)) = stack.pop() {
        let size = card(set) as usize;
        if size == rank {
            bases.push(set);
            continue;
        }
        if big_n - next < rank - size {
            continue;
        }
        for e in (next..big_n).rev() {
            let cand = set | singleton(e);
            if r_phi(cand) == (size + 1) as i64 {
                stack.push((cand, e + 1));
            }
        }
    }
    let labels: Vec<String> = {
        let mut count = vec![0usize; n];
        theta
            .iter()
            .map(|&s| {
                count[s] += 1;
                format!("{}#{}", phi.label(s), count[s])
            })
            .collect()
    };
    let matroid = Matroid::from_bases(GroundSet::labelled(labels)?, rank, bases)?;
    for y in 0..=full(n) {
        let lifted = elements(y).fold(0, |acc, s| acc | blocks[s]);
        if matroid.rank(lifted) as i64 != ints[y as usize] {
            return Err(Error::Certification(format!(
                "lift rank differs from φ on {}",
                bitset::fmt_set(y)
            )));
        }
    }
    Ok(HelgasonLift { matroid, theta })
}

/// Every integer polymatroid on `n` elements with values in `0..=max`, in
/// lexicographic order of the value table.
pub fn enumerate_integer_polymatroids(n: usize, max: i64) -> Vec<PolymatroidFn> {
    let size = 1usize << n;
    let mut out = Vec::new();
    let mut vals = vec![0i64; size];
    fn rec(pos: usize, vals: &mut Vec<i64>, n: usize, max: i64, out: &mut Vec<PolymatroidFn>) {
        if pos == vals.len() {
            if let Ok(f) = PolymatroidFn::from_integers(n, vals) {
                out.push(f);
            }
            return;
        }
        let x = pos as SetWord;
        // Monotonicity against immediate subsets bounds the choice from below.
        let lo = elements(x).map(|e| vals[(x & !singleton(e)) as usize]).max().unwrap_or(0);
        // Subadditivity over a singleton split bounds it from above.
        let hi = elements(x)
            .filter(|&e| x != singleton(e))
            .map(|e| vals[(x & !singleton(e)) as usize] + vals[singleton(e) as usize])
            .min()
            .unwrap_or(max)
            .min(max);
        for v in lo..=hi {
            vals[pos] = v;
            rec(pos + 1, vals, n, max, out);
        }
    }
    rec(1, &mut vals, n, max, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::uniform;

    #[test]
    fn rejects_non_submodular() {
        // φ({0}) = φ({1}) = 1 but φ({0,1}) = 3.
        assert!(PolymatroidFn::from_integers(2, &[0, 1, 1, 3]).is_err());
        assert!(PolymatroidFn::from_integers(2, &[1, 1, 1, 1]).is_err());
        assert!(PolymatroidFn::from_integers(2, &[0, 2, 1, 1]).is_err());
    }

    #[test]
    fn single_element_double_lifts_to_u22() {
        let phi = PolymatroidFn::from_integers(1, &[0, 2]).unwrap();
        let lift = helgason_lift(&phi).unwrap();
        assert_eq!(lift.matroid, uniform(2, 2).unwrap());
        assert_eq!(lift.theta, vec![0, 0]);
    }

    #[test]
    fn unit_values_lift_to_themselves() {
        let u23 = uniform(2, 3).unwrap();
        let phi = PolymatroidFn::from_matroid(&u23).unwrap();
        let lift = helgason_lift(&phi).unwrap();
        assert_eq!(lift.matroid, u23);
    }

    #[test]
    fn quotient_by_singletons_is_identity() {
        let u23 = uniform(2, 3).unwrap();
        let q = quotient(&u23, &[1, 2, 4]).unwrap();
        assert_eq!(q, PolymatroidFn::from_matroid(&u23).unwrap());
        assert!(quotient(&u23, &[1, 2]).is_err());
        assert!(quotient(&u23, &[3, 6]).is_err());
    }

    #[test]
    fn enumeration_on_one_element() {
        assert_eq!(enumerate_integer_polymatroids(1, 3).len(), 4);
    }
}
