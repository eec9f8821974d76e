//! Exact arithmetic over prime fields and the rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::catalog::is_prime;
use crate::error::{input, Error, Result};

/// The field a matrix lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Gf(u64),
    Q,
}

impl FieldSpec {
    pub fn gf(p: u64) -> Result<FieldSpec> {
        if !is_prime(p) || p >= 1 << 31 {
            return input(format!("gf({p}) needs a prime below 2^31"));
        }
        Ok(FieldSpec::Gf(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Gf(p) => *p,
            FieldSpec::Q => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf(p) => write!(f, "gf({p})"),
            FieldSpec::Q => write!(f, "q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" || t == "rationals" {
            return Ok(FieldSpec::Q);
        }
        let inner = t
            .strip_prefix("gf")
            .map(|r| r.trim_matches(|c| c == '(' || c == ')' || c == ':'));
        match inner.and_then(|r| r.parse::<u64>().ok()) {
            Some(p) => FieldSpec::gf(p),
            None => input(format!("unknown field {s}")),
        }
    }
}

/// Arithmetic needed by Gaussian elimination.
pub trait FieldOps {
    type E: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Debug, Clone, Copy)]
pub struct Gfp(pub u64);

impl FieldOps for Gfp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        pow_mod(*a, self.0 - 2, self.0)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[derive(Debug, Clone, Copy)]
pub struct Rationals;

impl FieldOps for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// Parses `"a"` or `"a/b"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reduces a rational into `GF(p)`; the denominator must be a unit.
pub fn rational_to_gf(q: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let reduce = |x: &BigInt| -> u64 {
        let r = x % &pb;
        let r = if r.is_negative() { r + &pb } else { r };
        r.try_into().expect("residue fits")
    };
    let n = reduce(q.numer());
    let d = reduce(q.denom());
    if d == 0 {
        return input(format!("denominator of {} vanishes mod {p}", fmt_rational(q)));
    }
    Ok(Gfp(p).mul(&n, &Gfp(p).inv(&d)))
}

/// Incrementally maintained row-echelon basis of a set of vectors.
#[derive(Debug)]
pub struct Echelon<F: FieldOps> {
    rows: Vec<(usize, Vec<F::E>)>,
}

impl<F: FieldOps> Clone for Echelon<F> {
    fn clone(&self) -> Self {
        Echelon { rows: self.rows.clone() }
    }
}

impl<F: FieldOps> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<F: FieldOps> Echelon<F> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v`; returns the residue (zero iff `v` is in the span).
    fn reduce(&self, f: &F, mut v: Vec<F::E>) -> Vec<F::E> {
        for (pivot, row) in &self.rows {
            if !f.is_zero(&v[*pivot]) {
                let c = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !f.is_zero(r) {
                        *x = f.sub(x, &f.mul(&c, r));
                    }
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent of the current rows.
    pub fn insert(&mut self, f: &F, v: Vec<F::E>) -> bool {
        let v = self.reduce(f, v);
        match v.iter().position(|x| !f.is_zero(x)) {
            None => false,
            Some(p) => {
                let inv = f.inv(&v[p]);
                let v: Vec<F::E> = v.iter().map(|x| f.mul(x, &inv)).collect();
                self.rows.push((p, v));
                true
            }
        }
    }

    pub fn contains(&self, f: &F, v: Vec<F::E>) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of<F: FieldOps>(f: &F, vectors: impl IntoIterator<Item = Vec<F::E>>) -> usize {
    let mut e = Echelon::<F>::default();
    for v in vectors {
        e.insert(f, v);
    }
    e.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("gf(5)".parse::<FieldSpec>().unwrap(), FieldSpec::Gf(5));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Q);
        assert!("gf(6)".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn gf_inverse() {
        let f = Gfp(7);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn rationals_parse_and_reduce() {
        let q = parse_rational("-3/6").unwrap();
        assert_eq!(fmt_rational(&q), "-1/2");
        assert_eq!(rational_to_gf(&q, 5).unwrap(), 2);
        assert!(rational_to_gf(&parse_rational("1/5").unwrap(), 5).is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn echelon_rank() {
        let f = Gfp(2);
        let r = rank_of(&f, vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]);
        assert_eq!(r, 2);
        let q = Rationals;
        let v = |xs: [i64; 3]| xs.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(rank_of(&q, vec![v([1, 0, 1]), v([0, 1, 1]), v([1, 1, 0])]), 3);
    }
}
