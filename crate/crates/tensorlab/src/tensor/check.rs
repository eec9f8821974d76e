//! Rank-multiplicativity checks for candidate tensor products.

use std::fmt;

use num_rational::BigRational;

use crate::bitset::{self, full, singleton, SetWord};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::polymatroid::PolymatroidFn;
use crate::representation::RankOracle;

/// Which rectangle family a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RectKind {
    /// `{e1} × Y2`
    Row,
    /// `Y1 × {e2}`
    Column,
    /// `S1 × S2`
    Full,
    /// A general rectangle `X1 × X2` (polymatroid check).
    Rectangle,
}

/// First rectangle `left × right` whose rank is not the product of the factor ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: RectKind,
    pub left: SetWord,
    pub right: SetWord,
    pub expected: BigRational,
    pub actual: BigRational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} rectangle {} x {}: rank {} but factors give {}",
            self.kind,
            bitset::fmt_set(self.left),
            bitset::fmt_set(self.right),
            self.actual,
            self.expected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Product,
    Violated(Violation),
}

impl Verdict {
    pub fn is_product(&self) -> bool {
        matches!(self, Verdict::Product)
    }

    pub fn into_result(self) -> std::result::Result<(), Violation> {
        match self {
            Verdict::Product => Ok(()),
            Verdict::Violated(v) => Err(v),
        }
    }
}

fn int(x: usize) -> BigRational {
    BigRational::from_integer((x as i64).into())
}

/// Exhaustive limit on `2^n2·n1 + 2^n1·n2` rank queries.
const MAX_QUERIES: u64 = 1 << 24;

/// Checks the row, column and full-rectangle conditions, which together are
/// equivalent to multiplicativity on every rectangle. Rows are scanned first
/// (by `e1`, then `Y2` in lex order), then columns, then the full set.
pub fn is_tensor_product<P, A, B>(p: &P, m1: &A, m2: &B) -> Result<Verdict>
where
    P: RankOracle + ?Sized,
    A: RankOracle + ?Sized,
    B: RankOracle + ?Sized,
{
    let (n1, n2) = (m1.ground_size(), m2.ground_size());
    if p.ground_size() != n1 * n2 {
        return Err(Error::Input(format!(
            "product has {} elements, factors give {}",
            p.ground_size(),
            n1 * n2
        )));
    }
    let queries = (n1 as u64).saturating_mul(1u64.checked_shl(n2 as u32).unwrap_or(u64::MAX))
        .saturating_add((n2 as u64).saturating_mul(1u64.checked_shl(n1 as u32).unwrap_or(u64::MAX)));
    if queries > MAX_QUERIES {
        return Err(Error::Precondition(format!("{queries} rectangle queries exceed the exhaustive limit")));
    }
    let ys2 = ordered_subsets(n2);
    let ys1 = ordered_subsets(n1);
    for e1 in 0..n1 {
        let r1 = m1.rank_of(singleton(e1));
        for &y2 in &ys2 {
            let want = r1 * m2.rank_of(y2);
            let got = p.rank_of(bitset::product(singleton(e1), y2, n2));
            if want != got {
                return Ok(violated(RectKind::Row, singleton(e1), y2, want, got));
            }
        }
    }
    for e2 in 0..n2 {
        let r2 = m2.rank_of(singleton(e2));
        for &y1 in &ys1 {
            let want = m1.rank_of(y1) * r2;
            let got = p.rank_of(bitset::product(y1, singleton(e2), n2));
            if want != got {
                return Ok(violated(RectKind::Column, y1, singleton(e2), want, got));
            }
        }
    }
    let want = m1.rank_of(full(n1)) * m2.rank_of(full(n2));
    let got = p.rank_of(full(n1 * n2));
    if want != got {
        return Ok(violated(RectKind::Full, full(n1), full(n2), want, got));
    }
    Ok(Verdict::Product)
}

fn violated(kind: RectKind, left: SetWord, right: SetWord, want: usize, got: usize) -> Verdict {
    Verdict::Violated(Violation { kind, left, right, expected: int(want), actual: int(got) })
}

/// All subsets of `0..n` in canonical (sorted-list lex) order.
fn ordered_subsets(n: usize) -> Vec<SetWord> {
    let mut all: Vec<SetWord> = bitset::subsets(full(n)).collect();
    bitset::sort_lex(&mut all);
    all
}

/// Polymatroid tensor check: `φ(X1 × X2) = φ1(X1)·φ2(X2)` on every rectangle.
pub fn is_poly_tensor_product(phi: &PolymatroidFn, p1: &PolymatroidFn, p2: &PolymatroidFn) -> Verdict {
    let (n1, n2) = (p1.n(), p2.n());
    assert_eq!(phi.n(), n1 * n2, "product ground size");
    for &x1 in &ordered_subsets(n1) {
        for &x2 in &ordered_subsets(n2) {
            let want = p1.value(x1) * p2.value(x2);
            let got = phi.value(bitset::product(x1, x2, n2));
            if want != *got {
                return Verdict::Violated(Violation {
                    kind: RectKind::Rectangle,
                    left: x1,
                    right: x2,
                    expected: want,
                    actual: got.clone(),
                });
            }
        }
    }
    Verdict::Product
}

/// A matroid on `S1 × S2` certified to be a tensor product of its factors.
#[derive(Debug, Clone)]
pub struct TensorCandidate {
    matroid: Matroid,
    left: Matroid,
    right: Matroid,
}

impl TensorCandidate {
    pub fn new(matroid: Matroid, left: Matroid, right: Matroid) -> Result<Self> {
        if let Verdict::Violated(v) = is_tensor_product(&matroid, &left, &right)? {
            return Err(Error::Certification(v.to_string()));
        }
        Ok(TensorCandidate { matroid, left, right })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn left(&self) -> &Matroid {
        &self.left
    }

    pub fn right(&self) -> &Matroid {
        &self.right
    }

    pub fn into_parts(self) -> (Matroid, Matroid, Matroid) {
        (self.matroid, self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::uniform;

    #[test]
    fn u49_is_not_u23_square() {
        let u = uniform(2, 3).unwrap();
        let v = is_tensor_product(&uniform(4, 9).unwrap(), &u, &u).unwrap();
        match v {
            Verdict::Violated(w) => {
                assert_eq!(w.kind, RectKind::Row);
                assert_eq!(w.left, 1);
                assert_eq!(w.right, 0b111);
                assert_eq!(w.actual, int(3));
            }
            Verdict::Product => panic!("U49 accepted"),
        }
    }
}
