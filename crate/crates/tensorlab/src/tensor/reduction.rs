//! Reductions that move tensor products between matroids and their minors or
//! simplifications.

use crate::bitset::{self, elements, singleton, SetWord};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::tensor::check::TensorCandidate;

/// Simplified factors together with the class maps needed to lift back.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub left: Matroid,
    pub right: Matroid,
    /// `left_map[e]` is the parallel class of `e` in the simplified left factor.
    pub left_map: Vec<Option<usize>>,
    pub right_map: Vec<Option<usize>>,
}

pub fn simplification_reduction(m1: &Matroid, m2: &Matroid) -> Reduction {
    let (left, left_map) = m1.simplify();
    let (right, right_map) = m2.simplify();
    Reduction { left, right, left_map, right_map }
}

impl Reduction {
    /// The trivial reduction, for factors that are already simple.
    pub fn identity(m1: &Matroid, m2: &Matroid) -> Reduction {
        Reduction {
            left: m1.clone(),
            right: m2.clone(),
            left_map: (0..m1.n()).map(Some).collect(),
            right_map: (0..m2.n()).map(Some).collect(),
        }
    }

    /// Replaces each element `(c1, c2)` of a product of the simplified factors
    /// by the parallel class `P_{c1} × P_{c2}`, and adds loops on every pair
    /// involving a loop of either factor.
    pub fn lift(&self, n: &Matroid) -> Result<Matroid> {
        let (ns1, ns2) = (self.left.n(), self.right.n());
        if n.n() != ns1 * ns2 {
            return Err(Error::Input("product does not live on the simplified factors".into()));
        }
        let (n1, n2) = (self.left_map.len(), self.right_map.len());
        let total = n1 * n2;
        if total > bitset::MAX_GROUND {
            return Err(Error::SizeOverflow(total));
        }
        // classes[c] lists the lifted elements standing for simplified element c.
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); ns1 * ns2];
        for (e1, c1) in self.left_map.iter().enumerate() {
            for (e2, c2) in self.right_map.iter().enumerate() {
                if let (Some(c1), Some(c2)) = (c1, c2) {
                    classes[c1 * ns2 + c2].push(e1 * n2 + e2);
                }
            }
        }
        let mut bases = Vec::new();
        for &b in n.bases() {
            let members: Vec<usize> = elements(b).collect();
            let mut choice = vec![0usize; members.len()];
            loop {
                let set = members
                    .iter()
                    .zip(&choice)
                    .fold(0 as SetWord, |acc, (&c, &k)| acc | singleton(classes[c][k]));
                bases.push(set);
                // Odometer over one representative per class.
                let mut i = 0;
                while i < members.len() {
                    choice[i] += 1;
                    if choice[i] < classes[members[i]].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == members.len() {
                    break;
                }
            }
        }
        Matroid::from_bases(crate::matroid::GroundSet::new(total)?, n.full_rank(), bases)
    }
}

/// `M / (A × S2)`: a tensor product of `M1 / A` and `M2`, certified before return.
pub fn minor_of_tensor(p: &TensorCandidate, a: SetWord) -> Result<TensorCandidate> {
    let (m1, m2) = (p.left(), p.right());
    if a & !m1.full_set() != 0 {
        return Err(Error::Input("A leaves the left ground set".into()));
    }
    let contracted = p.matroid().contract(bitset::product(a, m2.full_set(), m2.n()))?;
    TensorCandidate::new(contracted, m1.contract(a)?, m2.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::uniform;
    use crate::tensor::check::is_tensor_product;
    use crate::tensor::{enumerate_tensor_products, SearchBudget};

    fn u23_square() -> TensorCandidate {
        let u = uniform(2, 3).unwrap();
        let e = enumerate_tensor_products(&u, &u, SearchBudget::nodes(100_000)).unwrap();
        TensorCandidate::new(e.products[0].clone(), u.clone(), u).unwrap()
    }

    #[test]
    fn minors_of_the_u23_square() {
        let p = u23_square();
        let m = minor_of_tensor(&p, 0b001).unwrap();
        assert_eq!(m.left(), &uniform(1, 2).unwrap());
        assert_eq!(m.matroid().n(), 6);
        assert_eq!(minor_of_tensor(&p, 0).unwrap().matroid(), p.matroid());
        // Contracting a spanning set of the left factor leaves a rank-0 product.
        assert_eq!(minor_of_tensor(&p, 0b011).unwrap().matroid().full_rank(), 0);
    }

    #[test]
    fn lift_with_a_loop_row() {
        let p = u23_square();
        // U23 plus a loop as element 3.
        let with_loop = uniform(2, 3).unwrap().direct_sum(&uniform(0, 1).unwrap()).unwrap();
        let u = uniform(2, 3).unwrap();
        let red = simplification_reduction(&with_loop, &u);
        assert_eq!(red.left, u);
        let lifted = red.lift(p.matroid()).unwrap();
        assert_eq!(lifted.loops(), 0b111 << 9);
        assert!(is_tensor_product(&lifted, &with_loop, &u).unwrap().is_product());
    }
}
