//! Shared fixtures: the tensor products the library can produce, and the
//! two rank properties every tensor product must satisfy.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensorlab::bitset::{self, card, elements, full, singleton, SetWord};
use tensorlab::catalog::{build, uniform, CatalogKey};
use tensorlab::field::FieldSpec;
use tensorlab::representation::{fano_matrix, matroid_from_rep, tensor_from_reps, u23_matrix, MatrixRep, TensorRep};
use tensorlab::tensor::{enumerate_tensor_products, freest_rank3_uniform, SearchBudget, TensorCandidate};
use tensorlab::Matroid;

/// Exhaustive checks run when the enumeration has at most this many cases.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
/// Random cases per product otherwise.
pub const SAMPLES: usize = 20_000;

pub fn kronecker(a: &MatrixRep, b: &MatrixRep) -> TensorCandidate {
    let TensorRep::Matroid(lin) = tensor_from_reps(a, b).unwrap() else { panic!("matroid matrices") };
    TensorCandidate::new(lin.to_matroid().unwrap(), matroid_from_rep(a).unwrap(), matroid_from_rep(b).unwrap()).unwrap()
}

/// Every tensor product the test suites keep around, with a name.
pub fn stored_products() -> Vec<(String, TensorCandidate)> {
    let mut out = Vec::new();
    let searched = [(uniform(2, 3).unwrap(), uniform(2, 3).unwrap()), (uniform(1, 2).unwrap(), uniform(2, 3).unwrap()), (uniform(2, 2).unwrap(), uniform(1, 3).unwrap())];
    for (a, b) in searched {
        let e = enumerate_tensor_products(&a, &b, SearchBudget::nodes(10_000_000)).unwrap();
        assert!(e.complete);
        for (i, p) in e.products.into_iter().enumerate() {
            let name = format!("U{},{} x U{},{} #{i}", a.full_rank(), a.n(), b.full_rank(), b.n());
            out.push((name, TensorCandidate::new(p, a.clone(), b.clone()).unwrap()));
        }
    }
    let gf2 = FieldSpec::Gf(2);
    out.push(("F7 x U23 over GF(2)".into(), kronecker(&fano_matrix(gf2).unwrap(), &u23_matrix(gf2).unwrap())));
    let q = FieldSpec::Q;
    out.push(("U23 x U23 over Q".into(), kronecker(&u23_matrix(q).unwrap(), &u23_matrix(q).unwrap())));
    let fano = build(CatalogKey::Fano).unwrap();
    let u23 = uniform(2, 3).unwrap();
    let f = freest_rank3_uniform(&fano, 2, 3).unwrap();
    out.push(("freest F7 x U23".into(), TensorCandidate::new(f, fano, u23).unwrap()));
    out
}

fn rows_of(x1: SetWord, n2: usize) -> SetWord {
    bitset::product(x1, full(n2), n2)
}

/// If `r1(X) = Σ_{x∈X} r1(x)`, then `r(W) = Σ_x r(W ∩ ({x} × S2))` for all
/// `W ⊆ X × S2`. Exhaustive over `W` when `|X × S2| ≤ 12`, sampled otherwise.
pub fn check_direct(p: &TensorCandidate, seed: u64) -> Result<usize, String> {
    let (m, m1) = (p.matroid(), p.left());
    let (n1, n2) = (m1.n(), p.right().n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for x in 0..=full(n1) {
        if m1.rank(x) != elements(x).map(|e| m1.rank(singleton(e))).sum::<usize>() {
            continue;
        }
        let region = rows_of(x, n2);
        let size = card(region);
        let mut check = |w: SetWord| -> Result<(), String> {
            let parts: usize = elements(x).map(|e| m.rank(w & rows_of(singleton(e), n2))).sum();
            if m.rank(w) != parts {
                return Err(format!("X={} W={}: r(W)={} but rows give {parts}", bitset::fmt_set(x), bitset::fmt_set(w), m.rank(w)));
            }
            checked += 1;
            Ok(())
        };
        if size <= 12 {
            for sub in bitset::subsets(region) {
                check(sub)?;
            }
        } else {
            for _ in 0..SAMPLES / 64 {
                check(rng.gen::<u64>() & region)?;
            }
        }
    }
    Ok(checked)
}

/// `r((X ∪ X') × Y ∪ Z) ≤ r(X × Y ∪ Z) + (r1(X ∪ X') − r1(X))·r2(Y)`.
pub fn check_gen(p: &TensorCandidate, seed: u64) -> Result<usize, String> {
    let (m, m1, m2) = (p.matroid(), p.left(), p.right());
    let (n1, n2) = (m1.n(), m2.n());
    let one = |x: SetWord, x2: SetWord, y: SetWord, z: SetWord| -> Result<(), String> {
        let lhs = m.rank(bitset::product(x | x2, y, n2) | z);
        let rhs = m.rank(bitset::product(x, y, n2) | z) + (m1.rank(x | x2) - m1.rank(x)) * m2.rank(y);
        if lhs > rhs {
            return Err(format!(
                "X={} X'={} Y={} Z={}: {lhs} > {rhs}",
                bitset::fmt_set(x),
                bitset::fmt_set(x2),
                bitset::fmt_set(y),
                bitset::fmt_set(z)
            ));
        }
        Ok(())
    };
    let cases = (1u64 << n1).pow(2) * (1u64 << n2) * (1u64 << m.n());
    if cases <= EXHAUSTIVE_LIMIT {
        for x in 0..=full(n1) {
            for x2 in 0..=full(n1) {
                for y in 0..=full(n2) {
                    for z in 0..=full(m.n()) {
                        one(x, x2, y, z)?;
                    }
                }
            }
        }
        return Ok(cases as usize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLES {
        // Sparse Z keeps the right side informative on large grounds.
        let z = rng.gen::<u64>() & rng.gen::<u64>() & rng.gen::<u64>() & full(m.n());
        one(rng.gen::<u64>() & full(n1), rng.gen::<u64>() & full(n1), rng.gen::<u64>() & full(n2), z)?;
    }
    Ok(SAMPLES)
}

/// A random matroid: the column matroid of a random matrix.
pub fn random_matroid(seed: u64, max_n: usize) -> Matroid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [FieldSpec::Gf(2), FieldSpec::Gf(3), FieldSpec::Q];
    let f = fields[rng.gen_range(0..fields.len())];
    let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=max_n));
    matroid_from_rep(&MatrixRep::random(f, r, c, &mut rng)).unwrap()
}
