//! Property suites: matroid axioms, closure laws, polymatroid invariants,
//! linearity of inequality evaluation and the rank identities of tensor
//! products.

mod common;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensorlab::bitset::{card, full, is_subset, singleton, SetWord};
use tensorlab::catalog::{build, CatalogKey};
use tensorlab::field::FieldSpec;
use tensorlab::inequalities::builtin;
use tensorlab::json;
use tensorlab::polymatroid::{quotient, PolymatroidFn};
use tensorlab::representation::{matroid_from_rep, MatrixRep};
use tensorlab::tensor::is_tensor_product;
use tensorlab::Matroid;

use common::{check_direct, check_gen, random_matroid, stored_products};

fn catalog_minor(key: usize, del: u64, con: u64) -> Matroid {
    let keys = [CatalogKey::Fano, CatalogKey::NonFano, CatalogKey::Vamos, CatalogKey::GraphicK4, CatalogKey::NonPappus];
    let m = build(keys[key % keys.len()]).unwrap();
    let del = del & m.full_set();
    let con = con & m.full_set() & !del;
    m.minor(del, con).unwrap()
}

fn matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![
        any::<u64>().prop_map(|s| random_matroid(s, 8)),
        (0usize..5, any::<u64>(), any::<u64>()).prop_map(|(k, d, c)| catalog_minor(k, d & d >> 7, c & c >> 5)),
    ]
}

fn pairs(n: usize) -> impl Iterator<Item = (SetWord, SetWord)> {
    (0..=full(n)).flat_map(move |x| (0..=full(n)).map(move |y| (x, y)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn bases_satisfy_exchange(m in matroid()) {
        let again = Matroid::from_bases(m.ground().clone(), m.full_rank(), m.bases().to_vec());
        prop_assert!(again.is_ok());
        prop_assert!(m.bases().iter().all(|&b| card(b) as usize == m.full_rank()));
    }

    #[test]
    fn rank_axioms(m in matroid()) {
        prop_assert_eq!(m.rank(0), 0);
        for x in 0..=m.full_set() {
            prop_assert!(m.rank(x) <= card(x) as usize);
            for e in 0..m.n() {
                let d = m.rank(x | singleton(e)) - m.rank(x);
                prop_assert!(d <= 1);
            }
        }
        if m.n() <= 7 {
            for (x, y) in pairs(m.n()) {
                prop_assert!(m.rank(x | y) + m.rank(x & y) <= m.rank(x) + m.rank(y));
            }
        }
    }

    #[test]
    fn closure_laws(m in matroid()) {
        for x in 0..=m.full_set() {
            let c = m.closure(x);
            prop_assert!(is_subset(x, c));
            prop_assert_eq!(m.closure(c), c);
            prop_assert_eq!(m.rank(c), m.rank(x));
            prop_assert!(m.is_flat(c));
            for e in 0..m.n() {
                prop_assert!(is_subset(c, m.closure(x | singleton(e))));
            }
        }
    }

    #[test]
    fn dual_and_minors(m in matroid(), del in any::<u64>(), con in any::<u64>()) {
        let d = m.dual();
        prop_assert_eq!(&d.dual(), &m);
        let s = m.full_set();
        for x in 0..=s {
            prop_assert_eq!(d.rank(x) + m.full_rank(), card(x) as usize + m.rank(s & !x));
        }
        let del = del & s;
        let con = con & s & !del;
        let minor = m.minor(del, con).unwrap();
        let keep = s & !del & !con;
        for y in 0..=minor.full_set() {
            let x = tensorlab::matroid::expand(y, keep);
            prop_assert_eq!(minor.rank(y), m.rank(x | con) - m.rank(con));
        }
    }

    #[test]
    fn json_round_trip(m in matroid()) {
        let text = json::to_string(&json::matroid_to_json(&m));
        let back = json::matroid_from_json(&json::parse(&text).unwrap()).unwrap();
        prop_assert_eq!(json::to_string(&json::matroid_to_json(&back)), text);
    }

    #[test]
    fn quotients_are_polymatroids(m in matroid(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=m.n().max(1));
        let mut blocks = vec![0u64; k];
        for e in 0..m.n() {
            blocks[rng.gen_range(0..k)] |= singleton(e);
        }
        // PolymatroidFn::new inside quotient re-checks normalization,
        // monotonicity and submodularity.
        let q = quotient(&m, &blocks).unwrap();
        prop_assert_eq!(q.value(full(k)), &BigRational::from_integer((m.full_rank() as i64).into()));
    }

    #[test]
    fn inequality_evaluation_is_linear(m in matroid(), a in -4i64..=4, b in -4i64..=4, seed in any::<u64>()) {
        let phi = PolymatroidFn::from_matroid(&m).unwrap();
        let ineqs = builtin();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i1 = &ineqs[rng.gen_range(0..ineqs.len())];
        let i2 = ineqs.iter().find(|q| q.variables().len() == i1.variables().len()).unwrap();
        let assignment: Vec<SetWord> = (0..i1.variables().len()).map(|_| rng.gen::<u64>() & m.full_set()).collect();
        let (qa, qb) = (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
        if let Ok(c) = i1.combine(&qa, i2, &qb) {
            let lhs = c.eval(&phi, &assignment).unwrap();
            let rhs = &qa * i1.eval(&phi, &assignment).unwrap() + &qb * i2.eval(&phi, &assignment).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kronecker_products_are_tensor_products(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fields = [FieldSpec::Gf(2), FieldSpec::Gf(3), FieldSpec::Q];
        let f = fields[rng.gen_range(0..fields.len())];
        let a = MatrixRep::random(f, rng.gen_range(1..=3), rng.gen_range(1..=4), &mut rng);
        let b = MatrixRep::random(f, rng.gen_range(1..=2), rng.gen_range(1..=3), &mut rng);
        let k = a.kronecker(&b).unwrap();
        prop_assert_eq!(k.full_rank(), a.full_rank() * b.full_rank());
        let (ma, mb, mk) = (matroid_from_rep(&a).unwrap(), matroid_from_rep(&b).unwrap(), matroid_from_rep(&k).unwrap());
        prop_assert!(is_tensor_product(&mk, &ma, &mb).unwrap().is_product());
    }
}

#[test]
fn direct_rows_split_on_stored_products() {
    for (i, (name, p)) in stored_products().iter().enumerate() {
        let n = check_direct(p, i as u64).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(n > 0, "{name}: no independent row sets");
    }
}

#[test]
fn generalized_bound_holds_on_stored_products() {
    for (i, (name, p)) in stored_products().iter().enumerate() {
        check_gen(p, i as u64).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
