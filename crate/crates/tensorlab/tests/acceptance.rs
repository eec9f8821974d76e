//! Acceptance criteria. Prints one PASS/FAIL line per criterion, then fails
//! if any criterion failed. Every comparison is exact; the only tolerances
//! are the wall-clock limits pinned below.

mod common;

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensorlab::bitset::{self, card, singleton, SetWord};
use tensorlab::catalog::{build, uniform, CatalogKey};
use tensorlab::field::FieldSpec;
use tensorlab::inequalities::{fano_ineq, ingleton, new_ineq, non_fano_ineq, search_violation, Sides, Strategy};
use tensorlab::modular::{extension_from_tensor, verify_extension};
use tensorlab::polymatroid::lp::canonical_assignment;
use tensorlab::polymatroid::seeds::new_ineq_seeds;
use tensorlab::polymatroid::{
    build_family, enumerate_integer_polymatroids, helgason_lift, lp_tensor_feasible, quotient, render_farkas,
    verify_farkas, PolymatroidFn, Side, DEFAULT_LATTICE_CAP,
};
use tensorlab::representation::{fano_matrix, u23_matrix, MatrixRep};
use tensorlab::tensor::{enumerate_with, freest_rank3_uniform, is_tensor_product, SearchBudget, SearchOptions};
use tensorlab::Matroid;

const LIMIT_U23_SQUARE: Duration = Duration::from_secs(10);
const LIMIT_INGLETON: Duration = Duration::from_secs(300);
const LIMIT_CHAR_EACH: Duration = Duration::from_secs(1);
const LIMIT_NEW_INEQ: Duration = Duration::from_secs(1);
const LIMIT_LP: Duration = Duration::from_secs(60);
const LIMIT_FREEST: Duration = Duration::from_secs(300);
const LIMIT_EXTENSIONS: Duration = Duration::from_secs(30);
const LIMIT_HELGASON: Duration = Duration::from_secs(120);
const LIMIT_KRONECKER: Duration = Duration::from_secs(30);

/// Node budget for the weak-order check against the freest product.
const FREEST_SEARCH_NODES: u64 = 10_000_000;
/// Products collected in that search; the full product set is far larger.
const FREEST_SEARCH_PRODUCTS: usize = 1000;
/// Random raw 4-tuples checked directly, alongside the flat reduction.
const INGLETON_RAW_SAMPLES: usize = 200_000;
const KRONECKER_PAIRS: usize = 200;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn expect_sides(s: &Sides, lhs: i64, rhs: i64, what: &str) -> Result<(), String> {
    ensure(s.lhs == q(lhs) && s.rhs == q(rhs) && s.slack == q(-1), || {
        format!("{what}: sides {} vs {} slack {}, expected {lhs} vs {rhs} slack -1", s.lhs, s.rhs, s.slack)
    })
}

fn rank_fn(m: &Matroid) -> PolymatroidFn {
    PolymatroidFn::from_matroid(m).unwrap()
}

fn u23_square_unique() -> Result<String, String> {
    let u = uniform(2, 3).unwrap();
    let e = enumerate_with(&u, &u, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(e.complete, || "enumeration incomplete".into())?;
    ensure(e.products.len() == 1, || format!("{} products", e.products.len()))?;
    let p = &e.products[0];
    ensure(p.bases().len() == 81, || format!("{} bases", p.bases().len()))?;
    let k33 = build(CatalogKey::CographicK33).unwrap();
    ensure(p.is_isomorphic(&k33).is_some(), || "product is not the dual of M(K33)".into())?;
    Ok("1 product, 81 bases, isomorphic to M*(K33)".into())
}

fn ingleton_vamos_and_fano() -> Result<String, String> {
    let ing = ingleton();
    let vamos = build(CatalogKey::Vamos).unwrap();
    let pairs = search_violation(&ing, &vamos, Strategy::CanonicalPairs, 1).unwrap();
    let w = pairs.witness.ok_or("no violation at the canonical pairs")?;
    ensure(w.sides.slack == q(-1), || format!("Vamos slack {}", w.sides.slack))?;

    let fano = build(CatalogKey::Fano).unwrap();
    let scan = search_violation(&ing, &fano, Strategy::Flats, u64::MAX).unwrap();
    ensure(scan.complete && scan.witness.is_none(), || "Ingleton fails on F7 or the scan is incomplete".into())?;
    // Second route: raw subsets without the closure reduction.
    let phi = rank_fn(&fano);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..INGLETON_RAW_SAMPLES {
        let a: Vec<SetWord> = (0..4).map(|_| rng.gen::<u64>() & fano.full_set()).collect();
        let s = ing.eval(&phi, &a).unwrap();
        ensure(!s.is_negative(), || format!("raw assignment {a:?} violates Ingleton on F7"))?;
    }
    Ok(format!("Vamos slack -1; F7 clean over {} flat 4-tuples and {INGLETON_RAW_SAMPLES} raw samples", scan.examined))
}

fn characteristic_violations() -> Result<String, String> {
    let t = Instant::now();
    let nf = rank_fn(&build(CatalogKey::NonFano).unwrap());
    expect_sides(&fano_ineq().sides(&nf, &canonical_assignment(7)).unwrap(), 14, 15, "fano_ineq on non-Fano")?;
    let first = t.elapsed();
    let t = Instant::now();
    let f = rank_fn(&build(CatalogKey::Fano).unwrap());
    expect_sides(&non_fano_ineq().sides(&f, &canonical_assignment(7)).unwrap(), 16, 17, "non_fano_ineq on Fano")?;
    let second = t.elapsed();
    ensure(first < LIMIT_CHAR_EACH && second < LIMIT_CHAR_EACH, || format!("too slow: {first:?}, {second:?}"))?;
    Ok("14 vs 15 and 16 vs 17".into())
}

/// Variables `A1..C3, D` on the elements labelled `a1..c3, d`.
fn non_desargues_assignment(m: &Matroid) -> Vec<SetWord> {
    new_ineq()
        .variables()
        .iter()
        .map(|v| singleton(m.ground().index_of(&v.to_lowercase()).expect("label present")))
        .collect()
}

fn new_inequality() -> Result<String, String> {
    let nd = build(CatalogKey::NonDesargues).unwrap();
    let s = new_ineq().sides(&rank_fn(&nd), &non_desargues_assignment(&nd)).unwrap();
    expect_sides(&s, 43, 42, "new_ineq on non-Desargues")?;
    Ok("43 vs 42".into())
}

fn lp_refutation() -> Result<String, String> {
    let nd = build(CatalogKey::NonDesargues).unwrap();
    let (phi1, phi2) = (rank_fn(&build(CatalogKey::GraphicK4).unwrap()), rank_fn(&nd));
    let sets: [SetWord; 10] = non_desargues_assignment(&nd).try_into().unwrap();
    let fam = build_family(6, nd.n(), &new_ineq_seeds(nd.n(), sets), DEFAULT_LATTICE_CAP).map_err(|e| e.to_string())?;
    let out = lp_tensor_feasible(&phi1, &phi2, &fam).map_err(|e| e.to_string())?;
    ensure(!out.feasible, || "LP is feasible".into())?;
    ensure(verify_farkas(&out, &phi1, &phi2), || "certificate does not verify".into())?;
    let ineq = render_farkas(&out, Side::Right).map_err(|e| e.to_string())?;
    let slack = ineq.eval(&phi2, &canonical_assignment(nd.n())).unwrap();
    ensure(slack.is_negative(), || format!("rendered slack {slack}"))?;
    Ok(format!("{} family members, {} certificate rows, rendered slack {slack}", fam.len(), out.farkas.as_ref().map_or(0, Vec::len)))
}

fn freest_construction() -> Result<String, String> {
    let nd = build(CatalogKey::NonDesargues).unwrap();
    let u23 = uniform(2, 3).unwrap();
    let f = freest_rank3_uniform(&nd, 2, 3).map_err(|e| e.to_string())?;
    ensure(f.full_rank() == 6, || format!("rank {}", f.full_rank()))?;
    ensure(is_tensor_product(&f, &nd, &u23).unwrap().is_product(), || "not a tensor product".into())?;
    // Full exchange-axiom check of the basis family.
    Matroid::from_bases(f.ground().clone(), f.full_rank(), f.bases().to_vec()).map_err(|e| e.to_string())?;

    let u36 = uniform(3, 6).unwrap();
    let freest = freest_rank3_uniform(&u36, 2, 3).unwrap();
    let opts = SearchOptions {
        budget: SearchBudget::nodes(FREEST_SEARCH_NODES),
        max_products: Some(FREEST_SEARCH_PRODUCTS),
        ..SearchOptions::default()
    };
    let e = enumerate_with(&u36, &u23, &opts).map_err(|e| e.to_string())?;
    ensure(!e.products.is_empty(), || "search found no products".into())?;
    for p in &e.products {
        ensure(p.weak_order_leq(&freest).unwrap(), || "a product is freer than the freest".into())?;
    }
    Ok(format!("rank 6, {} bases; {} U36 x U23 products below the freest", f.bases().len(), e.products.len()))
}

fn modular_extensions() -> Result<String, String> {
    let gf2 = FieldSpec::Gf(2);
    let cand = common::kronecker(&fano_matrix(gf2).unwrap(), &u23_matrix(gf2).unwrap());
    let lines = cand.left().flats_of_rank(2);
    ensure(lines.len() == 7, || format!("{} lines", lines.len()))?;
    let mut pairs = 0;
    for (i, &a) in lines.iter().enumerate() {
        for &b in &lines[i + 1..] {
            let w = extension_from_tensor(&cand, a, b).map_err(|e| e.to_string())?;
            verify_extension(&w).map_err(|f| format!("{} / {}: {f}", bitset::fmt_set(a), bitset::fmt_set(b)))?;
            pairs += 1;
        }
    }
    ensure(pairs == 21, || format!("{pairs} pairs"))?;
    Ok("21 line pairs verified".into())
}

/// Independent count: all functions on 3 elements with values in 0..=3
/// that are normalized, monotone and submodular.
fn brute_force_polymatroid_count() -> usize {
    let mut count = 0;
    for code in 0..4u32.pow(7) {
        let mut v = [0i64; 8];
        for (x, slot) in v.iter_mut().enumerate().skip(1) {
            *slot = ((code / 4u32.pow(x as u32 - 1)) % 4) as i64;
        }
        let mono = (0..8).all(|x| (0..3).all(|e| v[x | 1 << e] >= v[x]));
        let sub = (0..8).all(|x| (0..8).all(|y| v[x | y] + v[x & y] <= v[x] + v[y]));
        if mono && sub {
            count += 1;
        }
    }
    count
}

fn helgason_round_trip() -> Result<String, String> {
    let all = enumerate_integer_polymatroids(3, 3);
    let expected = brute_force_polymatroid_count();
    ensure(all.len() == expected, || format!("enumerated {} polymatroids, brute force finds {expected}", all.len()))?;
    for phi in &all {
        let lift = helgason_lift(phi).map_err(|e| e.to_string())?;
        let back = quotient(&lift.matroid, &lift.blocks(3)).map_err(|e| e.to_string())?;
        ensure(back.values() == phi.values(), || format!("round trip fails on {:?}", phi.values()))?;
    }
    Ok(format!("{} polymatroids", all.len()))
}

fn kronecker_multiplicative() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let fields = [FieldSpec::Gf(2), FieldSpec::Gf(3), FieldSpec::Gf(5), FieldSpec::Gf(7), FieldSpec::Q];
    for i in 0..KRONECKER_PAIRS {
        let f = fields[i % fields.len()];
        let (r1, c1, r2, c2) = (rng.gen_range(1..=4), rng.gen_range(1..=6), rng.gen_range(1..=4), rng.gen_range(1..=6));
        let a = MatrixRep::random(f, r1, c1, &mut rng);
        let b = MatrixRep::random(f, r2, c2, &mut rng);
        let k = a.kronecker(&b).map_err(|e| e.to_string())?;
        ensure(k.full_rank() == a.full_rank() * b.full_rank(), || format!("pair {i} over {f}"))?;
    }
    Ok(format!("{KRONECKER_PAIRS} pairs"))
}

fn property_suites() -> Result<String, String> {
    let mut keys: Vec<CatalogKey> = CatalogKey::NAMED.to_vec();
    keys.push(CatalogKey::Uniform(2, 4));
    for k in keys {
        let m = build(k).unwrap();
        let full = m.full_set();
        let small = m.n() <= 10;
        for x in 0..=full {
            if !small && card(x) > 3 {
                continue;
            }
            let c = m.closure(x);
            ensure(m.rank(c) == m.rank(x) && m.closure(c) == c && bitset::is_subset(x, c), || format!("{k}: closure law at {x:#x}"))?;
            for e in 0..m.n() {
                ensure(m.rank(x | singleton(e)) - m.rank(x) <= 1, || format!("{k}: unit increase at {x:#x}"))?;
            }
        }
        if m.n() <= 8 {
            for x in 0..=full {
                for y in 0..=full {
                    ensure(m.rank(x | y) + m.rank(x & y) <= m.rank(x) + m.rank(y), || format!("{k}: submodularity"))?;
                }
            }
        }
    }
    let products = common::stored_products();
    for (i, (name, p)) in products.iter().enumerate() {
        common::check_direct(p, i as u64).map_err(|e| format!("{name}: {e}"))?;
        common::check_gen(p, i as u64).map_err(|e| format!("{name}: {e}"))?;
    }
    let runs: Vec<Vec<Matroid>> = [1, 8]
        .into_iter()
        .map(|t| {
            let opts = SearchOptions { threads: Some(t), budget: SearchBudget::nodes(1_000_000), ..SearchOptions::default() };
            enumerate_with(&uniform(2, 4).unwrap(), &uniform(1, 3).unwrap(), &opts).unwrap().products
        })
        .collect();
    ensure(runs[0] == runs[1], || "enumeration differs between 1 and 8 workers".into())?;
    Ok(format!("catalog axioms, direct and gen on {} stored products, 1 vs 8 workers", products.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, Check); 10] = [
        ("1 U23 x U23 is unique", LIMIT_U23_SQUARE, u23_square_unique),
        ("2 Ingleton on Vamos and F7", LIMIT_INGLETON, ingleton_vamos_and_fano),
        ("3 characteristic-dependent violations", LIMIT_CHAR_EACH * 2, characteristic_violations),
        ("4 new inequality on non-Desargues", LIMIT_NEW_INEQ, new_inequality),
        ("5 LP refutation for M(K4) x non-Desargues", LIMIT_LP, lp_refutation),
        ("6 freest construction", LIMIT_FREEST, freest_construction),
        ("7 modular extensions from F7 x U23", LIMIT_EXTENSIONS, modular_extensions),
        ("8 Helgason round trip", LIMIT_HELGASON, helgason_round_trip),
        ("9 Kronecker rank multiplicativity", LIMIT_KRONECKER, kronecker_multiplicative),
        ("10 property suites", Duration::from_secs(300), property_suites),
    ];
    let mut failed = Vec::new();
    for (name, limit, check) in criteria {
        let t = Instant::now();
        let res = check();
        let took = t.elapsed();
        let res = res.and_then(|d| if took <= limit { Ok(d) } else { Err(format!("took {took:.2?}, limit {limit:?}")) });
        match res {
            Ok(detail) => println!("PASS {name}: {detail} ({took:.2?})"),
            Err(e) => {
                println!("FAIL {name}: {e} ({took:.2?})");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
