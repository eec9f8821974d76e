//! Results must not depend on the number of workers.

use tensorlab::catalog::{build, uniform, CatalogKey};
use tensorlab::inequalities::{ingleton, new_ineq, search_violation, Strategy};
use tensorlab::json;
use tensorlab::tensor::{enumerate_with, tensor_compat_depth, CompatOptions, SearchBudget, SearchOptions};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn enumeration_is_thread_independent() {
    let runs: Vec<String> = [1, 8]
        .into_iter()
        .map(|t| {
            let opts = SearchOptions { budget: SearchBudget::nodes(2_000_000), threads: Some(t), ..SearchOptions::default() };
            let e = enumerate_with(&uniform(2, 4).unwrap(), &uniform(1, 3).unwrap(), &opts).unwrap();
            json::to_string(&json::enumeration_to_json(&e, opts.budget.nodes))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn budget_exhaustion_is_thread_independent() {
    let runs: Vec<String> = [1, 8]
        .into_iter()
        .map(|t| {
            let opts = SearchOptions { budget: SearchBudget::nodes(300), threads: Some(t), ..SearchOptions::default() };
            let e = enumerate_with(&uniform(2, 4).unwrap(), &uniform(2, 4).unwrap(), &opts).unwrap();
            assert!(!e.complete);
            json::to_string(&json::enumeration_to_json(&e, opts.budget.nodes))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn scans_are_thread_independent() {
    let nd = build(CatalogKey::NonDesargues).unwrap();
    let vamos = build(CatalogKey::Vamos).unwrap();
    let cases = [(new_ineq(), nd.clone(), Strategy::Singletons), (ingleton(), vamos.clone(), Strategy::Flats), (ingleton(), vamos, Strategy::AllSubsets { seed: 7 })];
    for (q, m, s) in cases {
        let a = in_pool(1, || search_violation(&q, &m, s, 200_000).unwrap());
        let b = in_pool(8, || search_violation(&q, &m, s, 200_000).unwrap());
        assert_eq!(json::to_string(&json::scan_to_json(&q, &m, &a)), json::to_string(&json::scan_to_json(&q, &m, &b)));
    }
}

#[test]
fn compat_certificates_are_thread_independent() {
    let runs: Vec<String> = [1, 8]
        .into_iter()
        .map(|t| {
            let mut opts = CompatOptions::default();
            opts.search.threads = Some(t);
            opts.search.budget = SearchBudget::nodes(5_000_000);
            let c = in_pool(t, || tensor_compat_depth(&uniform(1, 2).unwrap(), &uniform(2, 3).unwrap(), 2, &opts).unwrap());
            json::to_string(&json::certificate_to_json(&c))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}
