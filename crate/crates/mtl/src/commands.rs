//! One handler per subcommand. Each returns the report payload and exit code.

use serde_json::{json, Value};
use tensorlab::bitset::{self, singleton, SetWord};
use tensorlab::catalog::{self, CatalogKey};
use tensorlab::inequalities::{self, search_violation, Strategy, DEFAULT_SCAN_BUDGET};
use tensorlab::json::{self as tj, rational, set};
use tensorlab::modular::{extension_from_tensor, k_modular_extendable, search_extension, KModularVerdict, DEFAULT_EXTENSION_BUDGET};
use tensorlab::polymatroid::lp::{canonical_assignment, rendered_slack};
use tensorlab::polymatroid::seeds::{ingleton_seeds, new_ineq_seeds};
use tensorlab::polymatroid::{
    build_family, build_lattice, helgason_lift, lp_chain_feasible, lp_tensor_feasible, quotient, render_farkas,
    verify_farkas, PolymatroidFn, Side, SubsetLattice, DEFAULT_LATTICE_CAP,
};
use tensorlab::representation::{matroid_from_rep, tensor_from_reps, u23_matrix, TensorRep};
use tensorlab::tensor::{
    enumerate_with, freest_rank3_uniform, is_tensor_product, tensor_compat_depth, CompatKind, CompatOptions,
    SearchOptions, TensorCandidate, Verdict,
};
use tensorlab::{Error, Matroid, Result};

use crate::{input, reproduce, CatalogCmd, Cmd, FamilyArgs, Global, IneqCmd, ModextCmd, Outcome, PolylpCmd, RepCmd, TensorCmd};

pub fn run(cmd: &Cmd, g: &Global) -> (String, Result<Outcome>) {
    match cmd {
        Cmd::Catalog(c) => catalog(c),
        Cmd::Rank { matroid, sets } => ("rank".into(), rank(matroid, sets)),
        Cmd::Tensor(c) => tensor(c, g),
        Cmd::Polylp(c) => polylp(c),
        Cmd::Modext(c) => modext(c, g),
        Cmd::Ineq(c) => ineq(c, g),
        Cmd::Helgason { poly } => ("helgason".into(), helgason(poly)),
        Cmd::Quotient { matroid, blocks } => ("quotient".into(), quotient_cmd(matroid, blocks)),
        Cmd::Rep(c) => rep(c),
        Cmd::Reproduce { target } => ("reproduce".into(), reproduce::run(target, g)),
    }
}

fn catalog(c: &CatalogCmd) -> (String, Result<Outcome>) {
    match c {
        CatalogCmd::List => {
            let res = (|| {
                let mut keys: Vec<CatalogKey> = vec![CatalogKey::Uniform(2, 3)];
                keys.extend(CatalogKey::NAMED);
                let list = keys
                    .into_iter()
                    .map(|k| {
                        let m = catalog::build(k)?;
                        Ok(json!({ "key": k.to_string(), "n": m.n(), "rank": m.full_rank(), "bases": m.bases().len() }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Outcome::new("ok", json!({ "matroids": list, "families": ["uniform:r,n", "pg:2,p"] })))
            })();
            ("catalog list".into(), res)
        }
        CatalogCmd::Emit { key } => {
            let res = key.parse::<CatalogKey>().and_then(catalog::build).map(|m| {
                Outcome::new("ok", tj::matroid_to_json(&m)).inputs(json!(key))
            });
            ("catalog emit".into(), res)
        }
    }
}

fn rank(m: &str, sets: &[String]) -> Result<Outcome> {
    let m = input::matroid(m)?;
    let xs: Vec<SetWord> = if sets.is_empty() {
        vec![m.full_set()]
    } else {
        sets.iter().map(|s| input::set(s, m.n())).collect::<Result<_>>()?
    };
    let ranks: Vec<Value> = xs.iter().map(|&x| json!({ "set": set(x), "rank": m.rank(x) })).collect();
    Ok(Outcome::new("ok", json!({ "ranks": ranks })).inputs(json!([tj::matroid_to_json(&m), sets])))
}

fn tensor(c: &TensorCmd, g: &Global) -> (String, Result<Outcome>) {
    match c {
        TensorCmd::Check { a, b, product } => ("tensor check".into(), (|| {
            let (a, b, p) = (input::matroid(a)?, input::matroid(b)?, input::matroid(product)?);
            let v = is_tensor_product(&p, &a, &b)?;
            let verdict = if v.is_product() { "product" } else { "not-product" };
            Ok(Outcome::new(verdict, tj::verdict_to_json(&v)).inputs(inputs3(&a, &b, &p)))
        })()),
        TensorCmd::Search { a, b, max_products } => ("tensor search".into(), (|| {
            let (a, b) = (input::matroid(a)?, input::matroid(b)?);
            let opts = SearchOptions { budget: g.search_budget(), threads: g.threads, max_products: *max_products, ..SearchOptions::default() };
            let e = enumerate_with(&a, &b, &opts)?;
            let capped = e.stop == Some(tensorlab::tensor::StopReason::Products);
            let verdict = format!("{} products", e.products.len());
            Ok(Outcome::new(verdict, tj::enumeration_to_json(&e, opts.budget.nodes))
                .inputs(json!([tj::matroid_to_json(&a), tj::matroid_to_json(&b), max_products]))
                .budget(budget_json(g, opts.budget.nodes, e.nodes))
                .conclusive(e.complete || capped))
        })()),
        TensorCmd::Freest { matroid, k, n } => ("tensor freest".into(), (|| {
            let m = input::matroid(matroid)?;
            let f = freest_rank3_uniform(&m, *k, *n)?;
            let u = catalog::uniform(*k, *n)?;
            let v = is_tensor_product(&f, &m, &u)?;
            if let Verdict::Violated(x) = &v {
                return Err(Error::Certification(format!("freest construction is not a tensor product: {x}")));
            }
            let result = json!({ "rank": f.full_rank(), "bases": f.bases().len(), "check": tj::verdict_to_json(&v), "matroid": tj::matroid_to_json(&f) });
            Ok(Outcome::new("product", result).inputs(json!([tj::matroid_to_json(&m), k, n])))
        })()),
        TensorCmd::Depth { a, b, k, no_inequalities } => ("tensor depth".into(), (|| {
            let (a, b) = (input::matroid(a)?, input::matroid(b)?);
            let opts = CompatOptions {
                search: SearchOptions { budget: g.search_budget(), threads: g.threads, ..SearchOptions::default() },
                use_inequalities: !no_inequalities,
                seed: g.seed,
                ..CompatOptions::default()
            };
            let cert = tensor_compat_depth(&a, &b, *k, &opts)?;
            let verdict = serde_json::to_value(cert.kind).expect("kind serializes").as_str().unwrap_or_default().to_string();
            Ok(Outcome::new(verdict, tj::certificate_to_json(&cert))
                .inputs(json!([tj::matroid_to_json(&a), tj::matroid_to_json(&b), k, no_inequalities]))
                .budget(budget_json(g, cert.node_budget, cert.nodes))
                .conclusive(cert.kind != CompatKind::Inconclusive))
        })()),
    }
}

fn inputs3(a: &Matroid, b: &Matroid, p: &Matroid) -> Value {
    json!([tj::matroid_to_json(a), tj::matroid_to_json(b), tj::matroid_to_json(p)])
}

fn budget_json(g: &Global, nodes: u64, used: u64) -> Value {
    json!({ "nodes": nodes, "seconds": g.search_budget().time.map(|t| t.as_secs()), "used": used })
}

fn poly_inputs(a: &PolymatroidFn, b: &PolymatroidFn) -> Value {
    json!([tj::polymatroid_to_json(a), tj::polymatroid_to_json(b)])
}

/// Default right-factor sets for the seeded families: the labels spelled by
/// the variable names if present, canonical pairs for Ingleton on eight
/// elements, and singletons otherwise.
fn family_sets(kind: &str, sets: Option<&str>, right: &PolymatroidFn) -> Result<Vec<SetWord>> {
    let names: Vec<String> = match kind {
        "ingleton" => ["A", "B", "C", "D"].map(String::from).to_vec(),
        _ => inequalities::new_ineq().variables().to_vec(),
    };
    if let Some(s) = sets {
        let v = input::sets(s, right.n())?;
        if v.len() != names.len() {
            return Err(Error::Input(format!("{kind} needs {} sets", names.len())));
        }
        return Ok(v);
    }
    if let Ok(v) = input::by_labels(&names, right.labels()) {
        return Ok(v);
    }
    if kind == "ingleton" && right.n() == 8 {
        return Ok((0..4).map(|i| singleton(2 * i) | singleton(2 * i + 1)).collect());
    }
    if right.n() < names.len() {
        return Err(Error::Input(format!("{kind} needs at least {} elements on the right", names.len())));
    }
    Ok((0..names.len()).map(singleton).collect())
}

fn family(f: &FamilyArgs, left: &PolymatroidFn, right: &PolymatroidFn) -> Result<SubsetLattice> {
    let (n1, n2) = (left.n(), right.n());
    let seeds = match f.family.as_str() {
        "full" => return SubsetLattice::full_boolean(n1, n2, DEFAULT_LATTICE_CAP),
        "ingleton" if n1 == 3 => {
            let s = family_sets("ingleton", f.sets.as_deref(), right)?;
            ingleton_seeds(n2, s.try_into().expect("four sets"))
        }
        "new-ineq" if n1 == 6 => {
            let s = family_sets("new-ineq", f.sets.as_deref(), right)?;
            new_ineq_seeds(n2, s.try_into().expect("ten sets"))
        }
        "ingleton" => return Err(Error::Input("the ingleton family needs a left factor on 3 elements".into())),
        "new-ineq" => return Err(Error::Input("the new-ineq family needs a left factor on 6 elements".into())),
        other => return Err(Error::Input(format!("unknown family {other}"))),
    };
    if f.closed {
        build_lattice(n1, n2, &seeds, DEFAULT_LATTICE_CAP)
    } else {
        build_family(n1, n2, &seeds, DEFAULT_LATTICE_CAP)
    }
}

fn family_inputs(f: &FamilyArgs, a: &PolymatroidFn, b: &PolymatroidFn) -> Value {
    json!([poly_inputs(a, b), f.family, f.sets, f.closed])
}

fn polylp(c: &PolylpCmd) -> (String, Result<Outcome>) {
    match c {
        PolylpCmd::Feasible(f) => ("polylp feasible".into(), (|| {
            let (a, b) = (input::polymatroid(&f.a)?, input::polymatroid(&f.b)?);
            let fam = family(f, &a, &b)?;
            let out = lp_tensor_feasible(&a, &b, &fam)?;
            certify_lp(&out, &a, &b)?;
            let mut result = tj::lp_outcome_to_json(&out);
            result["family_size"] = fam.len().into();
            Ok(Outcome::new(if out.feasible { "feasible" } else { "infeasible" }, result).inputs(family_inputs(f, &a, &b)))
        })()),
        PolylpCmd::Chain { a, b, k } => ("polylp chain".into(), (|| {
            let (a, b) = (input::polymatroid(a)?, input::polymatroid(b)?);
            let out = lp_chain_feasible(&a, *k, &b, None)?;
            if !out.feasible && !verify_farkas(&out, &a, &b) {
                return Err(Error::Certification("chain Farkas certificate does not verify".into()));
            }
            let verdict = if out.feasible { "feasible" } else { "infeasible" };
            Ok(Outcome::new(verdict, tj::lp_outcome_to_json(&out)).inputs(json!([poly_inputs(&a, &b), k])))
        })()),
        PolylpCmd::Lattice(f) => ("polylp lattice".into(), (|| {
            let (a, b) = (input::polymatroid(&f.a)?, input::polymatroid(&f.b)?);
            let fam = family(f, &a, &b)?;
            let members: Vec<Value> = fam.members().iter().map(|&w| set(w)).collect();
            let result = json!({
                "n_left": fam.n_left(),
                "n_right": fam.n_right(),
                "closed": fam.is_closed(),
                "size": fam.len(),
                "rectangles": fam.rectangles().count(),
                "members": members,
            });
            Ok(Outcome::new("ok", result).inputs(family_inputs(f, &a, &b)))
        })()),
    }
}

fn certify_lp(out: &tensorlab::polymatroid::LpOutcome, a: &PolymatroidFn, b: &PolymatroidFn) -> Result<()> {
    if !out.feasible && !verify_farkas(out, a, b) {
        return Err(Error::Certification("Farkas certificate does not verify".into()));
    }
    Ok(())
}

fn modext(c: &ModextCmd, g: &Global) -> (String, Result<Outcome>) {
    match c {
        ModextCmd::Extract { matrix, matroid, product, pair_a, pair_b, all_lines } => ("modext extract".into(), (|| {
            let cand = match (matrix, matroid, product) {
                (Some(mx), _, _) => {
                    let a = input::matrix(mx)?;
                    let u = u23_matrix(a.field())?;
                    let TensorRep::Matroid(lin) = tensor_from_reps(&a, &u)? else {
                        return Err(Error::Input("extraction needs a matroid matrix, not a partitioned one".into()));
                    };
                    TensorCandidate::new(lin.to_matroid()?, matroid_from_rep(&a)?, matroid_from_rep(&u)?)?
                }
                (None, Some(m), Some(p)) => {
                    TensorCandidate::new(input::matroid(p)?, input::matroid(m)?, catalog::uniform(2, 3)?)?
                }
                _ => return Err(Error::Input("give --matrix, or --matroid with --product".into())),
            };
            let m = cand.left();
            let pairs: Vec<(SetWord, SetWord)> = if *all_lines {
                let lines = m.flats_of_rank(2);
                lines.iter().enumerate().flat_map(|(i, &x)| lines[i + 1..].iter().map(move |&y| (x, y))).collect()
            } else {
                let (pa, pb) = (pair_a.as_deref().unwrap_or_default(), pair_b.as_deref().unwrap_or_default());
                vec![(input::set(pa, m.n())?, input::set(pb, m.n())?)]
            };
            let witnesses = pairs.iter().map(|&(x, y)| extension_from_tensor(&cand, x, y)).collect::<Result<Vec<_>>>()?;
            let inputs = json!([tj::matroid_to_json(cand.matroid()), tj::matroid_to_json(m), pairs.iter().map(|&(x, y)| json!([set(x), set(y)])).collect::<Vec<_>>()]);
            let result = if *all_lines {
                json!({ "pairs": witnesses.len(), "verified": witnesses.len(), "witnesses": witnesses.iter().map(tj::witness_to_json).collect::<Vec<_>>() })
            } else {
                tj::witness_to_json(&witnesses[0])
            };
            Ok(Outcome::new("verified", result).inputs(inputs))
        })()),
        ModextCmd::Search { matroid, pair_a, pair_b } => ("modext search".into(), (|| {
            let m = input::matroid(matroid)?;
            let (a, b) = (input::set(pair_a, m.n())?, input::set(pair_b, m.n())?);
            let budget = g.nodes_or(DEFAULT_EXTENSION_BUDGET);
            let s = search_extension(&m, a, b, budget)?;
            let verdict = if s.witness.is_some() { "found" } else { "none" };
            let result = json!({
                "witness": s.witness.as_ref().map_or(Value::Null, tj::witness_to_json),
                "exhausted_below": s.exhausted_below,
                "complete": s.complete,
            });
            Ok(Outcome::new(verdict, result)
                .inputs(json!([tj::matroid_to_json(&m), set(a), set(b)]))
                .budget(json!({ "nodes": budget, "used": s.nodes }))
                .conclusive(s.complete))
        })()),
        ModextCmd::CheckK { matroid, k } => ("modext check-k".into(), (|| {
            let m = input::matroid(matroid)?;
            let budget = g.nodes_or(DEFAULT_EXTENSION_BUDGET);
            let r = k_modular_extendable(&m, *k, budget)?;
            let (verdict, done) = match r.verdict {
                KModularVerdict::Yes(_) => ("yes", true),
                KModularVerdict::No { .. } => ("no", true),
                KModularVerdict::Inconclusive => ("inconclusive", false),
            };
            Ok(Outcome::new(verdict, tj::k_modular_to_json(*k, &r))
                .inputs(json!([tj::matroid_to_json(&m), k]))
                .budget(json!({ "nodes": budget, "used": r.nodes }))
                .conclusive(done))
        })()),
    }
}

fn ineq(c: &IneqCmd, g: &Global) -> (String, Result<Outcome>) {
    match c {
        IneqCmd::List => ("ineq list".into(), Ok(Outcome::new("ok", json!({
            "inequalities": inequalities::builtin().iter().map(tj::inequality_to_json).collect::<Vec<_>>()
        })))),
        IneqCmd::Eval { ineq, matroid, assign } => ("ineq eval".into(), (|| {
            let q = input::inequality(ineq)?;
            let phi = input::polymatroid(matroid)?;
            let k = q.variables().len();
            let a: Vec<SetWord> = match assign.as_str() {
                "canonical" => canonical_assignment(k),
                "canonical-pairs" => (0..k).map(|i| singleton(2 * i) | singleton(2 * i + 1)).collect(),
                "labels" => input::by_labels(q.variables(), phi.labels())?,
                s => {
                    let named = tj::named_sets(&tj::parse(s)?, phi.n())?;
                    q.variables()
                        .iter()
                        .map(|v| named.get(v).copied().ok_or_else(|| Error::Input(format!("variable {v} is not assigned"))))
                        .collect::<Result<_>>()?
                }
            };
            let sides = q.sides(&phi, &a)?;
            let verdict = if sides.slack < num_traits::Zero::zero() { "violated" } else { "satisfied" };
            let result = json!({ "inequality": q.name(), "assignment": a.iter().map(|&x| set(x)).collect::<Vec<_>>(), "sides": tj::sides_to_json(&sides) });
            Ok(Outcome::new(verdict, result).inputs(json!([tj::inequality_to_json(&q), tj::polymatroid_to_json(&phi), assign])))
        })()),
        IneqCmd::Scan { ineq, matroid, strategy } => ("ineq scan".into(), (|| {
            let q = input::inequality(ineq)?;
            let m = input::matroid(matroid)?;
            let strat = match strategy.parse::<Strategy>()? {
                Strategy::AllSubsets { .. } => Strategy::AllSubsets { seed: g.seed },
                s => s,
            };
            let budget = g.nodes_or(DEFAULT_SCAN_BUDGET);
            let o = search_violation(&q, &m, strat, budget)?;
            let verdict = if o.witness.is_some() { "violated" } else { "satisfied" };
            Ok(Outcome::new(verdict, tj::scan_to_json(&q, &m, &o))
                .inputs(json!([tj::inequality_to_json(&q), tj::matroid_to_json(&m), strategy]))
                .budget(json!({ "nodes": budget, "used": o.examined }))
                .conclusive(o.witness.is_some() || o.complete))
        })()),
        IneqCmd::FromFarkas { family: f, side } => ("ineq from-farkas".into(), (|| {
            let (a, b) = (input::polymatroid(&f.a)?, input::polymatroid(&f.b)?);
            let side = match side.as_str() {
                "left" => Side::Left,
                "right" => Side::Right,
                s => return Err(Error::Input(format!("unknown side {s}"))),
            };
            let fam = family(f, &a, &b)?;
            let out = lp_tensor_feasible(&a, &b, &fam)?;
            if out.feasible {
                return Ok(Outcome::new("feasible", json!({ "feasible": true })).inputs(family_inputs(f, &a, &b)));
            }
            certify_lp(&out, &a, &b)?;
            let q = render_farkas(&out, side)?;
            let phi = if side == Side::Right { &b } else { &a };
            let sides = q.sides(phi, &canonical_assignment(phi.n()))?;
            if Some(&sides.slack) != rendered_slack(&out).as_ref() {
                return Err(Error::Certification("rendered inequality does not reproduce the slack".into()));
            }
            let result = json!({
                "inequality": tj::inequality_to_json(&q),
                "rendered": q.render(),
                "slack": rational(&sides.slack),
                "contradiction": out.contradiction.as_ref().map(rational),
            });
            Ok(Outcome::new("infeasible", result).inputs(family_inputs(f, &a, &b)))
        })()),
    }
}

fn helgason(poly: &str) -> Result<Outcome> {
    let phi = input::polymatroid(poly)?;
    let lift = helgason_lift(&phi)?;
    let back = quotient(&lift.matroid, &lift.blocks(phi.n()))?;
    if back.values() != phi.values() {
        return Err(Error::Certification("quotient of the lift differs from the input".into()));
    }
    let result = json!({ "matroid": tj::matroid_to_json(&lift.matroid), "theta": lift.theta, "round_trip": true });
    Ok(Outcome::new("ok", result).inputs(tj::polymatroid_to_json(&phi)))
}

fn quotient_cmd(m: &str, blocks: &str) -> Result<Outcome> {
    let m = input::matroid(m)?;
    let blocks = input::sets(blocks, m.n())?;
    let q = quotient(&m, &blocks)?;
    Ok(Outcome::new("ok", tj::polymatroid_to_json(&q))
        .inputs(json!([tj::matroid_to_json(&m), blocks.iter().map(|&b| set(b)).collect::<Vec<_>>()])))
}

fn rep(c: &RepCmd) -> (String, Result<Outcome>) {
    match c {
        RepCmd::Rank { matrix, set: s } => ("rep rank".into(), (|| {
            let a = input::matrix(matrix)?;
            let x = match s {
                Some(s) => input::set(s, a.element_count())?,
                None => bitset::full(a.element_count()),
            };
            Ok(Outcome::new("ok", json!({ "set": set(x), "rank": a.element_rank(x) })).inputs(json!([tj::matrix_to_json(&a), s])))
        })()),
        RepCmd::Matroid { matrix } => ("rep matroid".into(), (|| {
            let a = input::matrix(matrix)?;
            Ok(Outcome::new("ok", tj::matroid_to_json(&matroid_from_rep(&a)?)).inputs(tj::matrix_to_json(&a)))
        })()),
        RepCmd::Kron { a, b } => ("rep kron".into(), (|| {
            let (a, b) = (input::matrix(a)?, input::matrix(b)?);
            let k = a.kronecker(&b)?;
            let (ra, rb, rk) = (a.full_rank(), b.full_rank(), k.full_rank());
            let result = json!({ "matrix": tj::matrix_to_json(&k), "rank_a": ra, "rank_b": rb, "rank": rk, "multiplicative": rk == ra * rb });
            Ok(Outcome::new("ok", result).inputs(json!([tj::matrix_to_json(&a), tj::matrix_to_json(&b)])))
        })()),
    }
}
