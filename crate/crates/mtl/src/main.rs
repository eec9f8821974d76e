//! `mtl`: command-line front end for the tensorlab toolkit.
//!
//! Every command prints one run report as JSON on stdout. Exit codes: 0 a
//! verdict was reached, 1 a reproduction differs from its expected output,
//! 2 a budget ran out first, 64 usage error, 65 malformed or unsupported
//! input, 70 an internal certificate failed to verify.

mod commands;
mod input;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tensorlab::tensor::SearchBudget;
use tensorlab::{json as tj, Error};

pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_SOFTWARE: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "mtl", version, about = "Exact tools for tensor products of matroids and polymatroids")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every sampled computation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    /// Node budget; overrides MTL_BUDGET_NODES and the command default.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    /// Wall-clock budget for searches, in seconds.
    #[arg(long, global = true)]
    pub budget_seconds: Option<u64>,
}

impl Global {
    /// Node budget: the flag, then `MTL_BUDGET_NODES`, then `default`.
    pub fn nodes_or(&self, default: u64) -> u64 {
        self.budget_nodes
            .or_else(|| std::env::var(tensorlab::tensor::BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()))
            .unwrap_or(default)
    }

    pub fn search_budget(&self) -> SearchBudget {
        let mut b = SearchBudget::from_env();
        if let Some(n) = self.budget_nodes {
            b.nodes = n;
        }
        if let Some(s) = self.budget_seconds {
            b.time = Some(Duration::from_secs(s));
        }
        b
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Built-in matroids.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Ranks of subsets of a matroid.
    Rank {
        #[arg(long)]
        matroid: String,
        /// A set as a JSON index list; repeatable. Defaults to the ground set.
        #[arg(long = "set")]
        sets: Vec<String>,
    },
    /// Tensor products of matroids.
    #[command(subcommand)]
    Tensor(TensorCmd),
    /// The tensor-product linear program over a subset family.
    #[command(subcommand)]
    Polylp(PolylpCmd),
    /// Modular one-step extensions.
    #[command(subcommand)]
    Modext(ModextCmd),
    /// Linear rank inequalities.
    #[command(subcommand)]
    Ineq(IneqCmd),
    /// Lift an integer polymatroid to its Helgason matroid.
    Helgason {
        /// Polymatroid JSON, Matroid JSON or catalog key.
        #[arg(long)]
        poly: String,
    },
    /// Quotient of a matroid by a partition of its ground set.
    Quotient {
        #[arg(long)]
        matroid: String,
        /// JSON list of blocks, e.g. `[[0,1],[2]]`.
        #[arg(long)]
        blocks: String,
    },
    /// Matrix representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Rerun a named computation and compare it with its checked-in result.
    Reproduce {
        /// One of the targets listed by `reproduce list`, or `paper` for all.
        target: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List,
    Emit { key: String },
}

#[derive(Subcommand, Debug)]
pub enum TensorCmd {
    /// Check that `product` is a tensor product of `a` and `b`.
    Check {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        product: String,
    },
    /// Enumerate all tensor products of `a` and `b` up to the budget.
    Search {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        max_products: Option<usize>,
    },
    /// The freest tensor product of a rank-3 matroid with `U_{k,n}`.
    Freest {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Search for a chain `a ⊗ b ⊗ … ⊗ b` of `k` products.
    Depth {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: usize,
        /// Skip the linear-rank-inequality refutations.
        #[arg(long)]
        no_inequalities: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Left factor (polymatroid, matroid or catalog key).
    #[arg(long)]
    pub a: String,
    /// Right factor.
    #[arg(long)]
    pub b: String,
    /// `full`, `ingleton` or `new-ineq`.
    #[arg(long, default_value = "full")]
    pub family: String,
    /// Right-factor sets for the seeded families, as a JSON list.
    #[arg(long)]
    pub sets: Option<String>,
    /// Close the seeds under meet and join instead of using them as given.
    #[arg(long)]
    pub closed: bool,
}

#[derive(Subcommand, Debug)]
pub enum PolylpCmd {
    Feasible(FamilyArgs),
    /// Chain feasibility on full Boolean lattices.
    Chain {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: usize,
    },
    /// Print the subset family without solving.
    Lattice(FamilyArgs),
}

#[derive(Subcommand, Debug)]
pub enum ModextCmd {
    /// Extract a witness from a tensor product with `U_{2,3}`.
    Extract {
        /// Matrix whose Kronecker product with the `U_{2,3}` matrix is used.
        #[arg(long, conflicts_with_all = ["matroid", "product"])]
        matrix: Option<String>,
        /// Left factor of `product`.
        #[arg(long, requires = "product")]
        matroid: Option<String>,
        /// Explicit tensor product of `matroid` with `U_{2,3}`.
        #[arg(long)]
        product: Option<String>,
        /// Subset `A` of the left ground, as `[i,j,..]`.
        #[arg(long, required_unless_present = "all_lines")]
        pair_a: Option<String>,
        /// Subset `B` of the left ground.
        #[arg(long, required_unless_present = "all_lines")]
        pair_b: Option<String>,
        /// Use every unordered pair of distinct rank-2 flats.
        #[arg(long)]
        all_lines: bool,
    },
    /// Search for a one-step extension of a pair.
    Search {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        pair_a: String,
        #[arg(long)]
        pair_b: String,
    },
    /// Decide k-modular extendability.
    CheckK {
        #[arg(long)]
        matroid: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum IneqCmd {
    List,
    /// Evaluate an inequality at one assignment.
    Eval {
        #[arg(long)]
        ineq: String,
        /// Matroid, polymatroid or catalog key.
        #[arg(long)]
        matroid: String,
        /// `canonical`, `canonical-pairs`, `labels` or a JSON object of sets.
        #[arg(long, default_value = "canonical")]
        assign: String,
    },
    /// Search for a violating assignment.
    Scan {
        #[arg(long)]
        ineq: String,
        #[arg(long)]
        matroid: String,
        /// `canonical`, `canonical-pairs`, `singletons`, `flats` or `all-subsets`.
        #[arg(long, default_value = "flats")]
        strategy: String,
    },
    /// Solve the LP and render its Farkas certificate as an inequality.
    FromFarkas {
        #[command(flatten)]
        family: FamilyArgs,
        /// Which factor stays symbolic: `left` or `right`.
        #[arg(long, default_value = "right")]
        side: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    Rank {
        #[arg(long)]
        matrix: String,
        /// A set of matroid elements as a JSON index list; default all.
        #[arg(long)]
        set: Option<String>,
    },
    Matroid {
        #[arg(long)]
        matrix: String,
    },
    /// Kronecker product of two matrices over the same field.
    Kron {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

/// What a command produced: its verdict, result payload and exit code.
pub struct Outcome {
    pub verdict: String,
    pub result: Value,
    pub inputs: Value,
    pub budget: Value,
    pub code: u8,
}

impl Outcome {
    pub fn new(verdict: impl Into<String>, result: Value) -> Self {
        Outcome { verdict: verdict.into(), result, inputs: Value::Null, budget: Value::Null, code: 0 }
    }

    pub fn inputs(mut self, v: Value) -> Self {
        self.inputs = v;
        self
    }

    pub fn budget(mut self, v: Value) -> Self {
        self.budget = v;
        self
    }

    pub fn code(mut self, c: u8) -> Self {
        self.code = c;
        self
    }

    /// Exit 2 and an `inconclusive` verdict unless `done`.
    pub fn conclusive(self, done: bool) -> Self {
        if done {
            self
        } else {
            Outcome { verdict: "inconclusive".into(), code: EXIT_INCONCLUSIVE, ..self }
        }
    }
}

pub fn digest(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("JSON values serialize");
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn report(command: &str, g: &Global, o: &Outcome) -> Value {
    json!({
        "command": command,
        "inputs_digest": digest(&o.inputs),
        "seed": g.seed,
        "budget": o.budget,
        "verdict": o.verdict,
        "result": o.result,
    })
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Certification(_) => EXIT_SOFTWARE,
        _ => EXIT_DATA,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.global.threads {
        if t == 0 {
            eprintln!("mtl: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool is configured once");
    }
    let start = Instant::now();
    let (name, res) = commands::run(&cli.cmd, &cli.global);
    let out = match res {
        Ok(o) => o,
        Err(e) => {
            eprintln!("mtl: {e}");
            return ExitCode::from(exit_for(&e));
        }
    };
    let text = tj::to_string(&report(&name, &cli.global, &out));
    print!("{text}");
    if let Some(path) = &cli.global.json_out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("mtl: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_DATA);
        }
    }
    // Timing stays off stdout so reports are byte-identical across runs.
    eprintln!("mtl: {name} finished in {:.3} s", start.elapsed().as_secs_f64());
    ExitCode::from(out.code)
}
