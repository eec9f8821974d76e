//! Checking, enumerating and constructing tensor products.

use std::time::Duration;

pub mod check;
pub mod compat;
pub mod enumerate;
pub mod freest;
pub mod reduction;

pub use check::{is_poly_tensor_product, is_tensor_product, TensorCandidate, Verdict, Violation};
pub use compat::{kronecker_chain, tensor_compat_depth, verify_chain, ChainLevel, CompatCertificate, CompatKind, CompatMethod, CompatOptions};
pub use enumerate::{enumerate_tensor_products, enumerate_with, Enumeration, SearchOptions};
pub use freest::freest_rank3_uniform;
pub use reduction::{minor_of_tensor, simplification_reduction, Reduction};

/// Environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "MTL_BUDGET_NODES";

/// Limits on a search. Refutations are only reported for exhausted trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Search-tree nodes (branching decisions) per level.
    pub nodes: u64,
    /// Wall-clock limit per level; `None` disables it.
    pub time: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { nodes: 100_000_000, time: Some(Duration::from_secs(60)) }
    }
}

impl SearchBudget {
    pub fn nodes(nodes: u64) -> Self {
        SearchBudget { nodes, time: None }
    }

    /// The default budget with the node count taken from `MTL_BUDGET_NODES` if set.
    pub fn from_env() -> Self {
        let mut b = SearchBudget::default();
        if let Some(n) = std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            b.nodes = n;
        }
        b
    }
}

/// Why a search stopped before exhausting its tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StopReason {
    Nodes,
    Time,
    /// The requested number of products was reached.
    Products,
}
