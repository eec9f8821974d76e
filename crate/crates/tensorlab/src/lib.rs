//! Exact computational toolkit for tensor products of matroids and
//! polymatroid functions.

pub mod bitset;
pub mod catalog;
pub mod error;
pub mod inequalities;
pub mod json;
pub mod field;
mod iso;
pub mod matroid;
pub mod modular;
pub mod polymatroid;
pub mod representation;
pub mod tensor;

pub use bitset::SetWord;
pub use error::{Error, Result};
pub use matroid::{GroundSet, Matroid};
pub use representation::RankOracle;

/// The guide under `book/`, compiled so its snippets stay runnable.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matroids.md")]
    mod matroids {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/tensor-products.md")]
    mod tensor_products {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/polymatroid-lp.md")]
    mod polymatroid_lp {}
    #[doc = include_str!("../../../book/src/modular-extensions.md")]
    mod modular_extensions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
