use crate::bitset::{fmt_set, SetWord};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("basis exchange fails: B1={} B2={} e={e}", fmt_set(*.b1), fmt_set(*.b2))]
    Exchange { b1: SetWord, b2: SetWord, e: usize },
    #[error("ground set too large: {0} elements (limit 64)")]
    SizeOverflow(usize),
    #[error("lattice closure exceeded the cap of {cap} members (reached {reached})")]
    LatticeCap { cap: usize, reached: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
