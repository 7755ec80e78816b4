//! Exact classification of finite group actions on genus-2 curves, Galois
//! covers of elliptic curves of small genus, and the invariants of the
//! associated product-quotient surfaces.

pub mod binform;
pub mod bolza;
pub mod covers;
pub mod cyclotomic;
pub mod golden;
pub mod matgroup;
pub mod surfaces;

pub use cyclotomic::CycNum;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("closure exceeded {0} elements")]
    InfiniteOrSuspicious(usize),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("form is not invariant: {0}")]
    NotInvariant(String),
    #[error("inconsistent construction: {0}")]
    ConstructionInconsistent(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
