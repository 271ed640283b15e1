//! A finite-instance laboratory for monads in substructural contexts.
//!
//! The crate implements, at desk scale and with exact arithmetic:
//!
//! - finite ordinals, the named wide subcategories of the category of finite
//!   ordinals ("verbal categories"), and the substitution operation they must
//!   be closed under ([`finord`]);
//! - exact coefficient algebra: monoids, semirings, and (contracted) monoid
//!   semirings ([`algebra`]);
//! - a zoo of computable monads on finite carriers together with the derived
//!   strength and lax monoidal structure ([`monads`]);
//! - substructural commutativity checks for monads, plus the classical
//!   affine/commutative/relevant/hyperaffine predicates ([`wcomm`]);
//! - operads graded over a verbal category, an exhaustive axiom checker, and
//!   change-of-base constructions ([`operads`]);
//! - the monad induced by an operad via a coend quotient, canonical
//!   representatives, and operadic refinement of monads ([`coend`]);
//! - synthesis and verification of the canonical distributive law between an
//!   operadically presented monad and a substructurally commutative monad,
//!   with a diagnosis mode for failure cases ([`distlaw`]).
//!
//! Every universally quantified statement is checked either exhaustively
//! (when the relevant sets are finite and small) or by seeded sampling, and
//! every report records which of the two modes was used.

pub mod algebra;
pub mod coend;
pub mod distlaw;
pub mod finord;
pub mod monads;
pub mod operads;
pub mod report;
pub mod sample;
pub mod wcomm;

pub use finord::{FinFn, VerbalCat};
pub use monads::{Carrier, MonadSpec, Val};
pub use operads::{OpElem, OperadSpec};
pub use report::{Mode, Verdict};

/// Errors shared across the crate. Failures of checked laws are *data*
/// (reports with verdicts), never errors; errors are reserved for misuse
/// (arity mismatches, unknown names) and refusals (bound overflows).
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("arity bound {bound} exceeded: {what}")]
    BoundExceeded { bound: usize, what: String },
    #[error("refusal: {0}")]
    Refusal(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
}

pub type Result<T> = std::result::Result<T, Error>;
