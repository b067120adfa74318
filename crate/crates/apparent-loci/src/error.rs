//! Crate-wide error type.
//!
//! Every fallible operation in the library funnels into [`Error`]. The
//! variants mirror the failure modes a caller can actually act on: bad
//! input data, attempts to use non-rational locus data for operations that
//! are only defined at rational points of the curve over Q, degenerate
//! frames, and exhausted deterministic searches.

use thiserror::Error;

/// All errors produced by the library.
///
/// The CLI maps these onto its exit codes; see `main.rs`.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Operands of a field operation live on different curves.
    #[error("curve mismatch: operands are defined over different curves")]
    CurveMismatch,

    /// The zero element has no inverse, no valuation and no divisor.
    #[error("the zero element has no {0}")]
    ZeroElement(&'static str),

    /// Division by zero in the function field.
    #[error("division by zero in the function field")]
    DivisionByZero,

    /// The defining polynomial is unusable (wrong degree, not squarefree, ...).
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    /// A frame whose determinant vanishes identically cannot be normalized.
    #[error("singular frame: determinant vanishes identically")]
    SingularFrame,

    /// A dependence point fell outside the locus this build can expand at.
    ///
    /// All local expansion data (jets) is restricted to rational unramified
    /// affine points of the curve over Q; that restriction is a choice of
    /// this implementation, not of the underlying construction.
    #[error(
        "dependence locus at {place} is not a rational unramified point; \
         this build restricts local data to rational unramified points over Q ({context})"
    )]
    IrrationalLocus { place: String, context: String },

    /// A place-level operation was asked for at a place where that operation
    /// is not defined (e.g. jets at a ramified point, per-place orders at an
    /// unresolved conjugate pair).
    #[error(
        "unsupported place {place} for {context}; \
         this build keeps all per-place data rational over Q"
    )]
    BadPlace { place: String, context: String },

    /// Expansion was requested at a place where the element has a pole.
    #[error("pole at expansion point {place}")]
    PoleAtPlace { place: String },

    /// The deterministic candidate enumeration ran out of room.
    #[error("deterministic search exhausted while {context}")]
    SearchExhausted { context: String },

    /// Textual input could not be parsed; `at` is a byte offset.
    #[error("parse error at offset {at}: {msg}")]
    Parse { at: usize, msg: String },

    /// A certificate failed verification.
    #[error("certificate verification failed: {0}")]
    Verification(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
