//! Exact computation on odd-degree hyperelliptic curves over Q: divisors and
//! valuations, Riemann-Roch spaces, triangular trivialization of frames with
//! certified bounds on the points it introduces, and gauge transformations of
//! linear differential systems over the function field.
//!
//! The crate is a library first; see the `examples/` directory for a guided
//! tour of each capability, and the `apparent-loci` binary for a thin JSON
//! command-line front end.

pub mod error;
pub mod gauge;
pub mod kernel;
pub mod places;
pub mod report;
pub mod rr;
pub mod trivializer;

pub use error::{Error, Result};
pub use gauge::{derive, emit_system, gauge_transform, SystemMatrix};
pub use kernel::{
    parse_funcelem, parse_poly, parse_rat, parse_ratfunc, Curve, CurveRef, FuncElem,
    Poly, QMat, Rat, RatFunc,
};
pub use places::{divisor_of, jet_at, ord, ClosedKind, Divisor, Jet, Place};
pub use rr::{polar_section, rr_basis};
pub use trivializer::{dependence_locus, Frame};
