//! Places, divisors, valuations, local expansions, and jets.

pub mod divisor;
pub mod jet;
pub mod place;
pub mod series;
pub mod valuation;

pub use divisor::Divisor;
pub use jet::{jet_at, Jet};
pub use place::{ClosedKind, Place};
pub use series::{laurent_funcelem_at, poly_series_at, y_series_at, Series};
pub use valuation::{divisor_of, is_uniform_at, ord};
