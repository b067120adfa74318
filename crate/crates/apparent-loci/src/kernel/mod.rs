//! Exact arithmetic foundations: rationals, polynomials, rational functions,
//! factorization over Q, linear algebra, hyperelliptic curves and their
//! function fields, plus a parser for all of the above.

pub mod curve;
pub mod factor;
pub mod funcelem;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod ratfunc;

pub use curve::{Curve, CurveRef};
pub use funcelem::FuncElem;
pub use parse::{parse_funcelem, parse_poly, parse_rat, parse_ratfunc};
pub use linalg::QMat;
pub use poly::Poly;
pub use rat::Rat;
pub use ratfunc::RatFunc;
