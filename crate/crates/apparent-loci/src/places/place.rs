//! Places of the function field, as far as they are visible over Q.
//!
//! A place is a rational affine point, the single point at infinity, or a
//! closed site sitting over a monic irreducible polynomial q(x). Closed sites
//! come in three flavors that differ in what one integer coefficient can
//! honestly describe:
//!
//! * `Ramified` (q divides f): a single place of degree deg q; valuations
//!   are exact.
//! * `Fiber` (q does not divide f): the whole fiber over q taken uniformly,
//!   one coefficient per place, total degree 2 deg q. Exact whenever the
//!   element's order is the same across the fiber, which the norm test
//!   detects; inert fibers are always uniform.
//! * `Lumped`: a non-uniform split fiber. The coefficient records the order
//!   of the norm, weighted by deg q, so degree bookkeeping stays exact even
//!   though the two conjugate places cannot be told apart by one number.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{factor, CurveRef, Poly, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosedKind {
    Ramified,
    Fiber,
    Lumped,
}

/// Variant order gives the display and storage order of divisor entries:
/// affine points, then closed sites, then infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Affine { x: Rat, y: Rat },
    Closed { minpoly: Poly, kind: ClosedKind },
    Infinity,
}

impl Place {
    /// A rational affine point, checked against the curve.
    pub fn affine(curve: &CurveRef, x: Rat, y: Rat) -> Result<Place> {
        if !curve.contains(&x, &y) {
            return Err(Error::BadPlace {
                place: format!("({x}, {y})"),
                context: format!("not a point of {curve}"),
            });
        }
        Ok(Place::Affine { x, y })
    }

    pub fn infinity() -> Place {
        Place::Infinity
    }

    /// A closed site over the monic irreducible polynomial q. Linear q is
    /// allowed only when the fiber cannot be split into rational points.
    pub fn closed(curve: &CurveRef, q: Poly) -> Result<Place> {
        let q = q.monic();
        if !factor::is_irreducible(&q) {
            return Err(Error::BadPlace {
                place: format!("closed[{q}]"),
                context: "polynomial is not irreducible".into(),
            });
        }
        let kind = if curve.f().multiplicity_of(&q) > 0 {
            ClosedKind::Ramified
        } else {
            ClosedKind::Fiber
        };
        if q.deg() == 1 {
            let x0 = -q.coeff(0);
            let fx = curve.f().eval(&x0);
            if fx.is_zero() {
                return Err(Error::BadPlace {
                    place: format!("closed[{q}]"),
                    context: format!("use the affine branch point ({x0}, 0)"),
                });
            }
            if fx.sqrt_exact().is_some() {
                return Err(Error::BadPlace {
                    place: format!("closed[{q}]"),
                    context: format!("the fiber over x = {x0} splits into rational points"),
                });
            }
        }
        Ok(Place::Closed { minpoly: q, kind })
    }

    /// Internal constructor for sites discovered by divisor computation.
    pub(crate) fn closed_with_kind(minpoly: Poly, kind: ClosedKind) -> Place {
        Place::Closed { minpoly, kind }
    }

    /// Degree contribution of a unit coefficient at this place.
    pub fn degree(&self) -> i64 {
        match self {
            Place::Affine { .. } | Place::Infinity => 1,
            Place::Closed { minpoly, kind } => {
                let d = minpoly.deg() as i64;
                match kind {
                    ClosedKind::Ramified | ClosedKind::Lumped => d,
                    ClosedKind::Fiber => 2 * d,
                }
            }
        }
    }

    /// True at ramification points of the double cover (y = 0 or infinity).
    pub fn is_ramified(&self) -> bool {
        match self {
            Place::Affine { y, .. } => y.is_zero(),
            Place::Infinity => true,
            Place::Closed { kind, .. } => *kind == ClosedKind::Ramified,
        }
    }

    /// True for rational affine points away from ramification: the places
    /// where power-series jets in x - x0 are available.
    pub fn is_rational_unramified(&self) -> bool {
        matches!(self, Place::Affine { y, .. } if !y.is_zero())
    }

    /// The hyperelliptic involution (x, y) -> (x, -y); closed sites and
    /// infinity are stable.
    pub fn conjugate(&self) -> Place {
        match self {
            Place::Affine { x, y } => Place::Affine { x: x.clone(), y: -y },
            other => other.clone(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Affine { x, y } => write!(f, "({x}, {y})"),
            Place::Infinity => write!(f, "inf"),
            Place::Closed { minpoly, kind: ClosedKind::Lumped } => {
                write!(f, "lump[{minpoly}]")
            }
            Place::Closed { minpoly, .. } => write!(f, "closed[{minpoly}]"),
        }
    }
}
