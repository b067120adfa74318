//! Odd-degree hyperelliptic models y^2 = f(x) over Q.
//!
//! The degree of f is 3 or 5 (genus 1 or 2) and f must be squarefree, so the
//! affine model is smooth and there is exactly one point at infinity. The
//! constructor factors f once and caches the result: the irreducible factors
//! of f are exactly the x-loci where y vanishes, which every valuation and
//! divisor routine downstream wants to know about.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::factor::factor;
use super::poly::Poly;
use super::rat::Rat;

#[derive(Debug, Clone)]
pub struct Curve {
    f: Poly,
    genus: usize,
    /// Monic irreducible factors of f, smallest first (each occurs once).
    branch_factors: Vec<Poly>,
}

/// Shared handle; function-field elements keep one so arithmetic needs no
/// extra context argument.
pub type CurveRef = Arc<Curve>;

impl Curve {
    /// Validates and builds the curve y^2 = f(x).
    pub fn new(f: Poly) -> Result<CurveRef> {
        let deg = match f.degree() {
            Some(d @ (3 | 5)) => d,
            Some(d) => {
                return Err(Error::InvalidCurve(format!(
                    "defining polynomial has degree {d}, need 3 or 5"
                )))
            }
            None => return Err(Error::InvalidCurve("defining polynomial is zero".into())),
        };
        if !f.is_squarefree() {
            return Err(Error::InvalidCurve(
                "defining polynomial has a repeated root".into(),
            ));
        }
        let branch_factors = factor(&f).into_iter().map(|(q, _)| q).collect();
        Ok(Arc::new(Curve { genus: (deg - 1) / 2, f, branch_factors }))
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Result<CurveRef> {
        Curve::new(Poly::from_i64_coeffs(coeffs))
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Degree of f, which is 2g + 1.
    pub fn deg_f(&self) -> usize {
        2 * self.genus + 1
    }

    /// Monic irreducible factors of f; the linear ones are the rational
    /// branch x-coordinates, the rest are closed branch loci.
    pub fn branch_factors(&self) -> &[Poly] {
        &self.branch_factors
    }

    /// x-coordinates of the rational affine branch points (where y = 0).
    pub fn rational_branch_points(&self) -> Vec<Rat> {
        self.branch_factors
            .iter()
            .filter(|q| q.deg() == 1)
            .map(|q| -q.coeff(0))
            .collect()
    }

    /// True when (x0, y0) satisfies y0^2 = f(x0).
    pub fn contains(&self, x0: &Rat, y0: &Rat) -> bool {
        &(y0 * y0) == &self.f.eval(x0)
    }

    /// The y-coordinates over x0, when they are rational.
    pub fn fiber_y(&self, x0: &Rat) -> Option<(Rat, Rat)> {
        let v = self.f.eval(x0);
        let r = v.sqrt_exact()?;
        Some((r.clone(), -&r))
    }
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f
    }
}

impl Eq for Curve {}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_cubic() {
        let c = Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap(); // y^2 = x^3 + 1
        assert_eq!(c.genus(), 1);
        assert_eq!(c.deg_f(), 3);
        // x^3 + 1 = (x + 1)(x^2 - x + 1)
        assert_eq!(c.branch_factors().len(), 2);
        assert_eq!(c.rational_branch_points(), vec![Rat::from_int(-1)]);
    }

    #[test]
    fn genus_two_quintic() {
        let c = Curve::from_i64_coeffs(&[1, 0, 0, 0, 0, 1]).unwrap(); // y^2 = x^5 + 1
        assert_eq!(c.genus(), 2);
        assert_eq!(c.rational_branch_points(), vec![Rat::from_int(-1)]);
        assert_eq!(c.branch_factors()[1].deg(), 4);
    }

    #[test]
    fn rejects_bad_degrees_and_squares() {
        assert!(Curve::from_i64_coeffs(&[1, 0, 1]).is_err()); // degree 2
        assert!(Curve::from_i64_coeffs(&[1, 0, 0, 0, 1]).is_err()); // degree 4
        assert!(Curve::from_i64_coeffs(&[0, 1, 2, 1]).is_err()); // x(x+1)^2
    }

    #[test]
    fn point_membership() {
        let c = Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap();
        assert!(c.contains(&Rat::from_int(0), &Rat::from_int(1)));
        assert!(c.contains(&Rat::from_int(2), &Rat::from_int(-3)));
        assert!(!c.contains(&Rat::from_int(1), &Rat::from_int(1)));
        assert_eq!(
            c.fiber_y(&Rat::from_int(2)),
            Some((Rat::from_int(3), Rat::from_int(-3)))
        );
        assert_eq!(c.fiber_y(&Rat::from_int(1)), None); // f(1) = 2 is not a square
    }

    #[test]
    fn non_monic_models_are_accepted() {
        // y^2 = 4x^3 + 1 is squarefree of degree 3
        let c = Curve::from_i64_coeffs(&[1, 0, 0, 4]).unwrap();
        assert_eq!(c.genus(), 1);
        assert!(c.contains(&Rat::from_int(0), &Rat::from_int(1)));
    }
}
