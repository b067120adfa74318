//! Power-series jets at rational unramified points.
//!
//! A jet is the truncation c_0 + c_1 t + ... + c_m t^m of an element in the
//! local parameter t = x - x0. Jets exist only where that parameter works
//! and the coefficients live in Q: rational affine points off the branch
//! locus. Everywhere else (closed sites, branch points, infinity) requests
//! fail with the locus error that callers translate into "this dependence
//! point cannot be described over Q with x-jets".

use crate::error::{Error, Result};
use crate::kernel::{FuncElem, Rat};

use super::place::Place;
use super::series::laurent_funcelem_at;

/// Coefficients c_0 ..= c_m of an element regular at the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    coeffs: Vec<Rat>,
}

impl Jet {
    pub fn new(coeffs: Vec<Rat>) -> Jet {
        assert!(!coeffs.is_empty(), "a jet has at least its constant term");
        Jet { coeffs }
    }

    pub fn zero(order: usize) -> Jet {
        Jet { coeffs: vec![Rat::zero(); order + 1] }
    }

    /// The truncation order m (the jet has m + 1 coefficients).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Number of leading zero coefficients; equals the order of vanishing
    /// when that is visible within the truncation.
    pub fn leading_zeros(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "jet order mismatch");
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn truncated(&self, order: usize) -> Jet {
        assert!(order < self.coeffs.len(), "cannot extend a jet");
        Jet { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Truncated product; both jets must have the same order.
    pub fn mul(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "jet order mismatch");
        let n = self.coeffs.len();
        let mut coeffs = vec![Rat::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        Jet { coeffs }
    }
}

/// The jet of `h` at `place` to order `order` (inclusive).
///
/// The place must be a rational unramified affine point and `h` must be
/// regular there.
pub fn jet_at(h: &FuncElem, place: &Place, order: usize) -> Result<Jet> {
    let Place::Affine { x, y } = place else {
        return Err(Error::IrrationalLocus {
            place: place.to_string(),
            context: "jets need a rational point with local parameter x - x0".into(),
        });
    };
    if y.is_zero() {
        return Err(Error::IrrationalLocus {
            place: place.to_string(),
            context: "jets are unavailable at branch points, where y is the parameter".into(),
        });
    }
    if h.is_zero() {
        return Ok(Jet::zero(order));
    }
    let (v, unit) = laurent_funcelem_at(h, x, y, order + 1)?;
    if v < 0 {
        return Err(Error::PoleAtPlace { place: place.to_string() });
    }
    let v = v as usize;
    let mut coeffs = vec![Rat::zero(); order + 1];
    for i in v..=order {
        coeffs[i] = unit.coeff(i - v).clone();
    }
    Ok(Jet { coeffs })
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::kernel::curve::Curve;
    use crate::kernel::{CurveRef, Poly, RatFunc};
    use crate::places::ord;

    fn cubic() -> CurveRef {
        Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap()
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-3i64..4, 0..4).prop_map(|c| Poly::from_i64_coeffs(&c))
    }

    prop_compose! {
        /// Elements with polynomial coordinates: finite at every affine place.
        fn poly_elem()(a in small_poly(), b in small_poly()) -> FuncElem {
            FuncElem::new(cubic(), RatFunc::from_poly(a), RatFunc::from_poly(b))
        }
    }

    fn point_pool(c: &CurveRef) -> Vec<Place> {
        vec![
            Place::affine(c, Rat::from_int(0), Rat::from_int(1)).unwrap(),
            Place::affine(c, Rat::from_int(0), Rat::from_int(-1)).unwrap(),
            Place::affine(c, Rat::from_int(2), Rat::from_int(3)).unwrap(),
            Place::affine(c, Rat::from_int(2), Rat::from_int(-3)).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn jets_of_products_are_truncated_products(
            u in poly_elem(), v in poly_elem(), i in 0usize..4, n in 0usize..4
        ) {
            let c = cubic();
            let p = &point_pool(&c)[i];
            let ju = jet_at(&u, p, n).unwrap();
            let jv = jet_at(&v, p, n).unwrap();
            let juv = jet_at(&(&u * &v), p, n).unwrap();
            for k in 0..=n {
                let mut want = Rat::zero();
                for a in 0..=k {
                    want = &want + &(ju.coeff(a) * jv.coeff(k - a));
                }
                prop_assert_eq!(juv.coeff(k), &want);
            }
            prop_assert_eq!(&ju.mul(&jv), &juv);
        }

        #[test]
        fn order_is_the_first_nonzero_jet_coefficient(u in poly_elem(), i in 0usize..4) {
            prop_assume!(!u.is_zero());
            let c = cubic();
            let p = &point_pool(&c)[i];
            let o = ord(&u, p).unwrap();
            prop_assert!(o >= 0, "polynomial coordinates cannot have affine poles");
            let jet = jet_at(&u, p, o as usize + 1).unwrap();
            prop_assert_eq!(jet.leading_zeros(), o as usize);
        }
    }
}
