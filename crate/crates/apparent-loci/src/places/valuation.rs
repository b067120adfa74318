//! Orders of vanishing and principal divisors.
//!
//! The order of a + b*y at each place kind reduces to polynomial
//! multiplicities except at rational unramified points, where the two parts
//! can cancel and a series expansion is needed:
//!
//! * infinity: x has a double pole and y a pole of order 2g + 1, so the
//!   order is min(-2 deg a, -2 deg b - (2g+1)), never an actual min-tie
//!   because the parities differ;
//! * ramified sites (y = 0): y is the local parameter and x - x0 (or q(x))
//!   has order 2, giving min(2 ord a, 2 ord b + 1), again parity-split;
//! * unramified closed sites: the fiber minimum is min(ord a, ord b)
//!   exactly, because 1 and y stay independent in the residue field;
//! * rational unramified points: series expansion, with the norm bounding
//!   how far cancellation can go.

use crate::error::{Error, Result};
use crate::kernel::{CurveRef, FuncElem, Poly, Rat, RatFunc};

use super::divisor::Divisor;
use super::place::{ClosedKind, Place};
use super::series::laurent_funcelem_at;

/// Order of a rational function along the irreducible polynomial q.
fn ord_ratfunc_at_poly(r: &RatFunc, q: &Poly) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(r.num().multiplicity_of(q) as i64 - r.den().multiplicity_of(q) as i64)
}

/// Order at infinity of a rational function in x, in places of the curve
/// (the point at infinity has ramification index 2 over x = inf).
fn ord_ratfunc_at_inf(r: &RatFunc) -> Option<i64> {
    Some(-2 * r.degree_diff()?)
}

/// Order of vanishing of `h` at `place`. Zero elements have no order.
///
/// At a `Fiber` site the result is the minimum over the places of the fiber,
/// which equals the common value exactly when `h` is uniform there. At a
/// `Lumped` site the result is the order of the norm along q, the quantity
/// the lump coefficient records.
pub fn ord(h: &FuncElem, place: &Place) -> Result<i64> {
    if h.is_zero() {
        return Err(Error::ZeroElement("order of vanishing"));
    }
    let genus = h.curve().genus() as i64;
    match place {
        Place::Infinity => {
            let va = ord_ratfunc_at_inf(h.a());
            let vb = ord_ratfunc_at_inf(h.b()).map(|v| v - (2 * genus + 1));
            Ok(match (va, vb) {
                (Some(x), Some(y)) => x.min(y),
                (Some(x), None) => x,
                (None, Some(y)) => y,
                (None, None) => unreachable!("nonzero element with two zero parts"),
            })
        }
        Place::Affine { x, y } if y.is_zero() => {
            let q = Poly::x_minus(x);
            Ok(ramified_order(h, &q))
        }
        Place::Affine { x, y } => {
            let (v, _) = laurent_funcelem_at(h, x, y, 0)?;
            Ok(v)
        }
        Place::Closed { minpoly, kind: ClosedKind::Ramified } => {
            Ok(ramified_order(h, minpoly))
        }
        Place::Closed { minpoly, kind: ClosedKind::Fiber } => {
            let va = ord_ratfunc_at_poly(h.a(), minpoly);
            let vb = ord_ratfunc_at_poly(h.b(), minpoly);
            Ok(match (va, vb) {
                (Some(x), Some(y)) => x.min(y),
                (Some(x), None) => x,
                (None, Some(y)) => y,
                (None, None) => unreachable!("nonzero element with two zero parts"),
            })
        }
        Place::Closed { minpoly, kind: ClosedKind::Lumped } => {
            Ok(ord_ratfunc_at_poly(&h.norm(), minpoly)
                .expect("nonzero element has nonzero norm"))
        }
    }
}

/// min(2 ord a, 2 ord b + 1) along q, where y is the local parameter.
fn ramified_order(h: &FuncElem, q: &Poly) -> i64 {
    let va = ord_ratfunc_at_poly(h.a(), q).map(|v| 2 * v);
    let vb = ord_ratfunc_at_poly(h.b(), q).map(|v| 2 * v + 1);
    match (va, vb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => unreachable!("nonzero element with two zero parts"),
    }
}

/// True when the order of `h` is the same at every place of the fiber over
/// the unramified irreducible q: the norm has order exactly twice the
/// coordinate minimum.
pub fn is_uniform_at(h: &FuncElem, q: &Poly) -> bool {
    let va = ord_ratfunc_at_poly(h.a(), q);
    let vb = ord_ratfunc_at_poly(h.b(), q);
    let m = match (va, vb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => return true,
    };
    let vn = ord_ratfunc_at_poly(&h.norm(), q).unwrap();
    vn == 2 * m
}

/// The principal divisor of a nonzero element: orders at every place where
/// something happens, including infinity. The total degree is always zero;
/// split fibers that cannot be separated over Q enter as lumped entries
/// carrying the order of the norm.
pub fn divisor_of(h: &FuncElem) -> Result<Divisor> {
    if h.is_zero() {
        return Err(Error::ZeroElement("principal divisor"));
    }
    let curve = h.curve().clone();
    let mut d = Divisor::zero(curve.clone());

    for q in candidate_sites(h) {
        site_entries(h, &curve, &q, &mut d)?;
    }

    let v_inf = ord(h, &Place::Infinity)?;
    d.add_entry(Place::Infinity, v_inf);

    debug_assert_eq!(d.degree(), 0, "principal divisor of nonzero degree");
    Ok(d)
}

/// Distinct monic irreducible x-loci that can carry a zero or pole of h:
/// factors of the norm's numerator and denominator and of the coordinate
/// denominators (the latter catch fibers where a zero and a pole cancel in
/// the norm).
fn candidate_sites(h: &FuncElem) -> Vec<Poly> {
    use crate::kernel::factor::factor;
    let norm = h.norm();
    let mut sites: Vec<Poly> = Vec::new();
    let mut push_factors = |p: &Poly| {
        if p.is_zero() || p.is_constant() {
            return;
        }
        for (q, _) in factor(p) {
            if !sites.contains(&q) {
                sites.push(q);
            }
        }
    };
    push_factors(norm.num());
    push_factors(norm.den());
    push_factors(h.a().den());
    push_factors(h.b().den());
    sites.sort();
    sites
}

/// Appends the divisor entries of h over the x-locus q.
fn site_entries(h: &FuncElem, curve: &CurveRef, q: &Poly, d: &mut Divisor) -> Result<()> {
    let ramified = curve.f().multiplicity_of(q) > 0;
    if ramified {
        let v = ramified_order(h, q);
        if v != 0 {
            let place = if q.deg() == 1 {
                Place::Affine { x: -q.coeff(0), y: Rat::zero() }
            } else {
                Place::closed_with_kind(q.clone(), ClosedKind::Ramified)
            };
            d.add_entry(place, v);
        }
        return Ok(());
    }
    if q.deg() == 1 {
        let x0 = -q.coeff(0);
        let fx = curve.f().eval(&x0);
        if let Some(y0) = fx.sqrt_exact() {
            // split rational fiber: the two points can have different orders
            for yy in [y0.clone(), -&y0] {
                let place = Place::Affine { x: x0.clone(), y: yy.clone() };
                let v = ord(h, &place)?;
                d.add_entry(place, v);
            }
            return Ok(());
        }
        // inert linear site: always uniform
        let v = ord(
            h,
            &Place::closed_with_kind(q.clone(), ClosedKind::Fiber),
        )?;
        d.add_entry(
            Place::closed_with_kind(q.clone(), ClosedKind::Fiber),
            v,
        );
        return Ok(());
    }
    if is_uniform_at(h, q) {
        let place = Place::closed_with_kind(q.clone(), ClosedKind::Fiber);
        let v = ord(h, &place)?;
        d.add_entry(place, v);
    } else {
        let place = Place::closed_with_kind(q.clone(), ClosedKind::Lumped);
        let v = ord(h, &place)?;
        d.add_entry(place, v);
    }
    Ok(())
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::kernel::curve::Curve;
    use crate::kernel::{CurveRef, FuncElem, RatFunc};

    fn cubic() -> CurveRef {
        Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap()
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-3i64..4, 0..4).prop_map(|c| Poly::from_i64_coeffs(&c))
    }

    fn small_denominator() -> impl Strategy<Value = Poly> {
        small_poly().prop_map(|p| if p.is_zero() { Poly::one() } else { p })
    }

    prop_compose! {
        fn elem()(na in small_poly(), da in small_denominator(),
                  nb in small_poly(), db in small_denominator()) -> FuncElem {
            FuncElem::new(cubic(), RatFunc::new(na, da), RatFunc::new(nb, db))
        }
    }

    /// Rational points, the branch point, infinity, a ramified closed site,
    /// and an inert fiber — every place flavor with a well-defined order.
    fn place_pool(c: &CurveRef) -> Vec<Place> {
        vec![
            Place::Infinity,
            Place::affine(c, Rat::from_int(0), Rat::from_int(1)).unwrap(),
            Place::affine(c, Rat::from_int(2), Rat::from_int(-3)).unwrap(),
            Place::affine(c, Rat::from_int(-1), Rat::from_int(0)).unwrap(),
            Place::closed(c, Poly::from_i64_coeffs(&[1, -1, 1])).unwrap(),
            Place::closed(c, Poly::from_i64_coeffs(&[1, 0, 1])).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn principal_divisors_close_to_degree_zero(u in elem()) {
            prop_assume!(!u.is_zero());
            prop_assert_eq!(divisor_of(&u).unwrap().degree(), 0);
        }

        #[test]
        fn orders_add_under_products(u in elem(), v in elem(), i in 0usize..6) {
            prop_assume!(!u.is_zero() && !v.is_zero());
            let c = cubic();
            let p = &place_pool(&c)[i];
            prop_assert_eq!(
                ord(&(&u * &v), p).unwrap(),
                ord(&u, p).unwrap() + ord(&v, p).unwrap()
            );
        }
    }
}
