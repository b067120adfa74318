//! Global functions matching prescribed jets at several points, with poles
//! at one place only.
//!
//! Given local coefficient jets α_j at dependence points z_1, ..., z_t, the
//! repair step needs global functions α̃_j that agree with α_j to order d_i
//! at each z_i while keeping all their poles at the basepoint P. They are
//! assembled from the special sections of the bounded-pole spaces:
//!
//! * `f` vanishes simply at every listed point — except at up to `g`
//!   *exceptional* points where the forced extra zeros land and the order
//!   jumps; those points cannot be matched and are reported back;
//! * `g_i` vanishes to order ≥ d = max(d_i) + 1 at every listed point other
//!   than z_i and is nonzero at z_i.
//!
//! For each unexceptional z_i the model `g_i · Q(f·g_i)`, with Q a
//! polynomial of degree ≤ d_i, realizes any jet of order d_i at z_i: the
//! r-th basis summand `g_i (f g_i)^r` vanishes to order exactly r there
//! (f is a simple zero, g_i a unit), so the coefficients of Q come from a
//! triangular solve with unit diagonal. Every summand carries g_i, hence
//! vanishes to order ≥ d > d_j at each other listed point z_j — matching at
//! z_i never disturbs the other points, and the per-point contributions add
//! up to functions with the right jet everywhere.

use crate::error::Result;
use crate::kernel::{CurveRef, FuncElem, Rat};
use crate::places::{jet_at, Place};
use crate::rr::{selector_function, vanishing_function};

use super::local::LocalData;

/// Builds the global correction functions for one repair step.
///
/// `locals` holds the dependence data of every point being repaired (all
/// rational unramified, distinct, none equal to `p`); all entries must carry
/// the same number of coefficient jets. Returns one function per head
/// column, with poles confined to `p`, plus the exceptional points whose
/// jets could not be matched (at most genus many). At each unexceptional
/// `z_i` the function α̃_j has the jet `locals[i].alphas[j]` to order `d_i`;
/// at exceptional points it merely vanishes to order ≥ 1.
pub fn global_interpolants(
    curve: &CurveRef,
    locals: &[LocalData],
    p: &Place,
) -> Result<(Vec<FuncElem>, Vec<Place>)> {
    assert!(!locals.is_empty(), "interpolation needs at least one point");
    let k = locals[0].alphas.len();
    assert!(
        locals.iter().all(|l| l.alphas.len() == k),
        "every point must carry one jet per head column"
    );
    let points: Vec<Place> = locals.iter().map(|l| l.place.clone()).collect();

    let (f, exceptional) = vanishing_function(curve, &points, p)?;
    let depth = locals.iter().map(|l| l.d).max().expect("nonempty") + 1;

    let mut tilde = vec![FuncElem::zero(curve.clone()); k];
    for (i, local) in locals.iter().enumerate() {
        if exceptional.contains(&local.place) {
            continue;
        }
        if local.alphas.iter().all(|a| a.is_zero()) {
            continue;
        }
        let gi = selector_function(curve, &points, i, p, depth)?;
        let w = &f * &gi;
        let order = local.d as usize;
        let jg = jet_at(&gi, &local.place, order)?;
        let jw = jet_at(&w, &local.place, order)?;

        // Jets of the basis summands g_i (f g_i)^r; the r-th has its first
        // nonzero coefficient exactly at t^r.
        let mut basis_jets = Vec::with_capacity(order + 1);
        basis_jets.push(jg.clone());
        for r in 0..order {
            let next = basis_jets[r].mul(&jw);
            basis_jets.push(next);
        }
        for (j, target) in local.alphas.iter().enumerate() {
            if target.is_zero() {
                continue;
            }
            let mut mu: Vec<Rat> = Vec::with_capacity(order + 1);
            for r in 0..=order {
                let mut rhs = target.coeff(r).clone();
                for (s, m) in mu.iter().enumerate().take(r) {
                    rhs = &rhs - &(m * basis_jets[s].coeff(r));
                }
                mu.push(&rhs / basis_jets[r].coeff(r));
            }
            // Horner evaluation of g_i · Q(w) with Q's coefficients μ.
            let mut q = FuncElem::zero(curve.clone());
            for m in mu.iter().rev() {
                q = &(&q * &w) + &FuncElem::constant(curve.clone(), m.clone());
            }
            q = &q * &gi;
            debug_assert_eq!(&jet_at(&q, &local.place, order).expect("finite"), target);
            tilde[j] = &tilde[j] + &q;
        }
    }
    Ok((tilde, exceptional))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse::parse_funcelem;
    use crate::kernel::Curve;
    use crate::places::{divisor_of, ord, Jet};

    fn curve1() -> CurveRef {
        Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap()
    }

    fn pt(curve: &CurveRef, x: i64, y: i64) -> Place {
        Place::affine(curve, Rat::from_int(x), Rat::from_int(y)).unwrap()
    }

    fn jet_of(vals: &[i64]) -> Jet {
        Jet::new(vals.iter().map(|&v| Rat::from_int(v)).collect())
    }

    fn local(place: Place, d: i64, jets: &[&[i64]]) -> LocalData {
        LocalData {
            place,
            d,
            alphas: jets.iter().map(|j| jet_of(j)).collect(),
            kept_rows: vec![],
        }
    }

    /// Poles lie at the basepoint only.
    fn assert_confined(h: &FuncElem, p: &Place) {
        for (place, c) in divisor_of(h).unwrap().iter() {
            assert!(c > 0 || place == p, "unexpected pole at {place}");
        }
    }

    #[test]
    fn single_point_constant_jet_gives_a_constant() {
        let curve = curve1();
        let p = Place::infinity();
        let locals = vec![local(pt(&curve, 0, 1), 1, &[&[1, 0], &[0, 2]])];
        let (tilde, exceptional) = global_interpolants(&curve, &locals, &p).unwrap();
        assert!(exceptional.is_empty());
        assert_eq!(tilde[0], FuncElem::one(curve.clone()));
        assert_eq!(tilde[1], parse_funcelem("2*x", &curve).unwrap());
    }

    #[test]
    fn conjugate_values_reconstruct_y() {
        let curve = curve1();
        let p = Place::infinity();
        // Value 1 at (0,1) and -1 at (0,-1), flat to order 1: the matching
        // function the construction finds is y itself.
        let locals = vec![
            local(pt(&curve, 0, 1), 1, &[&[1, 0]]),
            local(pt(&curve, 0, -1), 1, &[&[-1, 0]]),
        ];
        let (tilde, exceptional) = global_interpolants(&curve, &locals, &p).unwrap();
        assert!(exceptional.is_empty());
        assert_eq!(tilde[0], FuncElem::y(curve.clone()));
    }

    #[test]
    fn matched_jets_hold_at_every_unexceptional_point() {
        let curve = curve1();
        let p = Place::infinity();
        // For {(0,1), (2,3)} the simple-zero function is y - x - 1, whose
        // third zero falls on the branch point, away from the list: both
        // points are matchable.
        let locals = vec![
            local(pt(&curve, 0, 1), 2, &[&[5, 1, 0], &[0, 0, 3]]),
            local(pt(&curve, 2, 3), 1, &[&[-2, 7], &[1, 0]]),
        ];
        let (tilde, exceptional) = global_interpolants(&curve, &locals, &p).unwrap();
        assert!(exceptional.is_empty());
        for l in &locals {
            for (j, want) in l.alphas.iter().enumerate() {
                let got = jet_at(&tilde[j], &l.place, l.d as usize).unwrap();
                assert_eq!(&got, want);
            }
        }
        for t in &tilde {
            assert_confined(t, &p);
        }
    }

    #[test]
    fn forced_extra_zeros_mark_the_point_exceptional() {
        let curve = curve1();
        let p = Place::infinity();
        // The only simple-zero candidate for {(0,-1), (2,3)} is y - 2x + 1,
        // whose divisor is (0,-1) + 2(2,3) - 3∞: the tangency at (2,3) is
        // forced, so that point cannot be matched and is reported.
        let locals = vec![
            local(pt(&curve, 0, -1), 1, &[&[3, 0]]),
            local(pt(&curve, 2, 3), 1, &[&[1, 1]]),
        ];
        let (tilde, exceptional) = global_interpolants(&curve, &locals, &p).unwrap();
        assert_eq!(exceptional, vec![pt(&curve, 2, 3)]);
        // The reachable point is still matched exactly ...
        let got = jet_at(&tilde[0], &pt(&curve, 0, -1), 1).unwrap();
        assert_eq!(got, jet_of(&[3, 0]));
        // ... and the function still vanishes at the exceptional point,
        // with poles only at the basepoint.
        assert!(ord(&tilde[0], &pt(&curve, 2, 3)).unwrap() >= 1);
        assert_confined(&tilde[0], &p);
    }

    #[test]
    fn zero_jets_produce_the_zero_function() {
        let curve = curve1();
        let p = Place::infinity();
        let locals = vec![
            local(pt(&curve, 0, 1), 1, &[&[0, 0]]),
            local(pt(&curve, 2, 3), 2, &[&[0, 0, 0]]),
        ];
        let (tilde, exceptional) = global_interpolants(&curve, &locals, &p).unwrap();
        assert!(exceptional.is_empty());
        assert!(tilde[0].is_zero());
    }

    #[test]
    fn affine_basepoints_work_too() {
        let curve = curve1();
        let p = pt(&curve, 2, 3);
        let locals = vec![local(pt(&curve, 0, 1), 1, &[&[4, -1]])];
        let (tilde, exceptional) = global_interpolants(&curve, &locals, &p).unwrap();
        assert!(exceptional.is_empty());
        let got = jet_at(&tilde[0], &pt(&curve, 0, 1), 1).unwrap();
        assert_eq!(got, Jet::new(vec![Rat::from_int(4), Rat::from_int(-1)]));
        assert_confined(&tilde[0], &p);
    }
}
