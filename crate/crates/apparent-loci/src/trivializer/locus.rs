//! Dependence loci: where a set of columns stops having full rank.
//!
//! A prefix of `k` columns (each a height-`p` vector of sections) is
//! *dependent* at a place when every entry is finite there and all `k × k`
//! row minors vanish. The dependence order at such a place is the minimum
//! vanishing order over the nonzero minors; it is the budget the repair step
//! has to pay to restore independence, and the order to which local
//! coefficient jets must be matched.
//!
//! Candidates come from the zeros of a single nonzero minor (dependence
//! forces every minor to vanish, so any one minor's zero set covers the
//! locus). Rational points, ramified sites and infinity have exact orders.
//! At an unramified closed site the orders are exact when every minor is
//! uniform across the fiber; if some minor splits the fiber unevenly, the
//! recorded totals cannot separate the two conjugate points, and the site is
//! reported as a lumped entry whose order is the minimum norm total — a
//! conservative record that downstream consumers treat as non-rational.
//! Similarly, a site where some entry's poles split a fiber unevenly cannot
//! be certified entry-finite on one conjugate alone, so it is excluded from
//! the reported locus (it still shows in the pole divisor).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::{CurveRef, FuncElem, Poly, RatFunc};
use crate::places::{divisor_of, is_uniform_at, ord, ClosedKind, Divisor, Place};

use super::frame::{minor_det, Frame};

/// Every place where the columns are simultaneously finite and dependent,
/// with the dependence order, sorted by place.
///
/// `cols` is a `p × k` column-major matrix with `1 ≤ k ≤ p`. Errors with
/// [`Error::SingularFrame`] when all spanning minors vanish identically
/// (the columns are dependent as vectors over the function field).
pub fn prefix_dependence(cols: &[Vec<FuncElem>]) -> Result<Vec<(Place, i64)>> {
    let k = cols.len();
    assert!(k >= 1, "prefix needs at least one column");
    let p = cols[0].len();
    assert!(k <= p, "more columns than rows in a prefix");
    let curve = first_curve(cols);

    let minors: Vec<FuncElem> = row_subsets(p, k)
        .iter()
        .map(|rows| minor_det(cols, rows, &curve))
        .filter(|m| !m.is_zero())
        .collect();
    if minors.is_empty() {
        return Err(Error::SingularFrame);
    }

    // Sites where some entry fails to be finite: exact pole places, plus
    // whole fibers where a pole is recorded without a per-point split.
    let mut pole_places: BTreeSet<Place> = BTreeSet::new();
    let mut pole_fibers: BTreeSet<Poly> = BTreeSet::new();
    for col in cols {
        for e in col {
            if e.is_zero() {
                continue;
            }
            for (place, c) in divisor_of(e)?.iter() {
                if c >= 0 {
                    continue;
                }
                match place {
                    Place::Closed { minpoly, kind } if *kind != ClosedKind::Ramified => {
                        pole_fibers.insert(minpoly.clone());
                    }
                    _ => {
                        pole_places.insert(place.clone());
                    }
                }
            }
        }
    }

    let mut out: Vec<(Place, i64)> = Vec::new();
    let mut seen_fibers: BTreeSet<Poly> = BTreeSet::new();
    for (place, c) in divisor_of(&minors[0])?.iter() {
        if c <= 0 {
            continue;
        }
        match place {
            Place::Closed { minpoly, kind } if *kind != ClosedKind::Ramified => {
                if !seen_fibers.insert(minpoly.clone()) || pole_fibers.contains(minpoly) {
                    continue;
                }
                if let Some(entry) = fiber_dependence(&minors, minpoly, &curve)? {
                    out.push(entry);
                }
            }
            _ => {
                if pole_places.contains(place) {
                    continue;
                }
                let mut d = i64::MAX;
                for m in &minors {
                    d = d.min(ord(m, place)?);
                    if d <= 0 {
                        break;
                    }
                }
                if d >= 1 {
                    out.push((place.clone(), d));
                }
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.cmp(b));
    Ok(out)
}

/// Dependence record over the unramified closed site q, if any.
///
/// With every minor uniform across the fiber the per-point order is exact
/// and the site enters as its canonical place. Otherwise the totals cannot
/// separate the conjugates; the site is reported lumped whenever every
/// minor's norm vanishes along q (a necessary condition for a shared zero),
/// with the minimum norm total as its order.
fn fiber_dependence(
    minors: &[FuncElem],
    q: &Poly,
    curve: &CurveRef,
) -> Result<Option<(Place, i64)>> {
    if minors.iter().all(|m| is_uniform_at(m, q)) {
        let place = Place::closed(curve, q.clone())?;
        let mut d = i64::MAX;
        for m in minors {
            d = d.min(ord(m, &place)?);
        }
        return Ok(if d >= 1 { Some((place, d)) } else { None });
    }
    let mut t = i64::MAX;
    for m in minors {
        t = t.min(ratfunc_order_along(&m.norm(), q));
    }
    if t >= 1 {
        let place = Place::Closed { minpoly: q.clone(), kind: ClosedKind::Lumped };
        Ok(Some((place, t)))
    } else {
        Ok(None)
    }
}

fn ratfunc_order_along(r: &RatFunc, q: &Poly) -> i64 {
    r.num().multiplicity_of(q) as i64 - r.den().multiplicity_of(q) as i64
}

/// Pole places and dependence locus of a full frame.
///
/// The first component is the coefficient-wise supremum of the entry pole
/// divisors (every place where some entry has a pole, at the deepest order);
/// the second is [`prefix_dependence`] of all columns: the places where the
/// frame, though entry-finite, fails to be a basis, with the vanishing order
/// of its determinant.
pub fn dependence_locus(frame: &Frame) -> Result<(Divisor, Vec<(Place, i64)>)> {
    let mut poles = Divisor::zero(frame.curve().clone());
    for col in frame.columns() {
        for e in col {
            if e.is_zero() {
                continue;
            }
            poles = poles.sup(&divisor_of(e)?.poles_part());
        }
    }
    let dep = prefix_dependence(frame.columns())?;
    Ok((poles, dep))
}

fn first_curve(cols: &[Vec<FuncElem>]) -> CurveRef {
    cols.iter()
        .flat_map(|c| c.iter())
        .next()
        .expect("prefix has at least one entry")
        .curve()
        .clone()
}

/// All size-`k` subsets of `0..p` in lexicographic order.
pub(crate) fn row_subsets(p: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > p {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance the rightmost index that still has room to move; indices
        // to its right restart in increasing order just above it.
        let Some(i) = (0..k).rev().find(|&i| cur[i] + (k - i) < p) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse::{parse_funcelem, parse_poly};
    use crate::kernel::{Curve, Rat};

    fn curve1() -> CurveRef {
        Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap()
    }

    fn fe(curve: &CurveRef, s: &str) -> FuncElem {
        parse_funcelem(s, curve).unwrap()
    }

    fn pt(curve: &CurveRef, x: i64, y: i64) -> Place {
        Place::affine(curve, Rat::from_int(x), Rat::from_int(y)).unwrap()
    }

    #[test]
    fn subsets_enumerate_in_lexicographic_order() {
        assert_eq!(row_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(row_subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(row_subsets(2, 1), vec![vec![0], vec![1]]);
    }

    #[test]
    fn diagonal_frame_locus_matches_the_determinant_zeros() {
        let curve = curve1();
        let frame = Frame::new(
            curve.clone(),
            vec![
                vec![fe(&curve, "1"), fe(&curve, "0")],
                vec![fe(&curve, "0"), fe(&curve, "x")],
            ],
        )
        .unwrap();
        let (poles, dep) = dependence_locus(&frame).unwrap();
        assert_eq!(poles.coeff(&Place::infinity()), 2);
        assert_eq!(poles.degree(), 2);
        assert_eq!(dep, vec![(pt(&curve, 0, -1), 1), (pt(&curve, 0, 1), 1)]);
    }

    #[test]
    fn identity_frame_has_empty_locus() {
        let curve = curve1();
        let frame = Frame::identity(curve, 3);
        let (poles, dep) = dependence_locus(&frame).unwrap();
        assert!(poles.is_zero());
        assert!(dep.is_empty());
    }

    #[test]
    fn dependence_points_under_poles_are_not_reported() {
        let curve = curve1();
        // det = x(x - 2), but the second column's pole at (2, ±3) removes
        // those zeros from the locus: the frame is not finite there.
        let frame = Frame::new(
            curve.clone(),
            vec![
                vec![fe(&curve, "x"), fe(&curve, "0")],
                vec![fe(&curve, "1/(x - 2)"), fe(&curve, "(x - 2)^2")],
            ],
        )
        .unwrap();
        let (poles, dep) = dependence_locus(&frame).unwrap();
        assert_eq!(poles.coeff(&pt(&curve, 2, 3)), 1);
        assert_eq!(poles.coeff(&pt(&curve, 2, -3)), 1);
        let places: Vec<&Place> = dep.iter().map(|(z, _)| z).collect();
        assert!(places.contains(&&pt(&curve, 0, 1)));
        assert!(!places.contains(&&pt(&curve, 2, 3)));
    }

    #[test]
    fn off_diagonal_cancellation_raises_the_order() {
        let curve = curve1();
        // det = x^2 - x*y + ... : columns engineered so the determinant is
        // x^2 - x = x(x - 1); x = 1 is not on a rational point, so only the
        // points over x = 0 appear, each at order 1.
        let frame = Frame::new(
            curve.clone(),
            vec![
                vec![fe(&curve, "1"), fe(&curve, "1")],
                vec![fe(&curve, "x"), fe(&curve, "x^2")],
            ],
        )
        .unwrap();
        let det = frame.det();
        assert_eq!(det, fe(&curve, "x^2 - x"));
        let dep = prefix_dependence(frame.columns()).unwrap();
        assert_eq!(dep.len(), 3);
        assert_eq!(dep[0], (pt(&curve, 0, -1), 1));
        assert_eq!(dep[1], (pt(&curve, 0, 1), 1));
        match &dep[2] {
            (Place::Closed { minpoly, kind: ClosedKind::Fiber }, 1) => {
                assert_eq!(*minpoly, parse_poly("x - 1").unwrap());
            }
            other => panic!("expected the fiber over x = 1, got {other:?}"),
        }
    }

    #[test]
    fn single_column_dependence_is_its_common_zero_set() {
        let curve = curve1();
        let cols = vec![vec![fe(&curve, "x"), fe(&curve, "x*(x - 2)")]];
        let dep = prefix_dependence(&cols).unwrap();
        assert_eq!(dep, vec![(pt(&curve, 0, -1), 1), (pt(&curve, 0, 1), 1)]);
    }

    #[test]
    fn higher_order_dependence_is_measured_exactly() {
        let curve = curve1();
        let cols = vec![vec![fe(&curve, "x^2"), fe(&curve, "x^3")]];
        let dep = prefix_dependence(&cols).unwrap();
        assert_eq!(dep, vec![(pt(&curve, 0, -1), 2), (pt(&curve, 0, 1), 2)]);
    }

    #[test]
    fn identically_dependent_columns_are_rejected() {
        let curve = curve1();
        let cols = vec![
            vec![fe(&curve, "1"), fe(&curve, "y")],
            vec![fe(&curve, "x"), fe(&curve, "x*y")],
        ];
        assert_eq!(prefix_dependence(&cols), Err(Error::SingularFrame));
    }

    #[test]
    fn closed_uniform_dependence_is_reported_on_the_fiber() {
        let curve = curve1();
        // x^2 + 1 is irreducible over Q, so its four geometric zeros enter
        // as one uniform fiber record of total degree 4.
        let cols = vec![vec![fe(&curve, "x^2 + 1"), fe(&curve, "(x^2 + 1)*x")]];
        let dep = prefix_dependence(&cols).unwrap();
        assert_eq!(dep.len(), 1);
        let (place, d) = &dep[0];
        assert_eq!(*d, 1);
        assert_eq!(place.degree(), 4);
        assert!(matches!(place, Place::Closed { kind: ClosedKind::Fiber, .. }));
    }

    #[test]
    fn uneven_fiber_dependence_is_reported_lumped() {
        let curve = curve1();
        // y - 3 vanishes on one conjugate point over x^2 + 2x + 4 only; the
        // site cannot be separated over Q and is reported as a lump.
        let cols = vec![vec![fe(&curve, "y - 3"), fe(&curve, "(y - 3)*x")]];
        let dep = prefix_dependence(&cols).unwrap();
        let lumped: Vec<_> = dep
            .iter()
            .filter(|(z, _)| matches!(z, Place::Closed { kind: ClosedKind::Lumped, .. }))
            .collect();
        assert_eq!(lumped.len(), 1);
        assert_eq!(lumped[0].1, 1);
        // The rational zero at (2, 3) is still exact.
        assert!(dep.contains(&(pt(&curve, 2, 3), 1)));
    }
}
