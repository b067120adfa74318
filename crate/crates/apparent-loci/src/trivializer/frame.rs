//! Square frames of function-field sections and their matrix algebra.
//!
//! A [`Frame`] is a square matrix of [`FuncElem`] entries, stored column
//! major: each column is one section of the trivial rank-`p` bundle, and the
//! frame is a basis of the function-field vector space exactly when its
//! determinant is not identically zero. Construction enforces that, so every
//! `Frame` in circulation is invertible over the function field (its
//! determinant may still vanish at finitely many places — those are the
//! dependence points the rest of this module family hunts down).
//!
//! Alongside the type live the small pieces of exact matrix algebra the
//! normalization pipeline needs: cofactor determinants of row submatrices,
//! matrix products, and the entrywise floor divisor of a column. Everything
//! is exact arithmetic over Q; sizes in practice are tiny (p ≤ 3), so the
//! O(k!) cofactor expansion is the simplest correct choice.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::kernel::{CurveRef, FuncElem, Poly};
use crate::places::{divisor_of, ClosedKind, Divisor, Place};

/// An invertible square matrix of function-field elements, column major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    curve: CurveRef,
    /// `cols[c][r]` is the entry in row `r` of column `c`.
    cols: Vec<Vec<FuncElem>>,
}

impl Frame {
    /// Builds a frame from columns, checking shape and invertibility.
    ///
    /// Errors with [`Error::SingularFrame`] when the determinant vanishes
    /// identically, [`Error::InvalidCurve`] when the shape is not square or
    /// the columns are empty, and [`Error::CurveMismatch`] when entries live
    /// on different curves.
    pub fn new(curve: CurveRef, cols: Vec<Vec<FuncElem>>) -> Result<Frame> {
        let p = cols.len();
        if p == 0 {
            return Err(Error::InvalidCurve("a frame needs at least one column".into()));
        }
        for col in &cols {
            if col.len() != p {
                return Err(Error::InvalidCurve(format!(
                    "frame is not square: {} columns but a column of {} rows",
                    p,
                    col.len()
                )));
            }
            for e in col {
                if e.curve() != &curve {
                    return Err(Error::CurveMismatch);
                }
            }
        }
        let frame = Frame { curve, cols };
        if frame.det().is_zero() {
            return Err(Error::SingularFrame);
        }
        Ok(frame)
    }

    /// Wraps columns that are already known to form an invertible square
    /// matrix (products of invertible factors, verified intermediates).
    pub(crate) fn from_columns_unchecked(curve: CurveRef, cols: Vec<Vec<FuncElem>>) -> Frame {
        Frame { curve, cols }
    }

    /// The identity frame of rank `p`.
    pub fn identity(curve: CurveRef, p: usize) -> Frame {
        let cols = (0..p)
            .map(|c| {
                (0..p)
                    .map(|r| {
                        if r == c {
                            FuncElem::one(curve.clone())
                        } else {
                            FuncElem::zero(curve.clone())
                        }
                    })
                    .collect()
            })
            .collect();
        Frame { curve, cols }
    }

    /// Rank of the frame (number of rows = number of columns).
    pub fn p(&self) -> usize {
        self.cols.len()
    }

    pub fn curve(&self) -> &CurveRef {
        &self.curve
    }

    /// The `i`-th column as a slice of row entries.
    pub fn column(&self, i: usize) -> &[FuncElem] {
        &self.cols[i]
    }

    /// All columns, column major.
    pub fn columns(&self) -> &[Vec<FuncElem>] {
        &self.cols
    }

    /// Entry in row `r`, column `c`.
    pub fn entry(&self, r: usize, c: usize) -> &FuncElem {
        &self.cols[c][r]
    }

    /// Determinant by cofactor expansion.
    pub fn det(&self) -> FuncElem {
        let rows: Vec<usize> = (0..self.p()).collect();
        minor_det(&self.cols, &rows, &self.curve)
    }

    /// Matrix product `self * rhs` (so columns of the result are `self`
    /// applied to the columns of `rhs`).
    pub fn mul(&self, rhs: &Frame) -> Result<Frame> {
        if self.curve != rhs.curve {
            return Err(Error::CurveMismatch);
        }
        if self.p() != rhs.p() {
            return Err(Error::InvalidCurve(format!(
                "rank mismatch in frame product: {} vs {}",
                self.p(),
                rhs.p()
            )));
        }
        Ok(Frame {
            curve: self.curve.clone(),
            cols: mat_mul(&self.cols, &rhs.cols, &self.curve),
        })
    }

    /// The inverse frame, by Gauss–Jordan elimination over the function
    /// field. Always succeeds on a validly constructed frame; a singular
    /// column set smuggled in through other channels is still caught.
    pub fn inverse(&self) -> Result<Frame> {
        let p = self.p();
        let zero = FuncElem::zero(self.curve.clone());
        let one = FuncElem::one(self.curve.clone());
        // Augmented rows [self | identity], row-major for the elimination.
        let mut aug: Vec<Vec<FuncElem>> = (0..p)
            .map(|r| {
                let mut row: Vec<FuncElem> =
                    (0..p).map(|c| self.cols[c][r].clone()).collect();
                row.extend((0..p).map(|c| if c == r { one.clone() } else { zero.clone() }));
                row
            })
            .collect();
        for col in 0..p {
            let pivot = (col..p)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(Error::SingularFrame)?;
            aug.swap(col, pivot);
            let inv = &one / &aug[col][col].clone();
            for e in &mut aug[col] {
                *e = &*e * &inv;
            }
            for r in 0..p {
                if r == col || aug[r][col].is_zero() {
                    continue;
                }
                let factor = aug[r][col].clone();
                for c in 0..2 * p {
                    let d = &factor * &aug[col][c];
                    aug[r][c] = &aug[r][c] - &d;
                }
            }
        }
        let cols: Vec<Vec<FuncElem>> = (0..p)
            .map(|c| (0..p).map(|r| aug[r][p + c].clone()).collect())
            .collect();
        Ok(Frame { curve: self.curve.clone(), cols })
    }
}

/// Determinant of the square submatrix `cols` restricted to `rows`.
///
/// `rows.len()` must equal `cols.len()`; entries outside `rows` are ignored.
/// Expansion is along the first column, skipping zero entries.
pub(crate) fn minor_det(cols: &[Vec<FuncElem>], rows: &[usize], curve: &CurveRef) -> FuncElem {
    debug_assert_eq!(cols.len(), rows.len());
    if rows.is_empty() {
        return FuncElem::one(curve.clone());
    }
    if rows.len() == 1 {
        return cols[0][rows[0]].clone();
    }
    let mut acc = FuncElem::zero(curve.clone());
    for (i, &r) in rows.iter().enumerate() {
        let pivot = &cols[0][r];
        if pivot.is_zero() {
            continue;
        }
        let sub_rows: Vec<usize> =
            rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s).collect();
        let sub = minor_det(&cols[1..], &sub_rows, curve);
        let term = pivot * &sub;
        acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Matrix product of two column-major matrices over the same curve.
pub(crate) fn mat_mul(
    a: &[Vec<FuncElem>],
    b: &[Vec<FuncElem>],
    curve: &CurveRef,
) -> Vec<Vec<FuncElem>> {
    let p = a.len();
    (0..b.len())
        .map(|c| {
            (0..p)
                .map(|r| {
                    let mut acc = FuncElem::zero(curve.clone());
                    for k in 0..p {
                        if a[k][r].is_zero() || b[c][k].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&a[k][r] * &b[c][k]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// The entrywise floor divisor of a column of sections.
///
/// This is the largest divisor `D` with `div(entry) ≥ D` for every nonzero
/// entry — equivalently the fiberwise minimum of the entry divisors, with
/// places absent from an entry's divisor counting as order zero. Scaling the
/// column by some `c` multiplies this floor by `div(c)`, which is what the
/// pole-moving step exploits.
///
/// For closed sites whose zeros split unevenly between the two conjugate
/// points (non-uniform records), a pointwise minimum is not determined by the
/// recorded totals. The cases that do resolve are handled exactly:
/// non-uniform zero totals floor at zero against any entry with no zero
/// there, and a uniform pole dominates non-uniform zeros. Anything else —
/// a non-uniform pole, or every entry sharing an unevenly split zero — is
/// rejected rather than approximated.
///
/// Errors with [`Error::ZeroElement`] when all entries are zero.
pub fn column_divisor(col: &[FuncElem]) -> Result<Divisor> {
    let nonzero: Vec<&FuncElem> = col.iter().filter(|e| !e.is_zero()).collect();
    let first = *nonzero.first().ok_or(Error::ZeroElement("column divisor"))?;
    let curve = first.curve().clone();
    let divs: Vec<Divisor> = nonzero.iter().map(|e| divisor_of(e)).collect::<Result<_>>()?;

    // Unramified closed sites need reconciliation between uniform (fiber)
    // and non-uniform (lumped) records before a minimum makes sense; every
    // other place kind compares coefficient-wise directly.
    let mut simple: BTreeSet<Place> = BTreeSet::new();
    let mut fibers: BTreeMap<Poly, Vec<(ClosedKind, i64)>> = BTreeMap::new();
    for d in &divs {
        for (place, c) in d.iter() {
            match place {
                Place::Closed { minpoly, kind } if *kind != ClosedKind::Ramified => {
                    fibers.entry(minpoly.clone()).or_default().push((kind.clone(), c));
                }
                _ => {
                    simple.insert(place.clone());
                }
            }
        }
    }

    let mut out = Divisor::zero(curve.clone());
    for place in simple {
        let m = divs.iter().map(|d| d.coeff(&place)).min().expect("nonzero column");
        if m != 0 {
            out.add_entry(place, m);
        }
    }
    for (q, recs) in fibers {
        let lumped: Vec<i64> =
            recs.iter().filter(|(k, _)| *k == ClosedKind::Lumped).map(|&(_, c)| c).collect();
        // Uniform minimum across entries, counting entries with no record
        // at this site as uniformly zero.
        let mut fib_min = if recs.len() < divs.len() { Some(0) } else { None };
        for &(ref kind, c) in &recs {
            if *kind == ClosedKind::Fiber {
                fib_min = Some(fib_min.map_or(c, |m: i64| m.min(c)));
            }
        }
        if lumped.is_empty() {
            if let Some(m) = fib_min {
                if m != 0 {
                    out.add_entry(Place::closed(&curve, q)?, m);
                }
            }
            continue;
        }
        // Non-uniform records present. They resolve only when they are all
        // zeros (totals ≥ 0) and some entry floors the site at a uniform
        // coefficient ≤ 0; the minimum is then that uniform coefficient.
        let resolvable = lumped.iter().all(|&v| v >= 0) && fib_min.map_or(false, |m| m <= 0);
        if !resolvable {
            let place = Place::Closed { minpoly: q, kind: ClosedKind::Lumped };
            return Err(Error::BadPlace {
                place: place.to_string(),
                context: "taking the fiberwise minimum of a column whose entries \
                          split a closed fiber unevenly"
                    .into(),
            });
        }
        let m = fib_min.expect("checked above");
        if m != 0 {
            out.add_entry(Place::closed(&curve, q)?, m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse::{parse_funcelem, parse_poly};
    use crate::kernel::{Curve, Rat};
    use crate::places::ord;

    fn curve1() -> CurveRef {
        Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap()
    }

    fn fe(curve: &CurveRef, s: &str) -> FuncElem {
        parse_funcelem(s, curve).unwrap()
    }

    fn frame(curve: &CurveRef, cols: &[&[&str]]) -> Frame {
        Frame::new(
            curve.clone(),
            cols.iter().map(|col| col.iter().map(|s| fe(curve, s)).collect()).collect(),
        )
        .unwrap()
    }

    fn diag(curve: &CurveRef, entries: &[&str]) -> Frame {
        let p = entries.len();
        let cols = (0..p)
            .map(|c| {
                (0..p)
                    .map(|r| {
                        if r == c {
                            fe(curve, entries[c])
                        } else {
                            FuncElem::zero(curve.clone())
                        }
                    })
                    .collect()
            })
            .collect();
        Frame::new(curve.clone(), cols).unwrap()
    }

    #[test]
    fn identity_has_unit_determinant() {
        let curve = curve1();
        let id = Frame::identity(curve.clone(), 3);
        assert!(id.det().is_one());
        assert!(column_divisor(id.column(0)).unwrap().is_zero());
    }

    #[test]
    fn determinant_of_a_diagonal_frame_is_the_product() {
        let curve = curve1();
        let f = diag(&curve, &["1", "x"]);
        assert_eq!(f.det(), fe(&curve, "x"));
        let g = diag(&curve, &["x", "y", "x+1"]);
        assert_eq!(g.det(), fe(&curve, "x*y*(x+1)"));
    }

    #[test]
    fn determinant_sees_off_diagonal_cancellation() {
        let curve = curve1();
        // Columns (1, y) and (x, xy) are proportional: det must vanish.
        let cols = vec![
            vec![fe(&curve, "1"), fe(&curve, "y")],
            vec![fe(&curve, "x"), fe(&curve, "x*y")],
        ];
        assert_eq!(Frame::new(curve.clone(), cols), Err(Error::SingularFrame));
    }

    #[test]
    fn non_square_and_mixed_curve_frames_are_rejected() {
        let curve = curve1();
        let cols = vec![vec![fe(&curve, "1"), fe(&curve, "0")]];
        assert!(matches!(Frame::new(curve.clone(), cols), Err(Error::InvalidCurve(_))));
        let other = Curve::from_i64_coeffs(&[1, 0, 0, 0, 0, 1]).unwrap();
        let cols = vec![
            vec![fe(&curve, "1"), fe(&curve, "0")],
            vec![FuncElem::zero(other.clone()), FuncElem::one(other)],
        ];
        assert_eq!(Frame::new(curve, cols), Err(Error::CurveMismatch));
    }

    #[test]
    fn product_of_diagonal_frames_multiplies_entries() {
        let curve = curve1();
        let f = diag(&curve, &["1", "x"]);
        let g = f.mul(&f).unwrap();
        assert_eq!(g.entry(0, 0), &fe(&curve, "1"));
        assert_eq!(g.entry(1, 1), &fe(&curve, "x^2"));
        assert!(g.entry(0, 1).is_zero());
    }

    #[test]
    fn product_applies_column_operations() {
        let curve = curve1();
        // Multiplying by a unit upper-triangular matrix subtracts a multiple
        // of column 0 from column 1.
        let f = Frame::new(
            curve.clone(),
            vec![
                vec![fe(&curve, "1"), fe(&curve, "y")],
                vec![fe(&curve, "x"), fe(&curve, "x^2")],
            ],
        )
        .unwrap();
        let e = Frame::new(
            curve.clone(),
            vec![
                vec![fe(&curve, "1"), fe(&curve, "0")],
                vec![fe(&curve, "-x"), fe(&curve, "1")],
            ],
        )
        .unwrap();
        let g = f.mul(&e).unwrap();
        assert_eq!(g.entry(0, 1), &fe(&curve, "0"));
        assert_eq!(g.entry(1, 1), &fe(&curve, "x^2 - x*y"));
        assert_eq!(g.entry(0, 0), &fe(&curve, "1"));
    }

    #[test]
    fn column_divisor_is_the_entrywise_floor() {
        let curve = curve1();
        // div(x) = (0,1) + (0,-1) - 2∞ and div(y) = (-1,0) + [ram] - 3∞:
        // the shared floor keeps only the pole at infinity, at depth 3.
        let col = vec![fe(&curve, "x"), fe(&curve, "y")];
        let d = column_divisor(&col).unwrap();
        assert_eq!(d.coeff(&Place::infinity()), -3);
        assert_eq!(d.degree(), -3);
        assert_eq!(d.support().count(), 1);
    }

    #[test]
    fn column_divisor_skips_zero_entries() {
        let curve = curve1();
        let col = vec![FuncElem::zero(curve.clone()), fe(&curve, "x")];
        let d = column_divisor(&col).unwrap();
        let x = FuncElem::x(curve.clone());
        assert_eq!(d, divisor_of(&x).unwrap());
        assert_eq!(
            column_divisor(&[FuncElem::zero(curve.clone())]),
            Err(Error::ZeroElement("column divisor"))
        );
    }

    #[test]
    fn scaling_by_the_floor_inverse_clears_all_poles() {
        let curve = curve1();
        let col = vec![fe(&curve, "1/x"), fe(&curve, "y/x")];
        let d = column_divisor(&col).unwrap();
        // Floor is -(0,1) - (0,-1) - ∞ : the y/x entry still has the odd
        // pole at infinity after x cancels two of y's three.
        let zero = Place::affine(&curve, Rat::from_int(0), Rat::from_int(1)).unwrap();
        assert_eq!(d.coeff(&zero), -1);
        assert_eq!(d.coeff(&zero.conjugate()), -1);
        assert_eq!(d.coeff(&Place::infinity()), -1);
        // Multiplying the column by x lifts every entry above -div(x) + floor.
        for e in &col {
            let scaled = &fe(&curve, "x") * e;
            for (place, c) in d.iter() {
                let v = ord(&scaled, place).unwrap();
                assert!(v >= c + divisor_of(&fe(&curve, "x")).unwrap().coeff(place));
            }
        }
    }

    #[test]
    fn lone_uneven_fiber_zeros_floor_at_zero() {
        let curve = curve1();
        // y - 3 vanishes at (2,3) and at one conjugate point over
        // x^2 + 2x + 4; the other entry has no zero there, so the floor
        // drops the site entirely and keeps only the pole at infinity.
        let col = vec![fe(&curve, "y - 3"), fe(&curve, "x")];
        let d = column_divisor(&col).unwrap();
        assert_eq!(d.coeff(&Place::infinity()), -3);
        assert_eq!(d.support().count(), 1);
    }

    #[test]
    fn shared_uneven_fiber_zeros_are_rejected() {
        let curve = curve1();
        let col = vec![fe(&curve, "y - 3"), fe(&curve, "x*(y - 3)")];
        match column_divisor(&col) {
            Err(Error::BadPlace { .. }) => {}
            other => panic!("expected a rejected fiber minimum, got {other:?}"),
        }
    }

    #[test]
    fn uniform_pole_dominates_uneven_zeros() {
        let curve = curve1();
        // 1/(x^2+2x+4) has a uniform double pole over the fiber where y - 3
        // has its uneven zero; the minimum is the uniform pole.
        let col = vec![fe(&curve, "y - 3"), fe(&curve, "1/(x^2 + 2*x + 4)")];
        let d = column_divisor(&col).unwrap();
        let site = Place::closed(&curve, parse_poly("x^2 + 2*x + 4").unwrap()).unwrap();
        assert_eq!(d.coeff(&site), -1);
    }

    #[test]
    fn inverse_of_a_diagonal_is_entrywise_reciprocal() {
        let curve = curve1();
        let f = frame(&curve, &[&["1", "0"], &["0", "x"]]);
        let inv = f.inverse().unwrap();
        assert!(inv.entry(0, 0).is_one());
        assert_eq!(inv.entry(1, 1), &fe(&curve, "1/x"));
        assert!(inv.entry(0, 1).is_zero());
    }

    #[test]
    fn inverse_times_original_is_the_identity() {
        let curve = curve1();
        let f = frame(
            &curve,
            &[&["x", "1", "0"], &["y", "x + 1", "1"], &["1", "0", "1/x"]],
        );
        let inv = f.inverse().unwrap();
        assert_eq!(f.mul(&inv).unwrap(), Frame::identity(curve.clone(), 3));
        assert_eq!(inv.mul(&f).unwrap(), Frame::identity(curve, 3));
    }
}
