//! Local dependence data at one rational point.
//!
//! At a dependence point `z` of the prefix `[head | next]`, the incoming
//! column agrees with a combination of the head columns to some finite
//! order: there are unique local coefficients α_1, ..., α_k, regular at `z`,
//! with `next − Σ α_j head_j` vanishing entrywise to order ≥ d, where d is
//! the dependence order (the minimum vanishing order over the spanning
//! minors). The repair step needs exactly the α's as jets of order d: a
//! global correction matching those jets kills the dependence.
//!
//! The α's are computed by selecting k rows on which the head is invertible
//! at `z` (the lexicographically first such subset) and solving that square
//! system over truncated power series in the local parameter x − x0.
//! Gaussian elimination works verbatim in the truncated-series ring because
//! the evaluated matrix is invertible, so a unit pivot exists at every step.
//! The rows left out of the solve then vanish to order ≥ d automatically:
//! each dropped-row residual equals a spanning minor divided by the unit row
//! minor, which is where the order-d guarantee comes from.

use crate::error::{Error, Result};
use crate::kernel::{FuncElem, Rat};
use crate::places::{jet_at, ord, Jet, Place};

use super::locus::row_subsets;
use super::frame::minor_det;

/// Dependence order and local coefficient jets of `next` against `head`
/// at one rational unramified point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalData {
    /// The dependence point.
    pub place: Place,
    /// Dependence order: every spanning minor of `[head | next]` vanishes
    /// to at least this order at `place`, and some minor to exactly it.
    pub d: i64,
    /// Jets of order `d` of the coefficients α_j, one per head column.
    pub alphas: Vec<Jet>,
    /// The rows the square solve used; the head is invertible on them
    /// at `place`.
    pub kept_rows: Vec<usize>,
}

/// Computes [`LocalData`] for the prefix `[head | next]` at `z`.
///
/// `head` is a column-major `p × k` matrix (`1 ≤ k < p` columns that are
/// independent at `z`), `next` the incoming height-`p` column. Errors:
///
/// * [`Error::IrrationalLocus`] — `z` is not a rational unramified point;
/// * [`Error::PoleAtPlace`] — some entry is not finite at `z`;
/// * [`Error::BadPlace`] — `z` is not a dependence point of the prefix, or
///   the head columns are already dependent at `z` (a carried point, which
///   has no local data);
/// * [`Error::SingularFrame`] — the prefix has no nonzero spanning minor.
pub fn local_data(head: &[Vec<FuncElem>], next: &[FuncElem], z: &Place) -> Result<LocalData> {
    let k = head.len();
    let p = next.len();
    assert!(k >= 1 && k < p, "head must have between 1 and p - 1 columns");
    if !z.is_rational_unramified() {
        return Err(Error::IrrationalLocus {
            place: z.to_string(),
            context: "local dependence data needs x-jets at the point".into(),
        });
    }

    let curve = next[0].curve().clone();
    let mut ext: Vec<Vec<FuncElem>> = head.to_vec();
    ext.push(next.to_vec());

    for col in &ext {
        for e in col {
            if !e.is_zero() && ord(e, z)? < 0 {
                return Err(Error::PoleAtPlace { place: z.to_string() });
            }
        }
    }

    let mut d = i64::MAX;
    for rows in row_subsets(p, k + 1) {
        let m = minor_det(&ext, &rows, &curve);
        if !m.is_zero() {
            d = d.min(ord(&m, z)?);
        }
    }
    if d == i64::MAX {
        return Err(Error::SingularFrame);
    }
    if d < 1 {
        return Err(Error::BadPlace {
            place: z.to_string(),
            context: "the columns are independent here; there is no dependence to repair".into(),
        });
    }

    let kept_rows = row_subsets(p, k)
        .into_iter()
        .find(|rows| {
            let m = minor_det(head, rows, &curve);
            !m.is_zero() && ord(&m, z) == Ok(0)
        })
        .ok_or_else(|| Error::BadPlace {
            place: z.to_string(),
            context: "the leading columns are already dependent here; \
                      the point is carried, not repaired"
                .into(),
        })?;

    let prec = d as usize + 1;
    // Augmented k × (k + 1) system over truncated series: rows are the kept
    // rows, the last column is `next`.
    let mut rows: Vec<Vec<Vec<Rat>>> = kept_rows
        .iter()
        .map(|&r| {
            let mut row: Vec<Vec<Rat>> = head
                .iter()
                .map(|col| Ok(jet_at(&col[r], z, d as usize)?.coeffs().to_vec()))
                .collect::<Result<_>>()?;
            row.push(jet_at(&next[r], z, d as usize)?.coeffs().to_vec());
            Ok(row)
        })
        .collect::<Result<_>>()?;

    // Gaussian elimination with unit pivots. The constant-term matrix is
    // invertible, so every column has a row whose constant term is nonzero
    // after the previous eliminations.
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !rows[r][col][0].is_zero())
            .expect("kept rows are invertible at the point");
        rows.swap(col, pivot);
        let inv = series_inv(&rows[col][col], prec);
        for c in col..=k {
            rows[col][c] = series_mul(&rows[col][c], &inv, prec);
        }
        for r in 0..k {
            if r == col || rows[r][col].iter().all(|c| c.is_zero()) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..=k {
                let t = series_mul(&factor, &rows[col][c], prec);
                rows[r][c] = series_sub(&rows[r][c], &t);
            }
        }
    }
    let alphas: Vec<Jet> = (0..k).map(|r| Jet::new(rows[r][k].clone())).collect();

    // Every dropped row's residual must vanish to order ≥ d, with equality
    // on at least one row: each residual equals a spanning minor over the
    // unit kept minor, and d is the minimum of those minor orders.
    debug_assert!({
        let mut exact = false;
        let mut ok = true;
        for r in 0..p {
            if kept_rows.contains(&r) {
                continue;
            }
            let mut res = jet_at(&next[r], z, d as usize).expect("checked finite");
            for (j, a) in alphas.iter().enumerate() {
                res = res.sub(&jet_at(&head[j][r], z, d as usize).expect("checked finite").mul(a));
            }
            ok &= res.leading_zeros() >= d as usize;
            exact |= res.leading_zeros() == d as usize;
        }
        ok && exact
    });

    Ok(LocalData { place: z.clone(), d, alphas, kept_rows })
}

fn series_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn series_mul(a: &[Rat], b: &[Rat], prec: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); prec];
    for i in 0..prec {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..prec - i {
            out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
        }
    }
    out
}

/// Multiplicative inverse of a truncated series with unit constant term.
fn series_inv(a: &[Rat], prec: usize) -> Vec<Rat> {
    let c0 = &Rat::from_int(1) / &a[0];
    let mut out = vec![Rat::zero(); prec];
    out[0] = c0.clone();
    for n in 1..prec {
        let mut acc = Rat::zero();
        for i in 1..=n {
            acc = &acc + &(&a[i] * &out[n - i]);
        }
        out[n] = -&(&acc * &c0);
    }
    out
}
