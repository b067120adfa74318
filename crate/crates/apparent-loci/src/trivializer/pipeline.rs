//! The normalization pipeline: move every pole to one place, then restore
//! independence column by column.
//!
//! Stage one scales each column by a global function so that all entry
//! poles land on the basepoint P; the price is at most g fresh common zeros
//! per column, the slack of the scaling choice. Stage two walks the columns
//! left to right. At each step the places where the prefix is newly
//! dependent are measured ([`super::locus`]), described locally
//! ([`super::local`]), and repaired: a global correction with poles only at
//! P is subtracted ([`super::interpolate`]), making the column vanish to
//! the dependence order at each point, and a scaling function with poles of
//! exactly those orders lifts it back to independence. Points that resist —
//! forced double zeros of the correction, pole-order shortfalls, stray
//! zeros of the scaling — are recorded and carried, and each step can add
//! only 2g of them in degree. That is the source of the final bound
//! 2pg − g + 1 on the bad count.
//!
//! Every step ends by recomputing the dependence locus of the prefix from
//! scratch; the certificate is built from measured truth, never from the
//! plan, and a mismatch aborts with a verification error instead of an
//! optimistic record.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::kernel::FuncElem;
use crate::places::{divisor_of, ord, Divisor, Place};
use crate::rr::{
    exact_order_function, require_rational_basepoint, rr_basis, signed_combinations,
};

use super::certificate::{BadKind, BadPoint, StepRecord, TrivializationCertificate};
use super::frame::{column_divisor, mat_mul, Frame};
use super::interpolate::global_interpolants;
use super::local::{local_data, LocalData};
use super::locus::prefix_dependence;

/// One column scaling of the pole-moving pass.
#[derive(Debug, Clone)]
pub struct Scaling {
    /// Column index the factor was applied to.
    pub column: usize,
    /// The global scaling function.
    pub factor: FuncElem,
    /// Common zeros the scaled column gained away from the basepoint
    /// (total degree at most g).
    pub new_zeros: Divisor,
}

/// Scales every column of `frame` so that all entry poles lie at `p`.
///
/// Each column is multiplied by a function chosen from the sections whose
/// divisor clears the column's shared pole floor; among the deterministic
/// candidates the one leaving the fewest zeros away from `p` is taken,
/// preferring rational unramified leftovers (they can be repaired later)
/// when degrees tie. The factors and their leftover zeros are reported
/// alongside the scaled frame.
pub fn move_poles(frame: &Frame, p: &Place) -> Result<(Frame, Vec<Scaling>)> {
    require_rational_basepoint(p)?;
    let curve = frame.curve().clone();
    let g = curve.genus() as i64;

    let mut cols = Vec::with_capacity(frame.p());
    let mut scalings = Vec::with_capacity(frame.p());
    for (i, col) in frame.columns().iter().enumerate() {
        let floor = column_divisor(col)?;
        let k = g - floor.degree();
        let mut target = floor.clone();
        target.add_entry(p.clone(), k);
        let basis = rr_basis(&target)?;
        if basis.is_empty() {
            return Err(Error::SearchExhausted {
                context: format!("clearing the poles of column {i}: the pole bound admits \
                                  no nonzero section"),
            });
        }

        // Score the deterministic candidates by what their slack leaves
        // behind off the basepoint: first the total degree, then the part
        // at places where no local repair is possible.
        let mut best: Option<(i64, i64, FuncElem, Divisor)> = None;
        for combo in signed_combinations(basis.len()) {
            if basis.len() > 6 && combo.iter().filter(|c| **c != 0).count() > 2 {
                continue;
            }
            let mut h = FuncElem::zero(curve.clone());
            for (c, b) in combo.iter().zip(&basis) {
                match c {
                    1 => h = &h + b,
                    -1 => h = &h - b,
                    _ => {}
                }
            }
            let mut slack = divisor_of(&h)?.add(&target);
            debug_assert!(slack.is_effective());
            let at_p = slack.coeff(p);
            slack.add_entry(p.clone(), -at_p);
            let off_degree = slack.degree();
            let stuck: i64 = slack
                .iter()
                .filter(|(z, _)| !z.is_rational_unramified())
                .map(|(z, c)| z.degree() * c)
                .sum();
            if best
                .as_ref()
                .map_or(true, |(d0, s0, _, _)| (off_degree, stuck) < (*d0, *s0))
            {
                let perfect = off_degree == 0;
                best = Some((off_degree, stuck, h, slack));
                if perfect {
                    break;
                }
            }
        }
        let (_, _, factor, new_zeros) = best.expect("nonempty basis yields a candidate");
        cols.push(col.iter().map(|e| &factor * e).collect::<Vec<_>>());
        scalings.push(Scaling { column: i, factor, new_zeros });
    }
    Ok((Frame::from_columns_unchecked(curve, cols), scalings))
}

/// Degree-weighted count of the places in a dependence record.
fn weighted(bad: &BTreeMap<Place, i64>) -> i64 {
    bad.keys().map(|z| z.degree()).sum()
}

/// Normalizes `frame`: moves all poles to `p`, restores independence where
/// that is locally possible, and certifies the outcome.
///
/// The certificate's transform M satisfies `frame · M = output` and is a
/// product of diagonal and unit-triangular factors, hence invertible. The
/// bad set lists the pole place and every remaining dependence point; its
/// degree-weighted count (with `p` adjoined) is guaranteed to stay within
/// `2pg − g + 1`.
///
/// Errors with [`Error::IrrationalLocus`] when a dependence point that
/// needs repair is not a rational unramified point, and with
/// [`Error::Verification`] if any internal consistency check fails (the
/// certificate is built from recomputed loci, not from intentions).
pub fn trivialize(frame: &Frame, p: &Place) -> Result<TrivializationCertificate> {
    require_rational_basepoint(p)?;
    let curve = frame.curve().clone();
    let g = curve.genus() as i64;
    let pr = frame.p();

    let (scaled, scalings) = move_poles(frame, p)?;
    let mut cols: Vec<Vec<FuncElem>> = scaled.columns().to_vec();
    let mut m: Vec<Vec<FuncElem>> = (0..pr)
        .map(|c| {
            (0..pr)
                .map(|r| {
                    if r == c {
                        scalings[c].factor.clone()
                    } else {
                        FuncElem::zero(curve.clone())
                    }
                })
                .collect()
        })
        .collect();

    let mut exceptional_ever: BTreeSet<Place> = BTreeSet::new();
    let mut bad: BTreeMap<Place, i64> = BTreeMap::new();
    let mut log: Vec<StepRecord> = Vec::new();

    for (z, d) in prefix_dependence(&cols[..1])? {
        if z != *p {
            bad.insert(z, d);
        }
    }
    log.push(StepRecord {
        step: 1,
        count: weighted(&bad),
        carried: 0,
        exceptional: 0,
        shortfall: 0,
        stray_degree: 0,
    });

    for k in 2..=pr {
        let mut carried = 0usize;
        let mut locals: Vec<LocalData> = Vec::new();
        for (z, d) in prefix_dependence(&cols[..k])? {
            if z == *p || bad.contains_key(&z) {
                carried += 1;
                continue;
            }
            if !z.is_rational_unramified() {
                return Err(Error::IrrationalLocus {
                    place: z.to_string(),
                    context: format!(
                        "new dependence point of the first {k} columns needs local jets"
                    ),
                });
            }
            let (head, rest) = cols.split_at(k - 1);
            let ld = local_data(head, &rest[0], &z)?;
            debug_assert_eq!(ld.d, d);
            locals.push(ld);
        }

        // Places allowed to be dependent after this step: everything known
        // plus whatever the step itself reports as unrepairable.
        let mut allowed: BTreeSet<Place> = bad.keys().cloned().collect();
        allowed.insert(p.clone());
        let mut exceptional_count = 0usize;
        let mut shortfall = 0i64;
        let mut stray_degree = 0i64;

        if !locals.is_empty() {
            let (tilde, exceptional) = global_interpolants(&curve, &locals, p)?;
            for j in 0..k - 1 {
                if tilde[j].is_zero() {
                    continue;
                }
                for r in 0..pr {
                    let dc = &tilde[j] * &cols[j][r];
                    cols[k - 1][r] = &cols[k - 1][r] - &dc;
                    let dm = &tilde[j] * &m[j][r];
                    m[k - 1][r] = &m[k - 1][r] - &dm;
                }
            }
            let mut weights = Divisor::zero(curve.clone());
            for l in &locals {
                if exceptional.contains(&l.place) {
                    allowed.insert(l.place.clone());
                    continue;
                }
                weights.add_entry(l.place.clone(), l.d);
            }
            exceptional_count = exceptional.len();
            exceptional_ever.extend(exceptional);
            if !weights.is_zero() {
                let (h, short, stray) = exact_order_function(&weights, p)?;
                for r in 0..pr {
                    cols[k - 1][r] = &h * &cols[k - 1][r];
                    m[k - 1][r] = &h * &m[k - 1][r];
                }
                shortfall = short.iter().map(|z| z.degree()).sum();
                allowed.extend(short);
                stray_degree = stray.degree();
                allowed.extend(stray.support().cloned());
            }
        }

        let mut new_bad: BTreeMap<Place, i64> = BTreeMap::new();
        for (z, d) in prefix_dependence(&cols[..k])? {
            if z == *p {
                continue;
            }
            if !allowed.contains(&z) {
                return Err(Error::Verification(format!(
                    "step {k} left an unexpected dependence point at {z}"
                )));
            }
            new_bad.insert(z, d);
        }
        for (z, _) in bad {
            if !new_bad.contains_key(&z) {
                return Err(Error::Verification(format!(
                    "step {k} lost the carried dependence point at {z}"
                )));
            }
        }
        bad = new_bad;
        log.push(StepRecord {
            step: k,
            count: weighted(&bad),
            carried,
            exceptional: exceptional_count,
            shortfall,
            stray_degree,
        });
    }

    // Certificate assembly, with the invariants re-checked from scratch.
    if mat_mul(frame.columns(), &m, &curve) != cols {
        return Err(Error::Verification(
            "the accumulated transform does not reproduce the output frame".into(),
        ));
    }
    let mut max_pole = 0i64;
    for col in &cols {
        for e in col {
            if e.is_zero() {
                continue;
            }
            for (z, c) in divisor_of(e)?.iter() {
                if c < 0 && z != p {
                    return Err(Error::Verification(format!(
                        "pole at {z} survived the normalization"
                    )));
                }
            }
            max_pole = max_pole.max(-ord(e, p)?);
        }
    }

    let mut bad_set: Vec<BadPoint> = bad
        .iter()
        .map(|(z, &d)| BadPoint {
            place: z.clone(),
            kind: BadKind::DependencePoint,
            exceptional: exceptional_ever.contains(z),
            order: d,
        })
        .collect();
    if max_pole > 0 {
        bad_set.push(BadPoint {
            place: p.clone(),
            kind: BadKind::PoleOfSection,
            exceptional: false,
            order: max_pole,
        });
    }
    bad_set.sort_by(|a, b| a.place.cmp(&b.place));

    let cert = TrivializationCertificate {
        basepoint: p.clone(),
        output_frame: Frame::from_columns_unchecked(curve.clone(), cols),
        transform: Frame::from_columns_unchecked(curve, m),
        bad_set,
        log,
        bound: 2 * pr as i64 * g - g + 1,
    };
    if cert.distinct_bad_count() > cert.bound {
        return Err(Error::Verification(format!(
            "bad count {} exceeds the bound {}",
            cert.distinct_bad_count(),
            cert.bound
        )));
    }
    Ok(cert)
}
