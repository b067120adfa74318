//! Independent re-checking of a normalization certificate.
//!
//! The pipeline already refuses to emit a certificate it cannot defend, but
//! a consumer should not have to trust the producer. [`verify_certificate`]
//! re-derives every claim from the original frame and the certificate
//! alone: the product identity, invertibility of the transform, pole
//! confinement, the dependence locus, the counting bound, and the step-law
//! of the growth log. Each claim becomes one named check in the report;
//! failures are reported, never panicked, so a caller can print the full
//! list and decide.

use std::fmt;

use crate::error::Result;
use crate::places::{divisor_of, ord};
use crate::rr::require_rational_basepoint;

use super::certificate::{BadKind, TrivializationCertificate};
use super::frame::{mat_mul, minor_det, Frame};
use super::locus::prefix_dependence;

/// Outcome of one named verification check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    /// Stable name of the check.
    pub name: &'static str,
    /// Whether the claim held.
    pub passed: bool,
    /// Human-readable explanation, frozen whether the check passed or not.
    pub detail: String,
}

/// Full verification outcome: one entry per check, in a fixed order.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// True when every check passed.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult { name, passed, detail: detail.into() });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            writeln!(f, "{:<12} {:<4} {}", c.name, mark, c.detail)?;
        }
        write!(f, "verdict: {}", if self.pass() { "accepted" } else { "rejected" })
    }
}

/// Re-derives every claim of `cert` from `original` and reports each one.
///
/// Checks, in order: `shape` (sizes and curve agree), `product`
/// (original · transform = output, entry by entry), `invertible`
/// (det of the transform is nonzero), `poles` (output entries have poles
/// only at the basepoint, matching the recorded pole order), `locus`
/// (the dependence points of the output, recomputed from scratch, are
/// exactly the recorded ones), `count` (the degree-weighted bad count obeys
/// the stated bound, and the bound is the one the frame size implies), and
/// `recurrence` (the growth log starts within g and each step adds at most
/// g + shortfall + stray, with shortfall + stray at most g).
///
/// Only infrastructure failures (arithmetic breakdowns) surface as errors;
/// every falsified claim is a failed check in the report.
pub fn verify_certificate(
    original: &Frame,
    cert: &TrivializationCertificate,
) -> Result<VerificationReport> {
    let mut report = VerificationReport { checks: Vec::new() };
    let curve = original.curve().clone();
    let g = curve.genus() as i64;
    let p = original.p();

    let shape_ok = cert.output_frame.p() == p
        && cert.transform.p() == p
        && cert.output_frame.curve() == &curve
        && cert.transform.curve() == &curve
        && require_rational_basepoint(&cert.basepoint).is_ok();
    report.push(
        "shape",
        shape_ok,
        format!("{p}×{p} frames over one curve, rational basepoint {}", cert.basepoint),
    );
    if !shape_ok {
        return Ok(report);
    }

    let product = mat_mul(original.columns(), cert.transform.columns(), &curve);
    let product_ok = product == *cert.output_frame.columns();
    report.push(
        "product",
        product_ok,
        "original frame times transform reproduces the output frame",
    );

    let rows: Vec<usize> = (0..p).collect();
    let det = minor_det(cert.transform.columns(), &rows, &curve);
    report.push(
        "invertible",
        !det.is_zero(),
        "the transform has nonzero determinant",
    );

    let mut stray_pole: Option<String> = None;
    let mut max_pole = 0i64;
    'scan: for col in cert.output_frame.columns() {
        for e in col {
            if e.is_zero() {
                continue;
            }
            for (z, c) in divisor_of(e)?.iter() {
                if c < 0 && z != &cert.basepoint {
                    stray_pole = Some(z.to_string());
                    break 'scan;
                }
            }
            max_pole = max_pole.max(-ord(e, &cert.basepoint)?);
        }
    }
    let recorded_pole = cert
        .bad_set
        .iter()
        .find(|b| b.kind == BadKind::PoleOfSection)
        .map(|b| (b.place.clone(), b.order));
    let poles_ok = stray_pole.is_none()
        && match &recorded_pole {
            Some((z, order)) => *z == cert.basepoint && *order == max_pole && max_pole > 0,
            None => max_pole == 0,
        };
    report.push(
        "poles",
        poles_ok,
        match stray_pole {
            Some(z) => format!("pole escaped to {z}"),
            None => format!("all poles at the basepoint, order {max_pole}"),
        },
    );

    let mut recomputed = prefix_dependence(cert.output_frame.columns());
    if let Ok(dep) = &mut recomputed {
        dep.retain(|(z, _)| z != &cert.basepoint);
    }
    let locus_ok = match &recomputed {
        Ok(dep) => *dep == cert.dependence_points(),
        Err(_) => false,
    };
    report.push(
        "locus",
        locus_ok,
        match &recomputed {
            Ok(dep) if locus_ok => {
                format!("recomputed dependence locus has {} entries matching the record", dep.len())
            }
            Ok(dep) => format!(
                "recomputed dependence locus ({} entries) disagrees with the record ({} entries)",
                dep.len(),
                cert.dependence_points().len()
            ),
            Err(e) => format!("dependence locus could not be recomputed: {e}"),
        },
    );

    let expected_bound = 2 * p as i64 * g - g + 1;
    let count = cert.distinct_bad_count();
    let count_ok = cert.bound == expected_bound && count <= cert.bound;
    report.push(
        "count",
        count_ok,
        format!("{count} distinct bad degree within the bound {expected_bound}"),
    );

    let mut rec_ok = cert.log.len() == p && !cert.log.is_empty();
    let mut rec_detail = format!("{} step records obey the growth law", cert.log.len());
    if rec_ok {
        if cert.log[0].step != 1 || cert.log[0].count > g {
            rec_ok = false;
            rec_detail = format!("step 1 starts with count {} > g = {g}", cert.log[0].count);
        }
        for w in cert.log.windows(2) {
            let (prev, cur) = (&w[0], &w[1]);
            let budget = cur.exceptional as i64 + cur.shortfall + cur.stray_degree;
            if cur.step != prev.step + 1
                || cur.exceptional as i64 > g
                || cur.shortfall + cur.stray_degree > g
                || cur.count > prev.count + budget
            {
                rec_ok = false;
                rec_detail = format!(
                    "step {} grew from {} to {} against a budget of {}",
                    cur.step, prev.count, cur.count, budget
                );
                break;
            }
        }
        if rec_ok {
            let final_weight: i64 = cert
                .dependence_points()
                .iter()
                .map(|(z, _)| z.degree())
                .sum();
            if cert.log[p - 1].count != final_weight {
                rec_ok = false;
                rec_detail = format!(
                    "final log count {} disagrees with the recorded locus weight {final_weight}",
                    cert.log[p - 1].count
                );
            }
        }
    } else {
        rec_detail = format!("expected {} step records, found {}", p, cert.log.len());
    }
    report.push("recurrence", rec_ok, rec_detail);

    Ok(report)
}
