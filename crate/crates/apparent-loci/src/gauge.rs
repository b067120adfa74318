//! Linear differential systems on the curve and their change-of-frame law.
//!
//! A system is dα/dx = A·α with A a square matrix of function-field
//! elements; x is the global coordinate, and y differentiates implicitly
//! through y² = f(x) as dy/dx = f′(x)/(2y). If the frame changes by an
//! invertible M (new frame = old frame · M) and α = M·β, then
//!
//! > dβ/dx = (M⁻¹AM − M⁻¹M′)·β,
//!
//! because α′ = M′β + Mβ′ = AMβ forces β′ = M⁻¹AMβ − M⁻¹M′β. This module
//! implements that transform exactly, and [`emit_system`] combines it with
//! a normalization certificate: the rewritten system may be singular only
//! at the certificate's bad places, its basepoint, the poles the original
//! system already declared, and the ramification artifacts of d/dx.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{CurveRef, FuncElem, RatFunc};
use crate::places::{divisor_of, Place};
use crate::trivializer::certificate::{BadKind, TrivializationCertificate};
use crate::trivializer::frame::{mat_mul, Frame};

/// A p×p coefficient matrix of the system dα/dx = A·α, stored column-major.
/// Unlike a frame it may be singular — the zero system is a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMatrix {
    curve: CurveRef,
    cols: Vec<Vec<FuncElem>>,
}

impl SystemMatrix {
    /// Wraps columns as a system matrix, checking squareness and that all
    /// entries live on `curve`.
    pub fn new(curve: CurveRef, cols: Vec<Vec<FuncElem>>) -> Result<SystemMatrix> {
        if cols.is_empty() || cols.iter().any(|c| c.len() != cols.len()) {
            return Err(Error::InvalidCurve(
                "a system matrix must be square and nonempty".into(),
            ));
        }
        if cols.iter().flatten().any(|e| e.curve() != &curve) {
            return Err(Error::CurveMismatch);
        }
        Ok(SystemMatrix { curve, cols })
    }

    /// The zero system of size `p`.
    pub fn zero(curve: CurveRef, p: usize) -> SystemMatrix {
        let cols = vec![vec![FuncElem::zero(curve.clone()); p]; p];
        SystemMatrix { curve, cols }
    }

    pub fn p(&self) -> usize {
        self.cols.len()
    }

    pub fn curve(&self) -> &CurveRef {
        &self.curve
    }

    pub fn entry(&self, r: usize, c: usize) -> &FuncElem {
        &self.cols[c][r]
    }

    pub fn columns(&self) -> &Vec<Vec<FuncElem>> {
        &self.cols
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.cols.iter().flatten().all(|e| e.is_zero())
    }
}

/// d/dx of a function-field element.
///
/// For u = a(x) + b(x)·y the derivative is a′ + (b′ + b·f′/(2f))·y, using
/// y′ = f′/(2y) = f′·y/(2f). Exact; satisfies the Leibniz rule.
pub fn derive(u: &FuncElem) -> FuncElem {
    let curve = u.curve().clone();
    let fprime = RatFunc::from_poly(curve.f().derivative());
    let f = RatFunc::from_poly(curve.f().clone());
    let two = RatFunc::constant(crate::kernel::Rat::from_int(2));
    let correction = &(u.b() * &fprime) / &(&two * &f);
    FuncElem::new(curve, u.a().derivative(), &u.b().derivative() + &correction)
}

/// Entrywise d/dx of a frame's columns.
fn derive_columns(cols: &[Vec<FuncElem>]) -> Vec<Vec<FuncElem>> {
    cols.iter().map(|col| col.iter().map(derive).collect()).collect()
}

/// The system satisfied by coordinates in the frame changed by `m`:
/// M⁻¹·A·M − M⁻¹·M′.
pub fn gauge_transform(a: &SystemMatrix, m: &Frame) -> Result<SystemMatrix> {
    if a.curve() != m.curve() {
        return Err(Error::CurveMismatch);
    }
    if a.p() != m.p() {
        return Err(Error::InvalidCurve(format!(
            "system size {} does not match frame size {}",
            a.p(),
            m.p()
        )));
    }
    let curve = a.curve().clone();
    let minv = m.inverse()?;
    let am = mat_mul(a.columns(), m.columns(), &curve);
    let conjugated = mat_mul(minv.columns(), &am, &curve);
    let drift = mat_mul(minv.columns(), &derive_columns(m.columns()), &curve);
    let cols = conjugated
        .into_iter()
        .zip(drift)
        .map(|(cc, dc)| cc.iter().zip(&dc).map(|(x, d)| x - d).collect())
        .collect();
    SystemMatrix::new(curve, cols)
}

/// Where a pole of the emitted system is allowed to come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularClass {
    /// A recorded bad place of the certificate.
    BadSet,
    /// The certificate's basepoint.
    Basepoint,
    /// A pole the original system already had.
    Declared,
    /// A degeneracy of the original frame itself: an entry pole or a zero
    /// of its determinant. The system expressed in that frame is singular
    /// there no matter what the normalization does — repaired dependence
    /// points of the input land in this class.
    OriginalFrame,
    /// A ramification point or infinity, where d/dx itself is singular.
    DerivativeArtifact,
    /// None of the above: a containment violation. For a consistent
    /// certificate this is unreachable (the emitted system is intrinsic to
    /// the connection and the output frame, and every singularity of
    /// either is classified above); an escape is a tripwire for upstream
    /// bugs, reported rather than raised.
    Escaped,
}

impl fmt::Display for SingularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularClass::BadSet => "bad set",
            SingularClass::Basepoint => "basepoint",
            SingularClass::Declared => "declared",
            SingularClass::OriginalFrame => "original frame",
            SingularClass::DerivativeArtifact => "derivative artifact",
            SingularClass::Escaped => "ESCAPED",
        })
    }
}

/// Pole-by-pole account of the emitted system's singular places.
#[derive(Debug, Clone)]
pub struct SingularReport {
    /// Each singular place with its provenance class and pole order.
    pub places: Vec<(Place, SingularClass, i64)>,
}

impl SingularReport {
    /// True when no pole escaped the allowed support.
    pub fn contained(&self) -> bool {
        self.places.iter().all(|(_, c, _)| *c != SingularClass::Escaped)
    }
}

impl fmt::Display for SingularReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.places.is_empty() {
            return write!(f, "no singular places");
        }
        for (z, class, order) in &self.places {
            writeln!(f, "{z}  order {order}  ({class})")?;
        }
        write!(
            f,
            "containment: {}",
            if self.contained() { "holds" } else { "VIOLATED" }
        )
    }
}

/// True at places where d/dx is itself singular: ramification and infinity.
fn is_derivative_artifact(z: &Place) -> bool {
    match z {
        Place::Infinity => true,
        Place::Affine { y, .. } => y.is_zero(),
        Place::Closed { kind, .. } => *kind == crate::places::ClosedKind::Ramified,
    }
}

/// Rewrites `a_orig` in the certificate's output frame and accounts for
/// every singular place of the result.
///
/// The emitted system is `gauge_transform(a_orig, cert.transform)`. Each of
/// its pole places is classified against the certificate's bad set, the
/// basepoint, the poles `a_orig` declared, the degeneracies of the original
/// frame (recovered as output · transform⁻¹ — where the original
/// presentation of the system is singular regardless of the frame change),
/// and the intrinsic singularities of d/dx; anything else is flagged as
/// escaped. Escapes are reported, not raised — a violation indicates an
/// upstream bug the caller should see.
pub fn emit_system(
    a_orig: &SystemMatrix,
    cert: &TrivializationCertificate,
) -> Result<(SystemMatrix, SingularReport)> {
    let emitted = gauge_transform(a_orig, &cert.transform)?;

    let mut declared: Vec<Place> = Vec::new();
    for e in a_orig.columns().iter().flatten() {
        if e.is_zero() {
            continue;
        }
        for (z, c) in divisor_of(e)?.iter() {
            if c < 0 && !declared.contains(z) {
                declared.push(z.clone());
            }
        }
    }

    // Degeneracies of the original frame: entry poles and determinant
    // zeros. The system in that frame is singular there intrinsically.
    let original = cert.output_frame.mul(&cert.transform.inverse()?)?;
    let mut frame_sing: Vec<Place> = Vec::new();
    for e in original.columns().iter().flatten() {
        if e.is_zero() {
            continue;
        }
        for (z, c) in divisor_of(e)?.iter() {
            if c < 0 && !frame_sing.contains(z) {
                frame_sing.push(z.clone());
            }
        }
    }
    for (z, c) in divisor_of(&original.det())?.iter() {
        if c > 0 && !frame_sing.contains(z) {
            frame_sing.push(z.clone());
        }
    }

    let mut poles: BTreeMap<Place, i64> = BTreeMap::new();
    for e in emitted.columns().iter().flatten() {
        if e.is_zero() {
            continue;
        }
        for (z, c) in divisor_of(e)?.iter() {
            if c < 0 {
                let slot = poles.entry(z.clone()).or_insert(0);
                *slot = (*slot).max(-c);
            }
        }
    }

    let bad_places: Vec<&Place> = cert
        .bad_set
        .iter()
        .filter(|b| b.kind == BadKind::DependencePoint)
        .map(|b| &b.place)
        .collect();
    let places = poles
        .into_iter()
        .map(|(z, order)| {
            let class = if z == cert.basepoint {
                SingularClass::Basepoint
            } else if bad_places.contains(&&z) {
                SingularClass::BadSet
            } else if declared.contains(&z) {
                SingularClass::Declared
            } else if frame_sing.contains(&z) {
                SingularClass::OriginalFrame
            } else if is_derivative_artifact(&z) {
                SingularClass::DerivativeArtifact
            } else {
                SingularClass::Escaped
            };
            (z, class, order)
        })
        .collect();
    Ok((emitted, SingularReport { places }))
}
