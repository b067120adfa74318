//! JSON schemas for every file the binary reads or writes.
//!
//! The formats are exact: rationals are `"num/den"` strings (integers drop
//! the denominator), function-field elements are `{"a": ..., "b": ...}`
//! pairs of rational-function strings in the grammar of
//! [`crate::kernel::parse_ratfunc`], and places are tagged objects. Curves
//! are coefficient lists of f(x), constant term first; the conversions
//! re-validate everything, so a hand-edited file cannot smuggle in a
//! singular curve, an off-curve point, or a mismatched frame shape.
//!
//! Matrices (frames, transforms, system matrices) are stored column-major:
//! the outer array indexes columns, the inner one rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::SystemMatrix;
use crate::kernel::{parse_poly, parse_ratfunc, Curve, CurveRef, FuncElem, Poly, Rat};
use crate::places::{ClosedKind, Place};
use crate::trivializer::{
    BadKind, BadPoint, Frame, StepRecord, TrivializationCertificate,
};

fn invalid(msg: impl Into<String>) -> Error {
    Error::Parse { at: 0, msg: msg.into() }
}

/// Coefficients of f(x) for the curve y² = f(x), constant term first.
pub fn curve_to_json(curve: &CurveRef) -> Vec<Rat> {
    curve.f().coeffs().to_vec()
}

/// Rebuilds (and re-validates) a curve from its coefficient list.
pub fn curve_from_json(coeffs: &[Rat]) -> Result<CurveRef> {
    Curve::new(Poly::from_coeffs(coeffs.to_vec()))
}

/// A function-field element as a pair of rational-function strings:
/// the value is `a + b·y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuncElemJson {
    pub a: String,
    pub b: String,
}

impl FuncElemJson {
    pub fn from_elem(u: &FuncElem) -> FuncElemJson {
        FuncElemJson { a: u.a().to_string(), b: u.b().to_string() }
    }

    pub fn to_elem(&self, curve: &CurveRef) -> Result<FuncElem> {
        let a = parse_ratfunc(&self.a)?;
        let b = parse_ratfunc(&self.b)?;
        Ok(FuncElem::new(curve.clone(), a, b))
    }
}

/// A place as a tagged object: `{"kind": "affine", "x": ..., "y": ...}`,
/// `{"kind": "infinity"}`, or `{"kind": "ramified"|"fiber"|"lumped",
/// "minpoly": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlaceJson {
    Affine { x: Rat, y: Rat },
    Infinity,
    Ramified { minpoly: String },
    Fiber { minpoly: String },
    Lumped { minpoly: String },
}

impl PlaceJson {
    pub fn from_place(z: &Place) -> PlaceJson {
        match z {
            Place::Affine { x, y } => PlaceJson::Affine { x: x.clone(), y: y.clone() },
            Place::Infinity => PlaceJson::Infinity,
            Place::Closed { minpoly, kind } => {
                let minpoly = minpoly.to_string();
                match kind {
                    ClosedKind::Ramified => PlaceJson::Ramified { minpoly },
                    ClosedKind::Fiber => PlaceJson::Fiber { minpoly },
                    ClosedKind::Lumped => PlaceJson::Lumped { minpoly },
                }
            }
        }
    }

    pub fn to_place(&self, curve: &CurveRef) -> Result<Place> {
        match self {
            PlaceJson::Affine { x, y } => Place::affine(curve, x.clone(), y.clone()),
            PlaceJson::Infinity => Ok(Place::infinity()),
            PlaceJson::Ramified { minpoly } | PlaceJson::Fiber { minpoly } => {
                let q = parse_poly(minpoly)?;
                let place = Place::closed(curve, q)?;
                let expect_ramified = matches!(self, PlaceJson::Ramified { .. });
                let got_ramified = matches!(
                    place,
                    Place::Closed { kind: ClosedKind::Ramified, .. }
                );
                if expect_ramified != got_ramified {
                    return Err(invalid(format!(
                        "place {place} is {}, not {}",
                        if got_ramified { "ramified" } else { "a fiber site" },
                        if expect_ramified { "ramified" } else { "a fiber site" },
                    )));
                }
                Ok(place)
            }
            PlaceJson::Lumped { minpoly } => {
                let q = parse_poly(minpoly)?.monic();
                if q.deg() == 0 {
                    return Err(invalid("a lumped site needs a nonconstant minpoly"));
                }
                Ok(Place::closed_with_kind(q, ClosedKind::Lumped))
            }
        }
    }
}

fn frame_to_json(frame: &Frame) -> Vec<Vec<FuncElemJson>> {
    frame
        .columns()
        .iter()
        .map(|col| col.iter().map(FuncElemJson::from_elem).collect())
        .collect()
}

fn columns_from_json(
    cols: &[Vec<FuncElemJson>],
    curve: &CurveRef,
) -> Result<Vec<Vec<FuncElem>>> {
    cols.iter()
        .map(|col| col.iter().map(|e| e.to_elem(curve)).collect())
        .collect()
}

/// Input for the `rr` command: a curve and a divisor in the textual
/// notation `k*(x0,y0) + m*inf + n*closed[q(x)]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RrInputJson {
    pub curve: Vec<Rat>,
    pub divisor: String,
}

/// Input for the `trivialize` command: a frame to normalize and the place
/// the poles should be moved to.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceJson {
    pub curve: Vec<Rat>,
    pub p: usize,
    pub basepoint: PlaceJson,
    /// Columns of the frame, each a list of `p` entries.
    pub frame: Vec<Vec<FuncElemJson>>,
}

impl InstanceJson {
    pub fn from_parts(frame: &Frame, basepoint: &Place) -> InstanceJson {
        InstanceJson {
            curve: curve_to_json(frame.curve()),
            p: frame.p(),
            basepoint: PlaceJson::from_place(basepoint),
            frame: frame_to_json(frame),
        }
    }

    /// Validates the curve, shape, basepoint, and frame invertibility.
    pub fn to_parts(&self) -> Result<(Frame, Place)> {
        let curve = curve_from_json(&self.curve)?;
        if self.frame.len() != self.p {
            return Err(invalid(format!(
                "instance says p = {} but the frame has {} columns",
                self.p,
                self.frame.len()
            )));
        }
        let basepoint = self.basepoint.to_place(&curve)?;
        let cols = columns_from_json(&self.frame, &curve)?;
        let frame = Frame::new(curve, cols)?;
        Ok((frame, basepoint))
    }
}

/// One bad-set entry: where, why, and how deep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPointJson {
    pub place: PlaceJson,
    /// `"pole"` or `"dependence"`.
    pub kind: String,
    pub exceptional: bool,
    pub order: i64,
}

/// One row of the per-column accounting log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub step: usize,
    pub count: i64,
    pub carried: usize,
    pub exceptional: usize,
    pub shortfall: i64,
    pub stray_degree: i64,
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A normalization certificate on disk. The `verification` block records
/// the independent re-check results at write time; it is advisory output
/// and is ignored when the file is read back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub curve: Vec<Rat>,
    pub basepoint: PlaceJson,
    pub output_frame: Vec<Vec<FuncElemJson>>,
    pub transform: Vec<Vec<FuncElemJson>>,
    pub bad_set: Vec<BadPointJson>,
    pub log: Vec<StepJson>,
    pub bound: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<CheckJson>>,
}

impl CertificateJson {
    pub fn from_certificate(cert: &TrivializationCertificate) -> CertificateJson {
        CertificateJson {
            curve: curve_to_json(cert.output_frame.curve()),
            basepoint: PlaceJson::from_place(&cert.basepoint),
            output_frame: frame_to_json(&cert.output_frame),
            transform: frame_to_json(&cert.transform),
            bad_set: cert
                .bad_set
                .iter()
                .map(|b| BadPointJson {
                    place: PlaceJson::from_place(&b.place),
                    kind: b.kind.to_string(),
                    exceptional: b.exceptional,
                    order: b.order,
                })
                .collect(),
            log: cert
                .log
                .iter()
                .map(|r| StepJson {
                    step: r.step,
                    count: r.count,
                    carried: r.carried,
                    exceptional: r.exceptional,
                    shortfall: r.shortfall,
                    stray_degree: r.stray_degree,
                })
                .collect(),
            bound: cert.bound,
            verification: None,
        }
    }

    pub fn to_certificate(&self) -> Result<TrivializationCertificate> {
        let curve = curve_from_json(&self.curve)?;
        let basepoint = self.basepoint.to_place(&curve)?;
        let output_frame =
            Frame::new(curve.clone(), columns_from_json(&self.output_frame, &curve)?)?;
        let transform =
            Frame::new(curve.clone(), columns_from_json(&self.transform, &curve)?)?;
        let bad_set = self
            .bad_set
            .iter()
            .map(|b| {
                let kind = match b.kind.as_str() {
                    "pole" => BadKind::PoleOfSection,
                    "dependence" => BadKind::DependencePoint,
                    other => {
                        return Err(invalid(format!(
                            "unknown bad-point kind {other:?} (expected \"pole\" or \"dependence\")"
                        )))
                    }
                };
                Ok(BadPoint {
                    place: b.place.to_place(&curve)?,
                    kind,
                    exceptional: b.exceptional,
                    order: b.order,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let log = self
            .log
            .iter()
            .map(|r| StepRecord {
                step: r.step,
                count: r.count,
                carried: r.carried,
                exceptional: r.exceptional,
                shortfall: r.shortfall,
                stray_degree: r.stray_degree,
            })
            .collect();
        Ok(TrivializationCertificate {
            basepoint,
            output_frame,
            transform,
            bad_set,
            log,
            bound: self.bound,
        })
    }
}

/// A differential system matrix on disk (column-major, like frames).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub curve: Vec<Rat>,
    pub entries: Vec<Vec<FuncElemJson>>,
}

impl SystemJson {
    pub fn from_system(a: &SystemMatrix) -> SystemJson {
        SystemJson {
            curve: curve_to_json(a.curve()),
            entries: a
                .columns()
                .iter()
                .map(|col| col.iter().map(FuncElemJson::from_elem).collect())
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<SystemMatrix> {
        let curve = curve_from_json(&self.curve)?;
        SystemMatrix::new(curve.clone(), columns_from_json(&self.entries, &curve)?)
    }
}

/// Configuration for the `fuzz` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzConfigJson {
    /// One coefficient list per curve to exercise.
    pub curves: Vec<Vec<Rat>>,
    /// Frame ranks to exercise on every curve.
    pub ps: Vec<usize>,
    /// Instances per (curve, rank) cell.
    pub instances: usize,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse_funcelem;
    use crate::trivializer::trivialize;

    fn curve1() -> CurveRef {
        Curve::from_i64_coeffs(&[1, 0, 0, 1]).unwrap()
    }

    fn elem(curve: &CurveRef, s: &str) -> FuncElem {
        parse_funcelem(s, curve).unwrap()
    }

    fn frame(curve: &CurveRef, cols: &[&[&str]]) -> Frame {
        let cols = cols
            .iter()
            .map(|col| col.iter().map(|s| elem(curve, s)).collect())
            .collect();
        Frame::new(curve.clone(), cols).unwrap()
    }

    #[test]
    fn elements_round_trip_through_strings() {
        let curve = curve1();
        for s in ["0", "1", "x", "y", "(y + 1) / x", "3/2*x^2 - 1", "x*y / (x^2 - 4)"] {
            let u = elem(&curve, s);
            let j = FuncElemJson::from_elem(&u);
            assert_eq!(j.to_elem(&curve).unwrap(), u, "round trip of {s}");
        }
    }

    #[test]
    fn places_round_trip_through_tagged_objects() {
        let curve = curve1();
        let places = vec![
            Place::affine(&curve, Rat::new(2, 1), Rat::new(3, 1)).unwrap(),
            Place::infinity(),
            Place::closed(&curve, parse_poly("x^2 + 1").unwrap()).unwrap(),
            Place::closed(&curve, parse_poly("x^2 - x + 1").unwrap()).unwrap(),
            Place::closed_with_kind(parse_poly("x^2 - 5").unwrap(), ClosedKind::Lumped),
        ];
        for z in places {
            let j = PlaceJson::from_place(&z);
            let text = serde_json::to_string(&j).unwrap();
            let back: PlaceJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_place(&curve).unwrap(), z, "round trip of {z}");
        }
    }

    #[test]
    fn mislabeled_place_kind_is_rejected() {
        let curve = curve1();
        // x^2 + 1 is a fiber site on this curve, not a ramification site.
        let j = PlaceJson::Ramified { minpoly: "x^2 + 1".into() };
        assert!(j.to_place(&curve).is_err());
    }

    #[test]
    fn off_curve_point_is_rejected() {
        let curve = curve1();
        let j = PlaceJson::Affine { x: Rat::new(1, 1), y: Rat::new(1, 1) };
        assert!(j.to_place(&curve).is_err());
    }

    #[test]
    fn instance_round_trips_and_revalidates() {
        let curve = curve1();
        let f = frame(&curve, &[&["1", "x"], &["1", "y - x + 1"]]);
        let p = Place::affine(&curve, Rat::new(0, 1), Rat::new(1, 1)).unwrap();
        let j = InstanceJson::from_parts(&f, &p);
        let text = serde_json::to_string_pretty(&j).unwrap();
        let back: InstanceJson = serde_json::from_str(&text).unwrap();
        let (f2, p2) = back.to_parts().unwrap();
        assert_eq!(f2.columns(), f.columns());
        assert_eq!(p2, p);
    }

    #[test]
    fn singular_instance_frame_is_refused_at_parse_time() {
        let curve = curve1();
        let good = frame(&curve, &[&["1", "0"], &["0", "1"]]);
        let p = Place::infinity();
        let mut j = InstanceJson::from_parts(&good, &p);
        j.frame[1] = j.frame[0].clone();
        assert!(matches!(j.to_parts(), Err(Error::SingularFrame)));
    }

    #[test]
    fn certificate_round_trips_field_for_field() {
        let curve = curve1();
        let f = frame(&curve, &[&["1", "x"], &["1", "y - x + 1"]]);
        let p = Place::infinity();
        let cert = trivialize(&f, &p).unwrap();
        let j = CertificateJson::from_certificate(&cert);
        let text = serde_json::to_string_pretty(&j).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        let cert2 = back.to_certificate().unwrap();
        assert_eq!(cert2.basepoint, cert.basepoint);
        assert_eq!(cert2.output_frame.columns(), cert.output_frame.columns());
        assert_eq!(cert2.transform.columns(), cert.transform.columns());
        assert_eq!(cert2.bad_set, cert.bad_set);
        assert_eq!(cert2.log, cert.log);
        assert_eq!(cert2.bound, cert.bound);
    }

    #[test]
    fn verification_block_is_optional_on_read() {
        let curve = curve1();
        let f = frame(&curve, &[&["1", "0"], &["0", "1"]]);
        let cert = trivialize(&f, &Place::infinity()).unwrap();
        let mut j = CertificateJson::from_certificate(&cert);
        j.verification = Some(vec![CheckJson {
            name: "product".into(),
            passed: true,
            detail: "input * transform reproduces the output".into(),
        }]);
        let text = serde_json::to_string(&j).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert!(back.verification.is_some());
        assert!(back.to_certificate().is_ok());

        // And a file without the block parses too.
        let mut bare = j.clone();
        bare.verification = None;
        let text = serde_json::to_string(&bare).unwrap();
        assert!(!text.contains("verification"));
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert!(back.to_certificate().is_ok());
    }

    #[test]
    fn system_round_trips() {
        let curve = curve1();
        let cols = vec![
            vec![elem(&curve, "1 / x"), elem(&curve, "0")],
            vec![elem(&curve, "y / (x - 2)"), elem(&curve, "x^2")],
        ];
        let a = SystemMatrix::new(curve.clone(), cols).unwrap();
        let j = SystemJson::from_system(&a);
        let text = serde_json::to_string(&j).unwrap();
        let back: SystemJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_system().unwrap().columns(), a.columns());
    }

    #[test]
    fn curve_coefficients_are_constant_term_first() {
        let curve = curve1();
        let coeffs = curve_to_json(&curve);
        assert_eq!(
            coeffs,
            vec![Rat::new(1, 1), Rat::new(0, 1), Rat::new(0, 1), Rat::new(1, 1)]
        );
        assert_eq!(curve_from_json(&coeffs).unwrap(), curve);
    }

    #[test]
    fn non_squarefree_curve_is_refused() {
        // y^2 = x^2 (x + 1) has a singular point at the origin.
        let coeffs =
            vec![Rat::new(0, 1), Rat::new(0, 1), Rat::new(1, 1), Rat::new(1, 1)];
        assert!(curve_from_json(&coeffs).is_err());
    }

    #[test]
    fn fuzz_config_parses_from_plain_json() {
        let text = r#"{
            "curves": [["1", "0", "0", "1"], ["1", "0", "0", "0", "0", "1"]],
            "ps": [1, 2],
            "instances": 5,
            "seed": 42
        }"#;
        let cfg: FuzzConfigJson = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.curves.len(), 2);
        assert_eq!(cfg.ps, vec![1, 2]);
        assert_eq!(cfg.instances, 5);
        assert_eq!(cfg.seed, 42);
    }
}
