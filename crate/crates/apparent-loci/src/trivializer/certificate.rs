//! The output records of frame normalization: what was produced, how, and
//! where the result still fails to be a basis.
//!
//! A certificate is checkable without trusting the pipeline: the transform
//! matrix reproduces the output frame from the input, the bad set can be
//! recomputed from the output frame alone, and the step log carries the
//! counts the growth bound is audited against. [`super::verify`] does all
//! of that from scratch.

use std::collections::BTreeSet;
use std::fmt;

use crate::places::Place;

use super::frame::Frame;

/// Why a place belongs to the bad set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BadKind {
    /// The place collecting every pole of the normalized frame.
    PoleOfSection,
    /// A place where the normalized frame is finite but not a basis.
    DependencePoint,
}

impl fmt::Display for BadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BadKind::PoleOfSection => write!(f, "pole"),
            BadKind::DependencePoint => write!(f, "dependence"),
        }
    }
}

/// One member of the bad set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPoint {
    pub place: Place,
    pub kind: BadKind,
    /// True when the point was exempted from jet matching at some step
    /// because the simple-zero function was forced to vanish doubly there.
    pub exceptional: bool,
    /// Dependence order (for dependence points) or deepest pole order
    /// across the entries (for the pole place).
    pub order: i64,
}

/// Per-step accounting of the normalization loop.
///
/// `count` is the degree-weighted number of places away from the basepoint
/// where the first `step` columns are dependent, measured after the step
/// completed. The growth bound audits
/// `count ≤ previous count + g + shortfall + stray_degree` with
/// `shortfall + stray_degree ≤ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    /// 1-based index of the column the step normalized.
    pub step: usize,
    /// Degree-weighted dependence count of the prefix, off the basepoint.
    pub count: i64,
    /// Dependence points that coincided with already-recorded bad places
    /// (or the basepoint) and were left alone.
    pub carried: usize,
    /// New points exempted from matching by forced double zeros (≤ g).
    pub exceptional: usize,
    /// Degree-weighted points where the pole order of the scaling function
    /// fell short of the dependence order.
    pub shortfall: i64,
    /// Total degree of the new zeros the scaling function introduced.
    pub stray_degree: i64,
}

/// The full result of normalizing a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivializationCertificate {
    /// The place all poles were moved to.
    pub basepoint: Place,
    /// The normalized frame Ψ″.
    pub output_frame: Frame,
    /// The change of basis M with `input · M = output`; a product of
    /// diagonal scalings and unit-triangular column operations, hence
    /// invertible over the function field.
    pub transform: Frame,
    /// Every place where the output frame fails to be a basis of the stalk:
    /// the pole place and all dependence points, sorted by place.
    pub bad_set: Vec<BadPoint>,
    /// One record per column, in order.
    pub log: Vec<StepRecord>,
    /// The a-priori cap `2pg − g + 1` on [`Self::distinct_bad_count`].
    pub bound: i64,
}

impl TrivializationCertificate {
    /// Degree-weighted count of distinct places in the bad set together
    /// with the basepoint — the quantity [`Self::bound`] caps.
    pub fn distinct_bad_count(&self) -> i64 {
        let mut places: BTreeSet<&Place> =
            self.bad_set.iter().map(|b| &b.place).collect();
        places.insert(&self.basepoint);
        places.iter().map(|z| z.degree()).sum()
    }

    /// The dependence points in the bad set (everything except the pole
    /// entry), as (place, order) pairs.
    pub fn dependence_points(&self) -> Vec<(Place, i64)> {
        self.bad_set
            .iter()
            .filter(|b| b.kind == BadKind::DependencePoint)
            .map(|b| (b.place.clone(), b.order))
            .collect()
    }
}

impl fmt::Display for TrivializationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "normalized {}x{} frame, poles at {}",
            self.output_frame.p(),
            self.output_frame.p(),
            self.basepoint
        )?;
        writeln!(f, "bad set ({} entries):", self.bad_set.len())?;
        for b in &self.bad_set {
            writeln!(
                f,
                "  {} at {} (order {}{})",
                b.kind,
                b.place,
                b.order,
                if b.exceptional { ", exceptional" } else { "" }
            )?;
        }
        writeln!(f, "count {} within bound {}", self.distinct_bad_count(), self.bound)?;
        for r in &self.log {
            writeln!(
                f,
                "  step {}: count {}, carried {}, exceptional {}, shortfall {}, stray {}",
                r.step, r.count, r.carried, r.exceptional, r.shortfall, r.stray_degree
            )?;
        }
        Ok(())
    }
}
