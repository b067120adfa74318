//! Frame normalization: turning an arbitrary invertible frame of sections
//! into one whose entries have poles at a single chosen place, together with
//! a certificate locating every place where the normalized frame fails to be
//! a basis.
//!
//! The submodules follow the pipeline order: [`frame`] holds the matrix
//! type and its exact algebra, [`locus`] finds where column prefixes become
//! dependent, [`local`] extracts the dependence order and local coefficient
//! jets at one point, [`interpolate`] turns those jets into global functions
//! with poles only at the basepoint, [`pipeline`] runs the column-by-column
//! normalization, [`certificate`] defines the output records, [`verify`]
//! re-checks a certificate from scratch, and [`generator`] builds seeded
//! random test instances.

pub mod certificate;
pub mod frame;
pub mod generator;
pub mod interpolate;
pub mod local;
pub mod locus;
pub mod pipeline;
pub mod verify;

pub use certificate::{BadKind, BadPoint, StepRecord, TrivializationCertificate};
pub use frame::{column_divisor, Frame};
pub use generator::{instance_seed, random_frame, random_system_entry};
pub use interpolate::global_interpolants;
pub use local::{local_data, LocalData};
pub use locus::{dependence_locus, prefix_dependence};
pub use pipeline::{move_poles, trivialize, Scaling};
pub use verify::{verify_certificate, CheckResult, VerificationReport};
