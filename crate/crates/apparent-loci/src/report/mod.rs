//! File formats and the randomized audit harness.
//!
//! Everything the binary reads or writes lives here: JSON schemas for
//! instances, certificates, differential systems, and fuzz configurations
//! ([`json`]), and the seeded bulk runner that exercises the whole
//! normalize/verify/emit pipeline and tabulates the results ([`fuzz`]).

pub mod fuzz;
pub mod json;

pub use fuzz::{run_fuzz, FuzzConfig, FuzzRow, FuzzSummary, InstanceFailure};
pub use json::{
    CertificateJson, CheckJson, FuzzConfigJson, InstanceJson, RrInputJson, SystemJson,
};
