//! Seeded check catalog over the polylogarithm engine, with a JSON report.

pub mod apply;
pub mod catalog;
pub mod checks;
pub mod error;
pub mod report;
pub mod runner;
pub mod settings;
pub mod trial;

pub use catalog::{audit, find, CheckDescriptor, Tier, CATALOG};
pub use error::VerifyError;
pub use report::{CheckReport, Report, Status};
pub use runner::{run_all, run_check, run_selected};
pub use settings::Settings;
