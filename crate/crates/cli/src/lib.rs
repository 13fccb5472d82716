//! Command-line front end: graph sources, bound reports in CSV and JSON, and
//! the `bound`, `chrom`, `heur`, `gen` and `bench` commands.

pub mod cmd;
pub mod error;
pub mod job;
pub mod model;
pub mod report;
pub mod source;

pub use error::CliError;
pub use model::ModelChoice;
pub use report::BoundReport;
pub use source::GraphSource;
