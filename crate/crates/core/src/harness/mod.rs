//! Instance loading, the fixture catalog, reports and theorem sweeps.

pub mod catalog;
pub mod instance;
pub mod report;
pub mod suite;

pub use catalog::{catalog, catalog_entry, CatalogEntry};
pub use instance::{
    load_instance, parse_instance_file, Instance, InstanceBody, InstanceError, InstanceFile,
};
pub use report::{
    explain_witness, run_analysis, AnalysisOptions, LemmaTally, PropertyEntry, Report,
    EXIT_INCOMPLETE, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK,
};
pub use suite::{run_theorem_suite, PreconditionCounts, Rejection, SuiteSource, SuiteSummary};
