//! Fixture ingestion, the family audit, SVG chart rendering and the
//! `workbench` command line.

pub mod cli;
pub mod error;
pub mod families;
pub mod fixture;
pub mod render;

pub use error::{LoadError, RenderError};
pub use families::{families_verify, AuditReport, FamilyCatalog, FamilyEntry, FamilyRecord, Failure, Merge, Pipeline, ReportLine, RowOutcome};
pub use fixture::{ingest, load_chart, Fixture};
pub use render::{render_chart, RenderOptions};
