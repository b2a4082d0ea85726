//! Scenario-driven runs of the quantum game analyses in `qgame-core`.
//!
//! A run reads one scenario file, dispatches to the owning core module and
//! writes a report whose every result item carries a tolerance and a
//! provenance flag.

pub mod emit;
pub mod error;
pub mod report;
pub mod run;
pub mod scenario;
pub mod schema;

pub use emit::{emit, Format};
pub use error::CliError;
pub use report::{Provenance, ResultItem, RunReport};
pub use run::run;
pub use scenario::{load_scenario, parse_scenario, Kind, Scenario};
