//! Configuration loading, task execution and report rendering for the
//! `fibresum` command-line tool.

pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_config, parse_config_str, ConfigError, LinkingSpec, OutputFormat, RunConfig, Task};
pub use report::Report;
pub use run::{run, ExitStatus, RunOutcome};

/// Renders a report in the requested format.
pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => report.to_table(),
        OutputFormat::Machine => report.to_machine(),
    }
}
