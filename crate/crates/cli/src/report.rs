//! Run reports: versioned JSON plus an aligned text table.

use std::fs;
use std::time::Duration;

use rankmetric::{Error, TowerSpec};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "rankmetric-report/1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(Error),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Precondition(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::TowerMismatch | Error::BadLength { .. } | Error::NotBiadditive => CliError::Internal(e.to_string()),
            other => CliError::Precondition(other),
        }
    }
}

/// What a subcommand produced, before timing and argv are attached.
pub struct Output {
    pub command: &'static str,
    pub tower: TowerSpec,
    pub inputs: Value,
    pub outputs: Value,
    pub seed: Option<u64>,
    pub table: Vec<(String, String)>,
}

#[derive(Serialize)]
pub struct RunReport {
    schema: &'static str,
    command: &'static str,
    argv: Vec<String>,
    version: &'static str,
    tower: TowerSpec,
    inputs: Value,
    outputs: Value,
    seed: Option<u64>,
    duration_ms: u64,
    #[serde(skip)]
    table: Vec<(String, String)>,
}

impl RunReport {
    pub fn new(argv: Vec<String>, out: Output, elapsed: Duration) -> Self {
        RunReport {
            schema: SCHEMA,
            command: out.command,
            argv,
            version: env!("CARGO_PKG_VERSION"),
            tower: out.tower,
            inputs: out.inputs,
            outputs: out.outputs,
            seed: out.seed,
            duration_ms: elapsed.as_millis() as u64,
            table: out.table,
        }
    }

    /// Table to stdout unless the JSON goes there; JSON to `path` if given.
    pub fn emit(&self, path: Option<&str>) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(self).expect("report serializes") + "\n";
        match path {
            Some("-") => print!("{json}"),
            Some(p) => {
                fs::write(p, json)?;
                print!("{}", render_table(&self.table));
            }
            None => print!("{}", render_table(&self.table)),
        }
        Ok(())
    }
}

pub fn render_table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let rows = vec![("a".to_string(), "1".to_string()), ("long key".to_string(), "2".to_string())];
        assert_eq!(render_table(&rows), "a         1\nlong key  2\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(Error::BadGamma).exit_code(), 2);
        assert_eq!(CliError::from(Error::TowerMismatch).exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}
