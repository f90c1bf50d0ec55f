//! Report emission: JSON (deterministic, round-trip-exact numbers) or CSV.

use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Where a report goes; `None` is stdout.
pub struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        let path = path.filter(|p| p.as_os_str() != "-");
        Sink { path }
    }

    pub fn write(&self, text: &str) -> Result<(), CliError> {
        match &self.path {
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::io(format!("writing report: {e}")))
            }
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::io(format!("writing {}: {e}", path.display()))),
        }
    }
}

/// Envelope common to every JSON report: tool identity, optional timestamp,
/// the effective configuration, then the command payload.
#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    pub command: &'static str,
    pub config: crate::config::RunConfig,
    #[serde(flatten)]
    pub payload: T,
}

pub fn envelope<T: Serialize>(
    command: &'static str,
    config: crate::config::RunConfig,
    timestamp: bool,
    payload: T,
) -> Envelope<T> {
    Envelope {
        tool: "sipw",
        version: env!("CARGO_PKG_VERSION"),
        generated_at_unix: timestamp.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        }),
        command,
        config,
        payload,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::io(format!("serializing report: {e}")))
}

/// CSV cell for an optional value; `None` stays empty.
pub fn cell(v: Option<f64>) -> String {
    match v {
        // `{}` on f64 is shortest round-trip decimal
        Some(x) => format!("{x}"),
        None => String::new(),
    }
}
