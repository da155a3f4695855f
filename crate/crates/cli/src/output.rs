use std::fmt;
use std::fs;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::args::{Cli, Format};

pub const SCHEMA: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    Core(conradlab::Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(conradlab::Error::ResourceCap { .. }) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<conradlab::Error> for CliError {
    fn from(e: conradlab::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Io(format!("serializing output: {e}")))
}

/// What a command produced, before formatting.
pub struct Outcome {
    /// One line for `--format pretty`.
    pub summary: String,
    pub result: Value,
    pub exit: u8,
    /// Body for `--format csv`, when the command has a tabular form.
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(summary: impl Into<String>, result: Value, exit: u8) -> Self {
        Outcome {
            summary: summary.into(),
            result,
            exit,
            csv: None,
        }
    }
}

#[derive(Serialize)]
struct Config<'a> {
    family: String,
    ord: Option<String>,
    radius: u32,
    n_max: u32,
    cap: usize,
    format: Format,
    output: Option<String>,
    reproducible: bool,
    command: &'a crate::args::Command,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: u32,
    command: &'a str,
    config: Config<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
    exit_code: u8,
    result: &'a Value,
}

pub fn command_name(cli: &Cli) -> &'static str {
    use crate::args::{Command, CrossingSub, SpaceSub};
    match &cli.command {
        Command::Compare { .. } => "compare",
        Command::Enumerate => "enumerate",
        Command::Verify { .. } => "verify",
        Command::Crossing {
            sub: Some(CrossingSub::Verify { .. }),
            ..
        } => "crossing verify",
        Command::Crossing { .. } => "crossing",
        Command::Realize { .. } => "realize",
        Command::Space { sub } => match sub {
            SpaceSub::Distance { .. } => "space distance",
            SpaceSub::Isolate { .. } => "space isolate",
            SpaceSub::Converge { .. } => "space converge",
            SpaceSub::Orbit { .. } => "space orbit",
            SpaceSub::Tree { .. } => "space tree",
        },
    }
}

/// Renders `outcome` in the requested format and writes it to `-o` or stdout.
pub fn emit(
    cli: &Cli,
    family: String,
    ord: Option<String>,
    format: Format,
    outcome: &Outcome,
) -> CliResult<()> {
    let g = &cli.global;
    let timestamp = (!g.reproducible).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let envelope = Envelope {
        schema: SCHEMA,
        command: command_name(cli),
        config: Config {
            family,
            ord,
            radius: g.radius,
            n_max: g.n_max,
            cap: g.cap,
            format,
            output: g.output.as_ref().map(|p| p.display().to_string()),
            reproducible: g.reproducible,
            command: &cli.command,
        },
        timestamp,
        exit_code: outcome.exit,
        result: &outcome.result,
    };
    let text = match format {
        Format::Json => {
            serde_json::to_string_pretty(&envelope)
                .map_err(|e| CliError::Io(format!("serializing output: {e}")))?
                + "\n"
        }
        Format::Pretty => format!("{}\n", outcome.summary),
        Format::Csv => {
            let Some(body) = &outcome.csv else {
                return Err(CliError::Usage(format!(
                    "`{}` has no csv output",
                    command_name(cli)
                )));
            };
            let mut mini = envelope;
            let result = Value::Null;
            mini.result = &result;
            let header = serde_json::to_string(&mini).map_err(|e| CliError::Io(e.to_string()))?;
            format!("# {header}\n{body}")
        }
    };
    match &g.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
