use std::fs;
use std::io::Write;
use std::path::Path;

use cmvscat::{CircleFunction, CircleGrid, Error, VerblunskySeq};
use serde::Serialize;

use crate::Flags;

pub const INPUT: u8 = 2;
pub const NUMERICAL: u8 = 3;
pub const IRREGULAR: u8 = 4;

const DEFAULT_ORDER: usize = cmvscat::DEFAULT_TRUNCATION;
const DEFAULT_N_MAX: usize = 16;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: INPUT,
            message: message.into(),
        }
    }

    pub fn irregular(message: impl Into<String>) -> Self {
        Self {
            code: IRREGULAR,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Argument(_)
            | Error::Domain(_)
            | Error::Parse(_)
            | Error::Io(_)
            | Error::Json(_) => INPUT,
            Error::NearSingular { .. } | Error::Numerical(_) => NUMERICAL,
            Error::NotOneToOne(_) => IRREGULAR,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// Everything that determines a run; embedded in every output file.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub input: Option<String>,
    pub grid: usize,
    /// Hankel truncations (one entry except for `widom`).
    pub trunc: Vec<usize>,
    pub n_max: usize,
    pub radius: f64,
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<usize>>,
}

fn parse_list(text: &str, what: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| Failure::input(format!("{what}: cannot parse {p:?}: {e}")))
        })
        .collect()
}

impl RunConfig {
    pub fn new(command: &'static str, flags: &Flags) -> CliResult<Self> {
        let grid = CircleGrid::new(flags.grid)?.size();
        let trunc = match &flags.trunc {
            Some(t) => parse_list(t, "--trunc")?,
            None => vec![DEFAULT_ORDER],
        };
        if trunc.is_empty() || trunc.iter().any(|&m| m == 0 || m > grid / 4) {
            return Err(Failure::input(format!(
                "--trunc values must lie in 1..={} for N = {grid}",
                grid / 4
            )));
        }
        if command != "widom" && trunc.len() != 1 {
            return Err(Failure::input("--trunc takes a single value here"));
        }
        if !(flags.radius > 0.0 && flags.radius < 1.0) {
            return Err(Failure::input("--radius must lie in (0, 1)"));
        }
        let order = trunc[0];
        let (n_max, block) = if command == "glm" {
            (0, Some(flags.order.unwrap_or(8)))
        } else {
            (flags.order.unwrap_or(DEFAULT_N_MAX.min(order / 4)), None)
        };
        if n_max > order / 4 {
            return Err(Failure::input(format!(
                "--order {n_max} exceeds M/4 = {}",
                order / 4
            )));
        }
        let lengths = (command == "demo-nonunique")
            .then(|| parse_list(&flags.lengths, "--lengths"))
            .transpose()?;
        Ok(Self {
            command,
            input: flags.input.clone(),
            grid,
            trunc,
            n_max,
            radius: flags.radius,
            strict: flags.strict,
            block,
            lengths,
        })
    }

    pub fn grid(&self) -> CircleGrid {
        CircleGrid::new(self.grid).expect("validated grid")
    }

    pub fn order(&self) -> usize {
        self.trunc[0]
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }

    /// Single-line form for CSV comment headers.
    pub fn comment(&self) -> String {
        format!("config: {}", self.json())
    }

    pub fn input_path(&self) -> CliResult<&str> {
        self.input
            .as_deref()
            .ok_or_else(|| Failure::input("--input is required"))
    }
}

pub fn read_text(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {path}: {e}")))
}

pub fn read_sequence(path: &str) -> CliResult<VerblunskySeq> {
    VerblunskySeq::from_json(&read_text(path)?).map_err(|e| Failure::input(format!("{path}: {e}")))
}

pub fn read_symbol(path: &str) -> CliResult<CircleFunction> {
    let file =
        fs::File::open(path).map_err(|e| Failure::input(format!("cannot read {path}: {e}")))?;
    CircleFunction::read_csv(std::io::BufReader::new(file))
        .map_err(|e| Failure::input(format!("{path}: {e}")))
}

/// `foo.csv` → `foo.json`.
pub fn sidecar_path(csv: &str) -> String {
    Path::new(csv)
        .with_extension("json")
        .to_string_lossy()
        .into_owned()
}

/// Writes to `out`, or stdout when `None`.
pub fn emit(out: Option<&str>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| Failure::input(format!("cannot write {path}: {e}")))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::input(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn json_bytes(value: &serde_json::Value) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(value).expect("json serializes");
    text.push('\n');
    text.into_bytes()
}

pub fn csv_bytes(f: &CircleFunction, comment: &str) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    f.write_csv(&mut buf, Some(comment))?;
    Ok(buf)
}
