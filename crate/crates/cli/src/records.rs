//! Output records and their CSV/JSON serialization.
//!
//! CSV uses a fixed header, comma separators, LF line endings, and floats at
//! 12 significant digits with no locale dependence, so golden-file diffs are
//! byte-stable. JSON output is one object per line with snake_case keys.

use serde::Serialize;

use geophase::PhaseResult;

pub const CSV_HEADER: &str =
    "command,method,steps,r,n_x,n_z,tau,theta,alpha,chi,intensity,phase,visibility,phase_defined";

/// One emitted result row. Fields that do not apply to a command are `None`
/// (empty in CSV, `null` in JSON).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub command: String,
    pub method: String,
    pub steps: u64,
    pub r: Option<f64>,
    pub n_x: Option<f64>,
    pub n_z: Option<f64>,
    pub tau: Option<f64>,
    pub theta: Option<f64>,
    pub alpha: Option<f64>,
    pub chi: Option<f64>,
    pub intensity: Option<f64>,
    pub phase: Option<f64>,
    pub visibility: Option<f64>,
    pub phase_defined: bool,
}

impl Record {
    pub fn new(command: &str, method: &str, steps: u64) -> Self {
        Self {
            command: command.to_string(),
            method: method.to_string(),
            steps,
            r: None,
            n_x: None,
            n_z: None,
            tau: None,
            theta: None,
            alpha: None,
            chi: None,
            intensity: None,
            phase: None,
            visibility: None,
            phase_defined: false,
        }
    }

    pub fn with_phase(mut self, result: &PhaseResult) -> Self {
        self.phase = Some(result.phase);
        self.visibility = Some(result.visibility);
        self.phase_defined = result.phase_defined;
        self
    }
}

/// Formats a float with 12 significant digits, fixed-point where reasonable
/// and scientific otherwise (printf `%g` semantics, 12 digits).
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        format!("{:.11e}", x)
    } else {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        fixed
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_g12).unwrap_or_default()
}

pub fn to_csv_row(r: &Record) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.command,
        r.method,
        r.steps,
        opt(r.r),
        opt(r.n_x),
        opt(r.n_z),
        opt(r.tau),
        opt(r.theta),
        opt(r.alpha),
        opt(r.chi),
        opt(r.intensity),
        opt(r.phase),
        opt(r.visibility),
        r.phase_defined
    )
}

/// Serializes records as CSV with the fixed header.
pub fn to_csv(records: &[Record]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&to_csv_row(r));
        out.push('\n');
    }
    out
}

/// Serializes records as newline-delimited JSON objects.
pub fn to_json(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

/// Parses CSV output produced by [`to_csv`]; the round trip preserves floats
/// to 12 significant digits.
pub fn parse_csv(text: &str) -> Result<Vec<Record>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty input")?;
    if header != CSV_HEADER {
        return Err(format!("unexpected header: {header}"));
    }
    let mut records = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 14 {
            return Err(format!("line {}: expected 14 fields", lineno + 2));
        }
        let num = |s: &str| -> Result<Option<f64>, String> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse::<f64>().map(Some).map_err(|e| e.to_string())
            }
        };
        records.push(Record {
            command: fields[0].to_string(),
            method: fields[1].to_string(),
            steps: fields[2].parse().map_err(|_| "bad steps")?,
            r: num(fields[3])?,
            n_x: num(fields[4])?,
            n_z: num(fields[5])?,
            tau: num(fields[6])?,
            theta: num(fields[7])?,
            alpha: num(fields[8])?,
            chi: num(fields[9])?,
            intensity: num(fields[10])?,
            phase: num(fields[11])?,
            visibility: num(fields[12])?,
            phase_defined: fields[13] == "true",
        });
    }
    Ok(records)
}
