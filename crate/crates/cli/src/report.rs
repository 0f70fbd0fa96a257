//! Report documents and their JSON, CSV and text renderings.
//!
//! JSON documents carry `"command"` and `"units": "atomic"` tags. CSV output
//! starts with `#`-prefixed `key=value` lines holding the run parameters,
//! followed by a header row and the data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hartmann_susy::susy_halfline::LadderStep;
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig, Suite};
use crate::error::CliError;

pub const UNITS: &str = "atomic";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub units: String,
    pub eta: f64,
    pub sigma: f64,
    pub m: i64,
    pub capital_m: f64,
    pub gamma: f64,
}

impl Header {
    pub fn new(cfg: &RunConfig) -> Self {
        Self {
            units: UNITS.to_string(),
            eta: cfg.eta,
            sigma: cfg.sigma,
            m: cfg.m,
            capital_m: cfg.capital_m,
            gamma: cfg.gamma,
        }
    }

    fn meta(&self) -> Vec<(&'static str, String)> {
        vec![
            ("units", self.units.clone()),
            ("eta", self.eta.to_string()),
            ("sigma", self.sigma.to_string()),
            ("m", self.m.to_string()),
            ("capital_m", self.capital_m.to_string()),
            ("gamma", self.gamma.to_string()),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    pub n: f64,
    pub l: f64,
    pub energy_analytic: f64,
    pub energy_oracle: Option<f64>,
    pub deviation: Option<f64>,
    pub within_tolerance: bool,
    pub ladder: Vec<LadderStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    #[serde(flatten)]
    pub header: Header,
    /// Relative tolerance on the oracle eigenvalues.
    pub tolerance: f64,
    pub rows: Vec<SpectrumLine>,
    /// Why the oracle could not produce eigenvalues, if it failed.
    pub oracle_error: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub r: f64,
    pub u: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionDoc {
    #[serde(flatten)]
    pub header: Header,
    pub n: f64,
    pub l: f64,
    pub energy: f64,
    /// `|⟨u,u⟩ − 1|` from the gamma-function inner product.
    pub normalization_residual: f64,
    /// Same, by numerical quadrature.
    pub normalization_residual_quadrature: f64,
    pub rows: Vec<WaveSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub suite: String,
    pub name: String,
    /// Absent when the check could not be evaluated.
    pub measured: Option<f64>,
    pub limit: f64,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    #[serde(flatten)]
    pub header: Header,
    pub suite: Suite,
    pub checks: Vec<CheckLine>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateLabel {
    pub n: f64,
    pub l: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartnerLine {
    pub l: f64,
    /// `−½(L+½)²`.
    pub susy_eigenvalue: f64,
    /// `½(N−½)² − ½(L+½)²`.
    pub shifted_eigenvalue: f64,
    pub bose: StateLabel,
    /// `None` for the ground state, which has no partner.
    pub fermi: Option<StateLabel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartnerDoc {
    #[serde(flatten)]
    pub header: Header,
    pub n: f64,
    pub delta: f64,
    pub n_prime: f64,
    pub delta_prime: f64,
    /// `δ′/N′ − δ/N`.
    pub energy_check: f64,
    pub rows: Vec<PartnerLine>,
    pub missing_ground: StateLabel,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Document {
    Spectrum(SpectrumDoc),
    Eigenfunction(EigenfunctionDoc),
    Verify(VerifyDoc),
    Partner(PartnerDoc),
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl Document {
    pub fn header(&self) -> &Header {
        match self {
            Document::Spectrum(d) => &d.header,
            Document::Eigenfunction(d) => &d.header,
            Document::Verify(d) => &d.header,
            Document::Partner(d) => &d.header,
        }
    }

    pub fn command(&self) -> &'static str {
        match self {
            Document::Spectrum(_) => "spectrum",
            Document::Eigenfunction(_) => "eigenfunction",
            Document::Verify(_) => "verify",
            Document::Partner(_) => "partner",
        }
    }

    /// Whether every check in the document passed.
    pub fn passed(&self) -> bool {
        match self {
            Document::Spectrum(d) => d.passed,
            Document::Eigenfunction(_) => true,
            Document::Verify(d) => d.passed,
            Document::Partner(d) => d.passed,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }

    fn meta(&self) -> Vec<(&'static str, String)> {
        let mut meta = vec![("command", self.command().to_string())];
        meta.extend(self.header().meta());
        match self {
            Document::Spectrum(d) => {
                meta.push(("tolerance", d.tolerance.to_string()));
                meta.push(("passed", d.passed.to_string()));
            }
            Document::Eigenfunction(d) => {
                meta.push(("n", d.n.to_string()));
                meta.push(("l", d.l.to_string()));
                meta.push(("energy", d.energy.to_string()));
                meta.push((
                    "normalization_residual",
                    d.normalization_residual.to_string(),
                ));
                meta.push((
                    "normalization_residual_quadrature",
                    d.normalization_residual_quadrature.to_string(),
                ));
            }
            Document::Verify(d) => {
                meta.push(("passed", d.passed.to_string()));
            }
            Document::Partner(d) => {
                meta.push(("n", d.n.to_string()));
                meta.push(("delta", d.delta.to_string()));
                meta.push(("n_prime", d.n_prime.to_string()));
                meta.push(("delta_prime", d.delta_prime.to_string()));
                meta.push(("energy_check", d.energy_check.to_string()));
                meta.push(("passed", d.passed.to_string()));
            }
        }
        meta
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = String::from("#");
        for (k, v) in self.meta() {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
        let mut w = csv::Writer::from_writer(Vec::new());
        match self {
            Document::Spectrum(d) => {
                w.write_record([
                    "n",
                    "l",
                    "energy_analytic",
                    "energy_oracle",
                    "deviation",
                    "within_tolerance",
                ])?;
                for r in &d.rows {
                    w.write_record([
                        r.n.to_string(),
                        r.l.to_string(),
                        r.energy_analytic.to_string(),
                        opt(r.energy_oracle),
                        opt(r.deviation),
                        r.within_tolerance.to_string(),
                    ])?;
                }
            }
            Document::Eigenfunction(d) => {
                w.write_record(["r", "u", "R"])?;
                for s in &d.rows {
                    w.write_record([s.r.to_string(), s.u.to_string(), s.big_r.to_string()])?;
                }
            }
            Document::Verify(d) => {
                w.write_record(["suite", "name", "measured", "limit", "passed", "note"])?;
                for c in &d.checks {
                    w.write_record([
                        c.suite.clone(),
                        c.name.clone(),
                        c.measured.map(|m| m.to_string()).unwrap_or_default(),
                        c.limit.to_string(),
                        c.passed.to_string(),
                        c.note.clone().unwrap_or_default(),
                    ])?;
                }
            }
            Document::Partner(d) => {
                w.write_record([
                    "l",
                    "susy_eigenvalue",
                    "shifted_eigenvalue",
                    "n",
                    "delta",
                    "n_prime",
                    "delta_prime",
                ])?;
                for r in &d.rows {
                    w.write_record([
                        r.l.to_string(),
                        r.susy_eigenvalue.to_string(),
                        r.shifted_eigenvalue.to_string(),
                        r.bose.n.to_string(),
                        r.bose.delta.to_string(),
                        opt(r.fermi.map(|f| f.n)),
                        opt(r.fermi.map(|f| f.delta)),
                    ])?;
                }
            }
        }
        let body = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let h = self.header();
        let mut out = format!(
            "{} (units: {}, |M| = {}, gamma = {})\n",
            self.command(),
            h.units,
            h.capital_m,
            h.gamma
        );
        match self {
            Document::Spectrum(d) => {
                let _ = writeln!(
                    out,
                    "{:>12} {:>12} {:>22} {:>22} {:>10}",
                    "N", "L", "E analytic", "E oracle", "delta"
                );
                for r in &d.rows {
                    let _ = writeln!(
                        out,
                        "{:>12.6} {:>12.6} {:>22.15e} {:>22} {:>10}",
                        r.n,
                        r.l,
                        r.energy_analytic,
                        r.energy_oracle.map_or("-".into(), |e| format!("{e:.15e}")),
                        r.deviation.map_or("-".into(), |e| format!("{e:.2e}")),
                    );
                }
                if let Some(e) = &d.oracle_error {
                    let _ = writeln!(out, "oracle failed: {e}");
                }
                let _ = writeln!(
                    out,
                    "{} (relative tolerance {:e})",
                    if d.passed { "PASS" } else { "FAIL" },
                    d.tolerance
                );
            }
            Document::Eigenfunction(d) => {
                let _ = writeln!(
                    out,
                    "N = {}, L = {}, E = {:.15e}, normalization residual {:.2e} (quadrature {:.2e})",
                    d.n, d.l, d.energy, d.normalization_residual, d.normalization_residual_quadrature
                );
                let _ = writeln!(out, "{:>14} {:>24} {:>24}", "r", "u", "R");
                for s in &d.rows {
                    let _ = writeln!(out, "{:>14.6} {:>24.15e} {:>24.15e}", s.r, s.u, s.big_r);
                }
            }
            Document::Verify(d) => {
                for c in &d.checks {
                    let _ = writeln!(
                        out,
                        "[{}] {}/{}: measured {}, limit {:.1e}{}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.suite,
                        c.name,
                        c.measured.map_or("n/a".to_string(), |m| format!("{m:.3e}")),
                        c.limit,
                        c.note.as_ref().map_or(String::new(), |n| format!(" ({n})"))
                    );
                }
                let failed = d.checks.iter().filter(|c| !c.passed).count();
                let _ = writeln!(out, "{} checks, {} failed", d.checks.len(), failed);
            }
            Document::Partner(d) => {
                let _ = writeln!(
                    out,
                    "(N, delta) = ({}, {}) -> (N', delta') = ({}, {}); delta'/N' - delta/N = {:e}",
                    d.n, d.delta, d.n_prime, d.delta_prime, d.energy_check
                );
                let _ = writeln!(
                    out,
                    "{:>10} {:>16} {:>16} {:>30} {:>30}",
                    "L",
                    "SUSY eigenvalue",
                    "shifted",
                    "bose (N, L, delta)",
                    "fermi (N', L, delta')"
                );
                for r in &d.rows {
                    let fermi = r
                        .fermi
                        .map_or("(no partner: ground state)".to_string(), |f| {
                            format!("({}, {}, {:.6})", f.n, f.l, f.delta)
                        });
                    let _ = writeln!(
                        out,
                        "{:>10.6} {:>16.6} {:>16.6} {:>30} {:>30}",
                        r.l,
                        r.susy_eigenvalue,
                        r.shifted_eigenvalue,
                        format!("({}, {}, {:.6})", r.bose.n, r.bose.l, r.bose.delta),
                        fermi
                    );
                }
                let _ = writeln!(
                    out,
                    "missing ground state: (N, L) = ({}, {})",
                    d.missing_ground.n, d.missing_ground.l
                );
            }
        }
        out
    }
}

/// Parses a JSON report, rejecting anything not in atomic units.
pub fn decode_json(text: &str) -> Result<Document, CliError> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.header().units != UNITS {
        return Err(CliError::Decode(format!(
            "expected units \"{UNITS}\", found \"{}\"",
            doc.header().units
        )));
    }
    Ok(doc)
}

/// A CSV report split into its `#` metadata and its table.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub meta: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn meta_f64(&self, key: &str) -> Result<f64, CliError> {
        let v = self
            .meta
            .get(key)
            .ok_or_else(|| CliError::Decode(format!("missing metadata key {key}")))?;
        v.parse()
            .map_err(|_| CliError::Decode(format!("metadata {key} is not a number: {v}")))
    }

    /// Numeric column; empty cells are `None`.
    pub fn column(&self, name: &str) -> Result<Vec<Option<f64>>, CliError> {
        let idx = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| CliError::Decode(format!("missing column {name}")))?;
        self.rows
            .iter()
            .map(|row| {
                let cell = row[idx].trim();
                if cell.is_empty() {
                    Ok(None)
                } else {
                    cell.parse().map(Some).map_err(|_| {
                        CliError::Decode(format!("column {name}: not a number: {cell}"))
                    })
                }
            })
            .collect()
    }
}

/// Parses CSV produced by [`Document::to_csv`] (or written by hand in the
/// same layout).
pub fn parse_csv(text: &str) -> Result<CsvTable, CliError> {
    let mut meta = BTreeMap::new();
    let mut body_start = 0;
    for line in text.split_inclusive('\n') {
        let Some(rest) = line.trim_end_matches(['\r', '\n']).strip_prefix('#') else {
            break;
        };
        body_start += line.len();
        for token in rest.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| CliError::Decode(format!("metadata token without '=': {token}")))?;
            if k.is_empty() {
                return Err(CliError::Decode("empty metadata key".into()));
            }
            meta.insert(k.to_string(), v.to_string());
        }
    }
    if let Some(u) = meta.get("units") {
        if u != UNITS {
            return Err(CliError::Decode(format!(
                "expected units {UNITS}, found {u}"
            )));
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(&text.as_bytes()[body_start..]);
    let columns: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if columns.is_empty() || columns.iter().all(|c| c.is_empty()) {
        return Err(CliError::Decode("missing header row".into()));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        rows.push(record?.iter().map(str::to_string).collect());
    }
    Ok(CsvTable {
        meta,
        columns,
        rows,
    })
}
