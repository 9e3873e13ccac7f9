//! Machine-readable report payloads: JSON and RFC-4180 CSV.
//!
//! Exact rationals are emitted as `{num, den}` string pairs so no precision
//! is lost; field elements appear as their power-basis indices. Writes are
//! atomic (temp file + rename) so failures never leave partial output.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::Result;
use ffsi_core::interval::{BoundReport, ErrorBound, ScanMode};
use ffsi_core::lfunc::{MomentReport, MomentVerdict};
use ffsi_core::symrep::RepSpec;
use ffsi_core::variety::{CountReport, CountTarget, QuotientTarget};
use ffsi_core::{ArithFnSpec, El};
use num_rational::BigRational;
use serde::Serialize;

/// Exact rational as decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct Rational {
    pub num: String,
    pub den: String,
}

impl Rational {
    pub fn from_big(r: &BigRational) -> Rational {
        Rational { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

/// Reproducibility record attached to JSON payloads. The timestamp is the
/// only field allowed to differ between replays of the same manifest.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub version: String,
    pub timestamp_unix_secs: u64,
}

impl Manifest {
    pub fn new(command: &str, params: Vec<(String, String)>) -> Manifest {
        let timestamp_unix_secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Manifest {
            command: command.to_string(),
            params,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix_secs,
        }
    }
}

/// Canonical flag spelling of an arithmetic function.
pub fn fn_spec_name(spec: &ArithFnSpec) -> String {
    match spec {
        ArithFnSpec::DivisorK(k) => format!("dk:{k}"),
        ArithFnSpec::DivisorRestricted(nu) => format!("dkr:{}", join_usize(nu)),
        ArithFnSpec::Mobius => "mobius".into(),
        ArithFnSpec::VonMangoldt => "lambda".into(),
        ArithFnSpec::Fpi(rep) => format!("fpi:{}", rep_name(rep)),
    }
}

pub fn rep_name(rep: &RepSpec) -> String {
    match rep {
        RepSpec::Sign(_) => "sign".into(),
        RepSpec::ExtStd(_, i) => format!("ext:{i}"),
        RepSpec::YoungInduced(blocks) => format!("young:{}", join_usize(blocks)),
        RepSpec::Irreducible(lambda) => format!("irr:{}", join_usize(lambda)),
    }
}

fn join_usize(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn mode_name(mode: &ScanMode) -> String {
    match mode {
        ScanMode::AllC => "all".into(),
        ScanMode::Sample { count, seed } => format!("sample:{count}:{seed}"),
    }
}

pub fn target_name(target: &CountTarget) -> String {
    match target {
        CountTarget::X => "X".into(),
        CountTarget::Quotient(QuotientTarget::Full) => "quotient:full".into(),
        CountTarget::Quotient(QuotientTarget::Blocks(b)) => {
            format!("quotient:{}", join_usize(b))
        }
        CountTarget::RCone => "rcone".into(),
    }
}

fn els(v: &[El]) -> Vec<u32> {
    v.iter().map(|e| e.0).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBoundOut {
    pub coeff: String,
    pub q_exponent_halves: u64,
    pub approx: f64,
}

impl ErrorBoundOut {
    fn new(b: &ErrorBound, q: u64) -> ErrorBoundOut {
        ErrorBoundOut {
            coeff: b.coeff.to_string(),
            q_exponent_halves: b.q_exponent_halves,
            approx: b.approx(q),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReportOut {
    pub q: u64,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub function: String,
    pub mode: String,
    pub main_term: Rational,
    pub worst_error: Rational,
    pub worst_c: Vec<u32>,
    pub bound: ErrorBoundOut,
    pub ratio: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_c: Option<Vec<(Vec<u32>, i64)>>,
}

impl BoundReportOut {
    pub fn new(r: &BoundReport) -> BoundReportOut {
        BoundReportOut {
            q: r.q,
            p: r.p,
            n: r.n,
            m: r.m,
            function: fn_spec_name(&r.fn_spec),
            mode: mode_name(&r.mode),
            main_term: Rational::from_big(&r.main_term),
            worst_error: Rational::from_big(&r.worst_error),
            worst_c: els(&r.worst_c),
            bound: ErrorBoundOut::new(&r.bound, r.q),
            ratio: r.ratio,
            pass: r.pass,
            per_c: r
                .per_c
                .as_ref()
                .map(|rows| rows.iter().map(|(c, s)| (els(c), *s)).collect()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record([
            "q", "p", "n", "m", "function", "mode", "main_num", "main_den",
            "worst_error_num", "worst_error_den", "worst_c", "bound_coeff",
            "bound_q_exponent_halves", "bound_approx", "ratio", "pass",
        ])?;
        w.write_record([
            self.q.to_string(),
            self.p.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.function.clone(),
            self.mode.clone(),
            self.main_term.num.clone(),
            self.main_term.den.clone(),
            self.worst_error.num.clone(),
            self.worst_error.den.clone(),
            join_u32(&self.worst_c),
            self.bound.coeff.clone(),
            self.bound.q_exponent_halves.to_string(),
            format_float(self.bound.approx),
            format_float(self.ratio),
            self.pass.to_string(),
        ])?;
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReportOut {
    pub q: u64,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub c: Vec<u32>,
    pub target: String,
    pub counts: Vec<(usize, u64)>,
    pub reference: Vec<String>,
    pub slope: Option<f64>,
}

impl CountReportOut {
    pub fn new(r: &CountReport, target: &CountTarget) -> CountReportOut {
        CountReportOut {
            q: r.q,
            p: r.p,
            n: r.n,
            m: r.m,
            c: els(&r.c),
            target: target_name(target),
            counts: r.counts.clone(),
            reference: r.reference.iter().map(|x| x.to_string()).collect(),
            slope: r.slope,
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record([
            "q", "p", "n", "m", "c", "target", "r", "count", "reference", "slope",
        ])?;
        for (i, (r, count)) in self.counts.iter().enumerate() {
            w.write_record([
                self.q.to_string(),
                self.p.to_string(),
                self.n.to_string(),
                self.m.to_string(),
                join_u32(&self.c),
                self.target.clone(),
                r.to_string(),
                count.to_string(),
                self.reference.get(i).cloned().unwrap_or_default(),
                self.slope.map(format_float).unwrap_or_default(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentReportOut {
    pub q: u64,
    pub m: usize,
    pub r: usize,
    pub alphas: Vec<(f64, f64)>,
    pub twist: u32,
    pub value: (f64, f64),
    pub main_term: (f64, f64),
    pub bound: f64,
    pub deviation: f64,
    pub ratio: f64,
    pub verdict: String,
}

impl MomentReportOut {
    pub fn new(r: &MomentReport) -> MomentReportOut {
        MomentReportOut {
            q: r.q,
            m: r.m,
            r: r.r,
            alphas: r.alphas.iter().map(|a| (a.re, a.im)).collect(),
            twist: r.s,
            value: (r.value.re, r.value.im),
            main_term: (r.main_term.re, r.main_term.im),
            bound: r.bound,
            deviation: r.deviation,
            ratio: r.ratio,
            verdict: verdict_name(r.verdict).to_string(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record([
            "q", "m", "r", "alphas", "twist", "value_re", "value_im", "main_re",
            "main_im", "bound", "deviation", "ratio", "verdict",
        ])?;
        let alphas = self
            .alphas
            .iter()
            .map(|(re, im)| format!("{},{}", format_float(*re), format_float(*im)))
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            self.q.to_string(),
            self.m.to_string(),
            self.r.to_string(),
            alphas,
            self.twist.to_string(),
            format_float(self.value.0),
            format_float(self.value.1),
            format_float(self.main_term.0),
            format_float(self.main_term.1),
            format_float(self.bound),
            format_float(self.deviation),
            format_float(self.ratio),
            self.verdict.clone(),
        ])?;
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

pub fn verdict_name(v: MomentVerdict) -> &'static str {
    match v {
        MomentVerdict::Pass => "PASS",
        MomentVerdict::SoftPass => "SOFT-PASS",
        MomentVerdict::Fail => "FAIL",
    }
}

fn join_u32(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

/// Deterministic float formatting for CSV cells.
pub fn format_float(x: f64) -> String {
    let mut s = String::new();
    write!(s, "{x:.12e}").expect("formatting floats cannot fail");
    s
}

/// JSON payload wrapping a report with its manifest.
pub fn json_payload<T: Serialize>(manifest: &Manifest, report: &T) -> Result<String> {
    #[derive(Serialize)]
    struct Payload<'a, T> {
        manifest: &'a Manifest,
        report: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Payload { manifest, report })?;
    s.push('\n');
    Ok(s)
}

/// Write via a temp file in the same directory, then rename into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().map(|n| n.to_string_lossy()).unwrap_or_default()
        )),
        None => std::path::PathBuf::from(format!(
            ".{}.tmp",
            path.file_name().map(|n| n.to_string_lossy()).unwrap_or_default()
        )),
    };
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
