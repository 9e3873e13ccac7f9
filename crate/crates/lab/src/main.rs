//! `ffsi`: command-line driver for short-interval scans, variety point
//! counts, L-function moments, and the verification suites.
//!
//! Exit codes: 0 = pass, 1 = usage or resource error, 2 = a mathematical
//! claim was violated by the data.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use ffsi::report::{
    json_payload, write_atomic, BoundReportOut, CountReportOut, Manifest, MomentReportOut,
};
use ffsi::suites::{render, run_suite, SUITE_NAMES};
use ffsi_core::field::{El, Field};
use ffsi_core::interval::{scan_worst_case, ScanMode};
use ffsi_core::lfunc::{build_unit_group, moment, MomentVerdict, DEFAULT_SOFT_LIMIT};
use ffsi_core::symrep::RepSpec;
use ffsi_core::variety::{count_report, CountTarget, QuotientTarget, VarietySpec};
use ffsi_core::{ArithFnSpec, Budget, Error};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "ffsi", version, about = "Arithmetic statistics laboratory for F_q[T]")]
struct Cli {
    /// Worker pool size (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan short-interval sums of an arithmetic function against the
    /// explicit error bound.
    Sum {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// dk:K | dkr:N1,..,NK | mobius | lambda | fpi:<rep> where <rep> is
        /// sign | ext:I | young:B1,..,BK | irr:L1,..,LK
        #[arg(long = "fn")]
        function: String,
        /// all | sample:COUNT:SEED
        #[arg(long, default_value = "all")]
        mode: String,
        /// json | csv
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        path: Option<PathBuf>,
        /// Keep the per-interval sums in the JSON report.
        #[arg(long)]
        keep_per_c: bool,
    },
    /// Count points of the pinned-coefficient variety, its quotient, or
    /// the singular cone over extension fields.
    Points {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Pinned coefficients: entries separated by ';', each entry a
        /// comma-separated power-basis vector (plain integers when e = 1).
        #[arg(long, default_value = "")]
        c: String,
        #[arg(long, default_value_t = 1)]
        ext_max: usize,
        /// X | quotient:full | quotient:B1,..,BK | rcone
        #[arg(long, default_value = "X")]
        target: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        path: Option<PathBuf>,
    },
    /// Average products of L-values over the primitive even character
    /// family, with the epsilon-twist and soft-constant policy.
    Moments {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        /// Shifts: re,im pairs separated by ';'.
        #[arg(long, default_value = "")]
        alphas: String,
        #[arg(long, default_value_t = 0)]
        twist: u32,
        #[arg(long)]
        soft_limit: Option<f64>,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        path: Option<PathBuf>,
    },
    /// Run a named verification suite and print its PASS/FAIL table.
    Verify {
        /// identities | facfun-oracle | bounds | variety | lfunc | all
        #[arg(long)]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap reserves 2 for usage errors; our contract uses 1
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn budget_from_env() -> Result<Budget> {
    match std::env::var("FFSI_BUDGET") {
        Ok(s) => Ok(Budget(s.parse::<u64>().context("FFSI_BUDGET must be an integer")?)),
        Err(_) => Ok(Budget::default()),
    }
}

fn make_field(p: u64, e: usize) -> Result<Field> {
    Field::new(p, e).map_err(|err| anyhow!("{err}"))
}

fn run(command: Command) -> Result<u8> {
    let budget = budget_from_env()?;
    match command {
        Command::Sum { p, e, n, m, function, mode, out, path, keep_per_c } => {
            let field = make_field(p, e)?;
            let fn_spec = parse_fn(&function, n)?;
            let scan_mode = parse_mode(&mode)?;
            let report = scan_worst_case(&fn_spec, &field, n, m, scan_mode, keep_per_c, budget)
                .map_err(|err| anyhow!("{err}"))?;
            println!(
                "q={} n={} m={} fn={} main={} worst_error={} bound~{:.4} ratio={:.6} {}",
                report.q,
                report.n,
                report.m,
                function,
                report.main_term,
                report.worst_error,
                report.bound.approx(report.q),
                report.ratio,
                if report.pass { "PASS" } else { "FAIL" }
            );
            let manifest = Manifest::new(
                "sum",
                vec![
                    ("p".into(), p.to_string()),
                    ("e".into(), e.to_string()),
                    ("n".into(), n.to_string()),
                    ("m".into(), m.to_string()),
                    ("fn".into(), function.clone()),
                    ("mode".into(), mode.clone()),
                ],
            );
            let payload = BoundReportOut::new(&report);
            emit(&manifest, &payload, payload.to_csv()?, out.as_deref(), path.as_deref())?;
            Ok(if report.pass { 0 } else { 2 })
        }
        Command::Points { p, e, n, m, c, ext_max, target, out, path } => {
            let field = make_field(p, e)?;
            let c = parse_c(&c, &field, m)?;
            let target = parse_target(&target)?;
            let spec = VarietySpec { n, m, c };
            let report = count_report(&field, &spec, &target, ext_max, budget)
                .map_err(|err| anyhow!("{err}"))?;
            for (i, (r, count)) in report.counts.iter().enumerate() {
                println!(
                    "r={r} count={count} reference={}",
                    report.reference.get(i).map(|x| x.to_string()).unwrap_or_default()
                );
            }
            if let Some(slope) = report.slope {
                println!("fitted dimension: {slope:.4}");
            }
            let manifest = Manifest::new(
                "points",
                vec![
                    ("p".into(), p.to_string()),
                    ("e".into(), e.to_string()),
                    ("n".into(), n.to_string()),
                    ("m".into(), m.to_string()),
                    ("ext_max".into(), ext_max.to_string()),
                ],
            );
            let payload = CountReportOut::new(&report, &target);
            emit(&manifest, &payload, payload.to_csv()?, out.as_deref(), path.as_deref())?;
            Ok(0)
        }
        Command::Moments { p, e, m, r, alphas, twist, soft_limit, out, path } => {
            let field = make_field(p, e)?;
            let alphas = parse_alphas(&alphas)?;
            if alphas.len() != r {
                bail!("--r {} does not match {} shifts in --alphas", r, alphas.len());
            }
            let group = build_unit_group(&field, m, budget).map_err(|err| anyhow!("{err}"))?;
            let report = moment(
                &group,
                &alphas,
                twist,
                soft_limit.unwrap_or(DEFAULT_SOFT_LIMIT),
                budget,
            )
            .map_err(|err| anyhow!("{err}"))?;
            println!(
                "q={} m={} r={} twist={} value={:.6}{:+.6}i main={:.6}{:+.6}i deviation={:.6e} bound={:.6e} {:?}",
                report.q,
                report.m,
                report.r,
                report.s,
                report.value.re,
                report.value.im,
                report.main_term.re,
                report.main_term.im,
                report.deviation,
                report.bound,
                report.verdict
            );
            let manifest = Manifest::new(
                "moments",
                vec![
                    ("p".into(), p.to_string()),
                    ("e".into(), e.to_string()),
                    ("m".into(), m.to_string()),
                    ("r".into(), r.to_string()),
                    ("twist".into(), twist.to_string()),
                ],
            );
            let payload = MomentReportOut::new(&report);
            emit(&manifest, &payload, payload.to_csv()?, out.as_deref(), path.as_deref())?;
            Ok(if report.verdict == MomentVerdict::Fail { 2 } else { 0 })
        }
        Command::Verify { suite } => {
            if !SUITE_NAMES.contains(&suite.as_str()) {
                bail!("unknown suite '{suite}'; expected one of {SUITE_NAMES:?}");
            }
            let checks = run_suite(&suite, budget)?;
            print!("{}", render(&checks));
            Ok(if checks.iter().all(|c| c.pass) { 0 } else { 2 })
        }
    }
}

fn emit<T: serde::Serialize>(
    manifest: &Manifest,
    report: &T,
    csv: String,
    out: Option<&str>,
    path: Option<&std::path::Path>,
) -> Result<()> {
    let Some(out) = out else { return Ok(()) };
    let bytes = match out {
        "json" => json_payload(manifest, report)?.into_bytes(),
        "csv" => csv.into_bytes(),
        other => bail!("unknown output format '{other}'; expected json or csv"),
    };
    match path {
        Some(p) => write_atomic(p, &bytes)?,
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    Ok(())
}

fn parse_fn(s: &str, n: usize) -> Result<ArithFnSpec> {
    if s == "mobius" {
        return Ok(ArithFnSpec::Mobius);
    }
    if s == "lambda" {
        return Ok(ArithFnSpec::VonMangoldt);
    }
    if let Some(k) = s.strip_prefix("dk:") {
        return Ok(ArithFnSpec::DivisorK(k.parse().context("dk:K needs an integer K")?));
    }
    if let Some(rest) = s.strip_prefix("dkr:") {
        return Ok(ArithFnSpec::DivisorRestricted(parse_usize_list(rest)?));
    }
    if let Some(rep) = s.strip_prefix("fpi:") {
        return Ok(ArithFnSpec::Fpi(parse_rep(rep, n)?));
    }
    bail!("unknown function '{s}'; expected dk:K, dkr:.., mobius, lambda, or fpi:<rep>")
}

fn parse_rep(s: &str, n: usize) -> Result<RepSpec> {
    if s == "sign" {
        return Ok(RepSpec::Sign(n));
    }
    if let Some(i) = s.strip_prefix("ext:") {
        return Ok(RepSpec::ExtStd(n, i.parse().context("ext:I needs an integer I")?));
    }
    if let Some(rest) = s.strip_prefix("young:") {
        return Ok(RepSpec::YoungInduced(parse_usize_list(rest)?));
    }
    if let Some(rest) = s.strip_prefix("irr:") {
        return Ok(RepSpec::Irreducible(parse_usize_list(rest)?));
    }
    bail!("unknown representation '{s}'; expected sign, ext:I, young:.., or irr:..")
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad integer '{x}'")))
        .collect()
}

fn parse_mode(s: &str) -> Result<ScanMode> {
    if s == "all" {
        return Ok(ScanMode::AllC);
    }
    if let Some(rest) = s.strip_prefix("sample:") {
        let (count, seed) = rest
            .split_once(':')
            .ok_or_else(|| anyhow!("sample mode is sample:COUNT:SEED"))?;
        return Ok(ScanMode::Sample {
            count: count.parse().context("bad sample count")?,
            seed: seed.parse().context("bad sample seed")?,
        });
    }
    bail!("unknown mode '{s}'; expected all or sample:COUNT:SEED")
}

fn parse_c(s: &str, field: &Field, m: usize) -> Result<Vec<El>> {
    let s = s.trim();
    if s.is_empty() {
        if m == 0 {
            return Ok(vec![]);
        }
        bail!("--c must supply {m} pinned coefficients");
    }
    let entries: Vec<&str> = if s.contains(';') || field.degree() > 1 {
        s.split(';').collect()
    } else {
        // prime fields accept the short comma form: --c 0,0
        s.split(',').collect()
    };
    if entries.len() != m {
        bail!("--c supplies {} coefficients but m = {m}", entries.len());
    }
    entries
        .iter()
        .map(|entry| {
            let coeffs: Vec<u64> = entry
                .split(',')
                .map(|x| x.trim().parse::<u64>().with_context(|| format!("bad coefficient '{x}'")))
                .collect::<Result<_>>()?;
            field.from_coeffs(&coeffs).map_err(|err: Error| anyhow!("{err}"))
        })
        .collect()
}

fn parse_alphas(s: &str) -> Result<Vec<Complex64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(';')
        .map(|pair| {
            let (re, im) = pair
                .split_once(',')
                .ok_or_else(|| anyhow!("each shift is re,im; got '{pair}'"))?;
            Ok(Complex64::new(
                re.trim().parse().with_context(|| format!("bad real part '{re}'"))?,
                im.trim().parse().with_context(|| format!("bad imaginary part '{im}'"))?,
            ))
        })
        .collect()
}

fn parse_target(s: &str) -> Result<CountTarget> {
    match s {
        "X" | "x" => Ok(CountTarget::X),
        "rcone" => Ok(CountTarget::RCone),
        _ => {
            if let Some(rest) = s.strip_prefix("quotient:") {
                if rest == "full" {
                    return Ok(CountTarget::Quotient(QuotientTarget::Full));
                }
                return Ok(CountTarget::Quotient(QuotientTarget::Blocks(
                    parse_usize_list(rest)?,
                )));
            }
            bail!("unknown target '{s}'; expected X, quotient:full, quotient:.., or rcone")
        }
    }
}
