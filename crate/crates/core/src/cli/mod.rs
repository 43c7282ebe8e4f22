//! The `frobx` command line: session loading, subcommand dispatch and
//! report emission. Exit codes: 0 success, 1 usage or schema, 2 violated
//! mathematical precondition, 3 polynomial parse error, 4 I/O.

mod report;
mod session;

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

pub use report::{Cell, Format, Report, SummaryItem, OBSERVED};
pub use session::{load_session, Session};

use crate::error::Error;
use crate::hilbert::{self, EndDegree};
use crate::lab::{self, Rational, TrickMode};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("session schema: {0}")]
    Schema(String),
    #[error("parse error in {0}")]
    Parse(String),
    #[error("{0}")]
    Math(Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Schema(_) => 1,
            CliError::Math(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed { .. } | Error::UndeclaredVariable { .. } | Error::ExponentOverflow => {
                CliError::Parse(e.to_string())
            }
            Error::BadVariableName(_) | Error::DuplicateVariable(_) => CliError::Schema(e.to_string()),
            other => CliError::Math(other),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "frobx", version, about = "Frobenius and ordinary power invariants over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for profile rows.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    session: PathBuf,
    #[arg(long)]
    ideal: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function, series numerator and dimension of R/I.
    Hilbert {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
    /// Zeroth local cohomology of R/I.
    H0 {
        #[command(flatten)]
        target: Target,
    },
    /// Profile of the Frobenius powers I^[q], q = p..p^emax.
    Frobenius {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        emax: u32,
        /// Cross-check each row with the two-length element trick.
        #[arg(long)]
        trick_element: Option<String>,
    },
    /// Profile of the ordinary powers I^n, n = 1..nmax.
    Powers {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        nmax: u32,
        /// Treat I as a prime of dimension one; saturations are symbolic powers.
        #[arg(long)]
        symbolic: bool,
    },
    /// Frobenius closure and tight closure probes for one element.
    Closure {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        element: String,
        #[arg(long)]
        emax: u32,
        #[arg(long, default_value_t = 4)]
        witness_cap: u32,
    },
    /// The degree bound (alpha, beta) for a plane curve and two generator degrees.
    Bound {
        #[arg(long)]
        curve_degree: u32,
        #[arg(long, value_delimiter = ',', num_args = 1)]
        gen_degrees: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
    },
    /// Run the embedded acceptance corpus.
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

fn end_cell(e: EndDegree) -> Cell {
    match e {
        EndDegree::MinusInfinity => Cell::Text("-inf".into()),
        EndDegree::Degree(d) => d.into(),
    }
}

fn numerator_text(coefficients: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in coefficients.iter().enumerate().filter(|(_, c)| **c != 0) {
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        let mon = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        match (a, mon.is_empty()) {
            (_, true) => out.push_str(&a.to_string()),
            (1, false) => out.push_str(&mon),
            (_, false) => out.push_str(&format!("{a}*{mon}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn target_inputs(r: &mut Report, t: &Target, s: &Session) {
    let ring = s.presentation.ring();
    r.input("session", t.session.display())
        .input("p", ring.characteristic())
        .input("vars", ring.vars().join(", "))
        .input("relations", join(s.presentation.relations()))
        .input("ideal", format!("{} = ({})", t.ideal, join(s.ideal(&t.ideal).map(|i| i.generators()).unwrap_or(&[]))));
}

fn hilbert_report(t: &Target, max_degree: usize) -> Result<Report, CliError> {
    let s = load_session(&t.session)?;
    let i = s.ideal(&t.ideal)?;
    let mut r = Report::new("hilbert");
    target_inputs(&mut r, t, &s);
    r.input("max_degree", max_degree);
    let num = hilbert::hilbert_numerator(i)?;
    r.columns = vec!["d".into(), "dim".into()];
    r.rows = num.dimensions(max_degree)?.into_iter().enumerate().map(|(d, v)| vec![(d as u64).into(), v.into()]).collect();
    r.fact("numerator", numerator_text(&num.coefficients));
    r.fact("denominator", format!("(1 - t)^{}", num.nvars));
    r.fact("krull_dim", hilbert::krull_dimension(i)?.to_string());
    if i.has_finite_colength() {
        r.fact("length", hilbert::length_of_quotient(i)?);
        r.fact("end", end_cell(hilbert::end_degree(i)?));
    }
    Ok(r)
}

fn h0_report(t: &Target) -> Result<Report, CliError> {
    let s = load_session(&t.session)?;
    let i = s.ideal(&t.ideal)?;
    let mut r = Report::new("h0");
    target_inputs(&mut r, t, &s);
    let sat = i.saturation()?;
    let h0 = hilbert::h0_summary_with(i, &sat)?;
    r.columns = vec!["d".into(), "dim".into()];
    r.rows = h0
        .diff
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(d, &v)| vec![(d as u64).into(), v.into()])
        .collect();
    r.fact("saturation", format!("({})", join(sat.basis().elements())));
    r.fact("length", h0.length);
    r.fact("end", end_cell(h0.end));
    r.fact("ann_exp", lab::ann_exponent(i)?);
    Ok(r)
}

fn frobenius_report(t: &Target, emax: u32, trick: Option<&str>) -> Result<Report, CliError> {
    let s = load_session(&t.session)?;
    let i = s.ideal(&t.ideal)?;
    let trick = trick.map(|src| s.parse_element(src)).transpose()?;
    let mut r = Report::new("frobenius");
    target_inputs(&mut r, t, &s);
    r.input("emax", emax);
    let profile = lab::frobenius_profile(i, emax)?;
    r.columns = ["e", "q", "h0_length", "h0_end", "ann_exp", "v", "ratio_hk", "ratio_v"].map(String::from).to_vec();
    r.rows = profile
        .rows
        .iter()
        .map(|row| {
            vec![
                row.e.into(),
                row.q.into(),
                row.h0_length.into(),
                end_cell(row.h0_end),
                row.ann_exp.into(),
                row.v.into(),
                row.ratio_hk.into(),
                row.ratio_v.into(),
            ]
        })
        .collect();
    if let Some(s) = &trick {
        r.input("trick_element", s);
        let lengths = profile
            .rows
            .par_iter()
            .map(|row| lab::element_trick_length(i, s, TrickMode::Frobenius(row.e)))
            .collect::<Result<Vec<_>, _>>()?;
        r.columns.push("trick_length".into());
        for (cells, len) in r.rows.iter_mut().zip(&lengths) {
            cells.push((*len).into());
        }
        let agree = profile.rows.iter().zip(&lengths).all(|(row, l)| row.h0_length == *l);
        r.fact("trick_agrees", agree);
        if !agree {
            r.warnings.push("the element trick disagrees with the saturation route; the element is not general enough".into());
        }
    }
    r.estimate("b_hat", profile.b_hat).estimate("c_hat", profile.c_hat);
    let eghk = lab::eghk_estimate(&profile);
    r.estimate("e_ghk", eghk.value).fact("e_ghk_stable", eghk.exact);
    r.fact("dim", profile.dim as u64);
    Ok(r)
}

fn powers_report(t: &Target, nmax: u32, symbolic: bool) -> Result<Report, CliError> {
    let s = load_session(&t.session)?;
    let i = s.ideal(&t.ideal)?;
    let mut r = Report::new("powers");
    target_inputs(&mut r, t, &s);
    r.input("nmax", nmax).input("symbolic", symbolic);
    let profile = lab::powers_profile(i, nmax, symbolic)?;
    r.columns = ["n", "h0_length", "ann_exp", "alpha_sat", "ratio_alpha", "ratio_len"].map(String::from).to_vec();
    r.rows = profile
        .rows
        .iter()
        .map(|row| {
            vec![
                row.n.into(),
                row.h0_length.into(),
                row.ann_exp.into(),
                row.alpha_sat.into(),
                row.ratio_alpha.into(),
                row.ratio_len.into(),
            ]
        })
        .collect();
    r.estimate("d_hat", profile.d_hat).estimate("waldschmidt_upper", profile.waldschmidt_upper);
    let violations = lab::fekete_violations(&profile);
    r.fact("fekete_subadditive", violations.is_empty());
    r.fact("dim", profile.dim as u64);
    r.warnings = profile.warnings.clone();
    for (m, n) in violations {
        r.warnings.push(format!("alpha_sat is not subadditive at ({m}, {n})"));
    }
    Ok(r)
}

fn closure_report(t: &Target, element: &str, emax: u32, cap: u32) -> Result<Report, CliError> {
    let s = load_session(&t.session)?;
    let i = s.ideal(&t.ideal)?;
    let x = s.parse_element(element)?;
    let mut r = Report::new("closure");
    target_inputs(&mut r, t, &s);
    r.input("element", &x).input("emax", emax).input("witness_cap", cap);
    r.fact("in_ideal", i.contains(&x)?);
    let probe = lab::frobenius_closure_probe(&x, i, emax)?;
    r.fact("frobenius_member_at", probe.member_at).fact("frobenius_checked_up_to", probe.checked_up_to);
    let witness = lab::tight_closure_witness_search(&x, i, cap, emax)?;
    r.estimate("tight_witness", witness.as_ref().map(|w| w.c.to_string()));
    if let Some(w) = &witness {
        r.fact("witness_verified_up_to", w.verified_up_to);
    }
    Ok(r)
}

fn bound_report(d: u32, gens: &[u32], e: &str) -> Result<Report, CliError> {
    let [d1, d2] = gens else {
        return Err(CliError::Usage("--gen-degrees takes exactly two degrees D1,D2".into()));
    };
    let e: Rational = e.trim().parse().map_err(|_| CliError::Usage(format!("`{e}` is not a rational number")))?;
    let mut r = Report::new("bound");
    r.input("curve_degree", d).input("gen_degrees", format!("{d1},{d2}")).input("e", e);
    let (alpha, beta) = lab::brenner_bound(d, *d1, *d2, e)?;
    r.fact("alpha", alpha).fact("beta", beta);
    Ok(r)
}

fn selftest_report(quick: bool) -> (Report, bool) {
    let results = crate::selftest::run_selftest(quick);
    let mut r = Report::new("selftest");
    r.input("quick", quick);
    r.columns = ["criterion", "name", "as_stated", "corrected", "detail"].map(String::from).to_vec();
    r.rows = results
        .iter()
        .map(|c| {
            vec![
                c.id.into(),
                c.name.into(),
                (if c.passed { "PASS" } else { "FAIL" }).into(),
                c.corrected.map(|ok| if ok { "PASS" } else { "FAIL" }).into(),
                c.detail.clone().into(),
            ]
        })
        .collect();
    let passed = results.iter().filter(|c| c.passed).count() as u64;
    let corrected = results.iter().filter(|c| !c.passed && c.corrected == Some(true)).count() as u64;
    r.fact("passed", passed).fact("corrected", corrected).fact("failed", results.len() as u64 - passed - corrected);
    (r, results.iter().all(|c| c.acceptable()))
}

fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            report.write_to(format, &mut f, false).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let stdout = std::io::stdout();
            let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
            let color = !no_color && stdout.is_terminal();
            report.write_to(format, &mut stdout.lock(), color).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    let report = match &cli.command {
        Command::Hilbert { target, max_degree } => hilbert_report(target, *max_degree)?,
        Command::H0 { target } => h0_report(target)?,
        Command::Frobenius { target, emax, trick_element } => {
            frobenius_report(target, *emax, trick_element.as_deref())?
        }
        Command::Powers { target, nmax, symbolic } => powers_report(target, *nmax, *symbolic)?,
        Command::Closure { target, element, emax, witness_cap } => {
            closure_report(target, element, *emax, *witness_cap)?
        }
        Command::Bound { curve_degree, gen_degrees, e } => bound_report(*curve_degree, gen_degrees, e)?,
        Command::Selftest { quick } => {
            let (report, ok) = selftest_report(*quick);
            emit(&report, cli.format, cli.out.as_ref())?;
            return Ok(if ok { 0 } else { 2 });
        }
    };
    emit(&report, cli.format, cli.out.as_ref())?;
    Ok(0)
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to stderr.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return 1;
    }
    let result = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))
        .and_then(|pool| pool.install(|| dispatch(&cli)));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            e.exit_code()
        }
    }
}
