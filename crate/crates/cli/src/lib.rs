//! Command-line driver for `cyclofactor`.
//!
//! Exit codes: 0 on success, 1 on an input or I/O error, 2 when a requested
//! verification fails.

pub mod document;
pub mod golden;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclofactor::poly::text::CoeffStyle;
use cyclofactor::subgroups::ClaimStatus;
use cyclofactor::{
    factor_cyclotomic, factor_cyclotomic_special, factor_special, factor_x2nd_minus_1, subgroup_report, verify,
    Factorization, FieldCtx, SubgroupReport,
};

use crate::document::{render_json, render_text, OutputDocument};
use crate::golden::{run_examples, ExampleOutcome};

/// Targets up to this degree are also cross-checked against the brute-force
/// factorization when `--verify` is given.
pub const ORACLE_LIMIT: u64 = 2048;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cyclofactor",
    version,
    about = "Explicit factorizations of x^(2^n d) - 1 and cyclotomic polynomials over F_q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor x^(2^n d) - 1 into irreducibles over F_q.
    Factor(ProblemArgs),
    /// Factor the cyclotomic polynomial of order 2^n d over F_q.
    Cyclotomic(ProblemArgs),
    /// Report the square and odd-order subgroups of F_q^* and check their structure.
    Subgroup(SubgroupArgs),
    /// Recompute the worked examples and compare with the reference values.
    Examples(ExamplesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pretty {
    Canonical,
    Balanced,
}

impl From<Pretty> for CoeffStyle {
    fn from(p: Pretty) -> Self {
        match p {
            Pretty::Canonical => CoeffStyle::Canonical,
            Pretty::Balanced => CoeffStyle::Balanced,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the output to this file (atomically) instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// An odd prime below 2^31.
    #[arg(long)]
    pub q: u64,
    /// An odd divisor of q - 1 (an odd prime for `cyclotomic`).
    #[arg(long, required_unless_present = "special", conflicts_with = "special")]
    pub d: Option<u64>,
    /// Use d = t for q = 2t+1 or q = 4t+1 with t prime.
    #[arg(long)]
    pub special: bool,
    #[arg(long)]
    pub n: u32,
    /// Check the product, every factor's irreducibility, and (for small
    /// targets) agreement with brute-force factorization.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value = "canonical")]
    pub pretty: Pretty,
    /// Worker threads for emission and verification.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SubgroupArgs {
    #[arg(long)]
    pub q: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExamplesArgs {
    /// Only the example for this prime (347, 23, 149, 53 or 59).
    #[arg(long)]
    pub only: Option<u64>,
    /// Shift one computed coefficient before comparing; every selected
    /// example must then fail.
    #[arg(long, hide = true)]
    pub perturb: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: msg.into() }
}

impl From<cyclofactor::Error> for Failure {
    fn from(e: cyclofactor::Error) -> Self {
        input_error(e.to_string())
    }
}

/// The rendered output and whether every requested check passed.
pub struct Outcome {
    pub body: String,
    pub ok: bool,
}

fn compute_factorization(cmd: &str, a: &ProblemArgs, ctx: &FieldCtx) -> Result<Factorization, Failure> {
    let fact = match (cmd, a.d) {
        ("factor", Some(d)) => factor_x2nd_minus_1(ctx, d, a.n)?,
        ("factor", None) => factor_special(ctx, a.n)?,
        (_, Some(d)) => factor_cyclotomic(ctx, d, a.n)?,
        (_, None) => factor_cyclotomic_special(ctx, a.n)?,
    };
    Ok(fact)
}

fn problem(cmd: &str, a: &ProblemArgs) -> Result<Outcome, Failure> {
    let ctx = FieldCtx::new(a.q)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs as usize)
        .build()
        .map_err(|e| input_error(format!("cannot start {} worker threads: {e}", a.jobs)))?;
    pool.install(|| {
        let fact = compute_factorization(cmd, a, &ctx)?;
        let verification = if a.verify { Some(verify(&fact, &ctx, ORACLE_LIMIT)?) } else { None };
        let doc = OutputDocument::from_factorization(cmd, &fact, &ctx, a.pretty.into(), verification);
        let ok = verification.is_none_or(|v| v.passed());
        let body = match a.output.format {
            Format::Json => render_json(&doc),
            Format::Text => render_text(&doc),
        };
        Ok(Outcome { body, ok })
    })
}

fn status_str(s: ClaimStatus) -> &'static str {
    match s {
        ClaimStatus::Verified => "verified",
        ClaimStatus::Failed => "FAILED",
        ClaimStatus::NotApplicable => "n/a",
    }
}

pub fn render_subgroup_text(r: &SubgroupReport) -> String {
    let mut out = String::new();
    writeln!(out, "# subgroup q={}", r.q).unwrap();
    let special = match r.special {
        Some(cyclofactor::SpecialPrime::TwoTPlusOne { t }) => format!("q = 2t+1, t = {t}"),
        Some(cyclofactor::SpecialPrime::FourTPlusOne { t }) => format!("q = 4t+1, t = {t}"),
        None => "none".to_string(),
    };
    writeln!(out, "special: {special}").unwrap();
    match r.s_q_generator {
        Some(g) => writeln!(out, "S_q: order {}, generator {}", r.s_q_order, g.value()).unwrap(),
        None => writeln!(out, "S_q: order {}", r.s_q_order).unwrap(),
    }
    writeln!(out, "O_q: order {}, generator {}", r.o_q_order, r.o_q_generator.value()).unwrap();
    for c in &r.claims {
        writeln!(out, "claim {}: {}", c.name, status_str(c.status)).unwrap();
    }
    out
}

fn subgroup(a: &SubgroupArgs) -> Result<Outcome, Failure> {
    let ctx = FieldCtx::new(a.q)?;
    let report = subgroup_report(&ctx);
    let body = match a.output.format {
        Format::Json => render_json(&report),
        Format::Text => render_subgroup_text(&report),
    };
    Ok(Outcome { body, ok: report.all_hold() })
}

pub fn render_examples_text(outcomes: &[ExampleOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        writeln!(out, "# example q={}: {}", o.q, if o.passed() { "pass" } else { "FAIL" }).unwrap();
        for c in &o.checks {
            if c.ok {
                writeln!(out, "  ok    {} = {}", c.what, c.actual).unwrap();
            } else {
                writeln!(out, "  FAIL  {}", c.what).unwrap();
                writeln!(out, "        - expected {}", c.expected).unwrap();
                writeln!(out, "        + actual   {}", c.actual).unwrap();
            }
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    writeln!(out, "# {passed}/{} examples pass", outcomes.len()).unwrap();
    out
}

fn examples(a: &ExamplesArgs) -> Result<Outcome, Failure> {
    if let Some(q) = a.only {
        if !golden::example_primes().contains(&q) {
            return Err(input_error(format!(
                "no worked example for q = {q}; choose one of {:?}",
                golden::example_primes()
            )));
        }
    }
    let outcomes = run_examples(a.only, a.perturb)?;
    let ok = outcomes.iter().all(ExampleOutcome::passed);
    let body = match a.output.format {
        Format::Json => render_json(&outcomes),
        Format::Text => render_examples_text(&outcomes),
    };
    Ok(Outcome { body, ok })
}

/// Runs a parsed command and returns its output.
pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Factor(a) => problem("factor", a),
        Command::Cyclotomic(a) => problem("cyclotomic", a),
        Command::Subgroup(a) => subgroup(a),
        Command::Examples(a) => examples(a),
    }
}

fn output_args(cli: &Cli) -> &OutputArgs {
    match &cli.command {
        Command::Factor(a) | Command::Cyclotomic(a) => &a.output,
        Command::Subgroup(a) => &a.output,
        Command::Examples(a) => &a.output,
    }
}

/// Writes `body` to `path` by way of a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomically(path: &Path, body: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// The whole program: parse `args`, run, write output, and return the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let written = match &output_args(&cli).out {
        Some(path) => {
            write_atomically(path, &outcome.body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => stdout.write_all(outcome.body.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_INPUT;
    }
    if outcome.ok {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "error: verification failed");
        EXIT_VERIFY
    }
}
