//! Command-line front end. [`run`] never touches the process, so it can be
//! driven from tests; `main` only prints the [`Outcome`] and exits.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;

use crate::binomial::binomial_sweep;
use crate::error::{Error, Result};
use crate::identity::{
    chu_vandermonde_sweep, find_star_violation, verify_ell_one_slice, verify_star_star,
};
use crate::lang::{parse_profile, parse_sequence, parse_weight};
use crate::limit::{
    estimate_limit, run_main_theorem_experiment, run_r_independence_experiment,
    run_shift_invariance_experiment, run_weighted_composition_experiment, ExperimentConfig,
    LimitEstimate, DEFAULT_TOLERANCE, DEFAULT_WINDOW,
};
use crate::numeric::{modulus, render_complex, Mode, Rational, Real};

/// Largest `N` for which `--mode auto` picks exact arithmetic.
pub const AUTO_EXACT_LIMIT: usize = 60;

#[derive(Debug, Parser)]
#[command(name = "eulersum", version, about = "Binomial, convolution and weighted averages of sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep of r-binomial averages E_0 x, ..., E_N x as `N,Re,Im` rows.
    Avg(AvgArgs),
    /// Convolved binomial averages against the correct and the r-dependent limit formula.
    Counterexample(CounterexampleArgs),
    /// Exhaustive checks of the alternating binomial sum and Chu-Vandermonde identities.
    VerifyIdentities(IdentityArgs),
    /// Limit experiments: convolution, shift invariance, r-independence, weighted composition.
    Compose(ComposeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
    /// Exact when N <= 60 and every input is rational, float otherwise.
    Auto,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct AvgArgs {
    #[arg(long)]
    pub seq: String,
    #[arg(long, default_value = "1/2")]
    pub r: String,
    #[arg(long = "N", short = 'N')]
    pub n: usize,
    /// Print one value per line (readable back with `file:`) instead of `N,Re,Im` rows.
    #[arg(long)]
    pub values: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, clap::Args)]
pub struct CounterexampleArgs {
    #[arg(long, default_value = "const:1")]
    pub seq: String,
    #[arg(long, default_value = "finite:1/3,1/3,1/3")]
    pub profile: String,
    #[arg(long, default_value = "1/2")]
    pub r: String,
    #[arg(long = "N", short = 'N', default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, clap::Args)]
pub struct IdentityArgs {
    #[arg(long, default_value_t = 25)]
    pub n_max: u64,
    /// Range of a, b and r for Chu-Vandermonde.
    #[arg(long, default_value_t = 12)]
    pub bound: i64,
    /// Write the closed-form sweep as CSV here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Main,
    Shift,
    RIndependence,
    Weighted,
}

#[derive(Debug, clap::Args)]
pub struct ComposeArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub seq: String,
    /// Convolution weights for `--kind main`.
    #[arg(long, default_value = "finite:1/3,1/3,1/3")]
    pub profile: String,
    /// Weight function for `--kind weighted`.
    #[arg(long, default_value = "linear")]
    pub w: String,
    /// Largest shift depth for `--kind shift`.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value = "1/2")]
    pub r: String,
    /// Smaller r for `--kind r-independence`.
    #[arg(long = "r-prime", default_value = "1/4")]
    pub r_prime: String,
    #[arg(long = "N", short = 'N', default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: usize,
    #[command(flatten)]
    pub common: Common,
}

/// What a command produced: text for stdout, text for stderr, exit code.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn failure(err: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: err.exit_code(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let text = err.render().to_string();
            if code == 0 {
                Outcome { stdout: text, ..Outcome::default() }
            } else {
                Outcome { stderr: text, code, ..Outcome::default() }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Avg(args) => with_mode(args.common.mode, args.n, |m| match m {
            Mode::Exact => cmd_avg::<Rational>(args),
            Mode::Float => cmd_avg::<f64>(args),
        }),
        Command::Counterexample(args) => with_mode(args.common.mode, args.n, |m| match m {
            Mode::Exact => cmd_counterexample::<Rational>(args),
            Mode::Float => cmd_counterexample::<f64>(args),
        }),
        Command::VerifyIdentities(args) => cmd_verify_identities(args),
        Command::Compose(args) => with_mode(args.common.mode, args.n, |m| match m {
            Mode::Exact => cmd_compose::<Rational>(args),
            Mode::Float => cmd_compose::<f64>(args),
        }),
    };
    result.unwrap_or_else(|err| Outcome::failure(&err))
}

/// Resolves `auto`: tries exact arithmetic for small `N` and drops to float
/// if some input (such as `e`) has no rational value.
fn with_mode(mode: ModeArg, n: usize, f: impl Fn(Mode) -> Result<Outcome>) -> Result<Outcome> {
    match mode {
        ModeArg::Exact => f(Mode::Exact),
        ModeArg::Float => f(Mode::Float),
        ModeArg::Auto if n > AUTO_EXACT_LIMIT => f(Mode::Float),
        ModeArg::Auto => match f(Mode::Exact) {
            Err(Error::NotRational(_)) => f(Mode::Float),
            other => other,
        },
    }
}

fn csv_rows<R: Real>(sweep: &[Complex<R>]) -> String {
    let mut out = String::new();
    for (n, z) in sweep.iter().enumerate() {
        let _ = writeln!(out, "{n},{},{}", z.re.render(), z.im.render());
    }
    out
}

/// Sends `csv` to `--out` if given, otherwise appends it to `stdout`.
fn emit(out: &Option<PathBuf>, csv: &str, stdout: &mut String) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, csv).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            stdout.push_str(csv);
            Ok(())
        }
    }
}

fn cmd_avg<R: Real>(args: &AvgArgs) -> Result<Outcome> {
    let x = parse_sequence::<R>(&args.seq)?;
    let r = R::parse_real(&args.r)?;
    let sweep = binomial_sweep(&x, args.n, r)?;
    let csv = if args.values {
        sweep.iter().map(|z| render_complex(z) + "\n").collect()
    } else {
        csv_rows(&sweep)
    };
    let mut stdout = String::new();
    emit(&args.common.out, &csv, &mut stdout)?;
    Ok(Outcome { stdout, ..Outcome::default() })
}

fn config(n: usize, tol: f64, window: usize) -> ExperimentConfig {
    ExperimentConfig::new(n).with_tolerance(tol).with_window(window)
}

fn estimate_line(label: &str, est: &LimitEstimate<impl Real>) -> String {
    format!("{label}: {est}\n")
}

/// `(x_0, ..., x_4, …)`, exact whenever the inputs are rational.
fn convolved_prefix(args: &CounterexampleArgs) -> Result<String> {
    fn render<R: Real>(args: &CounterexampleArgs) -> Result<String> {
        let x = parse_sequence::<R>(&args.seq)?.convolved(parse_profile::<R>(&args.profile)?);
        let parts: Vec<_> = x.prefix(4)?.iter().map(render_complex).collect();
        Ok(format!("({}, …)", parts.join(", ")))
    }
    match render::<Rational>(args) {
        Err(Error::NotRational(_)) => render::<f64>(args),
        other => other,
    }
}

fn cmd_counterexample<R: Real>(args: &CounterexampleArgs) -> Result<Outcome> {
    let x = parse_sequence::<R>(&args.seq)?;
    let profile = parse_profile::<R>(&args.profile)?;
    let r = R::parse_real(&args.r)?;
    let report = run_main_theorem_experiment(
        &x,
        &profile,
        r.clone(),
        config(args.n, args.tol, args.window),
    )?;

    let formulas_gap = modulus(&(report.correct_rhs.clone() - report.incorrect_rhs.clone()));
    let verdict = if formulas_gap <= report.gap_tolerance {
        "formulas coincide"
    } else if report.verdict.is_consistent() && !report.incorrect_verdict.is_consistent() {
        "incorrect formula refuted"
    } else if report.incorrect_verdict.is_consistent() && !report.verdict.is_consistent() {
        "correct formula refuted"
    } else {
        "inconclusive"
    };

    let mut s = String::new();
    let _ = writeln!(s, "mode: {}", R::MODE);
    let _ = writeln!(s, "sequence: {x}");
    let _ = writeln!(s, "weights: {profile}");
    let _ = writeln!(s, "r: {}", r.render());
    let _ = writeln!(s, "convolved prefix: {}", convolved_prefix(args)?);
    s += &estimate_line("limit of E_N x", &report.base);
    s += &estimate_line("limit of E_N (lambda * x)", &report.convolved);
    let _ = writeln!(s, "correct rhs L*sum(lambda): {}", render_complex(&report.correct_rhs));
    let _ = writeln!(
        s,
        "incorrect rhs L*(lambda_0 + sum lambda_n r^(n-1)): {}",
        render_complex(&report.incorrect_rhs)
    );
    let _ = writeln!(s, "gap to correct: {:.3e}", report.gap_to_correct);
    let _ = writeln!(s, "gap to incorrect: {:.3e}", report.gap_to_incorrect);
    let _ = writeln!(s, "verdict: {verdict}");

    if let Some(path) = &args.common.out {
        emit(&Some(path.clone()), &csv_rows(&report.convolved_sweep), &mut s)?;
    }
    let code = if report.convolved.converged { 0 } else { 4 };
    Ok(Outcome { stdout: s, stderr: String::new(), code })
}

fn cmd_verify_identities(args: &IdentityArgs) -> Result<Outcome> {
    let closed = verify_star_star(args.n_max)?;
    let slice = verify_ell_one_slice(args.n_max)?;
    let first = find_star_violation(args.n_max)?;
    let chu = chu_vandermonde_sweep(args.bound)?;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "S(n,k,l) = C(n-k-1, l-1) [{}]: {} cases, {} violations",
        closed.ranges,
        closed.cases.len(),
        closed.violation_count()
    );
    match &first {
        Some(v) => {
            let _ = writeln!(
                s,
                "S(n,k,l) = 1: first violation at (n,k,l) = ({},{},{}), S = {}",
                v.n, v.k, v.l, v.lhs
            );
        }
        None => {
            let _ = writeln!(s, "S(n,k,l) = 1: no violation for n <= {}", args.n_max);
        }
    }
    let _ = writeln!(
        s,
        "S(n,k,1) = 1 [{}]: {} cases, {} violations",
        slice.ranges,
        slice.cases.len(),
        slice.violation_count()
    );
    let _ = writeln!(
        s,
        "Chu-Vandermonde [{}]: {} cases, {} violations",
        chu.ranges,
        chu.cases.len(),
        chu.violation_count()
    );
    if let Some(path) = &args.out {
        emit(&Some(path.clone()), &closed.to_csv(), &mut s)?;
    }
    let ok = closed.all_hold() && slice.all_hold() && chu.all_hold();
    Ok(Outcome { stdout: s, stderr: String::new(), code: if ok { 0 } else { 3 } })
}

fn cmd_compose<R: Real>(args: &ComposeArgs) -> Result<Outcome> {
    let x = parse_sequence::<R>(&args.seq)?;
    let r = R::parse_real(&args.r)?;
    let cfg = config(args.n, args.tol, args.window);
    let mut s = String::new();
    let _ = writeln!(s, "mode: {}", R::MODE);
    let _ = writeln!(s, "sequence: {x}");
    let _ = writeln!(s, "r: {}", r.render());

    let (verdict, claim, csv, converged) = match args.kind {
        Kind::Main => {
            let profile = parse_profile::<R>(&args.profile)?;
            let rep = run_main_theorem_experiment(&x, &profile, r, cfg)?;
            let _ = writeln!(s, "weights: {profile}");
            s += &estimate_line("limit of E_N x", &rep.base);
            s += &estimate_line("limit of E_N (lambda * x)", &rep.convolved);
            let _ = writeln!(s, "L*sum(lambda): {}", render_complex(&rep.correct_rhs));
            let _ = writeln!(s, "gap: {:.3e}", rep.gap_to_correct);
            (
                rep.verdict,
                "limit = L*sum(lambda)",
                csv_rows(&rep.convolved_sweep),
                rep.convolved.converged,
            )
        }
        Kind::Shift => {
            let rep = run_shift_invariance_experiment(&x, args.k, r.clone(), cfg)?;
            s += &estimate_line("limit of E_N x", &rep.base);
            for (j, est) in rep.shifted.iter().enumerate() {
                s += &estimate_line(&format!("limit of E_N T^{} x", j + 1), est);
            }
            let _ = writeln!(s, "largest gap: {:.3e}", rep.max_gap);
            let deepest = x.clone().shift_right(args.k);
            let csv = csv_rows(&binomial_sweep(&deepest, args.n, r)?);
            let converged = rep.shifted.iter().all(|e| e.converged);
            (rep.verdict, "shift invariance", csv, converged)
        }
        Kind::RIndependence => {
            let r_prime = R::parse_real(&args.r_prime)?;
            let rep = run_r_independence_experiment(&x, r, r_prime.clone(), cfg)?;
            let _ = writeln!(s, "r': {}", r_prime.render());
            s += &estimate_line("limit at r", &rep.at_r);
            s += &estimate_line("limit at r'", &rep.at_r_prime);
            let _ = writeln!(s, "gap: {:.3e}", rep.gap);
            let sweep = binomial_sweep(&x, args.n, r_prime)?;
            let converged = estimate_limit(&sweep, args.tol, args.window)?.converged;
            (rep.verdict, "the same limit for r' < r", csv_rows(&sweep), converged)
        }
        Kind::Weighted => {
            let w = parse_weight::<R>(&args.w)?;
            let rep = run_weighted_composition_experiment(&w, &x, r, cfg)?;
            let _ = writeln!(s, "W: {w}");
            s += &estimate_line("limit of E_N x", &rep.base);
            s += &estimate_line("limit of E_N (E^W x)", &rep.composed);
            let _ = writeln!(s, "gap: {:.3e}", rep.gap);
            (
                rep.verdict,
                "limit of E_N x",
                csv_rows(&rep.composed_sweep),
                rep.composed.converged,
            )
        }
    };
    let _ = writeln!(s, "verdict: {verdict} {claim}");
    if let Some(path) = &args.common.out {
        emit(&Some(path.clone()), &csv, &mut s)?;
    }
    Ok(Outcome {
        stdout: s,
        stderr: String::new(),
        code: if converged { 0 } else { 4 },
    })
}
