mod literal;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use stateint::quadrature::height_band;
use stateint::report::{complex_to_json, real_to_json, strip_set_to_json, to_json};
use stateint::verify::{format_table, run, Suite};
use stateint::{
    evaluate_residue_sum, evaluate_thm1, evaluator, faddeev, state_integral_numeric, Error, IntegrandSpec, Options,
    Pair, Report,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "stateint", version, about = "Quantum-dilogarithm state-integrals at rational b² = M/N")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the AB state-integral by closed form, residue sum and/or quadrature.
    Eval(EvalArgs),
    /// Evaluate the pretzel state-integral by residue sum and/or quadrature.
    Pretzel(PretzelArgs),
    /// Evaluate Φ_b at one point, by the integral, the closed form, or both.
    Phi(PhiArgs),
    /// List the strip points of a gluing equation.
    Roots(RootsArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long = "M")]
    m: u64,
    #[arg(long = "N")]
    n: u64,
}

#[derive(Args)]
struct QuadArgs {
    /// Height of the horizontal contour.
    #[arg(long, allow_negative_numbers = true)]
    height: Option<f64>,
    /// Initial truncation half-width.
    #[arg(long)]
    half_width: Option<f64>,
    /// Initial number of panels.
    #[arg(long)]
    panels: Option<usize>,
    /// Target accuracy of the quadrature.
    #[arg(long)]
    quad_tol: Option<f64>,
    #[arg(long)]
    max_refinements: Option<usize>,
}

impl QuadArgs {
    fn options(&self) -> Options {
        Options {
            height: self.height,
            half_width: self.half_width,
            panels: self.panels,
            tol: self.quad_tol,
            max_refinements: self.max_refinements,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalMethod {
    Closed,
    Residue,
    Quadrature,
    All,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "A")]
    a: u32,
    #[arg(long = "B")]
    b: u32,
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long, value_enum, default_value = "closed")]
    method: EvalMethod,
    /// Largest accepted difference between methods.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PretzelMethod {
    Residue,
    Quadrature,
    All,
}

#[derive(Args)]
struct PretzelArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long, value_enum, default_value = "residue")]
    method: PretzelMethod,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PhiMethod {
    Integral,
    Closed,
    Both,
}

#[derive(Args)]
struct PhiArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Complex argument, e.g. 0.1+0.05i.
    #[arg(long, allow_hyphen_values = true, value_parser = literal::parse_complex)]
    x: Complex64,
    #[arg(long, value_enum, default_value = "integral")]
    method: PhiMethod,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Args)]
struct RootsArgs {
    #[arg(long = "A", requires = "b", conflicts_with = "pretzel")]
    a: Option<u32>,
    #[arg(long = "B", requires = "a")]
    b: Option<u32>,
    /// Use the pretzel gluing equation.
    #[arg(long, required_unless_present = "a")]
    pretzel: bool,
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| format!("unknown suite '{}' (all|phi|sums|thm1|thm2|pretzel|props)", s))
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: Error,
}

fn usage(error: Error) -> Failure {
    Failure { code: EXIT_USAGE, error }
}

fn computation(error: Error) -> Failure {
    Failure { code: 1, error }
}

fn error_json(e: &Error) -> String {
    format!(
        "{{\"error\":{},\"message\":{}}}",
        serde_json::to_string(e.kind()).unwrap(),
        serde_json::to_string(&e.to_string()).unwrap()
    )
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.16e} {} {:.16e}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

fn make_pair(p: &PairArgs) -> Result<Pair, Failure> {
    Pair::new(p.m, p.n).map_err(usage)
}

fn check_lambda(spec: &IntegrandSpec, pair: &Pair, lambda: Option<f64>) -> Result<(), Failure> {
    if let Some(l) = lambda {
        let (lo, hi) = spec.lambda_range(pair);
        if !(l > lo && l < hi) {
            return Err(usage(Error::InvalidParameter(format!("lambda = {} outside ({}, {})", l, lo, hi))));
        }
    }
    Ok(())
}

fn check_quad(spec: &IntegrandSpec, pair: &Pair, q: &QuadArgs) -> Result<(), Failure> {
    if let Some(h) = q.height {
        let (lo, hi) = height_band(spec, pair);
        if !(h > lo && h < hi) {
            return Err(usage(Error::BandViolation { height: h, lo, hi }));
        }
    }
    if let Some(t) = q.quad_tol {
        if !(t >= 1e-13) {
            return Err(usage(Error::InvalidParameter(format!("quadrature tolerance {} below 1e-13", t))));
        }
    }
    if matches!(q.half_width, Some(w) if !(w > 0.0)) || q.panels == Some(0) {
        return Err(usage(Error::InvalidParameter("half-width and panels must be positive".into())));
    }
    Ok(())
}

/// Prints the reports and their pairwise differences; fails on a mismatch.
fn emit_reports(reports: &[Report], tol: f64, output: Output) -> Result<(), Failure> {
    let mut diffs = Vec::new();
    for i in 0..reports.len() {
        for j in i + 1..reports.len() {
            diffs.push((reports[i].method, reports[j].method, (reports[i].value - reports[j].value).norm()));
        }
    }
    match output {
        Output::Json => {
            for r in reports {
                println!("{}", to_json(r));
            }
            if !diffs.is_empty() {
                let items: Vec<String> = diffs
                    .iter()
                    .map(|(a, b, d)| format!("{{\"a\":\"{}\",\"b\":\"{}\",\"abs_diff\":{}}}", a.name(), b.name(), real_to_json(*d)))
                    .collect();
                println!("{{\"differences\":[{}],\"tol\":{}}}", items.join(","), real_to_json(tol));
            }
        }
        Output::Text => {
            for r in reports {
                println!("{:<12} {}", r.method.name(), fmt_c(r.value));
                println!("{:<12} lambda = {}, strip points = {}", "", r.lambda, r.strip_points.len());
                if let Some(e) = r.diagnostics.est_error {
                    println!(
                        "{:<12} est_error = {:.3e}, height = {}, truncation = {}, panels = {}",
                        "",
                        e,
                        r.diagnostics.contour_height.unwrap_or(f64::NAN),
                        r.diagnostics.truncation.unwrap_or(f64::NAN),
                        r.diagnostics.panels.unwrap_or(0)
                    );
                }
            }
            for (a, b, d) in &diffs {
                println!("|{} - {}| = {:.3e}", a.name(), b.name(), d);
            }
        }
    }
    match diffs.iter().find(|d| !(d.2 < tol)) {
        Some((a, b, d)) => Err(Failure {
            code: EXIT_MISMATCH,
            error: Error::NoConvergence(format!("{} and {} differ by {:.3e} > {:.1e}", a.name(), b.name(), d, tol)),
        }),
        None => Ok(()),
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Failure> {
    let spec = IntegrandSpec::ab(args.a, args.b).map_err(usage)?;
    let pair = make_pair(&args.pair)?;
    check_lambda(&spec, &pair, args.lambda)?;
    check_quad(&spec, &pair, &args.quad)?;
    let m = args.method;
    let mut reports = Vec::new();
    if m == EvalMethod::Closed || m == EvalMethod::All {
        reports.push(evaluate_thm1(&spec, &pair, args.lambda).map_err(computation)?);
    }
    if m == EvalMethod::Residue || m == EvalMethod::All {
        reports.push(evaluate_residue_sum(&spec, &pair, args.lambda).map_err(computation)?);
    }
    if m == EvalMethod::Quadrature || m == EvalMethod::All {
        reports.push(state_integral_numeric(&spec, &pair, &args.quad.options()).map_err(computation)?);
    }
    emit_reports(&reports, args.tol, args.output)
}

fn cmd_pretzel(args: &PretzelArgs) -> Result<(), Failure> {
    let spec = IntegrandSpec::Pretzel;
    let pair = make_pair(&args.pair)?;
    check_lambda(&spec, &pair, args.lambda)?;
    check_quad(&spec, &pair, &args.quad)?;
    let m = args.method;
    let mut reports = Vec::new();
    if m != PretzelMethod::Quadrature {
        reports.push(evaluate_residue_sum(&spec, &pair, args.lambda).map_err(computation)?);
    }
    if m != PretzelMethod::Residue {
        reports.push(state_integral_numeric(&spec, &pair, &args.quad.options()).map_err(computation)?);
    }
    emit_reports(&reports, args.tol, args.output)
}

fn cmd_phi(args: &PhiArgs) -> Result<(), Failure> {
    let pair = make_pair(&args.pair)?;
    let x = args.x;
    let integral = match args.method {
        PhiMethod::Closed => None,
        _ => Some(faddeev::phi(pair.b, x).map_err(computation)?),
    };
    let closed = match args.method {
        PhiMethod::Integral => None,
        _ => {
            let z = (x + pair.c_b) * (std::f64::consts::TAU * pair.s);
            Some(faddeev::phi_rational(&pair, z).map_err(computation)?)
        }
    };
    let diff = match (integral, closed) {
        (Some(a), Some(b)) => Some((a - b).norm()),
        _ => None,
    };
    match args.output {
        Output::Json => {
            let mut fields = vec![
                format!("\"params\":{{\"M\":{},\"N\":{}}}", pair.m, pair.n),
                format!("\"x\":{}", complex_to_json(x)),
            ];
            if let Some(v) = integral {
                fields.push(format!("\"integral\":{}", complex_to_json(v)));
            }
            if let Some(v) = closed {
                fields.push(format!("\"closed_form\":{}", complex_to_json(v)));
            }
            if let Some(d) = diff {
                fields.push(format!("\"abs_diff\":{}", real_to_json(d)));
            }
            println!("{{{}}}", fields.join(","));
        }
        Output::Text => {
            if let Some(v) = integral {
                println!("{:<12} {}", "integral", fmt_c(v));
            }
            if let Some(v) = closed {
                println!("{:<12} {}", "closed_form", fmt_c(v));
            }
            if let Some(d) = diff {
                println!("|integral - closed_form| = {:.3e}", d);
            }
        }
    }
    match diff {
        Some(d) if !(d < args.tol) => Err(Failure {
            code: EXIT_MISMATCH,
            error: Error::NoConvergence(format!("integral and closed form differ by {:.3e}", d)),
        }),
        _ => Ok(()),
    }
}

fn cmd_roots(args: &RootsArgs) -> Result<(), Failure> {
    let spec = match (args.a, args.b) {
        (Some(a), Some(b)) => IntegrandSpec::ab(a, b).map_err(usage)?,
        _ => IntegrandSpec::Pretzel,
    };
    let pair = make_pair(&args.pair)?;
    check_lambda(&spec, &pair, args.lambda)?;
    let (lambda, pts) = evaluator::resolve_strip(&spec, &pair, args.lambda).map_err(computation)?;
    match args.output {
        Output::Json => println!("{}", strip_set_to_json(&spec, &pair, lambda, &pts)),
        Output::Text => {
            println!("{} at (M, N) = ({}, {}), lambda = {}: {} strip points", spec.name(), pair.m, pair.n, lambda, pts.len());
            for p in &pts {
                println!(
                    "w = {}   z = {}   Im log z / pi = {:.12}",
                    fmt_c(p.w),
                    fmt_c(p.z),
                    p.log_z.value.im / std::f64::consts::PI
                );
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let checks = run(args.suite, args.seed);
    print!("{}", format_table(&checks));
    match checks.iter().filter(|c| !c.passed()).count() {
        0 => Ok(()),
        n => Err(Failure { code: EXIT_MISMATCH, error: Error::NoConvergence(format!("{} checks failed", n)) }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Pretzel(a) => cmd_pretzel(a),
        Command::Phi(a) => cmd_phi(a),
        Command::Roots(a) => cmd_roots(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if f.code == EXIT_USAGE {
                eprintln!("error [{}]: {}", f.error.kind(), f.error);
            } else {
                println!("{}", error_json(&f.error));
            }
            ExitCode::from(f.code)
        }
    }
}
