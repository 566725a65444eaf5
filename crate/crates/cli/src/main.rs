//! `divlab`: division polynomials, discriminant bounds, local divisibility
//! sweeps and Galois cohomology from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or config
//! error, 3 computation cap or domain error, 4 precondition failure (such
//! as a point that is not on the curve).

mod groups;
mod input;
mod output;
mod walkthrough;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use divlab::arith::{Rational, UniPoly};
use divlab::bounds::{bound_pipeline, budget_primes, schmidt_discriminant, DEFAULT_ENUMERATION_CAP};
use divlab::descent::{descent_chain, example_abscissa_report};
use divlab::divpoly::{division_poly, preimage_poly, torsion_abscissa_poly};
use divlab::galois::{
    density_threshold, h1_and_h1loc, local_condition_check, sigma_params, verify_thm22_core, DEFAULT_GROUP_CAP,
};
use divlab::heights::{check_min_poly_bound, log_height_multiquad, log_height_poly, log_height_poly_places};
use divlab::padic::{sweep, DivisibilityTest, Mode};
use serde::Serialize;
use serde_json::json;

use input::CurveInput;
use output::{csv_line, emit, json};

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { code: 2, message: msg.into() }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError { code: 3, message: msg.into() }
    }
}

impl From<divlab::Error> for CliError {
    fn from(e: divlab::Error) -> Self {
        let code = if e.is_precondition() { 4 } else { 3 };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "divlab", version, about = "Division fields, local divisibility and Galois cohomology of elliptic curves")]
struct Cli {
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Upper limit on enumerated objects (group elements, matrix scans).
    #[arg(long, global = true, env = "DIVLAB_CAP")]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct CurveArgs {
    /// Built-in curve: paper-sec6, torsion7-a, torsion7-b, torsion5-a, torsion5-b.
    #[arg(long, conflicts_with_all = ["config", "b", "c"])]
    curve: Option<String>,
    /// JSON config with decimal-string fields {b, c} or {alpha, beta, gamma}.
    #[arg(long, conflicts_with_all = ["b", "c"])]
    config: Option<PathBuf>,
    #[arg(short, long, allow_hyphen_values = true, requires = "c")]
    b: Option<String>,
    #[arg(short, long, allow_hyphen_values = true, requires = "b")]
    c: Option<String>,
}

impl CurveArgs {
    fn resolve(&self) -> Result<CurveInput, CliError> {
        if let Some(name) = &self.curve {
            return input::builtin(name);
        }
        if let Some(path) = &self.config {
            return input::CurveConfig::load(path)?.resolve();
        }
        match (&self.b, &self.c) {
            (Some(b), Some(c)) => input::CurveConfig {
                b: Some(b.clone()),
                c: Some(c.clone()),
                alpha: None,
                beta: None,
                gamma: None,
                label: None,
            }
            .resolve(),
            _ => Err(CliError::usage("give a curve with --curve, --config or -b/-c")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Division polynomial Psi_m, or the preimage polynomial of [m] over x_P.
    Divpoly {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(short, long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        preimage_x: Option<String>,
    },
    /// Discriminant height bound B(m, b, c) with its intermediate steps.
    Bound {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(short, long)]
        m: u32,
        #[arg(long)]
        group_order: Option<u64>,
    },
    /// Closed-form discriminant of Psi_m against the computed one.
    Schmidt {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(short, long)]
        m: u32,
    },
    /// Height of a rational, a tower element such as "27+6*sqrt(7)", or a
    /// polynomial given by ascending coefficients.
    Height {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "poly")]
        value: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "value")]
        poly: Option<String>,
    },
    /// Local divisibility of a rational point by m at one prime.
    LocalTest {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(short, long)]
        m: u32,
        #[arg(short, long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Abscissa)]
        mode: ModeArg,
    },
    /// Local divisibility at every prime up to a limit.
    Sweep {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(short, long)]
        m: u32,
        #[arg(long)]
        limit: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Abscissa)]
        mode: ModeArg,
        #[arg(long)]
        group_order: Option<u64>,
    },
    /// Local-condition failing set of a cocycle.
    Cocycle {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        cocycle: String,
    },
    /// H^1 and H^1_loc by enumeration.
    H1loc {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        cocycle: Option<String>,
        #[arg(long, default_value_t = CLI_H1_MAX_ORDER)]
        max_order: usize,
        #[arg(long, default_value_t = CLI_H1_MAX_MODULUS)]
        max_modulus: u64,
    },
    /// Exhaustive check of the involution and order-3 claims mod p^r.
    GaloisVerify {
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        r: u32,
    },
    /// Quartic model, lift of a quartic point, [m]D and the 4-torsion.
    Descent {
        /// alpha,beta,gamma with sum 0; defaults to 9,6,-15.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["curve", "config"])]
        legendre: Option<String>,
        /// Built-in or config curve with a Legendre form.
        #[arg(long, conflicts_with = "config")]
        curve: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(short, long, allow_hyphen_values = true, default_value = "4")]
        s: String,
        #[arg(short, long, allow_hyphen_values = true, default_value = "1")]
        t: String,
        #[arg(short, long, default_value_t = 4)]
        m: u32,
        /// Also check the 16 listed 4-divisor coordinates.
        #[arg(long)]
        abscissas: bool,
    },
    /// Reproduces the worked example with one PASS/FAIL line per check.
    PaperExample {
        #[arg(long, default_value_t = 1000)]
        limit: u64,
        /// Override b (negative control).
        #[arg(short, long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(short, long, allow_hyphen_values = true)]
        c: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Abscissa,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Abscissa => Mode::Abscissa,
            ModeArg::Full => Mode::Full,
        }
    }
}

// Wider than the library defaults so that small cyclic groups such as
// <eta> mod 25 run without flags; the cocycle candidate cap still bounds work.
const CLI_H1_MAX_ORDER: usize = 1024;
const CLI_H1_MAX_MODULUS: u64 = 32;

/// Largest sweep limit accepted without an explicit `--cap`.
const DEFAULT_SWEEP_CAP: u64 = 10_000_000;

struct Ctx {
    out: Option<PathBuf>,
    format: Format,
    cap: Option<u64>,
}

impl Ctx {
    fn json_only(&self, cmd: &str) -> Result<(), CliError> {
        if self.format == Format::Csv {
            return Err(CliError::usage(format!("{cmd} has no CSV output")));
        }
        Ok(())
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        emit(&json(value)?, self.out.as_deref())
    }
}

fn require_m3(m: u32) -> Result<(), CliError> {
    if m < 3 {
        return Err(CliError::usage("m ≥ 3 required"));
    }
    Ok(())
}

fn coeff_strings(f: &UniPoly) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

fn rational(s: &str) -> Result<Rational, CliError> {
    divlab::arith::parse_rational(s).map_err(|e| CliError::usage(e.to_string()))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let ctx = Ctx { out: cli.out, format: cli.format, cap: cli.cap };
    let group_cap = ctx.cap.unwrap_or(DEFAULT_GROUP_CAP);
    match cli.command {
        Command::Divpoly { curve, m, preimage_x } => {
            let e = curve.resolve()?;
            let (kind, poly) = match &preimage_x {
                Some(x) => {
                    if m == 0 {
                        return Err(CliError::usage("m ≥ 1 required"));
                    }
                    ("preimage", preimage_poly(&e.curve, m, &rational(x)?)?)
                }
                None => {
                    if m < 2 {
                        return Err(CliError::usage("m ≥ 2 required"));
                    }
                    ("division", division_poly(&e.curve, m)?.poly)
                }
            };
            let coefficients = coeff_strings(&poly);
            match ctx.format {
                Format::Json => ctx.emit_json(&json!({
                    "curve": e.label,
                    "kind": kind,
                    "m": m,
                    "preimage_x": preimage_x,
                    "degree": poly.degree(),
                    "coefficients": coefficients,
                }))?,
                Format::Csv => {
                    let mut s = csv_line(&["power".into(), "coefficient".into()]);
                    for (i, c) in coefficients.iter().enumerate() {
                        s.push_str(&csv_line(&[i.to_string(), c.clone()]));
                    }
                    emit(&s, ctx.out.as_deref())?;
                }
            }
        }
        Command::Bound { curve, m, group_order } => {
            require_m3(m)?;
            let e = curve.resolve()?;
            let mut report = bound_pipeline(&e.curve, m)?;
            report.density_threshold = group_order.map(|g| 1.0 / g as f64);
            let note = match budget_primes(report.prime_budget, DEFAULT_ENUMERATION_CAP) {
                Ok(ps) => format!("{} primes within the budget", ps.len()),
                Err(_) => format!(
                    "log budget {} exceeds the log enumeration cap {}; primes are not listed",
                    divlab::bounds::format_float(report.prime_budget),
                    DEFAULT_ENUMERATION_CAP
                ),
            };
            match ctx.format {
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("serializable");
                    v["curve"] = json!(e.label);
                    v["budget_note"] = json!(note);
                    ctx.emit_json(&v)?;
                }
                Format::Csv => {
                    let v = serde_json::to_value(&report).expect("serializable");
                    let mut s = csv_line(&["field".into(), "value".into()]);
                    flatten("", &v, &mut |k, val| s.push_str(&csv_line(&[k, val])));
                    emit(&s, ctx.out.as_deref())?;
                }
            }
        }
        Command::Schmidt { curve, m } => {
            ctx.json_only("schmidt")?;
            require_m3(m)?;
            if m > 10 {
                return Err(CliError::domain("m ≤ 10 supported for exact discriminants"));
            }
            let e = curve.resolve()?;
            let closed = schmidt_discriminant(&e.curve, m)?;
            let psi = division_poly(&e.curve, m)?.poly.discriminant()?;
            let torsion = torsion_abscissa_poly(&e.curve, m)?.discriminant()?;
            ctx.emit_json(&json!({
                "curve": e.label,
                "m": m,
                "closed_form": closed.to_string(),
                "disc_psi": psi.to_string(),
                "equal": closed == psi,
                "disc_torsion_abscissas": torsion.to_string(),
                "equal_torsion_abscissas": closed == torsion,
            }))?;
        }
        Command::Height { value, poly } => {
            ctx.json_only("height")?;
            if let Some(p) = poly {
                let f = UniPoly::new(input::rationals(&p)?);
                ctx.emit_json(&json!({
                    "poly": coeff_strings(&f),
                    "height_primitive": log_height_poly(&f)?,
                    "height_places": log_height_poly_places(&f)?,
                }))?;
            } else {
                let x = input::tower_expression(value.as_deref().expect("required by clap"))?;
                let mut v = json!({
                    "value": x.to_string(),
                    "tower": x.tower().radicands(),
                    "height": log_height_multiquad(&x),
                });
                if !x.is_rational() {
                    let f = x.min_poly();
                    let b = check_min_poly_bound(&x)?;
                    v["min_poly"] = json!(coeff_strings(&f));
                    v["min_poly_height"] = json!(b.h_falpha);
                    v["min_poly_bound_holds"] = json!(b.holds);
                }
                ctx.emit_json(&v)?;
            }
        }
        Command::LocalTest { curve, point, m, p, mode } => {
            ctx.json_only("local-test")?;
            if !divlab::primes::is_prime(p) {
                return Err(CliError::usage(format!("{p} is not prime")));
            }
            if m < 2 {
                return Err(CliError::usage("m ≥ 2 required"));
            }
            let e = curve.resolve()?;
            let (x, y) = input::point(&point)?;
            let test = DivisibilityTest::new(&e.curve, (&x, &y), m)?;
            let r = test.run(p, mode.into())?;
            ctx.emit_json(&json!({
                "curve": e.label,
                "point": [x.to_string(), y.to_string()],
                "m": m,
                "mode": Mode::from(mode),
                "preimage_degree": test.preimage().degree(),
                "report": r,
            }))?;
        }
        Command::Sweep { curve, point, m, limit, mode, group_order } => {
            if m < 2 {
                return Err(CliError::usage("m ≥ 2 required"));
            }
            if limit < 2 {
                return Err(CliError::usage("limit ≥ 2 required"));
            }
            let cap = ctx.cap.unwrap_or(DEFAULT_SWEEP_CAP);
            if limit > cap {
                return Err(CliError::domain(format!("limit {limit} exceeds cap {cap}")));
            }
            let e = curve.resolve()?;
            let (x, y) = input::point(&point)?;
            let r = sweep(&e.label, &e.curve, (&x, &y), m, limit, mode.into(), group_order)?;
            match ctx.format {
                Format::Json => ctx.emit_json(&r)?,
                Format::Csv => emit(&r.csv(), ctx.out.as_deref())?,
            }
            if ctx.out.is_some() {
                println!("{}", r.summary_line());
            } else {
                eprintln!("{}", r.summary_line());
            }
        }
        Command::Cocycle { group, cocycle } => {
            ctx.json_only("cocycle")?;
            let g = groups::parse_group(&group, group_cap)?;
            let z = groups::parse_cocycle(&cocycle, &g)?;
            let failing = local_condition_check(&z);
            let params: Option<Vec<[u64; 4]>> = failing.iter().map(sigma_params).collect();
            ctx.emit_json(&json!({
                "group": group,
                "group_order": g.order(),
                "cocycle": cocycle,
                "valid_cocycle": true,
                "failing_set": failing,
                "failing_count": failing.len(),
                "failing_params": params,
            }))?;
        }
        Command::H1loc { group, cocycle, max_order, max_modulus } => {
            ctx.json_only("h1loc")?;
            let g = groups::parse_group(&group, group_cap)?;
            let mut r = h1_and_h1loc(&g, max_order, max_modulus)?;
            if let Some(spec) = cocycle {
                r.failing_set = Some(local_condition_check(&groups::parse_cocycle(&spec, &g)?));
            }
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["group"] = json!(group);
            v["h1loc_trivial"] = json!(r.h1loc_order == 1);
            v["density_threshold"] = json!(density_threshold(&g));
            ctx.emit_json(&v)?;
        }
        Command::GaloisVerify { p, r } => {
            ctx.json_only("galois-verify")?;
            let report = verify_thm22_core(p, r, group_cap)?;
            ctx.emit_json(&report)?;
        }
        Command::Descent { legendre, curve, config, s, t, m, abscissas } => {
            ctx.json_only("descent")?;
            let from_input = match (&curve, &config) {
                (Some(name), _) => Some(input::builtin(name)?),
                (None, Some(path)) => Some(input::CurveConfig::load(path)?.resolve()?),
                _ => None,
            };
            let curve = match from_input {
                Some(e) => e
                    .legendre
                    .ok_or_else(|| CliError::usage(format!("curve {} has no Legendre form", e.label)))?,
                None => {
                    let v = input::rationals(legendre.as_deref().unwrap_or("9,6,-15"))?;
                    let [a, b, g]: [Rational; 3] =
                        v.try_into().map_err(|_| CliError::usage("--legendre needs alpha,beta,gamma"))?;
                    divlab::descent::LegendreCurve::new(a, b, g)
                        .map_err(|e| CliError::usage(format!("invalid Legendre curve: {e}")))?
                }
            };
            let report = descent_chain(&curve, &rational(&s)?, &rational(&t)?, m)?;
            let mut v = serde_json::to_value(&report).expect("serializable");
            if abscissas {
                v["abscissas"] = serde_json::to_value(example_abscissa_report(&curve.short())?).expect("serializable");
            }
            ctx.emit_json(&v)?;
        }
        Command::PaperExample { limit, b, c } => {
            if !(2..=1000).contains(&limit) {
                return Err(CliError::usage("--limit must lie in 2..=1000"));
            }
            let (b0, c0) = (divlab::example::B.to_string(), divlab::example::C.to_string());
            let curve = divlab::divpoly::Curve::new(rational(b.as_deref().unwrap_or(&b0))?, rational(c.as_deref().unwrap_or(&c0))?)
                .map_err(|e| CliError::usage(format!("invalid curve: {e}")))?;
            let checks = walkthrough::run(&walkthrough::Options { curve, limit });
            let failed: Vec<&str> =
                checks.iter().filter(|c| c.status == walkthrough::Status::Fail).map(|c| c.name).collect();
            let text = match ctx.format {
                Format::Json => json(&checks)?,
                Format::Csv => {
                    let mut s = csv_line(&["index".into(), "name".into(), "status".into(), "detail".into()]);
                    for c in &checks {
                        s.push_str(&csv_line(&[c.index.to_string(), c.name.into(), format!("{:?}", c.status).to_uppercase(), c.detail.clone()]));
                    }
                    s
                }
            };
            if ctx.out.is_some() || ctx.format == Format::Csv {
                emit(&text, ctx.out.as_deref())?;
            }
            if ctx.out.is_some() || ctx.format == Format::Json {
                for c in &checks {
                    println!("{}", c.line());
                }
            }
            if !failed.is_empty() {
                eprintln!("failed: {}", failed.join(", "));
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// `a.b.c = value` pairs for CSV rendering of nested reports.
fn flatten(prefix: &str, v: &serde_json::Value, f: &mut dyn FnMut(String, String)) {
    match v {
        serde_json::Value::Object(o) => {
            for (k, v) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, f);
            }
        }
        serde_json::Value::Null => f(prefix.to_string(), String::new()),
        serde_json::Value::Number(n) if n.is_f64() => {
            f(prefix.to_string(), divlab::bounds::format_float(n.as_f64().expect("f64")))
        }
        other => f(prefix.to_string(), other.to_string().trim_matches('"').to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
