use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bloch_core::extended_bloch::Flavor;
use bloch_core::geometric_reps::rep_table;
use bloch_core::knots::{
    cf_value, collapse_zeros, fraction_to_cf, ln_family, ors_substitute, symmetry_and_cs, twist_number,
    volume_bounds, ContinuedFraction, TwoBridgeFraction,
};
use bloch_core::tensor_construction::{tensor_decoration, theorem1_check};
use bloch_core::triangulation::{natural_flavor, ClassData, Triangulation};
use bloch_core::verify::{run_suite, RunConfig, Suite};
use bloch_core::{ClassReport, Decoration, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Number, Value};

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

/// Environment variable overriding the default R-tolerance.
const TOL_ENV: &str = "BLOCH_TOL_R";

/// Significant digits of every printed float outside serialized classes.
const SIG_DIGITS: usize = 15;

#[derive(Parser)]
#[command(name = "bloch", version, about = "Extended Bloch group classes, Rogers dilogarithm checks and 2-bridge knot utilities")]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        run: RunArgs,
        /// Include the wall time of each suite (makes output run dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Fundamental class of a decorated triangulation.
    Class {
        triangulation: PathBuf,
        decoration: PathBuf,
        #[arg(long, value_enum, default_value = "sl2")]
        mode: Mode,
        /// Flavor of the rank-2 class; defaults to psl when an obstruction
        /// cocycle is present.
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
        /// Tolerance for the theorem1 residual.
        #[arg(long)]
        tol_r: Option<f64>,
    },
    /// 2-bridge knot continued fractions.
    Knot {
        #[command(subcommand)]
        command: KnotCommand,
    },
    /// Multipliers of 4-dimensional representations.
    Reps {
        #[command(subcommand)]
        command: RepsCommand,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance of R-identities (default 1e-8, or $BLOCH_TOL_R).
    #[arg(long)]
    tol_r: Option<f64>,
    /// Tolerance of exact branch identities.
    #[arg(long, default_value_t = 1e-12)]
    tol_log: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    FiveTerm,
    Hom,
    Gz,
    Log,
    Corsum,
    Corfive,
    Cancel,
    TensorTable,
    ToyBloch,
    Reps,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sl2,
    Tensor,
    Theorem1,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Sl,
    Psl,
}

#[derive(Subcommand)]
enum KnotCommand {
    /// Value of an expansion such as `2,2`.
    Value {
        #[arg(allow_hyphen_values = true)]
        cf: String,
    },
    /// All-positive expansion of a fraction such as `70/169`.
    Expand { fraction: String },
    /// Zero-collapsed form of an expansion.
    Collapse {
        #[arg(allow_hyphen_values = true)]
        cf: String,
    },
    /// Ohtsuki-Riley-Sakuma expansion `2c + [ε₁b, 2c₁, ε₂b⁻¹, …]`.
    Ors {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long, default_value_t = 0)]
        c: i64,
        /// The interleaved integers c₁, …, c_{l−1}.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        ci: String,
        /// Compare the result against this fraction.
        #[arg(long)]
        expect: Option<String>,
    },
    /// The family Lₙ of 2·3^{n−1} coefficients equal to 2.
    Family {
        #[arg(long)]
        n: u32,
        /// Constants C₁,C₂,C₃,C₄ of the linear volume bounds in the twist number.
        #[arg(long, allow_hyphen_values = true)]
        constants: Option<String>,
    },
    /// Palindrome and q² ≡ −1 mod p tests.
    Symmetry {
        #[arg(allow_hyphen_values = true)]
        cf: String,
    },
}

#[derive(Subcommand)]
enum RepsCommand {
    /// Volume and Chern-Simons multipliers of the ten representations.
    Table,
    /// Exact trace and random matrix checks.
    Check {
        /// Dimension range `lo..hi` of the symmetric powers.
        #[arg(long, default_value = "2..10")]
        n: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Load { .. } => EXIT_IO,
            _ => EXIT_PRECONDITION,
        };
        Failure { code, message: e.to_string() }
    }
}

/// A finished report and whether it passed.
struct Outcome {
    report: Value,
    passed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command).and_then(|out| emit(&out.report, cli.output.as_deref()).map(|()| out.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFICATION),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Verify { suite, run, timing } => verify(suite, &run.config(None)?, timing),
        Command::Class { triangulation, decoration, mode, flavor, tol_r } => {
            class(&triangulation, &decoration, mode, flavor, resolve_tol(tol_r)?)
        }
        Command::Knot { command } => knot(command),
        Command::Reps { command } => reps(command),
    }
}

impl RunArgs {
    fn config(&self, reps_n: Option<(usize, usize)>) -> Result<RunConfig, Failure> {
        let cfg = RunConfig {
            seed: self.seed,
            samples: self.samples,
            tol_r: resolve_tol(self.tol_r)?,
            tol_log: self.tol_log,
            reps_n: reps_n.unwrap_or(RunConfig::default().reps_n),
        };
        cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
        Ok(cfg)
    }
}

/// Flag, then `$BLOCH_TOL_R`, then the default.
fn resolve_tol(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("{TOL_ENV}={s:?} is not a number")))?,
            Err(_) => RunConfig::default().tol_r,
        },
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

fn verify(suite: SuiteArg, cfg: &RunConfig, timing: bool) -> Result<Outcome, Failure> {
    let timed = |s: Suite| -> Result<(Value, bool), Failure> {
        let start = Instant::now();
        let r = run_suite(s, cfg)?;
        let mut v = r.to_json();
        if timing {
            v["wall_time_s"] = json!(start.elapsed().as_secs_f64());
        }
        Ok((v, r.passed()))
    };
    let header = json!({ "seed": cfg.seed, "samples": cfg.samples, "tol_r": cfg.tol_r, "tol_log": cfg.tol_log });
    let one = match suite {
        SuiteArg::All => None,
        SuiteArg::FiveTerm => Some(Suite::FiveTerm),
        SuiteArg::Hom => Some(Suite::Hom),
        SuiteArg::Gz => Some(Suite::Gz),
        SuiteArg::Log => Some(Suite::Log),
        SuiteArg::Corsum => Some(Suite::Corsum),
        SuiteArg::Corfive => Some(Suite::Corfive),
        SuiteArg::Cancel => Some(Suite::Cancel),
        SuiteArg::TensorTable => Some(Suite::TensorTable),
        SuiteArg::ToyBloch => Some(Suite::ToyBloch),
        SuiteArg::Reps => Some(Suite::Reps),
    };
    match one {
        Some(s) => {
            let (mut v, passed) = timed(s)?;
            v["config"] = header;
            Ok(Outcome { report: v, passed })
        }
        None => {
            let mut reports = Vec::new();
            let mut passed = true;
            for s in Suite::ALL {
                let (v, p) = timed(s)?;
                passed &= p;
                reports.push(v);
            }
            Ok(Outcome { report: json!({ "suite": "all", "passed": passed, "config": header, "reports": reports }), passed })
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_IO, message: format!("cannot read {}: {e}", path.display()) })?;
    serde_json::from_str(&text)
        .map_err(|e| Failure { code: EXIT_IO, message: format!("{} is not valid JSON: {e}", path.display()) })
}

fn class(
    tri_path: &Path,
    dec_path: &Path,
    mode: Mode,
    flavor: Option<FlavorArg>,
    tol_r: f64,
) -> Result<Outcome, Failure> {
    let tri = Triangulation::from_json(&read_json(tri_path)?)?;
    let dec = Decoration::from_json(&read_json(dec_path)?)?;
    if dec.n != 2 {
        return Err(Error::Inconsistent(format!("expected a rank-2 decoration, got rank {}", dec.n)).into());
    }
    let flavor = match flavor {
        Some(FlavorArg::Sl) => Flavor::Sl,
        Some(FlavorArg::Psl) => Flavor::Psl,
        None => natural_flavor(&dec),
    };
    match mode {
        Mode::Sl2 => {
            let class = ClassData::new(&tri, &dec, flavor)?.fundamental_class()?;
            Ok(Outcome::ok(ClassReport::new(class).to_json()))
        }
        Mode::Tensor => {
            let dec4 = tensor_decoration(&dec)?;
            let class = ClassData::new(&tri, &dec4, Flavor::Sl)?.fundamental_class()?;
            Ok(Outcome::ok(ClassReport::new(class).to_json()))
        }
        Mode::Theorem1 => {
            let report = theorem1_check(&tri, &dec)?;
            let mut v = report.to_json();
            v["tolerance"] = json!(tol_r);
            Ok(Outcome { report: v, passed: report.residual <= tol_r })
        }
    }
}

fn parse_cf(s: &str) -> Result<ContinuedFraction, Failure> {
    s.parse().map_err(|e: Error| Failure::usage(e.to_string()))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    parse_cf(s).map(|cf| cf.coeffs)
}

fn parse_fraction(s: &str) -> Result<TwoBridgeFraction, Failure> {
    s.parse().map_err(|e: Error| Failure::usage(e.to_string()))
}

fn fraction_json(f: &TwoBridgeFraction) -> Value {
    json!({
        "fraction": f.to_string(),
        "numerator": f.numerator.to_string(),
        "denominator": f.denominator.to_string(),
        "is_knot": f.is_knot(),
    })
}

fn condition_json<T>(r: &bloch_core::Result<T>, ok: impl FnOnce(&T) -> Value) -> Value {
    match r {
        Ok(v) => ok(v),
        Err(e) => json!({ "degenerate": e.to_string() }),
    }
}

fn knot(command: KnotCommand) -> Result<Outcome, Failure> {
    let report = match command {
        KnotCommand::Value { cf } => {
            let cf = parse_cf(&cf)?;
            let mut v = fraction_json(&cf_value(&cf)?);
            v["cf"] = json!(cf.coeffs);
            v
        }
        KnotCommand::Expand { fraction } => {
            let fr = parse_fraction(&fraction)?;
            json!({ "fraction": fr.to_string(), "cf": fraction_to_cf(&fr)?.coeffs })
        }
        KnotCommand::Collapse { cf } => {
            let cf = parse_cf(&cf)?;
            let collapsed = collapse_zeros(&cf)?;
            json!({
                "cf": cf.coeffs,
                "collapsed": collapsed.coeffs,
                "value": condition_json(&cf_value(&collapsed), fraction_json),
            })
        }
        KnotCommand::Ors { b, eps, c, ci, expect } => {
            let b = parse_cf(&b)?;
            let ors = ors_substitute(&b, c, &parse_ints(&ci)?, &parse_ints(&eps)?)?;
            let mut v = json!({
                "b": b.coeffs,
                "c": ors.c,
                "raw": ors.raw.coeffs,
                "raw_value": condition_json(&ors.raw_value, fraction_json),
                "collapsed": condition_json(&ors.collapsed, |cf| json!(cf.coeffs)),
                "collapsed_value": condition_json(&ors.collapsed_value, fraction_json),
                "degree": ors.degree,
                "convention": "[b1,...,bk] = 1/(b1 + 1/(b2 + ...)); b^-1 is b reversed",
            });
            let value = ors.collapsed_value.as_ref().or(ors.raw_value.as_ref()).ok();
            if let Some(f) = value {
                v["equivalent_numerators"] =
                    json!(f.equivalent_numerators().iter().map(|q| q.to_string()).collect::<Vec<_>>());
            }
            if let Some(expect) = expect {
                let want = parse_fraction(&expect)?;
                let matches = value.is_some_and(|f| f.is_equivalent(&want));
                v["expected"] = json!(want.to_string());
                v["matches_expected"] = json!(matches);
                if !matches {
                    v["discrepancy"] = json!(match value {
                        Some(f) => format!(
                            "evaluates to {f}, which is not {want} up to q' = q^(+-1) mod p"
                        ),
                        None => format!("expansion is degenerate, expected {want}"),
                    });
                }
            }
            v
        }
        KnotCommand::Family { n, constants } => {
            let cf = ln_family(n)?;
            let tw = twist_number(&cf)?;
            let mut v = fraction_json(&cf_value(&cf)?);
            v["n"] = json!(n);
            v["length"] = json!(cf.len());
            v["twist_number"] = json!(tw);
            if let Some(c) = constants {
                let c = c
                    .split(',')
                    .map(|t| t.trim().parse::<f64>().map_err(|_| Failure::usage(format!("bad constant {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let c: [f64; 4] =
                    c.try_into().map_err(|_| Failure::usage("expected four constants C1,C2,C3,C4"))?;
                let (lo, hi) = volume_bounds(tw, c);
                v["volume_bounds"] = json!({ "lower": lo, "upper": hi });
            }
            v
        }
        KnotCommand::Symmetry { cf } => {
            let cf = parse_cf(&cf)?;
            let s = symmetry_and_cs(&cf)?;
            let mut v = fraction_json(&s.fraction);
            v["cf"] = json!(cf.coeffs);
            v["symmetric"] = json!(s.symmetric);
            v["q_squared_check"] = json!(s.q_squared_check);
            v["cs_vanishes"] = json!(s.cs_vanishes);
            v
        }
    };
    Ok(Outcome::ok(report))
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("expected a range lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.trim_start_matches('=');
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn reps(command: RepsCommand) -> Result<Outcome, Failure> {
    match command {
        RepsCommand::Table => {
            let rows: Vec<Value> = rep_table()
                .iter()
                .map(|row| {
                    let m = row.rep.multiplier();
                    json!({
                        "rep": row.rep.to_string(),
                        "dim": row.rep.dim(),
                        "ccs": m.ccs,
                        "conj_ccs": m.conj_ccs,
                        "volume": row.vol_mult,
                        "cs": row.cs_mult,
                    })
                })
                .collect();
            Ok(Outcome::ok(json!({ "rows": rows })))
        }
        RepsCommand::Check { n, run } => {
            let cfg = run.config(Some(parse_range(&n)?))?;
            let r = run_suite(Suite::Reps, &cfg)?;
            let mut v = r.to_json();
            v["config"] = json!({ "seed": cfg.seed, "samples": cfg.samples, "tol_r": cfg.tol_r, "n": [cfg.reps_n.0, cfg.reps_n.1] });
            Ok(Outcome { report: v, passed: r.passed() })
        }
    }
}

/// Rounds every float to `SIG_DIGITS` significant digits, leaving the
/// serialized class records at full precision so they round-trip exactly.
fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let r: f64 = format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x);
            Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(m) => Value::Object(
            m.into_iter()
                .map(|(k, v)| if k == "class" && v.is_array() { (k, v) } else { (k, round_floats(v)) })
                .collect::<Map<_, _>>(),
        ),
        other => other,
    }
}

fn emit(report: &Value, output: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(&round_floats(report.clone()))
        .map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Failure { code: EXIT_IO, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}").and_then(|()| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure { code: EXIT_IO, message: format!("cannot write to stdout: {e}") })
                }
                _ => Ok(()),
            }
        }
    }
}
