//! Seeded property checks of the numerical identities, grouped in suites.
//!
//! Every suite draws from its own ChaCha8 stream of the configured seed, so a
//! suite's report does not depend on which other suites ran before it.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C;
use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::complex_kernel::{Lattice, ModLatticeValue};
use crate::extended_bloch::log_rules::{log_rule_residual, LogRule};
use crate::extended_bloch::{apply_symmetry, chi, five_term_defect, shift_pq, FlattenedShape, Symmetry};
use crate::geometric_reps::{
    kappa, kappa_conjugator, mixed_trace_multiplier, nilpotent_traces, rep_table, sym_power, tau,
    tau_minkowski_form, trace_multiplier,
};
use crate::matrix::CMatrix;
use crate::tensor_construction::{
    blochsum_tuple, lifted_lambda_table, ptolemy_closed_table, simplex_cancel, tensor_ptolemy, toy_bloch_check,
    verify_cancellation, verify_corfive, verify_corsum, zpq_of, zpq_table, Region, StandardSimplexCoords,
    TENSOR_WEIGHTS,
};
use crate::triangulation::ptolemy_coords;
use crate::{Error, Result};

/// Failures listed in full per report; the rest are only counted.
const MAX_LISTED_FAILURES: usize = 20;

/// Tolerance of exact (integer) checks.
const EXACT: f64 = 0.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub tol_r: f64,
    pub tol_log: f64,
    /// Dimensions `n` covered by the representation checks.
    pub reps_n: (usize, usize),
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 200, tol_r: 1e-8, tol_log: 1e-12, reps_n: (2, 10) }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Domain("samples must be at least 1".into()));
        }
        if !(self.tol_r > 0.0 && self.tol_log > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        let (lo, hi) = self.reps_n;
        if lo < 1 || lo > hi {
            return Err(Error::Domain(format!("bad dimension range {lo}..{hi}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
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
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::FiveTerm,
        Suite::Hom,
        Suite::Gz,
        Suite::Log,
        Suite::Corsum,
        Suite::Corfive,
        Suite::Cancel,
        Suite::TensorTable,
        Suite::ToyBloch,
        Suite::Reps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FiveTerm => "five-term",
            Suite::Hom => "hom",
            Suite::Gz => "gz",
            Suite::Log => "log",
            Suite::Corsum => "corsum",
            Suite::Corfive => "corfive",
            Suite::Cancel => "cancel",
            Suite::TensorTable => "tensor-table",
            Suite::ToyBloch => "toy-bloch",
            Suite::Reps => "reps",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

/// Aggregate over the cases of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckStats {
    pub name: String,
    pub tolerance: f64,
    pub cases: usize,
    pub max_residual: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub check: String,
    pub case: usize,
    pub input: Value,
    /// `None` when the case raised an error instead of producing a residual.
    pub residual: Option<f64>,
    pub error: Option<String>,
}

/// Outcome of one suite. Per check, failures are empty exactly when the
/// maximal residual is within that check's tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: &'static str,
    pub checks: Vec<CheckStats>,
    pub failures: Vec<Failure>,
    pub failure_count: usize,
}

impl VerificationReport {
    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckStats> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest residual over the checks whose name starts with `prefix`.
    pub fn max_residual_of(&self, prefix: &str) -> f64 {
        self.checks.iter().filter(|c| c.name.starts_with(prefix)).map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "cases": c.cases,
                    "tolerance": c.tolerance,
                    "max_residual": c.max_residual,
                    "failures": c.failures,
                })
            })
            .collect();
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| {
                json!({
                    "check": f.check,
                    "case": f.case,
                    "input": f.input,
                    "residual": f.residual,
                    "error": f.error,
                })
            })
            .collect();
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "cases": self.cases(),
            "max_residual": self.max_residual(),
            "checks": checks,
            "failure_count": self.failure_count,
            "failures": failures,
        })
    }
}

struct Collector {
    suite: &'static str,
    checks: Vec<CheckStats>,
    index: BTreeMap<String, usize>,
    failures: Vec<Failure>,
    failure_count: usize,
}

impl Collector {
    fn new(suite: Suite) -> Self {
        Self { suite: suite.name(), checks: Vec::new(), index: BTreeMap::new(), failures: Vec::new(), failure_count: 0 }
    }

    fn record(&mut self, check: &str, tolerance: f64, input: impl FnOnce() -> Value, outcome: Result<f64>) {
        let i = *self.index.entry(check.to_string()).or_insert_with(|| {
            self.checks.push(CheckStats {
                name: check.to_string(),
                tolerance,
                cases: 0,
                max_residual: 0.0,
                failures: 0,
            });
            self.checks.len() - 1
        });
        let stats = &mut self.checks[i];
        let case = stats.cases;
        stats.cases += 1;
        let (residual, error) = match outcome {
            Ok(r) if r.is_finite() => (Some(r), None),
            Ok(r) => (None, Some(format!("non-finite residual {r}"))),
            Err(e) => (None, Some(e.to_string())),
        };
        let failed = match residual {
            Some(r) => {
                stats.max_residual = stats.max_residual.max(r);
                r > tolerance
            }
            None => {
                stats.max_residual = f64::INFINITY;
                true
            }
        };
        if failed {
            stats.failures += 1;
            self.failure_count += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(Failure { check: check.to_string(), case, input: input(), residual, error });
            }
        }
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            suite: self.suite,
            checks: self.checks,
            failures: self.failures,
            failure_count: self.failure_count,
        }
    }
}

fn rng_for(cfg: &RunConfig, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(suite.stream());
    rng
}

fn cjson(z: C) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn mod4(x: C) -> f64 {
    ModLatticeValue::new(x, Lattice::FourPiSquared).residual_to_zero()
}

/// Minimal distance kept from `0`, `1` and the real axis.
const SAMPLE_MARGIN: f64 = 1e-3;

fn admissible(z: C) -> bool {
    z.im.abs() >= SAMPLE_MARGIN && z.norm() >= SAMPLE_MARGIN && (z - 1.0).norm() >= SAMPLE_MARGIN
}

/// Uniform on `[−3, 4] × [−3, 3]` away from the real axis.
fn sample_z(rng: &mut ChaCha8Rng) -> C {
    loop {
        let z = C::new(rng.random_range(-3.0..4.0), rng.random_range(-3.0..3.0));
        if admissible(z) {
            return z;
        }
    }
}

/// `sample_z` conditioned on the case region, by rejection.
fn sample_z_in(rng: &mut ChaCha8Rng, region: Region) -> C {
    loop {
        let z = sample_z(rng);
        if Region::of(z).ok() == Some(region) {
            return z;
        }
    }
}

/// Log-uniform modulus in `[e⁻¹, e]`, uniform argument.
fn sample_unit_scale(rng: &mut ChaCha8Rng) -> C {
    C::from_polar(rng.random_range(-1.0f64..1.0).exp(), rng.random_range(-PI..PI))
}

/// Standard-form coordinates whose cross ratio lies in `region`.
fn sample_coords(rng: &mut ChaCha8Rng, region: Region, signs: [i64; 4]) -> StandardSimplexCoords<f64> {
    loop {
        let [a, b, c, d, e] = std::array::from_fn(|_| sample_unit_scale(rng));
        let Ok(coords) = StandardSimplexCoords::with_signs(a, b, c, d, e, signs) else { continue };
        let z = coords.cross_ratio();
        if admissible(z) && coords.f.norm() >= SAMPLE_MARGIN && Region::of(z).ok() == Some(region) {
            return coords;
        }
    }
}

fn sample_signs(rng: &mut ChaCha8Rng) -> [i64; 4] {
    std::array::from_fn(|_| if rng.random_bool(0.5) { 1 } else { -1 })
}

fn coords_json(c: &StandardSimplexCoords<f64>) -> Value {
    json!({
        "a": cjson(c.a), "b": cjson(c.b), "c": cjson(c.c), "d": cjson(c.d), "e": cjson(c.e),
        "signs": c.signs,
    })
}

fn sample_sl2(rng: &mut ChaCha8Rng) -> CMatrix<f64> {
    loop {
        let mut g = || C::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let (a, b, c) = (g(), g(), g());
        if a.norm() < 0.2 {
            continue;
        }
        let d = (1.0 + b * c) / a;
        return CMatrix::from_2x2([[a, b], [c, d]]);
    }
}

fn matrix_json(m: &CMatrix<f64>) -> Value {
    let rows: Vec<Value> =
        (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect())).collect();
    Value::Array(rows)
}

fn max_abs(m: &CMatrix<f64>) -> f64 {
    let mut out = 0.0f64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out = out.max(m[(i, j)].norm());
        }
    }
    out
}

/// `|A − B| / (1 + |B|)` in the max-entry norm.
fn rel_diff(a: &CMatrix<f64>, b: &CMatrix<f64>) -> f64 {
    a.max_abs_diff(b) / (1.0 + max_abs(b))
}

/// `|X − F₁⋯F_k|` relative to `dim^{k−1}·Π|Fᵢ|`, the size of the rounding
/// error of the product in the max-entry norm.
fn product_diff(x: &CMatrix<f64>, factors: &[&CMatrix<f64>]) -> f64 {
    let mut prod = factors[0].clone();
    let mut scale = max_abs(factors[0]);
    for f in &factors[1..] {
        prod = &prod * *f;
        scale *= max_abs(f) * f.rows() as f64;
    }
    x.max_abs_diff(&prod) / scale.max(1.0)
}

fn max_imag(m: &CMatrix<f64>) -> f64 {
    let mut out = 0.0f64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out = out.max(m[(i, j)].im.abs());
        }
    }
    out
}

fn poly_diff(a: &[C], b: &[C]) -> f64 {
    let scale = 1.0 + b.iter().map(|c| c.norm()).fold(0.0, f64::max);
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
}

fn shape_diff(a: &FlattenedShape<f64>, e: C, f: C) -> f64 {
    (a.e() - e).norm().max((a.f() - f).norm())
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut rng = rng_for(cfg, suite);
    let mut out = Collector::new(suite);
    match suite {
        Suite::FiveTerm => five_term(&mut rng, cfg, &mut out),
        Suite::Hom => hom(&mut rng, cfg, &mut out),
        Suite::Gz => gz(&mut rng, cfg, &mut out),
        Suite::Log => log(&mut rng, cfg, &mut out),
        Suite::Corsum | Suite::Corfive | Suite::Cancel => corollary(suite, &mut rng, cfg, &mut out),
        Suite::TensorTable => tensor_table(&mut rng, cfg, &mut out),
        Suite::ToyBloch => toy(&mut rng, cfg, &mut out),
        Suite::Reps => reps(&mut rng, cfg, &mut out),
    }
    Ok(out.finish())
}

pub fn run_all(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    Suite::ALL.into_iter().map(|s| run_suite(s, cfg)).collect()
}

fn zpq_input(z: C, p: i64, q: i64) -> impl FnOnce() -> Value {
    move || json!({ "z": cjson(z), "p": p, "q": q })
}

fn five_term(rng: &mut ChaCha8Rng, cfg: &RunConfig, out: &mut Collector) {
    for _ in 0..cfg.samples {
        let z = sample_z(rng);
        let (p, q) = (rng.random_range(-2..=2), rng.random_range(-2..=2));
        let r = blochsum_tuple(z, p, q)
            .and_then(|t| five_term_defect(&t, 1e-9))
            .map(|d| d.residual_to_zero());
        out.record("blochsum", cfg.tol_r, zpq_input(z, p, q), r);
    }
}

fn hom(rng: &mut ChaCha8Rng, cfg: &RunConfig, out: &mut Collector) {
    let i = C::new(0.0, 1.0);
    for _ in 0..cfg.samples {
        let e = loop {
            let e = C::new(rng.random_range(-3.0..3.0), rng.random_range(-12.0..12.0));
            if (1.0 - e.exp()).norm() > SAMPLE_MARGIN {
                break e;
            }
        };
        let r = chi(e).map(|x| mod4(x.rogers().value + PI * i * e));
        out.record("chi", cfg.tol_r, || json!({ "e": cjson(e) }), r);

        let z = sample_z(rng);
        let [p, q, dp, dq] = std::array::from_fn(|_| rng.random_range(-3i64..=3));
        let r = FlattenedShape::from_zpq(z, p, q).map(|s| {
            let (t, corr) = shift_pq(&s, dp, dq);
            t.rogers().residual(&(s.rogers() + corr.rogers()))
        });
        out.record("shift_pq", cfg.tol_r, || json!({ "z": cjson(z), "p": p, "q": q, "dp": dp, "dq": dq }), r);
    }
}

fn gz(rng: &mut ChaCha8Rng, cfg: &RunConfig, out: &mut Collector) {
    for region in Region::ALL {
        for _ in 0..cfg.samples {
            let z = sample_z_in(rng, region);
            let (p, q) = (rng.random_range(-3..=3), rng.random_range(-3..=3));
            for which in Symmetry::ALL {
                if which == Symmetry::ConjVariant && region.upper() {
                    continue;
                }
                let r = FlattenedShape::from_zpq(z, p, q).and_then(|s| {
                    let res = apply_symmetry(&s, which)?;
                    let rhs = ModLatticeValue::new(s.rogers().value * res.sign as f64, Lattice::FourPiSquared)
                        + res.correction.rogers();
                    Ok(res.shape.rogers().residual(&rhs))
                });
                out.record(&format!("{}/{}", which.name(), region.name()), cfg.tol_r, zpq_input(z, p, q), r);
            }
        }
    }
}

fn log(rng: &mut ChaCha8Rng, cfg: &RunConfig, out: &mut Collector) {
    for region in Region::ALL {
        for _ in 0..cfg.samples {
            let z = sample_z_in(rng, region);
            for rule in LogRule::ALL {
                let r = log_rule_residual(rule, z);
                out.record(&format!("{}/{}", rule.name(), region.name()), cfg.tol_log, || json!({ "z": cjson(z) }), r);
            }
        }
    }
}

fn corollary(suite: Suite, rng: &mut ChaCha8Rng, cfg: &RunConfig, out: &mut Collector) {
    for region in Region::ALL {
        for _ in 0..cfg.samples {
            let z = sample_z_in(rng, region);
            let (p, q) = (rng.random_range(-3..=3), rng.random_range(-3..=3));
            let r = match suite {
                Suite::Corsum => verify_corsum(z, p, q),
                Suite::Corfive => verify_corfive(z, p, q),
                _ => verify_cancellation(z, p, q),
            };
            out.record(&format!("{}/{}", suite.name(), region.name()), cfg.tol_r, zpq_input(z, p, q), r);
            if suite == Suite::Cancel {
                let signs = sample_signs(rng);
                let coords = sample_coords(rng, region, signs);
                let r = simplex_cancel(&coords).map(|s| s.residual);
                out.record(&format!("simplex/{}", region.name()), cfg.tol_r, || coords_json(&coords), r);
            }
        }
    }
}

fn tensor_table(rng: &mut ChaCha8Rng, cfg: &RunConfig, out: &mut Collector) {
    for region in Region::ALL {
        for _ in 0..cfg.samples {
            let coords = sample_coords(rng, region, [1; 4]);
            let input = || coords_json(&coords);

            let mats = coords.standard_matrices().map(|m| m.kron(&m.conj()));
            let oracle = ptolemy_coords([&mats[0], &mats[1], &mats[2], &mats[3]], 4);
            let table = tensor_ptolemy(&coords);
            let r = TENSOR_WEIGHTS
                .iter()
                .map(|t| {
                    let want = oracle.get(t).ok_or_else(|| Error::MissingLift(format!("{t:?}")))?;
                    Ok((table[t] - want).norm() / want.norm())
                })
                .collect::<Result<Vec<f64>>>()
                .map(|v| v.into_iter().fold(0.0, f64::max));
            out.record(&format!("table_vs_determinant/{}", region.name()), cfg.tol_r, input, r);

            let lambda = lifted_lambda_table(&coords);
            let r = lambda.as_ref().map_err(Clone::clone).and_then(|lam| {
                let closed = ptolemy_closed_table(&coords)?;
                Ok(lam.iter().zip(closed.iter()).map(|(s, &(e, f))| shape_diff(s, e, f)).fold(0.0, f64::max))
            });
            out.record(&format!("closed_vs_lambda/{}", region.name()), cfg.tol_r, input, r);

            let r = lambda.as_ref().map_err(Clone::clone).and_then(|lam| {
                let (z, p, q) = zpq_of(&coords)?;
                let zt = zpq_table(z, p, q)?;
                Ok(lam.iter().zip(zt.iter()).map(|(s, t)| shape_diff(s, t.e(), t.f())).fold(0.0, f64::max))
            });
            out.record(&format!("zpq_vs_ptolemy/{}", region.name()), cfg.tol_r, input, r);
        }
    }
}

fn toy(rng: &mut ChaCha8Rng, cfg: &RunConfig, out: &mut Collector) {
    for _ in 0..cfg.samples {
        let z = sample_z(rng);
        out.record("toy_bloch", cfg.tol_r, || json!({ "z": cjson(z) }), toy_bloch_check(z));
    }
}

/// Volume and Chern-Simons multipliers of the ten rows, in table order.
const EXPECTED_REP_TABLE: [(i64, i64); 10] =
    [(10, 10), (-10, 10), (0, 4), (4, 4), (-4, 4), (2, 2), (0, 2), (1, 1), (-1, 1), (0, 0)];

fn reps(rng: &mut ChaCha8Rng, cfg: &RunConfig, out: &mut Collector) {
    let (lo, hi) = cfg.reps_n;
    for n in lo..=hi {
        let want = 2 * binomial(n as i64 + 1, 3);
        let r = Ok((trace_multiplier(n) - want).abs() as f64);
        out.record("trace_multiplier", EXACT, || json!({ "n": n }), r);
        let (x, y) = nilpotent_traces(n);
        out.record("nilpotent_traces", EXACT, || json!({ "n": n }), Ok((x.abs() + y.abs()) as f64));
    }
    for n in 1..=6usize {
        for m in 1..=6usize {
            let (a, b) = mixed_trace_multiplier(n, m);
            let want = (m as i64 * binomial(n as i64 + 1, 3), n as i64 * binomial(m as i64 + 1, 3));
            let r = Ok(((a - want.0).abs() + (b - want.1).abs()) as f64);
            out.record("mixed_multiplier", EXACT, || json!({ "n": n, "m": m }), r);
        }
    }
    for (i, row) in rep_table().iter().enumerate() {
        let (v, c) = EXPECTED_REP_TABLE[i];
        let r = Ok(((row.vol_mult - v).abs() + (row.cs_mult - c).abs()) as f64);
        out.record("rep_table", EXACT, || json!({ "row": i, "rep": row.rep.to_string() }), r);
    }

    let tol = cfg.tol_r;
    let j = tau_minkowski_form::<f64>();
    let mc = kappa_conjugator::<f64>();
    let mc_inv = mc.inverse().expect("conjugator is invertible");
    for _ in 0..cfg.samples {
        let a = sample_sl2(rng);
        let b = sample_sl2(rng);
        let ab = &a * &b;
        let input = || json!({ "A": matrix_json(&a), "B": matrix_json(&b) });
        let b_inv = b.inverse_2x2().expect("det B = 1");
        for n in lo..=hi {
            let r = (|| {
                let (ra, rb) = (sym_power(&a, n)?, sym_power(&b, n)?);
                Ok(product_diff(&sym_power(&ab, n)?, &[&ra, &rb]))
            })();
            out.record(&format!("sym_power_hom/n={n}"), tol, input, r);
            let r = (|| {
                let conj = &(&b * &a) * &b_inv;
                let (g, ra, g_inv) = (sym_power(&b, n)?, sym_power(&a, n)?, sym_power(&b_inv, n)?);
                Ok(product_diff(&sym_power(&conj, n)?, &[&g, &ra, &g_inv]))
            })();
            out.record(&format!("sym_power_conj/n={n}"), tol, input, r);
        }

        let r = (|| -> Result<[f64; 5]> {
            let ta = tau(&a)?;
            let hom = product_diff(&tau(&ab)?, &[&ta, &tau(&b)?]);
            let real = max_imag(&ta);
            let det = (ta.det() - 1.0).norm();
            let form = rel_diff(&(&(&ta.transpose() * &j) * &ta), &j);
            let cp = poly_diff(&ta.char_poly(), &a.kron(&a.conj()).char_poly());
            Ok([hom, real, det, form, cp])
        })();
        for (k, name) in ["tau_hom", "tau_real", "tau_det", "tau_form", "tau_charpoly"].iter().enumerate() {
            out.record(name, tol, input, r.as_ref().map(|v| v[k]).map_err(Clone::clone));
        }

        let r = (|| -> Result<[f64; 4]> {
            let ka = kappa(&a)?;
            let hom = product_diff(&kappa(&ab)?, &[&ka, &kappa(&b)?]);
            let real = max_imag(&ka);
            let det = (ka.det() - 1.0).norm();
            let conj = rel_diff(&(&(&mc_inv * &ka) * &mc), &a.direct_sum(&a.conj()));
            Ok([hom, real, det, conj])
        })();
        for (k, name) in ["kappa_hom", "kappa_real", "kappa_det", "kappa_conjugacy"].iter().enumerate() {
            out.record(name, tol, input, r.as_ref().map(|v| v[k]).map_err(Clone::clone));
        }
    }
}
