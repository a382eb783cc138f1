//! The `verify` command: every consistency check of the library, evaluated at
//! seeded pseudo-random points and aggregated into one report.
//!
//! Each check draws from its own ChaCha8 stream (the check's position in the
//! list), so adding a check never moves the points of another.

use std::io::IsTerminal;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::{CliError, RunConfig};
use crate::error::Result;
use crate::fock::{self, FockSector, GradedOperator, HalfInt, Mode};
use crate::gaudin;
use crate::linalg::{CMatrix, C64};
use crate::rotor;
use crate::yang_baxter::{self, Algebra, Family, SpectralParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Passes when `residual ≤ tolerance`.
    AtMost,
    /// Passes when `residual ≥ tolerance`.
    AtLeast,
}

fn finite_or_tag<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub parameters: Value,
    #[serde(serialize_with = "finite_or_tag")]
    pub residual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl CheckRecord {
    fn new(name: &str, parameters: Value, residual: f64, tolerance: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::AtMost => residual <= tolerance,
            Comparison::AtLeast => residual >= tolerance,
        };
        Self {
            name: name.to_string(),
            parameters,
            residual,
            tolerance,
            comparison,
            passed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

/// Uniform draw in `[lo, hi)` accepted by `ok`.
fn draw(rng: &mut ChaCha8Rng, lo: f64, hi: f64, ok: impl Fn(f64) -> bool) -> f64 {
    loop {
        let x = rng.gen_range(lo..hi);
        if ok(x) {
            return x;
        }
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn max_abs_op(m: &CMatrix) -> f64 {
    m.max_abs()
}

fn su2_residual(j: HalfInt) -> Result<f64> {
    let (jx, jy, jz) = fock::su2_generators(j)?;
    let i = C64::new(0.0, 1.0);
    let mut worst: f64 = 0.0;
    for (a, b, c) in [(&jx, &jy, &jz), (&jy, &jz, &jx), (&jz, &jx, &jy)] {
        let lhs = a.commutator(b)?;
        worst = worst.max(max_abs_op((&lhs - &c.scale(i)).matrix()));
    }
    let casimir = &(&(&jx * &jx) + &(&jy * &jy)) + &(&jz * &jz);
    worst = worst.max(max_abs_op(casimir.shift_by(-j.casimir()).matrix()));
    Ok(worst)
}

fn su11_residual(mode: Mode, n: usize) -> Result<f64> {
    let s = FockSector::new(n);
    let here = fock::su11_generators(mode, s);
    let up = fock::su11_generators(mode, s.shifted(2));
    let down = fock::su11_generators(mode, s.shifted(-2));
    let k0 = |g: &fock::Su11Generators| GradedOperator::from(g.k_zero.clone());
    // [K₀, K₊] = K₊ and [K₀, K₋] = −K₋ as maps out of `s`.
    let r_plus = k0(&up).compose(&here.k_plus)?.try_sub(&here.k_plus.compose(&k0(&here))?)?.try_sub(&here.k_plus)?;
    let r_minus = k0(&down)
        .compose(&here.k_minus)?
        .try_sub(&here.k_minus.compose(&k0(&here))?)?
        .try_add(&here.k_minus)?;
    // [K₊, K₋] = −2K₀ on `s`.
    let kpkm = down.k_plus.compose(&here.k_minus)?;
    let kmkp = up.k_minus.compose(&here.k_plus)?;
    let r_close = kpkm.try_sub(&kmkp)?.try_add(&k0(&here).scale_real(2.0))?;
    let casimir = fock::su11_mode_casimir(mode, s)?.shift_by(3.0 / 16.0);
    Ok([r_plus.matrix(), r_minus.matrix(), r_close.matrix(), casimir.matrix()]
        .iter()
        .map(|m| m.max_abs())
        .fold(0.0, f64::max))
}

struct Runner<'a> {
    cfg: &'a RunConfig,
    checks: Vec<CheckRecord>,
}

impl Runner<'_> {
    fn rng(&self) -> ChaCha8Rng {
        stream(self.cfg.seed(), self.checks.len() as u64)
    }

    fn push(&mut self, name: &str, parameters: Value, residual: f64, tolerance: f64, cmp: Comparison) {
        self.checks.push(CheckRecord::new(name, parameters, residual, tolerance, cmp));
    }
}

fn kappa_grid() -> Vec<f64> {
    (0..=20).map(|i| (i as f64 - 10.0) / 10.0).collect()
}

/// Runs every check. Numerical failures inside a check abort the run; a
/// check that merely misses its tolerance is recorded as failed.
pub fn run(cfg: &RunConfig) -> std::result::Result<VerificationReport, CliError> {
    let tol = &cfg.tolerances;
    let j_max = cfg.j_max();
    let delta_eps = cfg.delta_eps();
    let (eps_a, eps_b) = (0.5 * delta_eps, -0.5 * delta_eps);
    let mut r = Runner { cfg, checks: Vec::new() };

    // Algebra.
    let mut worst: f64 = 0.0;
    for twice in 0..=12 {
        worst = worst.max(su2_residual(HalfInt::from_twice(twice))?);
    }
    r.push("su2_relations", json!({"j_max": 6, "half_integers": true}), worst, tol.algebra, Comparison::AtMost);
    let mut worst: f64 = 0.0;
    for n in 0..=12 {
        for mode in [Mode::A, Mode::B] {
            worst = worst.max(su11_residual(mode, n)?);
        }
    }
    r.push("su11_relations", json!({"n_max": 12, "casimir": -3.0 / 16.0}), worst, tol.algebra, Comparison::AtMost);

    // Yang-Baxter equation on a 5×5 grid of (u, v).
    for (name, gammas) in [("ybe_rational", vec![0.0]), ("ybe_trigonometric", vec![0.4, 1.1])] {
        let mut rng = r.rng();
        let us: Vec<f64> = (0..5).map(|_| draw(&mut rng, 0.25, 2.75, |_| true)).collect();
        let vs: Vec<f64> = (0..5)
            .map(|_| draw(&mut rng, 0.25, 2.75, |v| us.iter().all(|u| (u - v).abs() > 0.05)))
            .collect();
        let mut worst: f64 = 0.0;
        for &gamma in &gammas {
            for eta in [0.3, 1.0] {
                for &u in &us {
                    for &v in &vs {
                        let res = if gamma == 0.0 {
                            yang_baxter::check_ybe(|x| yang_baxter::r_rational(x, eta), u, v)?
                        } else {
                            yang_baxter::check_ybe(|x| yang_baxter::r_trig(x, gamma, eta), u, v)?
                        };
                        worst = worst.max(res);
                    }
                }
            }
        }
        r.push(name, json!({"gamma": gammas, "eta": [0.3, 1.0], "u": us, "v": vs}), worst, tol.ybe, Comparison::AtMost);
    }

    // RLL relation.
    for (name, family, gamma) in [("rll_rational", Family::Rational, 0.0), ("rll_trigonometric", Family::Trigonometric, 0.45)] {
        let mut rng = r.rng();
        let mut points = Vec::new();
        let mut worst: f64 = 0.0;
        for _ in 0..3 {
            let u = draw(&mut rng, 0.3, 2.5, |_| true);
            let v = draw(&mut rng, 0.3, 2.5, |v| (u - v).abs() > 0.1);
            let eta = draw(&mut rng, 0.2, 1.0, |_| true);
            points.push([u, v, eta]);
            for n in 0..=4 {
                for alg in [Algebra::Su11(Mode::A), Algebra::Su11(Mode::B), Algebra::Su2] {
                    let res = yang_baxter::rll_residual(alg, family, u, v, eta, gamma, FockSector::new(n))?;
                    worst = worst.max(res);
                }
            }
        }
        r.push(
            name,
            json!({"gamma": gamma, "n_max": 4, "algebras": ["su11_a", "su11_b", "su2"], "points_u_v_eta": points}),
            worst,
            tol.rll,
            Comparison::AtMost,
        );
    }

    // Transfer commutativity.
    for (name, gamma) in [("transfer_commutator_rational", 0.0), ("transfer_commutator_trigonometric", 0.4)] {
        let mut rng = r.rng();
        let away = |x: f64| (x - eps_a).abs() > 0.15 && (x - eps_b).abs() > 0.15;
        let mut points = Vec::new();
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let u = draw(&mut rng, -3.0, 3.0, away);
            let v = draw(&mut rng, -3.0, 3.0, away);
            let eta = draw(&mut rng, 0.05, 0.8, |_| true);
            let delta = draw(&mut rng, -1.0, 1.0, |_| true);
            points.push([u, v, eta, delta]);
            let sp = SpectralParams { u, eta, gamma, eps_a, eps_b, delta };
            for n in 0..=8 {
                worst = worst.max(yang_baxter::transfer_commutator(&sp, v, FockSector::new(n))?);
            }
        }
        r.push(
            name,
            json!({"gamma": gamma, "eps": [eps_a, eps_b], "n_max": 8, "points_u_v_eta_delta": points}),
            worst,
            tol.transfer_commutator,
            Comparison::AtMost,
        );
    }

    // Quasiclassical expansion order.
    for (name, gamma, u) in [("expansion_order_rational", 0.0, 5.0), ("expansion_order_trigonometric", 0.3, 2.5)] {
        let mut slope = f64::INFINITY;
        for delta in [0.0, 0.7] {
            for n in 0..=4 {
                let sp = SpectralParams { u, eta: 1e-2, gamma, eps_a, eps_b, delta };
                slope = slope.min(yang_baxter::expansion_residual(&sp, FockSector::new(n))?.order_estimate);
            }
        }
        r.push(
            name,
            json!({
                "gamma": gamma,
                "u": u,
                "eta": [1e-2, 1e-3],
                "decade_shift": "measured on [1e-1, 1e-2] when the residual at 1e-3 is at rounding level",
                "delta": [0.0, 0.7],
                "n_max": 4,
            }),
            slope,
            tol.expansion_order,
            Comparison::AtLeast,
        );
    }

    // Gaudin operators as limits of the transfer operator.
    for (name, family, gamma) in [("gaudin_limit_rational", Family::Rational, 0.0), ("gaudin_limit_trigonometric", Family::Trigonometric, 0.4)] {
        let mut worst: f64 = 0.0;
        for delta in [0.0, 0.5] {
            for n in 0..=6 {
                let s = FockSector::new(n);
                let sp = SpectralParams { u: 0.0, eta: 0.0, gamma, eps_a, eps_b, delta };
                let (limit, _) = gaudin::tau_from_limit(family, s, &sp)?;
                let exact = gaudin::tau_closed_form(family, s, gamma, eps_a, eps_b, delta)?;
                worst = worst.max(limit.max_entry_distance(&exact)?);
            }
        }
        r.push(
            name,
            json!({
                "gamma": gamma,
                "delta": [0.0, 0.5],
                "n_max": 6,
                "eta_schedule": gaudin::ETA_SCHEDULE,
                "u_offset_schedule": gaudin::H_SCHEDULE,
                "extrapolation": "neville, quadratic in each stage",
            }),
            worst,
            tol.gaudin_limit,
            Comparison::AtMost,
        );
    }

    // Commuting pair.
    for (name, family) in [("commuting_pair_rational", Family::Rational), ("commuting_pair_trigonometric", Family::Trigonometric)] {
        let mut rng = r.rng();
        let mut points = Vec::new();
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let gamma = if family == Family::Rational { 0.0 } else { draw(&mut rng, 0.2, 1.2, |_| true) };
            let ea = draw(&mut rng, 0.5, 1.5, |_| true);
            let eb = draw(&mut rng, -1.5, -0.5, |_| true);
            let delta = draw(&mut rng, -1.0, 1.0, |_| true);
            points.push([gamma, ea, eb, delta]);
            for n in 0..=12 {
                let pair = gaudin::tau_closed_form(family, FockSector::new(n), gamma, ea, eb, delta)?;
                worst = worst.max(gaudin::commuting_family_check(&pair)?);
            }
        }
        r.push(
            name,
            json!({"n_max": 12, "points_gamma_epsa_epsb_delta": points}),
            worst,
            tol.commuting_pair,
            Comparison::AtMost,
        );
    }

    // Ray reconstruction, its Δε invariance and its reflection property.
    let grid = kappa_grid();
    let alt_delta_eps = 1.85 * delta_eps;
    let (mut rec_worst, mut inv_worst, mut refl_worst): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for j in 0..=j_max {
        let j = HalfInt::from_int(j as i64);
        let mut spectra = Vec::with_capacity(grid.len());
        for &kappa in &grid {
            let rec = gaudin::build_ray_reconstruction(j, kappa, delta_eps)?;
            rec_worst = rec_worst.max(rec.max_deviation);
            let e = rec.energies()?;
            let alt = gaudin::build_ray_reconstruction(j, kappa, alt_delta_eps)?.energies()?;
            inv_worst = inv_worst.max(e.iter().zip(&alt).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            spectra.push(e);
        }
        for (i, e) in spectra.iter().enumerate() {
            let mirror = &spectra[grid.len() - 1 - i];
            let dev = e.iter().zip(mirror.iter().rev()).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
            refl_worst = refl_worst.max(dev);
        }
    }
    let sweep = json!({"j_max": j_max, "kappa": {"start": -1.0, "stop": 1.0, "step": 0.1}, "delta_eps": delta_eps});
    r.push("ray_reconstruction", sweep.clone(), rec_worst, tol.reconstruction, Comparison::AtMost);
    r.push(
        "delta_eps_invariance",
        json!({"j_max": j_max, "delta_eps": [delta_eps, alt_delta_eps]}),
        inv_worst,
        tol.delta_eps_invariance,
        Comparison::AtMost,
    );
    r.push("reconstruction_reflection", sweep, refl_worst, tol.reflection, Comparison::AtMost);

    // Reflection of the directly diagonalized spectrum.
    let half_grid: Vec<f64> = grid.iter().copied().filter(|k| *k >= 0.0).collect();
    let mut worst: f64 = 0.0;
    for j in 0..=j_max {
        worst = worst.max(rotor::reflection_check(HalfInt::from_int(j as i64), &half_grid)?.max_deviation());
    }
    r.push("reflection", json!({"j_max": j_max, "kappa": half_grid}), worst, tol.reflection, Comparison::AtMost);

    // Symmetric tops.
    let top_j = j_max.min(10);
    let (mut oblate, mut prolate, mut rational): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for j in 0..=top_j {
        let j = HalfInt::from_int(j as i64);
        let dist = |got: &[f64], want: Vec<f64>| {
            let mut want = want;
            want.sort_by(f64::total_cmp);
            got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        };
        let sorted = |k: f64| -> Result<Vec<f64>> {
            let mut e: Vec<f64> = rotor::spectrum(j, k)?.into_iter().map(|r| r.energy).collect();
            e.sort_by(f64::total_cmp);
            Ok(e)
        };
        oblate = oblate.max(dist(&sorted(1.0)?, rotor::symmetric_top_levels(j, true)));
        prolate = prolate.max(dist(&sorted(-1.0)?, rotor::symmetric_top_levels(j, false)));
        let rec = gaudin::build_ray_reconstruction(j, 1.0, delta_eps)?;
        rational = rational.max(dist(&rec.energies()?, rotor::symmetric_top_levels(j, true)));
    }
    let top = json!({"j_max": top_j});
    r.push("symmetric_top_oblate", top.clone(), oblate, tol.symmetric_top, Comparison::AtMost);
    r.push("symmetric_top_prolate", top.clone(), prolate, tol.symmetric_top, Comparison::AtMost);
    r.push("symmetric_top_rational_pair", top, rational, tol.symmetric_top, Comparison::AtMost);

    let checks = r.checks;
    let passed = checks.iter().filter(|c| c.passed).count();
    let summary = Summary {
        total: checks.len(),
        passed,
        failed: checks.len() - passed,
        all_passed: passed == checks.len(),
    };
    Ok(VerificationReport {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        seed: cfg.seed(),
        config: echo(cfg),
        checks,
        summary,
    })
}

/// The configuration with defaults filled in. The output path is dropped so
/// that the report depends only on what was computed, not where it went.
fn echo(cfg: &RunConfig) -> RunConfig {
    let mut c = cfg.clone();
    c.j_max = Some(cfg.j_max());
    c.delta_eps = Some(cfg.delta_eps());
    c.seed = Some(cfg.seed());
    c.output.format = Some(cfg.format());
    c.output.path = None;
    c
}

/// Colour only on a terminal and never when `NO_COLOR` is set.
pub fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

pub fn summary_text(report: &VerificationReport, color: bool) -> String {
    let tag = |ok: bool| match (ok, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    };
    let mut out = String::new();
    for c in &report.checks {
        let op = match c.comparison {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
        };
        out.push_str(&format!(
            "{} {:<34} {:>12.3e} {op} {:.1e}\n",
            tag(c.passed),
            c.name,
            c.residual,
            c.tolerance
        ));
    }
    let s = &report.summary;
    out.push_str(&format!("{} of {} checks passed\n", s.passed, s.total));
    out
}
