//! Gaudin operators of the two-site chain.
//!
//! `τ_X` is the residue of `t(u)/η²` at `u = ε_X` in the quasiclassical limit.
//! Closed forms, with `X = K₊^AK₋^B + K₋^AK₊^B` and `Δε = ε_A − ε_B`:
//!
//! ```text
//! rational       τ_A = 2δΔε K₀^A + 2K₀^AK₀^B − X
//! trigonometric  τ_A = 2δγ sin(γΔε) K₀^A + γ²[2cos(γΔε) K₀^AK₀^B − X]
//! ```
//!
//! and `τ_B` is the same with `−K₀^B` in the δ-term. At `δ = 0` the sum
//! `τ_A + τ_B` reproduces `H(1, κ, −1)` up to a sector constant once
//! `κ = cos(γΔε)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{self, FockSector, HalfInt, Mode, SectorOperator};
use crate::linalg::{self, CMatrix};
use crate::rotor;
use crate::yang_baxter::{self, Family, SpectralParams};

/// Default inhomogeneities, symmetric about zero.
pub const DEFAULT_EPS_A: f64 = 1.0;
pub const DEFAULT_EPS_B: f64 = -1.0;
pub const DEFAULT_DELTA_EPS: f64 = DEFAULT_EPS_A - DEFAULT_EPS_B;

/// Maximum spectral deviation accepted by [`reconstruct_ray`].
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// `η` nodes of the quasiclassical extrapolation.
pub const ETA_SCHEDULE: [f64; 3] = [1e-2, 5e-3, 2.5e-3];
/// Offsets `u − ε` of the residue extrapolation.
pub const H_SCHEDULE: [f64; 3] = [1e-2, 1e-3, 1e-4];

#[derive(Clone, Debug)]
pub struct GaudinPair {
    pub tau_a: SectorOperator,
    pub tau_b: SectorOperator,
    pub family: Family,
    pub gamma: f64,
    pub eps_a: f64,
    pub eps_b: f64,
    pub delta: f64,
}

impl GaudinPair {
    pub fn sector(&self) -> FockSector {
        self.tau_a.sector()
    }

    pub fn sum(&self) -> SectorOperator {
        &self.tau_a + &self.tau_b
    }

    /// Largest entrywise distance to another pair on the same sector.
    pub fn max_entry_distance(&self, other: &GaudinPair) -> Result<f64> {
        let da = self.tau_a.matrix().try_sub(other.tau_a.matrix())?.max_abs();
        let db = self.tau_b.matrix().try_sub(other.tau_b.matrix())?.max_abs();
        Ok(da.max(db))
    }
}

/// Closed-form `τ_A`, `τ_B` on `sector`; `gamma` is ignored for the rational family.
pub fn tau_closed_form(
    family: Family,
    sector: FockSector,
    gamma: f64,
    eps_a: f64,
    eps_b: f64,
    delta: f64,
) -> Result<GaudinPair> {
    let ka = fock::su11_generators(Mode::A, sector).k_zero;
    let kb = fock::su11_generators(Mode::B, sector).k_zero;
    let k0k0 = fock::su11_k0_product(sector);
    let exchange = fock::su11_exchange(sector)?;
    let de = eps_a - eps_b;
    let (linear, common) = match family {
        Family::Rational => (2.0 * delta * de, &(&k0k0 * 2.0) - &exchange),
        Family::Trigonometric => {
            if gamma == 0.0 {
                return Err(Error::Domain("trigonometric Gaudin pair needs gamma != 0".into()));
            }
            let g2 = gamma * gamma;
            (
                2.0 * delta * gamma * (gamma * de).sin(),
                &(&k0k0 * (2.0 * g2 * (gamma * de).cos())) - &(&exchange * g2),
            )
        }
    };
    Ok(GaudinPair {
        tau_a: &common + &(&ka * linear),
        tau_b: &common - &(&kb * linear),
        family,
        gamma: if family == Family::Rational { 0.0 } else { gamma },
        eps_a,
        eps_b,
        delta,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitDiagnostics {
    pub eta_schedule: [f64; 3],
    pub h_schedule: [f64; 3],
    /// Error estimates of the final `η → 0` stage for `τ_A` and `τ_B`.
    pub error_estimate: [f64; 2],
}

/// Extrapolates `ys` (sampled at `xs`) to `x = 0` by Neville's scheme.
/// Returns the estimate and `‖P_full(0) − P_{last two}(0)‖`.
fn neville_to_zero(xs: &[f64], ys: &[CMatrix]) -> Result<(CMatrix, f64)> {
    let n = xs.len();
    assert!(n >= 2 && ys.len() == n);
    let mut table: Vec<CMatrix> = ys.to_vec();
    let mut lower_order = if n == 2 { Some(ys[1].clone()) } else { None };
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xk) = (xs[i], xs[i + level]);
            // P(0) = (x_k·P_i − x_i·P_{i+1}) / (x_k − x_i)
            let num = table[i].scale_real(xk).try_sub(&table[i + 1].scale_real(xi))?;
            table[i] = num.scale_real(1.0 / (xk - xi));
        }
        if level == n - 2 {
            lower_order = Some(table[n - level - 1].clone());
        }
    }
    let best = table.swap_remove(0);
    let err = match lower_order {
        Some(prev) => best.try_sub(&prev)?.max_abs(),
        None => f64::INFINITY,
    };
    Ok((best, err))
}

/// `τ_A`, `τ_B` as numerical limits of `w(u)·(t(u) − 2)/η²`, with
/// `w = (u−ε_A)(u−ε_B)` (rational) or `sin γ(u−ε_A) · sin γ(u−ε_B)`.
///
/// `u → ε` is extrapolated over [`H_SCHEDULE`], then `η → 0` over
/// [`ETA_SCHEDULE`]. `sp.u` and `sp.eta` are ignored.
pub fn tau_from_limit(family: Family, sector: FockSector, sp: &SpectralParams) -> Result<(GaudinPair, LimitDiagnostics)> {
    let gamma = match family {
        Family::Rational => 0.0,
        Family::Trigonometric if sp.gamma == 0.0 => {
            return Err(Error::Domain("trigonometric limit needs gamma != 0".into()))
        }
        Family::Trigonometric => sp.gamma,
    };
    let weight = |u: f64| match family {
        Family::Rational => (u - sp.eps_a) * (u - sp.eps_b),
        Family::Trigonometric => (gamma * (u - sp.eps_a)).sin() * (gamma * (u - sp.eps_b)).sin(),
    };
    let residue = |eps: f64, eta: f64| -> Result<CMatrix> {
        let mut samples = Vec::with_capacity(H_SCHEDULE.len());
        for &h in &H_SCHEDULE {
            let u = eps + h;
            let p = SpectralParams {
                u,
                eta,
                gamma,
                ..*sp
            };
            let t = yang_baxter::transfer(&p, sector)?.shift_by(-2.0);
            samples.push(t.matrix().scale_real(weight(u) / (eta * eta)));
        }
        let (est, err) = neville_to_zero(&H_SCHEDULE, &samples)?;
        check_stage("u -> eps", &est, err)?;
        Ok(est)
    };
    let mut taus = Vec::with_capacity(2);
    let mut errors = [0.0; 2];
    for (slot, eps) in [sp.eps_a, sp.eps_b].into_iter().enumerate() {
        let per_eta = ETA_SCHEDULE
            .iter()
            .map(|&eta| residue(eps, eta))
            .collect::<Result<Vec<_>>>()?;
        let (est, err) = neville_to_zero(&ETA_SCHEDULE, &per_eta)?;
        check_stage("eta -> 0", &est, err)?;
        errors[slot] = err;
        taus.push(SectorOperator::new(sector, est)?);
    }
    let tau_b = taus.pop().expect("two residues");
    let tau_a = taus.pop().expect("two residues");
    Ok((
        GaudinPair {
            tau_a,
            tau_b,
            family,
            gamma,
            eps_a: sp.eps_a,
            eps_b: sp.eps_b,
            delta: sp.delta,
        },
        LimitDiagnostics {
            eta_schedule: ETA_SCHEDULE,
            h_schedule: H_SCHEDULE,
            error_estimate: errors,
        },
    ))
}

fn check_stage(stage: &'static str, est: &CMatrix, err: f64) -> Result<()> {
    let limit = 1e-3 * est.max_abs().max(1.0);
    if !est.is_finite() || !err.is_finite() || err > limit {
        return Err(Error::Extrapolation {
            stage,
            estimate: err,
            limit,
        });
    }
    Ok(())
}

/// `κ = cos(γΔε)`.
pub fn kappa_from_gamma(gamma: f64, delta_eps: f64) -> f64 {
    (gamma * delta_eps).cos()
}

/// Principal inverse of [`kappa_from_gamma`]: `γ = arccos(κ)/Δε`.
pub fn gamma_for_kappa(kappa: f64, delta_eps: f64) -> Result<f64> {
    if !kappa.is_finite() || kappa.abs() > 1.0 {
        return Err(Error::Domain(format!("kappa = {kappa} lies outside [-1, 1]")));
    }
    if delta_eps == 0.0 || !delta_eps.is_finite() {
        return Err(Error::Domain(format!("spectral shift delta_eps = {delta_eps} is degenerate")));
    }
    let gamma = kappa.acos() / delta_eps;
    if !gamma.is_finite() {
        return Err(Error::Domain(format!("gamma = arccos({kappa})/{delta_eps:e} overflows")));
    }
    Ok(gamma)
}

#[derive(Clone, Debug)]
pub struct RayReconstruction {
    pub operator: SectorOperator,
    /// Coefficient `α` of `(τ_A + τ_B)/γ²`.
    pub scale: f64,
    /// Sector constant `β`.
    pub shift: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub family: Family,
    /// Largest deviation from the directly diagonalized Ray spectrum.
    pub max_deviation: f64,
}

impl RayReconstruction {
    /// Reconstructed levels, ascending.
    pub fn energies(&self) -> Result<Vec<f64>> {
        self.operator.eigenvalues()
    }
}

/// `α` in `H(1, κ, −1) = α (τ_A + τ_B)/γ² + β` (`γ² → 1` on the rational branch).
pub const RAY_SCALE: f64 = -1.0;

/// `β = κ (j + ½)²`.
pub fn ray_shift(j: HalfInt, kappa: f64) -> f64 {
    let x = j.value() + 0.5;
    kappa * x * x
}

/// The Ray operator assembled from a `δ = 0` Gaudin pair on the spin-`j` sector.
pub fn ray_from_pair(pair: &GaudinPair, j: HalfInt, kappa: f64) -> Result<SectorOperator> {
    if pair.sector() != FockSector::for_spin(j)? {
        return Err(Error::Contract(format!("pair lives on level {}, not spin {j}", pair.sector().level())));
    }
    if pair.delta != 0.0 {
        return Err(Error::Contract("Ray reconstruction needs a delta = 0 pair".into()));
    }
    let norm = match pair.family {
        Family::Rational => 1.0,
        Family::Trigonometric => pair.gamma * pair.gamma,
    };
    Ok(pair.sum().scale_real(RAY_SCALE / norm).shift_by(ray_shift(j, kappa)))
}

/// Rebuilds `H(1, κ, −1)` on spin `j` from the trigonometric Gaudin pair with
/// `γ = arccos(κ)/Δε` (rational pair at `κ = 1`) and records its deviation
/// from direct diagonalization without judging it.
pub fn build_ray_reconstruction(j: HalfInt, kappa: f64, delta_eps: f64) -> Result<RayReconstruction> {
    let gamma = gamma_for_kappa(kappa, delta_eps)?;
    let sector = FockSector::for_spin(j)?;
    let (eps_a, eps_b) = (0.5 * delta_eps, -0.5 * delta_eps);
    let family = if gamma == 0.0 { Family::Rational } else { Family::Trigonometric };
    let pair = tau_closed_form(family, sector, gamma, eps_a, eps_b, 0.0)?;
    let operator = ray_from_pair(&pair, j, kappa)?;

    let rebuilt = operator.eigenvalues()?;
    let mut direct: Vec<f64> = rotor::spectrum(j, kappa)?.into_iter().map(|r| r.energy).collect();
    direct.sort_by(f64::total_cmp);
    let max_deviation = if rebuilt.len() == direct.len() {
        rebuilt
            .iter()
            .zip(&direct)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(RayReconstruction {
        operator,
        scale: RAY_SCALE,
        shift: ray_shift(j, kappa),
        kappa,
        gamma,
        family,
        max_deviation,
    })
}

/// [`build_ray_reconstruction`], failing loudly beyond [`RECONSTRUCTION_TOL`].
pub fn reconstruct_ray(j: HalfInt, kappa: f64, delta_eps: f64) -> Result<RayReconstruction> {
    let r = build_ray_reconstruction(j, kappa, delta_eps)?;
    if !(r.max_deviation <= RECONSTRUCTION_TOL) {
        return Err(Error::Verification(format!(
            "Ray reconstruction at j = {j}, kappa = {kappa}: max deviation {:e}",
            r.max_deviation
        )));
    }
    Ok(r)
}

/// `‖[τ_A, τ_B]‖_F / (‖τ_A‖_F ‖τ_B‖_F)`, zero when either vanishes.
pub fn commuting_family_check(pair: &GaudinPair) -> Result<f64> {
    let c = pair.tau_a.commutator(&pair.tau_b)?;
    let denom = pair.tau_a.frobenius_norm() * pair.tau_b.frobenius_norm();
    Ok(if denom == 0.0 { 0.0 } else { c.frobenius_norm() / denom })
}

#[derive(Clone, Debug)]
pub struct SimultaneousBasis {
    /// Orthonormal common eigenvectors as columns.
    pub basis: CMatrix,
    /// `(τ_A, τ_B)` eigenvalue per column.
    pub pairs: Vec<(f64, f64)>,
    /// Largest off-diagonal magnitude of either operator in `basis`.
    pub off_diagonal: f64,
}

/// Common eigenbasis: diagonalize `τ_A`, then `τ_B` inside each degenerate
/// block of `τ_A`.
pub fn simultaneous_eigenbasis(pair: &GaudinPair) -> Result<SimultaneousBasis> {
    let residual = commuting_family_check(pair)?;
    if residual > 1e-10 {
        return Err(Error::Contract(format!("Gaudin pair does not commute (residual {residual:e})")));
    }
    let dim = pair.tau_a.dim();
    let a = pair.tau_a.matrix();
    let b = pair.tau_b.matrix();
    let ea = pair.tau_a.eigen(linalg::DEFAULT_EIG_TOL)?;
    let cluster = 1e-8 * a.frobenius_norm().max(1.0);

    let mut basis = CMatrix::zeros(dim, dim);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && ea.eigenvalues[end] - ea.eigenvalues[end - 1] <= cluster {
            end += 1;
        }
        let width = end - start;
        let v = CMatrix::from_fn(dim, width, |r, c| ea.eigenvectors[(r, start + c)]);
        let block = v.adjoint().matmul(b)?.matmul(&v)?;
        let inner = linalg::hermitian_eig(&block, linalg::DEFAULT_EIG_TOL)?;
        let rotated = v.matmul(&inner.eigenvectors)?;
        for c in 0..width {
            for r in 0..dim {
                basis[(r, start + c)] = rotated[(r, c)];
            }
        }
        start = end;
    }

    let da = basis.adjoint().matmul(a)?.matmul(&basis)?;
    let db = basis.adjoint().matmul(b)?.matmul(&basis)?;
    let mut off_diagonal: f64 = 0.0;
    for r in 0..dim {
        for c in 0..dim {
            if r != c {
                off_diagonal = off_diagonal.max(da[(r, c)].norm()).max(db[(r, c)].norm());
            }
        }
    }
    let scale = a.frobenius_norm().max(b.frobenius_norm()).max(1.0);
    if off_diagonal > 1e-9 * scale {
        return Err(Error::Contract(format!(
            "common eigenbasis leaves off-diagonal weight {off_diagonal:e}"
        )));
    }
    let pairs = (0..dim).map(|i| (da[(i, i)].re, db[(i, i)].re)).collect();
    Ok(SimultaneousBasis {
        basis,
        pairs,
        off_diagonal,
    })
}
