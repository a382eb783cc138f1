//! Six-vertex R-matrices, operator-valued L-matrices and the two-site
//! monodromy `T(u) = diag(e^{δη}, e^{−δη}) · L^A(u − ε_A) · L^B(u − ε_B)`.
//!
//! L-matrix entries are evaluated lazily on a source sector and returned as
//! [`GradedOperator`]s; products of entries are composed sector by sector, so
//! `t(u) = T₁₁ + T₂₂` comes out as an exact [`SectorOperator`].
//!
//! The trigonometric L-operator at finite `η` uses su_q(1,1) (or su_q(2))
//! generators deformed at `γη`, i.e. `q = e^{iγη}`; that is the deformation
//! under which `R·L·L = L·L·R` closes for the normalisation used here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{self, FockSector, GradedOperator, Mode, SectorOperator};
use crate::linalg::{self, CMatrix, C64};

/// Evaluations closer than this to a pole are rejected.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Rational,
    Trigonometric,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Rational => "rational",
            Family::Trigonometric => "trigonometric",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub u: f64,
    pub eta: f64,
    /// Deformation; `0` selects the rational family.
    pub gamma: f64,
    pub eps_a: f64,
    pub eps_b: f64,
    /// Twist.
    pub delta: f64,
}

impl SpectralParams {
    pub fn rational(u: f64, eta: f64, eps_a: f64, eps_b: f64, delta: f64) -> Self {
        Self {
            u,
            eta,
            gamma: 0.0,
            eps_a,
            eps_b,
            delta,
        }
    }

    pub fn trigonometric(u: f64, eta: f64, gamma: f64, eps_a: f64, eps_b: f64, delta: f64) -> Self {
        Self {
            u,
            eta,
            gamma,
            eps_a,
            eps_b,
            delta,
        }
    }

    pub fn family(&self) -> Family {
        if self.gamma == 0.0 {
            Family::Rational
        } else {
            Family::Trigonometric
        }
    }

    pub fn with_u(self, u: f64) -> Self {
        Self { u, ..self }
    }

    pub fn with_eta(self, eta: f64) -> Self {
        Self { eta, ..self }
    }

    pub fn delta_eps(&self) -> f64 {
        self.eps_a - self.eps_b
    }
}

fn six_vertex(a: f64, b: f64, c: f64) -> CMatrix {
    let mut r = CMatrix::zeros(4, 4);
    r[(0, 0)] = C64::new(a, 0.0);
    r[(1, 1)] = C64::new(b, 0.0);
    r[(1, 2)] = C64::new(c, 0.0);
    r[(2, 1)] = C64::new(c, 0.0);
    r[(2, 2)] = C64::new(b, 0.0);
    r[(3, 3)] = C64::new(a, 0.0);
    r
}

fn guard_rational(what: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() < POLE_GUARD {
        return Err(Error::Pole {
            what,
            at: x,
            guard: POLE_GUARD,
        });
    }
    Ok(())
}

fn guard_trig(what: &'static str, x: f64, gamma: f64) -> Result<()> {
    // Distance of x from the nearest zero of sin(γx).
    let period = std::f64::consts::PI / gamma.abs();
    let r = x.rem_euclid(period);
    let dist = r.min(period - r);
    if !x.is_finite() || dist < POLE_GUARD {
        return Err(Error::Pole {
            what,
            at: x,
            guard: POLE_GUARD,
        });
    }
    Ok(())
}

/// `R(u) = (1/u)·[[u+η,0,0,0],[0,u,η,0],[0,η,u,0],[0,0,0,u+η]]`.
pub fn r_rational(u: f64, eta: f64) -> Result<CMatrix> {
    guard_rational("rational R", u)?;
    Ok(six_vertex((u + eta) / u, 1.0, eta / u))
}

/// `u·R(u)`: pole-free, used at the symmetric point `u = v` of the YBE.
pub fn r_rational_polynomial(u: f64, eta: f64) -> CMatrix {
    six_vertex(u + eta, u, eta)
}

/// `R(u; γ) = (1/sin γu)·[[sin γ(u+η),…],[0, sin γu, sin γη, 0],…]`.
pub fn r_trig(u: f64, gamma: f64, eta: f64) -> Result<CMatrix> {
    if gamma == 0.0 {
        return Err(Error::Domain("trigonometric R needs gamma != 0".into()));
    }
    guard_trig("trigonometric R", u, gamma)?;
    let s = (gamma * u).sin();
    Ok(six_vertex(
        (gamma * (u + eta)).sin() / s,
        1.0,
        (gamma * eta).sin() / s,
    ))
}

/// `sin(γu)·R(u; γ)`.
pub fn r_trig_polynomial(u: f64, gamma: f64, eta: f64) -> CMatrix {
    six_vertex(
        (gamma * (u + eta)).sin(),
        (gamma * u).sin(),
        (gamma * eta).sin(),
    )
}

/// R-matrix of `family` at spectral parameter `u`.
pub fn r_matrix(family: Family, u: f64, gamma: f64, eta: f64) -> Result<CMatrix> {
    match family {
        Family::Rational => r_rational(u, eta),
        Family::Trigonometric => r_trig(u, gamma, eta),
    }
}

/// `‖R₁₂(u−v)R₁₃(u)R₂₃(v) − R₂₃(v)R₁₃(u)R₁₂(u−v)‖_F` on `C² ⊗ C² ⊗ C²`.
pub fn check_ybe<F>(r: F, u: f64, v: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<CMatrix>,
{
    let id = CMatrix::identity(2);
    let r12 = linalg::kron(&r(u - v)?, &id)?;
    let r23 = linalg::kron(&id, &r(v)?)?;
    let p23 = linalg::kron(&id, &swap())?;
    let r13 = &(&p23 * &linalg::kron(&r(u)?, &id)?) * &p23;
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    Ok((&lhs - &rhs).frobenius_norm())
}

fn swap() -> CMatrix {
    six_vertex(1.0, 0.0, 1.0)
}

/// Which quantum-space algebra an L-operator carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algebra {
    /// Schwinger su(2) on the whole two-mode sector.
    Su2,
    /// su(1,1) of one oscillator mode.
    Su11(Mode),
}

/// A 2×2 matrix whose entries are graded maps on the two-mode Fock space.
pub trait OperatorMatrix {
    /// Entry `(row, col)` acting on `source`.
    fn entry(&self, row: usize, col: usize, source: FockSector) -> Result<GradedOperator>;

    /// Change of total number produced by entry `(row, col)`.
    fn entry_shift(&self, row: usize, col: usize) -> i64;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LOperator {
    pub algebra: Algebra,
    pub family: Family,
    /// Spectral argument, already shifted by the site inhomogeneity.
    pub u: f64,
    pub eta: f64,
    pub gamma: f64,
}

/// L-operator of one site.
///
/// Rational su(1,1): `(1/u)·[[u + ηK₀, ηK₋], [−ηK₊, u − ηK₀]]`; su(2) has `+ηJ₊`
/// in the lower-left corner. Trigonometric: `(1/sin γu)·[[sin γ(u + ηK̃₀),
/// sin(γη)K̃₋], [−sin(γη)K̃₊, sin γ(u − ηK̃₀)]]`.
pub fn l_operator(algebra: Algebra, family: Family, u: f64, eta: f64, gamma: f64) -> Result<LOperator> {
    match family {
        Family::Rational => guard_rational("rational L", u)?,
        Family::Trigonometric => {
            if gamma == 0.0 {
                return Err(Error::Domain("trigonometric L needs gamma != 0".into()));
            }
            guard_trig("trigonometric L", u, gamma)?
        }
    }
    Ok(LOperator {
        algebra,
        family,
        u,
        eta,
        gamma,
    })
}

impl LOperator {
    fn diagonal(&self, sign: f64, source: FockSector) -> Result<GradedOperator> {
        let (u, eta, gamma) = (self.u, self.eta, self.gamma);
        let weight = |cartan: f64| match self.family {
            Family::Rational => (u + sign * eta * cartan) / u,
            Family::Trigonometric => (gamma * (u + sign * eta * cartan)).sin() / (gamma * u).sin(),
        };
        let op = SectorOperator::from_real_diag(source, |i| {
            let (na, nb) = source.occupation(i);
            let cartan = match self.algebra {
                Algebra::Su2 => source.m(i).value(),
                Algebra::Su11(Mode::A) => fock::k_zero_value(na),
                Algebra::Su11(Mode::B) => fock::k_zero_value(nb),
            };
            weight(cartan)
        });
        Ok(op.into())
    }

    fn off_diagonal_weight(&self) -> f64 {
        match self.family {
            Family::Rational => self.eta / self.u,
            Family::Trigonometric => (self.gamma * self.eta).sin() / (self.gamma * self.u).sin(),
        }
    }

    fn deformation(&self) -> f64 {
        match self.family {
            Family::Rational => 0.0,
            Family::Trigonometric => self.gamma * self.eta,
        }
    }
}

impl OperatorMatrix for LOperator {
    fn entry(&self, row: usize, col: usize, source: FockSector) -> Result<GradedOperator> {
        if source.is_null() {
            let target = source.shifted(self.entry_shift(row, col));
            return Ok(GradedOperator::zero(source, target));
        }
        let w = self.off_diagonal_weight();
        match (row, col, self.algebra) {
            (0, 0, _) => self.diagonal(1.0, source),
            (1, 1, _) => self.diagonal(-1.0, source),
            (0, 1, Algebra::Su11(mode)) => {
                let g = fock::suq11_generators(mode, source, self.deformation())?;
                Ok(g.k_minus.scale_real(w))
            }
            (1, 0, Algebra::Su11(mode)) => {
                let g = fock::suq11_generators(mode, source, self.deformation())?;
                Ok(g.k_plus.scale_real(-w))
            }
            (0, 1, Algebra::Su2) => {
                let (_, minus) = fock::suq2_ladders(source, self.deformation())?;
                Ok(GradedOperator::from(minus).scale_real(w))
            }
            (1, 0, Algebra::Su2) => {
                let (plus, _) = fock::suq2_ladders(source, self.deformation())?;
                Ok(GradedOperator::from(plus).scale_real(w))
            }
            _ => Err(Error::Contract(format!("L entry ({row}, {col}) out of range"))),
        }
    }

    fn entry_shift(&self, row: usize, col: usize) -> i64 {
        match self.algebra {
            Algebra::Su2 => 0,
            Algebra::Su11(_) => 2 * (row as i64 - col as i64),
        }
    }
}

/// Two-site monodromy with diagonal twist.
#[derive(Clone, Copy, Debug)]
pub struct Monodromy {
    pub site_a: LOperator,
    pub site_b: LOperator,
    pub twist: [f64; 2],
}

pub fn monodromy(sp: &SpectralParams) -> Result<Monodromy> {
    let family = sp.family();
    Ok(Monodromy {
        site_a: l_operator(Algebra::Su11(Mode::A), family, sp.u - sp.eps_a, sp.eta, sp.gamma)?,
        site_b: l_operator(Algebra::Su11(Mode::B), family, sp.u - sp.eps_b, sp.eta, sp.gamma)?,
        twist: [(sp.delta * sp.eta).exp(), (-sp.delta * sp.eta).exp()],
    })
}

/// `Σ_k left[row][k] ∘ right[k][col]` on `source`.
fn product_entry(
    left: &impl OperatorMatrix,
    right: &impl OperatorMatrix,
    row: usize,
    col: usize,
    source: FockSector,
) -> Result<GradedOperator> {
    let mut acc: Option<GradedOperator> = None;
    for k in 0..2 {
        let inner = right.entry(k, col, source)?;
        let outer = left.entry(row, k, inner.target())?;
        let term = outer.compose(&inner)?;
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.try_add(&term)?,
        });
    }
    Ok(acc.expect("two terms"))
}

impl OperatorMatrix for Monodromy {
    fn entry(&self, row: usize, col: usize, source: FockSector) -> Result<GradedOperator> {
        Ok(product_entry(&self.site_a, &self.site_b, row, col, source)?.scale_real(self.twist[row]))
    }

    fn entry_shift(&self, row: usize, col: usize) -> i64 {
        self.site_a.entry_shift(row, 0) + self.site_b.entry_shift(0, col)
    }
}

/// `t(u) = T₁₁(u) + T₂₂(u)` on `sector`.
pub fn transfer(sp: &SpectralParams, sector: FockSector) -> Result<SectorOperator> {
    let t = monodromy(sp)?;
    let diag = t.entry(0, 0, sector)?.try_add(&t.entry(1, 1, sector)?)?;
    let op = diag.into_sector_operator()?;
    if !op.matrix().is_finite() {
        return Err(Error::NonFinite("transfer operator"));
    }
    Ok(op)
}

/// `‖[t(u), t(v)]‖_F / (‖t(u)‖_F ‖t(v)‖_F)`.
pub fn transfer_commutator(sp: &SpectralParams, v: f64, sector: FockSector) -> Result<f64> {
    let tu = transfer(sp, sector)?;
    let tv = transfer(&sp.with_u(v), sector)?;
    let c = tu.commutator(&tv)?;
    let denom = tu.frobenius_norm() * tv.frobenius_norm();
    Ok(if denom == 0.0 { 0.0 } else { c.frobenius_norm() / denom })
}

/// `‖R(u−v)·L₁(u)L₂(v) − L₂(v)L₁(u)·R(u−v)‖` over all sixteen auxiliary
/// entries, each a graded map out of `sector`.
pub fn rll_residual(
    algebra: Algebra,
    family: Family,
    u: f64,
    v: f64,
    eta: f64,
    gamma: f64,
    sector: FockSector,
) -> Result<f64> {
    let lu = l_operator(algebra, family, u, eta, gamma)?;
    let lv = l_operator(algebra, family, v, eta, gamma)?;
    let r = r_matrix(family, u - v, gamma, eta)?;
    // (first ∘ second) applied to `sector`.
    let pair = |first: &LOperator, fr: usize, fc: usize, second: &LOperator, sr: usize, sc: usize| {
        let inner = second.entry(sr, sc, sector)?;
        let outer = first.entry(fr, fc, inner.target())?;
        outer.compose(&inner)
    };
    let mut total = 0.0;
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    let mut lhs: Option<GradedOperator> = None;
                    let mut rhs: Option<GradedOperator> = None;
                    for ip in 0..2 {
                        for kp in 0..2 {
                            // (R L₁(u) L₂(v))_{(ik),(jl)} = Σ R_{(ik),(i'k')} L(u)_{i'j} L(v)_{k'l}
                            let coeff = r[(2 * i + k, 2 * ip + kp)];
                            if coeff.norm() != 0.0 {
                                let term = pair(&lu, ip, j, &lv, kp, l)?.scale(coeff);
                                lhs = Some(match lhs {
                                    None => term,
                                    Some(acc) => acc.try_add(&term)?,
                                });
                            }
                            // (L₂(v) L₁(u) R)_{(ik),(jl)} = Σ L(v)_{kk'} L(u)_{ii'} R_{(i'k'),(jl)}
                            let coeff = r[(2 * ip + kp, 2 * j + l)];
                            if coeff.norm() != 0.0 {
                                let term = pair(&lv, k, kp, &lu, i, ip)?.scale(coeff);
                                rhs = Some(match rhs {
                                    None => term,
                                    Some(acc) => acc.try_add(&term)?,
                                });
                            }
                        }
                    }
                    match (lhs, rhs) {
                        (Some(a), Some(b)) => total += a.try_sub(&b)?.matrix().frobenius_norm().powi(2),
                        (Some(a), None) | (None, Some(a)) => total += a.matrix().frobenius_norm().powi(2),
                        (None, None) => {}
                    }
                }
            }
        }
    }
    Ok(total.sqrt())
}

/// Transfer operator expanded through `η²` with undeformed generators.
///
/// Rational: `2 + η²δ² + 2η²δ Σ K₀^X/(u−ε_X) + η²[2K₀^AK₀^B − X]/((u−ε_A)(u−ε_B))`.
/// Trigonometric: `2 + η²δ² + 2η²γδ Σ cot(γ(u−ε_X))K₀^X + η²γ²[2 cot cot K₀^AK₀^B
/// − csc csc X] − η²γ²[(K₀^A)² + (K₀^B)²]`, where `X = K₊^AK₋^B + K₋^AK₊^B`.
pub fn transfer_series(sp: &SpectralParams, sector: FockSector) -> Result<SectorOperator> {
    let (xa, xb) = (sp.u - sp.eps_a, sp.u - sp.eps_b);
    let eta2 = sp.eta * sp.eta;
    let (delta, gamma) = (sp.delta, sp.gamma);
    let ka = fock::su11_generators(Mode::A, sector).k_zero;
    let kb = fock::su11_generators(Mode::B, sector).k_zero;
    let k0k0 = fock::su11_k0_product(sector);
    let exchange = fock::su11_exchange(sector)?;
    let constant = 2.0 + eta2 * delta * delta;
    let out = match sp.family() {
        Family::Rational => {
            guard_rational("rational series", xa)?;
            guard_rational("rational series", xb)?;
            let linear = &(&ka * (1.0 / xa)) + &(&kb * (1.0 / xb));
            let quad = &(&k0k0 * 2.0) - &exchange;
            &(&linear * (2.0 * eta2 * delta)) + &(&quad * (eta2 / (xa * xb)))
        }
        Family::Trigonometric => {
            guard_trig("trigonometric series", xa, gamma)?;
            guard_trig("trigonometric series", xb, gamma)?;
            let (sa, ca) = (gamma * xa).sin_cos();
            let (sb, cb) = (gamma * xb).sin_cos();
            let (cot_a, cot_b) = (ca / sa, cb / sb);
            let linear = &(&ka * cot_a) + &(&kb * cot_b);
            let quad = &(&k0k0 * (2.0 * cot_a * cot_b)) - &(&exchange * (1.0 / (sa * sb)));
            let squares = &(&ka * &ka) + &(&kb * &kb);
            let g2 = gamma * gamma;
            &(&(&linear * (2.0 * eta2 * gamma * delta)) + &(&quad * (eta2 * g2))) - &(&squares * (eta2 * g2))
        }
    };
    Ok(out.shift_by(constant))
}

/// Largest `η` the expansion check will evaluate at.
pub const EXPANSION_ETA_CEILING: f64 = 0.1;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExpansionResidual {
    pub eta: f64,
    /// `‖t(u) − series‖_F` at `eta`.
    pub residual: f64,
    /// Same at `eta / 10`.
    pub residual_tenth: f64,
    /// The decade `[η_hi, η_lo]` the slope was measured over.
    pub decade: [f64; 2],
    /// `log₁₀(r(η_hi) / r(η_lo))`; `+∞` when both residuals sit at the
    /// rounding floor, i.e. the series is exact.
    pub order_estimate: f64,
}

/// Residual of `t(u)` against [`transfer_series`] and its log-log slope over
/// one decade of `η`.
///
/// The slope is measured on `[η, η/10]`. When the residual at `η/10` is
/// already at the rounding floor (a remainder of high order), that decade
/// carries no information and the decade `[10η, η]` is used instead,
/// provided `10η ≤` [`EXPANSION_ETA_CEILING`]; otherwise the reported slope
/// is the lower bound `log₁₀(r(η)/floor)`.
pub fn expansion_residual(sp: &SpectralParams, sector: FockSector) -> Result<ExpansionResidual> {
    let at = |eta: f64| -> Result<(f64, f64)> {
        let p = sp.with_eta(eta);
        let t = transfer(&p, sector)?;
        let s = transfer_series(&p, sector)?;
        Ok(((&t - &s).frobenius_norm(), t.frobenius_norm()))
    };
    let eta = sp.eta;
    if eta == 0.0 {
        let (r, _) = at(0.0)?;
        return Ok(ExpansionResidual {
            eta,
            residual: r,
            residual_tenth: r,
            decade: [0.0, 0.0],
            order_estimate: f64::INFINITY,
        });
    }
    let floor = |norm: f64| 64.0 * f64::EPSILON * norm.max(1.0);
    let (r1, n1) = at(eta)?;
    let (r2, n2) = at(eta / 10.0)?;
    let (decade, order_estimate) = if r1 <= floor(n1) && r2 <= floor(n2) {
        ([eta, eta / 10.0], f64::INFINITY)
    } else if r2 > floor(n2) {
        ([eta, eta / 10.0], (r1 / r2).log10())
    } else if 10.0 * eta.abs() <= EXPANSION_ETA_CEILING {
        let (r0, _) = at(10.0 * eta)?;
        ([10.0 * eta, eta], (r0 / r1).log10())
    } else {
        ([eta, eta / 10.0], (r1 / floor(n2)).log10())
    };
    Ok(ExpansionResidual {
        eta,
        residual: r1,
        residual_tenth: r2,
        decade,
        order_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_r_limits() {
        assert_eq!(r_rational(1.7, 0.0).unwrap(), CMatrix::identity(4));
        let far = r_rational(1e8, 1.0).unwrap();
        assert!((&far - &CMatrix::identity(4)).frobenius_norm() <= 2e-8);
        let r = r_rational(1.0, 1.0).unwrap();
        assert_eq!(r[(0, 0)].re, 2.0);
        assert_eq!(r[(3, 3)].re, 2.0);
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert_eq!(r[(a, b)].re, 1.0);
        }
    }

    #[test]
    fn rational_r_pole() {
        assert!(matches!(r_rational(0.0, 1.0), Err(Error::Pole { .. })));
        assert!(matches!(r_rational(5e-7, 1.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn trig_r_basics() {
        assert!((&r_trig(0.7, 0.4, 0.0).unwrap() - &CMatrix::identity(4)).max_abs() < 1e-15);
        let r = r_trig(2.0, 0.3, 0.5).unwrap();
        let expected = (0.3f64 * 0.5).sin() / (0.3f64 * 2.0).sin();
        assert!((r[(1, 2)].re - expected).abs() < 1e-15);
        assert_eq!(r[(1, 2)], r[(2, 1)]);
        let near = r_trig(2.0, 1e-7, 0.5).unwrap();
        let rat = r_rational(2.0, 0.5).unwrap();
        assert!((&near - &rat).max_abs() <= 1e-6);
        let pole = std::f64::consts::PI / 0.4;
        assert!(matches!(r_trig(pole, 0.4, 0.3), Err(Error::Pole { .. })));
    }

    #[test]
    fn l_rational_identity_at_zero_eta() {
        let l = l_operator(Algebra::Su11(Mode::A), Family::Rational, 1.3, 0.0, 0.0).unwrap();
        let s = FockSector::new(3);
        for (r, c) in [(0, 0), (1, 1)] {
            let e = l.entry(r, c, s).unwrap();
            assert_eq!(e.matrix(), &CMatrix::identity(4));
        }
        assert_eq!(l.entry(0, 1, s).unwrap().matrix().max_abs(), 0.0);
        assert_eq!(l.entry(1, 0, s).unwrap().matrix().max_abs(), 0.0);
    }

    #[test]
    fn l_rational_vacuum_entry() {
        let l = l_operator(Algebra::Su11(Mode::A), Family::Rational, 1.0, 1.0, 0.0).unwrap();
        let e = l.entry(0, 0, FockSector::new(0)).unwrap();
        // 1 + K₀ with K₀ = ¼ on the vacuum.
        assert!((e.matrix()[(0, 0)].re - 1.25).abs() < 1e-15);
    }

    #[test]
    fn transfer_at_zero_eta_is_two() {
        let sp = SpectralParams::rational(3.0, 0.0, 1.0, -1.0, 0.7);
        let t = transfer(&sp, FockSector::new(4)).unwrap();
        assert_eq!(t.matrix(), &CMatrix::identity(5).scale_real(2.0));
    }

    #[test]
    fn monodromy_at_zero_eta_is_unit() {
        let m = monodromy(&SpectralParams::trigonometric(2.0, 0.0, 0.4, 1.0, -1.0, 0.3)).unwrap();
        let s = FockSector::new(2);
        assert!((m.entry(0, 0, s).unwrap().matrix() - &CMatrix::identity(3)).max_abs() < 1e-15);
        assert_eq!(m.entry(0, 1, s).unwrap().matrix().max_abs(), 0.0);
        assert_eq!(m.entry(0, 1, s).unwrap().shift(), -2);
    }

    #[test]
    fn expansion_exact_at_zero_eta() {
        let sp = SpectralParams::rational(5.0, 0.0, 1.0, -1.0, 0.3);
        let e = expansion_residual(&sp, FockSector::new(2)).unwrap();
        assert_eq!(e.residual, 0.0);
    }

    #[test]
    fn transfer_rejects_pole() {
        let sp = SpectralParams::rational(1.0, 0.1, 1.0, -1.0, 0.0);
        assert!(matches!(transfer(&sp, FockSector::new(2)), Err(Error::Pole { .. })));
    }

    #[test]
    fn ybe_both_families() {
        let r = check_ybe(|x| r_rational(x, 0.7), 3.0, 1.3).unwrap();
        assert!(r <= 1e-12, "{r}");
        let t = check_ybe(|x| r_trig(x, 0.4, 0.3), 2.1, 0.9).unwrap();
        assert!(t <= 1e-12, "{t}");
        let sym = check_ybe(|x| Ok(r_rational_polynomial(x, 0.7)), 1.5, 1.5).unwrap();
        assert!(sym <= 1e-12, "{sym}");
    }

    #[test]
    fn rll_holds_for_all_site_algebras() {
        for n in 0..=4 {
            let s = FockSector::new(n);
            for alg in [Algebra::Su11(Mode::A), Algebra::Su11(Mode::B), Algebra::Su2] {
                let r = rll_residual(alg, Family::Rational, 1.7, 0.4, 0.6, 0.0, s).unwrap();
                assert!(r <= 1e-11, "rational {alg:?} N={n}: {r}");
                let t = rll_residual(alg, Family::Trigonometric, 1.7, 0.4, 0.6, 0.45, s).unwrap();
                assert!(t <= 1e-11, "trig {alg:?} N={n}: {t}");
            }
        }
    }

    #[test]
    fn rll_fails_with_undeformed_trig_generators() {
        // Sanity: the RLL check is sensitive to the dressing.
        let s = FockSector::new(4);
        let lu = l_operator(Algebra::Su11(Mode::A), Family::Trigonometric, 1.7, 0.6, 0.45).unwrap();
        let plain = fock::su11_generators(Mode::A, s);
        let dressed = lu.entry(1, 0, s).unwrap();
        assert!((dressed.matrix() - plain.k_plus.scale_real(-lu.off_diagonal_weight()).matrix()).max_abs() > 1e-3);
    }

    #[test]
    fn transfer_commutes_both_families() {
        let s = FockSector::new(4);
        let rat = SpectralParams::rational(2.3, 0.4, 1.0, -1.0, 0.8);
        assert!(transfer_commutator(&rat, -0.7, s).unwrap() <= 1e-11);
        let trig = SpectralParams::trigonometric(2.3, 0.4, 0.4, 1.0, -1.0, 0.8);
        assert!(transfer_commutator(&trig, -0.7, s).unwrap() <= 1e-11);
    }

    #[test]
    fn transfer_hermitian_without_twist() {
        let sp = SpectralParams::trigonometric(2.3, 0.4, 0.4, 1.0, -1.0, 0.0);
        assert!(transfer(&sp, FockSector::new(5)).unwrap().is_hermitian(1e-12));
    }

    #[test]
    fn expansion_orders() {
        let s = FockSector::new(2);
        let twisted = expansion_residual(&SpectralParams::rational(5.0, 1e-2, 1.0, -1.0, 0.7), s).unwrap();
        assert!(twisted.order_estimate >= 2.8, "{twisted:?}");
        let plain = expansion_residual(&SpectralParams::rational(5.0, 1e-2, 1.0, -1.0, 0.0), s).unwrap();
        assert!(plain.order_estimate >= 2.8, "{plain:?}");
        let trig = expansion_residual(&SpectralParams::trigonometric(2.5, 1e-2, 0.3, 1.0, -1.0, 0.7), s).unwrap();
        assert!(trig.order_estimate >= 2.8, "{trig:?}");
        let trig0 = expansion_residual(&SpectralParams::trigonometric(2.5, 1e-2, 0.3, 1.0, -1.0, 0.0), s).unwrap();
        assert!(trig0.order_estimate >= 2.8, "{trig0:?}");
    }
}
