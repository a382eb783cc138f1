//! Rigid rotor Hamiltonians on the Schwinger multiplets.
//!
//! Body axes map onto the Schwinger generators as `J_a ≡ Jx`, `J_b ≡ Jz`,
//! `J_c ≡ −Jy`, so `H(a, b, c) = a·Jx² + b·Jz² + c·Jy²`. The Ray form
//! `H(1, κ, −1) = Jx² + κJz² − Jy²` only couples `m` to `m ± 2`, which splits
//! every multiplet into two parity blocks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{self, FockSector, HalfInt, SectorOperator};
use crate::linalg::{self, CMatrix, DEFAULT_EIG_TOL};

/// Tolerance, relative to `max(1, max |E|)`, below which two levels count as
/// degenerate for the τ tie-break. Kept near rounding level so that genuinely
/// split doublets are never reordered.
pub const DEGENERACY_TOL: f64 = 1e-13;

/// Absolute tolerance of the reflection property.
pub const REFLECTION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotorParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RotorParams {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// `(1, κ, −1)`.
    pub fn ray(kappa: f64) -> Self {
        Self::new(1.0, kappa, -1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayForm {
    pub kappa: f64,
    /// `½(a − c)`
    pub scale: f64,
    /// `½(a + c)`
    pub shift: f64,
}

impl RayForm {
    /// Coefficients of `scale·H(1, κ, −1) + shift·H(1, 1, 1)`.
    pub fn reconstruct(&self) -> RotorParams {
        RotorParams::new(
            self.scale + self.shift,
            self.scale * self.kappa + self.shift,
            self.shift - self.scale,
        )
    }
}

/// `H(a, b, c) = ½(a − c)·H(1, κ, −1) + ½(a + c)·H(1, 1, 1)` with
/// `κ = (2b − a − c)/(a − c)`.
pub fn ray_decompose(p: &RotorParams) -> Result<RayForm> {
    let RotorParams { a, b, c } = *p;
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::Contract("rotor constants must be finite".into()));
    }
    if a == c {
        return Err(Error::DegenerateTop(a));
    }
    if !(a >= b && b >= c) {
        return Err(Error::Contract(format!(
            "rotor constants must satisfy a >= b >= c, got ({a}, {b}, {c})"
        )));
    }
    let kappa = ((2.0 * b - a - c) / (a - c)).clamp(-1.0, 1.0);
    Ok(RayForm {
        kappa,
        scale: 0.5 * (a - c),
        shift: 0.5 * (a + c),
    })
}

/// `a·Jx² + b·Jz² + c·Jy²` on the spin-`j` sector.
pub fn build_hamiltonian(j: HalfInt, p: &RotorParams) -> Result<SectorOperator> {
    let (jx, jy, jz) = fock::su2_generators(j)?;
    let h = &(&(&(&jx * &jx) * p.a) + &(&(&jz * &jz) * p.b)) + &(&(&jy * &jy) * p.c);
    let scale = h.frobenius_norm().max(1.0);
    if h.matrix().max_abs_imag() > 1e-14 * scale {
        return Err(Error::Contract(format!(
            "rotor Hamiltonian picked up imaginary entries ({:e})",
            h.matrix().max_abs_imag()
        )));
    }
    Ok(h)
}

/// `H(1, κ, −1)` on the spin-`j` sector.
pub fn ray_hamiltonian(j: HalfInt, kappa: f64) -> Result<SectorOperator> {
    build_hamiltonian(j, &RotorParams::ray(kappa))
}

/// Ray Hamiltonian written in su(1,1) bilinears,
/// `2(K₊^A K₋^B + K₋^A K₊^B) − 4κ K₀^A K₀^B`.
///
/// On the spin-`j` sector this equals `H(1, κ, −1) − κ(j + ½)²`, see
/// [`ray_2q_offset`].
pub fn build_ray_hamiltonian_2q(j: HalfInt, kappa: f64) -> Result<SectorOperator> {
    check_kappa(kappa)?;
    let sector = FockSector::for_spin(j)?;
    let exchange = fock::su11_exchange(sector)?;
    let k0k0 = fock::su11_k0_product(sector);
    Ok(&(&exchange * 2.0) - &(&k0k0 * (4.0 * kappa)))
}

/// Sector constant `κ(j + ½)²` with
/// `H(1, κ, −1) = build_ray_hamiltonian_2q(j, κ) + κ(j + ½)²`.
pub fn ray_2q_offset(j: HalfInt, kappa: f64) -> f64 {
    let x = j.value() + 0.5;
    kappa * x * x
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_index(i: usize) -> Self {
        if i.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// The two index-parity blocks of an operator coupling `m` to `m ± 2` only.
#[derive(Clone, Debug)]
pub struct ParityBlocks {
    pub even: CMatrix,
    pub odd: CMatrix,
    pub even_indices: Vec<usize>,
    pub odd_indices: Vec<usize>,
}

pub fn parity_blocks(h: &SectorOperator) -> Result<ParityBlocks> {
    let m = h.matrix();
    let n = m.rows();
    let limit = 1e-14 * m.frobenius_norm().max(1.0);
    for r in 0..n {
        for c in 0..n {
            if (r + c) % 2 == 1 && m[(r, c)].norm() > limit {
                return Err(Error::Contract(format!(
                    "operator couples indices {r} and {c} of opposite parity"
                )));
            }
        }
    }
    let even_indices: Vec<usize> = (0..n).step_by(2).collect();
    let odd_indices: Vec<usize> = (1..n).step_by(2).collect();
    Ok(ParityBlocks {
        even: m.principal_submatrix(&even_indices),
        odd: m.principal_submatrix(&odd_indices),
        even_indices,
        odd_indices,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub j: HalfInt,
    pub tau: HalfInt,
    pub parity: Parity,
    pub energy: f64,
    pub kappa: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelTable {
    pub units: String,
    pub params: Option<RotorParams>,
    pub rows: Vec<LevelRow>,
}

impl LevelTable {
    pub fn rows_for(&self, j: HalfInt) -> impl Iterator<Item = &LevelRow> {
        self.rows.iter().filter(move |r| r.j == j)
    }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa.abs() <= 1.0) {
        return Err(Error::Domain(format!("kappa = {kappa} outside [-1, 1]")));
    }
    Ok(())
}

struct Candidate {
    energy: f64,
    parity: Parity,
    m2: f64,
}

/// The `2j + 1` levels of `H(1, κ, −1)` labelled `τ = −j … j` in ascending
/// energy. Degenerate levels (within [`DEGENERACY_TOL`]) are ordered even
/// block first, then by ascending `⟨m²⟩` of the eigenvector.
pub fn spectrum(j: HalfInt, kappa: f64) -> Result<Vec<LevelRow>> {
    check_kappa(kappa)?;
    let h = ray_hamiltonian(j, kappa)?;
    let sector = h.sector();
    let blocks = parity_blocks(&h)?;
    let mut cands = Vec::with_capacity(sector.dim());
    for (block, idx, parity) in [
        (&blocks.even, &blocks.even_indices, Parity::Even),
        (&blocks.odd, &blocks.odd_indices, Parity::Odd),
    ] {
        let eig = linalg::hermitian_eig(block, DEFAULT_EIG_TOL)?;
        for (k, &energy) in eig.eigenvalues.iter().enumerate() {
            let m2 = idx
                .iter()
                .enumerate()
                .map(|(row, &full)| {
                    let m = sector.m(full).value();
                    eig.eigenvectors[(row, k)].norm_sqr() * m * m
                })
                .sum();
            cands.push(Candidate { energy, parity, m2 });
        }
    }
    cands.sort_by(|x, y| x.energy.total_cmp(&y.energy));

    let radius = cands.iter().map(|c| c.energy.abs()).fold(1.0, f64::max);
    let tol = DEGENERACY_TOL * radius;
    let mut ordered = Vec::with_capacity(cands.len());
    let mut start = 0;
    while start < cands.len() {
        let mut end = start + 1;
        while end < cands.len() && cands[end].energy - cands[start].energy <= tol {
            end += 1;
        }
        let cluster = &mut cands[start..end];
        cluster.sort_by(|x, y| {
            x.parity
                .cmp(&y.parity)
                .then(x.m2.total_cmp(&y.m2))
                .then(x.energy.total_cmp(&y.energy))
        });
        ordered.extend(cluster.iter().map(|c| (c.energy, c.parity)));
        start = end;
    }

    Ok(ordered
        .into_iter()
        .zip(j.projections().collect::<Vec<_>>().into_iter().rev())
        .map(|((energy, parity), tau)| LevelRow {
            j,
            tau,
            parity,
            energy,
            kappa,
        })
        .collect())
}

/// Ray levels for `j = 0 … j_max` (dimensionless).
pub fn ray_levels(kappa: f64, j_max: u32) -> Result<LevelTable> {
    let mut rows = Vec::new();
    for j in 0..=j_max {
        rows.extend(spectrum(HalfInt::from_int(j as i64), kappa)?);
    }
    Ok(LevelTable {
        units: "dimensionless".into(),
        params: Some(RotorParams::ray(kappa)),
        rows,
    })
}

/// Term values `E(j, τ) = ½(A − C)·E_ray(j, τ; κ) + ½(A + C)·j(j + 1)` for
/// integer `j = 0 … j_max`; constants and energies share the caller's units.
pub fn levels_physical(a: f64, b: f64, c: f64, j_max: u32) -> Result<LevelTable> {
    if !(c > 0.0) {
        return Err(Error::Contract(format!("rotational constants must be positive, got C = {c}")));
    }
    let params = RotorParams::new(a, b, c);
    let ray = ray_decompose(&params)?;
    let mut rows = Vec::new();
    for j in 0..=j_max {
        let j = HalfInt::from_int(j as i64);
        for level in spectrum(j, ray.kappa)? {
            rows.push(LevelRow {
                energy: ray.scale * level.energy + ray.shift * j.casimir(),
                ..level
            });
        }
    }
    Ok(LevelTable {
        units: "cm^-1".into(),
        params: Some(params),
        rows,
    })
}

/// Closed-form symmetric-top levels, ascending: `j(j+1) − 2k²` for `κ = +1`
/// and `2k² − j(j+1)` for `κ = −1`, `k = −j … j`.
pub fn symmetric_top_levels(j: HalfInt, oblate: bool) -> Vec<f64> {
    let mut e: Vec<f64> = j
        .projections()
        .map(|k| {
            let k2 = k.value() * k.value();
            if oblate {
                j.casimir() - 2.0 * k2
            } else {
                2.0 * k2 - j.casimir()
            }
        })
        .collect();
    e.sort_by(f64::total_cmp);
    e
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionPoint {
    pub kappa: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionReport {
    pub j: HalfInt,
    pub points: Vec<ReflectionPoint>,
    pub passed: bool,
}

impl ReflectionReport {
    pub fn max_deviation(&self) -> f64 {
        self.points.iter().map(|p| p.max_deviation).fold(0.0, f64::max)
    }
}

/// Checks `E_κ(j, τ) = −E_{−κ}(j, −τ)` on every `κ` of the grid.
///
/// `H(1, −κ, −1)` is unitarily equivalent to `−H(1, κ, −1)` (swap the x and
/// y axes), so the level order reverses and the energies change sign.
pub fn reflection_check(j: HalfInt, kappa_grid: &[f64]) -> Result<ReflectionReport> {
    let mut points = Vec::with_capacity(kappa_grid.len());
    for &kappa in kappa_grid {
        if !(0.0..=1.0).contains(&kappa) {
            return Err(Error::Domain(format!("reflection grid point {kappa} outside [0, 1]")));
        }
        let plus = spectrum(j, kappa)?;
        let minus = spectrum(j, -kappa)?;
        let max_deviation = plus
            .iter()
            .zip(minus.iter().rev())
            .map(|(p, m)| {
                debug_assert_eq!(p.tau, -m.tau);
                (p.energy + m.energy).abs()
            })
            .fold(0.0, f64::max);
        points.push(ReflectionPoint {
            kappa,
            max_deviation,
            tolerance: REFLECTION_TOL,
        });
    }
    let passed = points.iter().all(|p| p.max_deviation <= p.tolerance);
    Ok(ReflectionReport { j, points, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn energies(j: i64, kappa: f64) -> Vec<f64> {
        spectrum(HalfInt::from_int(j), kappa)
            .unwrap()
            .iter()
            .map(|r| r.energy)
            .collect()
    }

    #[test]
    fn ray_fixed_point() {
        let r = ray_decompose(&RotorParams::ray(0.3)).unwrap();
        assert_eq!(r.kappa, 0.3);
        assert_eq!(r.scale, 1.0);
        assert_eq!(r.shift, 0.0);
    }

    #[test]
    fn ray_limits_and_errors() {
        assert_eq!(ray_decompose(&RotorParams::new(3.0, 3.0, 1.0)).unwrap().kappa, 1.0);
        assert_eq!(ray_decompose(&RotorParams::new(3.0, 1.0, 1.0)).unwrap().kappa, -1.0);
        assert!(matches!(
            ray_decompose(&RotorParams::new(2.0, 2.0, 2.0)),
            Err(Error::DegenerateTop(_))
        ));
        assert!(matches!(
            ray_decompose(&RotorParams::new(1.0, 2.0, 0.5)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn ray_molecule_kappa() {
        let r = ray_decompose(&RotorParams::new(27.877, 14.512, 9.285)).unwrap();
        // (2·14.512 − 27.877 − 9.285) / (27.877 − 9.285) = −8.138 / 18.592
        assert!((r.kappa - (-8.138 / 18.592)).abs() < 1e-12);
        assert!((r.kappa + 0.43771).abs() < 1e-5);
        let back = r.reconstruct();
        assert!((back.a - 27.877).abs() < 1e-12);
        assert!((back.b - 14.512).abs() < 1e-12);
        assert!((back.c - 9.285).abs() < 1e-12);
    }

    #[test]
    fn j_zero_and_half() {
        let h0 = build_hamiltonian(HalfInt::ZERO, &RotorParams::new(3.0, 2.0, 1.0)).unwrap();
        assert_eq!(h0.matrix(), &CMatrix::zeros(1, 1));
        let h = build_hamiltonian(HalfInt::from_twice(1), &RotorParams::new(3.0, 2.0, 0.5)).unwrap();
        let expected = CMatrix::identity(2).scale_real(5.5 / 4.0);
        assert!((h.matrix() - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn spectrum_j1_kappa0() {
        let rows = spectrum(HalfInt::from_int(1), 0.0).unwrap();
        let e: Vec<f64> = rows.iter().map(|r| r.energy).collect();
        let tau: Vec<i64> = rows.iter().map(|r| r.tau.twice()).collect();
        assert!((e[0] + 1.0).abs() < 1e-14 && e[1].abs() < 1e-14 && (e[2] - 1.0).abs() < 1e-14);
        assert_eq!(tau, vec![-2, 0, 2]);
    }

    #[test]
    fn spectrum_symmetric_tops_j2() {
        let oblate = energies(2, 1.0);
        for (a, b) in oblate.iter().zip([-2.0, -2.0, 4.0, 4.0, 6.0]) {
            assert!((a - b).abs() < 1e-12, "{oblate:?}");
        }
        let prolate = energies(2, -1.0);
        for (a, b) in prolate.iter().zip([-6.0, -4.0, -4.0, 2.0, 2.0]) {
            assert!((a - b).abs() < 1e-12, "{prolate:?}");
        }
    }

    #[test]
    fn degenerate_pairs_put_even_block_first() {
        let rows = spectrum(HalfInt::from_int(2), 1.0).unwrap();
        assert_eq!(rows[0].parity, Parity::Even);
        assert_eq!(rows[1].parity, Parity::Odd);
    }

    #[test]
    fn parity_block_sizes() {
        let b = parity_blocks(&ray_hamiltonian(HalfInt::from_int(1), 0.4).unwrap()).unwrap();
        assert_eq!((b.even.rows(), b.odd.rows()), (2, 1));
        let b = parity_blocks(&ray_hamiltonian(HalfInt::from_twice(1), 0.4).unwrap()).unwrap();
        assert_eq!((b.even.rows(), b.odd.rows()), (1, 1));
    }

    #[test]
    fn parity_blocks_reject_cross_coupling() {
        let (jx, _, _) = fock::su2_generators(HalfInt::from_int(1)).unwrap();
        assert!(matches!(parity_blocks(&jx), Err(Error::Contract(_))));
    }

    #[test]
    fn kappa_out_of_range() {
        assert!(matches!(spectrum(HalfInt::from_int(1), 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn physical_j1_levels() {
        let t = levels_physical(27.877, 14.512, 9.285, 1).unwrap();
        let e: Vec<f64> = t.rows.iter().map(|r| r.energy).collect();
        assert_eq!(e.len(), 4);
        assert!(e[0].abs() < 1e-12);
        assert!((e[1] - 23.797).abs() < 1e-10);
        assert!((e[2] - 37.162).abs() < 1e-10);
        assert!((e[3] - 42.389).abs() < 1e-10);
        assert!(matches!(levels_physical(2.0, 2.0, 2.0, 1), Err(Error::DegenerateTop(_))));
    }

    #[test]
    fn reflection_j0_trivial() {
        let r = reflection_check(HalfInt::ZERO, &[0.0, 0.5, 1.0]).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_deviation(), 0.0);
    }
}
