//! Two-mode Fock space on fixed total-number sectors.
//!
//! A sector `N` holds the states `|N_A, N_B⟩` with `N_A + N_B = N`, ordered by
//! descending `N_A`, so basis index `i` is `(N − i, i)` and carries
//! `m = (N_A − N_B)/2 = j − i`. Operators that change `N` (the mode ladders,
//! `K±`) are [`GradedOperator`]s between two sectors; everything that
//! conserves `N` is a [`SectorOperator`]. Products are composed sector by
//! sector, so no truncation ever enters.
//!
//! Lowering below the vacuum lands in a *null* sector: negative level,
//! dimension zero. Levels are tracked exactly, so `raise ∘ lower` on `N = 0`
//! composes back to the (zero) map on `N = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, EigenDecomposition, C64};

/// Exact half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    /// Exact conversion from a float that is a multiple of ½.
    pub fn from_f64(x: f64) -> Option<Self> {
        let t = 2.0 * x;
        if t.is_finite() && t.fract() == 0.0 && t.abs() < 9.0e15 {
            Some(Self { twice: t as i64 })
        } else {
            None
        }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// `j(j+1)`.
    pub fn casimir(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }

    /// `j, j−1, …, −j`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let t = self.twice;
        let count = if t >= 0 { t + 1 } else { 0 };
        (0..count).map(move |k| HalfInt::from_twice(t - 2 * k))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = if self.is_integer() {
            format!("{}", self.twice / 2)
        } else {
            format!("{}/2", self.twice)
        };
        f.pad(&text)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = f64::deserialize(d)?;
        HalfInt::from_f64(x)
            .ok_or_else(|| serde::de::Error::custom(format!("{x} is not a multiple of 1/2")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    Raise,
    Lower,
}

/// Fixed total-number sector. Negative levels are null (empty) sectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockSector {
    level: i64,
}

impl FockSector {
    pub fn new(n_total: usize) -> Self {
        Self {
            level: n_total as i64,
        }
    }

    /// Sector `N = 2j` carrying the spin-`j` multiplet.
    pub fn for_spin(j: HalfInt) -> Result<Self> {
        if j.is_negative() {
            return Err(Error::Contract(format!("angular momentum j = {j} is negative")));
        }
        Ok(Self { level: j.twice() })
    }

    pub fn level(self) -> i64 {
        self.level
    }

    pub fn n_total(self) -> Option<usize> {
        (self.level >= 0).then_some(self.level as usize)
    }

    pub fn is_null(self) -> bool {
        self.level < 0
    }

    pub fn dim(self) -> usize {
        if self.level < 0 {
            0
        } else {
            self.level as usize + 1
        }
    }

    /// `j = N/2`.
    pub fn spin(self) -> Option<HalfInt> {
        (self.level >= 0).then_some(HalfInt::from_twice(self.level))
    }

    pub fn shifted(self, by: i64) -> Self {
        Self {
            level: self.level + by,
        }
    }

    /// `(N_A, N_B)` for every basis index.
    pub fn basis(self) -> Vec<(usize, usize)> {
        (0..self.dim()).map(|i| self.occupation(i)).collect()
    }

    pub fn occupation(self, index: usize) -> (usize, usize) {
        let n = self.level as usize;
        (n - index, index)
    }

    pub fn index_of(self, n_a: usize, n_b: usize) -> Option<usize> {
        (self.level >= 0 && (n_a + n_b) as i64 == self.level).then_some(n_b)
    }

    /// Magnetic quantum number of basis index `i`.
    pub fn m(self, index: usize) -> HalfInt {
        HalfInt::from_twice(self.level - 2 * index as i64)
    }

    fn mode_count(self, mode: Mode, index: usize) -> usize {
        let (a, b) = self.occupation(index);
        match mode {
            Mode::A => a,
            Mode::B => b,
        }
    }
}

/// Linear map from one sector to another.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    source: FockSector,
    target: FockSector,
    matrix: CMatrix,
}

impl GradedOperator {
    pub fn new(source: FockSector, target: FockSector, matrix: CMatrix) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Contract(format!(
                "matrix {:?} does not map level {} (dim {}) to level {} (dim {})",
                matrix.shape(),
                source.level,
                source.dim(),
                target.level,
                target.dim()
            )));
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: FockSector, target: FockSector) -> Self {
        Self {
            source,
            target,
            matrix: CMatrix::zeros(target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> FockSector {
        self.source
    }

    pub fn target(&self) -> FockSector {
        self.target
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn shift(&self) -> i64 {
        self.target.level - self.source.level
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &GradedOperator) -> Result<GradedOperator> {
        if inner.target != self.source {
            return Err(Error::SectorMismatch {
                expected: self.source.level,
                found: inner.target.level,
            });
        }
        Ok(GradedOperator {
            source: inner.source,
            target: self.target,
            matrix: self.matrix.matmul(&inner.matrix)?,
        })
    }

    pub fn adjoint(&self) -> GradedOperator {
        GradedOperator {
            source: self.target,
            target: self.source,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn try_add(&self, rhs: &GradedOperator) -> Result<GradedOperator> {
        self.check_same_grading(rhs)?;
        Ok(GradedOperator {
            source: self.source,
            target: self.target,
            matrix: self.matrix.try_add(&rhs.matrix)?,
        })
    }

    pub fn try_sub(&self, rhs: &GradedOperator) -> Result<GradedOperator> {
        self.check_same_grading(rhs)?;
        Ok(GradedOperator {
            source: self.source,
            target: self.target,
            matrix: self.matrix.try_sub(&rhs.matrix)?,
        })
    }

    fn check_same_grading(&self, rhs: &GradedOperator) -> Result<()> {
        if self.source != rhs.source {
            return Err(Error::SectorMismatch {
                expected: self.source.level,
                found: rhs.source.level,
            });
        }
        if self.target != rhs.target {
            return Err(Error::SectorMismatch {
                expected: self.target.level,
                found: rhs.target.level,
            });
        }
        Ok(())
    }

    pub fn scale(&self, s: C64) -> GradedOperator {
        GradedOperator {
            source: self.source,
            target: self.target,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn scale_real(&self, s: f64) -> GradedOperator {
        self.scale(C64::new(s, 0.0))
    }

    /// Right-multiply by a diagonal acting on the source sector.
    pub fn dressed_by(&self, diag: &[f64]) -> Result<GradedOperator> {
        if diag.len() != self.source.dim() {
            return Err(Error::Contract("dressing length differs from source dimension".into()));
        }
        let mut m = self.matrix.clone();
        for r in 0..m.rows() {
            for (c, d) in diag.iter().enumerate() {
                m[(r, c)] *= d;
            }
        }
        Ok(GradedOperator {
            source: self.source,
            target: self.target,
            matrix: m,
        })
    }

    /// Reinterpret an `N`-conserving map as a [`SectorOperator`].
    pub fn into_sector_operator(self) -> Result<SectorOperator> {
        if self.source != self.target {
            return Err(Error::SectorMismatch {
                expected: self.source.level,
                found: self.target.level,
            });
        }
        if self.source.is_null() {
            return Err(Error::Contract("sector operator on a null sector".into()));
        }
        Ok(SectorOperator {
            sector: self.source,
            matrix: self.matrix,
        })
    }
}

impl From<SectorOperator> for GradedOperator {
    fn from(op: SectorOperator) -> Self {
        GradedOperator {
            source: op.sector,
            target: op.sector,
            matrix: op.matrix,
        }
    }
}

/// `N`-conserving operator on one (non-null) sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorOperator {
    sector: FockSector,
    matrix: CMatrix,
}

impl SectorOperator {
    pub fn new(sector: FockSector, matrix: CMatrix) -> Result<Self> {
        if sector.is_null() {
            return Err(Error::Contract("sector operator on a null sector".into()));
        }
        if matrix.shape() != (sector.dim(), sector.dim()) {
            return Err(Error::Contract(format!(
                "matrix {:?} on a sector of dimension {}",
                matrix.shape(),
                sector.dim()
            )));
        }
        Ok(Self { sector, matrix })
    }

    pub fn identity(sector: FockSector) -> Self {
        Self {
            sector,
            matrix: CMatrix::identity(sector.dim()),
        }
    }

    pub fn zeros(sector: FockSector) -> Self {
        Self {
            sector,
            matrix: CMatrix::zeros(sector.dim(), sector.dim()),
        }
    }

    pub fn from_real_diag(sector: FockSector, f: impl Fn(usize) -> f64) -> Self {
        let d: Vec<f64> = (0..sector.dim()).map(f).collect();
        Self {
            sector,
            matrix: CMatrix::from_real_diag(&d),
        }
    }

    pub fn sector(&self) -> FockSector {
        self.sector
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.sector.dim()
    }

    pub fn compose(&self, inner: &SectorOperator) -> Result<SectorOperator> {
        self.check_sector(inner)?;
        Ok(SectorOperator {
            sector: self.sector,
            matrix: self.matrix.matmul(&inner.matrix)?,
        })
    }

    pub fn commutator(&self, other: &SectorOperator) -> Result<SectorOperator> {
        self.check_sector(other)?;
        Ok(SectorOperator {
            sector: self.sector,
            matrix: linalg::commutator(&self.matrix, &other.matrix)?,
        })
    }

    pub fn adjoint(&self) -> SectorOperator {
        SectorOperator {
            sector: self.sector,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, s: C64) -> SectorOperator {
        SectorOperator {
            sector: self.sector,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn scale_real(&self, s: f64) -> SectorOperator {
        self.scale(C64::new(s, 0.0))
    }

    /// `self + s·I`.
    pub fn shift_by(&self, s: f64) -> SectorOperator {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            m[(i, i)] += s;
        }
        SectorOperator {
            sector: self.sector,
            matrix: m,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.matrix.hermiticity_defect() <= rel_tol * self.matrix.frobenius_norm().max(1.0)
    }

    pub fn eigen(&self, tol: f64) -> Result<EigenDecomposition> {
        linalg::hermitian_eig(&self.matrix, tol)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::eigenvalues(&self.matrix)
    }

    fn check_sector(&self, other: &SectorOperator) -> Result<()> {
        if self.sector != other.sector {
            return Err(Error::SectorMismatch {
                expected: self.sector.level,
                found: other.sector.level,
            });
        }
        Ok(())
    }
}

// Operator sugar for code paths where both operands are built on the same
// sector; these panic on a sector mismatch.

impl Add for &SectorOperator {
    type Output = SectorOperator;
    fn add(self, rhs: &SectorOperator) -> SectorOperator {
        assert_eq!(self.sector, rhs.sector, "sector mismatch in +");
        SectorOperator {
            sector: self.sector,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &SectorOperator {
    type Output = SectorOperator;
    fn sub(self, rhs: &SectorOperator) -> SectorOperator {
        assert_eq!(self.sector, rhs.sector, "sector mismatch in -");
        SectorOperator {
            sector: self.sector,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl Mul for &SectorOperator {
    type Output = SectorOperator;
    fn mul(self, rhs: &SectorOperator) -> SectorOperator {
        self.compose(rhs).expect("sector mismatch in *")
    }
}

impl Mul<f64> for &SectorOperator {
    type Output = SectorOperator;
    fn mul(self, rhs: f64) -> SectorOperator {
        self.scale_real(rhs)
    }
}

/// Single-mode creation (`Raise`) or annihilation (`Lower`) on `sector`.
///
/// `⟨N_A+1, N_B| â† |N_A, N_B⟩ = √(N_A+1)`, and lowering is the adjoint of
/// raising from the sector below. Lowering the vacuum sector gives the zero
/// map into the null sector of level −1.
pub fn ladder(mode: Mode, kind: Ladder, sector: FockSector) -> GradedOperator {
    match kind {
        Ladder::Raise => {
            let target = sector.shifted(1);
            let mut m = CMatrix::zeros(target.dim(), sector.dim());
            for i in 0..sector.dim() {
                let n = sector.mode_count(mode, i);
                // Raising A keeps N_B, so the target index equals i; raising
                // B moves N_B up by one.
                let row = match mode {
                    Mode::A => i,
                    Mode::B => i + 1,
                };
                m[(row, i)] = C64::new(((n + 1) as f64).sqrt(), 0.0);
            }
            GradedOperator {
                source: sector,
                target,
                matrix: m,
            }
        }
        Ladder::Lower => ladder(mode, Ladder::Raise, sector.shifted(-1)).adjoint(),
    }
}

/// Diagonal `N̂_A`, `N̂_B`.
pub fn number_ops(sector: FockSector) -> (SectorOperator, SectorOperator) {
    (
        SectorOperator::from_real_diag(sector, |i| sector.occupation(i).0 as f64),
        SectorOperator::from_real_diag(sector, |i| sector.occupation(i).1 as f64),
    )
}

/// `c†_create c_annihilate` on `sector`.
pub fn bilinear(create: Mode, annihilate: Mode, sector: FockSector) -> Result<SectorOperator> {
    let lower = ladder(annihilate, Ladder::Lower, sector);
    let raise = ladder(create, Ladder::Raise, lower.target());
    raise.compose(&lower)?.into_sector_operator()
}

/// Schwinger angular momentum on the sector `N = 2j`:
/// `Jx = ½(â†b̂ + b̂†â)`, `Jy = −½i(â†b̂ − b̂†â)`, `Jz = ½(N̂_A − N̂_B)`.
pub fn su2_generators(j: HalfInt) -> Result<(SectorOperator, SectorOperator, SectorOperator)> {
    let sector = FockSector::for_spin(j)?;
    let j_plus = bilinear(Mode::A, Mode::B, sector)?;
    let j_minus = bilinear(Mode::B, Mode::A, sector)?;
    let jx = (&j_plus + &j_minus).scale_real(0.5);
    let jy = (&j_plus - &j_minus).scale(C64::new(0.0, -0.5));
    let jz = SectorOperator::from_real_diag(sector, |i| sector.m(i).value());
    Ok((jx, jy, jz))
}

/// `J± = Jx ± iJy` on the sector `N = 2j`.
pub fn su2_ladders(j: HalfInt) -> Result<(SectorOperator, SectorOperator)> {
    let sector = FockSector::for_spin(j)?;
    Ok((
        bilinear(Mode::A, Mode::B, sector)?,
        bilinear(Mode::B, Mode::A, sector)?,
    ))
}

/// One-mode su(1,1) generators on `sector`.
#[derive(Clone, Debug)]
pub struct Su11Generators {
    /// `½ c†c†`, maps `N → N+2`.
    pub k_plus: GradedOperator,
    /// `½ c c`, maps `N → N−2`.
    pub k_minus: GradedOperator,
    /// `½ c†c + ¼`.
    pub k_zero: SectorOperator,
}

/// `K₊ = ½c†c†`, `K₋ = ½cc`, `K₀ = ½c†c + ¼` for mode `c ∈ {â, b̂}`.
///
/// With this offset `[K₊, K₋] = −2K₀` and `[K₀, K±] = ±K±` hold exactly, and
/// the Casimir `K₀² − ½(K₊K₋ + K₋K₊)` is `−3/16` on every state.
pub fn su11_generators(mode: Mode, sector: FockSector) -> Su11Generators {
    let up = ladder(mode, Ladder::Raise, sector);
    let up2 = ladder(mode, Ladder::Raise, up.target());
    let k_plus = up2.compose(&up).expect("consecutive ladders").scale_real(0.5);
    let down = ladder(mode, Ladder::Lower, sector);
    let down2 = ladder(mode, Ladder::Lower, down.target());
    let k_minus = down2.compose(&down).expect("consecutive ladders").scale_real(0.5);
    let k_zero =
        SectorOperator::from_real_diag(sector, |i| 0.5 * sector.mode_count(mode, i) as f64 + 0.25);
    Su11Generators {
        k_plus,
        k_minus,
        k_zero,
    }
}

/// `K₀` eigenvalue of a single mode holding `n` quanta.
pub fn k_zero_value(n: usize) -> f64 {
    0.5 * n as f64 + 0.25
}

/// Mode-wise Casimir `K₀² − ½(K₊K₋ + K₋K₊)`.
pub fn su11_mode_casimir(mode: Mode, sector: FockSector) -> Result<SectorOperator> {
    let g = su11_generators(mode, sector);
    let up = su11_generators(mode, sector.shifted(2));
    let down = su11_generators(mode, sector.shifted(-2));
    // K₊ on N−2 closes K₋ from N; K₋ on N+2 closes K₊ from N.
    let kpkm = down.k_plus.compose(&g.k_minus)?.into_sector_operator()?;
    let kmkp = up.k_minus.compose(&g.k_plus)?.into_sector_operator()?;
    let k0sq = &g.k_zero * &g.k_zero;
    Ok(&k0sq - &(&kpkm + &kmkp).scale_real(0.5))
}

/// Casimir of the total algebra `K = K^A + K^B`, composed from the generators.
///
/// This operator is not diagonal in the `|N_A, N_B⟩` basis (it equals
/// `Jy² − ¼`); its spectrum is the multiset returned by
/// [`su11_total_casimir_labels`].
pub fn su11_total_casimir(sector: FockSector) -> Result<SectorOperator> {
    let total = |s: FockSector| -> Result<(GradedOperator, GradedOperator, SectorOperator)> {
        let a = su11_generators(Mode::A, s);
        let b = su11_generators(Mode::B, s);
        Ok((
            a.k_plus.try_add(&b.k_plus)?,
            a.k_minus.try_add(&b.k_minus)?,
            &a.k_zero + &b.k_zero,
        ))
    };
    let (kp, km, k0) = total(sector)?;
    let (kp_below, _, _) = total(sector.shifted(-2))?;
    let (_, km_above, _) = total(sector.shifted(2))?;
    let kpkm = kp_below.compose(&km)?.into_sector_operator()?;
    let kmkp = km_above.compose(&kp)?.into_sector_operator()?;
    Ok(&(&k0 * &k0) - &(&kpkm + &kmkp).scale_real(0.5))
}

/// `¼(N_A − N_B)² − ¼` for each basis label of `sector`.
pub fn su11_total_casimir_labels(sector: FockSector) -> Vec<f64> {
    sector
        .basis()
        .into_iter()
        .map(|(a, b)| {
            let d = a as f64 - b as f64;
            0.25 * d * d - 0.25
        })
        .collect()
}

/// `K₊^A K₋^B + K₋^A K₊^B` on `sector`: the Hermitian pair-exchange term.
pub fn su11_exchange(sector: FockSector) -> Result<SectorOperator> {
    let b = su11_generators(Mode::B, sector);
    // K₊^A K₋^B: lower B (N → N−2), then raise A (N−2 → N).
    let a_up_from_below = su11_generators(Mode::A, sector.shifted(-2)).k_plus;
    let a_down_from_above = su11_generators(Mode::A, sector.shifted(2)).k_minus;
    let forward = a_up_from_below.compose(&b.k_minus)?.into_sector_operator()?;
    let backward = a_down_from_above.compose(&b.k_plus)?.into_sector_operator()?;
    Ok(&forward + &backward)
}

/// `K₀^A K₀^B` on `sector`.
pub fn su11_k0_product(sector: FockSector) -> SectorOperator {
    SectorOperator::from_real_diag(sector, |i| {
        let (na, nb) = sector.occupation(i);
        k_zero_value(na) * k_zero_value(nb)
    })
}

/// Deformed one-mode generators.
#[derive(Clone, Debug)]
pub struct Suq11Generators {
    pub k_plus: GradedOperator,
    pub k_minus: GradedOperator,
    pub k_zero: SectorOperator,
}

/// `K̃₊K̃₋` eigenvalue on a single mode with `n` quanta:
/// `f(n+2) = f(n) + sin(γ(n+½))/sin γ`, `f(0) = f(1) = 0`.
///
/// Returns the values `f(0..=n_max)`, erroring on the first negative one.
pub fn suq11_ladder_weights(gamma: f64, n_max: usize) -> Result<Vec<f64>> {
    let mut f = vec![0.0; n_max + 1];
    if gamma == 0.0 {
        for (n, v) in f.iter_mut().enumerate() {
            *v = 0.25 * n as f64 * (n as f64 - 1.0);
        }
        return Ok(f);
    }
    let sg = gamma.sin();
    if sg.abs() < 1e-12 {
        return Err(Error::Domain(format!(
            "sin(gamma) vanishes at gamma = {gamma}; deformation undefined"
        )));
    }
    for n in 2..=n_max {
        f[n] = f[n - 2] + (gamma * (n as f64 - 1.5)).sin() / sg;
        if f[n] < 0.0 {
            return Err(Error::Domain(format!(
                "su_q(1,1) dressing radicand {:e} < 0 at mode level n = {n} (gamma = {gamma})",
                f[n]
            )));
        }
    }
    Ok(f)
}

/// su_q(1,1) generators for deformation `gamma`:
/// `K̃₀ = K₀`, `K̃₊ = K₊·D(N̂)`, `K̃₋ = K̃₊†`, with the diagonal dressing `D`
/// fixed by `[K̃₊, K̃₋] = −sin(2γK̃₀)/sin γ` and `K̃₋|lowest⟩ = 0`.
/// `gamma = 0` returns the undeformed generators.
pub fn suq11_generators(mode: Mode, sector: FockSector, gamma: f64) -> Result<Suq11Generators> {
    if gamma == 0.0 {
        let g = su11_generators(mode, sector);
        return Ok(Suq11Generators {
            k_plus: g.k_plus,
            k_minus: g.k_minus,
            k_zero: g.k_zero,
        });
    }
    let n_max = sector.level.max(0) as usize + 2;
    let f = suq11_ladder_weights(gamma, n_max)?;
    let dressed_plus = |s: FockSector| -> Result<GradedOperator> {
        let plain = su11_generators(mode, s).k_plus;
        let d: Vec<f64> = (0..s.dim())
            .map(|i| {
                let n = s.mode_count(mode, i);
                let bare = 0.5 * (((n + 1) * (n + 2)) as f64).sqrt();
                f[n + 2].sqrt() / bare
            })
            .collect();
        plain.dressed_by(&d)
    };
    let k_plus = dressed_plus(sector)?;
    let k_minus = dressed_plus(sector.shifted(-2))?.adjoint();
    let k_zero = su11_generators(mode, sector).k_zero;
    Ok(Suq11Generators {
        k_plus,
        k_minus,
        k_zero,
    })
}

/// su_q(2) ladders for the Schwinger multiplet on `sector`:
/// `⟨m+1|J̃₊|m⟩ = √([j−m]_q [j+m+1]_q)`, `[x]_q = sin(γx)/sin γ`, so that
/// `[J̃₊, J̃₋] = sin(2γJ₀)/sin γ`. `gamma = 0` gives the undeformed ladders.
pub fn suq2_ladders(sector: FockSector, gamma: f64) -> Result<(SectorOperator, SectorOperator)> {
    let j = sector
        .spin()
        .ok_or_else(|| Error::Contract("su_q(2) ladders on a null sector".into()))?;
    let (plus, _) = su2_ladders(j)?;
    if gamma == 0.0 {
        let minus = plus.adjoint();
        return Ok((plus, minus));
    }
    let sg = gamma.sin();
    if sg.abs() < 1e-12 {
        return Err(Error::Domain(format!("sin(gamma) vanishes at gamma = {gamma}")));
    }
    let q = |x: f64| (gamma * x).sin() / sg;
    let jv = j.value();
    let mut m = CMatrix::zeros(sector.dim(), sector.dim());
    // J₊ moves index i (m = j − i) to i − 1.
    for i in 1..sector.dim() {
        let mv = sector.m(i).value();
        let rad = q(jv - mv) * q(jv + mv + 1.0);
        if rad < 0.0 {
            return Err(Error::Domain(format!(
                "su_q(2) radicand {rad:e} < 0 at m = {mv} (gamma = {gamma})"
            )));
        }
        m[(i - 1, i)] = C64::new(rad.sqrt(), 0.0);
    }
    let plus = SectorOperator::new(sector, m)?;
    let minus = plus.adjoint();
    Ok((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_int_display_and_projections() {
        assert_eq!(HalfInt::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
        let ms: Vec<i64> = HalfInt::from_twice(3).projections().map(|m| m.twice()).collect();
        assert_eq!(ms, vec![3, 1, -1, -3]);
        assert_eq!(HalfInt::from_f64(1.5), Some(HalfInt::from_twice(3)));
        assert_eq!(HalfInt::from_f64(0.3), None);
        assert_eq!(HalfInt::from_twice(-1).projections().count(), 0);
    }

    #[test]
    fn sector_layout() {
        let s = FockSector::new(2);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.basis(), vec![(2, 0), (1, 1), (0, 2)]);
        assert_eq!(s.m(0), HalfInt::from_int(1));
        assert_eq!(s.m(2), HalfInt::from_int(-1));
        assert_eq!(s.index_of(1, 1), Some(1));
        assert_eq!(s.index_of(1, 2), None);
        assert_eq!(FockSector::new(0).shifted(-1).dim(), 0);
    }

    #[test]
    fn raise_vacuum() {
        let up = ladder(Mode::A, Ladder::Raise, FockSector::new(0));
        assert_eq!(up.target(), FockSector::new(1));
        assert_eq!(up.matrix()[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(up.matrix()[(1, 0)], C64::new(0.0, 0.0));
    }

    #[test]
    fn raise_element_is_sqrt_two() {
        let up = ladder(Mode::A, Ladder::Raise, FockSector::new(1));
        // ⟨2,0|â†|1,0⟩: source index 0, target index 0.
        assert!((up.matrix()[(0, 0)].re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lower_vacuum_is_null_map() {
        let down = ladder(Mode::B, Ladder::Lower, FockSector::new(0));
        assert!(down.target().is_null());
        assert_eq!(down.matrix().shape(), (0, 1));
        let back = ladder(Mode::A, Ladder::Raise, down.target());
        let composed = back.compose(&down).unwrap().into_sector_operator().unwrap();
        assert_eq!(composed.matrix().max_abs(), 0.0);
    }

    #[test]
    fn adjoint_of_raise_is_lower() {
        for n in 0..6 {
            for mode in [Mode::A, Mode::B] {
                let up = ladder(mode, Ladder::Raise, FockSector::new(n));
                let down = ladder(mode, Ladder::Lower, FockSector::new(n + 1));
                assert_eq!(up.adjoint(), down);
            }
        }
    }

    #[test]
    fn number_operators() {
        let s = FockSector::new(2);
        let (na, nb) = number_ops(s);
        assert_eq!(na.matrix(), &CMatrix::from_real_diag(&[2.0, 1.0, 0.0]));
        let total = &na + &nb;
        assert_eq!(total.matrix(), &CMatrix::identity(3).scale_real(2.0));
        assert_eq!(na.commutator(&nb).unwrap().matrix().max_abs(), 0.0);
    }

    #[test]
    fn spin_half_jz() {
        let (_, _, jz) = su2_generators(HalfInt::from_twice(1)).unwrap();
        assert_eq!(jz.matrix(), &CMatrix::from_real_diag(&[0.5, -0.5]));
    }

    #[test]
    fn compose_checks_sectors() {
        let up = ladder(Mode::A, Ladder::Raise, FockSector::new(1));
        let other = ladder(Mode::A, Ladder::Raise, FockSector::new(1));
        assert!(matches!(up.compose(&other), Err(Error::SectorMismatch { .. })));
    }

    #[test]
    fn k_zero_on_vacuum() {
        let g = su11_generators(Mode::A, FockSector::new(0));
        assert_eq!(g.k_zero.matrix(), &CMatrix::from_real_diag(&[0.25]));
        assert!(g.k_minus.target().is_null());
        assert_eq!(g.k_plus.target(), FockSector::new(2));
    }

    #[test]
    fn dressing_weights_reduce_to_bare_values() {
        let bare = suq11_ladder_weights(0.0, 8).unwrap();
        let recur = suq11_ladder_weights(1e-9, 8).unwrap();
        for (n, (b, r)) in bare.iter().zip(&recur).enumerate() {
            assert!((b - r).abs() < 1e-8, "n = {n}: {b} vs {r}");
        }
        assert_eq!(bare[4], 3.0);
    }

    #[test]
    fn dressing_domain_error_names_level() {
        let err = suq11_ladder_weights(3.0, 40).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("level n =")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn total_casimir_vacuum() {
        let c = su11_total_casimir(FockSector::new(0)).unwrap();
        assert!((c.matrix()[(0, 0)].re + 0.25).abs() < 1e-15);
        assert_eq!(su11_total_casimir_labels(FockSector::new(2)), vec![0.75, -0.25, 0.75]);
    }
}
