//! Schwinger and su(1,1) algebra against textbook matrix elements.

use gaudin_rotor::fock::{
    self, FockSector, GradedOperator, HalfInt, Ladder, Mode, SectorOperator,
};
use gaudin_rotor::linalg::{self, CMatrix, C64};
use proptest::prelude::*;

const TOL: f64 = 1e-13;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `⟨m+1|J₊|m⟩ = √(j(j+1) − m(m+1))` in the basis `m = j, j−1, …, −j`.
fn textbook_spin(j: f64) -> (CMatrix, CMatrix, CMatrix) {
    let dim = (2.0 * j).round() as usize + 1;
    let m = |i: usize| j - i as f64;
    let plus = CMatrix::from_fn(dim, dim, |r, col| {
        if col == r + 1 {
            c((j * (j + 1.0) - m(col) * (m(col) + 1.0)).sqrt())
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let minus = plus.adjoint();
    let jx = (&plus + &minus).scale_real(0.5);
    let jy = (&plus - &minus).scale(C64::new(0.0, -0.5));
    let jz = CMatrix::from_fn(dim, dim, |r, col| if r == col { c(m(r)) } else { c(0.0) });
    (jx, jy, jz)
}

fn dist(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).max_abs()
}

fn spins() -> impl Iterator<Item = HalfInt> {
    (0..=12).map(HalfInt::from_twice)
}

#[test]
fn schwinger_generators_match_textbook_elements() {
    for j in spins() {
        let (jx, jy, jz) = fock::su2_generators(j).unwrap();
        let (tx, ty, tz) = textbook_spin(j.value());
        assert!(dist(jx.matrix(), &tx) <= TOL, "Jx at j = {j}");
        assert!(dist(jy.matrix(), &ty) <= TOL, "Jy at j = {j}");
        assert!(dist(jz.matrix(), &tz) <= TOL, "Jz at j = {j}");
    }
}

#[test]
fn su2_commutators_and_casimir() {
    let i = C64::new(0.0, 1.0);
    for j in spins() {
        let (jx, jy, jz) = fock::su2_generators(j).unwrap();
        let cases = [(&jx, &jy, &jz), (&jy, &jz, &jx), (&jz, &jx, &jy)];
        for (a, b, out) in cases {
            let lhs = a.commutator(b).unwrap();
            let rhs = out.scale(i);
            assert!((&lhs - &rhs).matrix().max_abs() <= TOL, "[J, J] at j = {j}");
        }
        let cas = &(&(&jx * &jx) + &(&jy * &jy)) + &(&jz * &jz);
        let expect = SectorOperator::identity(jx.sector()).scale_real(j.casimir());
        assert!((&cas - &expect).matrix().max_abs() <= TOL, "J² at j = {j}");
    }
}

#[test]
fn su2_ladders_are_adjoint_and_close_on_jz() {
    for j in spins() {
        let (plus, minus) = fock::su2_ladders(j).unwrap();
        let (_, _, jz) = fock::su2_generators(j).unwrap();
        assert!((&plus.adjoint() - &minus).matrix().max_abs() <= TOL);
        let lhs = plus.commutator(&minus).unwrap();
        assert!((&lhs - &jz.scale_real(2.0)).matrix().max_abs() <= TOL);
    }
}

#[test]
fn mode_ladders_satisfy_canonical_commutator() {
    for n in 0..=12usize {
        let s = FockSector::new(n);
        for mode in [Mode::A, Mode::B] {
            let down = fock::ladder(mode, Ladder::Lower, s);
            let up_after = fock::ladder(mode, Ladder::Raise, down.target());
            let up = fock::ladder(mode, Ladder::Raise, s);
            let down_after = fock::ladder(mode, Ladder::Lower, up.target());
            let aad = down_after.compose(&up).unwrap().into_sector_operator().unwrap();
            let ada = up_after.compose(&down).unwrap().into_sector_operator().unwrap();
            let comm = &aad - &ada;
            assert!((&comm - &SectorOperator::identity(s)).matrix().max_abs() <= TOL, "N = {n}");
        }
    }
}

/// `[K₀, K±] = ±K±` and `[K₊, K₋] = −2K₀` on sector `n`, with the products
/// routed through the neighbouring sectors.
fn su11_residual(mode: Mode, n: usize) -> f64 {
    let s = FockSector::new(n);
    let g = fock::su11_generators(mode, s);
    let above = fock::su11_generators(mode, s.shifted(2));
    let below = fock::su11_generators(mode, s.shifted(-2));

    let k0_kp = GradedOperator::from(above.k_zero.clone()).compose(&g.k_plus).unwrap();
    let kp_k0 = g.k_plus.compose(&GradedOperator::from(g.k_zero.clone())).unwrap();
    let r1 = k0_kp.try_sub(&kp_k0).unwrap().try_sub(&g.k_plus).unwrap().matrix().max_abs();

    let k0_km = GradedOperator::from(below.k_zero.clone()).compose(&g.k_minus).unwrap();
    let km_k0 = g.k_minus.compose(&GradedOperator::from(g.k_zero.clone())).unwrap();
    let r2 = k0_km.try_sub(&km_k0).unwrap().try_add(&g.k_minus).unwrap().matrix().max_abs();

    let kp_km = below.k_plus.compose(&g.k_minus).unwrap().into_sector_operator().unwrap();
    let km_kp = above.k_minus.compose(&g.k_plus).unwrap().into_sector_operator().unwrap();
    let r3 = (&(&kp_km - &km_kp) + &g.k_zero.scale_real(2.0)).matrix().max_abs();

    r1.max(r2).max(r3)
}

#[test]
fn su11_relations_through_n_twelve() {
    for n in 0..=12 {
        for mode in [Mode::A, Mode::B] {
            let r = su11_residual(mode, n);
            assert!(r <= TOL, "su(1,1) residual {r:e} at N = {n}");
        }
    }
}

#[test]
fn su11_mode_casimir_is_minus_three_sixteenths() {
    for n in 0..=12 {
        let s = FockSector::new(n);
        for mode in [Mode::A, Mode::B] {
            let cas = fock::su11_mode_casimir(mode, s).unwrap();
            let expect = SectorOperator::identity(s).scale_real(-3.0 / 16.0);
            assert!((&cas - &expect).matrix().max_abs() <= TOL, "N = {n}");
        }
    }
}

#[test]
fn total_casimir_is_jy_squared_minus_quarter() {
    for n in 0..=12usize {
        let s = FockSector::new(n);
        let cas = fock::su11_total_casimir(s).unwrap();
        let j = s.spin().unwrap();
        let (_, jy, _) = fock::su2_generators(j).unwrap();
        let expect = (&jy * &jy).shift_by(-0.25);
        assert!((&cas - &expect).matrix().max_abs() <= 1e-12, "N = {n}");

        let mut labels = fock::su11_total_casimir_labels(s);
        labels.sort_by(f64::total_cmp);
        let eig = cas.eigenvalues().unwrap();
        for (a, b) in eig.iter().zip(&labels) {
            assert!((a - b).abs() <= 1e-11, "N = {n}: {a} vs {b}");
        }
    }
}

#[test]
fn exchange_term_is_hermitian_and_k0_product_diagonal() {
    for n in 0..=12usize {
        let s = FockSector::new(n);
        let x = fock::su11_exchange(s).unwrap();
        assert!(x.matrix().hermiticity_defect() <= TOL);
        let p = fock::su11_k0_product(s);
        for (i, (na, nb)) in s.basis().into_iter().enumerate() {
            let want = (0.5 * na as f64 + 0.25) * (0.5 * nb as f64 + 0.25);
            assert!((p.matrix()[(i, i)].re - want).abs() <= TOL);
        }
    }
}

/// `K̃₋K̃₊ − K̃₊K̃₋ = sin(γ(2K₀))/sin γ` on sector `n`.
fn suq11_residual(mode: Mode, n: usize, gamma: f64) -> Option<f64> {
    let s = FockSector::new(n);
    let g = fock::suq11_generators(mode, s, gamma).ok()?;
    let above = fock::suq11_generators(mode, s.shifted(2), gamma).ok()?;
    let below = fock::suq11_generators(mode, s.shifted(-2), gamma).ok()?;
    let kp_km = below.k_plus.compose(&g.k_minus).unwrap().into_sector_operator().unwrap();
    let km_kp = above.k_minus.compose(&g.k_plus).unwrap().into_sector_operator().unwrap();
    let comm = &km_kp - &kp_km;
    let q = SectorOperator::from_real_diag(s, |i| {
        let k0 = g.k_zero.matrix()[(i, i)].re;
        (gamma * 2.0 * k0).sin() / gamma.sin()
    });
    let adj = g.k_minus.try_sub(&below.k_plus.adjoint()).unwrap().matrix().max_abs();
    Some((&comm - &q).matrix().max_abs().max(adj))
}

#[test]
fn suq11_commutator_for_admissible_gamma() {
    for gamma in [0.1, 0.3, 1.0] {
        for n in 0..=8 {
            for mode in [Mode::A, Mode::B] {
                match suq11_residual(mode, n, gamma) {
                    Some(r) => assert!(r <= TOL, "gamma = {gamma}, N = {n}: {r:e}"),
                    // The dressing radicand turns negative once γ(n − ½) passes π.
                    None => assert!(gamma * (n as f64 + 0.5) > std::f64::consts::PI, "gamma = {gamma}, N = {n}"),
                }
            }
        }
    }
}

#[test]
fn suq11_reduces_to_su11_as_gamma_vanishes() {
    for n in 0..=8 {
        let s = FockSector::new(n);
        let plain = fock::su11_generators(Mode::A, s);
        let deformed = fock::suq11_generators(Mode::A, s, 1e-7).unwrap();
        let d = deformed.k_plus.try_sub(&plain.k_plus).unwrap().matrix().max_abs();
        assert!(d <= 1e-10, "N = {n}: {d:e}");
    }
}

#[test]
fn suq2_ladders_close_on_q_number() {
    for gamma in [0.1, 0.3] {
        for twice in 0..=8i64 {
            let j = HalfInt::from_twice(twice);
            let s = FockSector::for_spin(j).unwrap();
            let (plus, minus) = fock::suq2_ladders(s, gamma).unwrap();
            let comm = plus.commutator(&minus).unwrap();
            let want = SectorOperator::from_real_diag(s, |i| (2.0 * gamma * s.m(i).value()).sin() / gamma.sin());
            assert!((&comm - &want).matrix().max_abs() <= TOL, "gamma = {gamma}, j = {j}");
        }
    }
}

#[test]
fn kron_matches_index_formula() {
    let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
    let b = CMatrix::from_real_rows(&[&[0.0, 5.0], &[6.0, 7.0]]).unwrap();
    let k = linalg::kron(&a, &b).unwrap();
    for r in 0..4 {
        for col in 0..4 {
            assert_eq!(k[(r, col)], a[(r / 2, col / 2)] * b[(r % 2, col % 2)]);
        }
    }
}

proptest! {
    #[test]
    fn su11_relations_hold_on_random_sectors(n in 0usize..=30, b_mode in any::<bool>()) {
        let mode = if b_mode { Mode::B } else { Mode::A };
        prop_assert!(su11_residual(mode, n) <= 1e-12 * (1.0 + n as f64));
    }

    #[test]
    fn half_int_round_trips_through_f64(twice in -1000i64..1000) {
        let h = HalfInt::from_twice(twice);
        prop_assert_eq!(HalfInt::from_f64(h.value()), Some(h));
        prop_assert_eq!(h.projections().count() as i64, if twice >= 0 { twice + 1 } else { 0 });
    }

    #[test]
    fn sector_index_round_trips(n in 0usize..40, pick in 0usize..40) {
        let s = FockSector::new(n);
        let i = pick % s.dim();
        let (na, nb) = s.occupation(i);
        prop_assert_eq!(na + nb, n);
        prop_assert_eq!(s.index_of(na, nb), Some(i));
    }
}
