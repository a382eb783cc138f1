//! R-matrices, RLL relations and transfer operators.

use gaudin_rotor::fock::{FockSector, HalfInt, Mode};
use gaudin_rotor::linalg::{self, CMatrix, C64};
use gaudin_rotor::yang_baxter::{self as yb, Algebra, Family, SpectralParams};
use gaudin_rotor::Error;
use proptest::prelude::*;

/// Truncation of each oscillator in the dense oracle.
const CUTOFF: usize = 14;

fn single_mode(gamma_eta: f64) -> (CMatrix, CMatrix, CMatrix) {
    // ⟨n+2|K̃₊|n⟩ = √f(n+2) with f(n+2) = f(n) + [n + ½]_q; plain ½√((n+1)(n+2)) when undeformed.
    let mut f = [0.0; CUTOFF + 2];
    for n in 0..CUTOFF {
        let step = if gamma_eta == 0.0 {
            n as f64 + 0.5
        } else {
            (gamma_eta * (n as f64 + 0.5)).sin() / gamma_eta.sin()
        };
        f[n + 2] = f[n] + step;
    }
    let kp = CMatrix::from_fn(CUTOFF, CUTOFF, |r, c| {
        if r == c + 2 {
            C64::new(f[r].sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let km = kp.adjoint();
    let k0 = CMatrix::from_fn(CUTOFF, CUTOFF, |r, c| {
        if r == c {
            C64::new(0.5 * r as f64 + 0.25, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    (kp, km, k0)
}

/// Dense `t(u)` on the truncated two-mode space, restricted to sector `n`.
fn dense_transfer(sp: &SpectralParams, n: usize) -> CMatrix {
    let id = CMatrix::identity(CUTOFF);
    let ge = sp.gamma * sp.eta;
    let (kp, km, k0) = single_mode(ge);
    let on_a = |m: &CMatrix| linalg::kron(m, &id).unwrap();
    let on_b = |m: &CMatrix| linalg::kron(&id, m).unwrap();
    let big = CUTOFF * CUTOFF;
    let eye = CMatrix::identity(big);
    let site = |x: f64, kp: CMatrix, km: CMatrix, k0: CMatrix| -> [[CMatrix; 2]; 2] {
        let (diag, off, norm): (Box<dyn Fn(f64) -> CMatrix>, f64, f64) = if sp.gamma == 0.0 {
            (
                Box::new(|s: f64| &eye.scale_real(x) + &k0.scale_real(s * sp.eta)),
                sp.eta,
                x,
            )
        } else {
            // sin γ(x ± ηK₀) is diagonal, so apply it entrywise on the diagonal.
            let k0c = k0.clone();
            let g = sp.gamma;
            let eta = sp.eta;
            (
                Box::new(move |s: f64| {
                    CMatrix::from_fn(big, big, |r, c| {
                        if r == c {
                            C64::new((g * (x + s * eta * k0c[(r, r)].re)).sin(), 0.0)
                        } else {
                            C64::new(0.0, 0.0)
                        }
                    })
                }),
                ge.sin(),
                (g * x).sin(),
            )
        };
        [
            [diag(1.0).scale_real(1.0 / norm), km.scale_real(off / norm)],
            [kp.scale_real(-off / norm), diag(-1.0).scale_real(1.0 / norm)],
        ]
    };
    let la = site(sp.u - sp.eps_a, on_a(&kp), on_a(&km), on_a(&k0));
    let lb = site(sp.u - sp.eps_b, on_b(&kp), on_b(&km), on_b(&k0));
    let twist = [(sp.delta * sp.eta).exp(), (-sp.delta * sp.eta).exp()];
    let mut t = CMatrix::zeros(big, big);
    for r in 0..2 {
        for k in 0..2 {
            t += &(&la[r][k] * &lb[k][r]).scale_real(twist[r]);
        }
    }
    let idx: Vec<usize> = (0..=n).map(|i| (n - i) * CUTOFF + i).collect();
    t.principal_submatrix(&idx)
}

#[test]
fn transfer_matches_dense_oracle() {
    let params = [
        SpectralParams::rational(0.83, 0.4, 1.0, -1.0, 0.0),
        SpectralParams::rational(-2.1, 0.25, 0.3, -0.6, 0.7),
        SpectralParams::trigonometric(0.61, 0.35, 0.45, 1.0, -1.0, 0.0),
        SpectralParams::trigonometric(2.4, 0.2, 0.3, 0.5, -0.9, -0.4),
    ];
    for sp in params {
        for n in 0..=8 {
            let got = yb::transfer(&sp, FockSector::new(n)).unwrap();
            let want = dense_transfer(&sp, n);
            let d = (got.matrix() - &want).max_abs();
            assert!(d <= 1e-12 * want.max_abs().max(1.0), "{sp:?}, N = {n}: {d:e}");
        }
    }
}

#[test]
fn r_matrices_satisfy_ybe() {
    let pts: [f64; 5] = [-1.3, -0.45, 0.35, 0.9, 1.7];
    for &u in &pts {
        for &v in &pts {
            if (u - v).abs() < 1e-3 {
                continue;
            }
            for eta in [0.3, 1.0] {
                let r = yb::check_ybe(|x| yb::r_rational(x, eta), u, v).unwrap();
                assert!(r <= 1e-12, "rational u = {u}, v = {v}: {r:e}");
                for gamma in [0.4, 1.1] {
                    let r = yb::check_ybe(|x| yb::r_trig(x, gamma, eta), u, v).unwrap();
                    assert!(r <= 1e-12, "trig u = {u}, v = {v}, gamma = {gamma}: {r:e}");
                }
            }
        }
    }
}

#[test]
fn trigonometric_r_degenerates_to_rational() {
    for u in [-1.2, 0.4, 2.0] {
        let t = yb::r_trig(u, 1e-6, 0.7).unwrap();
        let r = yb::r_rational(u, 0.7).unwrap();
        assert!((&t - &r).max_abs() <= 1e-9);
    }
}

#[test]
fn r_matrix_is_identity_at_zero_eta_and_permutation_at_zero_u() {
    assert_eq!(yb::r_rational(0.7, 0.0).unwrap(), CMatrix::identity(4));
    // R(0)·u/η is the swap on C² ⊗ C².
    let p = yb::r_rational_polynomial(0.0, 1.0);
    for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        assert_eq!(p[(r, c)].re, 1.0);
    }
    assert_eq!(p[(1, 1)].re, 0.0);
}

#[test]
fn rll_holds_for_all_algebras() {
    let algebras = [Algebra::Su2, Algebra::Su11(Mode::A), Algebra::Su11(Mode::B)];
    for alg in algebras {
        for n in 0..=4 {
            let s = FockSector::new(n);
            for (u, v) in [(0.7, -0.4), (1.9, 0.3), (-1.1, 0.55)] {
                let r = yb::rll_residual(alg, Family::Rational, u, v, 0.6, 0.0, s).unwrap();
                assert!(r <= 1e-11, "{alg:?} rational N = {n}: {r:e}");
                let r = yb::rll_residual(alg, Family::Trigonometric, u, v, 0.6, 0.45, s).unwrap();
                assert!(r <= 1e-11, "{alg:?} trig N = {n}: {r:e}");
            }
        }
    }
}

#[test]
fn transfer_is_symmetric_without_twist() {
    for sp in [
        SpectralParams::rational(0.9, 0.5, 1.0, -1.0, 0.0),
        SpectralParams::trigonometric(0.6, 0.5, 0.4, 1.0, -1.0, 0.0),
    ] {
        for n in 0..=8 {
            let t = yb::transfer(&sp, FockSector::new(n)).unwrap();
            assert!(t.matrix().hermiticity_defect() <= 1e-13);
            assert!(t.matrix().max_abs_imag() == 0.0);
        }
    }
}

#[test]
fn transfer_at_zero_eta_is_twice_identity() {
    for sp in [
        SpectralParams::rational(0.9, 0.0, 1.0, -1.0, 0.3),
        SpectralParams::trigonometric(0.6, 0.0, 0.4, 1.0, -1.0, 0.3),
    ] {
        let t = yb::transfer(&sp, FockSector::new(5)).unwrap();
        let d = t.matrix() - &CMatrix::identity(6).scale_real(2.0);
        assert!(d.max_abs() <= 1e-15);
    }
}

#[test]
fn expansion_residual_is_third_order() {
    for (sp, n) in [
        (SpectralParams::rational(5.0, 1e-2, 1.0, -1.0, 0.7), 3),
        (SpectralParams::rational(5.0, 1e-2, 1.0, -1.0, 0.0), 4),
        (SpectralParams::trigonometric(2.5, 1e-2, 0.3, 1.0, -1.0, 0.7), 2),
        (SpectralParams::trigonometric(2.5, 1e-2, 0.3, 1.0, -1.0, 0.0), 4),
    ] {
        let e = yb::expansion_residual(&sp, FockSector::new(n)).unwrap();
        assert!(e.order_estimate >= 2.8, "{sp:?}: slope {}", e.order_estimate);
    }
}

#[test]
fn poles_and_bad_deformations_are_errors() {
    let s = FockSector::new(2);
    assert!(matches!(
        yb::l_operator(Algebra::Su2, Family::Rational, 0.0, 1.0, 0.0),
        Err(Error::Pole { .. })
    ));
    assert!(matches!(
        yb::l_operator(Algebra::Su2, Family::Trigonometric, 0.5, 1.0, 0.0),
        Err(Error::Domain(_))
    ));
    let period = std::f64::consts::PI / 0.5;
    assert!(yb::l_operator(Algebra::Su2, Family::Trigonometric, period, 1.0, 0.5).is_err());
    let sp = SpectralParams::rational(1.0, 0.3, 1.0, -1.0, 0.0);
    assert!(yb::transfer(&sp, s).is_err());
}

#[test]
fn su2_l_operator_reproduces_spin_sector_shape() {
    let j = HalfInt::from_int(2);
    let s = FockSector::for_spin(j).unwrap();
    let l = yb::l_operator(Algebra::Su2, Family::Rational, 1.3, 0.4, 0.0).unwrap();
    use yb::OperatorMatrix;
    for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_eq!(l.entry_shift(r, c), 0);
        let e = l.entry(r, c, s).unwrap();
        assert_eq!(e.target(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_transfers_commute(
        u in 2.0f64..6.0, v in -6.0f64..-2.0, eta in 0.05f64..1.0,
        delta in -1.0f64..1.0, n in 0usize..=8,
    ) {
        let sp = SpectralParams::rational(u, eta, 1.0, -1.0, delta);
        let r = yb::transfer_commutator(&sp, v, FockSector::new(n)).unwrap();
        prop_assert!(r <= 1e-11, "residual {:e}", r);
    }

    #[test]
    fn trigonometric_transfers_commute(
        u in 1.2f64..2.8, v in -2.8f64..-1.2, eta in 0.05f64..0.5,
        gamma in 0.1f64..0.4, delta in -1.0f64..1.0, n in 0usize..=8,
    ) {
        let sp = SpectralParams::trigonometric(u, eta, gamma, 0.5, -0.5, delta);
        let r = yb::transfer_commutator(&sp, v, FockSector::new(n)).unwrap();
        prop_assert!(r <= 1e-11, "residual {:e}", r);
    }

    #[test]
    fn ybe_holds_at_random_points(u in -2.0f64..2.0, v in -2.0f64..2.0, gamma in 0.1f64..1.2) {
        prop_assume!((u - v).abs() > 1e-2 && u.abs() > 1e-2 && v.abs() > 1e-2);
        let r = yb::check_ybe(|x| Ok(yb::r_trig_polynomial(x, gamma, 0.7)), u, v).unwrap();
        prop_assert!(r <= 1e-12);
    }
}
