//! Yang-Baxter and RLL residuals, commuting transfer operators and the
//! `η²` expansion of `t(u)`.
//!
//! ```bash
//! cargo run --example yang_baxter_checks
//! ```

use gaudin_rotor::fock::{FockSector, Mode};
use gaudin_rotor::yang_baxter::{self as yb, Algebra, Family, SpectralParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (u, v, eta, gamma) = (0.9, -0.35, 0.6, 0.45);
    println!("YBE rational      {:.2e}", yb::check_ybe(|x| yb::r_rational(x, eta), u, v)?);
    println!("YBE trigonometric {:.2e}", yb::check_ybe(|x| yb::r_trig(x, gamma, eta), u, v)?);

    let s = FockSector::new(4);
    for family in [Family::Rational, Family::Trigonometric] {
        let r = yb::rll_residual(Algebra::Su11(Mode::A), family, u, v, eta, gamma, s)?;
        println!("RLL su(1,1) {:<13} {r:.2e}", family.as_str());
    }

    let sp = SpectralParams::trigonometric(1.7, 0.3, 0.25, 0.5, -0.5, 0.4);
    for n in [2, 5, 8] {
        let c = yb::transfer_commutator(&sp, -2.1, FockSector::new(n))?;
        println!("[t(u), t(v)] on N = {n}: {c:.2e}");
    }

    for eta in [1e-1, 1e-2] {
        let sp = SpectralParams::rational(5.0, eta, 1.0, -1.0, 0.7);
        let e = yb::expansion_residual(&sp, FockSector::new(3))?;
        println!("eta = {eta:.0e}: residual {:.2e}, slope {:.2}", e.residual, e.order_estimate);
    }
    Ok(())
}
