//! Gaudin operators as quasiclassical limits of the transfer operator,
//! compared with their closed forms, and their joint spectrum.
//!
//! ```bash
//! cargo run --example gaudin_limits
//! ```

use gaudin_rotor::fock::FockSector;
use gaudin_rotor::gaudin;
use gaudin_rotor::yang_baxter::{Family, SpectralParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = FockSector::new(4);
    for (family, gamma) in [(Family::Rational, 0.0), (Family::Trigonometric, 0.4)] {
        let sp = SpectralParams::trigonometric(0.0, 0.0, gamma, 1.0, -1.0, 0.5);
        let (limit, diag) = gaudin::tau_from_limit(family, s, &sp)?;
        let closed = gaudin::tau_closed_form(family, s, gamma, 1.0, -1.0, 0.5)?;
        println!(
            "{:<13} limit vs closed {:.2e} (estimate {:.1e}), [tau_A, tau_B] {:.1e}",
            family.as_str(),
            limit.max_entry_distance(&closed)?,
            diag.error_estimate[0],
            gaudin::commuting_family_check(&closed)?
        );
    }

    let pair = gaudin::tau_closed_form(Family::Rational, s, 0.0, 1.0, -1.0, 0.5)?;
    let joint = gaudin::simultaneous_eigenbasis(&pair)?;
    println!("joint spectrum on N = 4 (off-diagonal {:.1e}):", joint.off_diagonal);
    for (a, b) in joint.pairs {
        println!("  tau_A = {a:10.5}  tau_B = {b:10.5}");
    }
    Ok(())
}
