//! Rotor levels rebuilt from the Gaudin pair with `κ = cos(γΔε)`.
//!
//! ```bash
//! cargo run --example ray_reconstruction
//! ```

use gaudin_rotor::fock::HalfInt;
use gaudin_rotor::gaudin;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j = HalfInt::from_int(4);
    for kappa in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let rec = gaudin::reconstruct_ray(j, kappa, gaudin::DEFAULT_DELTA_EPS)?;
        let e: Vec<String> = rec.energies()?.iter().map(|x| format!("{x:8.4}")).collect();
        println!(
            "kappa = {kappa:5.2} gamma = {:.4} ({:<13}) max dev {:.1e}: {}",
            rec.gamma,
            rec.family.as_str(),
            rec.max_deviation,
            e.join(" ")
        );
    }

    // The spectral shift only rescales gamma.
    for delta_eps in [1.0, 2.0, 3.7] {
        let rec = gaudin::reconstruct_ray(j, 0.3, delta_eps)?;
        println!("delta_eps = {delta_eps}: lowest level {:.12}", rec.energies()?[0]);
    }
    Ok(())
}
