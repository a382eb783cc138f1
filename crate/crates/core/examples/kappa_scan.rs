//! Correlation diagram: levels of `j = 3` from the prolate to the oblate limit,
//! with the reflection `E_κ(τ) = −E_{−κ}(−τ)` checked on the way.
//!
//! ```bash
//! cargo run --example kappa_scan
//! ```

use gaudin_rotor::fock::HalfInt;
use gaudin_rotor::rotor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j = HalfInt::from_int(3);
    let grid: Vec<f64> = (-4..=4).map(|i| i as f64 / 4.0).collect();
    for &kappa in &grid {
        let e: Vec<String> = rotor::spectrum(j, kappa)?.iter().map(|r| format!("{:8.4}", r.energy)).collect();
        println!("kappa = {kappa:5.2}  {}", e.join(" "));
    }

    let half: Vec<f64> = grid.into_iter().filter(|k| *k >= 0.0).collect();
    let rep = rotor::reflection_check(j, &half)?;
    println!("reflection: max deviation {:.2e}, passed = {}", rep.max_deviation(), rep.passed);

    println!("prolate limit: {:?}", rotor::symmetric_top_levels(j, false));
    println!("oblate limit:  {:?}", rotor::symmetric_top_levels(j, true));
    Ok(())
}
