//! Level table of a Ray rotor and of a molecule given by its constants.
//!
//! ```bash
//! cargo run --example levels_table
//! ```

use gaudin_rotor::rotor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kappa = -0.35;
    println!("Ray rotor, kappa = {kappa}");
    println!("{:>3} {:>4} {:>6} {:>22}", "j", "tau", "parity", "E");
    for r in rotor::ray_levels(kappa, 3)?.rows {
        println!("{:>3} {:>4} {:>6} {:>22.15}", r.j, r.tau, r.parity.as_str(), r.energy);
    }

    // Term values in the units of the constants (A >= B >= C).
    let (a, b, c) = (9.28, 2.93, 2.23);
    let table = rotor::levels_physical(a, b, c, 2)?;
    println!("\nA = {a}, B = {b}, C = {c} ({})", table.units);
    for r in table.rows {
        println!("  {}_{:<3} {:>12.6}", r.j, r.tau, r.energy);
    }
    Ok(())
}
