//! Angular momentum and su(1,1) from two oscillators on fixed-number sectors.
//!
//! ```bash
//! cargo run --example schwinger_algebra
//! ```

use gaudin_rotor::fock::{self, FockSector, HalfInt, Mode};
use gaudin_rotor::C64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j = HalfInt::from_twice(3);
    let (jx, jy, jz) = fock::su2_generators(j)?;
    let comm = &jx.commutator(&jy)? - &jz.scale(C64::new(0.0, 1.0));
    let cas = &(&(&jx * &jx) + &(&jy * &jy)) + &(&jz * &jz);
    println!("j = {j}: |[Jx, Jy] - iJz| = {:.1e}", comm.frobenius_norm());
    println!("        J^2 diagonal = {:?}", cas.matrix().diagonal().iter().map(|z| z.re).collect::<Vec<_>>());

    for n in [0, 3, 6] {
        let s = FockSector::new(n);
        let cas = fock::su11_mode_casimir(Mode::A, s)?;
        println!("N = {n}: su(1,1) mode Casimir = {:.6} (basis {:?})", cas.matrix()[(0, 0)].re, s.basis());
    }

    // The total su(1,1) Casimir is Jy^2 - 1/4 and is not diagonal in |N_A, N_B>.
    let s = FockSector::new(4);
    let total = fock::su11_total_casimir(s)?;
    println!("total Casimir spectrum on N = 4: {:?}", total.eigenvalues()?);
    println!("labels (N_A - N_B)^2/4 - 1/4:   {:?}", fock::su11_total_casimir_labels(s));

    let g = fock::suq11_generators(Mode::A, s, 0.3)?;
    println!("dressed K+ on N = 4 maps to level {}", g.k_plus.target().level());
    Ok(())
}
