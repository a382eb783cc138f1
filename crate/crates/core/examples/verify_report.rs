//! Runs the full verification suite in-process and prints its summary.
//!
//! ```bash
//! cargo run --example verify_report
//! ```

use gaudin_rotor::cli::{output, verify, Command, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = RunConfig::empty();
    cfg.command = Some(Command::Verify);
    cfg.j_max = Some(8);
    cfg.validate()?;
    let report = verify::run(&cfg)?;
    print!("{}", verify::summary_text(&report, false));
    let json = output::render_report(&report)?;
    println!("report: {} bytes of JSON", json.len());
    Ok(())
}
