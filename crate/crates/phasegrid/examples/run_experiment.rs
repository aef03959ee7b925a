//! Drive a whole experiment from a TOML config through the library API —
//! the same path the command-line binary takes. Reports are plain CSV with
//! a `#` header that echoes the config and every numerical convention, so
//! each result file is reproducible from its own header alone.
//!
//! Run with: cargo run --example run_experiment

use phasegrid::{cmd_prune_scan, cmd_solve, ExperimentConfig};

fn main() -> phasegrid::Result<()> {
    let config_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let out = std::env::temp_dir().join("phasegrid-example");

    let cfg = ExperimentConfig::from_path(&config_dir.join("harmonic_quickstart.toml"))?;
    let solve_csv = cmd_solve(&cfg, &out)?;
    println!("solve report:      {}", solve_csv.display());

    let cfg = ExperimentConfig::from_path(&config_dir.join("harmonic_prune_scan.toml"))?;
    let scan_csv = cmd_prune_scan(&cfg, &out)?;
    println!("prune-scan report: {}", scan_csv.display());

    // Show a few data rows of the scan: retained fraction against the
    // tracked errors of both representations.
    let text = std::fs::read_to_string(&scan_csv)?;
    println!("\nfraction  level  sym error    two-sided error");
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let (fraction, level) = (cells[7], cells[9]);
        let (sym_err, both_err) = (cells[12], cells[14]);
        let short = |s: &str| {
            s.parse::<f64>()
                .map(|v| format!("{v:.2e}"))
                .unwrap_or_else(|_| s.to_string())
        };
        println!(
            "{:>8}  {level:>5}  {:>11}  {:>15}",
            short(fraction),
            short(sym_err),
            short(both_err)
        );
    }
    Ok(())
}
