//! Solve the harmonic oscillator on a periodic sinc grid and compare the
//! lowest eigenvalues with the exact ladder E_n = ω(n + 1/2).
//!
//! Run with: cargo run --example harmonic_spectrum

use phasegrid::{build_hamiltonian, build_periodic_grid, solve_direct, DvrBasis, PotentialModel};

fn main() -> phasegrid::Result<()> {
    // A box of length 20 centered on the well, 129 grid points: generously
    // converged for the first few dozen levels.
    let grid = build_periodic_grid(-10.0, 20.0, 129)?;
    let dvr = DvrBasis::periodic_sinc(&grid);
    let model = PotentialModel::Harmonic { omega: 1.0 };
    let h = build_hamiltonian(&dvr, &model, 1.0)?;
    let spectrum = solve_direct(&h)?;

    println!("harmonic oscillator, ω = 1, N = {}", dvr.size());
    println!(
        "{:>5} {:>22} {:>22} {:>12}",
        "level", "computed", "exact", "error"
    );
    for n in 0..12 {
        let exact = n as f64 + 0.5;
        let value = spectrum.values[n];
        println!(
            "{n:>5} {value:>22.15} {exact:>22.15} {:>12.3e}",
            (value - exact).abs()
        );
    }
    Ok(())
}
