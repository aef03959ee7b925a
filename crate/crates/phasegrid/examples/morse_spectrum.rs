//! Solve a Morse oscillator and compare its bound states with the closed
//! form E_n = ω₀(n + 1/2) − [ω₀(n + 1/2)]²/(4D), ω₀ = a·√(2D/m).
//!
//! With D = 10 and a = 1 the well holds exactly four bound states; the
//! eigenvalues above them belong to the box-discretized continuum and have
//! no closed-form counterpart, which is visible in the table below as a
//! clustering just above the dissociation energy D.
//!
//! Run with: cargo run --example morse_spectrum

use phasegrid::{
    analytic_levels, build_hamiltonian, build_periodic_grid, solve_direct, DvrBasis, PotentialModel,
};

fn main() -> phasegrid::Result<()> {
    let model = PotentialModel::Morse {
        depth: 10.0,
        a: 1.0,
        x_e: 0.0,
    };
    // Asymmetric box hugging the repulsive wall: x ∈ (−2, 12).
    let grid = build_periodic_grid(-2.0, 14.0, 257)?;
    let dvr = DvrBasis::periodic_sinc(&grid);
    let h = build_hamiltonian(&dvr, &model, 1.0)?;
    let spectrum = solve_direct(&h)?;

    let bound = analytic_levels(&model, 1.0, 4)?;
    println!("morse oscillator, D = 10, a = 1, N = {}", dvr.size());
    println!(
        "{:>5} {:>22} {:>22} {:>12}",
        "level", "computed", "closed form", "error"
    );
    for n in 0..8 {
        let value = spectrum.values[n];
        match bound.get(n) {
            Some(&exact) => println!(
                "{n:>5} {value:>22.15} {exact:>22.15} {:>12.3e}",
                (value - exact).abs()
            ),
            None => println!("{n:>5} {value:>22.15} {:>22} {:>12}", "(continuum)", "-"),
        }
    }
    Ok(())
}
