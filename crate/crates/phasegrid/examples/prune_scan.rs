//! Prune the lattice by classical shell energy and watch what happens to the
//! lowest levels in two different representations of the same masked basis.
//!
//! The symmetric representation (restrict G, then invert the restricted
//! overlap) degrades badly under pruning, while the two-sided biorthogonal
//! representation (invert the full overlap, then restrict) keeps converging —
//! with only a quarter of the basis it still delivers ~1e−7 accuracy. The
//! masked basis is identical in both cases; only the matrix representation
//! of the Hamiltonian over it differs.
//!
//! Run with: cargo run --example prune_scan

use phasegrid::{
    build_frame_matrix, build_hamiltonian, build_lattice, build_mask, build_periodic_grid,
    solve_direct, solve_pvb, DvrBasis, PotentialModel, PruneStrategy, Representation,
};

fn main() -> phasegrid::Result<()> {
    let grid = build_periodic_grid(-10.0, 20.0, 64)?;
    let dvr = DvrBasis::periodic_sinc(&grid);
    let model = PotentialModel::Harmonic { omega: 1.0 };
    let h = build_hamiltonian(&dvr, &model, 1.0)?;
    let direct = solve_direct(&h)?;
    let lat = build_lattice(&dvr, 8, 8)?;
    let mat = build_frame_matrix(&dvr, &lat)?;

    println!("harmonic well, 8×8 lattice, pruning by shell energy P²/2m + V(X)");
    println!(
        "{:>8} {:>9} {:>10} {:>16} {:>16}",
        "E_cut", "retained", "level", "sym error", "two-sided error"
    );
    for e_cut in [8.0, 16.0, 32.0, f64::INFINITY] {
        let mask = build_mask(&lat, &model, 1.0, PruneStrategy::EnergyShell { e_cut })?;
        let sym = solve_pvb(&h, &mat, &mask, Representation::PvbSymmetric)?;
        let both = solve_pvb(&h, &mat, &mask, Representation::PvbBiorthBoth)?;
        for level in 0..3 {
            println!(
                "{:>8} {:>9} {:>10} {:>16.3e} {:>16.3e}",
                if e_cut.is_finite() {
                    format!("{e_cut}")
                } else {
                    "∞".to_string()
                },
                mask.retained.len(),
                level,
                (sym.values[level] - direct.values[level]).abs(),
                (both.values[level] - direct.values[level]).abs(),
            );
        }
    }
    Ok(())
}
