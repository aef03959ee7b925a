//! With every lattice function retained, the lattice basis spans exactly the
//! same space as the grid it was contracted from — so all three lattice
//! representations (symmetric, one-sided, and two-sided biorthogonal) must
//! reproduce the direct grid spectrum to numerical precision. This example
//! verifies that identity on a harmonic well.
//!
//! Run with: cargo run --example unpruned_equivalence

use phasegrid::{
    build_frame_matrix, build_hamiltonian, build_lattice, build_mask, build_periodic_grid,
    compare_spectra, solve_direct, solve_pvb, DvrBasis, PotentialModel, PruneStrategy,
    Representation,
};

fn main() -> phasegrid::Result<()> {
    let grid = build_periodic_grid(-10.0, 20.0, 64)?;
    let dvr = DvrBasis::periodic_sinc(&grid);
    let model = PotentialModel::Harmonic { omega: 1.0 };
    let h = build_hamiltonian(&dvr, &model, 1.0)?;
    let direct = solve_direct(&h)?;

    let lat = build_lattice(&dvr, 8, 8)?;
    let mat = build_frame_matrix(&dvr, &lat)?;
    let mask = build_mask(&lat, &model, 1.0, PruneStrategy::All)?;
    println!(
        "N = 64, full 8×8 lattice, cond S = {:.3e}, ‖H‖ = {:.3e}",
        mat.cond_s,
        h.norm_max()
    );
    println!("{:>18} {:>24}", "representation", "max |E − E_direct|");
    for rep in [
        Representation::PvbSymmetric,
        Representation::PvbBiorthLeft,
        Representation::PvbBiorthBoth,
    ] {
        let spectrum = solve_pvb(&h, &mat, &mask, rep)?;
        let dev = compare_spectra(&spectrum, &direct, 64)?.max_error;
        println!("{:>18} {dev:>24.3e}", rep.label());
    }
    Ok(())
}
