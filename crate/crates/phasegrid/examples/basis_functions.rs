//! Inspect the contracted lattice functions: how a bare phase-space Gaussian
//! acquires the grid's periodicity when it is contracted through the DVR.
//!
//! Each lattice function g̃_n interpolates the bare Gaussian g_n at every
//! grid node — the two are indistinguishable on the grid — but between and
//! beyond the nodes g̃_n follows the cardinal functions. For a function
//! centered near the right edge the tail reappears at the left edge: the
//! contracted basis lives on a ring, not a line.
//!
//! Run with: cargo run --example basis_functions

use phasegrid::{
    build_frame_matrix, build_lattice, build_periodic_grid, contracted_eval, contracted_function,
    gaussian_value, DvrBasis,
};

fn main() -> phasegrid::Result<()> {
    let grid = build_periodic_grid(-10.0, 20.0, 64)?;
    let dvr = DvrBasis::periodic_sinc(&grid);
    let lat = build_lattice(&dvr, 8, 8)?;
    let mat = build_frame_matrix(&dvr, &lat)?;
    println!(
        "8×8 lattice on x ∈ (−10, 10): Δx = {:.3}, Δp = {:.3}, cell area Δx·Δp = {:.5}",
        lat.dx,
        lat.dp,
        lat.dx * lat.dp
    );
    println!("overlap condition number: {:.3e}\n", mat.cond_s);

    // Interpolation: bare and contracted values agree at the nodes.
    let interior = 4 * 8 + 4;
    let mut worst = 0.0f64;
    for m in 0..dvr.size() {
        let bare = gaussian_value(&lat, interior, dvr.points[m])?;
        let tilde = contracted_eval(&dvr, &mat, interior, dvr.points[m])?;
        worst = worst.max((bare - tilde).norm());
    }
    println!("node interpolation: max |g − g̃| over all 64 nodes = {worst:.3e}");

    // Wraparound: a function centered one half-cell from the right edge puts
    // visible weight on the left edge.
    let boundary = 7 * 8 + 4;
    let (x_c, p_c) = lat.center(boundary)?;
    let trace = contracted_function(&dvr, &mat, boundary, 1001)?;
    let left_mass = trace
        .xs
        .iter()
        .zip(&trace.values)
        .filter(|(&x, _)| x <= -8.0)
        .map(|(_, v)| v.norm())
        .fold(0.0f64, f64::max);
    let peak = trace.values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    println!("boundary function {boundary} centered at (x, p) = ({x_c:.2}, {p_c:.2}):");
    println!("  peak |g̃| = {peak:.4},  max |g̃| on the left tenth of the box = {left_mass:.4}");
    println!(
        "  endpoint mismatch |g̃(a) − g̃(b)| = {:.3e} (periodic closure)",
        (trace.values.first().unwrap() - trace.values.last().unwrap()).norm()
    );
    Ok(())
}
