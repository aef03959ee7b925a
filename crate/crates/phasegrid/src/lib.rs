//! Phase-space-localized basis sets for one-dimensional bound-state problems.
//!
//! The crate solves the time-independent Schrödinger equation on a grid in
//! three steps: build a discrete variable representation (DVR) whose cardinal
//! functions interpolate the grid, place a von Neumann lattice of Gaussians on
//! the same phase-space rectangle, and contract the Gaussians through the DVR
//! so that the lattice inherits the grid's spectral accuracy. Because the
//! contracted Gaussians are localized in both position and momentum, rows and
//! columns of the Hamiltonian can be pruned by phase-space energy, trading
//! basis size against accuracy in a controlled way.
//!
//! Entry points:
//! - [`grid_dvr`]: periodic grids, sinc and Gauss–Legendre cardinal bases,
//!   kinetic matrices.
//! - [`operators`]: potential models, analytic reference levels, Hamiltonian
//!   assembly.
//! - [`vn_lattice`]: the Gaussian lattice, sampling matrix `G`, overlap
//!   `S = G†G`, and biorthogonal partner `B = G·S⁻¹`.
//! - [`linalg`]: dense eigensolvers and regularized Hermitian solves shared by
//!   everything above.
//! - [`solver`]: full and pruned eigensolves in symmetric and biorthogonal
//!   representations, plus spectrum comparison.
//! - [`report`]: experiment configs, CSV reports, and the command-line
//!   entry points.

pub mod error;
pub mod grid_dvr;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod solver;
pub mod vn_lattice;

pub use error::{Error, Result};
pub use grid_dvr::{
    build_fgh_kinetic, build_legendre_dvr, build_periodic_grid, dvr_theta_eval, sinc_dvr_theta,
    DvrBasis, DvrFamily, Grid,
};
pub use linalg::{
    condition_number, eig_general, eigh, eigh_generalized, solve_hermitian, RegularizedSolve,
    Spectrum, SpectrumMeta,
};
pub use operators::{
    analytic_levels, build_hamiltonian, eval_potential, HamiltonianMatrix, PotentialModel,
};
pub use report::{
    cmd_basis_dump, cmd_converge, cmd_prune_scan, cmd_solve, ExperimentConfig, ReportRow,
};
pub use solver::{
    build_mask, compare_spectra, default_tracked_levels, solve_direct, solve_pvb, PruneMask,
    PruneStrategy, Representation, SpectrumComparison,
};
pub use vn_lattice::{
    build_frame_matrix, build_lattice, contracted_eval, contracted_function, gaussian_value,
    ContractedFunction, FrameMatrices, VnLattice,
};
