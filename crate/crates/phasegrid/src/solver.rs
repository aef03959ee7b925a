//! Full and pruned eigensolves in the disputed representations.
//!
//! Four ways to diagonalize the same physics: directly in the DVR, or in the
//! contracted lattice basis with the overlap handled symmetrically
//! (generalized pencil), with the inverse overlap on the left only
//! (non-Hermitian similarity form), or with the biorthogonal partner on both
//! sides (inverse overlap as the metric). Without pruning all four agree; the
//! interesting question — the one the two-sided form exists to answer — is
//! what happens when rows and columns are pruned away first.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Spectrum, SpectrumMeta};
use crate::operators::{eval_potential, HamiltonianMatrix, PotentialModel};
use crate::vn_lattice::{FrameMatrices, VnLattice};

/// How the Hamiltonian is represented and diagonalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Diagonalize `H` directly in the DVR.
    DirectDvr,
    /// Generalized pencil `G_M†·H·G_M c = E·S_M c` (prune-then-invert).
    PvbSymmetric,
    /// Non-Hermitian similarity form `S_M⁻¹·G_M†·H·G_M` (inverse overlap on
    /// the left only).
    PvbBiorthLeft,
    /// Biorthogonal partner on both sides with metric `(S⁻¹)_MM`
    /// (invert-then-prune).
    PvbBiorthBoth,
}

impl Representation {
    /// Stable lowercase label used in metadata and reports.
    pub fn label(self) -> &'static str {
        match self {
            Representation::DirectDvr => "direct-dvr",
            Representation::PvbSymmetric => "pvb-symmetric",
            Representation::PvbBiorthLeft => "pvb-biorth-left",
            Representation::PvbBiorthBoth => "pvb-biorth-both",
        }
    }

    /// Parse the label form accepted in configs.
    pub fn parse(s: &str) -> Result<Representation> {
        match s {
            "direct-dvr" => Ok(Representation::DirectDvr),
            "pvb-symmetric" => Ok(Representation::PvbSymmetric),
            "pvb-biorth-left" => Ok(Representation::PvbBiorthLeft),
            "pvb-biorth-both" => Ok(Representation::PvbBiorthBoth),
            other => Err(Error::Config(format!(
                "unknown representation '{other}' (expected direct-dvr, pvb-symmetric, \
                 pvb-biorth-left, or pvb-biorth-both)"
            ))),
        }
    }
}

/// Rule for selecting which lattice functions to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PruneStrategy {
    /// Keep centers whose classical shell energy `P²/2m + V(X)` is at most
    /// `e_cut` (`+∞` keeps everything).
    EnergyShell { e_cut: f64 },
    /// Keep the `k` centers of smallest shell energy, ties broken by
    /// ascending lattice index.
    TopKByShellEnergy { k: usize },
    /// Keep everything.
    All,
}

impl PruneStrategy {
    /// Stable descriptor used in metadata and reports.
    pub fn describe(&self) -> String {
        match *self {
            PruneStrategy::EnergyShell { e_cut } => format!("energy-shell(e_cut={e_cut})"),
            PruneStrategy::TopKByShellEnergy { k } => format!("top-k(k={k})"),
            PruneStrategy::All => "all".to_string(),
        }
    }
}

/// A validated selection of lattice columns.
#[derive(Debug, Clone)]
pub struct PruneMask {
    /// Retained lattice indices, ascending and unique.
    pub retained: Vec<usize>,
    /// `|retained| / N`.
    pub fraction: f64,
    /// Human-readable strategy descriptor.
    pub strategy: String,
}

impl PruneMask {
    /// True when every lattice function is retained.
    pub fn is_full(&self) -> bool {
        self.fraction >= 1.0
    }
}

/// Classical shell energy of lattice center `n`.
pub fn shell_energy(lat: &VnLattice, model: &PotentialModel, mass: f64, n: usize) -> Result<f64> {
    let (x, p) = lat.center(n)?;
    Ok(p * p / (2.0 * mass) + eval_potential(model, x))
}

/// Build a prune mask from a strategy.
pub fn build_mask(
    lat: &VnLattice,
    model: &PotentialModel,
    mass: f64,
    strategy: PruneStrategy,
) -> Result<PruneMask> {
    model.validate()?;
    if !mass.is_finite() || mass <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mass must be positive and finite, got {mass}"
        )));
    }
    let n = lat.size();
    let retained: Vec<usize> = match strategy {
        PruneStrategy::All => (0..n).collect(),
        PruneStrategy::EnergyShell { e_cut } => {
            if e_cut.is_nan() {
                return Err(Error::InvalidArgument("e_cut must not be NaN".into()));
            }
            (0..n)
                .filter(|&i| shell_energy(lat, model, mass, i).expect("index in range") <= e_cut)
                .collect()
        }
        PruneStrategy::TopKByShellEnergy { k } => {
            if k < 1 || k > n {
                return Err(Error::InvalidArgument(format!(
                    "top-k count must lie in 1..={n}, got {k}"
                )));
            }
            let mut scored: Vec<(f64, usize)> = (0..n)
                .map(|i| {
                    (
                        shell_energy(lat, model, mass, i).expect("index in range"),
                        i,
                    )
                })
                .collect();
            scored.sort_by(|a, b| a.partial_cmp(b).expect("finite shell energies"));
            let mut kept: Vec<usize> = scored[..k].iter().map(|&(_, i)| i).collect();
            kept.sort_unstable();
            kept
        }
    };
    if retained.is_empty() {
        return Err(Error::EmptyMask(format!(
            "strategy {} retained no lattice functions",
            strategy.describe()
        )));
    }
    Ok(PruneMask {
        fraction: retained.len() as f64 / n as f64,
        retained,
        strategy: strategy.describe(),
    })
}

/// Default number of levels tracked when comparing pruned spectra: the
/// low-lying quarter of the retained basis, at most 5, at least 1.
pub fn default_tracked_levels(retained: usize) -> usize {
    (retained / 4).clamp(1, 5)
}

/// Diagonalize the Hamiltonian directly in its DVR.
pub fn solve_direct(h: &HamiltonianMatrix) -> Result<Spectrum> {
    let mut spec = linalg::eigh(&h.as_complex())?;
    spec.meta = SpectrumMeta {
        representation: Representation::DirectDvr.label(),
        basis_size: h.n,
        retained_size: h.n,
        fraction: 1.0,
        ..SpectrumMeta::default()
    };
    Ok(spec)
}

/// Keep the listed columns of a square matrix.
fn restrict_columns(a: &Array2<Complex64>, idx: &[usize]) -> Array2<Complex64> {
    let n = a.nrows();
    let mut out = Array2::zeros((n, idx.len()));
    for (dst, &src) in idx.iter().enumerate() {
        out.column_mut(dst).assign(&a.column(src));
    }
    out
}

/// Keep the listed rows *and* columns of a square matrix.
fn restrict_both(a: &Array2<Complex64>, idx: &[usize]) -> Array2<Complex64> {
    let k = idx.len();
    let mut out = Array2::zeros((k, k));
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            out[[r, c]] = a[[i, j]];
        }
    }
    out
}

/// Solve the lattice-basis eigenproblem in the requested representation over
/// the masked columns. Spectrum length equals the retained count; metadata
/// records sizes, metric condition number, and regularization flags.
pub fn solve_pvb(
    h: &HamiltonianMatrix,
    mat: &FrameMatrices,
    mask: &PruneMask,
    rep: Representation,
) -> Result<Spectrum> {
    if rep == Representation::DirectDvr {
        return Err(Error::InvalidArgument(
            "direct-dvr does not use the lattice; call solve_direct".into(),
        ));
    }
    let n = h.n;
    if mat.g.nrows() != n {
        return Err(Error::InvalidArgument(format!(
            "frame is {}×{} but H is {n}×{n}",
            mat.g.nrows(),
            mat.g.ncols()
        )));
    }
    if mask.retained.iter().any(|&i| i >= n) {
        return Err(Error::InvalidArgument(
            "prune mask indexes outside the lattice".into(),
        ));
    }
    let hc = h.as_complex();
    let base_meta = SpectrumMeta {
        representation: rep.label(),
        basis_size: n,
        retained_size: mask.retained.len(),
        fraction: mask.fraction,
        ..SpectrumMeta::default()
    };
    match rep {
        Representation::DirectDvr => unreachable!("rejected above"),
        Representation::PvbSymmetric => {
            let g_m = restrict_columns(&mat.g, &mask.retained);
            let a = linalg::adjoint(&g_m).dot(&hc).dot(&g_m);
            let s_m = restrict_both(&mat.s, &mask.retained);
            let cond = linalg::condition_number(&s_m)?;
            let mut spec = linalg::eigh_generalized(&a, &s_m)?;
            spec.meta = SpectrumMeta {
                cond_s: Some(cond),
                ..base_meta
            };
            Ok(spec)
        }
        Representation::PvbBiorthLeft => {
            let g_m = restrict_columns(&mat.g, &mask.retained);
            let a = linalg::adjoint(&g_m).dot(&hc).dot(&g_m);
            let s_m = restrict_both(&mat.s, &mask.retained);
            let cond = linalg::condition_number(&s_m)?;
            let solve = linalg::solve_hermitian(&s_m, &a)?;
            let mut spec = linalg::eig_general(&solve.solution)?;
            let max_imag = spec.meta.max_imag_discarded;
            spec.meta = SpectrumMeta {
                cond_s: Some(cond),
                max_imag_discarded: max_imag,
                regularized: solve.regularized,
                dropped_modes: solve.dropped_modes,
                ..base_meta
            };
            Ok(spec)
        }
        Representation::PvbBiorthBoth => {
            if mask.is_full() {
                // Unpruned, the two-sided pencil (B†HB, S⁻¹) is exactly
                // congruent to (G†HG, S) via c ↦ S·c; solving the latter
                // avoids squaring the overlap's condition number.
                let a = linalg::adjoint(&mat.g).dot(&hc).dot(&mat.g);
                let cond = linalg::condition_number(&mat.s)?;
                let mut spec = linalg::eigh_generalized(&a, &mat.s)?;
                spec.meta = SpectrumMeta {
                    cond_s: Some(cond),
                    regularized: mat.regularized,
                    dropped_modes: mat.dropped_modes,
                    ..base_meta
                };
                return Ok(spec);
            }
            // Invert the full overlap first, then restrict rows/columns.
            let eye = Array2::<Complex64>::eye(n);
            let s_inv_solve = linalg::solve_hermitian(&mat.s, &eye)?;
            let s_inv_mm = restrict_both(&s_inv_solve.solution, &mask.retained);
            let b_m = restrict_columns(&mat.b, &mask.retained);
            let a = linalg::adjoint(&b_m).dot(&hc).dot(&b_m);
            let cond = linalg::condition_number(&s_inv_mm)?;
            let mut spec = linalg::eigh_generalized(&a, &s_inv_mm)?;
            spec.meta = SpectrumMeta {
                cond_s: Some(cond),
                regularized: s_inv_solve.regularized || mat.regularized,
                dropped_modes: s_inv_solve.dropped_modes.max(mat.dropped_modes),
                ..base_meta
            };
            Ok(spec)
        }
    }
}

/// Spectrum-comparison record: per-level absolute errors of the lowest `k`
/// levels of two ascending spectra.
#[derive(Debug, Clone)]
pub struct SpectrumComparison {
    /// `|a_i − b_i|` for `i = 0..k`.
    pub errors: Vec<f64>,
    /// Largest entry of `errors`.
    pub max_error: f64,
}

/// Compare the lowest `k` levels of two spectra elementwise (both are already
/// ascending; this is the sorted-multiset comparison).
pub fn compare_spectra(a: &Spectrum, b: &Spectrum, k: usize) -> Result<SpectrumComparison> {
    if a.values.len() < k || b.values.len() < k {
        return Err(Error::InvalidArgument(format!(
            "cannot compare {k} levels: spectra have {} and {} values",
            a.values.len(),
            b.values.len()
        )));
    }
    let errors: Vec<f64> = (0..k).map(|i| (a.values[i] - b.values[i]).abs()).collect();
    let max_error = errors.iter().fold(0.0f64, |acc, &e| acc.max(e));
    Ok(SpectrumComparison { errors, max_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_dvr::{build_legendre_dvr, build_periodic_grid, DvrBasis};
    use crate::operators::build_hamiltonian;
    use crate::vn_lattice::{build_frame_matrix, build_lattice};
    use approx::assert_abs_diff_eq;

    fn harmonic() -> PotentialModel {
        PotentialModel::Harmonic { omega: 1.0 }
    }

    fn sinc_setup(
        x0: f64,
        l: f64,
        n: usize,
        nx: usize,
        np: usize,
        model: &PotentialModel,
    ) -> (HamiltonianMatrix, FrameMatrices, VnLattice) {
        let dvr = DvrBasis::periodic_sinc(&build_periodic_grid(x0, l, n).unwrap());
        let lat = build_lattice(&dvr, nx, np).unwrap();
        let mat = build_frame_matrix(&dvr, &lat).unwrap();
        let h = build_hamiltonian(&dvr, model, 1.0).unwrap();
        (h, mat, lat)
    }

    #[test]
    fn direct_solve_matches_analytic_oracles() {
        let dvr = DvrBasis::periodic_sinc(&build_periodic_grid(-10.0, 20.0, 129).unwrap());
        let h = build_hamiltonian(&dvr, &harmonic(), 1.0).unwrap();
        let spec = solve_direct(&h).unwrap();
        assert_abs_diff_eq!(spec.values[0], 0.5, epsilon = 1e-9);
        assert_eq!(spec.meta.representation, "direct-dvr");

        let morse = PotentialModel::Morse {
            depth: 10.0,
            a: 1.0,
            x_e: 0.0,
        };
        let dvr = DvrBasis::periodic_sinc(&build_periodic_grid(-2.0, 14.0, 257).unwrap());
        let h = build_hamiltonian(&dvr, &morse, 1.0).unwrap();
        let spec = solve_direct(&h).unwrap();
        assert_abs_diff_eq!(spec.values[0], 2.11106797749979, epsilon = 1e-6);
    }

    #[test]
    fn direct_solve_single_point_grid() {
        let dvr = DvrBasis::periodic_sinc(&build_periodic_grid(0.0, 2.0, 1).unwrap());
        let h = build_hamiltonian(&dvr, &harmonic(), 1.0).unwrap();
        let spec = solve_direct(&h).unwrap();
        // Single mode k = 0: eigenvalue is just V(x_0) = 0.
        assert_abs_diff_eq!(spec.values[0], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn mask_construction_pinned_cases() {
        let dvr = DvrBasis::periodic_sinc(&build_periodic_grid(-8.0, 16.0, 16).unwrap());
        let lat = build_lattice(&dvr, 4, 4).unwrap();

        let all = build_mask(&lat, &harmonic(), 1.0, PruneStrategy::All).unwrap();
        assert_abs_diff_eq!(all.fraction, 1.0);
        assert_eq!(all.retained.len(), 16);

        let inf = build_mask(
            &lat,
            &harmonic(),
            1.0,
            PruneStrategy::EnergyShell {
                e_cut: f64::INFINITY,
            },
        )
        .unwrap();
        assert_eq!(inf.retained, all.retained);

        // Brute-force enumeration of the four smallest shell energies.
        let mut scored: Vec<(f64, usize)> = (0..16)
            .map(|i| (shell_energy(&lat, &harmonic(), 1.0, i).unwrap(), i))
            .collect();
        scored.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut want: Vec<usize> = scored[..4].iter().map(|&(_, i)| i).collect();
        want.sort_unstable();
        let topk = build_mask(
            &lat,
            &harmonic(),
            1.0,
            PruneStrategy::TopKByShellEnergy { k: 4 },
        )
        .unwrap();
        assert_eq!(topk.retained, want);
        assert_eq!(topk.retained, vec![5, 6, 9, 10]);
        assert_abs_diff_eq!(topk.fraction, 0.25);

        // Below the minimum shell energy nothing survives.
        assert!(matches!(
            build_mask(
                &lat,
                &harmonic(),
                1.0,
                PruneStrategy::EnergyShell { e_cut: 0.1 }
            ),
            Err(Error::EmptyMask(_))
        ));
        assert!(build_mask(
            &lat,
            &harmonic(),
            1.0,
            PruneStrategy::TopKByShellEnergy { k: 0 }
        )
        .is_err());
        assert!(build_mask(
            &lat,
            &harmonic(),
            1.0,
            PruneStrategy::TopKByShellEnergy { k: 17 }
        )
        .is_err());
    }

    #[test]
    fn tracked_level_default() {
        assert_eq!(default_tracked_levels(64), 5);
        assert_eq!(default_tracked_levels(12), 3);
        assert_eq!(default_tracked_levels(4), 1);
        assert_eq!(default_tracked_levels(2), 1);
    }

    #[test]
    fn unpruned_representations_match_direct() {
        let (h, mat, lat) = sinc_setup(-8.0, 16.0, 16, 4, 4, &harmonic());
        let direct = solve_direct(&h).unwrap();
        let mask = build_mask(&lat, &harmonic(), 1.0, PruneStrategy::All).unwrap();
        let tol = 1e-8 * h.norm_max();
        for rep in [
            Representation::PvbSymmetric,
            Representation::PvbBiorthLeft,
            Representation::PvbBiorthBoth,
        ] {
            let spec = solve_pvb(&h, &mat, &mask, rep).unwrap();
            assert_eq!(spec.values.len(), 16);
            for (a, b) in spec.values.iter().zip(&direct.values) {
                assert!(
                    (a - b).abs() <= tol,
                    "{} deviates: |{a} − {b}| > {tol}",
                    rep.label()
                );
            }
        }
        assert!(solve_pvb(&h, &mat, &mask, Representation::DirectDvr).is_err());
    }

    #[test]
    fn unpruned_two_sided_matches_direct_on_legendre() {
        // The Gauss–Legendre (4,4) frame is the worst-conditioned admissible
        // cell (cond S ≈ 2e7); the congruent-pencil path must still match.
        let dvr = build_legendre_dvr(-10.0, 10.0, 16).unwrap();
        let lat = build_lattice(&dvr, 4, 4).unwrap();
        assert!(lat.heuristic);
        let mat = build_frame_matrix(&dvr, &lat).unwrap();
        assert!(mat.cond_s < 1e8);
        let h = build_hamiltonian(&dvr, &harmonic(), 1.0).unwrap();
        let direct = solve_direct(&h).unwrap();
        let mask = build_mask(&lat, &harmonic(), 1.0, PruneStrategy::All).unwrap();
        let tol = 1e-8 * h.norm_max();
        for rep in [
            Representation::PvbSymmetric,
            Representation::PvbBiorthLeft,
            Representation::PvbBiorthBoth,
        ] {
            let spec = solve_pvb(&h, &mat, &mask, rep).unwrap();
            for (a, b) in spec.values.iter().zip(&direct.values) {
                assert!((a - b).abs() <= tol, "{} deviates", rep.label());
            }
        }
    }

    #[test]
    fn left_and_symmetric_agree_on_pruned_masks() {
        let (h, mat, lat) = sinc_setup(-10.0, 20.0, 64, 8, 8, &harmonic());
        let mask = build_mask(
            &lat,
            &harmonic(),
            1.0,
            PruneStrategy::EnergyShell { e_cut: 8.0 },
        )
        .unwrap();
        let sym = solve_pvb(&h, &mat, &mask, Representation::PvbSymmetric).unwrap();
        let left = solve_pvb(&h, &mat, &mask, Representation::PvbBiorthLeft).unwrap();
        let tol = 1e-8 * h.norm_max();
        assert_eq!(sym.values.len(), left.values.len());
        for (a, b) in sym.values.iter().zip(&left.values) {
            assert!((a - b).abs() <= tol);
        }
        assert!(left.meta.max_imag_discarded <= tol);
    }

    #[test]
    fn pruned_accuracy_matches_frozen_calibration() {
        // Harmonic N = 64, (Nx, Np) = (8, 8). Ceilings are ~1.3× the measured
        // per-level errors of a calibration run, frozen once.
        let (h, mat, lat) = sinc_setup(-10.0, 20.0, 64, 8, 8, &harmonic());
        let direct = solve_direct(&h).unwrap();

        // Symmetric representation prunes poorly: O(1) errors at E_cut = 8.
        let mask8 = build_mask(
            &lat,
            &harmonic(),
            1.0,
            PruneStrategy::EnergyShell { e_cut: 8.0 },
        )
        .unwrap();
        assert_eq!(mask8.retained.len(), 12);
        let sym = solve_pvb(&h, &mat, &mask8, Representation::PvbSymmetric).unwrap();
        let cmp = compare_spectra(&sym, &direct, 3).unwrap();
        for (err, ceil) in cmp.errors.iter().zip([0.80, 0.12, 0.023]) {
            assert!(err <= &ceil, "symmetric error {err} above ceiling {ceil}");
        }

        // The two-sided biorthogonal representation prunes well: the same
        // retained sets reach ~1e−7..1e−5 at E_cut = 16.
        let mask16 = build_mask(
            &lat,
            &harmonic(),
            1.0,
            PruneStrategy::EnergyShell { e_cut: 16.0 },
        )
        .unwrap();
        assert_eq!(mask16.retained.len(), 16);
        let both = solve_pvb(&h, &mat, &mask16, Representation::PvbBiorthBoth).unwrap();
        let cmp = compare_spectra(&both, &direct, 3).unwrap();
        for (err, ceil) in cmp.errors.iter().zip([3.2e-7, 5.5e-6, 4.8e-5]) {
            assert!(err <= &ceil, "two-sided error {err} above ceiling {ceil}");
        }
    }

    #[test]
    fn symmetric_errors_non_increasing_in_e_cut() {
        let (h, mat, lat) = sinc_setup(-10.0, 20.0, 64, 8, 8, &harmonic());
        let direct = solve_direct(&h).unwrap();
        let mut prev = [f64::INFINITY; 3];
        for e_cut in [4.0, 8.0, 16.0, f64::INFINITY] {
            let mask =
                build_mask(&lat, &harmonic(), 1.0, PruneStrategy::EnergyShell { e_cut }).unwrap();
            let sym = solve_pvb(&h, &mat, &mask, Representation::PvbSymmetric).unwrap();
            let cmp = compare_spectra(&sym, &direct, 3).unwrap();
            for (lvl, err) in cmp.errors.iter().enumerate() {
                assert!(
                    *err <= prev[lvl] + 1e-10,
                    "level {lvl} error {err} rose above {} at e_cut {e_cut}",
                    prev[lvl]
                );
                prev[lvl] = *err;
            }
        }
    }

    #[test]
    fn spectrum_comparison_pinned() {
        let mk = |vals: &[f64]| Spectrum {
            values: vals.to_vec(),
            vectors: Array2::zeros((vals.len(), vals.len())),
            meta: SpectrumMeta::default(),
        };
        let a = mk(&[0.5, 1.5]);
        let same = compare_spectra(&a, &a, 2).unwrap();
        assert_eq!(same.errors, vec![0.0, 0.0]);

        let b = mk(&[0.5, 1.6]);
        let cmp = compare_spectra(&a, &b, 2).unwrap();
        assert_abs_diff_eq!(cmp.errors[0], 0.0);
        assert_abs_diff_eq!(cmp.errors[1], 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(cmp.max_error, 0.1, epsilon = 1e-12);

        assert!(compare_spectra(&a, &b, 3).is_err());
    }
}
