//! Dense linear algebra shared by the solvers.
//!
//! Thin, checked wrappers around LAPACK (through `ndarray-linalg`) with the
//! conventions the rest of the crate relies on: ascending eigenvalues,
//! deterministic eigenvector phases, metric-orthonormal vectors for the
//! generalized problem, and a truncated-eigenvalue regularized solve for
//! ill-conditioned Hermitian systems such as near-singular overlap matrices.

use ndarray::{Array2, Axis};
use ndarray_linalg::{Cholesky, Diag, Eig, Eigh, SolveTriangular, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative eigenvalue threshold below which a Hermitian solve drops modes.
pub const TRUNCATION_RTOL: f64 = 1e-12;

/// Provenance and diagnostics attached to a [`Spectrum`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMeta {
    /// Stable label of the representation that produced the spectrum
    /// (empty for raw eigensolves).
    pub representation: &'static str,
    /// Dimension of the underlying unpruned basis.
    pub basis_size: usize,
    /// Number of retained basis functions (equals `basis_size` when no
    /// pruning was applied).
    pub retained_size: usize,
    /// Retained fraction `retained_size / basis_size`.
    pub fraction: f64,
    /// Condition number of the overlap matrix, when one was involved.
    pub cond_s: Option<f64>,
    /// Largest |Im λ| discarded when a general (non-Hermitian) solve reports
    /// its real parts.
    pub max_imag_discarded: f64,
    /// True when a regularized (truncated-eigenvalue) solve participated.
    pub regularized: bool,
    /// Eigenmodes dropped by regularization.
    pub dropped_modes: usize,
    /// True when the lattice placement has no principled prescription for the
    /// basis family and a heuristic was used.
    pub heuristic_lattice: bool,
}

impl Default for SpectrumMeta {
    fn default() -> Self {
        SpectrumMeta {
            representation: "",
            basis_size: 0,
            retained_size: 0,
            fraction: 1.0,
            cond_s: None,
            max_imag_discarded: 0.0,
            regularized: false,
            dropped_modes: 0,
            heuristic_lattice: false,
        }
    }
}

impl SpectrumMeta {
    fn sized(n: usize) -> Self {
        SpectrumMeta {
            basis_size: n,
            retained_size: n,
            ..SpectrumMeta::default()
        }
    }
}

/// Eigenvalues (ascending) with matching eigenvector columns and provenance
/// metadata.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Eigenvalues, ascending. For general (non-Hermitian) solves these are
    /// the sorted real parts; `meta.max_imag_discarded` records what was
    /// dropped.
    pub values: Vec<f64>,
    /// Eigenvectors; column `i` belongs to `values[i]`.
    pub vectors: Array2<Complex64>,
    /// Provenance and diagnostics.
    pub meta: SpectrumMeta,
}

/// Result of a regularized Hermitian solve.
#[derive(Debug, Clone)]
pub struct RegularizedSolve {
    /// Pseudo-inverse solution restricted to the retained eigenmodes.
    pub solution: Array2<Complex64>,
    /// Number of eigenmodes dropped by the truncation threshold.
    pub dropped_modes: usize,
    /// True when at least one mode was dropped.
    pub regularized: bool,
}

pub(crate) fn max_abs(a: &Array2<Complex64>) -> f64 {
    a.iter().fold(0.0f64, |acc, v| acc.max(v.norm()))
}

fn check_square(a: &Array2<Complex64>, what: &str) -> Result<usize> {
    let (r, c) = a.dim();
    if r != c {
        return Err(Error::InvalidArgument(format!(
            "{what} must be square, got {r}×{c}"
        )));
    }
    Ok(r)
}

fn check_hermitian(a: &Array2<Complex64>, what: &str) -> Result<()> {
    let n = check_square(a, what)?;
    let scale = max_abs(a).max(1.0);
    for i in 0..n {
        for j in i..n {
            let dev = (a[[i, j]] - a[[j, i]].conj()).norm();
            if dev > 1e-8 * scale {
                return Err(Error::InvalidArgument(format!(
                    "{what} is not Hermitian: |A[{i},{j}] − conj(A[{j},{i}])| = {dev:.3e}"
                )));
            }
        }
    }
    Ok(())
}

/// Average away round-off asymmetry so LAPACK sees an exactly Hermitian input.
fn hermitize(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let mut out = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            out[[i, j]] = 0.5 * (a[[i, j]] + a[[j, i]].conj());
        }
    }
    out
}

/// Conjugate transpose.
pub(crate) fn adjoint(a: &Array2<Complex64>) -> Array2<Complex64> {
    a.t().mapv(|v| v.conj())
}

/// Fix each eigenvector's arbitrary overall phase: rotate so the component of
/// largest magnitude (lowest index on ties) is real and positive. Keeps
/// repeated runs and backends comparable.
fn normalize_phases(vectors: &mut Array2<Complex64>) {
    for mut col in vectors.axis_iter_mut(Axis(1)) {
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for (i, v) in col.iter().enumerate() {
            let mag = v.norm();
            if mag > best_mag + 1e-14 * best_mag.max(1.0) {
                best = i;
                best_mag = mag;
            }
        }
        if best_mag > 0.0 {
            let rot = (col[best] / best_mag).conj();
            col.mapv_inplace(|v| v * rot);
        }
    }
}

/// Eigendecomposition of a Hermitian matrix. Values ascend; vectors are
/// orthonormal with deterministic phases.
pub fn eigh(a: &Array2<Complex64>) -> Result<Spectrum> {
    check_hermitian(a, "eigh input")?;
    let sym = hermitize(a);
    let (values, mut vectors) = sym
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Backend(format!("hermitian eigensolve failed: {e}")))?;
    // The LAPACK wrapper hands back the conjugate of the eigenvector columns
    // for complex input; undo that so A·v = λ·v holds columnwise.
    vectors.mapv_inplace(|v| v.conj());
    normalize_phases(&mut vectors);
    let n = values.len();
    Ok(Spectrum {
        values: values.to_vec(),
        vectors,
        meta: SpectrumMeta::sized(n),
    })
}

/// Generalized Hermitian eigenproblem `A·x = λ·B·x` with `B` positive
/// definite, by Cholesky congruence. Vectors come back `B`-orthonormal
/// (`x†·B·x = 1`); a non-positive-definite metric is reported as
/// [`Error::MetricSingular`] with its smallest eigenvalue.
pub fn eigh_generalized(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Result<Spectrum> {
    check_hermitian(a, "generalized eigh lhs")?;
    check_hermitian(b, "generalized eigh metric")?;
    if a.dim() != b.dim() {
        return Err(Error::InvalidArgument(format!(
            "generalized eigh needs matching shapes, got {:?} and {:?}",
            a.dim(),
            b.dim()
        )));
    }
    let metric = hermitize(b);
    let l = metric.cholesky(UPLO::Lower).map_err(|_| {
        // Cholesky is the positive-definiteness oracle; report the offending
        // eigenvalue so callers can log how singular the metric was.
        let lambda_min = eigh(&metric)
            .map(|s| s.values.first().copied().unwrap_or(f64::NAN))
            .unwrap_or(f64::NAN);
        Error::MetricSingular { lambda_min }
    })?;
    // C = L⁻¹ · A · L⁻† via two triangular solves.
    let y = l
        .solve_triangular(UPLO::Lower, Diag::NonUnit, &hermitize(a))
        .map_err(|e| Error::Backend(format!("triangular solve failed: {e}")))?;
    let z = l
        .solve_triangular(UPLO::Lower, Diag::NonUnit, &adjoint(&y))
        .map_err(|e| Error::Backend(format!("triangular solve failed: {e}")))?;
    let c = hermitize(&adjoint(&z));
    let (values, w) = c
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Backend(format!("hermitian eigensolve failed: {e}")))?;
    // Same conjugation quirk as in `eigh`.
    let w = w.mapv(|v| v.conj());
    // Back-transform: x = L⁻† · w, i.e. solve L†·x = w.
    let mut vectors = adjoint(&l)
        .solve_triangular(UPLO::Upper, Diag::NonUnit, &w)
        .map_err(|e| Error::Backend(format!("triangular solve failed: {e}")))?;
    normalize_phases(&mut vectors);
    let n = values.len();
    Ok(Spectrum {
        values: values.to_vec(),
        vectors,
        meta: SpectrumMeta::sized(n),
    })
}

/// Eigendecomposition of a general (non-Hermitian) matrix. The spectrum
/// stores ascending real parts (ties broken by imaginary part, then original
/// column order); the largest discarded |Im λ| lands in
/// `meta.max_imag_discarded` and acceptability is the caller's call.
pub fn eig_general(a: &Array2<Complex64>) -> Result<Spectrum> {
    let n = check_square(a, "eig input")?;
    if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::InvalidArgument(
            "eig input contains non-finite entries".into(),
        ));
    }
    let (values, vectors) = a
        .eig()
        .map_err(|e| Error::Backend(format!("general eigensolve failed: {e}")))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        (values[i].re, values[i].im, i)
            .partial_cmp(&(values[j].re, values[j].im, j))
            .expect("eigenvalues are finite")
    });
    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i].re).collect();
    let max_imag = values.iter().fold(0.0f64, |acc, v| acc.max(v.im.abs()));
    let mut sorted_vectors = Array2::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        sorted_vectors.column_mut(dst).assign(&vectors.column(src));
    }
    normalize_phases(&mut sorted_vectors);
    Ok(Spectrum {
        values: sorted_values,
        vectors: sorted_vectors,
        meta: SpectrumMeta {
            max_imag_discarded: max_imag,
            ..SpectrumMeta::sized(n)
        },
    })
}

/// Solve `A·X = RHS` for Hermitian positive-semidefinite `A` with truncated
/// eigenvalue regularization: eigenmodes below `1e−12·λ_max` are dropped and
/// the solution is the pseudo-inverse applied to the right-hand side. The
/// result reports how many modes were dropped.
pub fn solve_hermitian(a: &Array2<Complex64>, rhs: &Array2<Complex64>) -> Result<RegularizedSolve> {
    let n = check_square(a, "hermitian solve lhs")?;
    if rhs.nrows() != n {
        return Err(Error::InvalidArgument(format!(
            "rhs has {} rows, expected {n}",
            rhs.nrows()
        )));
    }
    let spec = eigh(a)?;
    let lambda_max = spec.values.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if lambda_max <= 0.0 {
        return Err(Error::MetricSingular {
            lambda_min: spec.values.first().copied().unwrap_or(0.0),
        });
    }
    let threshold = TRUNCATION_RTOL * lambda_max;
    let kept: Vec<usize> = (0..n).filter(|&i| spec.values[i] > threshold).collect();
    let dropped = n - kept.len();
    if kept.is_empty() {
        return Err(Error::MetricSingular {
            lambda_min: spec.values[0],
        });
    }
    // X = V · diag(1/λ) · V† · RHS over the retained modes.
    let vt_rhs = adjoint(&spec.vectors).dot(rhs);
    let mut scaled = Array2::zeros(vt_rhs.dim());
    for &i in &kept {
        let row = vt_rhs.row(i).mapv(|v| v / spec.values[i]);
        scaled.row_mut(i).assign(&row);
    }
    let solution = spec.vectors.dot(&scaled);
    Ok(RegularizedSolve {
        solution,
        dropped_modes: dropped,
        regularized: dropped > 0,
    })
}

/// Spectral condition number `|λ|_max / |λ|_min` of a Hermitian matrix;
/// infinite when the smallest eigenvalue magnitude underflows to zero.
pub fn condition_number(a: &Array2<Complex64>) -> Result<f64> {
    let spec = eigh(a)?;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for &v in &spec.values {
        lo = lo.min(v.abs());
        hi = hi.max(v.abs());
    }
    if hi == 0.0 || lo == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(hi / lo)
}

/// Convert a real matrix into the complex storage the solvers use.
pub fn complexify(a: &Array2<f64>) -> Array2<Complex64> {
    a.mapv(|v| Complex64::new(v, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use ndarray_linalg::Inverse;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Array2<Complex64> {
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                m[[i, j]] =
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
        }
        let h = &m + &adjoint(&m);
        h.mapv(|v| 0.5 * v)
    }

    #[test]
    fn eigh_pinned_small_matrices() {
        let eye = complexify(&Array2::eye(3));
        let s = eigh(&eye).unwrap();
        for &v in &s.values {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-14);
        }

        let d = complexify(&array![[3.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 2.0]]);
        let s = eigh(&d).unwrap();
        assert_eq!(s.values.len(), 3);
        assert_abs_diff_eq!(s.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.values[1], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.values[2], 3.0, epsilon = 1e-14);

        let pauli_x = complexify(&array![[0.0, 1.0], [1.0, 0.0]]);
        let s = eigh(&pauli_x).unwrap();
        assert_abs_diff_eq!(s.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.values[1], 1.0, epsilon = 1e-14);
        assert_eq!(s.meta.basis_size, 2);
        assert_abs_diff_eq!(s.meta.fraction, 1.0);
    }

    #[test]
    fn eigh_rejects_non_hermitian_and_non_square() {
        let a = complexify(&array![[0.0, 1.0], [0.0, 0.0]]);
        assert!(eigh(&a).is_err());
        let rect = Array2::<Complex64>::zeros((2, 3));
        assert!(eigh(&rect).is_err());
    }

    #[test]
    fn eigh_random_matrices_satisfy_residual_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..200 {
            let n = 2 + (trial % 11);
            let a = random_hermitian(&mut rng, n);
            let s = eigh(&a).unwrap();
            let scale = max_abs(&a).max(1.0);
            let av = a.dot(&s.vectors);
            for (i, &lam) in s.values.iter().enumerate() {
                for r in 0..n {
                    let dev = (av[[r, i]] - lam * s.vectors[[r, i]]).norm();
                    assert!(dev <= 1e-10 * scale, "residual {dev} at trial {trial}");
                }
            }
            let gram = adjoint(&s.vectors).dot(&s.vectors);
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((gram[[i, j]] - want).norm() < 1e-10);
                }
            }
            for w in s.values.windows(2) {
                assert!(w[0] <= w[1] + 1e-14);
            }
        }
    }

    #[test]
    fn generalized_eigh_pinned_pencils() {
        // Identity metric collapses to the plain solver.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(&mut rng, 5);
        let eye = complexify(&Array2::eye(5));
        let plain = eigh(&a).unwrap();
        let gen = eigh_generalized(&a, &eye).unwrap();
        for (x, y) in plain.values.iter().zip(&gen.values) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }

        // Proportional pencil: A = 2M.
        let m = {
            let r = random_hermitian(&mut rng, 4);
            let mut b = adjoint(&r).dot(&r);
            for i in 0..4 {
                b[[i, i]] += Complex64::new(1.0, 0.0);
            }
            b
        };
        let a2 = m.mapv(|v| 2.0 * v);
        let s = eigh_generalized(&a2, &m).unwrap();
        for &v in &s.values {
            assert_abs_diff_eq!(v, 2.0, epsilon = 1e-10);
        }

        // Diagonal pencil ratio.
        let a = complexify(&array![[1.0, 0.0], [0.0, 4.0]]);
        let b = complexify(&array![[1.0, 0.0], [0.0, 2.0]]);
        let s = eigh_generalized(&a, &b).unwrap();
        assert_abs_diff_eq!(s.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.values[1], 2.0, epsilon = 1e-14);
        // Metric orthonormality: x†·B·x = I.
        let xbx = adjoint(&s.vectors).dot(&b).dot(&s.vectors);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((xbx[[i, j]] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn generalized_eigh_random_pencils() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = 3 + (rng.random_range(0..6));
            let a = random_hermitian(&mut rng, n);
            let m = random_hermitian(&mut rng, n);
            let mut b = adjoint(&m).dot(&m);
            for i in 0..n {
                b[[i, i]] += Complex64::new(0.5, 0.0);
            }
            let s = eigh_generalized(&a, &b).unwrap();
            let av = a.dot(&s.vectors);
            let bv = b.dot(&s.vectors);
            let scale = max_abs(&a).max(max_abs(&b));
            for (i, &lam) in s.values.iter().enumerate() {
                for r in 0..n {
                    let dev = (av[[r, i]] - lam * bv[[r, i]]).norm();
                    assert!(dev <= 1e-9 * scale.max(lam.abs()));
                }
            }
        }
    }

    #[test]
    fn generalized_eigh_flags_indefinite_metric() {
        let a = complexify(&array![[1.0, 0.0], [0.0, 1.0]]);
        let b = complexify(&array![[1.0, 0.0], [0.0, -2.0]]);
        match eigh_generalized(&a, &b) {
            Err(Error::MetricSingular { lambda_min }) => {
                assert_abs_diff_eq!(lambda_min, -2.0, epsilon = 1e-12);
            }
            other => panic!("expected MetricSingular, got {other:?}"),
        }
    }

    #[test]
    fn general_eigensolve_sorts_by_real_part() {
        let a = complexify(&array![[3.0, 5.0], [0.0, 1.0]]);
        let s = eig_general(&a).unwrap();
        assert_abs_diff_eq!(s.values[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.values[1], 3.0, epsilon = 1e-12);
        assert!(s.meta.max_imag_discarded <= 1e-12);
        // Columns are genuine right eigenvectors.
        let av = a.dot(&s.vectors);
        for k in 0..2 {
            for r in 0..2 {
                let dev = (av[[r, k]] - s.values[k] * s.vectors[[r, k]]).norm();
                assert!(dev < 1e-10, "eig residual {dev}");
            }
        }
    }

    #[test]
    fn general_eigensolve_matches_eigh_on_hermitian_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hermitian(&mut rng, 8);
        let herm = eigh(&a).unwrap();
        let gen = eig_general(&a).unwrap();
        assert!(gen.meta.max_imag_discarded <= 1e-10);
        for (x, y) in herm.values.iter().zip(&gen.values) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-9);
        }
    }

    #[test]
    fn general_eigensolve_is_similarity_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_hermitian(&mut rng, 6);
        // Well-conditioned P = I + small perturbation.
        let mut p = complexify(&Array2::eye(6));
        for i in 0..6 {
            for j in 0..6 {
                p[[i, j]] += Complex64::new(
                    0.1 * rng.random_range(-1.0..1.0),
                    0.1 * rng.random_range(-1.0..1.0),
                );
            }
        }
        let p_inv = p.inv().unwrap();
        let similar = p_inv.dot(&a).dot(&p);
        let sa = eigh(&a).unwrap();
        let sb = eig_general(&similar).unwrap();
        for (x, y) in sa.values.iter().zip(&sb.values) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-8);
        }
    }

    #[test]
    fn regularized_solve_pinned_cases() {
        // S = I and S = 2I.
        let eye = complexify(&Array2::eye(3));
        let rhs = complexify(&array![[1.0], [2.0], [3.0]]);
        let out = solve_hermitian(&eye, &rhs).unwrap();
        assert_eq!(out.dropped_modes, 0);
        for i in 0..3 {
            assert!((out.solution[[i, 0]] - rhs[[i, 0]]).norm() < 1e-12);
        }
        let two = eye.mapv(|v| 2.0 * v);
        let out = solve_hermitian(&two, &rhs).unwrap();
        for i in 0..3 {
            assert!((out.solution[[i, 0]] - 0.5 * rhs[[i, 0]]).norm() < 1e-12);
        }

        // Random PD S = L·L†, RHS = S: solution is the identity.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut l = Array2::<Complex64>::zeros((4, 4));
        for i in 0..4 {
            for j in 0..=i {
                l[[i, j]] =
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
            l[[i, i]] += Complex64::new(2.0, 0.0);
        }
        let s = l.dot(&adjoint(&l));
        let out = solve_hermitian(&s, &s).unwrap();
        assert!(!out.regularized);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((out.solution[[i, j]] - want).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn regularized_solve_matches_direct_inverse_when_full_rank() {
        let a = complexify(&array![[2.0, 1.0], [1.0, 3.0]]);
        let rhs = complexify(&array![[1.0], [0.0]]);
        let out = solve_hermitian(&a, &rhs).unwrap();
        assert_eq!(out.dropped_modes, 0);
        assert!(!out.regularized);
        let back = a.dot(&out.solution);
        assert!((back[[0, 0]] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(back[[1, 0]].norm() < 1e-12);
    }

    #[test]
    fn regularized_solve_drops_null_modes() {
        let a = complexify(&array![[1.0, 0.0], [0.0, 0.0]]);
        let rhs = complexify(&array![[1.0], [0.0]]);
        let out = solve_hermitian(&a, &rhs).unwrap();
        assert_eq!(out.dropped_modes, 1);
        assert!(out.regularized);
        assert!((out.solution[[0, 0]] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(out.solution[[1, 0]].norm() < 1e-12);

        let zero = Array2::<Complex64>::zeros((2, 2));
        assert!(matches!(
            solve_hermitian(&zero, &rhs),
            Err(Error::MetricSingular { .. })
        ));
    }

    #[test]
    fn condition_number_pinned_cases() {
        let a = complexify(&array![[10.0, 0.0], [0.0, 1e-3]]);
        assert_abs_diff_eq!(condition_number(&a).unwrap(), 1e4, epsilon = 1e-6);
        let eye = complexify(&Array2::eye(4));
        assert_abs_diff_eq!(condition_number(&eye).unwrap(), 1.0, epsilon = 1e-12);
        let d = complexify(&array![[1.0, 0.0], [0.0, 100.0]]);
        assert_abs_diff_eq!(condition_number(&d).unwrap(), 100.0, epsilon = 1e-10);
        let sing = complexify(&array![[1.0, 0.0], [0.0, 0.0]]);
        assert!(condition_number(&sing).unwrap().is_infinite());
    }

    #[test]
    fn fgh_kinetic_is_spectrally_exact_for_odd_grids() {
        // Free-particle eigenvalues of the Fourier-grid kinetic matrix are
        // exactly k²/2m over the symmetric wavenumber set.
        use crate::grid_dvr::{build_fgh_kinetic, build_periodic_grid};
        let n = 9;
        let g = build_periodic_grid(0.0, 2.0 * std::f64::consts::PI, n).unwrap();
        let t = complexify(&build_fgh_kinetic(&g, 1.0).unwrap());
        let s = eigh(&t).unwrap();
        let mut want: Vec<f64> = (-(n as i64 - 1) / 2..=(n as i64 - 1) / 2)
            .map(|j| (j * j) as f64 / 2.0)
            .collect();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in s.values.iter().zip(&want) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-10);
        }
    }

    proptest! {
        #[test]
        fn eigenvalue_sum_matches_trace(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 2 + (seed as usize % 7);
            let a = random_hermitian(&mut rng, n);
            let s = eigh(&a).unwrap();
            let trace: f64 = (0..n).map(|i| a[[i, i]].re).sum();
            let sum: f64 = s.values.iter().sum();
            prop_assert!((trace - sum).abs() < 1e-9 * trace.abs().max(1.0));
        }

        #[test]
        fn condition_number_is_at_least_one(seed in 0u64..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 2 + (seed as usize % 5);
            let m = random_hermitian(&mut rng, n);
            let mut b = adjoint(&m).dot(&m);
            for i in 0..n {
                b[[i, i]] += Complex64::new(1e-3, 0.0);
            }
            let c = condition_number(&b).unwrap();
            prop_assert!(c >= 1.0 - 1e-12);
        }
    }
}
