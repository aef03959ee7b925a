//! The von Neumann phase-space lattice and its frame matrices.
//!
//! A lattice of `Nx·Np = N` Gaussians tiles the phase-space rectangle
//! `[x0, x0+L) × [−K/2, K/2)` with unit cells of exact area `Δx·Δp = 2π`
//! (ħ = 1). Sampling each bare Gaussian at the DVR nodes gives the frame
//! matrix `G`; the overlap `S = G†G` and the biorthogonal partner `B = G·S⁻¹`
//! complete the machinery. Contracting DVR cardinal functions with the
//! columns of `G` produces the periodized, spectrally-converged basis
//! functions `g̃_n(x) = Σ_m θ_m(x)·g_n(x_m)` — periodization is *not* built
//! into the samples; it emerges from the contraction, which is exactly why a
//! Gaussian centered near one box edge wraps around to the other.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid_dvr::{dvr_theta_eval, DvrBasis, DvrFamily};
use crate::linalg;

/// Condition-number gate above which frame results are flagged as
/// regularized/ill-conditioned.
pub const COND_GATE: f64 = 1e8;

/// Images summed on each side when periodizing a Gaussian analytically; the
/// neglected tail is below `exp(−α·(6.5·L/Nx)²·Nx²) ≪ 1e−17` for every
/// admissible lattice.
const PERIODIZATION_IMAGES: i64 = 6;

/// A von Neumann lattice of Gaussian phase-space centers.
#[derive(Debug, Clone)]
pub struct VnLattice {
    /// Position-direction cell count.
    pub nx: usize,
    /// Momentum-direction cell count.
    pub np: usize,
    /// Position cell width `Δx = L/Nx`.
    pub dx: f64,
    /// Momentum cell width `Δp = K/Np`.
    pub dp: f64,
    /// Total wavenumber span `K = 2πN/L`.
    pub k_span: f64,
    /// Gaussian width parameter `α = Δp/(2Δx)`.
    pub alpha: f64,
    /// Centers `(X_i, P_j)`, row-major over `(i, j)`:
    /// `X_i = x0 + (i+½)Δx`, `P_j = −K/2 + (j+½)Δp`.
    pub centers: Vec<(f64, f64)>,
    /// Left edge of the position domain.
    pub x0: f64,
    /// Position domain length.
    pub length: f64,
    /// True when the basis family has no principled lattice prescription
    /// (non-uniform nodes) and the uniform-box rule was reused heuristically.
    pub heuristic: bool,
}

impl VnLattice {
    /// Total number of lattice functions.
    pub fn size(&self) -> usize {
        self.centers.len()
    }

    /// Split a row-major lattice index into `(i, j)`.
    pub fn split_index(&self, n: usize) -> (usize, usize) {
        (n / self.np, n % self.np)
    }

    /// The phase-space center of function `n`.
    pub fn center(&self, n: usize) -> Result<(f64, f64)> {
        self.centers.get(n).copied().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "lattice index {n} out of range for {} functions",
                self.size()
            ))
        })
    }

    /// Sample the *analytically periodized* Gaussian `Σ_k g_n(x + kL)` at the
    /// DVR nodes (no quadrature weight). These vectors satisfy the lattice's
    /// shift and modulation covariance identities to machine precision — the
    /// image sums restore the exact discrete Weyl–Heisenberg structure that
    /// bare samples break near the box edges.
    pub fn periodized_samples(&self, dvr: &DvrBasis, n: usize) -> Result<Vec<Complex64>> {
        self.center(n)?;
        let l = self.length;
        let mut out = Vec::with_capacity(dvr.size());
        for &x in &dvr.points {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in -PERIODIZATION_IMAGES..=PERIODIZATION_IMAGES {
                acc += gaussian_value(self, n, x + k as f64 * l)?;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Place a von Neumann lattice over the phase-space rectangle of a DVR basis.
///
/// `Nx·Np` must equal the basis size; the wavenumber span is `K = 2πN/L`
/// with `L = b − a`. For non-uniform families (Gauss–Legendre) the same rule
/// is reused and the lattice is flagged heuristic: equidistant `X_i` have no
/// special relationship to the clustered quadrature nodes.
pub fn build_lattice(dvr: &DvrBasis, nx: usize, np: usize) -> Result<VnLattice> {
    let n = dvr.size();
    if nx < 1 || np < 1 || nx * np != n {
        return Err(Error::InvalidArgument(format!(
            "lattice factorization must satisfy Nx·Np = N: got Nx = {nx}, Np = {np}, N = {n}"
        )));
    }
    let (a, b) = dvr.domain;
    let length = b - a;
    let k_span = 2.0 * std::f64::consts::PI * n as f64 / length;
    let dx = length / nx as f64;
    let dp = k_span / np as f64;
    let alpha = dp / (2.0 * dx);
    let mut centers = Vec::with_capacity(n);
    for i in 0..nx {
        let x_i = a + (i as f64 + 0.5) * dx;
        for j in 0..np {
            let p_j = -k_span / 2.0 + (j as f64 + 0.5) * dp;
            centers.push((x_i, p_j));
        }
    }
    Ok(VnLattice {
        nx,
        np,
        dx,
        dp,
        k_span,
        alpha,
        centers,
        x0: a,
        length,
        heuristic: dvr.family == DvrFamily::GaussLegendre,
    })
}

/// Bare lattice Gaussian
/// `g_n(x) = (2α/π)^{1/4}·exp(−α(x − X_i)² + i·P_j·(x − X_i))`,
/// normalized to unit L² norm on the infinite line.
pub fn gaussian_value(lat: &VnLattice, n: usize, x: f64) -> Result<Complex64> {
    let (x_i, p_j) = lat.center(n)?;
    let d = x - x_i;
    let norm = (2.0 * lat.alpha / std::f64::consts::PI).powf(0.25);
    let envelope = (-lat.alpha * d * d).exp();
    let phase = Complex64::new(0.0, p_j * d).exp();
    Ok(norm * envelope * phase)
}

/// The frame matrix and its derived overlap/biorthogonal matrices.
#[derive(Debug, Clone)]
pub struct FrameMatrices {
    /// Weighted Gaussian samples `G_{m,n} = √(w_m)·g_n(x_m)`.
    pub g: Array2<Complex64>,
    /// Quadrature overlap `S = G†G`, Hermitian positive (semi)definite.
    pub s: Array2<Complex64>,
    /// Biorthogonal partner `B = G·S⁻¹` with `B†G = I`.
    pub b: Array2<Complex64>,
    /// Spectral condition number of `S`.
    pub cond_s: f64,
    /// True when the inverse was regularized (modes dropped) or `cond_s`
    /// exceeds the gate.
    pub regularized: bool,
    /// Overlap eigenmodes dropped by the truncated-eigenvalue solve.
    pub dropped_modes: usize,
}

/// Exactly Hermitian average `(A + A†)/2`.
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

/// Assemble `G`, `S = G†G`, and `B = G·S⁻¹` for a DVR/lattice pair.
///
/// `S⁻¹` is never formed by naive inversion: the biorthogonal matrix comes
/// from a Hermitian solve with truncated-eigenvalue regularization, and
/// results carry the condition number plus a `regularized` flag whenever
/// modes were dropped or `cond_s` exceeds 1e8.
pub fn build_frame_matrix(dvr: &DvrBasis, lat: &VnLattice) -> Result<FrameMatrices> {
    let n = dvr.size();
    if lat.size() != n {
        return Err(Error::InvalidArgument(format!(
            "lattice has {} functions but the DVR has {n} nodes",
            lat.size()
        )));
    }
    let mut g = Array2::zeros((n, n));
    for (m, (&x, &w)) in dvr.points.iter().zip(&dvr.weights).enumerate() {
        let sw = w.sqrt();
        for col in 0..n {
            g[[m, col]] = sw * gaussian_value(lat, col, x)?;
        }
    }
    let s = hermitize(&linalg::adjoint(&g).dot(&g));
    let cond_s = linalg::condition_number(&s)?;
    // B = G·S⁻¹ = (S⁻¹G†)†, via the regularized Hermitian solve.
    let solve = linalg::solve_hermitian(&s, &linalg::adjoint(&g)).map_err(|e| match e {
        Error::MetricSingular { .. } => Error::IllConditionedFrame { cond_s },
        other => other,
    })?;
    let b = linalg::adjoint(&solve.solution);
    Ok(FrameMatrices {
        g,
        s,
        b,
        cond_s,
        regularized: solve.dropped_modes > 0 || cond_s > COND_GATE,
        dropped_modes: solve.dropped_modes,
    })
}

/// A contracted lattice function: weighted node samples plus an optional
/// dense trace for plotting.
#[derive(Debug, Clone)]
pub struct ContractedFunction {
    /// Lattice index.
    pub index: usize,
    /// Weighted node samples `√(w_m)·g_n(x_m)` — the `n`-th column of `G`.
    pub samples: Vec<Complex64>,
    /// Plotting abscissae, a uniform inclusive grid over the domain.
    pub xs: Vec<f64>,
    /// Trace values `g̃_n(x) = Σ_m θ_m(x)·g_n(x_m)` at `xs`.
    pub values: Vec<Complex64>,
}

/// Evaluate the contracted function `g̃_n(x) = Σ_m θ_m(x)·g_n(x_m)` at one
/// point. The sum uses the *unweighted* node samples, so cardinality of `θ`
/// makes `g̃_n(x_m) = g_n(x_m)` exactly at the nodes.
pub fn contracted_eval(dvr: &DvrBasis, mat: &FrameMatrices, n: usize, x: f64) -> Result<Complex64> {
    let size = dvr.size();
    if n >= size {
        return Err(Error::InvalidArgument(format!(
            "lattice index {n} out of range for {size} functions"
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..size {
        let theta = dvr_theta_eval(dvr, m, x)?;
        let sample = mat.g[[m, n]] / dvr.weights[m].sqrt();
        acc += theta * sample;
    }
    Ok(acc)
}

/// Contract lattice function `n` through the DVR and trace it on a uniform
/// `plot_points`-point grid spanning the closed domain `[a, b]` (for the
/// periodic family `b = x0 + L`, so the first and last trace values exhibit
/// the periodicity of `θ`).
pub fn contracted_function(
    dvr: &DvrBasis,
    mat: &FrameMatrices,
    n: usize,
    plot_points: usize,
) -> Result<ContractedFunction> {
    if plot_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two plot points, got {plot_points}"
        )));
    }
    let size = dvr.size();
    if n >= size {
        return Err(Error::InvalidArgument(format!(
            "lattice index {n} out of range for {size} functions"
        )));
    }
    let samples: Vec<Complex64> = (0..size).map(|m| mat.g[[m, n]]).collect();
    let (a, b) = dvr.domain;
    let step = (b - a) / (plot_points - 1) as f64;
    let mut xs = Vec::with_capacity(plot_points);
    let mut values = Vec::with_capacity(plot_points);
    for k in 0..plot_points {
        let x = if k + 1 == plot_points {
            b
        } else {
            a + k as f64 * step
        };
        xs.push(x);
        values.push(contracted_eval(dvr, mat, n, x)?);
    }
    Ok(ContractedFunction {
        index: n,
        samples,
        xs,
        values,
    })
}
