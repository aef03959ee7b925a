//! Quadrature grids and DVR bases.
//!
//! Two concrete families are provided. The periodic-sinc (Fourier grid)
//! family lives on a uniform grid over `[x0, x0 + L)` with cardinal functions
//! given by the normalized Dirichlet kernel; its kinetic matrix is diagonal in
//! the discrete Fourier basis. The Gauss–Legendre family lives on the
//! Gauss–Legendre nodes of an interval `(a, b)`, with cardinal functions built
//! from orthonormalized Legendre polynomials through the unitary
//! quadrature transform `U`.
//!
//! Every cardinal function satisfies `θ_m(x_{m'}) = δ_{mm'}`; quadrature
//! weights are kept out of `θ` itself and folded into downstream sampling
//! matrices. Units use `ħ = 1` throughout.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform periodic grid: `x_m = x0 + m·(L/N)` for `m = 0..N−1`.
#[derive(Debug, Clone)]
pub struct Grid {
    /// Left edge of the periodic box.
    pub x0: f64,
    /// Box length `L`; the grid covers `[x0, x0 + L)`.
    pub length: f64,
    /// Number of points.
    pub n: usize,
    /// Ordered grid points.
    pub points: Vec<f64>,
    /// Uniform quadrature weight `L/N`.
    pub weight: f64,
}

/// The two implemented DVR families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DvrFamily {
    PeriodicSinc,
    GaussLegendre,
}

impl DvrFamily {
    /// Stable lowercase label used in report metadata.
    pub fn label(self) -> &'static str {
        match self {
            DvrFamily::PeriodicSinc => "periodic-sinc",
            DvrFamily::GaussLegendre => "gauss-legendre",
        }
    }
}

/// A DVR basis: quadrature nodes, weights, and everything needed to evaluate
/// cardinal functions and assemble kinetic matrices for one family.
#[derive(Debug, Clone)]
pub struct DvrBasis {
    /// Basis family.
    pub family: DvrFamily,
    /// Quadrature nodes, ascending.
    pub points: Vec<f64>,
    /// Quadrature weights (uniform `L/N` for the periodic-sinc family).
    pub weights: Vec<f64>,
    /// Domain `(a, b)`; for the periodic family `b = x0 + L`.
    pub domain: (f64, f64),
    /// FBR→DVR quadrature transform `U_{jm} = √(w_m)·P̃_j(x_m)`
    /// (Gauss–Legendre only).
    u: Option<Array2<f64>>,
    /// Stiffness matrix `∫ P̃_i′ P̃_j′ dx` by exact quadrature
    /// (Gauss–Legendre only).
    stiffness: Option<Array2<f64>>,
}

/// Build a uniform periodic grid.
///
/// Odd `N` is the conventional choice (the Fourier wavenumber set is then
/// symmetric without a Nyquist mode); even `N` is accepted and handled by a
/// symmetrized, cosine-only Nyquist term everywhere downstream, which keeps
/// cardinal functions real and kinetic matrices real symmetric.
pub fn build_periodic_grid(x0: f64, length: f64, n: usize) -> Result<Grid> {
    if !length.is_finite() || !x0.is_finite() || length <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "periodic grid needs finite x0 and length > 0, got x0 = {x0}, length = {length}"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidArgument(
            "periodic grid needs at least one point".into(),
        ));
    }
    let weight = length / n as f64;
    let points = (0..n).map(|m| x0 + m as f64 * weight).collect();
    Ok(Grid {
        x0,
        length,
        n,
        points,
        weight,
    })
}

/// Positive Fourier wavenumbers of the grid, excluding zero and the Nyquist
/// mode: `k_j = 2πj/L` for `j = 1..=J` where `J = (N−1)/2` (odd `N`) or
/// `N/2 − 1` (even `N`). The even-`N` Nyquist mode `k = πN/L` is treated
/// separately as a cosine-only term.
fn positive_wavenumbers(length: f64, n: usize) -> Vec<f64> {
    let j_max = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 - 1 };
    (1..=j_max)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / length)
        .collect()
}

/// Real periodic-sinc cardinal value at `x` for node `m`, via the closed-form
/// Dirichlet kernel. Equals the normalized sum `(1/N)·Σ_k exp(ik(x − x_m))`
/// over the symmetric wavenumber set (with the even-`N` Nyquist mode
/// symmetrized to a cosine).
fn sinc_theta_value(x0: f64, length: f64, n: usize, x_m: f64, x: f64) -> f64 {
    let _ = x0;
    let nn = n as f64;
    let t = 2.0 * std::f64::consts::PI * (x - x_m) / length;
    let half = 0.5 * t;
    let s = half.sin();
    if s.abs() < 1e-9 {
        // Within ~1e-9 of a periodic image of the node itself; the limit of
        // the Dirichlet ratio is 1 for both parity branches.
        return 1.0;
    }
    if n % 2 == 1 {
        (nn * half).sin() / (nn * s)
    } else {
        (((nn - 1.0) * half).sin() / s + (nn * half).cos()) / nn
    }
}

/// Periodic-sinc cardinal function `θ_m(x)`: the normalized Dirichlet kernel
/// over the grid's symmetric Fourier wavenumber set. Real-valued for both
/// parities (returned as a complex amplitude with zero imaginary part),
/// `L`-periodic, and exactly cardinal on the grid.
pub fn sinc_dvr_theta(grid: &Grid, m: usize, x: f64) -> Result<Complex64> {
    if m >= grid.n {
        return Err(Error::InvalidArgument(format!(
            "node index {m} out of range for grid of {} points",
            grid.n
        )));
    }
    Ok(Complex64::new(
        sinc_theta_value(grid.x0, grid.length, grid.n, grid.points[m], x),
        0.0,
    ))
}

/// Fourier-grid kinetic matrix `T = F†·diag(k²/2m)·F` on the periodic grid.
///
/// The matrix is a real symmetric circulant: entry `(m, m')` depends only on
/// `d = (m − m') mod N`, and is assembled from the cosine sum over positive
/// wavenumbers (plus the symmetrized Nyquist term for even `N`), which keeps
/// Hermiticity exact rather than to round-off.
pub fn build_fgh_kinetic(grid: &Grid, mass: f64) -> Result<Array2<f64>> {
    if !mass.is_finite() || mass <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mass must be positive and finite, got {mass}"
        )));
    }
    let n = grid.n;
    let nn = n as f64;
    let ks = positive_wavenumbers(grid.length, n);
    // First circulant row: t_d = (1/N)·Σ_k (k²/2m)·cos(k·d·Δ), Δ = L/N.
    let mut row = vec![0.0f64; n];
    for (d, slot) in row.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (j, k) in ks.iter().enumerate() {
            // k·d·Δ = 2π·(j+1)·d/N, evaluated from indices to keep the
            // circulant structure exact.
            let phase = 2.0 * std::f64::consts::PI * (j + 1) as f64 * d as f64 / nn;
            acc += 2.0 * (k * k / (2.0 * mass)) * phase.cos();
        }
        if n.is_multiple_of(2) && n > 1 {
            let k_nyq = std::f64::consts::PI * nn / grid.length;
            acc += (k_nyq * k_nyq / (2.0 * mass)) * (std::f64::consts::PI * d as f64).cos();
        }
        *slot = acc / nn;
    }
    let mut t = Array2::zeros((n, n));
    for m in 0..n {
        for mp in 0..n {
            // Canonical circulant distance min(d, N−d): cos makes t_d = t_{N−d}
            // in exact arithmetic; using one representative makes the matrix
            // symmetric exactly rather than to round-off.
            let d = (m + n - mp) % n;
            t[[m, mp]] = row[d.min(n - d)];
        }
    }
    Ok(t)
}

/// Legendre polynomial `P_j(ξ)` and its derivative at `ξ ∈ (−1, 1)`, by the
/// standard three-term recurrence and `(1−ξ²)P_n′ = n(P_{n−1} − ξP_n)`.
fn legendre_p_and_dp(j: usize, xi: f64) -> (f64, f64) {
    if j == 0 {
        return (1.0, 0.0);
    }
    let mut pm = 1.0; // P_0
    let mut p = xi; // P_1
    for k in 2..=j {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * xi * p - (kf - 1.0) * pm) / kf;
        pm = p;
        p = next;
    }
    let dp = j as f64 * (pm - xi * p) / (1.0 - xi * xi);
    (p, dp)
}

/// Gauss–Legendre nodes and weights on the reference interval `(−1, 1)`,
/// ascending, by Newton iteration on `P_n` from the Chebyshev-like initial
/// guesses.
fn gauss_legendre_reference(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    for i in 0..n {
        // Descending initial guess; stored ascending below.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_p_and_dp(n, x);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_p_and_dp(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Orthonormalized Legendre polynomial `P̃_j` on `(a, b)` and its derivative
/// with respect to `x`.
fn p_tilde_and_dx(j: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let scale = (b - a) / 2.0;
    let xi = (x - a) / scale - 1.0;
    let norm = ((2.0 * j as f64 + 1.0) / (b - a)).sqrt();
    let (p, dp) = legendre_p_and_dp(j, xi);
    (norm * p, norm * dp / scale)
}

/// Build the Gauss–Legendre DVR on `(a, b)` with `N` nodes.
///
/// The basis carries the unitary FBR→DVR transform `U_{jm} = √(w_m)·P̃_j(x_m)`
/// and the exact stiffness matrix `∫ P̃_i′ P̃_j′ dx` (the integrand has degree
/// ≤ 2N−4, so the N-point rule integrates it exactly); the kinetic matrix in
/// the DVR is `U†·(stiffness/2m)·U`.
pub fn build_legendre_dvr(a: f64, b: f64, n: usize) -> Result<DvrBasis> {
    if !a.is_finite() || !b.is_finite() || b <= a {
        return Err(Error::InvalidArgument(format!(
            "legendre domain needs b > a, got ({a}, {b})"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(
            "legendre DVR needs at least two nodes".into(),
        ));
    }
    let (xi, wi) = gauss_legendre_reference(n);
    let scale = (b - a) / 2.0;
    let points: Vec<f64> = xi.iter().map(|&x| a + scale * (x + 1.0)).collect();
    let weights: Vec<f64> = wi.iter().map(|&w| w * scale).collect();

    let mut u = Array2::zeros((n, n));
    for j in 0..n {
        for m in 0..n {
            let (p, _) = p_tilde_and_dx(j, a, b, points[m]);
            u[[j, m]] = weights[m].sqrt() * p;
        }
    }
    // Derivative samples d[j][m] = P̃_j′(x_m); stiffness by exact quadrature.
    let mut dsamp = Array2::zeros((n, n));
    for j in 0..n {
        for m in 0..n {
            let (_, dp) = p_tilde_and_dx(j, a, b, points[m]);
            dsamp[[j, m]] = dp;
        }
    }
    let mut stiffness = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for m in 0..n {
                acc += weights[m] * dsamp[[i, m]] * dsamp[[j, m]];
            }
            stiffness[[i, j]] = acc;
        }
    }
    Ok(DvrBasis {
        family: DvrFamily::GaussLegendre,
        points,
        weights,
        domain: (a, b),
        u: Some(u),
        stiffness: Some(stiffness),
    })
}

impl DvrBasis {
    /// Number of basis functions / quadrature nodes.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Wrap a periodic grid as a periodic-sinc DVR basis.
    pub fn periodic_sinc(grid: &Grid) -> DvrBasis {
        DvrBasis {
            family: DvrFamily::PeriodicSinc,
            points: grid.points.clone(),
            weights: vec![grid.weight; grid.n],
            domain: (grid.x0, grid.x0 + grid.length),
            u: None,
            stiffness: None,
        }
    }

    /// The FBR→DVR quadrature transform, when the family carries one.
    pub fn fbr_transform(&self) -> Option<&Array2<f64>> {
        self.u.as_ref()
    }

    /// Kinetic-energy matrix for a particle of the given mass, real symmetric
    /// for both families.
    pub fn kinetic(&self, mass: f64) -> Result<Array2<f64>> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "mass must be positive and finite, got {mass}"
            )));
        }
        match self.family {
            DvrFamily::PeriodicSinc => {
                let grid = self.as_grid();
                build_fgh_kinetic(&grid, mass)
            }
            DvrFamily::GaussLegendre => {
                let u = self.u.as_ref().expect("legendre basis carries U");
                let stiffness = self.stiffness.as_ref().expect("legendre stiffness");
                let scaled = stiffness.mapv(|v| v / (2.0 * mass));
                Ok(u.t().dot(&scaled).dot(u))
            }
        }
    }

    /// Cardinal function value `θ_m(x)`; see [`dvr_theta_eval`].
    pub fn theta(&self, m: usize, x: f64) -> Result<Complex64> {
        dvr_theta_eval(self, m, x)
    }

    /// Reconstruct the underlying periodic grid (periodic-sinc family only).
    fn as_grid(&self) -> Grid {
        debug_assert_eq!(self.family, DvrFamily::PeriodicSinc);
        Grid {
            x0: self.domain.0,
            length: self.domain.1 - self.domain.0,
            n: self.points.len(),
            points: self.points.clone(),
            weight: self.weights[0],
        }
    }
}

/// Evaluate the cardinal function `θ_m(x)` of either family.
///
/// Periodic-sinc values are defined for every `x` by periodicity; the
/// Gauss–Legendre family is polynomial and only meaningful on its interval,
/// so `x` outside `[a, b]` is a domain error. The normalization is cardinal:
/// `θ_m(x_{m'}) = δ_{mm'}` (for Gauss–Legendre this is
/// `θ_m(x) = √(w_m)·Σ_j P̃_j(x)·U_{jm}`).
pub fn dvr_theta_eval(basis: &DvrBasis, m: usize, x: f64) -> Result<Complex64> {
    let n = basis.size();
    if m >= n {
        return Err(Error::InvalidArgument(format!(
            "node index {m} out of range for basis of {n} functions"
        )));
    }
    match basis.family {
        DvrFamily::PeriodicSinc => {
            let (a, b) = basis.domain;
            Ok(Complex64::new(
                sinc_theta_value(a, b - a, n, basis.points[m], x),
                0.0,
            ))
        }
        DvrFamily::GaussLegendre => {
            let (a, b) = basis.domain;
            if x < a || x > b {
                return Err(Error::Domain(format!(
                    "x = {x} outside the legendre interval ({a}, {b})"
                )));
            }
            let u = basis.u.as_ref().expect("legendre basis carries U");
            let mut acc = 0.0;
            for j in 0..n {
                let (p, _) = p_tilde_and_dx(j, a, b, x);
                acc += p * u[[j, m]];
            }
            Ok(Complex64::new(basis.weights[m].sqrt() * acc, 0.0))
        }
    }
}
