//! Potential models, analytic level oracles, and Hamiltonian assembly.
//!
//! Potentials are mass-free shape functions; the particle mass enters only
//! through the kinetic matrix. Consequently the harmonic analytic levels use
//! the effective frequency `ω_eff = ω/√mass` (the Hamiltonian
//! `p²/2m + ½ω²x²` rescales to a unit-mass oscillator at that frequency),
//! and the Morse levels use `ω₀ = a·√(2D/mass)`.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::grid_dvr::{DvrBasis, DvrFamily};

/// One-dimensional model potentials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialModel {
    /// `V(x) = ½·ω²·x²`.
    Harmonic { omega: f64 },
    /// `V(x) = D·(1 − exp(−a(x − x_e)))²`.
    Morse { depth: f64, a: f64, x_e: f64 },
    /// `V(x) = −c2·x² + c4·x⁴`.
    QuarticDoubleWell { c2: f64, c4: f64 },
}

impl PotentialModel {
    /// Stable lowercase label used in report metadata.
    pub fn label(&self) -> &'static str {
        match self {
            PotentialModel::Harmonic { .. } => "harmonic",
            PotentialModel::Morse { .. } => "morse",
            PotentialModel::QuarticDoubleWell { .. } => "quartic-double-well",
        }
    }

    /// Check the parameter-domain invariants.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            PotentialModel::Harmonic { omega } => omega > 0.0 && omega.is_finite(),
            PotentialModel::Morse { depth, a, x_e } => {
                depth > 0.0 && a > 0.0 && depth.is_finite() && a.is_finite() && x_e.is_finite()
            }
            PotentialModel::QuarticDoubleWell { c2, c4 } => {
                c4 > 0.0 && c2.is_finite() && c4.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "invalid {} parameters: {self:?}",
                self.label()
            )))
        }
    }
}

/// Evaluate the potential at a point. Total function: every finite `x` maps
/// to a finite energy for valid parameters.
pub fn eval_potential(model: &PotentialModel, x: f64) -> f64 {
    match *model {
        PotentialModel::Harmonic { omega } => 0.5 * omega * omega * x * x,
        PotentialModel::Morse { depth, a, x_e } => {
            let u = 1.0 - (-a * (x - x_e)).exp();
            depth * u * u
        }
        PotentialModel::QuarticDoubleWell { c2, c4 } => -c2 * x * x + c4 * x.powi(4),
    }
}

/// Number of bound levels of a Morse well: the level formula rises while
/// `n + ½ < λ` with `λ = √(2·mass·D)/a`, so states `n = 0 .. ⌊λ − ½⌋` exist.
pub fn morse_bound_levels(depth: f64, a: f64, mass: f64) -> usize {
    let lambda = (2.0 * mass * depth).sqrt() / a;
    if lambda <= 0.5 {
        0
    } else {
        (lambda - 0.5).floor() as usize + 1
    }
}

/// Closed-form energy levels for the models that have them, ascending.
///
/// Harmonic: `E_n = ω_eff·(n + ½)` with `ω_eff = ω/√mass`. Morse:
/// `E_n = ω₀(n + ½) − [ω₀(n + ½)]²/(4D)` with `ω₀ = a·√(2D/mass)`, valid only
/// for the bound levels; requesting more is rejected because the formula
/// turns over and stops describing eigenstates there. The double well has no
/// closed form.
pub fn analytic_levels(model: &PotentialModel, mass: f64, count: usize) -> Result<Vec<f64>> {
    model.validate()?;
    if !mass.is_finite() || mass <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mass must be positive and finite, got {mass}"
        )));
    }
    match *model {
        PotentialModel::Harmonic { omega } => {
            let omega_eff = omega / mass.sqrt();
            Ok((0..count).map(|n| omega_eff * (n as f64 + 0.5)).collect())
        }
        PotentialModel::Morse { depth, a, .. } => {
            let bound = morse_bound_levels(depth, a, mass);
            if count > bound {
                return Err(Error::InvalidArgument(format!(
                    "morse well supports {bound} bound levels, {count} requested"
                )));
            }
            let omega0 = a * (2.0 * depth / mass).sqrt();
            Ok((0..count)
                .map(|n| {
                    let q = omega0 * (n as f64 + 0.5);
                    q - q * q / (4.0 * depth)
                })
                .collect())
        }
        PotentialModel::QuarticDoubleWell { .. } => Err(Error::NotAvailable(
            "quartic double well has no closed-form levels".into(),
        )),
    }
}

/// Hamiltonian `H = T + diag(V)` in a DVR, with its basis descriptor.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    /// Real symmetric matrix (both DVR families give real kinetics and the
    /// potential is diagonal).
    pub h: Array2<f64>,
    /// DVR family the matrix is expressed in.
    pub family: DvrFamily,
    /// Basis size.
    pub n: usize,
    /// Position-space domain of the basis.
    pub domain: (f64, f64),
    /// Particle mass.
    pub mass: f64,
}

impl HamiltonianMatrix {
    /// Largest absolute element; the scale for relative spectral tolerances.
    pub fn norm_max(&self) -> f64 {
        self.h.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// The matrix in the complex storage used by the eigensolvers.
    pub fn as_complex(&self) -> Array2<num_complex::Complex64> {
        crate::linalg::complexify(&self.h)
    }
}

/// Assemble `H = T(dvr, mass) + diag(V(x_m))`.
pub fn build_hamiltonian(
    dvr: &DvrBasis,
    model: &PotentialModel,
    mass: f64,
) -> Result<HamiltonianMatrix> {
    model.validate()?;
    let mut h = dvr.kinetic(mass)?;
    for (m, &x) in dvr.points.iter().enumerate() {
        h[[m, m]] += eval_potential(model, x);
    }
    Ok(HamiltonianMatrix {
        h,
        family: dvr.family,
        n: dvr.size(),
        domain: dvr.domain,
        mass,
    })
}
