//! Experiment configs, CSV reports, and the command entry points.
//!
//! Configs are TOML with four sections (`[experiment]`, `[model]`, `[basis]`,
//! `[solve]`); unknown keys are rejected and everything is validated before
//! any numerics run. Reports are comma-separated text with a `#`-prefixed
//! header that echoes the full config, the code version, and every
//! convention the numbers depend on (lattice offset, width rule, momentum
//! span, inversion policy, pruned metric), so a result file is
//! self-describing. Nothing in a report depends on time or environment:
//! rerunning a config reproduces the bytes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid_dvr::{build_legendre_dvr, build_periodic_grid, DvrBasis, DvrFamily};
use crate::operators::{analytic_levels, build_hamiltonian, HamiltonianMatrix, PotentialModel};
use crate::solver::{
    build_mask, compare_spectra, default_tracked_levels, solve_direct, solve_pvb, PruneMask,
    PruneStrategy, Representation,
};
use crate::vn_lattice::{
    build_frame_matrix, build_lattice, contracted_function, gaussian_value, FrameMatrices,
    VnLattice,
};

/// `[experiment]` section: identity and reproducibility knobs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    /// Short identifier echoed into every row; letters, digits, `-`, `_`.
    pub id: String,
    /// Seed echoed into metadata (reserved for randomized checks; the solver
    /// pipeline itself is deterministic).
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_seed() -> u64 {
    0
}

/// `[model]` section: potential family, parameters, and particle mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    /// `harmonic`, `morse`, or `quartic-double-well`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_e: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c4: Option<f64>,
    pub mass: f64,
}

/// `[basis]` section: DVR family, domain, size(s), lattice factorization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSection {
    /// `periodic-sinc` or `gauss-legendre`.
    pub family: String,
    /// Left edge of the domain.
    pub x0: f64,
    /// Domain length (`b − a` for Gauss–Legendre).
    pub length: f64,
    /// Basis size (solve / prune-scan / basis-dump).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Basis sizes for convergence sweeps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    /// Position-direction lattice count; must divide N. Defaults to the most
    /// balanced factorization (largest divisor of N not exceeding √N).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<usize>,
}

/// `[solve]` section: representations, level count, pruning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveSection {
    /// Lattice representations to run beside the direct DVR solve; empty
    /// means direct only.
    #[serde(default)]
    pub representations: Vec<String>,
    /// Levels reported per representation.
    #[serde(default = "default_levels")]
    pub levels: usize,
    /// `all` (default), `energy-shell`, or `top-k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    /// Shell-energy cutoff for a single solve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_cut: Option<f64>,
    /// Shell-energy cutoffs for prune scans (`inf` keeps everything).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_cut_list: Option<Vec<f64>>,
    /// Retained count for a single top-k solve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Retained counts for top-k prune scans.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_list: Option<Vec<usize>>,
    /// Plot grid size for basis dumps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot_points: Option<usize>,
    /// Lattice indices for basis dumps; defaults to one interior and one
    /// boundary-adjacent function.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
}

fn default_levels() -> usize {
    10
}

/// A fully parsed experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    pub model: ModelSection,
    pub basis: BasisSection,
    pub solve: SolveSection,
}

impl ExperimentConfig {
    /// Parse and validate a TOML config string.
    pub fn from_toml(text: &str) -> Result<ExperimentConfig> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Read, parse, and validate a config file.
    pub fn from_path(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Serialize back to TOML (used for the report header echo; round-trips
    /// losslessly through [`from_toml`]).
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Check every cross-field invariant that does not depend on the
    /// subcommand. Command-specific requirements (single N vs sweep, scan
    /// parameter lists) are checked by their accessors.
    pub fn validate(&self) -> Result<()> {
        let id = &self.experiment.id;
        if id.is_empty()
            || !id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
        {
            return Err(Error::Config(format!(
                "experiment.id must be non-empty [A-Za-z0-9_-], got '{id}'"
            )));
        }
        self.potential()?;
        if !self.model.mass.is_finite() || self.model.mass <= 0.0 {
            return Err(Error::Config(format!(
                "model.mass must be positive and finite, got {}",
                self.model.mass
            )));
        }
        self.family()?;
        if !self.basis.length.is_finite() || self.basis.length <= 0.0 {
            return Err(Error::Config(format!(
                "basis.length must be positive and finite, got {}",
                self.basis.length
            )));
        }
        match (&self.basis.n, &self.basis.n_list) {
            (None, None) => {
                return Err(Error::Config("basis needs either n or n_list".into()));
            }
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "basis.n and basis.n_list are mutually exclusive".into(),
                ));
            }
            _ => {}
        }
        for &n in self.all_sizes() {
            if n < 1 {
                return Err(Error::Config("basis sizes must be at least 1".into()));
            }
            self.factorization(n)?;
        }
        if self.solve.levels < 1 {
            return Err(Error::Config("solve.levels must be at least 1".into()));
        }
        for rep in &self.solve.representations {
            Representation::parse(rep)?;
        }
        if let Some(strategy) = &self.solve.strategy {
            match strategy.as_str() {
                "all" | "energy-shell" | "top-k" => {}
                other => {
                    return Err(Error::Config(format!(
                        "unknown solve.strategy '{other}' (expected all, energy-shell, or top-k)"
                    )));
                }
            }
        }
        if let Some(pp) = self.solve.plot_points {
            if pp < 2 {
                return Err(Error::Config("solve.plot_points must be at least 2".into()));
            }
        }
        Ok(())
    }

    /// The potential model, rejecting parameters that belong to other kinds.
    pub fn potential(&self) -> Result<PotentialModel> {
        let m = &self.model;
        let reject_extras = |allowed: &[&str]| -> Result<()> {
            let set: &[(&str, bool)] = &[
                ("omega", m.omega.is_some()),
                ("depth", m.depth.is_some()),
                ("a", m.a.is_some()),
                ("x_e", m.x_e.is_some()),
                ("c2", m.c2.is_some()),
                ("c4", m.c4.is_some()),
            ];
            for (name, present) in set {
                if *present && !allowed.contains(name) {
                    return Err(Error::Config(format!(
                        "model parameter '{name}' does not belong to kind '{}'",
                        m.kind
                    )));
                }
            }
            Ok(())
        };
        let model = match m.kind.as_str() {
            "harmonic" => {
                reject_extras(&["omega"])?;
                PotentialModel::Harmonic {
                    omega: m
                        .omega
                        .ok_or_else(|| Error::Config("harmonic model needs 'omega'".into()))?,
                }
            }
            "morse" => {
                reject_extras(&["depth", "a", "x_e"])?;
                PotentialModel::Morse {
                    depth: m
                        .depth
                        .ok_or_else(|| Error::Config("morse model needs 'depth'".into()))?,
                    a: m.a
                        .ok_or_else(|| Error::Config("morse model needs 'a'".into()))?,
                    x_e: m.x_e.unwrap_or(0.0),
                }
            }
            "quartic-double-well" => {
                reject_extras(&["c2", "c4"])?;
                PotentialModel::QuarticDoubleWell {
                    c2: m
                        .c2
                        .ok_or_else(|| Error::Config("double well needs 'c2'".into()))?,
                    c4: m
                        .c4
                        .ok_or_else(|| Error::Config("double well needs 'c4'".into()))?,
                }
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown model.kind '{other}' (expected harmonic, morse, or \
                     quartic-double-well)"
                )));
            }
        };
        model
            .validate()
            .map_err(|e| Error::Config(format!("invalid model parameters: {e}")))?;
        Ok(model)
    }

    /// The DVR family.
    pub fn family(&self) -> Result<DvrFamily> {
        match self.basis.family.as_str() {
            "periodic-sinc" => Ok(DvrFamily::PeriodicSinc),
            "gauss-legendre" => Ok(DvrFamily::GaussLegendre),
            other => Err(Error::Config(format!(
                "unknown basis.family '{other}' (expected periodic-sinc or gauss-legendre)"
            ))),
        }
    }

    /// Every basis size referenced by the config.
    fn all_sizes(&self) -> &[usize] {
        match (&self.basis.n, &self.basis.n_list) {
            (Some(n), None) => std::slice::from_ref(n),
            (None, Some(list)) => list.as_slice(),
            _ => &[],
        }
    }

    /// The single basis size (solve / prune-scan / basis-dump).
    pub fn single_n(&self) -> Result<usize> {
        self.basis
            .n
            .ok_or_else(|| Error::Config("this command needs a single basis.n (not n_list)".into()))
    }

    /// The sweep sizes (converge); at least two are required.
    pub fn n_sweep(&self) -> Result<&[usize]> {
        let list = self
            .basis
            .n_list
            .as_deref()
            .ok_or_else(|| Error::Config("converge needs basis.n_list".into()))?;
        if list.len() < 2 {
            return Err(Error::Config(format!(
                "converge needs at least two basis sizes, got {}",
                list.len()
            )));
        }
        Ok(list)
    }

    /// Lattice factorization `(Nx, Np)` for a basis size: the configured `nx`
    /// if it divides `N`, otherwise the most balanced split (largest divisor
    /// of `N` not exceeding `√N`).
    pub fn factorization(&self, n: usize) -> Result<(usize, usize)> {
        if let Some(nx) = self.basis.nx {
            if nx < 1 || !n.is_multiple_of(nx) {
                return Err(Error::Config(format!(
                    "basis.nx = {nx} does not divide N = {n} (the lattice needs Nx·Np = N)"
                )));
            }
            return Ok((nx, n / nx));
        }
        let root = (n as f64).sqrt().floor() as usize;
        for nx in (1..=root.max(1)).rev() {
            if n.is_multiple_of(nx) {
                return Ok((nx, n / nx));
            }
        }
        Ok((1, n))
    }

    /// Build the DVR basis at size `n`.
    pub fn build_dvr(&self, n: usize) -> Result<DvrBasis> {
        match self.family()? {
            DvrFamily::PeriodicSinc => Ok(DvrBasis::periodic_sinc(&build_periodic_grid(
                self.basis.x0,
                self.basis.length,
                n,
            )?)),
            DvrFamily::GaussLegendre => {
                build_legendre_dvr(self.basis.x0, self.basis.x0 + self.basis.length, n)
            }
        }
    }

    /// Representations requested beside the direct solve, in config order,
    /// deduplicated, `direct-dvr` filtered out (it always runs).
    pub fn lattice_representations(&self) -> Result<Vec<Representation>> {
        let mut out = Vec::new();
        for s in &self.solve.representations {
            let rep = Representation::parse(s)?;
            if rep != Representation::DirectDvr && !out.contains(&rep) {
                out.push(rep);
            }
        }
        Ok(out)
    }

    /// Single-solve prune strategy (`solve` command): `all` unless configured.
    pub fn single_strategy(&self) -> Result<PruneStrategy> {
        match self.solve.strategy.as_deref().unwrap_or("all") {
            "all" => Ok(PruneStrategy::All),
            "energy-shell" => {
                let e_cut = self.solve.e_cut.ok_or_else(|| {
                    Error::Config("strategy energy-shell needs solve.e_cut".into())
                })?;
                Ok(PruneStrategy::EnergyShell { e_cut })
            }
            "top-k" => {
                let k = self
                    .solve
                    .k
                    .ok_or_else(|| Error::Config("strategy top-k needs solve.k".into()))?;
                Ok(PruneStrategy::TopKByShellEnergy { k })
            }
            other => Err(Error::Config(format!("unknown strategy '{other}'"))),
        }
    }

    /// Scan parameters (`prune-scan` command): at least two cutoffs or counts.
    pub fn scan_strategies(&self) -> Result<Vec<PruneStrategy>> {
        match self.solve.strategy.as_deref() {
            Some("energy-shell") | None => {
                let cuts = self
                    .solve
                    .e_cut_list
                    .as_deref()
                    .ok_or_else(|| Error::Config("prune-scan needs solve.e_cut_list".into()))?;
                if cuts.len() < 2 {
                    return Err(Error::Config(
                        "prune-scan needs at least two e_cut values".into(),
                    ));
                }
                Ok(cuts
                    .iter()
                    .map(|&e_cut| PruneStrategy::EnergyShell { e_cut })
                    .collect())
            }
            Some("top-k") => {
                let ks = self
                    .solve
                    .k_list
                    .as_deref()
                    .ok_or_else(|| Error::Config("prune-scan needs solve.k_list".into()))?;
                if ks.len() < 2 {
                    return Err(Error::Config(
                        "prune-scan needs at least two k values".into(),
                    ));
                }
                Ok(ks
                    .iter()
                    .map(|&k| PruneStrategy::TopKByShellEnergy { k })
                    .collect())
            }
            Some(other) => Err(Error::Config(format!(
                "prune-scan cannot use strategy '{other}'"
            ))),
        }
    }
}

/// One row of a solve/converge report.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub experiment: String,
    pub representation: &'static str,
    pub n: usize,
    pub nx: usize,
    pub np: usize,
    pub fraction: f64,
    pub cond_s: Option<f64>,
    pub level: usize,
    pub value: f64,
    pub reference: Option<f64>,
    pub abs_error: Option<f64>,
    pub regularized_s: bool,
    pub heuristic_lattice: bool,
}

/// Column names shared by solve and converge reports.
const ROW_COLUMNS: &str =
    "experiment,representation,n,nx,np,fraction,cond_s,level,value,reference,abs_error,\
     regularized_s,heuristic_lattice";

/// Deterministic float cell: full double precision, `inf` spelled out, empty
/// for absent optionals.
fn fmt_f(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.12e}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f).unwrap_or_default()
}

impl ReportRow {
    fn csv_cells(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.experiment,
            self.representation,
            self.n,
            self.nx,
            self.np,
            fmt_f(self.fraction),
            fmt_opt(self.cond_s),
            self.level,
            fmt_f(self.value),
            fmt_opt(self.reference),
            fmt_opt(self.abs_error),
            self.regularized_s,
            self.heuristic_lattice,
        )
    }
}

/// The `#`-prefixed header block: version, command, config echo, convention
/// flags. Every convention that shapes the numbers is recorded so a report
/// file stands on its own.
fn header(cfg: &ExperimentConfig, command: &str, strategy_desc: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# phasegrid {} report", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# command: {command}");
    let _ = writeln!(
        out,
        "# flags: lattice_offset=half-cell alpha_rule=dp/(2dx) momentum_span=2*pi*N/L \
         inversion_policy=truncated-eig(1e-12) pruned_metric=s-inverse-restricted \
         legendre_convention=gauss-legendre prune_strategy={strategy_desc} seed={}",
        cfg.experiment.seed
    );
    out.push_str("# config:\n");
    for line in cfg.to_toml().lines() {
        let _ = writeln!(out, "#   {line}");
    }
    out
}

/// Shared solve pipeline for one basis size: direct spectrum plus every
/// requested lattice representation under one mask.
struct SolvedCase {
    nx: usize,
    np: usize,
    heuristic: bool,
    hamiltonian: HamiltonianMatrix,
    frame: Option<FrameMatrices>,
    lattice: Option<VnLattice>,
    direct: crate::linalg::Spectrum,
}

fn solve_case(cfg: &ExperimentConfig, n: usize, need_lattice: bool) -> Result<SolvedCase> {
    let model = cfg.potential()?;
    let dvr = cfg.build_dvr(n)?;
    let (nx, np) = cfg.factorization(n)?;
    let hamiltonian = build_hamiltonian(&dvr, &model, cfg.model.mass)?;
    let direct = solve_direct(&hamiltonian)?;
    let (frame, lattice, heuristic) = if need_lattice {
        let lat = build_lattice(&dvr, nx, np)?;
        let mat = build_frame_matrix(&dvr, &lat)?;
        let heuristic = lat.heuristic;
        (Some(mat), Some(lat), heuristic)
    } else {
        (None, None, dvr.family == DvrFamily::GaussLegendre)
    };
    Ok(SolvedCase {
        nx,
        np,
        heuristic,
        hamiltonian,
        frame,
        lattice,
        direct,
    })
}

/// Analytic reference levels where the model has them (harmonic: any count;
/// Morse: bound levels only; double well: none).
fn reference_levels(cfg: &ExperimentConfig, count: usize) -> Vec<Option<f64>> {
    let model = match cfg.potential() {
        Ok(m) => m,
        Err(_) => return vec![None; count],
    };
    for take in (0..=count).rev() {
        if let Ok(levels) = analytic_levels(&model, cfg.model.mass, take) {
            let mut out: Vec<Option<f64>> = levels.into_iter().map(Some).collect();
            out.resize(count, None);
            return out;
        }
    }
    vec![None; count]
}

fn write_report(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, contents)?;
    Ok(())
}

/// Run a single-`N` solve: the direct DVR spectrum plus every requested
/// lattice representation under the configured prune strategy. Writes
/// `solve.csv` into `out_dir` and returns its path.
pub fn cmd_solve(cfg: &ExperimentConfig, out_dir: &Path) -> Result<PathBuf> {
    cfg.validate()?;
    let n = cfg.single_n()?;
    let reps = cfg.lattice_representations()?;
    let strategy = cfg.single_strategy()?;
    let case = solve_case(cfg, n, !reps.is_empty())?;

    let mut rows: Vec<ReportRow> = Vec::new();
    let mut failures: Vec<String> = Vec::new();

    let levels = cfg.solve.levels.min(n);
    let refs = reference_levels(cfg, levels);
    for (level, &reference) in refs.iter().enumerate() {
        let value = case.direct.values[level];
        rows.push(ReportRow {
            experiment: cfg.experiment.id.clone(),
            representation: Representation::DirectDvr.label(),
            n,
            nx: case.nx,
            np: case.np,
            fraction: 1.0,
            cond_s: None,
            level,
            value,
            reference,
            abs_error: reference.map(|r| (value - r).abs()),
            regularized_s: false,
            heuristic_lattice: case.heuristic,
        });
    }

    if !reps.is_empty() {
        let lat = case.lattice.as_ref().expect("lattice built");
        let mat = case.frame.as_ref().expect("frame built");
        let model = cfg.potential()?;
        let mask = build_mask(lat, &model, cfg.model.mass, strategy)?;
        for rep in &reps {
            match solve_pvb(&case.hamiltonian, mat, &mask, *rep) {
                Ok(spec) => {
                    let tracked = levels.min(spec.values.len());
                    for level in 0..tracked {
                        let value = spec.values[level];
                        let reference = Some(case.direct.values[level]);
                        rows.push(ReportRow {
                            experiment: cfg.experiment.id.clone(),
                            representation: rep.label(),
                            n,
                            nx: case.nx,
                            np: case.np,
                            fraction: spec.meta.fraction,
                            cond_s: spec.meta.cond_s,
                            level,
                            value,
                            reference,
                            abs_error: reference.map(|r| (value - r).abs()),
                            regularized_s: spec.meta.regularized || mat.regularized,
                            heuristic_lattice: case.heuristic,
                        });
                    }
                }
                Err(e) => failures.push(format!("{}: {e}", rep.label())),
            }
        }
    }

    let mut out = header(cfg, "solve", &strategy.describe());
    for f in &failures {
        let _ = writeln!(out, "# error: representation {f}");
    }
    let _ = writeln!(out, "{ROW_COLUMNS}");
    for row in &rows {
        let _ = writeln!(out, "{}", row.csv_cells());
    }
    let path = out_dir.join("solve.csv");
    write_report(&path, &out)?;
    if let Some(first) = failures.into_iter().next() {
        return Err(Error::Backend(format!(
            "one or more representations failed: {first}"
        )));
    }
    Ok(path)
}

/// Run an error-vs-N sweep with mask = all. Each non-direct row carries the
/// extra `max_dev_vs_direct` column: the largest deviation from the direct
/// spectrum over the full eigenvalue list — the unpruned-equivalence check.
pub fn cmd_converge(cfg: &ExperimentConfig, out_dir: &Path) -> Result<PathBuf> {
    cfg.validate()?;
    let sizes = cfg.n_sweep()?;
    let reps = cfg.lattice_representations()?;

    let mut out = header(cfg, "converge", "all");
    let _ = writeln!(out, "{ROW_COLUMNS},max_dev_vs_direct");
    let mut failures: Vec<String> = Vec::new();
    for &n in sizes {
        let case = solve_case(cfg, n, !reps.is_empty())?;
        let levels = cfg.solve.levels.min(n);
        let refs = reference_levels(cfg, levels);
        for (level, &reference) in refs.iter().enumerate() {
            let value = case.direct.values[level];
            let row = ReportRow {
                experiment: cfg.experiment.id.clone(),
                representation: Representation::DirectDvr.label(),
                n,
                nx: case.nx,
                np: case.np,
                fraction: 1.0,
                cond_s: None,
                level,
                value,
                reference,
                abs_error: reference.map(|r| (value - r).abs()),
                regularized_s: false,
                heuristic_lattice: case.heuristic,
            };
            let _ = writeln!(out, "{},", row.csv_cells());
        }
        if reps.is_empty() {
            continue;
        }
        let lat = case.lattice.as_ref().expect("lattice built");
        let mat = case.frame.as_ref().expect("frame built");
        let model = cfg.potential()?;
        let mask = build_mask(lat, &model, cfg.model.mass, PruneStrategy::All)?;
        for rep in &reps {
            match solve_pvb(&case.hamiltonian, mat, &mask, *rep) {
                Ok(spec) => {
                    let dev = compare_spectra(&spec, &case.direct, n)?.max_error;
                    for level in 0..levels {
                        let value = spec.values[level];
                        let reference = Some(case.direct.values[level]);
                        let row = ReportRow {
                            experiment: cfg.experiment.id.clone(),
                            representation: rep.label(),
                            n,
                            nx: case.nx,
                            np: case.np,
                            fraction: 1.0,
                            cond_s: spec.meta.cond_s,
                            level,
                            value,
                            reference,
                            abs_error: reference.map(|r| (value - r).abs()),
                            regularized_s: spec.meta.regularized || mat.regularized,
                            heuristic_lattice: case.heuristic,
                        };
                        let _ = writeln!(out, "{},{}", row.csv_cells(), fmt_f(dev));
                    }
                }
                Err(e) => failures.push(format!("{} at n = {n}: {e}", rep.label())),
            }
        }
    }
    for f in &failures {
        let _ = writeln!(out, "# error: representation {f}");
    }
    let path = out_dir.join("converge.csv");
    write_report(&path, &out)?;
    if let Some(first) = failures.into_iter().next() {
        return Err(Error::Backend(format!(
            "one or more representations failed: {first}"
        )));
    }
    Ok(path)
}

/// Run a prune scan: for each cutoff/count, solve the symmetric and two-sided
/// biorthogonal representations over the same mask and emit them side by
/// side. Parameters whose mask comes out empty are reported and skipped.
pub fn cmd_prune_scan(cfg: &ExperimentConfig, out_dir: &Path) -> Result<PathBuf> {
    cfg.validate()?;
    let n = cfg.single_n()?;
    let strategies = cfg.scan_strategies()?;
    let case = solve_case(cfg, n, true)?;
    let lat = case.lattice.as_ref().expect("lattice built");
    let mat = case.frame.as_ref().expect("frame built");
    let model = cfg.potential()?;

    let mut out = header(cfg, "prune-scan", "scan");
    let _ = writeln!(
        out,
        "experiment,n,nx,np,strategy,param,retained,fraction,cond_s,level,direct_value,\
         sym_value,sym_abs_error,both_value,both_abs_error,regularized_s,heuristic_lattice"
    );
    let mut failures: Vec<String> = Vec::new();
    for strategy in &strategies {
        let param = match *strategy {
            PruneStrategy::EnergyShell { e_cut } => fmt_f(e_cut),
            PruneStrategy::TopKByShellEnergy { k } => k.to_string(),
            PruneStrategy::All => "all".into(),
        };
        let mask: PruneMask = match build_mask(lat, &model, cfg.model.mass, *strategy) {
            Ok(m) => m,
            Err(Error::EmptyMask(_)) => {
                let _ = writeln!(
                    out,
                    "# skipped: {} retained no lattice functions",
                    strategy.describe()
                );
                continue;
            }
            Err(e) => return Err(e),
        };
        let sym = solve_pvb(&case.hamiltonian, mat, &mask, Representation::PvbSymmetric);
        let both = solve_pvb(&case.hamiltonian, mat, &mask, Representation::PvbBiorthBoth);
        let (sym, both) = match (sym, both) {
            (Ok(s), Ok(b)) => (s, b),
            (Err(e), _) | (_, Err(e)) => {
                failures.push(format!("{}: {e}", strategy.describe()));
                let _ = writeln!(out, "# error: {}: failed to solve", strategy.describe());
                continue;
            }
        };
        let tracked = cfg
            .solve
            .levels
            .min(default_tracked_levels(mask.retained.len()))
            .min(sym.values.len())
            .min(both.values.len());
        for level in 0..tracked {
            let direct = case.direct.values[level];
            let sym_v = sym.values[level];
            let both_v = both.values[level];
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                cfg.experiment.id,
                n,
                case.nx,
                case.np,
                mask.strategy,
                param,
                mask.retained.len(),
                fmt_f(mask.fraction),
                fmt_opt(sym.meta.cond_s),
                level,
                fmt_f(direct),
                fmt_f(sym_v),
                fmt_f((sym_v - direct).abs()),
                fmt_f(both_v),
                fmt_f((both_v - direct).abs()),
                sym.meta.regularized || both.meta.regularized || mat.regularized,
                case.heuristic,
            );
        }
    }
    let path = out_dir.join("prune_scan.csv");
    write_report(&path, &out)?;
    if let Some(first) = failures.into_iter().next() {
        return Err(Error::Backend(format!(
            "one or more scan points failed: {first}"
        )));
    }
    Ok(path)
}

/// Dump bare and contracted traces of selected lattice functions, one CSV per
/// index (`basis_<n>.csv`), columns `x, re_g, re_gt, im_gt, abs_gt`. When no
/// indices are given, one interior and one boundary-adjacent function are
/// dumped, the latter exhibiting the periodic wraparound.
pub fn cmd_basis_dump(
    cfg: &ExperimentConfig,
    out_dir: &Path,
    indices: Option<&[usize]>,
    plot_points: Option<usize>,
) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let n = cfg.single_n()?;
    let (nx, np) = cfg.factorization(n)?;
    let points = plot_points.or(cfg.solve.plot_points).unwrap_or(1001);
    if points < 2 {
        return Err(Error::Config(format!(
            "plot-points must be at least 2, got {points}"
        )));
    }
    let picked: Vec<usize> = match indices.or(cfg.solve.indices.as_deref()) {
        Some(list) => {
            if list.is_empty() {
                return Err(Error::Config("empty index list".into()));
            }
            list.to_vec()
        }
        None => {
            // One typical interior function and one boundary-adjacent one
            // (last position row, middle momentum) to exhibit wraparound.
            let interior = (nx / 2) * np + np / 2;
            let boundary = (nx - 1) * np + np / 2;
            let mut v = vec![interior, boundary];
            v.dedup();
            v
        }
    };
    for &idx in &picked {
        if idx >= n {
            return Err(Error::Config(format!(
                "lattice index {idx} out of range for N = {n}"
            )));
        }
    }

    let dvr = cfg.build_dvr(n)?;
    let lat = build_lattice(&dvr, nx, np)?;
    let mat = build_frame_matrix(&dvr, &lat)?;
    let mut written = Vec::new();
    for idx in picked {
        let trace = contracted_function(&dvr, &mat, idx, points)?;
        let mut out = header(cfg, "basis-dump", "none");
        let (x_i, p_j) = lat.center(idx)?;
        let _ = writeln!(
            out,
            "# function: index={idx} center_x={} center_p={}",
            fmt_f(x_i),
            fmt_f(p_j)
        );
        let _ = writeln!(out, "x,re_g,re_gt,im_gt,abs_gt");
        for (x, v) in trace.xs.iter().zip(&trace.values) {
            let bare = gaussian_value(&lat, idx, *x)?;
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                fmt_f(*x),
                fmt_f(bare.re),
                fmt_f(v.re),
                fmt_f(v.im),
                fmt_f(v.norm())
            );
        }
        let path = out_dir.join(format!("basis_{idx}.csv"));
        write_report(&path, &out)?;
        written.push(path);
    }
    Ok(written)
}
