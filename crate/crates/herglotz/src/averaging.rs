//! Coupling-averaged singular spectral measures.
//!
//! For a Herglotz function `h` and coupling `r`, let `mu_r` be the
//! measure of `1/(r - h)` and `mu_r^(s)` its singular part. This module
//! approximates the average of `mu_r^(s)` over `r` in `[0, 1]` with a
//! midpoint rule, bins the atoms into a density histogram, and compares
//! the result with the analytic prediction: the averaged measure is
//! absolutely continuous with density `1` where `0 < h < 1` off the
//! support of `mu` and `0` elsewhere. The prediction follows from the
//! change of variables `r = h(lambda)`: each atom `(lambda(r), 1/h')`
//! integrates to `dr/h' * h' = d lambda` on the strip `0 < h < 1`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::herglotz::HerglotzTriple;
use crate::measure::MERGE_TOL;
use crate::rankone::{RankOneModel, SpectralSample};

/// Which spectral sampler drives a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Solve `h(lambda) = r` per analyticity interval.
    RootFinding,
    /// Solve the secular equation of the rank-one model.
    Secular,
}

/// Sweep discretization: midpoint samples `r_k = (2k - 1)/(2 n_r)` and a
/// half-open binning window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    n_r: usize,
    window: (f64, f64),
    n_bins: usize,
    backend: Backend,
}

impl SweepConfig {
    pub fn new(n_r: usize, window: (f64, f64), n_bins: usize, backend: Backend) -> Result<Self> {
        if n_r == 0 {
            return Err(Error::ZeroCount { what: "n_r" });
        }
        if n_bins == 0 {
            return Err(Error::ZeroCount { what: "n_bins" });
        }
        for (what, value) in [
            ("window low edge", window.0),
            ("window high edge", window.1),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { what, value });
            }
        }
        if window.0 >= window.1 {
            return Err(Error::EmptyWindow {
                lo: window.0,
                hi: window.1,
            });
        }
        Ok(SweepConfig {
            n_r,
            window,
            n_bins,
            backend,
        })
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    fn r_at(&self, k: usize) -> f64 {
        (2 * k + 1) as f64 / (2 * self.n_r) as f64
    }
}

/// Binned estimate of the averaged density over a window; bins are
/// half-open `[left, right)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    lambda_min: f64,
    bin_width: f64,
    values: Vec<f64>,
}

impl DensityGrid {
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n_bins(&self) -> usize {
        self.values.len()
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_min + self.bin_width * self.values.len() as f64
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        self.lambda_min + (i as f64 + 0.5) * self.bin_width
    }

    /// Total binned mass, `sum of value * bin_width`.
    pub fn integrated_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.bin_width
    }

    fn bin_of(&self, x: f64) -> Option<usize> {
        if x < self.lambda_min || x >= self.lambda_max() {
            return None;
        }
        let idx = ((x - self.lambda_min) / self.bin_width).floor() as usize;
        Some(idx.min(self.values.len() - 1))
    }
}

/// Runs a sweep for a Herglotz triple. The secular backend requires the
/// triple to be convertible to a rank-one model (atomic, `alpha > 0`).
pub fn sweep(h: &HerglotzTriple, cfg: &SweepConfig) -> Result<DensityGrid> {
    match cfg.backend {
        Backend::RootFinding => sweep_with(cfg, |r| h.solve_equals(r)),
        Backend::Secular => {
            let nu = h.to_atomic_measure().map_err(|_| Error::BackendMismatch)?;
            let model = RankOneModel::from_measure(&nu)?;
            sweep_with(cfg, |r| model.secular_eigen(r))
        }
    }
}

/// Runs a sweep for a rank-one model.
pub fn sweep_model(model: &RankOneModel, cfg: &SweepConfig) -> Result<DensityGrid> {
    match cfg.backend {
        Backend::Secular => sweep_with(cfg, |r| model.secular_eigen(r)),
        Backend::RootFinding => {
            let h = HerglotzTriple::from_atomic_measure(&model.to_measure())?;
            sweep_with(cfg, move |r| h.solve_equals(r))
        }
    }
}

/// Samples every `r_k` (in parallel) and bins sequentially in ascending
/// `r`, so the floating-point accumulation order — and therefore the
/// output — is independent of the worker count.
fn sweep_with<S>(cfg: &SweepConfig, sampler: S) -> Result<DensityGrid>
where
    S: Fn(f64) -> Result<SpectralSample> + Sync,
{
    let samples: Vec<SpectralSample> = (0..cfg.n_r)
        .into_par_iter()
        .map(|k| sampler(cfg.r_at(k)))
        .collect::<Result<_>>()?;

    let bin_width = (cfg.window.1 - cfg.window.0) / cfg.n_bins as f64;
    let mut grid = DensityGrid {
        lambda_min: cfg.window.0,
        bin_width,
        values: vec![0.0; cfg.n_bins],
    };
    let scale = 1.0 / (cfg.n_r as f64 * bin_width);
    for sample in &samples {
        for atom in sample.atoms() {
            if let Some(idx) = grid.bin_of(atom.position) {
                grid.values[idx] += atom.mass * scale;
            }
        }
    }
    Ok(grid)
}

/// The analytic density of the averaged singular measure at `lambda`:
/// `1` when `0 < h(lambda) < 1`, else `0`. Only defined off the closed
/// support of `mu` (an almost-everywhere statement).
pub fn oracle_density(h: &HerglotzTriple, lambda: f64) -> Result<f64> {
    let value = h.boundary_value(lambda)?;
    Ok(if value > 0.0 && value < 1.0 { 1.0 } else { 0.0 })
}

/// Sorted boundary points of the density-one region: the solutions of
/// `h = 0` and `h = 1` together with the support breakpoints.
pub fn jump_points(h: &HerglotzTriple) -> Result<Vec<f64>> {
    let mut pts: Vec<f64> = h
        .solve_equals(0.0)?
        .atoms()
        .iter()
        .chain(h.solve_equals(1.0)?.atoms())
        .map(|a| a.position)
        .collect();
    pts.extend(h.mu().support_partition());
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|next, kept| *next - *kept <= MERGE_TOL);
    Ok(pts)
}

/// Deviation metrics between a swept grid and the analytic density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareReport {
    /// Summed `|value - oracle| * bin_width` over bins whose centers are
    /// off-support and clear of jump neighborhoods, relative to the
    /// swept window mass once that mass exceeds one.
    pub l1_error: f64,
    /// Max `|value - oracle|` over the same bins.
    pub sup_error_off_jumps: f64,
    /// `|swept window mass - analytic window mass|`.
    pub mass_check: f64,
    /// Total mass the sweep binned into the window.
    pub swept_mass: f64,
    /// Lebesgue measure of the density-one region inside the window.
    pub oracle_mass: f64,
}

/// Bins whose centers are within this many bin widths of a jump point
/// are excluded from the deviation metrics: the density genuinely
/// transitions inside one bin there, so adjacent bins are unavoidable
/// mixtures.
const JUMP_EXCLUSION_WIDTHS: f64 = 2.0;

/// Compares a swept grid against the analytic density of the same `h`.
pub fn compare(grid: &DensityGrid, h: &HerglotzTriple) -> Result<CompareReport> {
    let jumps = jump_points(h)?;
    let w = grid.bin_width();
    let mut l1_raw = 0.0;
    let mut sup = 0.0f64;
    for (i, &value) in grid.values().iter().enumerate() {
        let c = grid.bin_center(i);
        if h.mu().in_closed_support(c) {
            continue;
        }
        let clear_of_jumps = jumps
            .iter()
            .all(|&j| (c - j).abs() > JUMP_EXCLUSION_WIDTHS * w);
        if !clear_of_jumps {
            continue;
        }
        let err = (value - oracle_density(h, c)?).abs();
        l1_raw += err * w;
        sup = sup.max(err);
    }
    let swept_mass = grid.integrated_mass();
    let oracle_mass = oracle_window_mass(h, &jumps, grid.lambda_min(), grid.lambda_max())?;
    Ok(CompareReport {
        l1_error: l1_raw / swept_mass.max(1.0),
        sup_error_off_jumps: sup,
        mass_check: (swept_mass - oracle_mass).abs(),
        swept_mass,
        oracle_mass,
    })
}

/// Lebesgue measure of `{0 < h < 1}` intersected with `[lo, hi]`,
/// assembled exactly from the pieces between consecutive jump points.
fn oracle_window_mass(h: &HerglotzTriple, jumps: &[f64], lo: f64, hi: f64) -> Result<f64> {
    let mut cuts = vec![lo];
    cuts.extend(jumps.iter().copied().filter(|&j| j > lo && j < hi));
    cuts.push(hi);
    let mut mass = 0.0;
    for pair in cuts.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        if pair[1] <= pair[0] || h.mu().in_closed_support(mid) {
            continue;
        }
        if oracle_density(h, mid)? == 1.0 {
            mass += pair[1] - pair[0];
        }
    }
    Ok(mass)
}

/// Pass thresholds for [`theorem_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub sup: f64,
    pub l1: f64,
    /// Relative to the analytic window mass (with floor one).
    pub mass: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sup: 0.05,
            l1: 0.02,
            mass: 0.01,
        }
    }
}

/// Outcome of a full verification run; a failing verdict is data, not an
/// error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub report: CompareReport,
    pub sup_ok: bool,
    pub l1_ok: bool,
    pub mass_ok: bool,
    /// Largest position deviation between the two spectral backends on a
    /// thinned coupling grid; absent when only one backend applies.
    pub backend_position_dev: Option<f64>,
    /// Largest mass deviation between the two backends.
    pub backend_mass_dev: Option<f64>,
    pub pass: bool,
}

/// Sweeps, compares against the analytic density, and cross-checks the
/// two spectral backends where both apply.
pub fn theorem_check(h: &HerglotzTriple, cfg: &SweepConfig, tol: &Tolerances) -> Result<Verdict> {
    let grid = sweep(h, cfg)?;
    let report = compare(&grid, h)?;
    let cross = match h.to_atomic_measure() {
        Ok(nu) => Some(backend_cross_check(
            h,
            &RankOneModel::from_measure(&nu)?,
            cfg,
        )?),
        Err(_) => None,
    };
    Ok(build_verdict(report, cross, tol))
}

/// [`theorem_check`] driven from the operator side.
pub fn theorem_check_model(
    model: &RankOneModel,
    cfg: &SweepConfig,
    tol: &Tolerances,
) -> Result<Verdict> {
    let h = HerglotzTriple::from_atomic_measure(&model.to_measure())?;
    let grid = sweep_model(model, cfg)?;
    let report = compare(&grid, &h)?;
    let cross = Some(backend_cross_check(&h, model, cfg)?);
    Ok(build_verdict(report, cross, tol))
}

fn build_verdict(report: CompareReport, cross: Option<(f64, f64)>, tol: &Tolerances) -> Verdict {
    let sup_ok = report.sup_error_off_jumps <= tol.sup;
    let l1_ok = report.l1_error <= tol.l1;
    let mass_ok = report.mass_check <= tol.mass * report.oracle_mass.max(1.0);
    Verdict {
        report,
        sup_ok,
        l1_ok,
        mass_ok,
        backend_position_dev: cross.map(|c| c.0),
        backend_mass_dev: cross.map(|c| c.1),
        pass: sup_ok && l1_ok && mass_ok,
    }
}

/// Compares the two samplers on a thinned subset of the coupling grid;
/// returns (max position deviation, max mass deviation).
fn backend_cross_check(
    h: &HerglotzTriple,
    model: &RankOneModel,
    cfg: &SweepConfig,
) -> Result<(f64, f64)> {
    let n_check = cfg.n_r.min(64);
    let mut pos_dev = 0.0f64;
    let mut mass_dev = 0.0f64;
    for i in 0..n_check {
        let k = i * cfg.n_r / n_check;
        let r = cfg.r_at(k);
        let roots = h.solve_equals(r)?;
        let secular = model.secular_eigen(r)?;
        if roots.atoms().len() != secular.atoms().len() {
            return Ok((f64::INFINITY, f64::INFINITY));
        }
        for (a, b) in roots.atoms().iter().zip(secular.atoms()) {
            pos_dev = pos_dev.max((a.position - b.position).abs());
            mass_dev = mass_dev.max((a.mass - b.mass).abs());
        }
    }
    Ok((pos_dev, mass_dev))
}

/// A window guaranteed to contain every density transition: one unit of
/// slack around the extreme jump points.
pub fn default_window(h: &HerglotzTriple) -> Result<(f64, f64)> {
    let jumps = jump_points(h)?;
    let lo = jumps
        .first()
        .copied()
        .expect("nonconstant h has jump points");
    let hi = jumps
        .last()
        .copied()
        .expect("nonconstant h has jump points");
    Ok((lo - 1.0, hi + 1.0))
}
