//! Herglotz function toolkit: representation triples, rank-one
//! perturbation models, Stieltjes inversion, and coupling-averaged
//! singular spectral measures.
//!
//! The central computation: given a Herglotz function `h` — either as a
//! triple `(alpha, beta, mu)` or through the atomic spectral measure of
//! a diagonal-plus-rank-one operator model — sample the singular part
//! of the measure of `1/(r - h)` over couplings `r` in `[0, 1]`, bin
//! the atoms into a density histogram, and verify that the averaged
//! measure is absolutely continuous with density `0` or `1` almost
//! everywhere (one exactly where `0 < h < 1` off the support of `mu`).
//!
//! Everything is computed in closed form for the measure class "atoms
//! plus disjoint constant slabs": evaluation, real boundary traces,
//! level sets via bisection over analyticity intervals, secular-equation
//! eigensolves, and dyadic-height Stieltjes inversion.

pub mod averaging;
pub mod config;
mod error;
pub mod herglotz;
pub mod measure;
pub mod rankone;
pub mod recovery;
mod roots;

pub use averaging::{
    compare, default_window, jump_points, oracle_density, sweep, sweep_model, theorem_check,
    theorem_check_model, Backend, CompareReport, DensityGrid, SweepConfig, Tolerances, Verdict,
};
pub use config::{emit_config, parse_config, ConfigError, Model, ModelConfig};
pub use error::{Error, Result};
pub use herglotz::{HerglotzEval, HerglotzTriple, TransformedFunction};
pub use measure::{Atom, RealMeasure, Slab};
pub use rankone::{krein_transform, RankOneModel, SpectralSample};
pub use recovery::{
    ac_density_estimate, atom_mass_estimate, recover_alpha, recover_beta, EpsSchedule,
};
