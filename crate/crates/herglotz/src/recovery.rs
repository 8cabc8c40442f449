//! Stieltjes inversion: recovering measure data from boundary values.
//!
//! For a Herglotz function `g` with measure `mu`,
//!
//! * `(1/pi) * Im g(x + i*eps)` tends to the AC density at continuity
//!   points, and
//! * `eps * Im g(x + i*eps)` tends to the mass of the atom at `x`
//!   (zero if there is none), with error expansion `m + O(eps^2)`.
//!
//! Both limits are taken along a dyadic schedule of heights and
//! extrapolated by a least-squares fit of `m + c*eps^2` over the
//! smallest few heights.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::herglotz::HerglotzEval;

/// Dyadic evaluation heights `eps_k = 2^-k`, `k_min <= k <= k_max`,
/// with the number of smallest heights used by the extrapolation fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsSchedule {
    k_min: u32,
    k_max: u32,
    fit_points: usize,
}

impl Default for EpsSchedule {
    /// `2^-10 .. 2^-40`, fitting over the last 5 points: deep enough for
    /// the quadratic error term to dominate, shallow enough to stay
    /// clear of cancellation near poles.
    fn default() -> Self {
        EpsSchedule {
            k_min: 10,
            k_max: 40,
            fit_points: 5,
        }
    }
}

impl EpsSchedule {
    pub fn new(k_min: u32, k_max: u32) -> Result<Self> {
        if k_min >= k_max {
            return Err(Error::BadSchedule { k_min, k_max });
        }
        Ok(EpsSchedule {
            k_min,
            k_max,
            fit_points: 5,
        })
    }

    pub fn k_min(&self) -> u32 {
        self.k_min
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    /// Heights in decreasing order.
    pub fn eps_values(&self) -> Vec<f64> {
        (self.k_min..=self.k_max)
            .map(|k| 0.5f64.powi(k as i32))
            .collect()
    }

    fn fit_count(&self) -> usize {
        self.fit_points.min((self.k_max - self.k_min + 1) as usize)
    }
}

/// Least-squares fit of `y = m + c*x` over the given points, returning
/// `m`; centered so the tiny magnitudes involved do not cancel.
fn fit_affine_intercept(xs: &[f64], ys: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        cov += (x - x_mean) * (y - y_mean);
        var += (x - x_mean) * (x - x_mean);
    }
    if var == 0.0 {
        return y_mean;
    }
    let slope = cov / var;
    y_mean - slope * x_mean
}

/// Extrapolates `value_at(eps)` to `eps -> 0` assuming an `m + c*eps^2`
/// expansion, fitting over the smallest heights of the schedule.
fn extrapolate<F: Fn(f64) -> Result<f64>>(s: &EpsSchedule, value_at: F) -> Result<f64> {
    let eps = s.eps_values();
    let tail = &eps[eps.len() - s.fit_count()..];
    let mut xs = Vec::with_capacity(tail.len());
    let mut ys = Vec::with_capacity(tail.len());
    for &e in tail {
        let y = value_at(e)?;
        if !y.is_finite() {
            return Err(Error::NonFinite {
                what: "boundary evaluation",
                value: y,
            });
        }
        xs.push(e * e);
        ys.push(y);
    }
    Ok(fit_affine_intercept(&xs, &ys))
}

/// Estimates the AC density of `g`'s measure at `lambda`:
/// the extrapolated limit of `(1/pi) * Im g(lambda + i*eps)`.
pub fn ac_density_estimate<G: HerglotzEval>(g: &G, lambda: f64, s: &EpsSchedule) -> Result<f64> {
    extrapolate(s, |eps| {
        Ok(g.eval_upper(Complex64::new(lambda, eps))?.im / std::f64::consts::PI)
    })
}

/// Estimates the mass of the atom of `g`'s measure at `lambda` (zero if
/// none): the extrapolated limit of `eps * Im g(lambda + i*eps)`.
pub fn atom_mass_estimate<G: HerglotzEval>(g: &G, lambda: f64, s: &EpsSchedule) -> Result<f64> {
    extrapolate(s, |eps| {
        Ok(eps * g.eval_upper(Complex64::new(lambda, eps))?.im)
    })
}

/// Recovers the linear coefficient `alpha = lim Im g(iy)/y` along
/// `y = 1/eps` over the schedule. Values below `-1e-9` are flagged as
/// inconsistent with a Herglotz function.
pub fn recover_alpha<G: HerglotzEval>(g: &G, s: &EpsSchedule) -> Result<f64> {
    let alpha = extrapolate(s, |eps| {
        let y = 1.0 / eps;
        Ok(g.eval_upper(Complex64::new(0.0, y))?.im * eps)
    })?;
    if alpha < -1e-9 {
        return Err(Error::InconsistentAlpha { alpha });
    }
    Ok(alpha)
}

/// Recovers `beta = Re g(i)` — exact, because the regularized kernel of
/// the representation formula has zero real part at `z = i`.
pub fn recover_beta<G: HerglotzEval>(g: &G) -> Result<f64> {
    Ok(g.eval_upper(Complex64::new(0.0, 1.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herglotz::HerglotzTriple;
    use crate::measure::{RealMeasure, Slab};
    use approx::assert_abs_diff_eq;

    #[test]
    fn schedule_is_decreasing_and_validated() {
        let s = EpsSchedule::default();
        let eps = s.eps_values();
        assert!(eps.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0));
        assert!(EpsSchedule::new(12, 12).is_err());
    }

    #[test]
    fn ac_density_of_unit_slab() {
        let h = HerglotzTriple::new(
            0.0,
            0.0,
            RealMeasure::new(vec![], vec![Slab::new(0.0, 1.0, 1.0)]).unwrap(),
        )
        .unwrap();
        let d = ac_density_estimate(&h, 0.5, &EpsSchedule::default()).unwrap();
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn ac_density_vanishes_at_analytic_points() {
        let h = HerglotzTriple::new(1.0, 0.0, RealMeasure::point_mass(0.0, 1.0).unwrap()).unwrap();
        let d = ac_density_estimate(&h, 3.0, &EpsSchedule::default()).unwrap();
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-8);

        let lin = HerglotzTriple::linear(1.0, 0.0).unwrap();
        let g = lin.transform(0.5);
        let d = ac_density_estimate(&g, 2.0, &EpsSchedule::default()).unwrap();
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn atom_mass_of_pure_pole_is_exact() {
        // 1/(0.3 - z) has the single atom (0.3, 1).
        let lin = HerglotzTriple::linear(1.0, 0.0).unwrap();
        let g = lin.transform(0.3);
        let m = atom_mass_estimate(&g, 0.3, &EpsSchedule::default()).unwrap();
        assert_abs_diff_eq!(m, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn atom_mass_of_transform_residue() {
        let h = crate::herglotz::z_minus_inv_z();
        let g = h.transform(1.0);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let m = atom_mass_estimate(&g, golden, &EpsSchedule::default()).unwrap();
        assert_abs_diff_eq!(m, 0.7236068, epsilon = 1e-6);
    }

    #[test]
    fn atom_mass_zero_off_atoms() {
        let h = crate::herglotz::z_minus_inv_z();
        let g = h.transform(1.0);
        let m = atom_mass_estimate(&g, 0.4, &EpsSchedule::default()).unwrap();
        assert_abs_diff_eq!(m, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn alpha_beta_recovery_examples() {
        let s = EpsSchedule::default();
        let lin = HerglotzTriple::linear(2.0, 3.0).unwrap();
        assert_abs_diff_eq!(recover_alpha(&lin, &s).unwrap(), 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(recover_beta(&lin).unwrap(), 3.0, epsilon = 1e-12);

        let h = crate::herglotz::z_minus_inv_z();
        assert_abs_diff_eq!(recover_alpha(&h, &s).unwrap(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(recover_beta(&h).unwrap(), 0.0, epsilon = 1e-12);

        let neg_inv =
            HerglotzTriple::new(0.0, 0.0, RealMeasure::point_mass(0.0, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(recover_alpha(&neg_inv, &s).unwrap(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(recover_beta(&neg_inv).unwrap(), 0.0, epsilon = 1e-12);
    }
}
