//! Finite-dimensional rank-one perturbation models.
//!
//! `H_0` is diagonal with simple spectrum `d_1 < ... < d_n`, the
//! perturbation is `V = v v*` with cyclic vector `v > 0`, and
//! `H_r = H_0 + r V`. The weighted spectral measure
//! `A -> Tr(E_A(H_r) V)` is purely atomic; its atoms come out of the
//! secular equation `1 + r * sum of v_j^2/(d_j - x) = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::{Atom, RealMeasure};
use crate::roots;

/// Residual tolerance for secular roots.
const RESID_TOL: f64 = 1e-12;

/// Real z closer than this to an eigenvalue is rejected by
/// [`RankOneModel::resolvent_trace`].
const EIGEN_GUARD: f64 = 1e-14;

/// Diagonal-plus-rank-one model: `H_r = diag(d) + r v v*`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneModel {
    d: Vec<f64>,
    v: Vec<f64>,
}

impl RankOneModel {
    /// Builds the model from an atomic measure: `d` are the atom
    /// positions and `v_j = sqrt(mass_j)`, so `Tr V` equals the total
    /// mass. Zero-mass atoms were already deflated by measure
    /// normalization and coincident positions merged, which keeps the
    /// spectrum simple.
    pub fn from_measure(nu: &RealMeasure) -> Result<Self> {
        if !nu.is_atomic() {
            return Err(Error::NotAtomic);
        }
        if nu.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        let d: Vec<f64> = nu.atoms().iter().map(|a| a.position).collect();
        let v: Vec<f64> = nu.atoms().iter().map(|a| a.mass.sqrt()).collect();
        Ok(RankOneModel { d, v })
    }

    /// The spectral data back as an atomic measure `(d_j, v_j^2)`.
    pub fn to_measure(&self) -> RealMeasure {
        let atoms = self
            .d
            .iter()
            .zip(&self.v)
            .map(|(&d, &v)| Atom::new(d, v * v))
            .collect();
        RealMeasure::atomic(atoms).expect("model data is a valid measure")
    }

    pub fn dimension(&self) -> usize {
        self.d.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.d
    }

    pub fn vector(&self) -> &[f64] {
        &self.v
    }

    /// `Tr V = sum of v_j^2`.
    pub fn trace_v(&self) -> f64 {
        self.v.iter().map(|v| v * v).sum()
    }

    /// `F(x) = sum of v_j^2 / (d_j - x)` for real x off the diagonal.
    fn weighted_resolvent(&self, x: f64) -> f64 {
        self.d
            .iter()
            .zip(&self.v)
            .map(|(&d, &v)| v * v / (d - x))
            .sum()
    }

    /// `F'(x) = sum of v_j^2 / (d_j - x)^2`.
    fn weighted_resolvent_deriv(&self, x: f64) -> f64 {
        self.d
            .iter()
            .zip(&self.v)
            .map(|(&d, &v)| {
                let g = d - x;
                v * v / (g * g)
            })
            .sum()
    }

    /// `Tr(R_z(H_r) V) = <(H_r - z)^{-1} v, v>`, computed by a direct
    /// dense solve of the rank-one-updated diagonal system — no use of
    /// the rank-one resolvent identity, so this is an independent route
    /// against [`krein_transform`].
    ///
    /// Real `z` within `1e-14` of an eigenvalue of `H_r` is rejected.
    pub fn resolvent_trace(&self, r: f64, z: Complex64) -> Result<Complex64> {
        if !r.is_finite() {
            return Err(Error::NonFinite {
                what: "coupling",
                value: r,
            });
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite {
                what: "evaluation point",
                value: f64::NAN,
            });
        }
        if z.im == 0.0 {
            let eigs = self.eigenvalues_any(r)?;
            if let Some(dist) = eigs
                .iter()
                .map(|&e| (e - z.re).abs())
                .min_by(f64::total_cmp)
            {
                if dist < EIGEN_GUARD {
                    return Err(Error::NearEigenvalue { dist });
                }
            }
        }
        let n = self.dimension();
        let mut a = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut entry = Complex64::new(r * self.v[i] * self.v[j], 0.0);
                if i == j {
                    entry += Complex64::new(self.d[i], 0.0) - z;
                }
                a[i * n + j] = entry;
            }
        }
        let b: Vec<Complex64> = self.v.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let x = solve_dense(&mut a, b, n)?;
        Ok(x.iter().zip(&self.v).map(|(xi, &vi)| xi * vi).sum())
    }

    /// Eigenvalues and spectral-measure weights of `H_r` for `r >= 0`.
    ///
    /// For `r = 0` the atoms are `(d_j, v_j^2)` directly. For `r > 0`
    /// there are exactly `n` roots of the secular equation, one in each
    /// gap `(d_j, d_{j+1})` and one above `d_n`; the weights come from
    /// the residue formula `1/(r^2 F'(x))`, which avoids forming
    /// eigenvectors and stays stable near close roots.
    pub fn secular_eigen(&self, r: f64) -> Result<SpectralSample> {
        if !r.is_finite() {
            return Err(Error::NonFinite {
                what: "coupling",
                value: r,
            });
        }
        if r < 0.0 {
            return Err(Error::NegativeCoupling { r });
        }
        if r == 0.0 {
            let atoms = self
                .d
                .iter()
                .zip(&self.v)
                .map(|(&d, &v)| Atom::new(d, v * v))
                .collect();
            return SpectralSample::new(0.0, atoms);
        }
        let secular = |x: f64| 1.0 + r * self.weighted_resolvent(x);
        let mut atoms = Vec::with_capacity(self.dimension());
        for pair in self.d.windows(2) {
            let root = roots::bisect_open(secular, pair[0], pair[1], RESID_TOL)?;
            atoms.push(Atom::new(root, self.weight_at(r, root)));
        }
        let top = *self.d.last().expect("nonempty model");
        let hi = roots::expand_up(secular, top)?;
        let root = roots::bisect_open(secular, top, hi, RESID_TOL)?;
        atoms.push(Atom::new(root, self.weight_at(r, root)));
        SpectralSample::new(r, atoms)
    }

    fn weight_at(&self, r: f64, root: f64) -> f64 {
        1.0 / (r * r * self.weighted_resolvent_deriv(root))
    }

    /// Eigenvalues of `H_r` for a coupling of either sign; used for the
    /// proximity guard on real evaluation points. For `r < 0` the roots
    /// sit one per gap plus one below `d_1`.
    pub(crate) fn eigenvalues_any(&self, r: f64) -> Result<Vec<f64>> {
        if r == 0.0 {
            return Ok(self.d.clone());
        }
        if r > 0.0 {
            return Ok(self
                .secular_eigen(r)?
                .atoms()
                .iter()
                .map(|a| a.position)
                .collect());
        }
        // Negative coupling: the secular function decreases across each
        // relevant interval, so bisect its negation.
        let neg_secular = |x: f64| -(1.0 + r * self.weighted_resolvent(x));
        let mut eigs = Vec::with_capacity(self.dimension());
        let bottom = self.d[0];
        let lo = roots::expand_down(neg_secular, bottom)?;
        eigs.push(roots::bisect_open(neg_secular, lo, bottom, RESID_TOL)?);
        for pair in self.d.windows(2) {
            eigs.push(roots::bisect_open(
                neg_secular,
                pair[0],
                pair[1],
                RESID_TOL,
            )?);
        }
        Ok(eigs)
    }
}

/// The rank-one resolvent identity `F_r(z) = F(z) / (1 + r F(z))`.
///
/// Equivalent to `1/(r - h(z))` for `h = -1/F`; signals a pole when the
/// denominator vanishes.
pub fn krein_transform(fz: Complex64, r: f64) -> Result<Complex64> {
    let denom = 1.0 + r * fz;
    if denom.norm() < 1e-300 {
        return Err(Error::Pole);
    }
    Ok(fz / denom)
}

/// For a fixed coupling `r`: the atoms `(position, mass)` of the
/// singular part of the weighted spectral measure.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSample {
    r: f64,
    atoms: Vec<Atom>,
}

impl SpectralSample {
    /// Requires strictly increasing positions and positive masses.
    pub fn new(r: f64, atoms: Vec<Atom>) -> Result<Self> {
        for pair in atoms.windows(2) {
            if pair[0].position >= pair[1].position {
                return Err(Error::InvalidSample);
            }
        }
        if atoms
            .iter()
            .any(|a| a.mass.is_nan() || a.mass <= 0.0 || !a.position.is_finite())
        {
            return Err(Error::InvalidSample);
        }
        Ok(SpectralSample { r, atoms })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    /// Measure of the half-open interval `[lo, hi)`; infinite bounds are
    /// fine.
    pub fn mass_in(&self, lo: f64, hi: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| a.position >= lo && a.position < hi)
            .map(|a| a.mass)
            .sum()
    }
}

/// Gaussian elimination with partial pivoting on a dense complex system;
/// `a` is row-major `n x n` and is consumed as scratch.
fn solve_dense(a: &mut [Complex64], mut b: Vec<Complex64>, n: usize) -> Result<Vec<Complex64>> {
    for col in 0..n {
        let mut pivot = col;
        let mut pivot_norm = a[col * n + col].norm_sqr();
        for row in col + 1..n {
            let norm = a[row * n + col].norm_sqr();
            if norm > pivot_norm {
                pivot = row;
                pivot_norm = norm;
            }
        }
        if pivot_norm == 0.0 {
            return Err(Error::Pole);
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let inv_pivot = a[col * n + col].inv();
        for row in col + 1..n {
            let factor = a[row * n + col] * inv_pivot;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for k in col..n {
                let sub = factor * a[col * n + k];
                a[row * n + k] -= sub;
            }
            let sub = factor * b[col];
            b[row] -= sub;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row * n + k] * x[k];
        }
        x[row] = acc * a[row * n + row].inv();
    }
    Ok(x)
}
