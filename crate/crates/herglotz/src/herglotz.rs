//! Herglotz (Nevanlinna) functions as representation triples.
//!
//! Every holomorphic self-map `h` of the upper half-plane corresponds to
//! a unique triple `(alpha, beta, mu)` with `alpha >= 0`, `beta` real
//! and `mu` a positive measure, through
//!
//! ```text
//! h(z) = alpha*z + beta + integral of [ 1/(t - z) - t/(t^2 + 1) ] d mu(t)
//! ```
//!
//! For the measure class of this crate (atoms plus disjoint slabs) the
//! integral has a closed form, so evaluation, boundary traces on the
//! real axis, derivatives and the level sets `h = r` are all exact up to
//! floating point.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::{Atom, RealMeasure, MERGE_TOL};
use crate::rankone::SpectralSample;
use crate::roots;

/// Relative residual tolerance for accepting a root of `h = r`.
const RESID_TOL: f64 = 1e-12;

/// Anything evaluable on the open upper half-plane.
pub trait HerglotzEval {
    fn eval_upper(&self, z: Complex64) -> Result<Complex64>;
}

/// A Herglotz function, stored as its representation triple.
#[derive(Debug, Clone, PartialEq)]
pub struct HerglotzTriple {
    alpha: f64,
    beta: f64,
    mu: RealMeasure,
}

impl HerglotzTriple {
    /// Builds a triple; requires `alpha >= 0` and a nonconstant function
    /// (`alpha > 0` or a nonzero measure), so that `1/(r - h)` is again
    /// Herglotz for every real `r`.
    pub fn new(alpha: f64, beta: f64, mu: RealMeasure) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite {
                what: "alpha",
                value: alpha,
            });
        }
        if !beta.is_finite() {
            return Err(Error::NonFinite {
                what: "beta",
                value: beta,
            });
        }
        if alpha < 0.0 {
            return Err(Error::NegativeAlpha { alpha });
        }
        if alpha == 0.0 && mu.is_empty() {
            return Err(Error::ConstantFunction);
        }
        Ok(HerglotzTriple { alpha, beta, mu })
    }

    /// The affine function `alpha*z + beta` (requires `alpha > 0`).
    pub fn linear(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, RealMeasure::empty())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mu(&self) -> &RealMeasure {
        &self.mu
    }

    /// Evaluates `h(z)` for `Im z > 0`.
    ///
    /// Slab contributions use the principal logarithm of
    /// `(b - z)/(a - z)`; for `Im z > 0` both factors lie in the open
    /// lower half-plane, so the quotient never meets the cut.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite {
                what: "evaluation point",
                value: if z.re.is_finite() { z.im } else { z.re },
            });
        }
        if z.im <= 0.0 {
            return Err(Error::NotUpperHalfPlane { im: z.im });
        }
        let mut acc = self.alpha * z + self.beta;
        for a in self.mu.atoms() {
            let p = a.position;
            acc += a.mass * ((Complex64::new(p, 0.0) - z).inv() - p / (p * p + 1.0));
        }
        for s in self.mu.slabs() {
            let ratio = (Complex64::new(s.b, 0.0) - z) / (Complex64::new(s.a, 0.0) - z);
            let reg = 0.5 * ((1.0 + s.b * s.b) / (1.0 + s.a * s.a)).ln();
            acc += s.height * (ratio.ln() - reg);
        }
        Ok(acc)
    }

    /// Real boundary trace `h(x + i0)` at a point off the closed support.
    pub fn boundary_value(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::NonFinite {
                what: "boundary point",
                value: x,
            });
        }
        if self.mu.in_closed_support(x) {
            return Err(Error::InSupport { x });
        }
        Ok(self.boundary_unchecked(x))
    }

    fn boundary_unchecked(&self, x: f64) -> f64 {
        let mut acc = self.alpha * x + self.beta;
        for a in self.mu.atoms() {
            let p = a.position;
            acc += a.mass * (1.0 / (p - x) - p / (p * p + 1.0));
        }
        for s in self.mu.slabs() {
            let reg = 0.5 * ((1.0 + s.b * s.b) / (1.0 + s.a * s.a)).ln();
            acc += s.height * (((s.b - x) / (s.a - x)).ln() - reg);
        }
        acc
    }

    /// Derivative `h'(x)` at a real point off the closed support;
    /// strictly positive wherever defined.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::NonFinite {
                what: "derivative point",
                value: x,
            });
        }
        if self.mu.in_closed_support(x) {
            return Err(Error::InSupport { x });
        }
        Ok(self.derivative_unchecked(x))
    }

    fn derivative_unchecked(&self, x: f64) -> f64 {
        let mut acc = self.alpha;
        for a in self.mu.atoms() {
            let d = a.position - x;
            acc += a.mass / (d * d);
        }
        for s in self.mu.slabs() {
            acc += s.height * (s.b - s.a) / ((s.a - x) * (s.b - x));
        }
        acc
    }

    /// Limits of `h(x)` as `x -> -inf` and `x -> +inf`.
    ///
    /// With `alpha > 0` both are infinite; otherwise both equal the same
    /// finite value `beta - integral of t/(1+t^2) d mu(t)`.
    pub fn real_limits(&self) -> (f64, f64) {
        if self.alpha > 0.0 {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else {
            let e = self.finite_limit();
            (e, e)
        }
    }

    /// The common finite limit for `alpha = 0`; meaningless otherwise.
    fn finite_limit(&self) -> f64 {
        self.beta - self.mu.regularizer_integral()
    }

    /// The Herglotz function `1/(r - h)`, kept lazy.
    pub fn transform(&self, r: f64) -> TransformedFunction<'_> {
        TransformedFunction { base: self, r }
    }

    /// Solves `h(lambda) = r` over all maximal real-analyticity
    /// intervals and returns the solutions as spectral atoms
    /// `(lambda, 1/h'(lambda))`.
    ///
    /// These are exactly the atoms of the singular part of the measure
    /// of `1/(r - h)`: at a simple crossing the residue of `1/(r - h)`
    /// is `1/h'`. Intervals inside open slabs carry no singular mass
    /// (`Im h > 0` there) and are skipped; on unbounded intervals the
    /// finite limits decide whether the level `r` is reached at all.
    pub fn solve_equals(&self, r: f64) -> Result<SpectralSample> {
        if !r.is_finite() {
            return Err(Error::NonFinite {
                what: "level",
                value: r,
            });
        }
        let breakpoints = self.mu.support_partition();
        let resid_tol = RESID_TOL * r.abs().max(1.0);
        let f = |x: f64| self.boundary_unchecked(x) - r;
        let finite_limit = if self.alpha == 0.0 {
            Some(self.finite_limit())
        } else {
            None
        };

        let mut atoms: Vec<Atom> = Vec::new();
        let mut push_root = |root: f64| {
            let mass = 1.0 / self.derivative_unchecked(root);
            atoms.push(Atom::new(root, mass));
        };

        if breakpoints.is_empty() {
            // Whole line; nonconstant with empty measure forces alpha > 0,
            // so the range is all of R.
            let lo = roots::expand_down(f, 0.0)?;
            let hi = roots::expand_up(f, 0.0)?;
            push_root(roots::bisect_open(f, lo, hi, resid_tol)?);
            return SpectralSample::new(r, atoms);
        }

        let first = breakpoints[0];
        let last = *breakpoints.last().expect("nonempty");

        // (-inf, first): h decreases to -inf or to the finite limit on
        // the far left, and blows up to +inf at the breakpoint.
        let reaches_left = finite_limit.is_none_or(|e| r > e);
        if reaches_left {
            let lo = roots::expand_down(f, first)?;
            push_root(roots::bisect_open(f, lo, first, resid_tol)?);
        }

        // Bounded gaps: full range (-inf, +inf) unless inside a slab.
        for pair in breakpoints.windows(2) {
            let (u, v) = (pair[0], pair[1]);
            if self.inside_slab(u, v) {
                continue;
            }
            push_root(roots::bisect_open(f, u, v, resid_tol)?);
        }

        // (last, +inf): h rises from -inf to +inf or to the finite limit.
        let reaches_right = finite_limit.is_none_or(|e| r < e);
        if reaches_right {
            let hi = roots::expand_up(f, last)?;
            push_root(roots::bisect_open(f, last, hi, resid_tol)?);
        }

        SpectralSample::new(r, atoms)
    }

    fn inside_slab(&self, u: f64, v: f64) -> bool {
        // Breakpoint dedup can shift an endpoint by up to the merge
        // tolerance when an atom sits that close to a slab edge.
        self.mu
            .slabs()
            .iter()
            .any(|s| s.a - MERGE_TOL <= u && v <= s.b + MERGE_TOL)
    }

    /// Builds the Herglotz function whose negative reciprocal is the
    /// Cauchy transform of the given atomic measure:
    /// `-1/h(z) = sum of m_j / (d_j - z)`.
    ///
    /// This is the function attached to the diagonal operator model with
    /// eigenvalues `d_j` and weights `m_j`. The triple comes out as
    /// `alpha = 1/total mass`, one atom of `mu` per gap between
    /// consecutive `d_j` (at the zeros of the transform, with masses
    /// `1/F'`), and `beta = Re(-1/F(i))` — the regularized kernel has no
    /// real part at `z = i`, so this is exact.
    pub fn from_atomic_measure(nu: &RealMeasure) -> Result<Self> {
        if !nu.is_atomic() {
            return Err(Error::NotAtomic);
        }
        if nu.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        let total = nu.total_mass();
        let alpha = 1.0 / total;

        let cauchy = |x: f64| -> f64 { nu.atoms().iter().map(|a| a.mass / (a.position - x)).sum() };
        let cauchy_deriv = |x: f64| -> f64 {
            nu.atoms()
                .iter()
                .map(|a| {
                    let d = a.position - x;
                    a.mass / (d * d)
                })
                .sum()
        };

        // One zero of F per gap; F runs from -inf to +inf on each.
        let mut atoms = Vec::with_capacity(nu.atoms().len().saturating_sub(1));
        for pair in nu.atoms().windows(2) {
            let zero = roots::bisect_open(cauchy, pair[0].position, pair[1].position, RESID_TOL)?;
            atoms.push(Atom::new(zero, 1.0 / cauchy_deriv(zero)));
        }
        let mu = RealMeasure::atomic(atoms)?;

        let f_at_i: Complex64 = nu
            .atoms()
            .iter()
            .map(|a| a.mass * (Complex64::new(a.position, -1.0)).inv())
            .sum();
        let beta = (-f_at_i.inv()).re;

        Self::new(alpha, beta, mu)
    }

    /// The atomic measure whose Cauchy transform is `-1/h`; defined for
    /// purely atomic `mu` with `alpha > 0` (the finite-dimensional
    /// operator case). Its atoms are the zeros of `h` with masses
    /// `1/h'`.
    pub fn to_atomic_measure(&self) -> Result<RealMeasure> {
        if self.alpha == 0.0 {
            return Err(Error::ZeroAlpha);
        }
        if !self.mu.is_atomic() {
            return Err(Error::NotAtomic);
        }
        let sample = self.solve_equals(0.0)?;
        RealMeasure::atomic(sample.atoms().to_vec())
    }
}

impl HerglotzEval for HerglotzTriple {
    fn eval_upper(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z)
    }
}

/// The function `g_r(z) = 1/(r - h(z))`, kept as `(h, r)` rather than
/// re-expanded into a triple; its measure is only ever materialized
/// through [`HerglotzTriple::solve_equals`] or Stieltjes inversion.
#[derive(Debug, Clone, Copy)]
pub struct TransformedFunction<'a> {
    base: &'a HerglotzTriple,
    r: f64,
}

impl<'a> TransformedFunction<'a> {
    pub fn base(&self) -> &'a HerglotzTriple {
        self.base
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Evaluates `1/(r - h(z))`; `r - h(z)` cannot vanish for
    /// `Im z > 0` because `Im h > 0` strictly for nonconstant `h`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok((self.r - self.base.eval(z)?).inv())
    }

    /// Atoms of the singular part of this function's measure.
    pub fn singular_atoms(&self) -> Result<SpectralSample> {
        self.base.solve_equals(self.r)
    }
}

impl HerglotzEval for TransformedFunction<'_> {
    fn eval_upper(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z)
    }
}

/// `h(z) = z - 1/z`, the two-site model workhorse; test helper.
#[cfg(test)]
pub(crate) fn z_minus_inv_z() -> HerglotzTriple {
    HerglotzTriple::new(1.0, 0.0, RealMeasure::point_mass(0.0, 1.0).unwrap()).unwrap()
}
