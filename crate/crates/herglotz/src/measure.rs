//! Finite positive measures on the real line.
//!
//! A [`RealMeasure`] is a sum of point masses (atoms) and disjoint
//! constant-density intervals (slabs). Atoms carry the singular part,
//! slabs the absolutely continuous part, so the Lebesgue decomposition
//! is exact by construction.

use crate::error::{Error, Result};

/// Positions closer than this are treated as the same point.
pub const MERGE_TOL: f64 = 1e-12;

/// A point mass: `mass` concentrated at `position`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub position: f64,
    pub mass: f64,
}

impl Atom {
    pub fn new(position: f64, mass: f64) -> Self {
        Atom { position, mass }
    }
}

/// Constant density `height` on the interval `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slab {
    pub a: f64,
    pub b: f64,
    pub height: f64,
}

impl Slab {
    pub fn new(a: f64, b: f64, height: f64) -> Self {
        Slab { a, b, height }
    }

    pub fn mass(&self) -> f64 {
        self.height * (self.b - self.a)
    }
}

/// A finite positive Borel measure: atoms plus disjoint slabs.
///
/// Construction normalizes the data: atoms are sorted, coincident atoms
/// merged by adding masses, zero-mass atoms and empty slabs dropped.
/// Instances are immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMeasure {
    atoms: Vec<Atom>,
    slabs: Vec<Slab>,
}

impl RealMeasure {
    /// Builds a normalized measure from raw atom and slab lists.
    ///
    /// Negative masses or heights, reversed or overlapping slabs and
    /// non-finite numbers are rejected. An atom inside a slab is fine
    /// (measures add); only slab/slab overlap is an error.
    pub fn new(atoms: Vec<Atom>, slabs: Vec<Slab>) -> Result<Self> {
        for a in &atoms {
            if !a.position.is_finite() {
                return Err(Error::NonFinite {
                    what: "atom position",
                    value: a.position,
                });
            }
            if !a.mass.is_finite() {
                return Err(Error::NonFinite {
                    what: "atom mass",
                    value: a.mass,
                });
            }
            if a.mass < 0.0 {
                return Err(Error::NegativeMass {
                    position: a.position,
                    mass: a.mass,
                });
            }
        }
        for s in &slabs {
            for (what, value) in [
                ("slab start", s.a),
                ("slab end", s.b),
                ("slab height", s.height),
            ] {
                if !value.is_finite() {
                    return Err(Error::NonFinite { what, value });
                }
            }
            if s.height < 0.0 {
                return Err(Error::NegativeHeight {
                    a: s.a,
                    b: s.b,
                    height: s.height,
                });
            }
            if s.a > s.b {
                return Err(Error::ReversedSlab { a: s.a, b: s.b });
            }
        }

        let mut atoms: Vec<Atom> = atoms.into_iter().filter(|a| a.mass > 0.0).collect();
        atoms.sort_by(|x, y| x.position.total_cmp(&y.position));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged.last_mut() {
                Some(last) if a.position - last.position <= MERGE_TOL => last.mass += a.mass,
                _ => merged.push(a),
            }
        }

        let mut slabs: Vec<Slab> = slabs
            .into_iter()
            .filter(|s| s.height > 0.0 && s.b > s.a)
            .collect();
        slabs.sort_by(|x, y| x.a.total_cmp(&y.a));
        for pair in slabs.windows(2) {
            if pair[1].a < pair[0].b {
                return Err(Error::OverlappingSlabs {
                    a0: pair[0].a,
                    b0: pair[0].b,
                    a1: pair[1].a,
                    b1: pair[1].b,
                });
            }
        }

        Ok(RealMeasure {
            atoms: merged,
            slabs,
        })
    }

    /// Purely atomic measure.
    pub fn atomic(atoms: Vec<Atom>) -> Result<Self> {
        Self::new(atoms, Vec::new())
    }

    /// The zero measure.
    pub fn empty() -> Self {
        RealMeasure {
            atoms: Vec::new(),
            slabs: Vec::new(),
        }
    }

    /// Unit-style point mass at `position`.
    pub fn point_mass(position: f64, mass: f64) -> Result<Self> {
        Self::atomic(vec![Atom::new(position, mass)])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn slabs(&self) -> &[Slab] {
        &self.slabs
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.slabs.is_empty()
    }

    pub fn is_atomic(&self) -> bool {
        self.slabs.is_empty()
    }

    /// Total mass: sum of atom masses plus slab areas.
    pub fn total_mass(&self) -> f64 {
        let atoms: f64 = self.atoms.iter().map(|a| a.mass).sum();
        let slabs: f64 = self.slabs.iter().map(|s| s.mass()).sum();
        atoms + slabs
    }

    /// Sorted breakpoints: atom positions and slab endpoints.
    ///
    /// Consecutive breakpoints delimit the maximal open intervals on
    /// which the associated Herglotz function is real-analytic and
    /// real-valued.
    pub fn support_partition(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.atoms.iter().map(|a| a.position).collect();
        for s in &self.slabs {
            pts.push(s.a);
            pts.push(s.b);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|next, kept| *next - *kept <= MERGE_TOL);
        pts
    }

    /// Whether `x` lies in the closed support (at an atom or in a slab
    /// closure), up to [`MERGE_TOL`] around atoms.
    pub fn in_closed_support(&self, x: f64) -> bool {
        self.atoms
            .iter()
            .any(|a| (x - a.position).abs() <= MERGE_TOL)
            || self.slabs.iter().any(|s| s.a <= x && x <= s.b)
    }

    /// The integral of `lambda / (1 + lambda^2)`, in closed form.
    ///
    /// This is the regularizing term of the representation formula; for
    /// alpha = 0 it fixes the finite limits at both ends of the line.
    pub(crate) fn regularizer_integral(&self) -> f64 {
        let atoms: f64 = self
            .atoms
            .iter()
            .map(|a| a.mass * a.position / (1.0 + a.position * a.position))
            .sum();
        let slabs: f64 = self
            .slabs
            .iter()
            .map(|s| s.height * 0.5 * ((1.0 + s.b * s.b) / (1.0 + s.a * s.a)).ln())
            .sum();
        atoms + slabs
    }
}
