//! Bisection on open intervals for strictly increasing functions.
//!
//! The solvers in this crate only ever chase roots of functions that are
//! strictly increasing on an open interval and blow up (or approach a
//! known finite limit) at the ends, so plain bisection with bracket
//! expansion is both sufficient and robust. Endpoints are never
//! evaluated: the function may be singular there.

use crate::error::{Error, Result};

/// Hard cap; hitting it indicates a bracketing bug, not a tolerance issue.
const MAX_ITER: usize = 200;

/// Absolute position tolerance for accepting a root early.
const X_TOL: f64 = 1e-13;

fn midpoint(lo: f64, hi: f64) -> f64 {
    if lo.signum() != hi.signum() {
        (lo + hi) / 2.0
    } else {
        lo + (hi - lo) / 2.0
    }
}

/// Finds the root of a strictly increasing `f` inside the open interval
/// `(lo, hi)`, assuming `f < 0` near `lo` and `f > 0` near `hi`.
///
/// Stops once the bracket is narrower than `X_TOL * (1 + |x|)` and the
/// residual `|f(x)|` is below `resid_tol`, or when no representable
/// point remains between the bracket ends. Returns the evaluated point
/// with the smallest residual seen.
pub(crate) fn bisect_open<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    resid_tol: f64,
) -> Result<f64> {
    debug_assert!(lo < hi);
    let mut best: Option<(f64, f64)> = None;
    for _ in 0..MAX_ITER {
        let mid = midpoint(lo, hi);
        if mid <= lo || mid >= hi {
            // No representable point strictly inside; as converged as f64 permits.
            return best.map(|(x, _)| x).ok_or(Error::Bracket {
                context: "interval contains no interior point",
            });
        }
        let fx = f(mid);
        if !fx.is_finite() {
            return Err(Error::Bracket {
                context: "non-finite evaluation inside bracket",
            });
        }
        let afx = fx.abs();
        if best.is_none_or(|(_, b)| afx < b) {
            best = Some((mid, afx));
        }
        if fx == 0.0 {
            return Ok(mid);
        }
        if fx < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= X_TOL * (1.0 + mid.abs()) && afx <= resid_tol {
            return Ok(best.expect("at least one evaluation").0);
        }
    }
    Err(Error::Bracket {
        context: "iteration cap reached",
    })
}

/// Walks down from `anchor` in doubling steps until `f < 0`.
///
/// Used when the interval is unbounded below and the limit analysis has
/// already established that a sign change exists.
pub(crate) fn expand_down<F: Fn(f64) -> f64>(f: F, anchor: f64) -> Result<f64> {
    let mut step = 1.0;
    loop {
        let x = anchor - step;
        if !x.is_finite() {
            return Err(Error::Bracket {
                context: "downward expansion left the representable range",
            });
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::Bracket {
                context: "non-finite evaluation during downward expansion",
            });
        }
        if fx < 0.0 {
            return Ok(x);
        }
        step *= 2.0;
    }
}

/// Walks up from `anchor` in doubling steps until `f > 0`.
pub(crate) fn expand_up<F: Fn(f64) -> f64>(f: F, anchor: f64) -> Result<f64> {
    let mut step = 1.0;
    loop {
        let x = anchor + step;
        if !x.is_finite() {
            return Err(Error::Bracket {
                context: "upward expansion left the representable range",
            });
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::Bracket {
                context: "non-finite evaluation during upward expansion",
            });
        }
        if fx > 0.0 {
            return Ok(x);
        }
        step *= 2.0;
    }
}
