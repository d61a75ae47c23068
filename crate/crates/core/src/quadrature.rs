//! Adaptive quadrature for piecewise-smooth integrands with exponential tails.
//!
//! This is the independent oracle against which every closed-form integral in
//! [`crate::temporal_modes`] is validated. Plain adaptive Simpson with
//! Richardson extrapolation; integrands here are cheap, so robustness beats
//! node economy.

use crate::math::abs;
use alloc::vec::Vec;
use core::fmt;

/// Requested tolerance could not be met within the recursion budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonConvergence;

impl fmt::Display for NonConvergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "adaptive quadrature did not reach the requested tolerance")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NonConvergence {}

const MAX_DEPTH: u32 = 48;

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let fc = f(c);
    ((b - a) / 6.0 * (fa + 4.0 * fc + fb), c, fc)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    whole: f64,
    c: f64,
    fc: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, NonConvergence> {
    let (left, lc, flc) = simpson(f, a, fa, c, fc);
    let (right, rc, frc) = simpson(f, c, fc, b, fb);
    let delta = left + right - whole;
    if abs(delta) <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(NonConvergence);
    }
    let l = adapt(f, a, fa, c, fc, left, lc, flc, 0.5 * tol, depth - 1)?;
    let r = adapt(f, c, fc, b, fb, right, rc, frc, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, NonConvergence> {
    integrate_with_breakpoints(f, a, b, &[], tol)
}

/// Integrate with interior breakpoints (kinks of `|t - c|` factors).
///
/// Breakpoints outside `(a, b)` are ignored. The tolerance is split evenly
/// across the resulting panels.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<f64, NonConvergence> {
    if a == b {
        return Ok(0.0);
    }
    let mut cuts: Vec<f64> = Vec::with_capacity(breakpoints.len() + 2);
    cuts.push(a);
    for &t in breakpoints {
        if t > a && t < b {
            cuts.push(t);
        }
    }
    cuts.push(b);
    cuts.sort_unstable_by(f64::total_cmp);
    cuts.dedup();

    let panels = (cuts.len() - 1) as f64;
    let panel_tol = tol / panels;
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let flo = f(lo);
        let fhi = f(hi);
        let (whole, c, fc) = simpson(&f, lo, flo, hi, fhi);
        // Seed with one extra split so a vanishing first estimate on a
        // symmetric integrand does not shortcut the error test.
        let (left, lc, flc) = simpson(&f, lo, flo, c, fc);
        let (right, rc, frc) = simpson(&f, c, fc, hi, fhi);
        let refined = left + right + (left + right - whole) / 15.0;
        let _ = refined;
        total += adapt(&f, lo, flo, c, fc, left, lc, flc, 0.5 * panel_tol, MAX_DEPTH)?;
        total += adapt(&f, c, fc, hi, fhi, right, rc, frc, 0.5 * panel_tol, MAX_DEPTH)?;
    }
    Ok(total)
}
