//! Temporal mode functions of the cw beam and their kernel integrals.
//!
//! Everything works in dimensionless time (the cavity half-bandwidth sets the
//! unit, so the elementary packet is `e^{-|t|}` with unit amplitude). Modes
//! are exact linear combinations of shifted two-sided exponentials, which
//! keeps every integral in closed form; [`crate::quadrature`] provides the
//! independent check.
//!
//! The two heralded packets sit at `t = -delta/2` and `t = +delta/2`, so the
//! symmetric/antisymmetric pair has exact parity about the origin.

use crate::math::{abs, em1mx_over_x2, exp, expm1, ln_1p, sqrt, SumAccumulator};
use alloc::vec::Vec;
use core::fmt;

/// Construction failure for a mode pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeError {
    /// The requested pair is not linearly independent at this separation.
    DegenerateModes,
    /// A decay constant was not strictly positive.
    InvalidDecay,
}

impl fmt::Display for ModeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeError::DegenerateModes => {
                write!(f, "mode pair degenerate: packets not linearly independent")
            }
            ModeError::InvalidDecay => write!(f, "mode decay constants must be positive"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModeError {}

/// One shifted two-sided exponential, `amplitude * e^{-decay |t - center|}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub amplitude: f64,
    pub decay: f64,
    pub center: f64,
}

/// A temporal mode as an exact sum of [`ExpTerm`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeFunction {
    terms: Vec<ExpTerm>,
}

impl ModeFunction {
    pub fn from_terms(terms: Vec<ExpTerm>) -> Result<Self, ModeError> {
        if terms.iter().any(|t| !(t.decay > 0.0)) {
            return Err(ModeError::InvalidDecay);
        }
        Ok(ModeFunction { terms })
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = SumAccumulator::new();
        for term in &self.terms {
            acc.push(term.amplitude * exp(-term.decay * abs(t - term.center)));
        }
        acc.total()
    }

    /// Exact L2 inner product with another mode.
    pub fn inner_product(&self, other: &ModeFunction) -> f64 {
        let mut acc = SumAccumulator::new();
        for a in &self.terms {
            for b in &other.terms {
                acc.push(
                    a.amplitude
                        * b.amplitude
                        * cross_exp_integral(a.decay, b.decay, abs(a.center - b.center)),
                );
            }
        }
        acc.total()
    }

    pub fn norm_l2(&self) -> f64 {
        sqrt(self.inner_product(self))
    }

    /// Kink locations, for quadrature panel splitting.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.center).collect()
    }

    /// Interval outside which every term is below `tail` of its own peak.
    pub fn support_window(&self, tail: f64) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let log_tail = -crate::math::ln(tail);
        for t in &self.terms {
            let r = log_tail / t.decay;
            lo = lo.min(t.center - r);
            hi = hi.max(t.center + r);
        }
        (lo, hi)
    }
}

/// The elementary packet `e^{-|t - center|}` (unit amplitude in these units).
pub fn psi(t: f64, center: f64) -> f64 {
    exp(-abs(t - center))
}

/// [`psi`] as a [`ModeFunction`] anchored at `center`.
pub fn psi_mode(center: f64) -> ModeFunction {
    ModeFunction {
        terms: alloc::vec![ExpTerm {
            amplitude: 1.0,
            decay: 1.0,
            center,
        }],
    }
}

/// Normalized packet `sqrt(f) e^{-f |t|}` for a filter of relative width `f`.
pub fn psi_mode_scaled(f_ratio: f64, center: f64) -> Result<ModeFunction, ModeError> {
    if !(f_ratio > 0.0) {
        return Err(ModeError::InvalidDecay);
    }
    Ok(ModeFunction {
        terms: alloc::vec![ExpTerm {
            amplitude: sqrt(f_ratio),
            decay: f_ratio,
            center,
        }],
    })
}

/// Overlap data for two packets separated by `delta` (dimensionless).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapScalars {
    /// Packet overlap `(1 + delta) e^{-delta}`.
    pub i_delta: f64,
    /// Mixing probability `(1 - sqrt(1 - I^2)) / 2`.
    pub p_delta: f64,
    pub delta_dimless: f64,
}

/// Packet overlap `(1 + delta) e^{-delta}`.
pub fn overlap_i(delta: f64) -> f64 {
    (1.0 + delta) * exp(-delta)
}

/// `1 - I(delta)` without cancellation at small separations.
pub fn one_minus_overlap_i(delta: f64) -> f64 {
    // I = exp(ln(1 + delta) - delta), so 1 - I = -expm1(ln_1p(delta) - delta).
    -expm1(ln_1p(delta) - delta)
}

pub fn overlap_scalars(delta: f64) -> OverlapScalars {
    let i = overlap_i(delta);
    let one_minus_i2 = one_minus_overlap_i(delta) * (1.0 + i);
    let p = i * i / (2.0 * (1.0 + sqrt(one_minus_i2)));
    OverlapScalars {
        i_delta: i,
        p_delta: p,
        delta_dimless: delta,
    }
}

const DEGENERACY_TOL: f64 = 1e-12;

/// Anchor times of the two packets for a given separation.
pub fn trigger_times(delta: f64) -> (f64, f64) {
    (-0.5 * delta, 0.5 * delta)
}

/// Orthonormal pair overlapping equally with the two packets.
///
/// Solves the symmetric mixing relation for `p_delta`; singular as the
/// packets coincide, which surfaces as [`ModeError::DegenerateModes`].
pub fn unbiased_modes(delta: f64) -> Result<(ModeFunction, ModeFunction), ModeError> {
    let ov = overlap_scalars(delta);
    let one_minus_i2 = one_minus_overlap_i(delta) * (1.0 + ov.i_delta);
    if one_minus_i2 < DEGENERACY_TOL {
        return Err(ModeError::DegenerateModes);
    }
    let root = sqrt(one_minus_i2);
    let a = sqrt(1.0 - ov.p_delta) / root;
    let b = -sqrt(ov.p_delta) / root;
    let (t1, t2) = trigger_times(delta);
    let u1 = ModeFunction {
        terms: alloc::vec![
            ExpTerm {
                amplitude: a,
                decay: 1.0,
                center: t1,
            },
            ExpTerm {
                amplitude: b,
                decay: 1.0,
                center: t2,
            },
        ],
    };
    let u2 = ModeFunction {
        terms: alloc::vec![
            ExpTerm {
                amplitude: b,
                decay: 1.0,
                center: t1,
            },
            ExpTerm {
                amplitude: a,
                decay: 1.0,
                center: t2,
            },
        ],
    };
    Ok((u1, u2))
}

/// Symmetric/antisymmetric orthonormal pair built from packet sum and
/// difference. The antisymmetric member degenerates as the packets merge.
pub fn biased_modes(delta: f64) -> Result<(ModeFunction, ModeFunction), ModeError> {
    let i = overlap_i(delta);
    let one_minus_i = one_minus_overlap_i(delta);
    if one_minus_i < DEGENERACY_TOL {
        return Err(ModeError::DegenerateModes);
    }
    let n_plus = 1.0 / sqrt(2.0 * (1.0 + i));
    let n_minus = 1.0 / sqrt(2.0 * one_minus_i);
    let (t1, t2) = trigger_times(delta);
    let plus = ModeFunction {
        terms: alloc::vec![
            ExpTerm {
                amplitude: n_plus,
                decay: 1.0,
                center: t1,
            },
            ExpTerm {
                amplitude: n_plus,
                decay: 1.0,
                center: t2,
            },
        ],
    };
    let minus = ModeFunction {
        terms: alloc::vec![
            ExpTerm {
                amplitude: -n_minus,
                decay: 1.0,
                center: t1,
            },
            ExpTerm {
                amplitude: n_minus,
                decay: 1.0,
                center: t2,
            },
        ],
    };
    Ok((plus, minus))
}

/// `int e^{-a|t|} e^{-b|t - d|} dt` for `a, b > 0`, `d >= 0`.
///
/// Written so the confluent point `a = b` is the smooth limit of the same
/// expression rather than a separately derived branch.
pub fn cross_exp_integral(a: f64, b: f64, d: f64) -> f64 {
    let h = b - a;
    if h == 0.0 {
        return exp(-a * d) * (1.0 + a * d) / a;
    }
    // 2 (b e^{-ad} - a e^{-bd}) / (b^2 - a^2), with the difference taken
    // through expm1 so it stays fully accurate as b -> a.
    let phi = expm1(-h * d) / h;
    2.0 * exp(-a * d) * (1.0 - a * phi) / (a + b)
}

/// `int e^{-a|t - c|} e^{-zeta |t - t0|} dt`: one mode term against the
/// exponential detection kernel. Identical to [`cross_exp_integral`].
#[inline]
fn kernel_single_term(decay: f64, zeta: f64, d: f64) -> f64 {
    cross_exp_integral(decay, zeta, d)
}

/// `int int e^{-|u|} e^{-zeta_r |u - u'|} e^{-|u' - d|} du du'` for unit
/// decays; uniformly valid for every `zeta_r > 0` including the confluent
/// point `zeta_r = 1`.
fn kernel_double_unit(d: f64, zeta_r: f64) -> f64 {
    let h = zeta_r - 1.0;
    let g = em1mx_over_x2(-h * d);
    2.0 * exp(-d) * ((3.0 + h) * (1.0 + d) + 2.0 * d * d * g) / ((2.0 + h) * (2.0 + h))
}

/// Double kernel integral for a pair of exponential terms.
fn kernel_double_term(a: f64, ca: f64, b: f64, cb: f64, zeta: f64) -> f64 {
    let d = abs(ca - cb);
    if a == b || abs(a - b) <= 1e-9 * (a + b) {
        // Rescale time by the common decay; exact for a == b, and the model
        // only ever pairs terms of equal decay.
        let f = 0.5 * (a + b);
        return kernel_double_unit(f * d, zeta / f) / (f * f);
    }
    // Partial fractions on the inner integral. Expand on whichever term sits
    // farther from zeta so the difference below keeps its leading digits.
    let (outer, inner) = if abs(zeta - b) >= abs(zeta - a) {
        (a, b)
    } else {
        (b, a)
    };
    let k_inner = cross_exp_integral(outer, inner, d);
    let k_zeta = cross_exp_integral(outer, zeta, d);
    2.0 * (zeta * k_inner - inner * k_zeta) / ((zeta - inner) * (zeta + inner))
}

/// `int Psi(t) e^{-zeta |t - center|} dt` in closed form.
pub fn kernel_integral_single(mode: &ModeFunction, zeta: f64, center: f64) -> f64 {
    debug_assert!(zeta > 0.0);
    let mut acc = SumAccumulator::new();
    for term in mode.terms() {
        acc.push(term.amplitude * kernel_single_term(term.decay, zeta, abs(term.center - center)));
    }
    acc.total()
}

/// `int int Psi_k(t) Psi_l(t') e^{-zeta |t - t'|} dt dt'` in closed form.
pub fn kernel_integral_double(mode_k: &ModeFunction, mode_l: &ModeFunction, zeta: f64) -> f64 {
    debug_assert!(zeta > 0.0);
    let mut acc = SumAccumulator::new();
    for a in mode_k.terms() {
        for b in mode_l.terms() {
            acc.push(
                a.amplitude
                    * b.amplitude
                    * kernel_double_term(a.decay, a.center, b.decay, b.center, zeta),
            );
        }
    }
    acc.total()
}
