//! Two on/off trigger detections applied to the three-beam Gaussian state.
//!
//! Tracing the trigger beams against the on/off POVM turns the Gaussian
//! characteristic function into a signed four-term Gaussian mixture: the
//! delta part of each POVM element keeps a term unchanged, the Gaussian part
//! completes a square against the trigger block. Term 1 is the unconditioned
//! tap-lossy beam; terms 2-4 subtract the "off" outcomes.
//!
//! Numerics note: the detection probability is a near-complete cancellation
//! of the four unit-scale weights, and every observable divides by it. All
//! public evaluators therefore factor out the term-1 Gaussian and accumulate
//! the other terms through `expm1`/`log1p`, which keeps full relative
//! precision down to detection probabilities of 1e-300 rather than the 1e-16
//! a literal sum of the four terms would allow.

use crate::gaussian_state::{
    build_b, build_m, build_xi, PhysicalParams, SignalBasis, StateError,
};
use crate::math::{exp, expm1, ln_1p, sqrt, Mat2, SumAccumulator};
use crate::temporal_modes::{trigger_times, ModeError};
use core::f64::consts::PI;
use core::fmt;

/// Conditioning failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditioningError {
    /// A trigger-block scalar `b_i(-eps) b_i(+eps)` lost positivity; the
    /// square roots in the mixture weights would leave the reals.
    DegenerateConditioning,
    /// The double-click probability vanished (no pump and no fake counts).
    VanishingDetectionProbability,
    State(StateError),
}

impl fmt::Display for ConditioningError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditioningError::DegenerateConditioning => {
                write!(f, "conditioning degenerate: trigger-block scalar lost positivity")
            }
            ConditioningError::VanishingDetectionProbability => {
                write!(f, "double-click probability is zero for these parameters")
            }
            ConditioningError::State(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConditioningError {}

impl From<StateError> for ConditioningError {
    fn from(e: StateError) -> Self {
        ConditioningError::State(e)
    }
}

impl From<ModeError> for ConditioningError {
    fn from(e: ModeError) -> Self {
        ConditioningError::State(StateError::Mode(e))
    }
}

/// Characteristic function of the "on" POVM element, kept as the exact
/// (delta part, Gaussian part) pair so downstream integrals stay analytic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmCharFn {
    /// Weight of the `2 pi delta(u) delta(v)` part.
    pub delta_weight: f64,
    /// Coefficient of the Gaussian part, `-e^{-nu} / eta`.
    pub gauss_coef: f64,
    /// Width factor of the Gaussian part, `(2 - eta) / (4 eta)`.
    pub gauss_width: f64,
}

impl PovmCharFn {
    /// Evaluate the Gaussian part at `(u, v)`.
    pub fn gaussian_part(&self, u: f64, v: f64) -> f64 {
        self.gauss_coef * exp(-self.gauss_width * (u * u + v * v))
    }
}

pub fn povm_on_char(params: &PhysicalParams) -> PovmCharFn {
    let eta = params.detector_efficiency;
    PovmCharFn {
        delta_weight: 2.0 * PI,
        gauss_coef: -exp(-params.fake_rate) / eta,
        gauss_width: (2.0 - eta) / (4.0 * eta),
    }
}

/// Trigger-block scalars of one quadrature block.
#[derive(Debug, Clone, Copy, PartialEq)]
struct TriggerBlock {
    b_pp: f64,
    b_pm: f64,
    /// `b_1..b_4`.
    b: [f64; 4],
    /// Cross-correlation deficit `R1 (1-R1) b_pm^2 / (b_2 b_3)`, kept as a
    /// product of small factors; `b_4 = b_2 b_3 (1 - r)`.
    r: f64,
}

fn trigger_block(
    eps_signed_ratio: f64,
    params: &PhysicalParams,
) -> Result<TriggerBlock, ConditioningError> {
    let (b_pp, b_pm) = build_b(eps_signed_ratio, params)?;
    let eta = params.detector_efficiency;
    let r1 = params.trigger_split;
    let b2 = 2.0 / eta + r1 * b_pp;
    let b3 = 2.0 / eta + (1.0 - r1) * b_pp;
    let r = (1.0 - r1) * r1 * b_pm * b_pm / (b2 * b3);
    let b4 = b2 * b3 * (1.0 - r);
    Ok(TriggerBlock {
        b_pp,
        b_pm,
        b: [1.0, b2, b3, b4],
        r,
    })
}

/// Trigger-block scalars `b_i` for one quadrature block.
///
/// Completing the square against the trigger covariance gives, per Gaussian
/// channel, the width `2/eta + (split) * b_pp`; the four-term expansion uses
/// `b_1 = 1`, the two single-channel widths, and their coupled determinant
/// `b_4 = b_2 b_3 - R1 (1-R1) b_pm^2`.
pub fn mixture_b(
    eps_signed_ratio: f64,
    params: &PhysicalParams,
) -> Result<[f64; 4], ConditioningError> {
    Ok(trigger_block(eps_signed_ratio, params)?.b)
}

/// Signed mixture weights and the detection probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureWeights {
    /// `N_1..N_4`; `N_1 = 1`, `N_2, N_3 < 0`, `N_4 > 0`.
    pub n: [f64; 4],
    /// Stably evaluated `sum_i N_i`.
    pub p_det: f64,
}

fn weights_from_blocks(
    minus: &TriggerBlock,
    plus: &TriggerBlock,
    params: &PhysicalParams,
) -> Result<MixtureWeights, ConditioningError> {
    let eta = params.detector_efficiency;
    let nu = params.fake_rate;
    for i in 1..4 {
        if !(minus.b[i] * plus.b[i] > 0.0) {
            return Err(ConditioningError::DegenerateConditioning);
        }
    }
    let n2 = -2.0 * exp(-nu) / (eta * sqrt(minus.b[1] * plus.b[1]));
    let n3 = -2.0 * exp(-nu) / (eta * sqrt(minus.b[2] * plus.b[2]));
    let n4 = 4.0 * exp(-2.0 * nu) / (eta * eta * sqrt(minus.b[3] * plus.b[3]));

    // p_det = 1 + n2 + n3 + n4 cancels to many digits. Regroup it as
    // (1 - |n2|)(1 - |n3|) + |n2 n3| (((1 - r_-)(1 - r_+))^{-1/2} - 1),
    // where r_s is the cross-correlation deficit in b4; every factor is then
    // computed from small quantities at full relative precision.
    let q = |b: f64| 0.5 * eta * b - 1.0; // b = (2/eta)(1 + q)
    let one_minus_a = |qm: f64, qp: f64| {
        let s = qm + qp + qm * qp;
        (s / (1.0 + sqrt(1.0 + s)) - expm1(-nu)) / sqrt(1.0 + s)
    };
    let one_minus_a2 = one_minus_a(q(minus.b[1]), q(plus.b[1]));
    let one_minus_a3 = one_minus_a(q(minus.b[2]), q(plus.b[2]));
    let rho = minus.r + plus.r - minus.r * plus.r;
    if !(rho < 1.0) {
        return Err(ConditioningError::DegenerateConditioning);
    }
    let w = 1.0 - rho;
    let coupling_gain = rho / (sqrt(w) * (1.0 + sqrt(w)));
    let p_det = one_minus_a2 * one_minus_a3 + (n2 * n3) * coupling_gain;
    if !(p_det > 0.0) {
        return Err(ConditioningError::VanishingDetectionProbability);
    }
    Ok(MixtureWeights {
        n: [1.0, n2, n3, n4],
        p_det,
    })
}

pub fn mixture_weights(params: &PhysicalParams) -> Result<MixtureWeights, ConditioningError> {
    let eps = params.eps_ratio();
    let minus = trigger_block(-eps, params)?;
    let plus = trigger_block(eps, params)?;
    weights_from_blocks(&minus, &plus, params)
}

/// The four signal-block corrections `j_i` for one quadrature block.
pub fn mixture_j(
    eps_signed_ratio: f64,
    params: &PhysicalParams,
    basis: &SignalBasis,
) -> Result<[Mat2; 4], ConditioningError> {
    let modes = basis.mode_pair(params.delta())?;
    let (t1, t2) = trigger_times(params.delta());
    let xi_b = build_xi(eps_signed_ratio, &modes, t1, params)?;
    let xi_c = build_xi(eps_signed_ratio, &modes, t2, params)?;
    let block = trigger_block(eps_signed_ratio, params)?;
    Ok(assemble_j(
        &xi_b,
        &xi_c,
        &block.b,
        block.b_pm,
        params.trigger_split,
    ))
}

fn assemble_j(xi_b: &[f64; 2], xi_c: &[f64; 2], b: &[f64; 4], b_pm: f64, r1: f64) -> [Mat2; 4] {
    let j2 = Mat2::outer(*xi_c).scale(r1);
    let j3 = Mat2::outer(*xi_b).scale(1.0 - r1);
    // The cross term enters a quadratic form, so only its symmetric part
    // contributes; symmetrize it explicitly to keep the matrices symmetric.
    let j4 = Mat2::outer(*xi_c)
        .scale(r1 * b[2])
        .add(&Mat2::outer(*xi_b).scale((1.0 - r1) * b[1]))
        .sub(&Mat2::sym_outer(*xi_b, *xi_c).scale(2.0 * (1.0 - r1) * r1 * b_pm));
    [Mat2::ZERO, j2, j3, j4]
}

/// One signed Gaussian term of the conditioned state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureTerm {
    /// Signed weight `N_i` (not divided by `p_det`).
    pub weight: f64,
    /// x-block covariance of this term.
    pub gamma_minus: Mat2,
    /// p-block covariance of this term.
    pub gamma_plus: Mat2,
    /// `j_i / b_i` for the x block: how far this term sits below term 1.
    pub dev_minus: Mat2,
    /// Same for the p block.
    pub dev_plus: Mat2,
}

/// The conditioned two-mode state as a signed Gaussian quasi-mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture {
    pub terms: [MixtureTerm; 4],
    pub p_det: f64,
    pub basis: SignalBasis,
    /// Homodyne transmission already applied to the covariances.
    pub eta_h: f64,
    /// The parameters this state was conditioned from.
    pub params_snapshot: PhysicalParams,
}

impl GaussianMixture {
    /// Naive weight sum; equals `p_det` up to rounding of the plain sum.
    pub fn weight_sum(&self) -> f64 {
        let mut acc = SumAccumulator::new();
        for t in &self.terms {
            acc.push(t.weight);
        }
        acc.total()
    }

    /// Characteristic function at `(u, v)`, exactly 1 at the origin.
    pub fn char_fn(&self, u: [f64; 2], v: [f64; 2]) -> f64 {
        let base = exp(
            -0.25 * (self.terms[0].gamma_minus.quad_form(u) + self.terms[0].gamma_plus.quad_form(v)),
        );
        let mut acc = SumAccumulator::new();
        for t in &self.terms[1..] {
            let lift = 0.25 * (t.dev_minus.quad_form(u) + t.dev_plus.quad_form(v));
            acc.push(t.weight * expm1(lift));
        }
        base * (1.0 + acc.total() / self.p_det)
    }
}

/// Apply the two "on" detections and reduce to the signal modes.
pub fn condition(
    params: &PhysicalParams,
    basis: SignalBasis,
) -> Result<GaussianMixture, ConditioningError> {
    let modes = basis.mode_pair(params.delta())?;
    let (t1, t2) = trigger_times(params.delta());
    let eps = params.eps_ratio();
    let r = params.tap_reflectance;
    let r1 = params.trigger_split;

    let mut gamma_aa = [Mat2::ZERO; 2];
    let mut dev = [[Mat2::ZERO; 4]; 2];
    let mut blocks = [TriggerBlock {
        b_pp: 0.0,
        b_pm: 0.0,
        b: [0.0; 4],
        r: 0.0,
    }; 2];
    for (side, sign) in [(0usize, -1.0), (1usize, 1.0)] {
        let eps_signed = sign * eps;
        let m = build_m(eps_signed, &modes, params)?;
        gamma_aa[side] = m.scale(1.0 - r).add(&Mat2::IDENTITY.scale(r));
        let xi_b = build_xi(eps_signed, &modes, t1, params)?;
        let xi_c = build_xi(eps_signed, &modes, t2, params)?;
        let block = trigger_block(eps_signed, params)?;
        let j = assemble_j(&xi_b, &xi_c, &block.b, block.b_pm, r1);
        for i in 0..4 {
            dev[side][i] = if i == 0 {
                Mat2::ZERO
            } else {
                j[i].scale(1.0 / block.b[i])
            };
        }
        blocks[side] = block;
    }
    let weights = weights_from_blocks(&blocks[0], &blocks[1], params)?;

    let mut terms = [MixtureTerm {
        weight: 0.0,
        gamma_minus: Mat2::ZERO,
        gamma_plus: Mat2::ZERO,
        dev_minus: Mat2::ZERO,
        dev_plus: Mat2::ZERO,
    }; 4];
    for i in 0..4 {
        let gm = gamma_aa[0].sub(&dev[0][i]);
        let gp = gamma_aa[1].sub(&dev[1][i]);
        if !gm.is_positive_definite() || !gp.is_positive_definite() {
            return Err(ConditioningError::State(StateError::NotPositiveDefinite));
        }
        terms[i] = MixtureTerm {
            weight: weights.n[i],
            gamma_minus: gm,
            gamma_plus: gp,
            dev_minus: dev[0][i],
            dev_plus: dev[1][i],
        };
    }
    Ok(GaussianMixture {
        terms,
        p_det: weights.p_det,
        basis,
        eta_h: 1.0,
        params_snapshot: *params,
    })
}

/// Fold homodyne transmission into every covariance:
/// `Gamma -> (1 - eta_H) I + eta_H Gamma`. Weights are untouched.
pub fn dress_homodyne(mixture: &GaussianMixture, eta_h: f64) -> GaussianMixture {
    if eta_h == 1.0 {
        return mixture.clone();
    }
    let mut out = mixture.clone();
    let vac = Mat2::IDENTITY.scale(1.0 - eta_h);
    for t in &mut out.terms {
        t.gamma_minus = t.gamma_minus.scale(eta_h).add(&vac);
        t.gamma_plus = t.gamma_plus.scale(eta_h).add(&vac);
        t.dev_minus = t.dev_minus.scale(eta_h);
        t.dev_plus = t.dev_plus.scale(eta_h);
    }
    out.eta_h = mixture.eta_h * eta_h;
    out
}

/// `log(Gamma_1,kk / Gamma_i,kk)` evaluated without cancellation; used by the
/// observables layer.
pub(crate) fn log_diag_ratio(term1_diag: f64, dev_diag: f64) -> f64 {
    -ln_1p(-dev_diag / term1_diag)
}

/// `log(det Gamma_1 / det Gamma_i)` for 2x2 blocks, from the deviation matrix:
/// `det(Gamma_i)/det(Gamma_1) = det(I - Gamma_1^{-1} D)`.
pub(crate) fn log_det_ratio(gamma1_inv: &Mat2, dev: &Mat2) -> f64 {
    let gd00 = gamma1_inv.m[0][0] * dev.m[0][0] + gamma1_inv.m[0][1] * dev.m[1][0];
    let gd11 = gamma1_inv.m[1][0] * dev.m[0][1] + gamma1_inv.m[1][1] * dev.m[1][1];
    let trace = gd00 + gd11;
    let det = gamma1_inv.det() * dev.det();
    -ln_1p(-trace + det)
}
