//! Observables of the conditioned state: Wigner functions, mean photon
//! numbers, and squeezing curves.
//!
//! Quadrature convention: `X = (A + A^dag)/sqrt(2)`, vacuum Wigner variance
//! 1/2, vacuum peak `1/pi`. Squeezing in dB is `10 log10` of the quadrature
//! variance relative to vacuum.
//!
//! Every mixture reduction here goes through the factored term-1 form (see
//! the notes in [`crate::conditioning`]) and a permutation-invariant sum, so
//! the exact mode-relabelling symmetries of the model survive in floating
//! point.

use crate::conditioning::{condition, log_det_ratio, log_diag_ratio, ConditioningError, GaussianMixture};
use crate::gaussian_state::{
    noise_dressed_coupling, zeta_of, PhysicalParams, SignalBasis, StateError,
};
use crate::math::{abs, exp, expm1, log10, sqrt, Mat2, SumAccumulator};
use crate::temporal_modes::{kernel_integral_double, overlap_i, psi_mode_scaled};
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservableError {
    /// A dressed covariance block has (numerically) vanishing determinant.
    SingularCovariance,
}

impl fmt::Display for ObservableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObservableError::SingularCovariance => {
                write!(f, "covariance block numerically singular")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ObservableError {}

/// Rectangular phase-space grid request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Half extent; the axes run over `[-half_extent, +half_extent]`.
    pub half_extent: f64,
    /// Points per axis.
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            half_extent: 5.0,
            points: 201,
        }
    }
}

/// A single-mode Wigner function sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    /// Row-major over p rows, x columns: `values[ip * nx + ix]`.
    pub values: Vec<f64>,
    pub mode_index: usize,
    pub basis: SignalBasis,
    pub p_det: f64,
    /// Snapshot of the generating parameters.
    pub params: PhysicalParams,
}

impl WignerGrid {
    pub fn nx(&self) -> usize {
        self.x_axis.len()
    }

    pub fn np(&self) -> usize {
        self.p_axis.len()
    }

    pub fn value(&self, ix: usize, ip: usize) -> f64 {
        self.values[ip * self.nx() + ix]
    }

    /// Trapezoidal integral over the grid.
    pub fn grid_integral(&self) -> f64 {
        let dx = self.x_axis[1] - self.x_axis[0];
        let dp = self.p_axis[1] - self.p_axis[0];
        let mut acc = 0.0;
        for ip in 0..self.np() {
            let wp = if ip == 0 || ip == self.np() - 1 { 0.5 } else { 1.0 };
            for ix in 0..self.nx() {
                let wx = if ix == 0 || ix == self.nx() - 1 { 0.5 } else { 1.0 };
                acc += wp * wx * self.value(ix, ip);
            }
        }
        acc * dx * dp
    }

    /// Total `|W|` mass on the outermost ring; the auto-extend criterion.
    fn boundary_mass(&self) -> f64 {
        let dx = self.x_axis[1] - self.x_axis[0];
        let dp = self.p_axis[1] - self.p_axis[0];
        let mut acc = 0.0;
        let (nx, np) = (self.nx(), self.np());
        for ix in 0..nx {
            acc += abs(self.value(ix, 0)) + abs(self.value(ix, np - 1));
        }
        for ip in 1..np.saturating_sub(1) {
            acc += abs(self.value(0, ip)) + abs(self.value(nx - 1, ip));
        }
        acc * dx * dp
    }
}

fn axis(half_extent: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    let step = 2.0 * half_extent / (n - 1) as f64;
    (0..n).map(|i| -half_extent + step * i as f64).collect()
}

/// Evaluate the reduced single-mode Wigner function at one phase-space point.
pub fn wigner_single_value(mixture: &GaussianMixture, mode_index: usize, x: f64, p: f64) -> f64 {
    let k = mode_index;
    let t1 = &mixture.terms[0];
    let g1m = t1.gamma_minus.m[k][k];
    let g1p = t1.gamma_plus.m[k][k];
    let base = exp(-x * x / g1m - p * p / g1p) / (PI * sqrt(g1m * g1p));
    let mut acc = SumAccumulator::new();
    for t in &mixture.terms[1..] {
        let dm = t.dev_minus.m[k][k];
        let dp = t.dev_plus.m[k][k];
        let gim = t.gamma_minus.m[k][k];
        let gip = t.gamma_plus.m[k][k];
        let log_ratio = -x * x * dm / (g1m * gim) - p * p * dp / (g1p * gip)
            + 0.5 * (log_diag_ratio(g1m, dm) + log_diag_ratio(g1p, dp));
        acc.push(t.weight * expm1(log_ratio));
    }
    base * (1.0 + acc.total() / mixture.p_det)
}

/// Sample the reduced single-mode Wigner function on a grid, expanding the
/// extent geometrically until the boundary carries less than 1e-6 of mass.
pub fn wigner_single(
    mixture: &GaussianMixture,
    mode_index: usize,
    spec: &GridSpec,
) -> WignerGrid {
    let mut half = spec.half_extent;
    for attempt in 0..5 {
        let x_axis = axis(half, spec.points);
        let p_axis = axis(half, spec.points);
        let mut values = Vec::with_capacity(x_axis.len() * p_axis.len());
        for &p in &p_axis {
            for &x in &x_axis {
                values.push(wigner_single_value(mixture, mode_index, x, p));
            }
        }
        let grid = WignerGrid {
            x_axis,
            p_axis,
            values,
            mode_index,
            basis: mixture.basis,
            p_det: mixture.p_det,
            params: mixture.params_snapshot,
        };
        if attempt == 4 || grid.boundary_mass() < 1e-6 {
            return grid;
        }
        half *= 1.4;
    }
    unreachable!()
}

/// Evaluate the two-mode Wigner function at points `(x1, p1, x2, p2)`.
pub fn wigner_two_mode(
    mixture: &GaussianMixture,
    points: &[[f64; 4]],
) -> Result<Vec<f64>, ObservableError> {
    let t1 = &mixture.terms[0];
    let det1m = t1.gamma_minus.det();
    let det1p = t1.gamma_plus.det();
    let inv = |m: &Mat2| -> Result<Mat2, ObservableError> {
        if abs(m.det()) < 1e-14 {
            return Err(ObservableError::SingularCovariance);
        }
        m.inverse().ok_or(ObservableError::SingularCovariance)
    };
    let inv1m = inv(&t1.gamma_minus)?;
    let inv1p = inv(&t1.gamma_plus)?;
    let mut inv_m = [Mat2::ZERO; 4];
    let mut inv_p = [Mat2::ZERO; 4];
    for (i, t) in mixture.terms.iter().enumerate() {
        inv_m[i] = inv(&t.gamma_minus)?;
        inv_p[i] = inv(&t.gamma_plus)?;
    }

    let mut out = Vec::with_capacity(points.len());
    for pt in points {
        let xv = [pt[0], pt[2]];
        let pv = [pt[1], pt[3]];
        let base = exp(-inv1m.quad_form(xv) - inv1p.quad_form(pv))
            / (PI * PI * sqrt(det1m * det1p));
        let x1 = inv1m.mul_vec(xv);
        let p1 = inv1p.mul_vec(pv);
        let mut acc = SumAccumulator::new();
        for (i, t) in mixture.terms.iter().enumerate().skip(1) {
            // x^t (Gamma_1^{-1} - Gamma_i^{-1}) x = -(Gamma_i^{-1} x)^t D (Gamma_1^{-1} x)
            let xi = inv_m[i].mul_vec(xv);
            let pi = inv_p[i].mul_vec(pv);
            let dxm = t.dev_minus.mul_vec(x1);
            let dxp = t.dev_plus.mul_vec(p1);
            let quad_shift = xi[0] * dxm[0] + xi[1] * dxm[1] + pi[0] * dxp[0] + pi[1] * dxp[1];
            let log_ratio = -quad_shift
                + 0.5 * (log_det_ratio(&inv1m, &t.dev_minus) + log_det_ratio(&inv1p, &t.dev_plus));
            acc.push(t.weight * expm1(log_ratio));
        }
        out.push(base * (1.0 + acc.total() / mixture.p_det));
    }
    Ok(out)
}

/// Mean photon number of signal mode `mode_index`.
///
/// Meaningful on the undressed mixture: this is a property of the heralded
/// state itself, not of the lossy homodyne record.
pub fn mean_photon_general(mixture: &GaussianMixture, mode_index: usize) -> f64 {
    let k = mode_index;
    let t1 = &mixture.terms[0];
    let base = 0.25 * (t1.gamma_minus.m[k][k] + t1.gamma_plus.m[k][k]) - 0.5;
    let mut acc = SumAccumulator::new();
    for t in &mixture.terms[1..] {
        acc.push(t.weight * (t.dev_minus.m[k][k] + t.dev_plus.m[k][k]));
    }
    base - 0.25 * acc.total() / mixture.p_det
}

/// Mean photon numbers in both bases at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonNumbers {
    pub n_plus: f64,
    pub n_minus: f64,
    pub n_u1: f64,
    pub n_u2: f64,
    pub p_det: f64,
}

pub fn photon_numbers(params: &PhysicalParams) -> Result<PhotonNumbers, ConditioningError> {
    let biased = condition(params, SignalBasis::Biased)?;
    let unbiased = condition(params, SignalBasis::Unbiased)?;
    Ok(PhotonNumbers {
        n_plus: mean_photon_general(&biased, 0),
        n_minus: mean_photon_general(&biased, 1),
        n_u1: mean_photon_general(&unbiased, 0),
        n_u2: mean_photon_general(&unbiased, 1),
        p_det: biased.p_det,
    })
}

/// Mode parity selector for the closed-form photon number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

/// Closed-form mean photon number for the symmetric/antisymmetric modes in
/// the narrow-window, weak-tap limit.
///
/// `z` is the pump-to-bandwidth ratio `epsilon / zeta0`. (The inverse
/// reading disagrees with [`mean_photon_general`] by two orders of magnitude
/// at typical pump strengths; `ideal-compare` reports the reconciliation.)
pub fn mean_photon_closed(parity: Parity, z: f64, delta: f64) -> f64 {
    let s = match parity {
        Parity::Plus => 1.0,
        Parity::Minus => -1.0,
    };
    let i = overlap_i(delta);
    let e1 = exp(-delta);
    let e2 = exp(-2.0 * delta);
    let one_pm = 1.0 + s * i;
    let f = 1.5 * one_pm + s * 0.5 * delta * delta * e1;
    let g = 5.0 * one_pm + s * e1 * (2.0 * delta * delta + delta * delta * delta / 3.0);
    let g1 = (1.0 + i * i) * g + 2.0 * one_pm * f * f;
    let g2 = e2 * g + 2.0 * one_pm * one_pm * one_pm + s * 4.0 * one_pm * e1 * f * f;
    let z2 = z * z;
    (z2 * z2 * g1 + z2 * g2) / (2.0 * one_pm * (z2 * (1.0 + i * i) + e2))
}

/// One row of a squeezing characteristic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingPoint {
    pub eps_ratio: f64,
    pub squeeze_db: f64,
    pub antisqueeze_db: f64,
}

/// Quadrature variances (in dB against vacuum) of the bare beam filtered
/// through the packet `sqrt(f) e^{-f|t|}`, as a function of pump strength.
/// No tap, no conditioning.
pub fn squeezing_curve(
    f_ratio: f64,
    eps_ratios: &[f64],
    params: &PhysicalParams,
) -> Result<Vec<SqueezingPoint>, StateError> {
    let mode = psi_mode_scaled(f_ratio, 0.0)?;
    let mut out = Vec::with_capacity(eps_ratios.len());
    for &eps in eps_ratios {
        let mut point = [0.0; 2];
        for (slot, sign) in [(0usize, 1.0), (1usize, -1.0)] {
            let eps_signed = sign * eps;
            let zeta = zeta_of(eps_signed)?;
            let trial = PhysicalParams {
                epsilon_mhz: eps * params.zeta0_mhz(),
                epsilon_noise_mhz: params.epsilon_noise_mhz,
                ..*params
            };
            let c = noise_dressed_coupling(eps_signed, &trial)?;
            let variance = 1.0 - c * kernel_integral_double(&mode, &mode, zeta);
            point[slot] = 10.0 * log10(variance);
        }
        out.push(SqueezingPoint {
            eps_ratio: eps,
            squeeze_db: point[0],
            antisqueeze_db: point[1],
        });
    }
    Ok(out)
}
