//! Lossless pure-state amplitudes of the two-photon-subtracted beam.
//!
//! In the lossless picture the subtraction kernel acts on the vacuum before
//! the collective squeezing, so the conditioned state is a three-component
//! superposition whose coefficients are elementary in the pump ratio and the
//! packet overlap. This module is the analytic oracle for the limiting
//! behavior of the full Gaussian model; it never builds covariances.
//!
//! Amplitudes are reported unnormalized (common prefactors carry no physics)
//! together with their normalization; comparisons should use ratios.

use crate::math::{abs, exp, sqrt};
use crate::temporal_modes::overlap_i;

/// Unnormalized amplitudes over the unbiased two-mode Fock basis
/// `{|1,1>, (|2,0>+|0,2>)/sqrt(2), |0,0>}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnbiasedAmplitudes {
    pub c_11: f64,
    pub c_sym_20_02: f64,
    pub c_00: f64,
}

/// Unnormalized amplitudes over the biased two-mode Fock basis
/// `{|2_+, 0_->, |0_+, 2_->, |0_+, 0_->}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasedAmplitudes {
    pub c_plus: f64,
    pub c_minus: f64,
    pub c_00: f64,
}

impl UnbiasedAmplitudes {
    pub fn norm(&self) -> f64 {
        sqrt(self.c_11 * self.c_11 + self.c_sym_20_02 * self.c_sym_20_02 + self.c_00 * self.c_00)
    }

    pub fn normalized(&self) -> UnbiasedAmplitudes {
        let n = self.norm();
        UnbiasedAmplitudes {
            c_11: self.c_11 / n,
            c_sym_20_02: self.c_sym_20_02 / n,
            c_00: self.c_00 / n,
        }
    }

    /// Exact 45-degree Fock-basis rotation to the biased description.
    pub fn to_biased(&self) -> BiasedAmplitudes {
        let s = 1.0 / sqrt(2.0);
        BiasedAmplitudes {
            c_plus: s * (self.c_11 + self.c_sym_20_02),
            c_minus: s * (self.c_sym_20_02 - self.c_11),
            c_00: self.c_00,
        }
    }
}

impl BiasedAmplitudes {
    pub fn norm(&self) -> f64 {
        sqrt(self.c_plus * self.c_plus + self.c_minus * self.c_minus + self.c_00 * self.c_00)
    }

    pub fn normalized(&self) -> BiasedAmplitudes {
        let n = self.norm();
        BiasedAmplitudes {
            c_plus: self.c_plus / n,
            c_minus: self.c_minus / n,
            c_00: self.c_00 / n,
        }
    }

    pub fn to_unbiased(&self) -> UnbiasedAmplitudes {
        let s = 1.0 / sqrt(2.0);
        UnbiasedAmplitudes {
            c_11: s * (self.c_plus - self.c_minus),
            c_sym_20_02: s * (self.c_plus + self.c_minus),
            c_00: self.c_00,
        }
    }
}

/// Two-photon-subtracted amplitudes in the unbiased modes:
/// `z^2 |1,1> + z^2 I (|2,0>+|0,2>)/sqrt(2) + z e^{-delta} |0,0>`.
pub fn ideal_unbiased_amplitudes(eps_ratio: f64, delta: f64) -> UnbiasedAmplitudes {
    let i = overlap_i(delta);
    let z2 = eps_ratio * eps_ratio;
    UnbiasedAmplitudes {
        c_11: z2,
        c_sym_20_02: i * z2,
        c_00: eps_ratio * exp(-delta),
    }
}

/// Same state over the biased modes:
/// `z^2 (1+I)/sqrt(2) |2+,0-> - z^2 (1-I)/sqrt(2) |0+,2-> + z e^{-delta} |00>`.
pub fn ideal_biased_amplitudes(eps_ratio: f64, delta: f64) -> BiasedAmplitudes {
    let i = overlap_i(delta);
    let z2 = eps_ratio * eps_ratio;
    let s = 1.0 / sqrt(2.0);
    BiasedAmplitudes {
        c_plus: z2 * (1.0 + i) * s,
        c_minus: -z2 * (1.0 - i) * s,
        c_00: eps_ratio * exp(-delta),
    }
}

/// The even-kernel regrouping of the unbiased state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiEDecomposition {
    /// Normalizer of the even kernel, `sqrt(z^2 (1+delta)^2 + 1/2)`.
    pub nu_e: f64,
    /// Overall normalization of the regrouped state.
    pub normalization: f64,
    /// Two-photon coefficient of the even kernel.
    pub c2: f64,
    /// Vacuum coefficient of the even kernel.
    pub c0: f64,
}

pub fn phi_e_decomposition(eps_ratio: f64, delta: f64) -> PhiEDecomposition {
    let z2 = eps_ratio * eps_ratio;
    let grown = 1.0 + delta;
    let nu_e = sqrt(z2 * grown * grown + 0.5);
    let e2 = exp(-2.0 * delta);
    let normalization = 1.0 / sqrt(z2 + e2 * (nu_e * nu_e + 0.5));
    PhiEDecomposition {
        nu_e,
        normalization,
        c2: eps_ratio * grown / nu_e,
        c0: 1.0 / (sqrt(2.0) * nu_e),
    }
}

/// Rebuild the unbiased amplitudes from the even-kernel regrouping
/// `z |1,1> + e^{-delta} nu_e (|phi_e, 0> + |0, phi_e>) / sqrt(2)`, scaled by
/// the common factor `z`. Agrees with [`ideal_unbiased_amplitudes`] exactly.
pub fn phi_e_reconstructed_unbiased(eps_ratio: f64, delta: f64) -> UnbiasedAmplitudes {
    let d = phi_e_decomposition(eps_ratio, delta);
    let e1 = exp(-delta);
    UnbiasedAmplitudes {
        c_11: eps_ratio * eps_ratio,
        c_sym_20_02: eps_ratio * e1 * (d.nu_e * d.c2),
        c_00: eps_ratio * e1 * (sqrt(2.0) * d.nu_e * d.c0),
    }
}

/// Amplitude scale of the single-photon-subtracted kernel, `sqrt(R) z`.
pub fn ideal_single_photon_norm(eps_ratio: f64, tap_reflectance: f64) -> f64 {
    sqrt(tap_reflectance) * eps_ratio
}

/// Largest relative mismatch between two amplitude triples after
/// normalization; the basis-rotation residual used in reports.
pub fn rotation_residual(eps_ratio: f64, delta: f64) -> f64 {
    let direct = ideal_biased_amplitudes(eps_ratio, delta).normalized();
    let rotated = ideal_unbiased_amplitudes(eps_ratio, delta)
        .to_biased()
        .normalized();
    let mut worst: f64 = 0.0;
    for (a, b) in [
        (direct.c_plus, rotated.c_plus),
        (direct.c_minus, rotated.c_minus),
        (direct.c_00, rotated.c_00),
    ] {
        worst = worst.max(abs(a - b));
    }
    worst
}
