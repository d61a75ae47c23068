//! Helpers shared by the integration test binaries.
#![allow(dead_code)]

use cvkitten_core::gaussian_state::PhysicalParams;
use cvkitten_core::quadrature::integrate_with_breakpoints;
use cvkitten_core::temporal_modes::ModeFunction;

/// The default operating point at a given trigger separation.
pub fn operating_point(delta_ns: f64) -> PhysicalParams {
    PhysicalParams {
        delta_ns,
        ..PhysicalParams::default()
    }
}

/// Lossless cavity (`gamma_T = 2 zeta0`) at pump ratio `eps_ratio`.
pub fn lossless(eps_ratio: f64) -> PhysicalParams {
    PhysicalParams {
        gamma_t_mhz: 60.0,
        gamma_l_mhz: 0.0,
        epsilon_mhz: eps_ratio * 30.0,
        ..PhysicalParams::default()
    }
}

/// Weak tap, narrow window, perfect detectors: the limit in which the
/// conditioned state approaches the idealized subtraction picture.
pub fn ideal_limit(eps_ratio: f64, delta_dimless: f64) -> PhysicalParams {
    let p = PhysicalParams {
        gamma_t_mhz: 60.0,
        gamma_l_mhz: 0.0,
        epsilon_mhz: eps_ratio * 30.0,
        tap_reflectance: 1e-3,
        trigger_split: 0.5,
        window_ns: 1e-3 / 0.03, // zeta0 T = 1e-3
        detector_efficiency: 1.0,
        fake_rate: 1e-12,
        homodyne_efficiency: 1.0,
        epsilon_noise_mhz: 0.0,
        delta_ns: 0.0,
    };
    p.with_delta_dimless(delta_dimless)
}

/// Quadrature evaluation of `int Psi(t) e^{-zeta |t - center|} dt`.
pub fn quad_kernel_single(mode: &ModeFunction, zeta: f64, center: f64, tol: f64) -> f64 {
    let (mlo, mhi) = mode.support_window(1e-18);
    let lo = mlo.min(center - 40.0 / zeta);
    let hi = mhi.max(center + 40.0 / zeta);
    let mut cuts = mode.breakpoints();
    cuts.push(center);
    integrate_with_breakpoints(
        |t| mode.eval(t) * cvkitten_core::math::exp(-zeta * cvkitten_core::math::abs(t - center)),
        lo,
        hi,
        &cuts,
        tol,
    )
    .expect("outer quadrature converged")
}

/// Nested quadrature evaluation of
/// `int int Psi_k(t) Psi_l(t') e^{-zeta |t - t'|} dt dt'`.
pub fn quad_kernel_double(
    mode_k: &ModeFunction,
    mode_l: &ModeFunction,
    zeta: f64,
    inner_tol: f64,
    outer_tol: f64,
) -> f64 {
    let (klo, khi) = mode_k.support_window(1e-18);
    let (llo, lhi) = mode_l.support_window(1e-18);
    let lo = klo.min(llo) - 40.0 / zeta;
    let hi = khi.max(lhi) + 40.0 / zeta;
    let outer_cuts = mode_k.breakpoints();
    let inner_cuts = mode_l.breakpoints();
    integrate_with_breakpoints(
        |t| {
            let mut cuts = inner_cuts.clone();
            cuts.push(t);
            let inner = integrate_with_breakpoints(
                |tp| mode_l.eval(tp) * cvkitten_core::math::exp(-zeta * cvkitten_core::math::abs(t - tp)),
                lo,
                hi,
                &cuts,
                inner_tol,
            )
            .expect("inner quadrature converged");
            mode_k.eval(t) * inner
        },
        lo,
        hi,
        &outer_cuts,
        outer_tol,
    )
    .expect("outer quadrature converged")
}

/// Deterministic splitmix64 for reproducible "random" parameter draws.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}
