//! Three-beam squeezed-state covariance structure and its characteristic
//! function.
//!
//! The beam leaving the cavity is Gaussian, so two 4x4 symmetric matrices
//! over (signal mode 1, signal mode 2, trigger B, trigger C) carry the whole
//! state: one for the x quadratures (built at `-epsilon`) and one for the p
//! quadratures (built at `+epsilon`). Vacuum variance is 1 in this scaling.
//!
//! Internally everything is dimensionless: rates are divided by the cavity
//! half-bandwidth `zeta0 = (gamma_T + gamma_L)/2`, times are multiplied by
//! it. Physical units (MHz, ns) appear only in [`PhysicalParams`].

use crate::math::{abs, exp, sqrt, Mat2, Mat4};
use crate::temporal_modes::{
    biased_modes, kernel_integral_double, kernel_integral_single, trigger_times, unbiased_modes,
    ModeError, ModeFunction,
};
use core::fmt;

/// Experimental knobs in laboratory units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Output coupler leakage rate, MHz.
    pub gamma_t_mhz: f64,
    /// Intracavity loss rate, MHz.
    pub gamma_l_mhz: f64,
    /// Parametric pump coupling, MHz. Must stay below `zeta0` (threshold).
    pub epsilon_mhz: f64,
    /// Tap beam-splitter reflectance R.
    pub tap_reflectance: f64,
    /// Trigger-splitting beam-splitter reflectance R1.
    pub trigger_split: f64,
    /// On/off detector time resolution, ns.
    pub window_ns: f64,
    /// Overall on/off detection efficiency.
    pub detector_efficiency: f64,
    /// Fake trigger rate per resolution window.
    pub fake_rate: f64,
    /// Effective homodyne transmission.
    pub homodyne_efficiency: f64,
    /// External-noise coefficient, MHz; weakens the effective coupling.
    pub epsilon_noise_mhz: f64,
    /// Trigger time separation, ns.
    pub delta_ns: f64,
}

impl Default for PhysicalParams {
    /// Typical cw OPO operating point used throughout the test suite:
    /// 3.6 dB pump, 5% tap, balanced trigger split, 1 ns detectors.
    fn default() -> Self {
        PhysicalParams {
            gamma_t_mhz: 58.8,
            gamma_l_mhz: 1.2,
            epsilon_mhz: 9.0,
            tap_reflectance: 0.05,
            trigger_split: 0.5,
            window_ns: 1.0,
            detector_efficiency: 0.6,
            fake_rate: 1e-7,
            homodyne_efficiency: 0.96,
            epsilon_noise_mhz: 0.0,
            delta_ns: 30.0,
        }
    }
}

/// A violated parameter invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamsError {
    NonPositiveBandwidth,
    AboveThreshold,
    NoiseExceedsPump,
    ReflectanceOutOfRange,
    EfficiencyOutOfRange,
    NegativeRate,
    NegativeTime,
}

impl fmt::Display for ParamsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParamsError::NonPositiveBandwidth => "gamma_T must be positive and gamma_L nonnegative",
            ParamsError::AboveThreshold => "epsilon must satisfy 0 <= epsilon < zeta0",
            ParamsError::NoiseExceedsPump => "epsilon_x must satisfy 0 <= epsilon_x <= epsilon",
            ParamsError::ReflectanceOutOfRange => "reflectances R, R1 must lie in [0, 1]",
            ParamsError::EfficiencyOutOfRange => "efficiencies eta, eta_H must lie in (0, 1]",
            ParamsError::NegativeRate => "fake trigger rate nu must be nonnegative",
            ParamsError::NegativeTime => "times T, delta must be nonnegative",
        };
        f.write_str(s)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParamsError {}

/// Non-fatal conditions worth reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamsWarning {
    /// `zeta0 * T` is not small; the single-trigger-mode treatment degrades.
    WindowNotNarrow,
}

impl fmt::Display for ParamsWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamsWarning::WindowNotNarrow => {
                write!(f, "zeta0 * T >= 0.2: detector window is not narrow against the cavity response")
            }
        }
    }
}

impl PhysicalParams {
    /// Cavity half-bandwidth `(gamma_T + gamma_L) / 2`, MHz.
    pub fn zeta0_mhz(&self) -> f64 {
        0.5 * (self.gamma_t_mhz + self.gamma_l_mhz)
    }

    /// `epsilon / zeta0`.
    pub fn eps_ratio(&self) -> f64 {
        self.epsilon_mhz / self.zeta0_mhz()
    }

    /// `epsilon_x / zeta0`.
    pub fn noise_ratio(&self) -> f64 {
        self.epsilon_noise_mhz / self.zeta0_mhz()
    }

    /// `gamma_T / zeta0`.
    pub fn gamma_t_ratio(&self) -> f64 {
        self.gamma_t_mhz / self.zeta0_mhz()
    }

    /// Dimensionless detector window `zeta0 T`.
    pub fn window(&self) -> f64 {
        self.zeta0_mhz() * self.window_ns * 1e-3
    }

    /// Dimensionless separation `zeta0 delta`.
    pub fn delta(&self) -> f64 {
        self.zeta0_mhz() * self.delta_ns * 1e-3
    }

    /// Replace the separation, given in dimensionless units.
    pub fn with_delta_dimless(mut self, delta: f64) -> Self {
        self.delta_ns = delta / (self.zeta0_mhz() * 1e-3);
        self
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        if !(self.gamma_t_mhz > 0.0) || !(self.gamma_l_mhz >= 0.0) {
            return Err(ParamsError::NonPositiveBandwidth);
        }
        if !(self.epsilon_mhz >= 0.0) || self.epsilon_mhz >= self.zeta0_mhz() {
            return Err(ParamsError::AboveThreshold);
        }
        if !(self.epsilon_noise_mhz >= 0.0) || self.epsilon_noise_mhz > self.epsilon_mhz {
            return Err(ParamsError::NoiseExceedsPump);
        }
        let refl_ok = |r: f64| (0.0..=1.0).contains(&r);
        if !refl_ok(self.tap_reflectance) || !refl_ok(self.trigger_split) {
            return Err(ParamsError::ReflectanceOutOfRange);
        }
        let eff_ok = |e: f64| e > 0.0 && e <= 1.0;
        if !eff_ok(self.detector_efficiency) || !eff_ok(self.homodyne_efficiency) {
            return Err(ParamsError::EfficiencyOutOfRange);
        }
        if !(self.fake_rate >= 0.0) {
            return Err(ParamsError::NegativeRate);
        }
        if !(self.window_ns >= 0.0) || !(self.delta_ns >= 0.0) {
            return Err(ParamsError::NegativeTime);
        }
        Ok(())
    }

    pub fn warnings(&self) -> alloc::vec::Vec<ParamsWarning> {
        let mut w = alloc::vec::Vec::new();
        if self.window() >= 0.2 {
            w.push(ParamsWarning::WindowNotNarrow);
        }
        w
    }
}

/// Which two-mode description of the signal beam to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalBasis {
    /// Pair overlapping equally with the two packets.
    Unbiased,
    /// Symmetric/antisymmetric packet combinations.
    Biased,
}

impl SignalBasis {
    pub fn mode_pair(&self, delta: f64) -> Result<[ModeFunction; 2], ModeError> {
        match self {
            SignalBasis::Unbiased => {
                let (u1, u2) = unbiased_modes(delta)?;
                Ok([u1, u2])
            }
            SignalBasis::Biased => {
                let (plus, minus) = biased_modes(delta)?;
                Ok([plus, minus])
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SignalBasis::Unbiased => "unbiased",
            SignalBasis::Biased => "biased",
        }
    }
}

/// Failures while assembling covariances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateError {
    /// `zeta0 + epsilon_signed <= 0`: the parametric gain diverges.
    AboveThreshold,
    /// The assembled covariance block failed its symmetric factorization.
    NotPositiveDefinite,
    Mode(ModeError),
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::AboveThreshold => write!(f, "pump at or above threshold: zeta(eps) <= 0"),
            StateError::NotPositiveDefinite => {
                write!(f, "covariance matrix not positive definite")
            }
            StateError::Mode(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for StateError {}

impl From<ModeError> for StateError {
    fn from(e: ModeError) -> Self {
        StateError::Mode(e)
    }
}

/// `zeta(eps) = zeta0 + eps` in units of `zeta0`; `eps_signed_ratio` is
/// `+eps/zeta0` for the p block and `-eps/zeta0` for the x block.
pub fn zeta_of(eps_signed_ratio: f64) -> Result<f64, StateError> {
    let z = 1.0 + eps_signed_ratio;
    if z <= 0.0 {
        return Err(StateError::AboveThreshold);
    }
    Ok(z)
}

/// The scalar `eps gamma_T / zeta(eps)` that carries all squeezing terms,
/// with external noise subtracted from the pump. The noise term follows the
/// sign of `eps_signed_ratio`, so full noise cancels both blocks.
pub fn noise_dressed_coupling(
    eps_signed_ratio: f64,
    params: &PhysicalParams,
) -> Result<f64, StateError> {
    let zeta = zeta_of(eps_signed_ratio)?;
    let sign = if eps_signed_ratio < 0.0 { -1.0 } else { 1.0 };
    let effective = eps_signed_ratio - sign * params.noise_ratio();
    Ok(effective * params.gamma_t_ratio() / zeta)
}

/// Signal-block covariance contribution `M_kl = delta_kl - c * K2(k, l)`.
pub fn build_m(
    eps_signed_ratio: f64,
    basis: &[ModeFunction; 2],
    params: &PhysicalParams,
) -> Result<Mat2, StateError> {
    let zeta = zeta_of(eps_signed_ratio)?;
    let c = noise_dressed_coupling(eps_signed_ratio, params)?;
    let mut m = [[0.0; 2]; 2];
    for k in 0..2 {
        for l in k..2 {
            let integral = kernel_integral_double(&basis[k], &basis[l], zeta);
            let val = if k == l { 1.0 - c * integral } else { -c * integral };
            m[k][l] = val;
            m[l][k] = val;
        }
    }
    Ok(Mat2 { m })
}

/// Signal-trigger cross covariances for the trigger segment at
/// `trigger_center` (dimensionless time).
pub fn build_xi(
    eps_signed_ratio: f64,
    basis: &[ModeFunction; 2],
    trigger_center: f64,
    params: &PhysicalParams,
) -> Result<[f64; 2], StateError> {
    let zeta = zeta_of(eps_signed_ratio)?;
    let c = noise_dressed_coupling(eps_signed_ratio, params)?;
    let r = params.tap_reflectance;
    let scale = sqrt((1.0 - r) * r) * c * sqrt(params.window());
    Ok([
        scale * kernel_integral_single(&basis[0], zeta, trigger_center),
        scale * kernel_integral_single(&basis[1], zeta, trigger_center),
    ])
}

/// Trigger-block covariance scalars `(b_pp, b_pm)`.
///
/// Both scale with the dimensionless window `zeta0 T`: the rectangular
/// trigger segment samples the beam for that long, and its variance excess
/// follows from integrating the time correlations over the window, exactly
/// as the cross terms do. The second scalar picks up the correlation decay
/// `e^{-zeta(eps) delta}` between the two segments.
pub fn build_b(eps_signed_ratio: f64, params: &PhysicalParams) -> Result<(f64, f64), StateError> {
    let zeta = zeta_of(eps_signed_ratio)?;
    let c = noise_dressed_coupling(eps_signed_ratio, params)?;
    let b_pp = -params.tap_reflectance * c * params.window();
    let b_pm = b_pp * exp(-zeta * params.delta());
    Ok((b_pp, b_pm))
}

/// Assemble one 4x4 quadrature block over (signal 1, signal 2, B, C).
pub fn build_gamma(
    eps_signed_ratio: f64,
    basis: &[ModeFunction; 2],
    params: &PhysicalParams,
) -> Result<Mat4, StateError> {
    let m = build_m(eps_signed_ratio, basis, params)?;
    let (t1, t2) = trigger_times(params.delta());
    let xi_b = build_xi(eps_signed_ratio, basis, t1, params)?;
    let xi_c = build_xi(eps_signed_ratio, basis, t2, params)?;
    let (b_pp, b_pm) = build_b(eps_signed_ratio, params)?;

    let r = params.tap_reflectance;
    let r1 = params.trigger_split;
    let mut g = [[0.0; 4]; 4];
    for k in 0..2 {
        for l in 0..2 {
            g[k][l] = if k == l {
                r + (1.0 - r) * m.m[k][l]
            } else {
                (1.0 - r) * m.m[k][l]
            };
        }
    }
    let wb = sqrt(1.0 - r1);
    let wc = sqrt(r1);
    for k in 0..2 {
        g[k][2] = wb * xi_b[k];
        g[2][k] = g[k][2];
        g[k][3] = wc * xi_c[k];
        g[3][k] = g[k][3];
    }
    g[2][2] = 1.0 + (1.0 - r1) * b_pp;
    g[3][3] = 1.0 + r1 * b_pp;
    g[2][3] = sqrt((1.0 - r1) * r1) * b_pm;
    g[3][2] = g[2][3];

    let gamma = Mat4 { m: g };
    if !gamma.is_positive_definite() {
        return Err(StateError::NotPositiveDefinite);
    }
    Ok(gamma)
}

/// The pair of quadrature blocks for one basis choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceSet {
    /// x block, built at `-eps`.
    pub minus: Mat4,
    /// p block, built at `+eps`.
    pub plus: Mat4,
}

pub fn covariance_set(
    basis: &[ModeFunction; 2],
    params: &PhysicalParams,
) -> Result<CovarianceSet, StateError> {
    let eps = params.eps_ratio();
    Ok(CovarianceSet {
        minus: build_gamma(-eps, basis, params)?,
        plus: build_gamma(eps, basis, params)?,
    })
}

/// Gaussian characteristic function of the three-beam state.
pub fn char_fn_abc(u: [f64; 4], v: [f64; 4], cov: &CovarianceSet) -> f64 {
    exp(-0.25 * cov.minus.quad_form(u)) * exp(-0.25 * cov.plus.quad_form(v))
}

/// Stationary correlations `<A^dag(t) A(t')>` and `<A(t) A(t')>` of the bare
/// beam (no tap), both real in this rotating frame.
pub fn time_correlation(
    t: f64,
    t_prime: f64,
    params: &PhysicalParams,
) -> Result<(f64, f64), StateError> {
    let eps = params.eps_ratio();
    let zm = zeta_of(-eps)?;
    let zp = zeta_of(eps)?;
    let tau = abs(t - t_prime);
    let front = 0.25 * eps * params.gamma_t_ratio();
    let soft = exp(-zm * tau) / zm;
    let hard = exp(-zp * tau) / zp;
    Ok((front * (soft - hard), front * (soft + hard)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lossless_params() -> PhysicalParams {
        // gamma_L = 0 so gamma_T = 2 zeta0 exactly.
        PhysicalParams {
            gamma_t_mhz: 60.0,
            gamma_l_mhz: 0.0,
            epsilon_mhz: 9.0,
            ..PhysicalParams::default()
        }
    }

    #[test]
    fn zeta_shifts_by_signed_pump() {
        assert_eq!(zeta_of(0.0).unwrap(), 1.0);
        assert!(abs(zeta_of(0.3).unwrap() - 1.3) < 1e-15);
        assert!(abs(zeta_of(-0.3).unwrap() - 0.7) < 1e-15);
        assert_eq!(zeta_of(-1.0).unwrap_err(), StateError::AboveThreshold);
    }

    #[test]
    fn coupling_values() {
        let p = lossless_params();
        let c = noise_dressed_coupling(0.3, &p).unwrap();
        assert!(abs(c - 0.6 / 1.3) < 1e-14);
        assert!(abs(c - 0.461538461538462) < 1e-12);
        let cm = noise_dressed_coupling(-0.3, &p).unwrap();
        assert!(abs(cm + 0.6 / 0.7) < 1e-14);
        assert_eq!(noise_dressed_coupling(0.0, &p).unwrap(), 0.0);
    }

    #[test]
    fn full_noise_cancels_coupling_in_both_blocks() {
        let mut p = lossless_params();
        p.epsilon_noise_mhz = p.epsilon_mhz;
        assert_eq!(noise_dressed_coupling(0.3, &p).unwrap(), 0.0);
        assert_eq!(noise_dressed_coupling(-0.3, &p).unwrap(), 0.0);
    }

    #[test]
    fn m_is_identity_without_pump() {
        let mut p = lossless_params();
        p.epsilon_mhz = 0.0;
        let basis = SignalBasis::Biased.mode_pair(1.0).unwrap();
        let m = build_m(0.0, &basis, &p).unwrap();
        assert_eq!(m, Mat2::IDENTITY);
    }

    #[test]
    fn m_is_diagonal_in_biased_basis() {
        let p = lossless_params();
        for &delta in &[0.3, 1.0, 4.0] {
            let basis = SignalBasis::Biased.mode_pair(delta).unwrap();
            let m = build_m(0.3, &basis, &p).unwrap();
            assert!(abs(m.m[0][1]) < 1e-15, "delta = {delta}");
        }
    }

    #[test]
    fn xi_vanishes_without_tap_or_window() {
        let basis = SignalBasis::Biased.mode_pair(1.0).unwrap();
        let mut p = lossless_params();
        p.window_ns = 0.0;
        assert_eq!(build_xi(0.3, &basis, 0.0, &p).unwrap(), [0.0, 0.0]);
        let mut p = lossless_params();
        p.tap_reflectance = 0.0;
        assert_eq!(build_xi(0.3, &basis, 0.0, &p).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn tap_correlation_scales_with_window() {
        let p = lossless_params();
        let (b_pp, _) = build_b(0.3, &p).unwrap();
        // -R (eps gamma_T / zeta) * (zeta0 T); the rate factor alone is
        // -0.05 * 0.6/1.3 = -0.0230769...
        let rate_factor = -0.05 * 0.6 / 1.3;
        assert!(abs(b_pp - rate_factor * p.window()) < 1e-15);
        assert!(b_pp < 0.0);

        let mut p0 = p;
        p0.delta_ns = 0.0;
        let (bp0, bm0) = build_b(0.3, &p0).unwrap();
        assert_eq!(bp0, bm0);

        let mut pfar = p;
        pfar.delta_ns = 5000.0;
        let (bpf, bmf) = build_b(0.3, &pfar).unwrap();
        assert!(abs(bmf) < 1e-60 * abs(bpf) + 1e-300);
    }

    #[test]
    fn b_pm_bounded_by_b_pp() {
        let p = PhysicalParams::default();
        for &s in &[-1.0, 1.0] {
            let (b_pp, b_pm) = build_b(s * p.eps_ratio(), &p).unwrap();
            assert!(abs(b_pm) <= abs(b_pp));
        }
    }

    #[test]
    fn gamma_is_identity_in_vacuum() {
        let mut p = lossless_params();
        p.epsilon_mhz = 0.0;
        let basis = SignalBasis::Biased.mode_pair(1.0).unwrap();
        let g = build_gamma(0.0, &basis, &p).unwrap();
        assert_eq!(g, Mat4::identity());
    }

    #[test]
    fn gamma_symmetric_positive_definite_with_uncertainty() {
        let p = PhysicalParams::default();
        for basis_kind in [SignalBasis::Biased, SignalBasis::Unbiased] {
            let basis = basis_kind.mode_pair(p.delta()).unwrap();
            let cov = covariance_set(&basis, &p).unwrap();
            assert_eq!(cov.minus.max_asymmetry(), 0.0);
            assert_eq!(cov.plus.max_asymmetry(), 0.0);
            assert!(cov.minus.is_positive_definite());
            assert!(cov.plus.is_positive_definite());
            for k in 0..4 {
                let prod = cov.minus.m[k][k] * cov.plus.m[k][k];
                assert!(prod >= 1.0 - 1e-9, "k = {k}, product = {prod}");
            }
        }
    }

    #[test]
    fn char_fn_unit_at_origin_and_gaussian_elsewhere() {
        let p = PhysicalParams::default();
        let basis = SignalBasis::Biased.mode_pair(p.delta()).unwrap();
        let cov = covariance_set(&basis, &p).unwrap();
        assert_eq!(char_fn_abc([0.0; 4], [0.0; 4], &cov), 1.0);
        let u = [1.0, 0.0, 0.0, 0.0];
        let expect = exp(-0.25 * cov.minus.m[0][0]);
        assert!(abs(char_fn_abc(u, [0.0; 4], &cov) - expect) < 1e-15);
        let v = char_fn_abc([0.3, -1.0, 0.2, 0.5], [1.0, 0.1, -0.4, 0.2], &cov);
        assert!(v > 0.0 && v <= 1.0);
    }

    #[test]
    fn vacuum_char_fn_is_isotropic() {
        let mut p = lossless_params();
        p.epsilon_mhz = 0.0;
        let basis = SignalBasis::Biased.mode_pair(1.0).unwrap();
        let cov = covariance_set(&basis, &p).unwrap();
        let u = [0.3, -0.7, 0.5, 0.1];
        let v = [0.2, 0.4, -0.6, 0.9];
        let norm2: f64 = u.iter().chain(v.iter()).map(|x| x * x).sum();
        assert!(abs(char_fn_abc(u, v, &cov) - exp(-0.25 * norm2)) < 1e-15);
    }

    #[test]
    fn time_correlation_values() {
        let mut p = lossless_params();
        p.epsilon_mhz = 0.0;
        assert_eq!(time_correlation(0.3, 0.9, &p).unwrap(), (0.0, 0.0));

        let p = lossless_params();
        let (normal, anomalous) = time_correlation(2.0, 2.0, &p).unwrap();
        let expect_normal = 0.15 * (1.0 / 0.7 - 1.0 / 1.3);
        assert!(abs(normal - expect_normal) < 1e-14);
        assert!(abs(normal - 0.098901098901099) < 1e-12);
        assert!(anomalous > normal);
        // Normal correlator stays nonnegative below threshold.
        let mut tau = 0.0;
        while tau < 12.0 {
            let (n, _) = time_correlation(0.0, tau, &p).unwrap();
            assert!(n >= 0.0, "tau = {tau}");
            tau += 0.25;
        }
    }

    #[test]
    fn params_validation_rejects_bad_inputs() {
        let mut p = PhysicalParams::default();
        p.epsilon_mhz = 40.0;
        assert_eq!(p.validate().unwrap_err(), ParamsError::AboveThreshold);

        let mut p = PhysicalParams::default();
        p.epsilon_noise_mhz = 10.0;
        assert_eq!(p.validate().unwrap_err(), ParamsError::NoiseExceedsPump);

        let mut p = PhysicalParams::default();
        p.detector_efficiency = 0.0;
        assert_eq!(p.validate().unwrap_err(), ParamsError::EfficiencyOutOfRange);

        let mut p = PhysicalParams::default();
        p.tap_reflectance = 1.5;
        assert_eq!(p.validate().unwrap_err(), ParamsError::ReflectanceOutOfRange);

        assert!(PhysicalParams::default().validate().is_ok());
        assert!(PhysicalParams::default().warnings().is_empty());

        let mut p = PhysicalParams::default();
        p.window_ns = 10.0;
        assert_eq!(p.warnings(), alloc::vec![ParamsWarning::WindowNotNarrow]);
    }

    #[test]
    fn dimensionless_conversions() {
        let p = PhysicalParams::default();
        assert!(abs(p.zeta0_mhz() - 30.0) < 1e-12);
        assert!(abs(p.eps_ratio() - 0.3) < 1e-15);
        assert!(abs(p.window() - 0.03) < 1e-15);
        assert!(abs(p.delta() - 0.9) < 1e-15);
        let q = p.with_delta_dimless(1.5);
        assert!(abs(q.delta() - 1.5) < 1e-12);
        assert!(abs(q.delta_ns - 50.0) < 1e-9);
    }
}
