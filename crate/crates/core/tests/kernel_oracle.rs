//! Closed-form kernel integrals against the adaptive-quadrature oracle, and
//! covariance-structure invariants that tie the matrix builders back to the
//! time-domain correlation functions.

mod common;

use common::{lossless, quad_kernel_double, quad_kernel_single};
use cvkitten_core::gaussian_state::{
    build_gamma, build_m, build_xi, time_correlation, SignalBasis,
};
use cvkitten_core::math::{abs, Mat2};
use cvkitten_core::quadrature::integrate_with_breakpoints;
use cvkitten_core::temporal_modes::{
    biased_modes, kernel_integral_double, kernel_integral_single, overlap_i, psi_mode,
    trigger_times, unbiased_modes,
};

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

#[test]
fn overlap_agrees_with_quadrature_over_range() {
    for &delta in grid(0.1, 10.0, 21).iter() {
        let (t1, t2) = trigger_times(delta);
        let q = quad_kernel_single(&psi_mode(t1), 1.0, t2, 1e-12);
        assert!(abs(q - overlap_i(delta)) < 1e-10, "delta = {delta}");
    }
}

#[test]
fn gram_matrices_are_identity_by_quadrature() {
    for &delta in &[0.3, 1.0, 2.5, 6.0] {
        let (u1, u2) = unbiased_modes(delta).unwrap();
        let (plus, minus) = biased_modes(delta).unwrap();
        for pair in [[&u1, &u1], [&u1, &u2], [&u2, &u2]] {
            let expect = if core::ptr::eq(pair[0], pair[1]) { 1.0 } else { 0.0 };
            let (lo0, hi0) = pair[0].support_window(1e-18);
            let (lo1, hi1) = pair[1].support_window(1e-18);
            let mut cuts = pair[0].breakpoints();
            cuts.extend(pair[1].breakpoints());
            let q = integrate_with_breakpoints(
                |t| pair[0].eval(t) * pair[1].eval(t),
                lo0.min(lo1),
                hi0.max(hi1),
                &cuts,
                1e-12,
            )
            .unwrap();
            assert!(abs(q - expect) < 1e-10, "unbiased delta = {delta}");
        }
        for pair in [[&plus, &plus], [&plus, &minus], [&minus, &minus]] {
            let expect = if core::ptr::eq(pair[0], pair[1]) { 1.0 } else { 0.0 };
            let (lo0, hi0) = pair[0].support_window(1e-18);
            let (lo1, hi1) = pair[1].support_window(1e-18);
            let mut cuts = pair[0].breakpoints();
            cuts.extend(pair[1].breakpoints());
            let q = integrate_with_breakpoints(
                |t| pair[0].eval(t) * pair[1].eval(t),
                lo0.min(lo1),
                hi0.max(hi1),
                &cuts,
                1e-12,
            )
            .unwrap();
            assert!(abs(q - expect) < 1e-10, "biased delta = {delta}");
        }
    }
}

#[test]
fn kernel_closed_forms_match_quadrature_grid() {
    // Separations and kernel widths spanning the regimes the model visits,
    // confluent point included.
    for &delta in grid(0.1, 10.0, 5).iter() {
        let (t1, t2) = trigger_times(delta);
        let p1 = psi_mode(t1);
        let p2 = psi_mode(t2);
        let (plus, _) = biased_modes(delta).unwrap();
        for &zeta in grid(0.3, 3.0, 5).iter() {
            for mode in [&p1, &plus] {
                let closed = kernel_integral_single(mode, zeta, t1);
                let q = quad_kernel_single(mode, zeta, t1, 1e-12);
                assert!(
                    abs(closed - q) < 1e-10,
                    "single delta={delta} zeta={zeta}: {closed} vs {q}"
                );
            }
            let closed = kernel_integral_double(&p1, &p2, zeta);
            let q = quad_kernel_double(&p1, &p2, zeta, 1e-11, 1e-9);
            assert!(
                abs(closed - q) < 1e-8,
                "double delta={delta} zeta={zeta}: {closed} vs {q}"
            );
            let closed = kernel_integral_double(&plus, &plus, zeta);
            let q = quad_kernel_double(&plus, &plus, zeta, 1e-11, 1e-9);
            assert!(
                abs(closed - q) < 1e-8,
                "double(plus) delta={delta} zeta={zeta}: {closed} vs {q}"
            );
        }
    }
}

#[test]
fn signal_covariance_matches_time_correlations() {
    // The bare-beam block must equal the double integral of the mode pair
    // against 2(normal +/- anomalous) correlations: x block at -eps, p block
    // at +eps. Ties the kernel algebra to the time-domain picture.
    let p = lossless(0.3);
    for &delta in &[0.6, 1.8] {
        let basis = SignalBasis::Biased.mode_pair(delta).unwrap();
        let trial = p.with_delta_dimless(delta);
        let m_minus = build_m(-0.3, &basis, &trial).unwrap();
        let m_plus = build_m(0.3, &basis, &trial).unwrap();
        for k in 0..2 {
            for l in 0..2 {
                let corr = |combine_sign: f64| {
                    let mk = &basis[k];
                    let ml = &basis[l];
                    let (lo_k, hi_k) = mk.support_window(1e-16);
                    let (lo_l, hi_l) = ml.support_window(1e-16);
                    let lo = lo_k.min(lo_l) - 20.0;
                    let hi = hi_k.max(hi_l) + 20.0;
                    let outer_cuts = mk.breakpoints();
                    integrate_with_breakpoints(
                        |t| {
                            let mut cuts = ml.breakpoints();
                            cuts.push(t);
                            let inner = integrate_with_breakpoints(
                                |tp| {
                                    let (normal, anomalous) =
                                        time_correlation(t, tp, &trial).unwrap();
                                    ml.eval(tp) * 2.0 * (normal + combine_sign * anomalous)
                                },
                                lo,
                                hi,
                                &cuts,
                                1e-9,
                            )
                            .unwrap();
                            mk.eval(t) * inner
                        },
                        lo,
                        hi,
                        &outer_cuts,
                        1e-7,
                    )
                    .unwrap()
                };
                let delta_kl = if k == l { 1.0 } else { 0.0 };
                let x_block = delta_kl + corr(1.0);
                let p_block = delta_kl + corr(-1.0);
                assert!(
                    abs(x_block - m_minus.m[k][l]) < 1e-6,
                    "x block ({k},{l}) delta={delta}"
                );
                assert!(
                    abs(p_block - m_plus.m[k][l]) < 1e-6,
                    "p block ({k},{l}) delta={delta}"
                );
            }
        }
    }
}

#[test]
fn xi_matches_quadrature() {
    let p = lossless(0.3).with_delta_dimless(1.0);
    let basis = SignalBasis::Unbiased.mode_pair(p.delta()).unwrap();
    let (t1, _) = trigger_times(p.delta());
    for &sign in &[-1.0, 1.0] {
        let eps_signed = sign * p.eps_ratio();
        let xi = build_xi(eps_signed, &basis, t1, &p).unwrap();
        let zeta = 1.0 + eps_signed;
        let coupling = eps_signed * p.gamma_t_ratio() / zeta;
        let scale = ((1.0 - p.tap_reflectance) * p.tap_reflectance).sqrt()
            * coupling
            * p.window().sqrt();
        for k in 0..2 {
            let q = scale * quad_kernel_single(&basis[k], zeta, t1, 1e-12);
            assert!(abs(xi[k] - q) < 1e-10, "sign={sign} k={k}");
        }
    }
}

#[test]
fn covariance_transforms_between_bases() {
    // Gamma_AA(biased) = U^t Gamma_AA(unbiased) U for the fixed 45-degree
    // rotation, tested through the assembled 4x4 blocks.
    let p = lossless(0.3).with_delta_dimless(1.3);
    let unbiased = SignalBasis::Unbiased.mode_pair(p.delta()).unwrap();
    let biased = SignalBasis::Biased.mode_pair(p.delta()).unwrap();
    let s = 1.0 / 2.0f64.sqrt();
    // Rows of U: biased modes in terms of unbiased ones.
    let u = Mat2::new(s, s, -s, s);
    for &sign in &[-1.0, 1.0] {
        let eps_signed = sign * p.eps_ratio();
        let g_unb = build_gamma(eps_signed, &unbiased, &p).unwrap();
        let g_bia = build_gamma(eps_signed, &biased, &p).unwrap();
        let aa_unb = Mat2::new(g_unb.m[0][0], g_unb.m[0][1], g_unb.m[1][0], g_unb.m[1][1]);
        // X_biased = U X_unbiased, so Gamma_biased = U Gamma U^t; with our
        // congruence convention that is (U^t)^t Gamma (U^t).
        let ut = Mat2::new(u.m[0][0], u.m[1][0], u.m[0][1], u.m[1][1]);
        let rotated = aa_unb.congruence(&ut);
        for k in 0..2 {
            for l in 0..2 {
                assert!(
                    abs(rotated.m[k][l] - g_bia.m[k][l]) < 1e-10,
                    "({k},{l}) sign={sign}"
                );
            }
        }
    }
}

#[test]
fn heisenberg_bound_on_symplectic_spectrum() {
    // Physicality of the x/p block pair: every eigenvalue of
    // Gamma(-) Gamma(+) is >= 1, checked through the symmetric similarity
    // L^t Gamma(-) L with Gamma(+) = L L^t.
    use cvkitten_core::math::Mat4;
    for &delta_ns in &[1.0, 30.0, 250.0] {
        let p = common::operating_point(delta_ns);
        for basis_kind in [SignalBasis::Biased, SignalBasis::Unbiased] {
            let basis = basis_kind.mode_pair(p.delta()).unwrap();
            let cov = cvkitten_core::gaussian_state::covariance_set(&basis, &p).unwrap();
            let l = cov.plus.cholesky().unwrap();
            let mut sym = Mat4::ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = 0.0;
                    for a in 0..4 {
                        for b in 0..4 {
                            acc += l[a][i] * cov.minus.m[a][b] * l[b][j];
                        }
                    }
                    sym.m[i][j] = acc;
                }
            }
            let ev = sym.sym_eigenvalues();
            assert!(ev[0] >= 1.0 - 1e-9, "delta={delta_ns} {basis_kind:?}: {ev:?}");
        }
    }
}
