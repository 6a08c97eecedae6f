mod common;

use common::*;
use proptest::prelude::*;
use ybkit::special::*;
use ybkit::{Error, C64};

fn mp(tau: C64) -> ModularParam {
    ModularParam::new(tau).unwrap()
}

fn grid5(center: C64, step: f64) -> Vec<C64> {
    let mut out = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            out.push(center + c(a as f64 * step, b as f64 * step));
        }
    }
    out
}

#[test]
fn theta_is_odd_and_vanishes_at_zero() {
    let m = mp(I);
    assert!(theta11(c(0.0, 0.0), &m).unwrap().norm() < 1e-15);
    let u = c(0.3, 0.1);
    assert_close(theta11(-u, &m).unwrap(), -theta11(u, &m).unwrap(), 1e-14);
}

#[test]
fn theta_matches_direct_series_on_grid() {
    for tau in [I, c(0.5, 0.9), c(-0.3, 1.4)] {
        let m = mp(tau);
        for u in grid5(c(0.1, 0.05), 0.17) {
            assert_close(theta11(u, &m).unwrap(), theta_direct(u, tau, 0), 1e-12);
        }
    }
}

#[test]
fn theta_quasi_periodicity() {
    for tau in [I, c(0.5, 0.9), c(0.2, 1.7)] {
        let m = mp(tau);
        for u in grid5(c(0.05, 0.1), 0.13) {
            let t = theta11(u, &m).unwrap();
            let shifted1 = theta11(u + 1.0, &m).unwrap();
            assert_close(shifted1, -t, 1e-10);
            let factor = -(-std::f64::consts::PI * I * tau - 2.0 * std::f64::consts::PI * I * u).exp();
            let shifted_tau = theta11(u + tau, &m).unwrap();
            assert!((shifted_tau - factor * t).norm() <= 1e-10 * (factor * t).norm().max(1e-300));
        }
    }
}

#[test]
fn theta_far_from_origin_uses_reduction() {
    let tau = c(0.3, 1.1);
    let m = mp(tau);
    let u = c(0.21, 0.13);
    let far = u + 3.0 - tau * 2.0;
    // θ(u + m + nτ) = (−1)^{m+n} e^{−πin²τ − 2πinu} θ(u) with m = 3, n = −2.
    let n = -2.0;
    let expect = (-(std::f64::consts::PI * I * n * n * tau) - 2.0 * std::f64::consts::PI * I * n * u).exp()
        * -theta11(u, &m).unwrap();
    assert_close(theta11(far, &m).unwrap(), expect, 1e-10);
}

#[test]
fn theta_derivative_at_zero() {
    let m = mp(I);
    let h = 1e-5;
    let fd = (theta11(c(h, 0.0), &m).unwrap() - theta11(c(-h, 0.0), &m).unwrap()) / (2.0 * h);
    assert_close(theta11_derivative_at_zero(&m), fd, 1e-8);
    assert!(theta11_derivative_at_zero(&m).norm() > 0.1);
    assert!(theta11_derivative_at_zero(&mp(c(0.0, 2.0))).norm() > 0.1);
    let tau = c(0.5, 0.8);
    assert_close(theta11_derivative_at_zero(&mp(tau)), theta_direct(c(0.0, 0.0), tau, 1), 1e-13);
}

#[test]
fn theta_derivatives_match_finite_differences() {
    let tau = c(0.2, 1.1);
    let u = c(0.17, -0.08);
    let d = theta11_derivs(u, tau).unwrap();
    for k in 1..4 {
        let f = |z: C64| theta11_derivs(z, tau).unwrap()[k - 1];
        assert_close(d[k], derivative(f, u, 1e-3), 1e-9);
    }
}

#[test]
fn theta_rejects_bad_tau() {
    assert!(matches!(ModularParam::new(c(0.3, -1.0)), Err(Error::InvalidTau(_))));
    assert!(matches!(ModularParam::new(c(0.3, 0.0)), Err(Error::InvalidTau(_))));
    assert!(matches!(ModularParam::new(c(f64::NAN, 1.0)), Err(Error::NonFinite)));
}

#[test]
fn kronecker_symmetries() {
    let m = mp(I);
    let (u, v) = (c(0.2, 0.1), c(0.15, 0.05));
    assert_close(kronecker_f(u, v, &m).unwrap(), kronecker_f(v, u, &m).unwrap(), 1e-13);
    let (u, v) = (c(0.2, 0.0), c(0.0, 0.3));
    assert_close(kronecker_f(-u, -v, &m).unwrap(), -kronecker_f(u, v, &m).unwrap(), 1e-13);
}

#[test]
fn kronecker_matches_double_series() {
    let tau = c(0.0, 2.0);
    let (u, v) = (c(0.2, 0.3), c(0.1, 0.4));
    assert_close(kronecker_f(u, v, &mp(tau)).unwrap(), kronecker_char_series(0.0, 0.0, u, v, tau, 60), 1e-10);
    // Points in the strip 0 < Im < Im τ, kept off its edges for convergence.
    let tau = c(0.3, 1.2);
    let m = mp(tau);
    for u in grid5(c(0.1, 0.6), 0.1) {
        let v = c(0.25, 0.45) - u * 0.3;
        assert_close(kronecker_f(u, v, &m).unwrap(), kronecker_series(u, v, tau), 1e-10);
        assert_close(kronecker_f(u, v, &m).unwrap(), kronecker_direct(u, v, tau), 1e-11);
    }
}

#[test]
fn kronecker_pole_guard() {
    let m = mp(I);
    let e = kronecker_f(c(1e-9, 0.0), c(0.3, 0.1), &m);
    assert!(matches!(e, Err(Error::PoleProximity { .. })));
    let e = kronecker_f(c(0.3, 0.1), c(-0.3, -0.1 + 1e-8) + I, &m);
    assert!(matches!(e, Err(Error::PoleProximity { .. })));
}

#[test]
fn kronecker_char_zero_and_swap() {
    let m = mp(I);
    let (u, v) = (c(0.13, 0.07), c(-0.2, 0.11));
    assert_close(
        kronecker_f_char(&Characteristic::zero(), u, v, &m).unwrap(),
        kronecker_f(u, v, &m).unwrap(),
        1e-14,
    );
    let ch = Characteristic::new(1, 2, 1, 3).unwrap();
    let (u, v) = (c(0.1, 0.0), c(0.0, 0.2));
    assert_close(
        kronecker_f_char(&ch, u, v, &m).unwrap(),
        kronecker_f_char(&ch.swapped(), v, u, &m).unwrap(),
        1e-12,
    );
}

#[test]
fn kronecker_char_matches_series() {
    let tau = c(0.0, 2.0);
    let (u, v) = (c(0.05, 0.02), c(0.0, 0.07));
    let ch = Characteristic::new(1, 3, 2, 3).unwrap();
    let oracle = kronecker_char_series(1.0 / 3.0, 2.0 / 3.0, u, v, tau, 60);
    assert_close(kronecker_f_char(&ch, u, v, &mp(tau)).unwrap(), oracle, 1e-10);
}

#[test]
fn characteristic_lowest_terms() {
    let ch = Characteristic::new(2, 4, -3, -9).unwrap();
    assert_eq!(ch.p, (1, 2));
    assert_eq!(ch.q, (1, 3));
    assert!(Characteristic::new(1, 0, 0, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn char_swap_symmetry(pn in 0i64..6, pd in 1i64..=6, qn in 0i64..6, qd in 1i64..=6,
                          ur in -0.3..0.3f64, ui in -0.3..0.3f64, vr in -0.3..0.3f64, vi in -0.3..0.3f64) {
        let m = mp(c(0.2, 1.1));
        let ch = Characteristic::new(pn % pd, pd, qn % qd, qd).unwrap();
        let (u, v) = (c(ur, ui), c(vr, vi));
        if let (Ok(a), Ok(b)) = (kronecker_f_char(&ch, u, v, &m), kronecker_f_char(&ch.swapped(), v, u, &m)) {
            prop_assert!(close(a, b, 1e-10), "{a} vs {b}");
        }
    }

    #[test]
    fn legendre_relation_holds(re in -0.5..0.5f64, im in 0.6..3.0f64) {
        let m = mp(c(re, im));
        prop_assert!(legendre_residual(&m).unwrap().norm() < 1e-10);
    }
}

#[test]
fn zeta_basic_values() {
    let m = mp(I);
    assert_close(weierstrass_zeta(c(0.5, 0.0), &m).unwrap(), m.eta1 / 2.0, 1e-13);
    let x = c(0.2, 0.3);
    assert_close(weierstrass_zeta(-x, &m).unwrap(), -weierstrass_zeta(x, &m).unwrap(), 1e-13);
    // η₁(i) = π.
    assert_close(m.eta1, c(std::f64::consts::PI, 0.0), 1e-13);
}

#[test]
fn zeta_and_p_match_lattice_sums_on_grid() {
    let tau = c(0.0, 2.0);
    assert_close(weierstrass_zeta(c(0.3, 0.0), &mp(tau)).unwrap(), lattice_zeta(c(0.3, 0.0), tau), 1e-9);
    for tau in [I, c(0.5, 0.9)] {
        let m = mp(tau);
        for x in grid5(c(0.12, 0.14), 0.05) {
            assert_close(weierstrass_zeta(x, &m).unwrap(), lattice_zeta(x, tau), 1e-9);
            assert_close(weierstrass_p(x, &m).unwrap(), lattice_p(x, tau), 1e-9);
        }
    }
}

#[test]
fn eta1_and_eta2_match_lattice() {
    for tau in [I, c(0.5, 0.9), c(0.6, 1.1)] {
        let m = mp(tau);
        assert_close(m.eta1, lattice_eta1(tau), 1e-9);
        assert_close(m.eta2, 2.0 * lattice_zeta(tau * 0.5, tau), 1e-9);
    }
}

#[test]
fn p_is_even_and_minus_zeta_derivative() {
    let m = mp(I);
    let x = c(0.2, 0.1);
    assert_close(weierstrass_p(-x, &m).unwrap(), weierstrass_p(x, &m).unwrap(), 1e-13);
    let (x, h) = (c(0.3, 0.0), 1e-5);
    let fd = -(weierstrass_zeta(x + h, &m).unwrap() - weierstrass_zeta(x - h, &m).unwrap()) / (2.0 * h);
    assert_close(weierstrass_p(x, &m).unwrap(), fd, 1e-7);
}

#[test]
fn zeta_char_values() {
    let m = mp(c(0.3, 1.2));
    let x = c(0.11, -0.07);
    let z = weierstrass_zeta(x, &m).unwrap();
    assert_close(zeta_char(&Characteristic::zero(), x, &m).unwrap(), z, 1e-14);
    assert_close(zeta_char_pq(1.0, 0.0, x, &m).unwrap(), z, 1e-12);
    let oracle = lattice_zeta_char(0.5, 1.0 / 3.0, c(0.1, 0.0), I);
    assert_close(zeta_char_pq(0.5, 1.0 / 3.0, c(0.1, 0.0), &mp(I)).unwrap(), oracle, 1e-9);
}

#[test]
fn eisenstein_limits() {
    let m = mp(c(0.0, 50.0));
    assert_close(eisenstein_g(4, &m).unwrap(), c(1.0 / 240.0, 0.0), 1e-12);
    assert_close(eisenstein_g(6, &m).unwrap(), c(-1.0 / 504.0, 0.0), 1e-12);
    assert_close(eisenstein_g(2, &m).unwrap(), c(-1.0 / 24.0, 0.0), 1e-12);
    assert!(eisenstein_g(8, &m).is_err());
}

#[test]
fn eisenstein_matches_divisor_sums_and_lattice() {
    use std::f64::consts::PI;
    for tau in [I, c(0.5, 0.9), c(0.6, 1.1), c(-0.2, 0.8)] {
        let m = mp(tau);
        for k in [2u32, 4, 6] {
            assert_close(eisenstein_g(k, &m).unwrap(), eisenstein_divisor(k, tau), 1e-12);
        }
        // Σ′w^{−k} = 2(2πi)^k/(k−1)!·G_k.
        let scale4 = 2.0 * (2.0 * PI * I).powi(4) / 6.0;
        let scale6 = 2.0 * (2.0 * PI * I).powi(6) / 120.0;
        assert_close(eisenstein_g(4, &m).unwrap() * scale4, lattice_eisenstein(4, tau), 1e-9);
        assert_close(eisenstein_g(6, &m).unwrap() * scale6, lattice_eisenstein(6, tau), 1e-9);
        assert_close(m.g2(), 60.0 * lattice_eisenstein(4, tau), 1e-9);
        assert_close(m.g3(), 140.0 * lattice_eisenstein(6, tau), 1e-9);
        // η₁ = −8π²G₂.
        assert_close(m.eta1, -8.0 * PI * PI * eisenstein_g(2, &m).unwrap(), 1e-12);
    }
}

#[test]
fn bernoulli_table_matches_recurrence() {
    for k in 0..=6 {
        assert!((bernoulli(k).unwrap() - bernoulli_recurrence(k)).abs() < 1e-15, "B_{k}");
    }
    assert_eq!(bernoulli(7), None);
}

#[test]
fn j_invariant_values() {
    // g₃(i) = 0, so j(i) = 1 and Klein's 1728·j is 1728.
    let m = mp(I);
    assert!(m.g3().norm() < 1e-10 * m.g2().norm());
    assert_close(j_invariant(&m).unwrap(), c(1.0, 0.0), 1e-12);
    assert_close(klein_j(&m).unwrap(), c(1728.0, 0.0), 1e-9);
    let tau = c(0.3, 1.2);
    assert_close(j_invariant(&mp(tau)).unwrap(), j_invariant(&mp(tau + 1.0)).unwrap(), 1e-10);
    let rho = (2.0 * std::f64::consts::PI * I / 3.0).exp();
    assert!(j_invariant(&mp(rho)).unwrap().norm() < 1e-6);
}

#[test]
fn klein_j_at_cm_points() {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let s7 = 7f64.sqrt();
    let cases = [
        (c(0.0, 2.0), 287496.0),
        (c(0.0, s2), 8000.0),
        (c(0.0, s3), 54000.0),
        (c(0.5, s7 / 2.0), -3375.0),
    ];
    for (tau, expect) in cases {
        assert_close(klein_j(&mp(tau)).unwrap(), c(expect, 0.0), 1e-10);
    }
    for tau in [c(0.6, 1.1), c(-0.4, 0.95), I * 1.5] {
        assert_close(klein_j(&mp(tau)).unwrap(), klein_j_divisor(tau), 1e-10);
    }
}

#[test]
fn zeta_distribution_identity() {
    assert_eq!(identity_zeta_distribution(1, c(0.3, 0.2), &mp(I)).unwrap(), c(0.0, 0.0));
    assert!(identity_zeta_distribution(2, c(0.11, 0.07), &mp(I)).unwrap().norm() < 1e-9);
    assert!(identity_zeta_distribution(3, c(0.09, 0.0), &mp(c(0.5, 0.9))).unwrap().norm() < 1e-9);
}

#[test]
fn zeta_distribution_char_identity() {
    let x = c(0.17, -0.04);
    let m = mp(c(0.2, 1.3));
    assert_eq!(
        identity_zeta_distribution_char(3, 0, x, &m).unwrap(),
        identity_zeta_distribution(3, x, &m).unwrap()
    );
    assert!(identity_zeta_distribution_char(2, 1, c(0.0, 0.13), &mp(I)).unwrap().norm() < 1e-9);
    assert!(identity_zeta_distribution_char(3, 2, c(0.05, 0.05), &mp(c(0.0, 2.0))).unwrap().norm() < 1e-9);
}

#[test]
fn f_zeta_identity() {
    assert!(identity_f_zeta(2, 1, 0, c(0.1, 0.0), &mp(I)).unwrap().norm() < 1e-9);
    assert!(identity_f_zeta(3, 1, 2, c(0.07, 0.02), &mp(c(0.0, 2.0))).unwrap().norm() < 1e-9);
    assert!(matches!(identity_f_zeta(3, 3, 1, c(0.1, 0.0), &mp(I)), Err(Error::InvalidParameter(_))));
}

#[test]
fn p_distribution_identity() {
    assert_eq!(identity_p_distribution(1, c(0.3, 0.1), &mp(I)).unwrap(), c(0.0, 0.0));
    assert!(identity_p_distribution(2, c(0.12, 0.03), &mp(I)).unwrap().norm() < 1e-9);
    assert!(identity_p_distribution(5, c(0.06, 0.0), &mp(c(0.0, 1.5))).unwrap().norm() < 1e-8);
}

/// The correction sum runs over all nonzero residues: restricted to the
/// units mod 4 the identity fails.
#[test]
fn p_distribution_needs_all_nonzero_residues() {
    let m = mp(c(0.1, 1.2));
    let md = m.scaled(4).unwrap();
    let x = c(0.07, 0.03);
    let mut s = c(0.0, 0.0);
    for i in 0..4 {
        s += weierstrass_p(x + i as f64 / 4.0, &m).unwrap();
    }
    for i in [1, 3] {
        s -= weierstrass_p(c(i as f64 / 4.0, 0.0), &m).unwrap();
    }
    let units_only = weierstrass_p(x * 4.0, &md).unwrap() - s / 16.0;
    assert!(units_only.norm() > 1e-3);
    assert!(identity_p_distribution(4, x, &m).unwrap().norm() < 1e-9);
}

#[test]
fn eta2_isogeny_identity() {
    assert_eq!(identity_eta2_isogeny(1, &mp(I)).unwrap(), c(0.0, 0.0));
    assert!(identity_eta2_isogeny(2, &mp(I)).unwrap().norm() < 1e-9);
    assert!(identity_eta2_isogeny(3, &mp(c(0.5, 1.1))).unwrap().norm() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn identities_for_d_up_to_5(d in 2usize..=5, xr in -0.15..0.15f64, xi in -0.15..0.15f64,
                                tr in -0.5..0.5f64, ti in 0.8..1.6f64, k in 1i64..5, l in 0i64..5) {
        let m = mp(c(tr, ti));
        let x = c(xr, xi);
        if x.norm() < 0.02 {
            return Ok(());
        }
        let k = if k % d as i64 == 0 { 1 } else { k };
        prop_assert!(identity_zeta_distribution(d, x, &m).unwrap().norm() < 1e-8);
        prop_assert!(identity_zeta_distribution_char(d, l, x, &m).unwrap().norm() < 1e-8);
        prop_assert!(identity_f_zeta(d, k, l, x, &m).unwrap().norm() < 1e-8);
        prop_assert!(identity_p_distribution(d, x, &m).unwrap().norm() < 1e-8);
        prop_assert!(identity_eta2_isogeny(d, &m).unwrap().norm() < 1e-8);
    }
}

#[test]
fn kronecker_weierstrass_limit_decays_linearly() {
    let m = mp(I);
    let y = c(0.2, 0.1);
    let r5 = kronecker_weierstrass_limit(y, c(1e-5, 0.0), &m).unwrap().norm();
    let r6 = kronecker_weierstrass_limit(y, c(1e-6, 0.0), &m).unwrap().norm();
    assert!(r5 < 1e-4);
    assert!((r5 / r6 - 10.0).abs() < 0.5, "ratio {}", r5 / r6);

    // ζ(−y) + yη₁ = −(ζ(y) − yη₁).
    let base = weierstrass_zeta(y, &m).unwrap() - y * m.eta1;
    let neg = weierstrass_zeta(-y, &m).unwrap() + y * m.eta1;
    assert_close(neg, -base, 1e-13);

    let m = mp(c(0.0, 2.0));
    let y = c(0.0, 0.4);
    let r: Vec<f64> = [1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&x| kronecker_weierstrass_limit(y, c(x, 0.0), &m).unwrap().norm())
        .collect();
    for w in r.windows(2) {
        assert!((w[0] / w[1] - 10.0).abs() < 0.5, "ratios {r:?}");
    }
}

#[test]
fn reduce_lands_in_fundamental_cell() {
    let tau = c(0.4, 1.3);
    let u = c(5.3, -7.9);
    let r = reduce(u, tau);
    assert_close(r.z + r.m as f64 + tau * r.n as f64, u, 1e-13);
    assert!(r.z.im.abs() <= tau.im / 2.0 + 1e-12);
    assert!(lattice_distance(tau * 3.0 - 2.0, tau) < 1e-12);
}
