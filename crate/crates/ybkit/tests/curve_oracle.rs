mod common;

use common::c;
use num_complex::Complex64 as C64;
use ybkit::curve_oracle::{
    closed_form, composite_case1, composite_case2, composite_tensor, rank4, residue_map_case1, residue_map_case2,
    run_oracle, to_tensor, BundleParams, Case, LinearMap4, TFrame, Trivialization,
};
use ybkit::solutions::{Family, SolutionHandle};
use ybkit::tensor::Tensor2;

fn image(m: &LinearMap4, input: [f64; 4]) -> [C64; 4] {
    let x = nalgebra::Vector4::from_iterator(input.iter().map(|&r| c(r, 0.0)));
    let y = m * x;
    [y[0], y[1], y[2], y[3]]
}

fn close4(a: [C64; 4], b: [f64; 4]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - c(y, 0.0)).norm() < 1e-14)
}

fn max_diff(a: &Tensor2, b: &Tensor2) -> f64 {
    a.sub(b).unwrap().max_abs()
}

fn params(l1: f64, l2: f64, y1: f64, y2: f64) -> BundleParams {
    BundleParams::from_values(c(l1, 0.0), c(l2, 0.0), c(y1, 0.0), c(y2, 0.0)).unwrap()
}

/// ev∘Res⁻¹ for Case 1 as displayed, applied to (a, b; c, d).
fn case1_display(p: &BundleParams, m: [C64; 4]) -> [C64; 4] {
    let [a, b, cc, d] = m;
    let (y1, y2) = (p.y1(), p.y2());
    let l = p.lambda1() / p.lambda2();
    let one = c(1.0, 0.0);
    let w1 = y1 / (y1 - y2);
    let w2 = y2 / (y2 - y1);
    [
        w1 * (a + d) / (l - one) + w2 * (l * a + d) / (l - one),
        w2 * b,
        -w1 * cc,
        w1 * (l * a + d) / (l - one) + w2 * l * (a + d) / (l - one),
    ]
}

/// The Case 2 composite display with f_λ(y) = λ^{1/2}y^{−1/2}.
fn case2_display(p: &BundleParams, m: [C64; 4]) -> [C64; 4] {
    let [a, b, cc, d] = m;
    let (y1, y2, l1) = (p.y1(), p.y2(), p.lambda1());
    let l = p.lambda1() / p.lambda2();
    let mu = y1 / y2;
    let one = c(1.0, 0.0);
    let f = |s: C64, t: C64| ((s - t) * 0.5).exp();
    let (fl1y1, fl1y2, fl2y1, fl2y2) = (f(p.s1, p.t1), f(p.s1, p.t2), f(p.s2, p.t1), f(p.s2, p.t2));
    let k = one / (one - mu);
    [
        k * ((one - mu * l) * a + (one - mu) * d) / (one - l),
        k * fl1y1 / fl1y2 * b,
        k * fl2y2 * (fl1y1 * (y1 - y2) * (one - mu * l) / l1 * b + cc / fl2y1),
        k * ((one - mu) * l * a + (one - mu * l) * d) / (one - l),
    ]
}

fn basis(k: usize) -> [C64; 4] {
    let mut e = [c(0.0, 0.0); 4];
    e[k] = c(1.0, 0.0);
    e
}

#[test]
fn case1_residue_images() {
    let p = params(1.0, 1.0, 2.0, 3.0);
    let r = residue_map_case1(&p);
    assert!(close4(image(&r, [1.0, 0.0, 0.0, 0.0]), [-1.0, 0.0, 0.0, 1.0]));
    assert!(close4(image(&r, [0.0, 1.0, 0.0, 0.0]), [0.0, 0.0, -1.0, 0.0]));
}

#[test]
fn case1_residue_matches_display() {
    // (a, b, c, d) ↦ (d − a, λ₁c; −b, λ₁λ₂⁻¹a − d)
    let p = params(2.0, 0.5, 1.3, 0.7);
    let r = residue_map_case1(&p);
    let (l1, l) = (2.0, 4.0);
    assert!(close4(image(&r, [1.0, 0.0, 0.0, 0.0]), [-1.0, 0.0, 0.0, l]));
    assert!(close4(image(&r, [0.0, 0.0, 1.0, 0.0]), [0.0, l1, 0.0, 0.0]));
    assert!(close4(image(&r, [0.0, 0.0, 0.0, 1.0]), [1.0, 0.0, 0.0, -1.0]));
}

#[test]
fn case1_residue_rank_drops_at_equal_lambdas() {
    assert_eq!(rank4(&residue_map_case1(&params(1.0, 1.0, 2.0, 3.0))), 3);
    assert_eq!(rank4(&residue_map_case1(&params(1.7, 1.7, 2.0, 3.0))), 3);
    assert_eq!(rank4(&residue_map_case1(&params(2.0, 1.0, 2.0, 3.0))), 4);
    assert!(composite_case1(&params(1.0, 1.0, 2.0, 3.0)).is_err());
}

#[test]
fn case1_composite_matches_display() {
    let p = params(2.0, 1.0, 3.0, 1.0);
    let l = composite_case1(&p).unwrap();
    for k in 0..4 {
        let got = l.column(k);
        let want = case1_display(&p, basis(k));
        for i in 0..4 {
            assert!((got[i] - want[i]).norm() < 1e-12, "column {k} row {i}: {} vs {}", got[i], want[i]);
        }
    }
    let q = BundleParams::from_logs(c(0.3, 0.4), c(-0.2, 0.1), c(0.5, -0.6), c(-0.1, 0.2));
    let l = composite_case1(&q).unwrap();
    for k in 0..4 {
        let want = case1_display(&q, basis(k));
        for i in 0..4 {
            assert!((l.column(k)[i] - want[i]).norm() < 1e-12);
        }
    }
}

#[test]
fn case1_composite_is_the_first_trig_solution() {
    let p = params(2.0, 1.0, 3.0, 1.0);
    let t = composite_tensor(Case::One, &p, Trivialization::HalfPower, TFrame::Structural).unwrap();
    let h = SolutionHandle::new(Family::TrigAybe1).unwrap();
    let want = h.eval_aybe(c(2.0f64.ln(), 0.0), c(3.0f64.ln(), 0.0)).unwrap();
    assert!(max_diff(&t, &want) < 1e-12);
}

#[test]
fn case1_depends_only_on_ratios() {
    let a = composite_case1(&params(2.0, 1.0, 3.0, 1.0)).unwrap();
    let b = composite_case1(&params(1.0, 0.5, 1.5, 0.5)).unwrap();
    assert!((a - b).norm() < 1e-12);
}

#[test]
fn case2_residue_images() {
    let p = params(1.0, 1.0, 1.0, 2.0);
    let r = residue_map_case2(&p, Trivialization::HalfPower);
    assert!(close4(image(&r, [1.0, 0.0, 0.0, 0.0]), [1.0, 0.0, 0.0, -1.0]));
    assert!(residue_map_case2(&params(2.0, 1.0, 1.0, 3.0), Trivialization::HalfPower).determinant().norm() > 1e-6);
}

#[test]
fn case2_residue_c_column() {
    // The (2,1) entry of Res(e₂₁) is f_{λ₂}(y)·y(1 + λ₁λ₂⁻¹).
    let p = BundleParams::from_logs(c(0.4, 0.1), c(-0.3, 0.2), c(0.25, -0.5), c(0.6, 0.0));
    let r = residue_map_case2(&p, Trivialization::HalfPower);
    let f = ((p.s2 - p.t1) * 0.5).exp();
    let want = f * p.y1() * (1.0 + p.lambda1() / p.lambda2());
    assert!((r[(2, 2)] - want).norm() < 1e-14);
    let top = -p.lambda1() / ((p.s1 - p.t1) * 0.5).exp();
    assert!((r[(1, 2)] - top).norm() < 1e-14);
}

#[test]
fn case2_composite_matches_display() {
    let q = BundleParams::from_logs(c(0.3, 0.4), c(-0.2, 0.1), c(0.5, -0.6), c(-0.1, 0.2));
    let l = composite_case2(&q, Trivialization::HalfPower, TFrame::Display).unwrap();
    for k in 0..4 {
        let want = case2_display(&q, basis(k));
        for i in 0..4 {
            assert!((l.column(k)[i] - want[i]).norm() < 1e-12, "column {k} row {i}: {} vs {}", l.column(k)[i], want[i]);
        }
    }
}

#[test]
fn case2_composite_is_the_second_trig_solution() {
    let (u, v) = (c(0.4, 0.0), c(0.7, 0.0));
    let p = BundleParams::from_logs(c(0.9, 0.1), c(0.5, 0.1), c(-0.2, 0.3), c(-0.9, 0.3));
    assert_eq!(p.uv(), (c(0.9, 0.1) - c(0.5, 0.1), c(-0.2, 0.3) - c(-0.9, 0.3)));
    let t = composite_tensor(Case::Two, &p, Trivialization::HalfPower, TFrame::Structural).unwrap();
    let h = SolutionHandle::new(Family::TrigAybe2).unwrap();
    assert!(max_diff(&t, &h.eval_aybe(u, v).unwrap()) < 1e-11);
    let lit = composite_tensor(Case::Two, &p, Trivialization::HalfPower, TFrame::Display).unwrap();
    assert!(max_diff(&lit, &ybkit::solutions::trig::aybe2_literal(u, v)) < 1e-11);
}

#[test]
fn case2_constant_trivialization_depends_on_more() {
    let p = BundleParams::from_logs(c(0.9, 0.0), c(0.5, 0.0), c(-0.2, 0.0), c(-0.9, 0.0));
    let q = BundleParams::from_logs(c(1.3, 0.0), c(0.9, 0.0), c(0.4, 0.0), c(-0.3, 0.0));
    assert_eq!(p.uv(), q.uv());
    let half = |x: &BundleParams| composite_case2(x, Trivialization::HalfPower, TFrame::Structural).unwrap();
    let flat = |x: &BundleParams| composite_case2(x, Trivialization::Constant, TFrame::Structural).unwrap();
    assert!((half(&p) - half(&q)).norm() < 1e-12);
    assert!((flat(&p) - flat(&q)).norm() > 1e-3);
}

#[test]
fn to_tensor_is_a_bijection_on_basis() {
    let mut seen = std::collections::HashSet::new();
    for r in 0..4 {
        for k in 0..4 {
            let mut l = LinearMap4::zeros();
            l[(r, k)] = c(1.0, 0.0);
            let t = to_tensor(&l);
            let pos = t.coeffs.iter().position(|z| *z != c(0.0, 0.0)).unwrap();
            assert_eq!(t.coeffs.iter().filter(|z| **z != c(0.0, 0.0)).count(), 1);
            assert!(seen.insert(pos));
        }
    }
}

#[test]
fn oracle_runs() {
    for case in [Case::One, Case::Two] {
        let rep = run_oracle(case, 20, 7, Trivialization::HalfPower, TFrame::Structural).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.max_deviation < 1e-10 && rep.max_dependence < 1e-12);
    }
    let disp = run_oracle(Case::Two, 20, 7, Trivialization::HalfPower, TFrame::Display).unwrap();
    assert!(disp.pass);
    let neg = run_oracle(Case::Two, 20, 7, Trivialization::Constant, TFrame::Structural).unwrap();
    assert!(neg.pass && !neg.factors_through_lambda_mu, "{neg:?}");
    assert!(neg.max_dependence > 1e-3);
}

#[test]
fn closed_forms_by_frame() {
    let (u, v) = (c(0.3, 0.1), c(0.5, -0.2));
    assert_eq!(closed_form(Case::One, TFrame::Display, u, v), closed_form(Case::One, TFrame::Structural, u, v));
    assert_ne!(closed_form(Case::Two, TFrame::Display, u, v), closed_form(Case::Two, TFrame::Structural, u, v));
}

#[test]
fn parameter_checks() {
    assert!(BundleParams::from_values(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)).is_err());
    assert!(composite_case1(&params(2.0, 1.0, 3.0, 3.0)).is_err());
    assert!("3".parse::<Case>().is_err());
    assert_eq!("2".parse::<Case>().unwrap(), Case::Two);
}
