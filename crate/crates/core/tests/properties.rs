use lwq_core::baselines::{bisection_oracle, default_seed, halley_w, newton_w};
use lwq_core::equations::{
    power_tower, solve_plnx_q_over_x, solve_plnx_qx, solve_y_pow_inv_y, solve_y_pow_y, EquationForm,
};
use lwq_core::{
    error_estimate, lambert_w, log_inverse_solve, quad_solve, seed_sweep, w0, Branch,
    IterationTrace, Method, SolveConfig, TraceStatus, E_POW_INV_E, INV_E,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn corrections(t: &IterationTrace) -> Vec<f64> {
    t.steps.iter().map(|s| s.correction).collect()
}

proptest! {
    #[test]
    fn quadratic_roots_satisfy_the_quadratic(l in -1e6f64..1e6, m in -1e6f64..1e6) {
        let q = quad_solve(l, m);
        if let Some((p, n)) = q.roots {
            let scale = 1f64.max(l * l).max(m.abs());
            for r in [p, n] {
                prop_assert!((r * r - l * r - m).abs() <= 1e-10 * scale);
            }
            prop_assert!(p >= n);
        } else {
            prop_assert!(l * l + 4.0 * m < 0.0);
        }
    }

    #[test]
    fn traces_chain_and_contract(lx in -13.8f64..27.6, method in prop_oneof![Just(Method::M1), Just(Method::M2)]) {
        let x = lx.exp();
        let r = w0(x, method, &SolveConfig::default().with_trace()).unwrap();
        prop_assert_eq!(r.status(), TraceStatus::Converged);
        let steps = &r.trace.steps;
        for w in steps.windows(2) {
            prop_assert_eq!(w[0].next_iterate, w[1].iterate);
        }
        let a = corrections(&r.trace);
        for k in 1..a.len().saturating_sub(1) {
            prop_assert!(a[k + 1].abs() < a[k].abs(), "x={} a={:?}", x, a);
        }
    }

    #[test]
    fn negative_traces_chain_and_contract(
        xn in 1e-6f64..0.367,
        branch in prop_oneof![Just(Branch::Principal), Just(Branch::Secondary)],
    ) {
        let r = lambert_w(-xn, branch, &SolveConfig::default().with_trace()).unwrap();
        for w in r.trace.steps.windows(2) {
            prop_assert_eq!(w[0].next_iterate, w[1].iterate);
        }
        let a = corrections(&r.trace);
        for k in 1..a.len().saturating_sub(1) {
            prop_assert!(a[k + 1].abs() < a[k].abs(), "x={} a={:?}", -xn, a);
        }
    }

    #[test]
    fn error_estimate_is_nonnegative(lx in -13.8f64..27.6) {
        let r = w0(lx.exp(), Method::M1, &SolveConfig::default().with_trace()).unwrap();
        let e = error_estimate(&r.trace).unwrap();
        let last = r.trace.last.as_ref().unwrap().correction;
        prop_assert!(e >= 0.0);
        prop_assert_eq!(e == 0.0, last == 0.0);
    }

    #[test]
    fn equation_residuals_close(m in 1.0001f64..1.4446, p in 0.5f64..4.0, q in 0.5f64..4.0, r in -3.0f64..3.0) {
        let s = solve_y_pow_inv_y(m).unwrap();
        let form = EquationForm::YPowInvY { m };
        for y in &s.roots {
            prop_assert!(form.residual_at(*y).abs() <= 1e-9 * m.max(1.0));
        }
        let s = solve_plnx_qx(p, q, r).unwrap();
        let form = EquationForm::PLnXPlusQX { p, q, r };
        for x in &s.roots {
            prop_assert!(form.residual_at(*x).abs() <= 1e-9 * r.abs().max(1.0));
        }
        prop_assert_eq!(s.roots.len(), 1);
        let s = solve_plnx_qx(p, -q, r);
        if let Ok(s) = s {
            let form = EquationForm::PLnXPlusQX { p, q: -q, r };
            for x in &s.roots {
                prop_assert!(form.residual_at(*x).abs() <= 1e-9 * r.abs().max(1.0));
            }
        }
    }

    #[test]
    fn root_count_follows_the_reduced_argument(m in 0.7f64..3.0) {
        let s = solve_y_pow_y(m).unwrap();
        let lm = m.ln();
        let expected = if lm < 0.0 && lm > -INV_E { 2 } else { 1 };
        prop_assert_eq!(s.roots.len(), expected);
        for w in s.roots.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn q_over_x_roots_close(p in 0.5f64..4.0, k in 0.1f64..3.0, shift in 0.01f64..3.0) {
        // choose r so that X = k·e^{−r/p} = e^{−1−shift}
        let q = k * p;
        let r = p * (k.ln() + 1.0 + shift);
        let s = solve_plnx_q_over_x(p, q, r).unwrap();
        prop_assert_eq!(s.roots.len(), 2);
        let form = EquationForm::PLnXPlusQOverX { p, q, r };
        for x in &s.roots {
            prop_assert!(form.residual_at(*x).abs() <= 1e-9 * r.abs().max(1.0));
        }
    }

    #[test]
    fn tower_is_the_smaller_root(x in 1.0001f64..E_POW_INV_E) {
        let t = power_tower(x).unwrap();
        let s = solve_y_pow_inv_y(x).unwrap();
        prop_assert_eq!(t, s.roots[0]);
    }

    #[test]
    fn baselines_agree_with_oracle(lx in -13.8f64..46.0) {
        let x = lx.exp();
        let oracle = bisection_oracle(x, Branch::Principal, 1e-12).unwrap();
        let cfg = SolveConfig::default();
        for r in [
            newton_w(x, default_seed(x, Branch::Principal), Branch::Principal, &cfg).unwrap(),
            halley_w(x, default_seed(x, Branch::Principal), Branch::Principal, &cfg).unwrap(),
        ] {
            if r.converged() {
                prop_assert!((r.value - oracle).abs() <= 1e-10, "{} vs {}", r.value, oracle);
            }
        }
    }

    #[test]
    fn oracle_brackets_the_root(xn in 1e-8f64..0.3678, branch in prop_oneof![Just(Branch::Principal), Just(Branch::Secondary)]) {
        let tol = 1e-12;
        let x = -xn;
        let w = bisection_oracle(x, branch, tol).unwrap();
        let g = |w: f64| w * w.exp() - x;
        prop_assert!(g(w - tol) * g(w + tol) <= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_inverse_recovers_the_target(y in -5.0f64..20.0, d in -1.9f64..1.9) {
        let t = log_inverse_solve(y, (y + d).exp(), &SolveConfig::default()).unwrap();
        prop_assert!(t.converged());
        prop_assert!((t.final_iterate().ln() - y).abs() <= 1e-10);
    }
}

#[test]
fn residual_grid_both_methods() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let cfg = SolveConfig::default();
    for _ in 0..1000 {
        let x = log_uniform(&mut rng, 1e-6, 1e12);
        let a = w0(x, Method::M1, &cfg).unwrap();
        let b = w0(x, Method::M2, &cfg).unwrap();
        assert!(a.residual <= 1e-10 * x, "M1 x={x}: {}", a.residual);
        assert!(b.residual <= 1e-10 * x, "M2 x={x}: {}", b.residual);
        assert!((a.value - b.value).abs() <= 1e-9 * a.value.abs().max(1.0));
    }
}

#[test]
fn branch_ordering_on_the_negative_axis() {
    let mut rng = StdRng::seed_from_u64(0xb4a7);
    let cfg = SolveConfig::default();
    for _ in 0..500 {
        let x = -rng.gen_range(f64::MIN_POSITIVE..INV_E);
        let p = lambert_w(x, Branch::Principal, &cfg).unwrap();
        let s = lambert_w(x, Branch::Secondary, &cfg).unwrap();
        assert!(s.value <= -1.0 && -1.0 <= p.value && p.value < 0.0, "x={x}");
        assert!(p.residual <= 1e-10 && s.residual <= 1e-10, "x={x}");
    }
}

#[test]
fn seed_sweep_is_insensitive() {
    let seeds = [1.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6, 1e12];
    let rs = seed_sweep(
        1e5,
        &seeds,
        Method::M1,
        Branch::Principal,
        &SolveConfig::default(),
    )
    .unwrap();
    let vals: Vec<f64> = rs
        .iter()
        .filter(|r| r.converged())
        .map(|r| r.value)
        .collect();
    assert_eq!(vals.len(), seeds.len());
    for a in &vals {
        for b in &vals {
            assert!((a - b).abs() <= 1e-8 * a.abs());
        }
    }
}

#[test]
fn branch_point_continuity() {
    let x = -INV_E + 1e-8;
    for method in [Method::M1, Method::M2] {
        for branch in [Branch::Principal, Branch::Secondary] {
            let r = lwq_core::lambert_w_using(x, branch, Some(method), &SolveConfig::default())
                .unwrap();
            assert!(
                (r.value + 1.0).abs() <= 1e-3,
                "{method:?} {branch:?}: {}",
                r.value
            );
            assert!((r.value + 1.0).abs() > 0.0);
        }
    }
}

#[test]
fn principal_is_increasing() {
    let cfg = SolveConfig::default();
    let xs: Vec<f64> = (0..400)
        .map(|i| 1e-6 * 10f64.powf(i as f64 * 0.045))
        .collect();
    let mut prev = f64::NEG_INFINITY;
    for x in xs {
        let v = lambert_w(x, Branch::Principal, &cfg).unwrap().value;
        assert!(v > prev, "x={x}");
        prev = v;
    }
    let mut prev = f64::NEG_INFINITY;
    for i in 1..400 {
        let x = -INV_E + i as f64 * INV_E / 400.0;
        let v = lambert_w(x, Branch::Principal, &cfg).unwrap().value;
        assert!(v > prev, "x={x}");
        prev = v;
    }
}
