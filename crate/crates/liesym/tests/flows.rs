//! Closed-form flows against RK4, transported solutions and the heat kernel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use liesym::flows::{
    closed_form_flow, flow_catalog, flow_deviation, integrate_flow, residual, sweep,
    transform_solution, zero_sample, FdConfig, FlowConfig, FlowError, FlowMap, NumericField, Pde,
    SolutionFn, SweepGrid,
};
use liesym::generators::ParamCase;
use liesym::symexpr::q_to_f64;

fn all_ids() -> Vec<String> {
    let mut ids: Vec<String> = ParamCase::all().iter().map(ParamCase::id).collect();
    ids.push("heat".into());
    ids
}

/// RK4 at a tenth of the default step: with the default the u-component of
/// fast-growing flows carries relative truncation error near 1e-6.
fn config(f: &FlowMap) -> FlowConfig {
    FlowConfig {
        step: 1e-4,
        positive_xy: f.case_id != "heat",
    }
}

fn max_diff(a: [f64; 4], b: [f64; 4]) -> f64 {
    (0..4).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max)
}

/// Random `(point, eps)` pairs where the closed form is defined out to `2 eps`,
/// which keeps samples away from blow-up.
fn samples(f: &FlowMap, n: usize, seed: u64) -> Vec<([f64; 4], f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let p = [
            rng.gen_range(0.5..3.0),
            rng.gen_range(0.5..3.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.5..2.0),
        ];
        let eps = rng.gen_range(-0.3..0.3);
        if f.apply(p, 2.0 * eps).is_ok() {
            out.push((p, eps));
        }
    }
    out
}

#[test]
fn rk4_agrees_with_every_closed_form() {
    let mut worst = 0.0f64;
    for id in all_ids() {
        for f in flow_catalog(&id).unwrap() {
            let v = NumericField::new(&f.generator, &f.sample);
            for (p, eps) in samples(&f, 50, 24301) {
                let exact = f.apply(p, eps).unwrap();
                let num = integrate_flow(&v, p, eps, &config(&f)).unwrap();
                let d = flow_deviation(exact, num);
                worst = worst.max(d);
                assert!(d < 1e-7, "{id} {}: {p:?} eps {eps}: {d:e}", f.label);
            }
        }
    }
    eprintln!("worst RK4 deviation {worst:e}");
}

#[test]
fn group_law_holds_for_every_flow() {
    for id in all_ids() {
        for f in flow_catalog(&id).unwrap() {
            let v = NumericField::new(&f.generator, &f.sample);
            let cfg = config(&f);
            for (p, eps) in samples(&f, 10, 5) {
                let (e1, e2) = (eps * 0.4, eps * 0.6);
                let two =
                    integrate_flow(&v, integrate_flow(&v, p, e1, &cfg).unwrap(), e2, &cfg).unwrap();
                let one = integrate_flow(&v, p, eps, &cfg).unwrap();
                assert!(flow_deviation(one, two) < 1e-7, "{id} {}", f.label);
                let closed = f.apply(f.apply(p, e1).unwrap(), e2).unwrap();
                assert!(
                    max_diff(closed, f.apply(p, eps).unwrap()) < 1e-12,
                    "{id} {}",
                    f.label
                );
            }
        }
    }
}

#[test]
fn validity_failures_name_the_generator() {
    // 1 - eps t <= 0 for the projective flow of 1.4
    let f = closed_form_flow("1.4", 1).unwrap();
    match f.apply([1.0, 1.0, 2.0, 1.0], 0.6) {
        Err(FlowError::Validity { generator, .. }) => assert_eq!(generator, "1.4 v1"),
        other => panic!("{other:?}"),
    }
    let u = transform_solution(&f, &SolutionFn::one(), 0.6);
    assert!(u.eval([1.0, 1.0, -2.0]).is_err());
}

#[test]
fn radial_flow_transforms_one_as_displayed() {
    // u^{eps,v3} = exp(b eps e^{bt/2} (4 sqrt(x) - eps e^{bt/2}) / 2) for 1.1
    let f = closed_form_flow("1.1", 3).unwrap();
    let b = q_to_f64(&f.sample[1]);
    let eps = 0.1;
    let u = transform_solution(&f, &SolutionFn::one(), eps);
    for [x, y, t] in [[1.0, 1.0, 0.0], [2.5, 0.7, -0.6], [4.0, 3.0, 0.9]] {
        let g = (b * t / 2.0).exp();
        let want = (b * eps * g * (4.0 * x.sqrt() - eps * g) / 2.0).exp();
        assert!((u.eval([x, y, t]).unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn zero_eps_transform_is_the_identity() {
    let u = SolutionFn::from_expr("x*y + t", &zero_sample()).unwrap();
    for id in ["1.2", "2.4", "4.3", "heat"] {
        for f in flow_catalog(&id).unwrap() {
            let w = transform_solution(&f, &u, 0.0);
            for p in [[1.0, 2.0, 0.5], [3.0, 0.6, -0.2]] {
                assert!((w.eval(p).unwrap() - u.eval(p).unwrap()).abs() < 1e-14);
            }
        }
    }
}

fn pde_for(f: &FlowMap) -> Pde {
    if f.case_id == "heat" {
        Pde::Heat
    } else {
        Pde::Ls(std::array::from_fn(|k| q_to_f64(&f.sample[k])))
    }
}

#[test]
fn transported_constant_solves_the_equation_everywhere() {
    let grid = SweepGrid::default();
    let fd = FdConfig::default();
    let mut worst = 0.0f64;
    for id in all_ids() {
        for f in flow_catalog(&id).unwrap() {
            let u = transform_solution(&f, &SolutionFn::one(), 0.05);
            let r = sweep(&pde_for(&f), &u, &grid, 1e-5, &fd, &id, &f.label, 0.05).unwrap();
            worst = worst.max(r.max_residual);
            assert!(r.passed(), "{id} {}: max {:e}", f.label, r.max_residual);
        }
    }
    eprintln!("worst transported residual {worst:e}");
}

#[test]
fn heat_kernel_from_the_constant_solution() {
    let f = closed_form_flow("heat", 6).unwrap();
    let eps = std::f64::consts::PI;
    let g = transform_solution(&f, &SolutionFn::one(), eps).shift_t(-1.0 / (4.0 * eps));
    let kernel =
        |x: f64, t: f64| (-x * x / (4.0 * t)).exp() / (4.0 * std::f64::consts::PI * t).sqrt();
    assert!((g.eval([1.0, 0.0, 1.0]).unwrap() - 0.21970).abs() < 1e-5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (x, t) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0));
        assert!(
            (g.eval([x, 0.0, t]).unwrap() - kernel(x, t)).abs() < 1e-8,
            "({x}, {t})"
        );
    }
}

#[test]
fn transform_is_infinitesimally_the_characteristic() {
    // d/deps at 0 of u^{eps,v} is phi(x, u) - xi u_x - gamma u_y - tau u_t
    let u = SolutionFn::from_expr("1 + x*y/4 + t", &zero_sample()).unwrap();
    let h = 1e-6;
    for id in all_ids() {
        for f in flow_catalog(&id).unwrap() {
            let v = NumericField::new(&f.generator, &f.sample);
            let w = transform_solution(&f, &u, h);
            for [x, y, t] in [[1.0, 2.0, 0.3], [2.5, 0.8, -0.5]] {
                let u0 = u.eval([x, y, t]).unwrap();
                let [xi, ga, ta, phi] = v.eval([x, y, t, u0]).unwrap();
                let (ux, uy, ut) = (y / 4.0, x / 4.0, 1.0);
                let want = phi - xi * ux - ga * uy - ta * ut;
                let got = (w.eval([x, y, t]).unwrap() - u0) / h;
                assert!(
                    (got - want).abs() < 1e-4,
                    "{id} {}: {got} vs {want}",
                    f.label
                );
            }
        }
    }
}

#[test]
fn residual_of_a_non_solution() {
    let zero = zero_sample();
    let u = SolutionFn::from_expr("x", &zero).unwrap();
    let r = residual(
        &Pde::Ls([0.25, 0.0, 0.5, 1.0]),
        &u,
        [2.0, 1.0, 0.0],
        &FdConfig::default(),
    );
    assert!((r.unwrap() - 0.25).abs() < 1e-9);
    let report = sweep(
        &Pde::Heat,
        &SolutionFn::from_expr("x^2", &zero).unwrap(),
        &SweepGrid::default(),
        1e-5,
        &FdConfig::default(),
        "heat",
        "none",
        0.0,
    )
    .unwrap();
    assert_eq!(report.violations.len(), 1000);
    assert!((report.max_residual - 2.0).abs() < 1e-6);
}
