//! Canonical-form expressions: parser, printer, calculus and evaluation.

use std::collections::BTreeMap;

use proptest::prelude::*;

use liesym::symexpr::{
    parse, q, qi, Atom, Expr, Lin, MultiIndex, NumEnv, Param, ParamPoly, ParamSubst, SymError, Var,
};

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

#[test]
fn sqrt_times_exp_is_one_term() {
    let e = p("sqrt(x)*exp(b*t/2)");
    assert_eq!(e.len(), 1);
    let (m, c) = e.as_single_term().unwrap();
    assert_eq!(*c, ParamPoly::one());
    assert_eq!(m.half_exp(Atom::X), 1);
    assert_eq!(*m.exp_arg(), Lin::param(Param::B, q(1, 2)));
}

#[test]
fn radical_squared_is_rewritten() {
    assert!(p("sqrt(x)^2 - x").is_zero());
    assert!(p("sqrt(y)*sqrt(y) - y").is_zero());
}

#[test]
fn drift_term_has_two_terms() {
    let e = p("(a-b*x)*u_x");
    assert_eq!(e.len(), 2);
    assert_eq!(e, &p("a*u_x") - &p("b*x*u_x"));
}

#[test]
fn non_representable_inputs_are_rejected() {
    assert!(matches!(
        parse("sqrt(t)"),
        Err(SymError::NonRepresentable(_))
    ));
    assert!(matches!(
        parse("u^(1/2)"),
        Err(SymError::NonRepresentable(_))
    ));
    assert!(matches!(parse("x + * y"), Err(SymError::Syntax { .. })));
    assert!(parse("1/(x+y)").is_err());
    assert!(parse("1/u").is_err());
    // a single radical monomial is invertible inside the term algebra
    assert_eq!(p("1/x"), p("x^(-1)"));
}

#[test]
fn derivative_examples() {
    assert_eq!(
        p("sqrt(x)*sqrt(y)").differentiate(Var::X),
        p("1/2*x^(-1/2)*sqrt(y)")
    );
    assert_eq!(
        p("exp(b*t/2)*sqrt(x)").differentiate(Var::T),
        p("b/2*exp(b*t/2)*sqrt(x)")
    );
    assert_eq!(p("(a-b*x)*u_x").differentiate(Var::X), p("-b*u_x"));
}

#[test]
fn opaque_atoms_differentiate_to_tagged_atoms() {
    assert_eq!(p("xi").differentiate(Var::X), p("xi_x"));
    assert_eq!(p("phi_x").differentiate(Var::U), p("phi_xu"));
}

#[test]
fn substitution_examples() {
    let mut b = BTreeMap::new();
    b.insert(Atom::Jet(MultiIndex::new(0, 0, 1)), p("-(a-b*x)*u_x"));
    let r = p("u_t + b*u_x").substitute(&b).unwrap();
    assert_eq!(r, p("-(a-b*x)*u_x + b*u_x"));

    let mut b = BTreeMap::new();
    b.insert(Atom::X, Expr::zero());
    assert_eq!(p("a-b*x").substitute(&b).unwrap(), p("a"));

    let s = ParamSubst::new()
        .with(Param::A, Lin::constant(q(1, 4)))
        .with(Param::D, Lin::constant(q(1, 4)));
    assert!(p("h*(1/4-a)").substitute_params(&s).is_zero());
}

#[test]
fn fractional_power_of_t_is_rejected_on_substitution() {
    let mut b = BTreeMap::new();
    b.insert(Atom::X, p("t"));
    assert!(p("sqrt(x)").substitute(&b).is_err());
}

#[test]
fn zero_tests() {
    assert!(p("exp(b*t/2)*exp(-b*t/2) - 1").is_zero());
    assert!(p("x*y - y*x").is_zero());
    assert!(!p("(b^2-e^2)*tau_t").is_zero());
}

#[test]
fn numeric_examples() {
    let env = NumEnv::new().with(Atom::X, 4.0);
    assert_eq!(p("sqrt(x)").eval_numeric(&env).unwrap(), 2.0);
    let env = NumEnv::new()
        .with(Atom::X, 0.25)
        .with_param(Param::A, 0.25)
        .with_param(Param::B, 1.0);
    assert_eq!(p("a-b*x").eval_numeric(&env).unwrap(), 0.0);
    assert!(matches!(
        p("sqrt(x)").eval_numeric(&NumEnv::new().with(Atom::X, -1.0)),
        Err(SymError::Domain(_))
    ));
    assert!(matches!(
        p("x*y").eval_numeric(&NumEnv::new().with(Atom::X, 1.0)),
        Err(SymError::MissingBinding(_))
    ));
}

#[test]
fn equation_is_zero_on_constants() {
    let delta = p("(a - b*x)*u_x + (d - e*y)*u_y + x/2*u_xx + y/2*u_yy + u_t");
    let mut env = NumEnv::new().with(Atom::X, 1.3).with(Atom::Y, 0.7);
    for (j, v) in [
        ((1, 0, 0), 0.0),
        ((0, 1, 0), 0.0),
        ((2, 0, 0), 0.0),
        ((0, 2, 0), 0.0),
        ((0, 0, 1), 0.0),
    ] {
        env.set(Atom::Jet(MultiIndex::new(j.0, j.1, j.2)), v);
    }
    for prm in [Param::A, Param::B, Param::D, Param::E] {
        env = env.with_param(prm, 0.4);
    }
    assert_eq!(delta.eval_numeric(&env).unwrap(), 0.0);
}

// random canonical expressions

fn atom_factor() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-2i32..=4).prop_map(|h| Expr::atom_pow_half(Atom::X, h).unwrap()),
        (-2i32..=4).prop_map(|h| Expr::atom_pow_half(Atom::Y, h).unwrap()),
        (0i32..=2).prop_map(|k| Expr::atom_pow_half(Atom::T, 2 * k).unwrap()),
        (0i32..=2).prop_map(|k| Expr::atom_pow_half(Atom::U, 2 * k).unwrap()),
        (-2i64..=2).prop_map(|k| Expr::exp_t(Lin::param(Param::B, q(k, 2)))),
        (-2i64..=2).prop_map(|k| Expr::exp_t(Lin::param(Param::E, q(k, 2)))),
        Just(Expr::atom(Atom::Jet(MultiIndex::new(1, 0, 0)))),
        Just(Expr::param(Param::A)),
        Just(Expr::param(Param::B)),
    ]
}

fn term() -> impl Strategy<Value = Expr> {
    (
        -4i64..=4,
        1i64..=3,
        prop::collection::vec(atom_factor(), 0..4),
    )
        .prop_map(|(n, d, fs)| fs.iter().fold(Expr::constant(q(n, d)), |acc, f| &acc * f))
}

fn expr() -> impl Strategy<Value = Expr> {
    prop::collection::vec(term(), 0..4).prop_map(|ts| ts.into_iter().sum())
}

fn env(x: f64, y: f64, t: f64, u: f64, ux: f64, a: f64, b: f64, e: f64) -> NumEnv {
    NumEnv::new()
        .with(Atom::X, x)
        .with(Atom::Y, y)
        .with(Atom::T, t)
        .with(Atom::U, u)
        .with(Atom::Jet(MultiIndex::new(1, 0, 0)), ux)
        .with_param(Param::A, a)
        .with_param(Param::B, b)
        .with_param(Param::E, e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(e1 in expr(), e2 in expr(), e3 in expr()) {
        prop_assert!((&(&e1 + &e2) - &(&e2 + &e1)).is_zero());
        prop_assert!((&(&e1 * &e2) - &(&e2 * &e1)).is_zero());
        prop_assert!((&(&(&e1 + &e2) + &e3) - &(&e1 + &(&e2 + &e3))).is_zero());
        prop_assert!((&(&(&e1 * &e2) * &e3) - &(&e1 * &(&e2 * &e3))).is_zero());
        prop_assert!((&(&e1 * &(&e2 + &e3)) - &(&(&e1 * &e2) + &(&e1 * &e3))).is_zero());
        prop_assert!((&e1 - &e1).is_zero());
    }

    #[test]
    fn leibniz_rule(e1 in expr(), e2 in expr(), v in prop_oneof![Just(Var::X), Just(Var::Y), Just(Var::T), Just(Var::U)]) {
        let lhs = (&e1 * &e2).differentiate(v);
        let rhs = &(&e1.differentiate(v) * &e2) + &(&e1 * &e2.differentiate(v));
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn mixed_partials_commute(e in expr()) {
        let xy = e.differentiate(Var::X).differentiate(Var::Y);
        let yx = e.differentiate(Var::Y).differentiate(Var::X);
        prop_assert_eq!(xy, yx);
        let xt = e.differentiate(Var::X).differentiate(Var::T);
        let tx = e.differentiate(Var::T).differentiate(Var::X);
        prop_assert_eq!(xt, tx);
    }

    #[test]
    fn print_parse_round_trip(e in expr()) {
        let text = e.to_string();
        let back = parse(&text);
        prop_assert!(back.is_ok(), "unparseable: {}", text);
        prop_assert_eq!(back.unwrap(), e);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        e1 in expr(), e2 in expr(),
        x in 0.2f64..3.0, y in 0.2f64..3.0, t in -1.0f64..1.0, u in -2.0f64..2.0,
        ux in -2.0f64..2.0, a in -1.0f64..1.0, b in -1.0f64..1.0, e in -1.0f64..1.0,
    ) {
        let n = env(x, y, t, u, ux, a, b, e);
        let v1 = e1.eval_numeric(&n).unwrap();
        let v2 = e2.eval_numeric(&n).unwrap();
        let s = (&e1 + &e2).eval_numeric(&n).unwrap();
        let m = (&e1 * &e2).eval_numeric(&n).unwrap();
        let scale = 1.0 + v1.abs() + v2.abs();
        prop_assert!((s - v1 - v2).abs() < 1e-12 * scale);
        prop_assert!((m - v1 * v2).abs() < 1e-12 * scale * scale);
    }

    #[test]
    fn parameter_substitution_commutes_with_evaluation(e1 in expr(), b in -3i64..=3) {
        let s = ParamSubst::values(&[qi(0), qi(b), qi(0), qi(1)]);
        let bound = e1.substitute_params(&s);
        let n = env(1.5, 0.5, 0.3, 0.7, -0.2, 0.0, b as f64, 1.0);
        let direct = e1.eval_numeric(&n).unwrap();
        let via = bound.eval_numeric(&n).unwrap();
        prop_assert!((direct - via).abs() < 1e-9 * (1.0 + direct.abs()));
    }
}
