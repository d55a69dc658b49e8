//! Total derivatives, prolongation coefficients and the prolonged action.

use proptest::prelude::*;

use liesym::jet::{
    apply_prolonged, characteristic, prolongation_coeff, total_derivative, JetError, VectorField,
};
use liesym::symexpr::{parse, q, Atom, Coord, Expr, MultiIndex};

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn fld(xi: &str, gamma: &str, tau: &str, phi: &str) -> VectorField {
    VectorField::new(p(xi), p(gamma), p(tau), p(phi))
}

const X: MultiIndex = MultiIndex::new(1, 0, 0);
const Y: MultiIndex = MultiIndex::new(0, 1, 0);
const T: MultiIndex = MultiIndex::new(0, 0, 1);
const XX: MultiIndex = MultiIndex::new(2, 0, 0);
const YY: MultiIndex = MultiIndex::new(0, 2, 0);

#[test]
fn total_derivative_examples() {
    assert_eq!(total_derivative(&p("u"), Coord::X), p("u_x"));
    assert_eq!(total_derivative(&p("x*u_y"), Coord::X), p("u_y + x*u_xy"));
    assert_eq!(total_derivative(&p("u^2"), Coord::T), p("2*u*u_t"));
}

#[test]
fn translation_prolongs_trivially() {
    let v = fld("1", "0", "0", "0");
    for j in [X, Y, T, XX, YY] {
        assert!(prolongation_coeff(&v, j).unwrap().is_zero());
    }
}

#[test]
fn first_order_coefficients_match_expanded_formulas() {
    let v = VectorField::generic();
    assert_eq!(
        prolongation_coeff(&v, X).unwrap(),
        p("phi_x + (phi_u - xi_x)*u_x - xi_u*u_x^2 - gamma_x*u_y - tau_x*u_t - gamma_u*u_x*u_y - tau_u*u_x*u_t")
    );
    assert_eq!(
        prolongation_coeff(&v, Y).unwrap(),
        p("phi_y + (phi_u - gamma_y)*u_y - gamma_u*u_y^2 - xi_y*u_x - xi_u*u_x*u_y - tau_y*u_t - tau_u*u_t*u_y")
    );
    assert_eq!(
        prolongation_coeff(&v, T).unwrap(),
        p("phi_t + (phi_u - tau_t)*u_t - xi_t*u_x - xi_u*u_t*u_x - gamma_t*u_y - gamma_u*u_t*u_y - tau_u*u_t^2")
    );
}

#[test]
fn second_order_x_coefficient_matches_expanded_formula() {
    let v = VectorField::generic();
    let expected = p(
        "phi_xx + (2*phi_xu - xi_xx)*u_x + (phi_u - 2*xi_x)*u_xx + (phi_uu - 2*xi_xu)*u_x^2 \
         - 3*xi_u*u_x*u_xx - 2*gamma_xu*u_x*u_y - 2*gamma_x*u_xy - 2*gamma_u*u_x*u_xy \
         - xi_uu*u_x^3 - gamma_xx*u_y - gamma_u*u_xx*u_y - gamma_uu*u_x^2*u_y \
         - 2*tau_x*u_xt - 2*tau_u*u_xt*u_x - tau_xx*u_t - 2*tau_xu*u_x*u_t \
         - tau_u*u_xx*u_t - tau_uu*u_x^2*u_t",
    );
    assert_eq!(prolongation_coeff(&v, XX).unwrap(), expected);
}

#[test]
fn second_order_y_coefficient_is_the_mirror_of_x() {
    // the printed y-formula has two slips (xi_x u_yy and tau_u u_t u_y);
    // the mirror image of the x-formula is the oracle
    let v = VectorField::generic();
    let expected = p(
        "phi_yy + (2*phi_yu - gamma_yy)*u_y + (phi_u - 2*gamma_y)*u_yy + (phi_uu - 2*gamma_yu)*u_y^2 \
         - 3*gamma_u*u_y*u_yy - 2*xi_yu*u_x*u_y - 2*xi_y*u_xy - 2*xi_u*u_y*u_xy \
         - gamma_uu*u_y^3 - xi_yy*u_x - xi_u*u_yy*u_x - xi_uu*u_y^2*u_x \
         - 2*tau_y*u_yt - 2*tau_u*u_yt*u_y - tau_yy*u_t - 2*tau_yu*u_y*u_t \
         - tau_u*u_yy*u_t - tau_uu*u_y^2*u_t",
    );
    assert_eq!(prolongation_coeff(&v, YY).unwrap(), expected);
}

#[test]
fn heat_galilean_coefficient_matches_direct_expansion() {
    // v5 = 2t d/dx - x u d/du; phi^x = D_x(Q) + xi u_xx with Q = -x u - 2t u_x
    let v = fld("2*t", "0", "0", "-x*u");
    let direct = &total_derivative(&p("-x*u - 2*t*u_x"), Coord::X) + &p("2*t*u_xx");
    assert_eq!(prolongation_coeff(&v, X).unwrap(), direct);
    assert_eq!(direct, p("-u - x*u_x"));
}

#[test]
fn order_outside_range_is_rejected() {
    let v = VectorField::generic();
    assert_eq!(
        prolongation_coeff(&v, MultiIndex::new(0, 0, 0)),
        Err(JetError::Order(0))
    );
    assert_eq!(
        prolongation_coeff(&v, MultiIndex::new(2, 1, 0)),
        Err(JetError::Order(3))
    );
}

#[test]
fn jets_in_fields_are_rejected() {
    let v = fld("u_x", "0", "0", "0");
    assert!(prolongation_coeff(&v, X).is_err());
    assert!(apply_prolonged(&v, &p("u_t")).is_err());
}

#[test]
fn prolonged_action_examples() {
    let dt = fld("0", "0", "1", "0");
    assert!(apply_prolonged(&dt, &p("u_t + u_x")).unwrap().is_zero());

    let delta = p("(a - b*x)*u_x + (d - e*y)*u_y + x/2*u_xx + y/2*u_yy + u_t");
    let scale = fld("0", "0", "0", "u");
    assert_eq!(apply_prolonged(&scale, &delta).unwrap(), delta);
}

#[test]
fn heat_projective_field_is_a_symmetry() {
    let v6 = fld("4*x*t", "0", "4*t^2", "-(x^2 + 2*t)*u");
    let r = apply_prolonged(&v6, &p("u_xx - u_t")).unwrap();
    let mut b = std::collections::BTreeMap::new();
    b.insert(Atom::Jet(T), p("u_xx"));
    assert!(r.substitute(&b).unwrap().is_zero());
}

#[test]
fn generic_action_matches_displayed_expansion() {
    let v = VectorField::generic();
    let delta = p("(a - b*x)*u_x + (d - e*y)*u_y + x/2*u_xx + y/2*u_yy + u_t");
    let got = apply_prolonged(&v, &delta).unwrap();
    let px = prolongation_coeff(&v, X).unwrap();
    let py = prolongation_coeff(&v, Y).unwrap();
    let pt = prolongation_coeff(&v, T).unwrap();
    let pxx = prolongation_coeff(&v, XX).unwrap();
    let pyy = prolongation_coeff(&v, YY).unwrap();
    let expected = p("-b*xi*u_x + xi/2*u_xx - e*gamma*u_y + gamma/2*u_yy")
        + &p("a - b*x") * &px
        + &p("d - e*y") * &py
        + &p("x/2") * &pxx
        + &p("y/2") * &pyy
        + pt;
    assert_eq!(got, expected);
}

// random closed fields in (x, y, t, u) with phi affine in u

fn coeff() -> impl Strategy<Value = Expr> {
    let atoms = prop_oneof![
        Just("1"),
        Just("x"),
        Just("y"),
        Just("t"),
        Just("sqrt(x)"),
        Just("sqrt(y)"),
        Just("x*t"),
        Just("exp(b*t/2)"),
        Just("sqrt(x)*sqrt(y)"),
        Just("t^2"),
    ];
    prop::collection::vec((-3i64..=3, atoms), 0..3).prop_map(|ts| {
        ts.into_iter()
            .map(|(c, a)| &Expr::constant(q(c, 1)) * &p(a))
            .sum()
    })
}

fn field() -> impl Strategy<Value = VectorField> {
    (coeff(), coeff(), coeff(), coeff(), coeff())
        .prop_map(|(xi, ga, ta, la, mu)| VectorField::new(xi, ga, ta, &(&la * &p("u")) + &mu))
}

fn jet_expr() -> impl Strategy<Value = Expr> {
    let atoms = prop_oneof![
        Just("u"),
        Just("u_x"),
        Just("u_y"),
        Just("u_t"),
        Just("x*u_x"),
        Just("y*u*u_y"),
        Just("sqrt(x)*u_t"),
        Just("x^2*y"),
    ];
    prop::collection::vec((-3i64..=3, atoms), 0..4).prop_map(|ts| {
        ts.into_iter()
            .map(|(c, a)| &Expr::constant(q(c, 1)) * &p(a))
            .sum()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn total_derivatives_commute(e in jet_expr()) {
        let xy = total_derivative(&total_derivative(&e, Coord::X), Coord::Y);
        let yx = total_derivative(&total_derivative(&e, Coord::Y), Coord::X);
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn prolongation_is_linear(v in field(), w in field()) {
        for j in [X, Y, T, XX, YY, MultiIndex::new(1, 1, 0)] {
            let sum = prolongation_coeff(&v.add(&w), j).unwrap();
            let sep = &prolongation_coeff(&v, j).unwrap() + &prolongation_coeff(&w, j).unwrap();
            prop_assert_eq!(sum, sep);
        }
    }

    #[test]
    fn mixed_second_order_is_order_independent(v in field()) {
        let qv = characteristic(&v);
        let xy = total_derivative(&total_derivative(&qv, Coord::X), Coord::Y);
        let yx = total_derivative(&total_derivative(&qv, Coord::Y), Coord::X);
        prop_assert_eq!(xy, yx);
    }
}
