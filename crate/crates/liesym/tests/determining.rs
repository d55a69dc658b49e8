//! Determining systems, candidate checks and the reduced system.

use liesym::determining::{
    build_determining_system, check_candidate, heat_perturbations, opaque_atom, reduced_system,
    solve_reduced, solve_reduced_symbolic, CheckConfig, DeterminingSystem, PdeFamily,
};
use liesym::generators::{basis_for, basis_symbolic, heat_basis, ParamCase};
use liesym::jet::VectorField;
use liesym::liealg::{commutator_table, inclusion_check};
use liesym::symexpr::{parse, q, qi, Expr, Func, ParamSubst, Q};

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn ls() -> DeterminingSystem {
    build_determining_system(&PdeFamily::ls()).unwrap()
}

fn coeff(sys: &DeterminingSystem, names: &[&str]) -> Expr {
    sys.entry(names)
        .unwrap_or_else(|| panic!("no entry {names:?}"))
        .coeff
        .clone()
}

fn generic_sample() -> [Q; 4] {
    [q(3, 10), qi(1), q(1, 2), qi(2)]
}

fn field(xi: &str, gamma: &str, tau: &str, phi: &str) -> VectorField {
    VectorField::new(p(xi), p(gamma), p(tau), p(phi))
}

#[test]
fn equation_is_u_t_minus_replacement() {
    let f = PdeFamily::ls();
    assert_eq!(
        f.replacement,
        p("-(a - b*x)*u_x - (d - e*y)*u_y - x/2*u_xx - y/2*u_yy")
    );
    assert_eq!(&f.delta + &f.replacement, p("u_t"));
}

#[test]
fn mixed_second_order_rows() {
    let sys = ls();
    assert_eq!(coeff(&sys, &["u_xt"]), p("-x*tau_x"));
    // each row is an equation "= 0", so the overall sign is immaterial;
    // the published rows print these two with the opposite sign
    assert_eq!(coeff(&sys, &["u_yt"]), p("-y*tau_y"));
    assert_eq!(coeff(&sys, &["u_xy"]), p("-(x*gamma_x + y*xi_y)"));
}

#[test]
fn constant_row_is_the_equation_applied_to_phi() {
    assert_eq!(
        coeff(&ls(), &[]),
        p("(a - b*x)*phi_x + (d - e*y)*phi_y + x/2*phi_xx + y/2*phi_yy + phi_t")
    );
}

#[test]
fn second_order_row_reduces_to_the_scaling_relation() {
    // with tau = tau(t) the u_xx row is xi/2 + (x/2) tau_t - x xi_x
    let sys = ls();
    let row = coeff(&sys, &["u_xx"]);
    let mut b = std::collections::BTreeMap::new();
    for (x, y) in [(1, 0), (0, 1), (2, 0), (0, 2)] {
        b.insert(opaque_atom(Func::Tau, x, y, 0, 0), Expr::zero());
    }
    assert_eq!(row.substitute(&b).unwrap(), p("xi/2 + x/2*tau_t - x*xi_x"));
}

#[test]
fn rows_are_distinct_nonzero_and_cover_the_published_monomials() {
    let sys = ls();
    assert!(sys.entries.len() >= 25, "{} rows", sys.entries.len());
    let labels: Vec<String> = sys.entries.iter().map(|e| e.monomial.label()).collect();
    let mut dedup = labels.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), labels.len());
    for e in &sys.entries {
        assert!(!e.coeff.is_zero() || e.monomial.0.is_empty());
    }
    for m in [
        "u_x", "u_y", "u_x*u_y", "u_x*u_x", "u_y*u_y", "u_xx", "u_yy", "u_x*u_xx", "u_y*u_yy",
        "u_xy", "u_xt", "u_yt", "1",
    ] {
        assert!(labels.iter().any(|l| l == m), "missing {m}");
    }
}

#[test]
fn json_rows_carry_monomial_lists() {
    let v = ls().to_json_value();
    let rows = v.as_array().unwrap();
    let row = rows
        .iter()
        .find(|r| r["monomial"] == serde_json::json!(["u_x", "u_xx"]))
        .unwrap();
    assert_eq!(row["coefficient"], "-x*xi_u + 1/2*x^2*tau_xu");
    assert_eq!(rows[0]["monomial"], serde_json::json!([]));
}

#[test]
fn scaling_in_x_fails_the_second_order_row() {
    let v = field("x", "0", "0", "0");
    let r = check_candidate(
        &v,
        &ls(),
        &ParamSubst::new(),
        &generic_sample(),
        &CheckConfig::default(),
    )
    .unwrap();
    assert!(!r.symbolic_pass());
    let e = r.entries.iter().find(|e| e.monomial == "u_xx").unwrap();
    assert!(!e.symbolic_pass);
    assert_eq!(e.remainder.as_deref(), Some("-1/2*x"));
    assert!(r.failures.iter().any(|(m, _)| m == "u_xx"));
}

#[test]
fn zero_field_passes() {
    let r = check_candidate(
        &VectorField::zero(),
        &ls(),
        &ParamSubst::new(),
        &generic_sample(),
        &CheckConfig::default(),
    )
    .unwrap();
    assert!(r.passed(1e-10));
    assert_eq!(r.numeric_max_residual, 0.0);
}

#[test]
fn jet_dependent_candidate_is_an_error() {
    let v = field("u_x", "0", "0", "0");
    assert!(check_candidate(
        &v,
        &ls(),
        &ParamSubst::new(),
        &generic_sample(),
        &CheckConfig::default()
    )
    .is_err());
}

#[test]
fn heat_generators_pass_and_perturbations_fail() {
    let sys = build_determining_system(&PdeFamily::heat()).unwrap();
    let zero = [qi(0), qi(0), qi(0), qi(0)];
    let cfg = CheckConfig::default();
    for (l, v) in heat_basis().labels.iter().zip(&heat_basis().fields) {
        let r = check_candidate(v, &sys, &ParamSubst::new(), &zero, &cfg).unwrap();
        assert!(r.passed(cfg.tol), "{l}: {:?}", r.failures);
    }
    let ps = heat_perturbations(20, 7);
    assert_eq!(ps.len(), 20);
    for (l, v) in &ps {
        let r = check_candidate(v, &sys, &ParamSubst::new(), &zero, &cfg).unwrap();
        assert!(!r.symbolic_pass(), "{l} passed");
        assert!(!r.failures.is_empty());
    }
}

#[test]
fn perturbations_are_reproducible() {
    let a: Vec<String> = heat_perturbations(5, 3)
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    let b: Vec<String> = heat_perturbations(5, 3)
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    assert_eq!(a, b);
}

fn equation_names(case: &str) -> Vec<String> {
    let r = reduced_system(&ParamCase::canonical(case).unwrap());
    r.equations.iter().map(|(_, e)| e.to_string()).collect()
}

#[test]
fn reduced_system_for_the_generic_class() {
    let eqs = equation_names("2.1");
    for want in ["s_t", "tau_t", "h", "k", "l"] {
        assert!(eqs.iter().any(|e| e == want), "{want} not in {eqs:?}");
    }
}

#[test]
fn reduced_system_for_the_fully_degenerate_class() {
    let eqs = equation_names("1.4");
    for want in ["h_t", "l_tt", "k_tt", "tau_ttt", "1/2*tau_tt + s_t"] {
        assert!(eqs.iter().any(|e| e == want), "{want} not in {eqs:?}");
    }
}

#[test]
fn reduced_system_for_case_3_2() {
    let eqs = equation_names("3.2");
    for want in ["h", "k", "-1/4*b^2*l + l_tt", "-b^2*tau_t + tau_ttt"] {
        assert!(eqs.iter().any(|e| e == want), "{want} not in {eqs:?}");
    }
}

#[test]
fn reduced_solutions_satisfy_their_equations() {
    for case in ParamCase::all() {
        let r = reduced_system(&case);
        for (sol, eq, ok) in r.check() {
            assert!(ok, "{}: {sol} violates {eq}", case.id());
        }
    }
}

#[test]
fn reduced_bases_have_the_expected_dimensions() {
    for case in ParamCase::all() {
        let b = solve_reduced(&case).unwrap();
        assert_eq!(b.dimension(), case.expected_dimension(), "{}", case.id());
    }
    let b = solve_reduced(&ParamCase::canonical("2.1").unwrap()).unwrap();
    assert_eq!(
        b.fields,
        vec![field("0", "0", "1", "0"), field("0", "0", "0", "u")]
    );
}

#[test]
fn inconsistent_sample_is_rejected() {
    let mut c = ParamCase::canonical("3.2").unwrap();
    c.sample[1] = qi(5);
    assert!(solve_reduced(&c).is_err());
}

#[test]
fn zero_rate_case_3_1_is_not_abelian() {
    // the published remark calls this algebra abelian, but l = t and l = 1
    // give sqrt(x) t d/dx + 2 sqrt(x) u d/du and sqrt(x) d/dx, whose bracket
    // is a nonzero multiple of u d/du
    let c = ParamCase::canonical("3.1")
        .unwrap()
        .with_sample([q(1, 4), qi(0), q(1, 2), qi(2)])
        .unwrap();
    let b = solve_reduced(&c).unwrap();
    assert_eq!(b.dimension(), 4);
    let t = commutator_table(&b).unwrap();
    assert!(!t.is_abelian());
    t.validate().unwrap();
}

#[test]
fn round_trip_every_case() {
    let sys = ls();
    let cfg = CheckConfig::default();
    for case in ParamCase::all() {
        let fs = case.family_constraints();
        let at = case.sample_subst();
        for (b, cs) in [
            (basis_symbolic(&case), &fs),
            (solve_reduced_symbolic(&case), &fs),
            (basis_for(&case), &at),
        ] {
            for (l, v) in b.labels.iter().zip(&b.fields) {
                let r = check_candidate(v, &sys, cs, &case.sample, &cfg).unwrap();
                assert!(r.passed(cfg.tol), "{} {l}: {:?}", case.id(), r.failures);
            }
        }
    }
}

#[test]
fn catalog_and_reduced_bases_span_the_same_algebra() {
    for case in ParamCase::all() {
        let cat = basis_for(&case);
        let red = solve_reduced(&case).unwrap();
        assert!(inclusion_check(&cat, &red).unwrap(), "{}", case.id());
        assert!(inclusion_check(&red, &cat).unwrap(), "{}", case.id());
    }
}
