//! Case classification, the catalog of bases and the heat fixture.

use liesym::determining::{build_determining_system, check_candidate, CheckConfig, PdeFamily};
use liesym::generators::{
    basis_for, basis_symbolic, catalog_entry, classify, heat_basis, parse_rational, GeneratorBasis,
    ParamCase,
};
use liesym::jet::VectorField;
use liesym::liealg::inclusion_check;
use liesym::symexpr::{parse, q, qi, Expr};

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn linear(xi: &str, gamma: &str, tau: &str, lambda: &str) -> VectorField {
    VectorField::linear(p(xi), p(gamma), p(tau), p(lambda))
}

#[test]
fn classify_examples() {
    assert_eq!(classify(&q(1, 4), &q(1, 4), &qi(0), &qi(0)).id(), "1.4");
    assert_eq!(classify(&q(3, 10), &q(1, 2), &qi(1), &qi(2)).id(), "2.1");
    assert_eq!(classify(&q(1, 4), &q(1, 2), &qi(1), &qi(1)).id(), "3.2");
    assert_eq!(classify(&q(1, 2), &q(1, 4), &qi(2), &qi(-2)).id(), "4.3");
}

#[test]
fn sixteen_distinct_classes_classify_to_themselves() {
    let all = ParamCase::all();
    assert_eq!(all.len(), 16);
    let mut ids: Vec<String> = all.iter().map(|c| c.id()).collect();
    ids.dedup();
    assert_eq!(ids.len(), 16);
    for c in all {
        let [a, b, d, e] = c.sample.clone();
        assert_eq!(classify(&a, &d, &b, &e), c);
    }
}

#[test]
fn rationals_parse_exactly() {
    assert_eq!(parse_rational("1/4").unwrap(), q(1, 4));
    assert_eq!(parse_rational("0.3").unwrap(), q(3, 10));
    assert_eq!(parse_rational("-2").unwrap(), qi(-2));
    assert!(parse_rational("x").is_err());
}

#[test]
fn dimensions_match_the_summary() {
    let want = [
        ("1.1", 6),
        ("1.2", 9),
        ("1.3", 9),
        ("1.4", 9),
        ("2.1", 2),
        ("2.2", 4),
        ("2.3", 4),
        ("2.4", 4),
        ("3.1", 4),
        ("3.2", 6),
        ("3.3", 6),
        ("3.4", 6),
        ("4.1", 4),
        ("4.2", 6),
        ("4.3", 6),
        ("4.4", 6),
    ];
    for (id, n) in want {
        let c = ParamCase::canonical(id).unwrap();
        assert_eq!(basis_for(&c).dimension(), n, "{id}");
        assert_eq!(c.expected_dimension(), n, "{id}");
    }
}

#[test]
fn catalog_examples() {
    let b = basis_symbolic(&ParamCase::canonical("2.2").unwrap());
    assert_eq!(b.fields[2], linear("0", "0", "1", "-b*(a+d)"));
    let b = basis_symbolic(&ParamCase::canonical("4.1").unwrap());
    assert_eq!(
        b.fields[2],
        linear("0", "sqrt(y)*exp(e*t/2)", "0", "2*e*exp(e*t/2)*sqrt(y)")
    );
    assert_eq!(b.fields[3], linear("0", "sqrt(y)*exp(-e*t/2)", "0", "0"));
}

#[test]
fn heat_fixture() {
    let h = heat_basis();
    assert_eq!(h.dimension(), 6);
    assert!(h.case.is_none());
    assert_eq!(
        h.fields[4],
        VectorField::new(p("2*t"), p("0"), p("0"), p("-x*u"))
    );
    assert_eq!(
        h.fields[3],
        VectorField::new(p("x"), p("0"), p("2*t"), p("-u/2"))
    );
}

fn with_case(case: &ParamCase, fields: Vec<VectorField>) -> GeneratorBasis {
    GeneratorBasis {
        case: Some(case.clone()),
        labels: (1..=fields.len()).map(|i| format!("w{i}")).collect(),
        fields,
        notes: Vec::new(),
    }
}

#[test]
fn mirror_symmetry_maps_bases_onto_bases() {
    for c in ParamCase::all() {
        let s = c.swap();
        let mirrored = with_case(
            &s,
            basis_for(&c)
                .fields
                .iter()
                .map(VectorField::swap_xy)
                .collect(),
        );
        let target = basis_for(&s);
        assert!(inclusion_check(&mirrored, &target).unwrap(), "{}", c.id());
        assert!(inclusion_check(&target, &mirrored).unwrap(), "{}", c.id());
    }
}

#[test]
fn every_basis_contains_time_shift_and_scaling() {
    for c in ParamCase::all() {
        let probe = with_case(
            &c,
            vec![linear("0", "0", "1", "0"), linear("0", "0", "0", "1")],
        );
        assert!(
            inclusion_check(&probe, &basis_for(&c)).unwrap(),
            "{}",
            c.id()
        );
    }
}

#[test]
fn catalog_json_layout() {
    let c = ParamCase::canonical("2.3").unwrap();
    let v = basis_for(&c).to_json_value();
    assert_eq!(v["case_id"], "2.3");
    assert_eq!(v["sample"]["a"], "3/10");
    assert_eq!(v["sample"]["e"], "-1");
    assert_eq!(v["fields"].as_array().unwrap().len(), 4);
    assert_eq!(v["fields"][3]["lambda"], "1");
    assert_eq!(v["fields"][3]["mu"], "0");
    assert_eq!(v["constraints"][2], "b = -e != 0");
    assert_eq!(v["notes"].as_array().unwrap().len(), 1);
    let h = heat_basis().to_json_value();
    assert_eq!(h["case_id"], "heat");
    assert!(h["sample"].is_null());
}

#[test]
fn corrections_are_noted() {
    for (major, minor) in [(1, 4), (2, 2), (2, 3), (3, 3), (4, 2), (4, 3), (4, 4)] {
        assert!(
            !catalog_entry(major, minor).notes.is_empty(),
            "{major}.{minor}"
        );
    }
    assert!(catalog_entry(1, 1).notes.is_empty());
}

#[test]
fn published_forms_of_corrected_fields_fail() {
    let sys = build_determining_system(&PdeFamily::ls()).unwrap();
    let cfg = CheckConfig::default();
    let typos = [
        ("1.4", linear("2*t*x", "2*t*y", "t^2", "2*(x+y) - t/2")),
        (
            "4.2",
            linear("sqrt(y)*exp(b*t/2)", "0", "0", "2*b*sqrt(y)*exp(b*t/2)"),
        ),
        (
            "4.4",
            linear("2*t*x", "2*t*y", "t^2", "2*(x+y) - 2*(1/4 + d)*t"),
        ),
        ("4.4", linear("sqrt(y)*t", "0", "0", "2*sqrt(y)")),
    ];
    // the 2.3 correction is not listed: d/dt + c u d/du is a symmetry for
    // any constant c, so only the bracket table can decide that one
    for (id, v) in typos {
        let c = ParamCase::canonical(id).unwrap();
        let v = v.map(|e| e.substitute_params(&c.constraints()));
        let r = check_candidate(&v, &sys, &c.family_constraints(), &c.sample, &cfg).unwrap();
        assert!(!r.symbolic_pass(), "{id}: published form passed");
    }
}
