//! Published generator bases, stored as `(ξ, γ, τ, λ)` strings with `φ = λ u`.
//!
//! Fields whose published form is evidently mistyped are stored corrected; each
//! correction is listed in the entry notes. The determining system decides.

use super::field;
use crate::jet::VectorField;

#[derive(Clone, Copy, Debug)]
pub struct CatalogField {
    pub xi: &'static str,
    pub gamma: &'static str,
    pub tau: &'static str,
    pub lambda: &'static str,
}

impl CatalogField {
    pub fn field(&self) -> VectorField {
        field(self.xi, self.gamma, self.tau, self.lambda)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub fields: Vec<CatalogField>,
    pub notes: Vec<&'static str>,
}

const fn f(
    xi: &'static str,
    gamma: &'static str,
    tau: &'static str,
    lambda: &'static str,
) -> CatalogField {
    CatalogField {
        xi,
        gamma,
        tau,
        lambda,
    }
}

const DT: CatalogField = f("0", "0", "1", "0");
const UDU: CatalogField = f("0", "0", "0", "1");
const DIL: CatalogField = f("x", "y", "t", "0");
const EXP_MINUS: CatalogField = f("-b*exp(-b*t)*x", "-b*exp(-b*t)*y", "exp(-b*t)", "0");

/// Entry for case `major.minor`; panics on an id outside the 4×4 grid.
pub fn catalog_entry(major: u8, minor: u8) -> CatalogEntry {
    let (fields, notes): (Vec<CatalogField>, Vec<&'static str>) = match (major, minor) {
        (1, 1) => (
            vec![
                DT,
                UDU,
                f("sqrt(x)*exp(b*t/2)", "0", "0", "2*b*exp(b*t/2)*sqrt(x)"),
                f("sqrt(x)*exp(-b*t/2)", "0", "0", "0"),
                f("0", "sqrt(y)*exp(e*t/2)", "0", "2*e*exp(e*t/2)*sqrt(y)"),
                f("0", "sqrt(y)*exp(-e*t/2)", "0", "0"),
            ],
            vec![],
        ),
        (1, 2) => (
            vec![
                f(
                    "b*exp(b*t)*x",
                    "b*exp(b*t)*y",
                    "exp(b*t)",
                    "2*b*exp(b*t)*(b*(x+y) - 1/2)",
                ),
                EXP_MINUS,
                f("0", "0", "1", "-b/2"),
                f("sqrt(x)*sqrt(y)", "-sqrt(x)*sqrt(y)", "0", "0"),
                f("sqrt(x)*exp(b*t/2)", "0", "0", "2*b*sqrt(x)*exp(b*t/2)"),
                f("sqrt(x)*exp(-b*t/2)", "0", "0", "0"),
                f("0", "sqrt(y)*exp(b*t/2)", "0", "2*b*sqrt(y)*exp(b*t/2)"),
                f("0", "sqrt(y)*exp(-b*t/2)", "0", "0"),
                UDU,
            ],
            vec![],
        ),
        (1, 3) => (
            vec![
                f(
                    "b*exp(b*t)*x",
                    "b*exp(b*t)*y",
                    "exp(b*t)",
                    "b*exp(b*t)*(4*b*x - 1)/2",
                ),
                f(
                    "-b*exp(-b*t)*x",
                    "-b*exp(-b*t)*y",
                    "exp(-b*t)",
                    "b*exp(-b*t)*(4*b*y + 1)/2",
                ),
                DT,
                f("sqrt(x)*sqrt(y)", "-sqrt(x)*sqrt(y)", "0", "2*b*sqrt(x)*sqrt(y)"),
                f("sqrt(x)*exp(b*t/2)", "0", "0", "2*b*sqrt(x)*exp(b*t/2)"),
                f("sqrt(x)*exp(-b*t/2)", "0", "0", "0"),
                f("0", "sqrt(y)*exp(-b*t/2)", "0", "-2*b*sqrt(y)*exp(-b*t/2)"),
                f("0", "sqrt(y)*exp(b*t/2)", "0", "0"),
                UDU,
            ],
            vec![],
        ),
        (1, 4) => (
            vec![
                f("2*t*x", "2*t*y", "t^2", "2*(x+y) - t"),
                DIL,
                DT,
                f("sqrt(x)*sqrt(y)", "-sqrt(x)*sqrt(y)", "0", "0"),
                f("sqrt(x)*t", "0", "0", "2*sqrt(x)"),
                f("sqrt(x)", "0", "0", "0"),
                f("0", "sqrt(y)*t", "0", "2*sqrt(y)"),
                f("0", "sqrt(y)", "0", "0"),
                UDU,
            ],
            vec!["v1: u-coefficient corrected from 2(x+y) - t/2 to 2(x+y) - t (the t/2 form fails the determining system)"],
        ),
        (2, 1) => (vec![DT, UDU], vec![]),
        (2, 2) => (
            vec![
                f(
                    "b*exp(b*t)*x",
                    "b*exp(b*t)*y",
                    "exp(b*t)",
                    "2*b*exp(b*t)*(b*(x+y) - (a+d))",
                ),
                EXP_MINUS,
                f("0", "0", "1", "-b*(a+d)"),
                UDU,
            ],
            vec!["v1: the exp(bt) d/dt term missing from the published display is restored"],
        ),
        (2, 3) => (
            vec![
                f(
                    "b*exp(b*t)*x",
                    "b*exp(b*t)*y",
                    "exp(b*t)",
                    "-2*b*(a - b*x)*exp(b*t)",
                ),
                f(
                    "-b*exp(-b*t)*x",
                    "-b*exp(-b*t)*y",
                    "exp(-b*t)",
                    "2*b*(b*y + d)*exp(-b*t)",
                ),
                f("0", "0", "1", "b*(d - a)"),
                UDU,
            ],
            vec!["v3: u-coefficient b(db - ab) stored as b(d - a); both forms are symmetries since d/dt and u d/du are"],
        ),
        (2, 4) => (
            vec![
                f("2*t*x", "2*t*y", "t^2", "2*(x+y) - 2*(a+d)*t"),
                DIL,
                DT,
                UDU,
            ],
            vec![],
        ),
        (3, 1) => (
            vec![
                DT,
                UDU,
                f("sqrt(x)*exp(b*t/2)", "0", "0", "2*b*exp(b*t/2)*sqrt(x)"),
                f("sqrt(x)*exp(-b*t/2)", "0", "0", "0"),
            ],
            vec![],
        ),
        (3, 2) => (
            vec![
                f(
                    "b*exp(b*t)*x",
                    "b*exp(b*t)*y",
                    "exp(b*t)",
                    "2*b*exp(b*t)*(b*(x+y) - (1/4 + d))",
                ),
                EXP_MINUS,
                f("0", "0", "1", "-b*(1/4 + d)"),
                f("sqrt(x)*exp(b*t/2)", "0", "0", "2*b*sqrt(x)*exp(b*t/2)"),
                f("sqrt(x)*exp(-b*t/2)", "0", "0", "0"),
                UDU,
            ],
            vec![],
        ),
        (3, 3) => (
            vec![
                f(
                    "b*exp(b*t)*x",
                    "b*exp(b*t)*y",
                    "exp(b*t)",
                    "b*(4*b*x - 1)/2*exp(b*t)",
                ),
                f(
                    "-b*exp(-b*t)*x",
                    "-b*exp(-b*t)*y",
                    "exp(-b*t)",
                    "2*b*(b*y + d)*exp(-b*t)",
                ),
                f("0", "0", "1", "-b*(1/4 - d)"),
                f("sqrt(x)*exp(b*t/2)", "0", "0", "2*b*sqrt(x)*exp(b*t/2)"),
                f("sqrt(x)*exp(-b*t/2)", "0", "0", "0"),
                UDU,
            ],
            vec!["v1: stray free constant c1 in the u-coefficient removed"],
        ),
        (3, 4) => (
            vec![
                f("2*t*x", "2*t*y", "t^2", "2*(x+y) - 2*(1/4 + d)*t"),
                DIL,
                DT,
                f("sqrt(x)*t", "0", "0", "2*sqrt(x)"),
                f("sqrt(x)", "0", "0", "0"),
                UDU,
            ],
            vec![],
        ),
        (4, 1) => (
            vec![
                DT,
                UDU,
                f("0", "sqrt(y)*exp(e*t/2)", "0", "2*e*exp(e*t/2)*sqrt(y)"),
                f("0", "sqrt(y)*exp(-e*t/2)", "0", "0"),
            ],
            vec![],
        ),
        (4, 2) => (
            vec![
                f(
                    "b*exp(b*t)*x",
                    "b*exp(b*t)*y",
                    "exp(b*t)",
                    "2*b*exp(b*t)*(b*(x+y) - (a + 1/4))",
                ),
                EXP_MINUS,
                f("0", "0", "1", "-b*(1/4 + a)"),
                f("0", "sqrt(y)*exp(b*t/2)", "0", "2*b*sqrt(y)*exp(b*t/2)"),
                f("0", "sqrt(y)*exp(-b*t/2)", "0", "0"),
                UDU,
            ],
            vec!["v4: published with d/dx; stored as the d/dy field sqrt(y)exp(bt/2) d/dy + 2b sqrt(y)exp(bt/2) u d/du"],
        ),
        (4, 3) => (
            vec![
                f(
                    "b*exp(b*t)*x",
                    "b*exp(b*t)*y",
                    "exp(b*t)",
                    "-2*b*(a - b*x)*exp(b*t)",
                ),
                f(
                    "-b*exp(-b*t)*x",
                    "-b*exp(-b*t)*y",
                    "exp(-b*t)",
                    "b*(4*b*y + 1)/2*exp(-b*t)",
                ),
                f("0", "0", "1", "b*(1/4 - a)"),
                f("0", "sqrt(y)*exp(-b*t/2)", "0", "-2*b*sqrt(y)*exp(-b*t/2)"),
                f("0", "sqrt(y)*exp(b*t/2)", "0", "0"),
                UDU,
            ],
            vec!["v4: published with d/dx; stored as the d/dy field sqrt(y)exp(-bt/2) d/dy - 2b sqrt(y)exp(-bt/2) u d/du"],
        ),
        (4, 4) => (
            vec![
                f("2*t*x", "2*t*y", "t^2", "2*(x+y) - 2*(a + 1/4)*t"),
                DIL,
                DT,
                f("0", "sqrt(y)*t", "0", "2*sqrt(y)"),
                f("0", "sqrt(y)", "0", "0"),
                UDU,
            ],
            vec![
                "v1: u-coefficient 2(x+y) - 2(1/4 + d)t corrected to 2(x+y) - 2(a + 1/4)t",
                "v4: published with d/dx; stored as sqrt(y) t d/dy + 2 sqrt(y) u d/du",
            ],
        ),
        _ => panic!("case {major}.{minor} is outside the 4x4 grid"),
    };
    CatalogEntry { fields, notes }
}
