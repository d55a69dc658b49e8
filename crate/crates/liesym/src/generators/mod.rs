//! Parameter-case classification and the catalog of symmetry bases.

mod catalog;
mod published;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::jet::VectorField;
use crate::symexpr::{fmt_q, parse, q, qi, Expr, Lin, Param, ParamSubst, SymError, Q};

pub use catalog::{catalog_entry, CatalogEntry, CatalogField};
pub use published::{published_table, PublishedTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CaseError {
    #[error("unknown case id '{0}'")]
    UnknownCase(String),
    #[error("sample {sample} is inconsistent with case {case}")]
    InconsistentSample { case: String, sample: String },
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Relation between `b` and `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BeRelation {
    Generic,
    EqualNonzero,
    OppositeNonzero,
    BothZero,
}

impl BeRelation {
    pub const ALL: [BeRelation; 4] = [
        BeRelation::Generic,
        BeRelation::EqualNonzero,
        BeRelation::OppositeNonzero,
        BeRelation::BothZero,
    ];

    pub fn minor(self) -> u8 {
        match self {
            BeRelation::Generic => 1,
            BeRelation::EqualNonzero => 2,
            BeRelation::OppositeNonzero => 3,
            BeRelation::BothZero => 4,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            BeRelation::Generic => "b != +-e",
            BeRelation::EqualNonzero => "b = e != 0",
            BeRelation::OppositeNonzero => "b = -e != 0",
            BeRelation::BothZero => "b = e = 0",
        }
    }
}

/// One of the sixteen constraint classes on `(a, b, d, e)` with a concrete sample.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamCase {
    pub a_quarter: bool,
    pub d_quarter: bool,
    pub be: BeRelation,
    /// Sample values indexed by [`Param::index`] (`a, b, d, e`).
    pub sample: [Q; 4],
}

fn quarter() -> Q {
    q(1, 4)
}

/// Class of `(a, d, b, e)`.
pub fn classify(a: &Q, d: &Q, b: &Q, e: &Q) -> ParamCase {
    let be = if b.is_zero() && e.is_zero() {
        BeRelation::BothZero
    } else if b == e {
        BeRelation::EqualNonzero
    } else if *b == -e.clone() {
        BeRelation::OppositeNonzero
    } else {
        BeRelation::Generic
    };
    ParamCase {
        a_quarter: *a == quarter(),
        d_quarter: *d == quarter(),
        be,
        sample: [a.clone(), b.clone(), d.clone(), e.clone()],
    }
}

impl ParamCase {
    /// Major case number: 1 both quarter, 2 neither, 3 only `a`, 4 only `d`.
    pub fn major(&self) -> u8 {
        match (self.a_quarter, self.d_quarter) {
            (true, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
            (false, true) => 4,
        }
    }

    pub fn minor(&self) -> u8 {
        self.be.minor()
    }

    pub fn id(&self) -> String {
        format!("{}.{}", self.major(), self.minor())
    }

    /// Canonical sample for a case id such as `"3.2"`.
    pub fn canonical(id: &str) -> Result<ParamCase, CaseError> {
        let bad = || CaseError::UnknownCase(id.to_string());
        let (ma, mi) = id.split_once('.').ok_or_else(bad)?;
        let major: u8 = ma.trim().parse().map_err(|_| bad())?;
        let minor: u8 = mi.trim().parse().map_err(|_| bad())?;
        let (a_quarter, d_quarter) = match major {
            1 => (true, true),
            2 => (false, false),
            3 => (true, false),
            4 => (false, true),
            _ => return Err(bad()),
        };
        let be = *BeRelation::ALL
            .get((minor as usize).wrapping_sub(1))
            .ok_or_else(bad)?;
        let a = if a_quarter { quarter() } else { q(3, 10) };
        let d = if d_quarter { quarter() } else { q(1, 2) };
        let (b, e) = match be {
            BeRelation::Generic => (qi(1), qi(2)),
            BeRelation::EqualNonzero => (qi(1), qi(1)),
            BeRelation::OppositeNonzero => (qi(1), qi(-1)),
            BeRelation::BothZero => (qi(0), qi(0)),
        };
        Ok(ParamCase {
            a_quarter,
            d_quarter,
            be,
            sample: [a, b, d, e],
        })
    }

    /// All sixteen canonical cases in id order.
    pub fn all() -> Vec<ParamCase> {
        let mut v = Vec::new();
        for major in 1..=4 {
            for minor in 1..=4 {
                v.push(Self::canonical(&format!("{major}.{minor}")).expect("valid id"));
            }
        }
        v
    }

    /// Same class with another sample; fails when the sample is in another class.
    pub fn with_sample(&self, sample: [Q; 4]) -> Result<ParamCase, CaseError> {
        let c = classify(&sample[0], &sample[2], &sample[1], &sample[3]);
        if c.a_quarter != self.a_quarter || c.d_quarter != self.d_quarter || c.be != self.be {
            return Err(CaseError::InconsistentSample {
                case: self.id(),
                sample: fmt_sample(&sample),
            });
        }
        Ok(c)
    }

    pub fn get(&self, p: Param) -> &Q {
        &self.sample[p.index()]
    }

    /// Equality constraints of the class as a parameter substitution.
    pub fn constraints(&self) -> ParamSubst {
        let mut s = ParamSubst::new();
        if self.a_quarter {
            s.set(Param::A, Lin::constant(quarter()));
        }
        if self.d_quarter {
            s.set(Param::D, Lin::constant(quarter()));
        }
        match self.be {
            BeRelation::Generic => {}
            BeRelation::EqualNonzero => s.set(Param::E, Lin::param(Param::B, Q::one())),
            BeRelation::OppositeNonzero => s.set(Param::E, Lin::param(Param::B, -Q::one())),
            BeRelation::BothZero => {
                s.set(Param::B, Lin::zero());
                s.set(Param::E, Lin::zero());
            }
        }
        s
    }

    /// Constraints plus `b = 0` or `e = 0` when the generic sample has a vanishing rate.
    pub fn family_constraints(&self) -> ParamSubst {
        let mut s = self.constraints();
        if self.be == BeRelation::Generic {
            for p in [Param::B, Param::E] {
                if self.get(p).is_zero() {
                    s.set(p, Lin::zero());
                }
            }
        }
        s
    }

    pub fn sample_subst(&self) -> ParamSubst {
        ParamSubst::values(&self.sample)
    }

    /// Human-readable constraint list, e.g. `["a = 1/4", "b = e != 0"]`.
    pub fn constraint_text(&self) -> Vec<String> {
        vec![
            if self.a_quarter {
                "a = 1/4"
            } else {
                "a != 1/4"
            }
            .to_string(),
            if self.d_quarter {
                "d = 1/4"
            } else {
                "d != 1/4"
            }
            .to_string(),
            self.be.describe().to_string(),
        ]
    }

    /// Mirror case under `x ↔ y`, `a ↔ d`, `b ↔ e`.
    pub fn swap(&self) -> ParamCase {
        let [a, b, d, e] = self.sample.clone();
        classify(&d, &a, &e, &b)
    }

    /// Dimension of the symmetry algebra (without the superposition family).
    pub fn expected_dimension(&self) -> usize {
        match (self.major(), self.be) {
            (1, BeRelation::Generic) => 6,
            (1, _) => 9,
            (2, BeRelation::Generic) => 2,
            (2, _) => 4,
            (_, BeRelation::Generic) => 4,
            _ => 6,
        }
    }
}

impl fmt::Display for ParamCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

pub fn fmt_sample(s: &[Q; 4]) -> String {
    Param::ALL
        .iter()
        .map(|p| format!("{}={}", p.name(), fmt_q(&s[p.index()])))
        .collect::<Vec<_>>()
        .join(", ")
}

/// A list of vector fields spanning a symmetry algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBasis {
    /// `None` for the heat fixture.
    pub case: Option<ParamCase>,
    pub fields: Vec<VectorField>,
    pub labels: Vec<String>,
    pub notes: Vec<String>,
}

impl GeneratorBasis {
    pub fn dimension(&self) -> usize {
        self.fields.len()
    }

    pub fn case_id(&self) -> String {
        self.case
            .as_ref()
            .map(|c| c.id())
            .unwrap_or_else(|| "heat".into())
    }

    /// `{case_id, constraints, sample, fields: [{xi, gamma, tau, lambda, mu}], notes}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let fields: Vec<serde_json::Value> = self
            .fields
            .iter()
            .zip(&self.labels)
            .map(|(v, l)| {
                serde_json::json!({
                    "label": l,
                    "xi": v.xi.to_string(),
                    "gamma": v.gamma.to_string(),
                    "tau": v.tau.to_string(),
                    "lambda": v.lambda().to_string(),
                    "mu": v.mu().to_string(),
                })
            })
            .collect();
        let (constraints, sample) = match &self.case {
            Some(c) => (
                serde_json::json!(c.constraint_text()),
                serde_json::json!(Param::ALL
                    .iter()
                    .map(|p| (p.name().to_string(), fmt_q(c.get(*p))))
                    .collect::<BTreeMap<_, _>>()),
            ),
            None => (serde_json::json!([]), serde_json::Value::Null),
        };
        serde_json::json!({
            "case_id": self.case_id(),
            "constraints": constraints,
            "sample": sample,
            "fields": fields,
            "notes": self.notes,
        })
    }

    /// Substitute parameters in every field.
    pub fn instantiate(&self, s: &ParamSubst) -> GeneratorBasis {
        GeneratorBasis {
            fields: self
                .fields
                .iter()
                .map(|v| v.map(|e| e.substitute_params(s)))
                .collect(),
            ..self.clone()
        }
    }
}

fn p(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("built-in expression {s:?}: {e}"))
}

/// Field from `(ξ, γ, τ, λ)` strings with `φ = λ u`.
pub(crate) fn field(xi: &str, gamma: &str, tau: &str, lambda: &str) -> VectorField {
    VectorField::linear(p(xi), p(gamma), p(tau), p(lambda))
}

/// Catalog basis with the class constraints applied but parameters symbolic.
pub fn basis_symbolic(case: &ParamCase) -> GeneratorBasis {
    let entry = catalog_entry(case.major(), case.minor());
    let s = case.constraints();
    GeneratorBasis {
        case: Some(case.clone()),
        fields: entry
            .fields
            .iter()
            .map(|f| f.field().map(|e| e.substitute_params(&s)))
            .collect(),
        labels: (1..=entry.fields.len()).map(|i| format!("v{i}")).collect(),
        notes: entry.notes.iter().map(|s| s.to_string()).collect(),
    }
}

/// Catalog basis instantiated at the case sample.
pub fn basis_for(case: &ParamCase) -> GeneratorBasis {
    basis_symbolic(case).instantiate(&case.sample_subst())
}

/// The six classical generators of `u_t = u_xx`.
pub fn heat_basis() -> GeneratorBasis {
    let fields = vec![
        field("1", "0", "0", "0"),
        field("0", "0", "1", "0"),
        field("0", "0", "0", "1"),
        field("x", "0", "2*t", "-1/2"),
        field("2*t", "0", "0", "-x"),
        field("4*x*t", "0", "4*t^2", "-(x^2 + 2*t)"),
    ];
    GeneratorBasis {
        case: None,
        labels: (1..=6).map(|i| format!("v{i}")).collect(),
        fields,
        notes: Vec::new(),
    }
}

/// Parse a rational literal such as `"1/4"`, `"-2"` or `"0.3"`.
pub fn parse_rational(s: &str) -> Result<Q, SymError> {
    parse(s)?
        .as_constant()
        .ok_or_else(|| SymError::NonRepresentable(format!("'{s}' is not a rational number")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_samples_classify_to_themselves() {
        for c in ParamCase::all() {
            let back = classify(&c.sample[0], &c.sample[2], &c.sample[1], &c.sample[3]);
            assert_eq!(back, c);
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&q(1, 4), &q(1, 4), &qi(0), &qi(0));
        assert_eq!(c.id(), "1.4");
        let c = classify(&q(3, 10), &q(1, 2), &qi(1), &qi(2));
        assert_eq!(c.id(), "2.1");
        let c = classify(&q(1, 4), &q(1, 2), &qi(1), &qi(1));
        assert_eq!(c.id(), "3.2");
    }

    #[test]
    fn swap_exchanges_major_three_and_four() {
        for c in ParamCase::all() {
            let s = c.swap();
            let expect = match c.major() {
                3 => 4,
                4 => 3,
                m => m,
            };
            assert_eq!(s.major(), expect);
            assert_eq!(s.minor(), c.minor());
        }
    }

    #[test]
    fn inconsistent_sample_rejected() {
        let c = ParamCase::canonical("3.2").unwrap();
        assert!(c.with_sample([q(1, 4), qi(1), q(1, 2), qi(2)]).is_err());
        assert!(c.with_sample([q(1, 4), qi(3), q(2, 3), qi(3)]).is_ok());
    }
}
