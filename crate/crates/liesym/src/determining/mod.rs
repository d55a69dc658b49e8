//! Determining systems by monomial collection and candidate checking.

mod reduced;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::jet::{apply_prolonged, JetError, VectorField};
use crate::symexpr::{
    parse, Atom, Compiled, Deriv, Expr, Func, Mono, MultiIndex, ParamSubst, SymError, Var, Q,
};

pub use reduced::{
    reduced_system, solve_reduced, solve_reduced_symbolic, ReducedSolution, ReducedSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeterminingError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Case(#[from] crate::generators::CaseError),
}

/// A scalar PDE `Δ = 0` solved for one jet.
#[derive(Clone, Debug)]
pub struct PdeFamily {
    pub name: &'static str,
    pub delta: Expr,
    pub solve_for: MultiIndex,
    pub replacement: Expr,
    /// Generic field used to build the system (opaque coefficients).
    pub generic_field: VectorField,
}

impl PdeFamily {
    /// `(a − bx)u_x + (d − ey)u_y + (x/2)u_xx + (y/2)u_yy + u_t`.
    pub fn ls() -> Self {
        let delta = parse("(a - b*x)*u_x + (d - e*y)*u_y + x/2*u_xx + y/2*u_yy + u_t")
            .expect("built-in equation");
        let replacement = parse("-(a - b*x)*u_x - (d - e*y)*u_y - x/2*u_xx - y/2*u_yy")
            .expect("built-in equation");
        PdeFamily {
            name: "ls",
            delta,
            solve_for: MultiIndex::new(0, 0, 1),
            replacement,
            generic_field: VectorField::generic(),
        }
    }

    /// `u_xx − u_t`, solved as `u_t = u_xx`.
    pub fn heat() -> Self {
        PdeFamily {
            name: "heat",
            delta: parse("u_xx - u_t").expect("built-in equation"),
            solve_for: MultiIndex::new(0, 0, 1),
            replacement: parse("u_xx").expect("built-in equation"),
            generic_field: VectorField::generic_xt(),
        }
    }
}

/// A product of jet atoms, e.g. `u_x·u_xx`; empty for the constant entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetMonomial(pub Vec<(MultiIndex, u32)>);

impl JetMonomial {
    fn from_mono(m: &Mono) -> Self {
        let mut v: Vec<(MultiIndex, u32)> = m
            .pows()
            .filter_map(|(a, e)| match a {
                Atom::Jet(j) => Some((j, (e / 2) as u32)),
                _ => None,
            })
            .collect();
        v.sort_by_key(|(j, _)| jet_rank(*j));
        JetMonomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }

    /// Jet names with repetition, e.g. `["u_x", "u_x"]`.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (j, k) in &self.0 {
            for _ in 0..*k {
                out.push(Atom::Jet(*j).to_string());
            }
        }
        out
    }

    fn sort_key(&self) -> (u32, Vec<(u8, u8, u32)>) {
        (
            self.degree(),
            self.0
                .iter()
                .map(|(j, k)| (jet_rank(*j).0, jet_rank(*j).1, *k))
                .collect(),
        )
    }

    pub fn label(&self) -> String {
        if self.0.is_empty() {
            "1".into()
        } else {
            self.names().join("*")
        }
    }
}

/// Graded order on jets: order first, then x before y before t.
fn jet_rank(j: MultiIndex) -> (u8, u8) {
    (j.order(), 255 - (j.x * 16 + j.y * 4))
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub monomial: JetMonomial,
    pub coeff: Expr,
}

#[derive(Clone, Debug)]
pub struct DeterminingSystem {
    pub family: &'static str,
    pub entries: Vec<Entry>,
}

#[derive(Serialize)]
struct EntryJson {
    monomial: Vec<String>,
    coefficient: String,
}

impl DeterminingSystem {
    pub fn entry(&self, names: &[&str]) -> Option<&Entry> {
        self.entries.iter().find(|e| e.monomial.names() == names)
    }

    /// `[{"monomial": [...], "coefficient": "..."}]`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let v: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|e| EntryJson {
                monomial: e.monomial.names(),
                coefficient: e.coeff.to_string(),
            })
            .collect();
        serde_json::to_value(v).expect("serializable")
    }
}

/// `pr²v(Δ)` with the solved jet substituted, grouped by jet monomial.
pub fn build_determining_system(family: &PdeFamily) -> Result<DeterminingSystem, DeterminingError> {
    let pr = apply_prolonged(&family.generic_field, &family.delta)?;
    let mut b = BTreeMap::new();
    b.insert(Atom::Jet(family.solve_for), family.replacement.clone());
    let pr = pr.substitute(&b)?;
    let mut groups: Vec<(JetMonomial, Expr)> = Vec::new();
    for (m, c) in pr.terms() {
        let (jets, rest) = m.split_jets();
        let key = JetMonomial::from_mono(&jets);
        let term = Expr::term(c.clone(), rest);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, e)) => *e = &*e + &term,
            None => groups.push((key, term)),
        }
    }
    let mut entries: Vec<Entry> = groups
        .into_iter()
        .filter(|(k, e)| !e.is_zero() || k.0.is_empty())
        .map(|(monomial, coeff)| Entry { monomial, coeff })
        .collect();
    if !entries.iter().any(|e| e.monomial.0.is_empty()) {
        entries.push(Entry {
            monomial: JetMonomial(Vec::new()),
            coeff: Expr::zero(),
        });
    }
    entries.sort_by(|a, b| a.monomial.sort_key().cmp(&b.monomial.sort_key()));
    Ok(DeterminingSystem {
        family: family.name,
        entries,
    })
}

/// Sampling and tolerance settings for [`check_candidate`].
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub points: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            points: 100,
            seed: 0x5EED,
            tol: 1e-10,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryVerdict {
    pub monomial: String,
    pub symbolic_pass: bool,
    pub max_residual: f64,
    /// Nonzero remainder after substitution, when the symbolic test fails.
    pub remainder: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub entries: Vec<EntryVerdict>,
    pub numeric_max_residual: f64,
    pub failures: Vec<(String, f64)>,
}

impl Verdict {
    pub fn symbolic_pass(&self) -> bool {
        self.entries.iter().all(|e| e.symbolic_pass)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.symbolic_pass() && self.numeric_max_residual < tol
    }
}

/// Mixed partial of a field component given by derivative counts.
fn component_derivative(c: &Expr, d: Deriv) -> Expr {
    let mut e = c.clone();
    for (v, n) in [(Var::X, d.x), (Var::Y, d.y), (Var::T, d.t), (Var::U, d.u)] {
        for _ in 0..n {
            e = e.differentiate(v);
        }
    }
    e
}

/// Bindings of every opaque atom in `sys` to derivatives of `v`.
fn opaque_bindings(v: &VectorField, sys: &DeterminingSystem) -> BTreeMap<Atom, Expr> {
    let mut b = BTreeMap::new();
    for e in &sys.entries {
        for a in e.coeff.atoms() {
            if let Atom::Fn(f, d) = a {
                if let Some(c) = v.component(f) {
                    b.entry(a).or_insert_with(|| component_derivative(c, d));
                }
            }
        }
    }
    b
}

/// Test a closed-form field against every determining entry.
///
/// `constraints` are the case equalities applied before the exact zero test;
/// `sample` gives the parameter values for the numeric cross-check.
pub fn check_candidate(
    v: &VectorField,
    sys: &DeterminingSystem,
    constraints: &ParamSubst,
    sample: &[Q; 4],
    cfg: &CheckConfig,
) -> Result<Verdict, DeterminingError> {
    v.validate()?;
    let bindings = opaque_bindings(v, sys);
    let compiled_bindings: Vec<(Atom, Compiled)> = bindings
        .iter()
        .map(|(a, e)| (*a, Compiled::new(e, sample)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let points: Vec<[f64; 4]> = (0..cfg.points)
        .map(|_| {
            [
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-5.0..5.0),
            ]
        })
        .collect();
    // opaque atom values at each point
    let mut atom_values: Vec<BTreeMap<Atom, f64>> = Vec::with_capacity(points.len());
    for p in &points {
        let mut m = BTreeMap::new();
        m.insert(Atom::X, p[0]);
        m.insert(Atom::Y, p[1]);
        m.insert(Atom::T, p[2]);
        m.insert(Atom::U, p[3]);
        for (a, c) in &compiled_bindings {
            m.insert(*a, c.eval_point(*p)?);
        }
        atom_values.push(m);
    }

    let mut entries = Vec::new();
    let mut failures = Vec::new();
    let mut global = 0.0f64;
    for e in &sys.entries {
        let spec = e
            .coeff
            .substitute(&bindings)?
            .substitute_params(constraints);
        let symbolic_pass = spec.is_zero();
        let compiled = Compiled::new(&e.coeff, sample);
        let mut worst = 0.0f64;
        for vals in &atom_values {
            let (s, abs) = compiled.eval_parts(|a| vals.get(&a).copied())?;
            let r = s.abs() / abs.max(1.0);
            worst = worst.max(r);
        }
        global = global.max(worst);
        let label = e.monomial.label();
        if !symbolic_pass || worst >= cfg.tol {
            failures.push((label.clone(), worst));
        }
        entries.push(EntryVerdict {
            monomial: label,
            symbolic_pass,
            max_residual: worst,
            remainder: (!symbolic_pass).then(|| spec.to_string()),
        });
    }
    Ok(Verdict {
        entries,
        numeric_max_residual: global,
        failures,
    })
}

/// Opaque atom helper re-exported for tests: `f` with derivative counts.
pub fn opaque_atom(f: Func, x: u8, y: u8, t: u8, u: u8) -> Atom {
    Atom::Fn(f, Deriv { x, y, t, u })
}

/// Non-symmetry terms used to perturb heat generators, as `(component, term)`.
const HEAT_PERTURBATIONS: [(Func, &str); 9] = [
    (Func::Xi, "x^2"),
    (Func::Xi, "x*t^2"),
    (Func::Xi, "t"),
    (Func::Tau, "x"),
    (Func::Tau, "x*t"),
    (Func::Tau, "t"),
    (Func::Phi, "x*u"),
    (Func::Phi, "t*u"),
    (Func::Phi, "u^2"),
];

/// `n` seeded perturbations `v_i + c·m` of the heat generators, labelled
/// like `v3+2*x*u d/du`. Every term `m` fails the heat criterion on its own,
/// so every perturbed field does too.
pub fn heat_perturbations(n: usize, seed: u64) -> Vec<(String, VectorField)> {
    let basis = crate::generators::heat_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let i = rng.gen_range(0..basis.fields.len());
            let (f, m) = HEAT_PERTURBATIONS[rng.gen_range(0..HEAT_PERTURBATIONS.len())];
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            let term = &Expr::int(c) * &parse(m).expect("built-in term");
            let mut v = basis.fields[i].clone();
            let (slot, var) = match f {
                Func::Xi => (&mut v.xi, "x"),
                Func::Tau => (&mut v.tau, "t"),
                _ => (&mut v.phi, "u"),
            };
            *slot = &*slot + &term;
            let label = format!("{} + ({term}) d/d{var}", basis.labels[i]);
            (label, v)
        })
        .collect()
}
