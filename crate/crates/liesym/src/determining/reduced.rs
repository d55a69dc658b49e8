//! The reduced ODE system for `h, k, l, τ, s` and its closed-form solutions.
//!
//! The reduction from the full determining table to this system is fixed
//! here rather than rederived; the round trip through `check_candidate`
//! validates it.

use std::collections::BTreeMap;

use super::DeterminingError;
use crate::generators::{BeRelation, GeneratorBasis, ParamCase};
use crate::jet::VectorField;
use num_traits::One;

use crate::symexpr::{parse, q, Atom, Expr, Func, Lin, Param, ParamSubst, Var, Q};

/// One-hot solution of the reduced system: functions of `t` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSolution {
    pub label: String,
    pub tau: Expr,
    pub s: Expr,
    pub h: Expr,
    pub l: Expr,
    pub k: Expr,
}

impl ReducedSolution {
    fn zero(label: &str) -> Self {
        ReducedSolution {
            label: label.to_string(),
            tau: Expr::zero(),
            s: Expr::zero(),
            h: Expr::zero(),
            l: Expr::zero(),
            k: Expr::zero(),
        }
    }

    fn get(&self, f: Func) -> Option<&Expr> {
        match f {
            Func::Tau => Some(&self.tau),
            Func::S => Some(&self.s),
            Func::H => Some(&self.h),
            Func::L => Some(&self.l),
            Func::K => Some(&self.k),
            _ => None,
        }
    }

    /// `ξ, γ, τ, φ = λu` from the reconstruction formulas.
    pub fn field(&self, constraints: &ParamSubst) -> VectorField {
        let p = |s: &str| parse(s).expect("built-in expression");
        let (x, y) = (p("x"), p("y"));
        let (sx, sy) = (Expr::sqrt_x(), Expr::sqrt_y());
        let (b, e) = (p("b"), p("e"));
        let half = Expr::constant(q(1, 2));
        let tau_t = self.tau.differentiate(Var::T);
        let tau_tt = tau_t.differentiate(Var::T);
        let xi = &(&tau_t * &x) + &(&sx * &(&(&sy * &self.h) + &self.l));
        let gamma = &(&tau_t * &y) + &(&sy * &(&(&(-&sx) * &self.h) + &self.k));
        let two = Expr::int(2);
        let lambda = &(&(&tau_tt + &(&b * &tau_t)) * &x)
            + &(&(&(&tau_tt + &(&e * &tau_t)) * &y)
                + &(&(&(&self.h * &(&b - &e)) * &(&sx * &sy))
                    + &(&(&two * &(&self.l.differentiate(Var::T) + &(&(&b * &half) * &self.l)))
                        * &sx
                        + &(&(&two
                            * &(&self.k.differentiate(Var::T) + &(&(&e * &half) * &self.k)))
                            * &sy
                            + self.s.clone()))));
        VectorField::linear(xi, gamma, self.tau.clone(), lambda)
            .map(|c| c.substitute_params(constraints))
    }
}

/// Named ODE constraints together with their one-hot solutions.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub case: ParamCase,
    pub equations: Vec<(String, Expr)>,
    pub solutions: Vec<ReducedSolution>,
}

impl ReducedSystem {
    /// For each solution and equation, whether the equation holds exactly.
    pub fn check(&self) -> Vec<(String, String, bool)> {
        let fs = self.case.family_constraints();
        let mut out = Vec::new();
        for sol in &self.solutions {
            for (name, eq) in &self.equations {
                let mut b = BTreeMap::new();
                for a in eq.atoms() {
                    if let Atom::Fn(f, d) = a {
                        let mut e = sol.get(f).cloned().unwrap_or_else(Expr::zero);
                        for _ in 0..d.t {
                            e = e.differentiate(Var::T);
                        }
                        b.insert(a, e);
                    }
                }
                let ok = eq
                    .substitute(&b)
                    .map(|r| r.substitute_params(&fs).is_zero())
                    .unwrap_or(false);
                out.push((sol.label.clone(), name.clone(), ok));
            }
        }
        out
    }

    pub fn all_satisfied(&self) -> bool {
        self.check().iter().all(|(_, _, ok)| *ok)
    }
}

fn p(s: &str) -> Expr {
    parse(s).expect("built-in expression")
}

fn vanishes(eq: &Expr, zero: &[Func], tau_const: bool) -> Expr {
    let mut b = BTreeMap::new();
    for a in eq.atoms() {
        if let Atom::Fn(f, d) = a {
            if zero.contains(&f) || (f == Func::Tau && tau_const && d.t > 0) {
                b.insert(a, Expr::zero());
            }
        }
    }
    eq.substitute(&b)
        .expect("zero substitution is representable")
}

/// The reduced system with the class constraints and forced vanishings applied.
pub fn reduced_system(case: &ParamCase) -> ReducedSystem {
    let cs = case.constraints();
    let mut zero = Vec::new();
    if !case.a_quarter {
        zero.extend([Func::H, Func::L]);
    }
    if !case.d_quarter {
        zero.extend([Func::H, Func::K]);
    }
    let generic = case.be == BeRelation::Generic;
    if generic {
        zero.push(Func::H);
    }
    zero.sort();
    zero.dedup();
    let base = [
        ("tau_b", "tau_ttt - b^2*tau_t"),
        ("tau_e", "tau_ttt - e^2*tau_t"),
        ("h_t", "h_t"),
        ("h_be", "(b^2 - e^2)*h"),
        ("l", "l_tt - b^2/4*l"),
        ("k", "k_tt - e^2/4*k"),
        ("s", "(a + d)*tau_tt + (a*b + d*e)*tau_t + s_t"),
    ];
    let mut equations: Vec<(String, Expr)> = Vec::new();
    for (name, src) in base {
        let eq = vanishes(&p(src).substitute_params(&cs), &zero, generic);
        if eq.is_zero() || equations.iter().any(|(_, e)| *e == eq) {
            continue;
        }
        equations.push((name.to_string(), eq));
    }
    if generic {
        equations.push(("tau_t = 0".into(), p("tau_t")));
    }
    for f in &zero {
        equations.push((format!("{} = 0", f.name()), Expr::atom(Atom::func(*f))));
    }
    ReducedSystem {
        case: case.clone(),
        equations,
        solutions: solutions(case),
    }
}

fn lin_expr(l: &Lin) -> Expr {
    Expr::poly(l.to_poly())
}

fn solutions(case: &ParamCase) -> Vec<ReducedSolution> {
    let fs = case.family_constraints();
    let rate = |par: Param| {
        fs.get(par)
            .cloned()
            .unwrap_or_else(|| Lin::param(par, Q::one()))
    };
    let (b, e) = (rate(Param::B), rate(Param::E));
    let a_plus_d = p("a + d").substitute_params(&fs);
    let ab_de = p("a*b + d*e").substitute_params(&fs);
    let one = Expr::one();
    let t = Expr::atom(Atom::T);

    let mut taus: Vec<ReducedSolution> = Vec::new();
    match case.be {
        BeRelation::Generic => {
            let mut s = ReducedSolution::zero("tau=1");
            s.tau = one.clone();
            taus.push(s);
        }
        BeRelation::EqualNonzero | BeRelation::OppositeNonzero => {
            for (name, beta) in [("tau=exp(bt)", b.clone()), ("tau=exp(-bt)", b.neg())] {
                let mut s = ReducedSolution::zero(name);
                let ex = Expr::exp_t(beta.clone());
                s.tau = ex.clone();
                let c = &(&a_plus_d * &lin_expr(&beta)) + &ab_de;
                s.s = -&(&c * &ex);
                taus.push(s);
            }
            let mut s = ReducedSolution::zero("tau=1");
            s.tau = one.clone();
            s.s = -&ab_de;
            taus.push(s);
        }
        BeRelation::BothZero => {
            let mut s = ReducedSolution::zero("tau=t^2");
            s.tau = &t * &t;
            s.s = -&(&(&Expr::int(2) * &a_plus_d) * &t);
            taus.push(s);
            let mut s = ReducedSolution::zero("tau=t");
            s.tau = t.clone();
            taus.push(s);
            let mut s = ReducedSolution::zero("tau=1");
            s.tau = one.clone();
            taus.push(s);
        }
    }

    let mut hs = Vec::new();
    if case.a_quarter && case.d_quarter && case.be != BeRelation::Generic {
        let mut s = ReducedSolution::zero("h=1");
        s.h = one.clone();
        hs.push(s);
    }

    let radial = |rate: &Lin, name: &str, set: fn(&mut ReducedSolution, Expr)| {
        let mut v = Vec::new();
        if !rate.is_zero() {
            let half = rate.scale(&q(1, 2));
            for (tag, l) in [("exp(+)", half.clone()), ("exp(-)", half.neg())] {
                let mut s = ReducedSolution::zero(&format!("{name}={tag}"));
                set(&mut s, Expr::exp_t(l));
                v.push(s);
            }
        } else {
            for (tag, f) in [("t", t.clone()), ("1", one.clone())] {
                let mut s = ReducedSolution::zero(&format!("{name}={tag}"));
                set(&mut s, f);
                v.push(s);
            }
        }
        v
    };
    let ls = if case.a_quarter {
        radial(&b, "l", |s, e| s.l = e)
    } else {
        Vec::new()
    };
    let ks = if case.d_quarter {
        radial(&e, "k", |s, e| s.k = e)
    } else {
        Vec::new()
    };
    let mut scale = ReducedSolution::zero("s=1");
    scale.s = one.clone();

    let mut out = Vec::new();
    if case.be == BeRelation::Generic {
        out.extend(taus);
        out.push(scale);
        out.extend(ls);
        out.extend(ks);
    } else {
        out.extend(taus);
        out.extend(hs);
        out.extend(ls);
        out.extend(ks);
        out.push(scale);
    }
    out
}

/// Basis built from the reduced system, parameters symbolic under the class
/// constraints (plus vanishing rates of the sample).
pub fn solve_reduced_symbolic(case: &ParamCase) -> GeneratorBasis {
    let fs = case.family_constraints();
    let sols = solutions(case);
    GeneratorBasis {
        case: Some(case.clone()),
        labels: sols.iter().map(|s| s.label.clone()).collect(),
        fields: sols.iter().map(|s| s.field(&fs)).collect(),
        notes: Vec::new(),
    }
}

/// Basis built from the reduced system and instantiated at the case sample.
pub fn solve_reduced(case: &ParamCase) -> Result<GeneratorBasis, DeterminingError> {
    case.with_sample(case.sample.clone())?;
    Ok(solve_reduced_symbolic(case).instantiate(&case.sample_subst()))
}
