//! Floating-point form of an [`Expr`] with parameters already bound.

use super::atom::Atom;
use super::expr::{half_pow, Expr};
use super::param::{q_to_f64, Param};
use super::{SymError, Q};

#[derive(Clone, Debug)]
struct Term {
    coef: f64,
    pows: Vec<(Atom, i32)>,
    rate: f64,
}

/// An expression ready for repeated numeric evaluation.
#[derive(Clone, Debug, Default)]
pub struct Compiled {
    terms: Vec<Term>,
}

impl Compiled {
    /// Bind parameters to exact values and convert coefficients to `f64`.
    pub fn new(e: &Expr, params: &[Q; 4]) -> Self {
        let terms = e
            .terms()
            .map(|(m, c)| Term {
                coef: q_to_f64(&c.eval_exact(params)),
                pows: m.pows().collect(),
                rate: q_to_f64(&m.exp_arg().to_poly().eval_exact(params)),
            })
            .filter(|t| t.coef != 0.0)
            .collect();
        Compiled { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(Σ terms, Σ |terms|)`; `get` supplies atom values.
    pub fn eval_parts(&self, get: impl Fn(Atom) -> Option<f64>) -> Result<(f64, f64), SymError> {
        let mut sum = 0.0;
        let mut abs = 0.0;
        let mut t_val = None;
        for term in &self.terms {
            let mut v = term.coef;
            for (a, e) in &term.pows {
                let x = get(*a).ok_or_else(|| SymError::MissingBinding(a.to_string()))?;
                v *= half_pow(*a, x, *e)?;
            }
            if term.rate != 0.0 {
                let t = match t_val {
                    Some(t) => t,
                    None => {
                        let t = get(Atom::T).ok_or_else(|| SymError::MissingBinding("t".into()))?;
                        t_val = Some(t);
                        t
                    }
                };
                v *= (term.rate * t).exp();
            }
            sum += v;
            abs += v.abs();
        }
        Ok((sum, abs))
    }

    pub fn eval(&self, get: impl Fn(Atom) -> Option<f64>) -> Result<f64, SymError> {
        self.eval_parts(get).map(|p| p.0)
    }

    /// Evaluate at `(x, y, t, u)`.
    pub fn eval_point(&self, p: [f64; 4]) -> Result<f64, SymError> {
        self.eval(|a| match a {
            Atom::X => Some(p[0]),
            Atom::Y => Some(p[1]),
            Atom::T => Some(p[2]),
            Atom::U => Some(p[3]),
            _ => None,
        })
    }
}

/// Parameter values as `f64` slots for [`super::NumEnv`].
pub fn param_slots(params: &[Q; 4]) -> [Option<f64>; 4] {
    let mut out = [None; 4];
    for p in Param::ALL {
        out[p.index()] = Some(q_to_f64(&params[p.index()]));
    }
    out
}
