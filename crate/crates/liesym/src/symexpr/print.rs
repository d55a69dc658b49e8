use std::fmt;

use num_traits::{One, Signed};

use super::atom::Atom;
use super::expr::{Expr, Mono};
use super::param::{fmt_q, ParamPoly};

/// Render a doubled exponent as a literal (`2` → `1`, `3` → `3/2`).
pub(crate) fn fmt_half(h: i32) -> String {
    if h % 2 == 0 {
        format!("{}", h / 2)
    } else {
        format!("{h}/2")
    }
}

fn fmt_atom_pow(a: Atom, h: i32) -> String {
    match h {
        2 => a.to_string(),
        1 => format!("sqrt({a})"),
        _ if h > 0 && h % 2 == 0 => format!("{a}^{}", h / 2),
        _ => format!("{a}^({})", fmt_half(h)),
    }
}

fn fmt_mono(m: &Mono) -> Vec<String> {
    let mut parts = Vec::new();
    // print x, y, t, u before jets and opaque atoms for readability
    let order = |a: &Atom| match a {
        Atom::X => 0,
        Atom::Y => 1,
        Atom::T => 2,
        Atom::U => 3,
        Atom::Jet(_) => 4,
        Atom::Fn(..) => 5,
    };
    let mut pows: Vec<(Atom, i32)> = m.pows().collect();
    pows.sort_by_key(|(a, _)| (order(a), *a));
    for (a, h) in pows {
        parts.push(fmt_atom_pow(a, h));
    }
    let l = m.exp_arg();
    if !l.is_zero() {
        let arg = Expr::poly(l.to_poly()) * Expr::atom(Atom::T);
        parts.push(format!("exp({arg})"));
    }
    parts
}

fn needs_parens(c: &ParamPoly) -> bool {
    c.len() > 1
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let mono = fmt_mono(m);
            let (neg, coef) = if c.is_negative_monomial() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            let unit = coef.as_constant().map(|q| q.is_one()).unwrap_or(false);
            if !unit || mono.is_empty() {
                let s = coef.to_string();
                if needs_parens(&coef) {
                    factors.push(format!("({s})"));
                } else {
                    factors.push(s);
                }
            }
            factors.extend(mono);
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Helper for printing a rational coefficient inline.
pub fn rational(q: &super::Q) -> String {
    if q.is_negative() {
        format!("({})", fmt_q(q))
    } else {
        fmt_q(q)
    }
}
