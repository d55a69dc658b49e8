//! Exact parameter arithmetic: polynomials and linear forms in `a, b, d, e`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Q;

/// One of the four drift constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    A,
    B,
    D,
    E,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A, Param::B, Param::D, Param::E];

    pub fn index(self) -> usize {
        match self {
            Param::A => 0,
            Param::B => 1,
            Param::D => 2,
            Param::E => 3,
        }
    }

    pub fn name(self) -> &'static str {
        ["a", "b", "d", "e"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Param> {
        match s {
            "a" => Some(Param::A),
            "b" => Some(Param::B),
            "d" => Some(Param::D),
            "e" => Some(Param::E),
            _ => None,
        }
    }
}

/// Build the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Build the integer rational `n`.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Lossy conversion used only by numeric evaluation.
pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => x.to_f64().unwrap_or(f64::NAN),
    }
}

/// Print a rational as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact rational square root when it exists.
pub fn q_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Exponent vector of a parameter monomial, ordered by total degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PMono(pub [u32; 4]);

impl PMono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for PMono {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for PMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `a, b, d, e` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<PMono, Q>,
}

impl PartialOrd for ParamPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(PMono::default(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn param(p: Param) -> Self {
        let mut e = [0; 4];
        e[p.index()] = 1;
        let mut out = Self::zero();
        out.terms.insert(PMono(e), Q::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&PMono::default()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: PMono, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &ParamPoly) -> ParamPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &ParamPoly) -> ParamPoly {
        let mut r = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut e = m1.0;
                for i in 0..4 {
                    e[i] += m2.0[i];
                }
                r.add_term(PMono(e), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &Q) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        let mut r = ParamPoly::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Substitute every parameter by a linear form.
    pub fn subst(&self, s: &ParamSubst) -> ParamPoly {
        let images: Vec<ParamPoly> = Param::ALL
            .iter()
            .map(|p| match s.get(*p) {
                Some(l) => l.to_poly(),
                None => ParamPoly::param(*p),
            })
            .collect();
        let mut r = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut t = ParamPoly::constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                if m.0[i] > 0 {
                    t = t.mul(&img.pow(m.0[i]));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Numeric value at concrete parameters; `None` when a needed one is missing.
    pub fn eval(&self, params: &[Option<f64>; 4]) -> Result<f64, Param> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut v = q_to_f64(c);
            for p in Param::ALL {
                let k = m.0[p.index()];
                if k > 0 {
                    let x = params[p.index()].ok_or(p)?;
                    v *= x.powi(k as i32);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact value at rational parameters.
    pub fn eval_exact(&self, params: &[Q; 4]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for i in 0..4 {
                for _ in 0..m.0[i] {
                    v *= &params[i];
                }
            }
            acc += v;
        }
        acc
    }

    /// A degree-one polynomial as a linear form.
    pub fn as_linear(&self) -> Option<Lin> {
        let mut l = Lin::zero();
        for (m, c) in &self.terms {
            match m.degree() {
                0 => l.konst = c.clone(),
                1 => {
                    let i = m.0.iter().position(|&k| k == 1).unwrap_or(0);
                    l.coef[i] = c.clone();
                }
                _ => return None,
            }
        }
        Some(l)
    }

    /// Leading coefficient sign, used when printing.
    pub fn is_negative_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.is_negative())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(fmt_q(&a));
            }
            for p in Param::ALL {
                match m.0[p.index()] {
                    0 => {}
                    1 => factors.push(p.name().to_string()),
                    k => factors.push(format!("{}^{}", p.name(), k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Rational-linear form `konst + Σ coef_p · p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin {
    pub konst: Q,
    pub coef: [Q; 4],
}

impl Default for Lin {
    fn default() -> Self {
        Self::zero()
    }
}

impl Lin {
    pub fn zero() -> Self {
        Lin {
            konst: Q::zero(),
            coef: [Q::zero(), Q::zero(), Q::zero(), Q::zero()],
        }
    }

    pub fn constant(c: Q) -> Self {
        Lin {
            konst: c,
            ..Lin::zero()
        }
    }

    pub fn param(p: Param, c: Q) -> Self {
        let mut l = Lin::zero();
        l.coef[p.index()] = c;
        l
    }

    pub fn is_zero(&self) -> bool {
        self.konst.is_zero() && self.coef.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Lin) -> Lin {
        let mut r = self.clone();
        r.konst += &o.konst;
        for i in 0..4 {
            r.coef[i] += &o.coef[i];
        }
        r
    }

    pub fn neg(&self) -> Lin {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Lin {
        let mut r = self.clone();
        r.konst *= c;
        for x in r.coef.iter_mut() {
            *x *= c;
        }
        r
    }

    pub fn to_poly(&self) -> ParamPoly {
        let mut p = ParamPoly::constant(self.konst.clone());
        for par in Param::ALL {
            p = p.add(&ParamPoly::param(par).scale(&self.coef[par.index()]));
        }
        p
    }

    pub fn subst(&self, s: &ParamSubst) -> Lin {
        let mut r = Lin::constant(self.konst.clone());
        for p in Param::ALL {
            let c = &self.coef[p.index()];
            if c.is_zero() {
                continue;
            }
            let img = s.get(p).cloned().unwrap_or_else(|| Lin::param(p, Q::one()));
            r = r.add(&img.scale(c));
        }
        r
    }

    pub fn eval(&self, params: &[Option<f64>; 4]) -> Result<f64, Param> {
        self.to_poly().eval(params)
    }
}

/// A substitution of parameters by linear forms, e.g. `e ↦ b` or `a ↦ 1/4`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSubst {
    map: [Option<Lin>; 4],
}

impl ParamSubst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, l: Lin) -> Self {
        self.map[p.index()] = Some(l);
        self
    }

    pub fn set(&mut self, p: Param, l: Lin) {
        self.map[p.index()] = Some(l);
    }

    pub fn get(&self, p: Param) -> Option<&Lin> {
        self.map[p.index()].as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    /// Full numeric instantiation of all four parameters.
    pub fn values(vals: &[Q; 4]) -> Self {
        let mut s = Self::new();
        for p in Param::ALL {
            s.set(p, Lin::constant(vals[p.index()].clone()));
        }
        s
    }

    /// Apply `self` and then `then`.
    pub fn compose(&self, then: &ParamSubst) -> ParamSubst {
        let mut r = ParamSubst::new();
        for p in Param::ALL {
            let l = match self.get(p) {
                Some(l) => l.subst(then),
                None => match then.get(p) {
                    Some(l) => l.clone(),
                    None => continue,
                },
            };
            r.set(p, l);
        }
        r
    }
}
