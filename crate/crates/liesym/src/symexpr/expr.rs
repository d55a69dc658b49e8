use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::atom::{Atom, AtomDerivative, Var};
use super::param::{q_sqrt, qi, Lin, Param, ParamPoly, ParamSubst};
use super::{SymError, Q};

/// Monomial part of a term: atom exponents (stored doubled, so `2` means
/// power one and `1` means a square root) and the `exp(α·t)` argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    pows: BTreeMap<Atom, i32>,
    exp: Lin,
}

impl Mono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom, half_exp: i32) -> Self {
        let mut m = Self::one();
        if half_exp != 0 {
            m.pows.insert(a, half_exp);
        }
        m
    }

    pub fn exp(l: Lin) -> Self {
        Mono {
            pows: BTreeMap::new(),
            exp: l,
        }
    }

    /// Doubled exponent of `a` (0 when absent).
    pub fn half_exp(&self, a: Atom) -> i32 {
        self.pows.get(&a).copied().unwrap_or(0)
    }

    pub fn pows(&self) -> impl Iterator<Item = (Atom, i32)> + '_ {
        self.pows.iter().map(|(a, e)| (*a, *e))
    }

    pub fn exp_arg(&self) -> &Lin {
        &self.exp
    }

    pub fn is_one(&self) -> bool {
        self.pows.is_empty() && self.exp.is_zero()
    }

    pub fn jet_degree(&self) -> i32 {
        self.pows
            .iter()
            .filter(|(a, _)| a.is_jet())
            .map(|(_, e)| e / 2)
            .sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut pows = self.pows.clone();
        for (a, e) in &o.pows {
            let slot = pows.entry(*a).or_insert(0);
            *slot += e;
            if *slot == 0 {
                pows.remove(a);
            }
        }
        Mono {
            pows,
            exp: self.exp.add(&o.exp),
        }
    }

    fn with_exp_delta(&self, a: Atom, delta: i32) -> Mono {
        let mut m = self.clone();
        let slot = m.pows.entry(a).or_insert(0);
        *slot += delta;
        if *slot == 0 {
            m.pows.remove(&a);
        }
        m
    }

    /// Split into (jet part, remainder).
    pub fn split_jets(&self) -> (Mono, Mono) {
        let mut jets = Mono::one();
        let mut rest = Mono::one();
        rest.exp = self.exp.clone();
        for (a, e) in &self.pows {
            if a.is_jet() {
                jets.pows.insert(*a, *e);
            } else {
                rest.pows.insert(*a, *e);
            }
        }
        (jets, rest)
    }

    fn check(&self) -> Result<(), SymError> {
        for (a, e) in &self.pows {
            if !a.allows_fractional() && (e % 2 != 0 || *e < 0) {
                return Err(SymError::NonRepresentable(format!(
                    "{a} raised to {}",
                    super::print::fmt_half(*e)
                )));
            }
        }
        Ok(())
    }

    fn order_key(&self) -> (i32, Vec<(Atom, i32)>, Vec<(Atom, i32)>) {
        let mut jets = Vec::new();
        let mut rest = Vec::new();
        for (a, e) in &self.pows {
            if a.is_jet() {
                jets.push((*a, *e));
            } else {
                rest.push((*a, *e));
            }
        }
        (-self.jet_degree(), jets, rest)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key()
            .cmp(&other.order_key())
            .then_with(|| self.exp.cmp(&other.exp))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical expression: a finite sum of `coeff · monomial` with distinct monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Expr {
    terms: BTreeMap<Mono, ParamPoly>,
}

/// Numeric bindings for `eval_numeric`.
#[derive(Clone, Debug, Default)]
pub struct NumEnv {
    pub atoms: HashMap<Atom, f64>,
    pub params: [Option<f64>; 4],
}

impl NumEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, a: Atom, v: f64) -> Self {
        self.atoms.insert(a, v);
        self
    }

    pub fn with_param(mut self, p: Param, v: f64) -> Self {
        self.params[p.index()] = Some(v);
        self
    }

    pub fn set(&mut self, a: Atom, v: f64) {
        self.atoms.insert(a, v);
    }
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(ParamPoly::constant(c), Mono::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(qi(n))
    }

    pub fn param(p: Param) -> Self {
        Self::term(ParamPoly::param(p), Mono::one())
    }

    pub fn poly(p: ParamPoly) -> Self {
        Self::term(p, Mono::one())
    }

    pub fn atom(a: Atom) -> Self {
        Self::term(ParamPoly::one(), Mono::atom(a, 2))
    }

    /// `a^(half/2)`; fails for fractional or negative powers of non-radical atoms.
    pub fn atom_pow_half(a: Atom, half: i32) -> Result<Self, SymError> {
        let m = Mono::atom(a, half);
        m.check()?;
        Ok(Self::term(ParamPoly::one(), m))
    }

    pub fn sqrt_x() -> Self {
        Self::term(ParamPoly::one(), Mono::atom(Atom::X, 1))
    }

    pub fn sqrt_y() -> Self {
        Self::term(ParamPoly::one(), Mono::atom(Atom::Y, 1))
    }

    /// `exp(l · t)`.
    pub fn exp_t(l: Lin) -> Self {
        Self::term(ParamPoly::one(), Mono::exp(l))
    }

    pub fn term(c: ParamPoly, m: Mono) -> Self {
        let mut e = Self::zero();
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, ParamPoly)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in it {
            e.add_term(m, c);
        }
        e
    }

    fn add_term(&mut self, m: Mono, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// The constant value if the expression is a bare rational.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                if m.is_one() {
                    c.as_constant()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_single_term(&self) -> Option<(&Mono, &ParamPoly)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Q) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self
                .terms
                .iter()
                .map(|(m, p)| (m.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn scale_poly(&self, c: &ParamPoly) -> Expr {
        let mut r = Expr::zero();
        for (m, p) in &self.terms {
            r.add_term(m.clone(), p.mul(c));
        }
        r
    }

    pub fn mul_mono(&self, mono: &Mono) -> Expr {
        let mut r = Expr::zero();
        for (m, p) in &self.terms {
            r.add_term(m.mul(mono), p.clone());
        }
        r
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> Expr {
        let mut r = Expr::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        r
    }

    /// Power with doubled exponent `half`; negative and fractional powers need a single
    /// invertible term.
    pub fn pow_half(&self, half: i32) -> Result<Expr, SymError> {
        if half >= 0 && half % 2 == 0 {
            return Ok(self.pow((half / 2) as u32));
        }
        let (m, c) = self.as_single_term().ok_or_else(|| {
            SymError::NonRepresentable("fractional or negative power of a sum".into())
        })?;
        let c = c
            .as_constant()
            .ok_or_else(|| SymError::NonRepresentable("power of a parameter coefficient".into()))?;
        if c.is_zero() {
            return Err(SymError::NonRepresentable("negative power of zero".into()));
        }
        // (c·m)^(half/2) = base^k with base = √c, k = half for odd half, else base = c, k = half/2
        let (base, k) = if half % 2 != 0 {
            let r = q_sqrt(&c).ok_or_else(|| {
                SymError::NonRepresentable(format!("square root of {}", super::param::fmt_q(&c)))
            })?;
            (r, half)
        } else {
            (c, half / 2)
        };
        let mut cc = Q::one();
        for _ in 0..k.unsigned_abs() {
            cc *= &base;
        }
        if k < 0 {
            cc = cc.recip();
        }
        let mut mono = Mono::one();
        for (a, e) in m.pows() {
            let prod = e as i64 * half as i64;
            if prod % 2 != 0 {
                return Err(SymError::NonRepresentable(format!(
                    "{a} raised to a quarter power"
                )));
            }
            let ne = (prod / 2) as i32;
            if ne != 0 {
                mono.pows.insert(a, ne);
            }
        }
        mono.exp = m.exp.scale(&super::param::q(half as i64, 2));
        mono.check()?;
        Ok(Expr::term(ParamPoly::constant(cc), mono))
    }

    /// Partial derivative, treating opaque atoms as functions of `(x, y, t, u)`.
    pub fn differentiate(&self, v: Var) -> Expr {
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            if v == Var::T && !m.exp.is_zero() {
                r.add_term(m.clone(), c.mul(&m.exp.to_poly()));
            }
            for (a, e) in m.pows() {
                match a.derivative(v) {
                    AtomDerivative::Zero => {}
                    AtomDerivative::One => {
                        let coef = c.scale(&super::param::q(e as i64, 2));
                        r.add_term(m.with_exp_delta(a, -2), coef);
                    }
                    AtomDerivative::Atom(da) => {
                        let coef = c.scale(&super::param::q(e as i64, 2));
                        let m2 = m.with_exp_delta(a, -2).with_exp_delta(da, 2);
                        r.add_term(m2, coef);
                    }
                }
            }
        }
        r
    }

    /// Simultaneous substitution of atoms by expressions.
    pub fn substitute(&self, bindings: &BTreeMap<Atom, Expr>) -> Result<Expr, SymError> {
        let mut cache: HashMap<(Atom, i32), Expr> = HashMap::new();
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            let mut keep = Mono::exp(m.exp.clone());
            let mut acc = Expr::term(c.clone(), Mono::one());
            for (a, e) in m.pows() {
                match bindings.get(&a) {
                    Some(b) => {
                        let p = match cache.get(&(a, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = b.pow_half(e)?;
                                cache.insert((a, e), p.clone());
                                p
                            }
                        };
                        acc = &acc * &p;
                    }
                    None => {
                        keep.pows.insert(a, e);
                    }
                }
            }
            for (m2, c2) in acc.terms {
                r.add_term(m2.mul(&keep), c2);
            }
        }
        Ok(r)
    }

    /// Substitute parameters in coefficients and exponential arguments.
    pub fn substitute_params(&self, s: &ParamSubst) -> Expr {
        if s.is_empty() {
            return self.clone();
        }
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.exp = m.exp.subst(s);
            r.add_term(m2, c.subst(s));
        }
        r
    }

    /// IEEE evaluation; radicals and negative powers need `x, y > 0`.
    pub fn eval_numeric(&self, env: &NumEnv) -> Result<f64, SymError> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let cv = c
                .eval(&env.params)
                .map_err(|p| SymError::MissingBinding(p.name().to_string()))?;
            let mut v = cv;
            for (a, e) in m.pows() {
                let x = *env
                    .atoms
                    .get(&a)
                    .ok_or_else(|| SymError::MissingBinding(a.to_string()))?;
                v *= half_pow(a, x, e)?;
            }
            if !m.exp.is_zero() {
                let t = *env
                    .atoms
                    .get(&Atom::T)
                    .ok_or_else(|| SymError::MissingBinding("t".into()))?;
                let alpha = m
                    .exp
                    .eval(&env.params)
                    .map_err(|p| SymError::MissingBinding(p.name().to_string()))?;
                v *= (alpha * t).exp();
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Set of atoms appearing anywhere.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut v: Vec<Atom> = self
            .terms
            .keys()
            .flat_map(|m| m.pows.keys().copied())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains_jets(&self) -> bool {
        self.atoms().iter().any(|a| a.is_jet())
    }

    /// True when no coefficient depends on a parameter.
    pub fn is_parameter_free(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| c.as_constant().is_some() && m.exp.coef.iter().all(Zero::is_zero))
    }

    /// Group terms by the power of atom `a` (integer powers only).
    pub fn collect_by(&self, a: Atom) -> BTreeMap<i32, Expr> {
        let mut out: BTreeMap<i32, Expr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.half_exp(a);
            let m2 = m.with_exp_delta(a, -e);
            out.entry(e).or_default().add_term(m2, c.clone());
        }
        out
    }

    /// Mirror image under `x ↔ y`, `a ↔ d`, `b ↔ e` (opaque atoms swap their x/y tags).
    pub fn swap_xy(&self) -> Expr {
        let ps = ParamSubst::new()
            .with(Param::A, Lin::param(Param::D, Q::one()))
            .with(Param::D, Lin::param(Param::A, Q::one()))
            .with(Param::B, Lin::param(Param::E, Q::one()))
            .with(Param::E, Lin::param(Param::B, Q::one()));
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            let mut m2 = Mono::exp(m.exp.subst(&ps));
            for (a, e) in m.pows() {
                let a2 = match a {
                    Atom::X => Atom::Y,
                    Atom::Y => Atom::X,
                    Atom::Jet(j) => Atom::Jet(super::atom::MultiIndex::new(j.y, j.x, j.t)),
                    Atom::Fn(f, d) => Atom::Fn(
                        f,
                        super::atom::Deriv {
                            x: d.y,
                            y: d.x,
                            ..d
                        },
                    ),
                    other => other,
                };
                m2.pows.insert(a2, e);
            }
            r.add_term(m2, c.subst(&ps));
        }
        r
    }

    /// Whether the doubled exponent of any term on `x` or `y` is odd or negative.
    pub fn has_radicals(&self) -> bool {
        self.terms.keys().any(|m| {
            [Atom::X, Atom::Y]
                .iter()
                .any(|a| m.half_exp(*a) % 2 != 0 || m.half_exp(*a) < 0)
        })
    }
}

pub(crate) fn half_pow(a: Atom, x: f64, e: i32) -> Result<f64, SymError> {
    if e % 2 == 0 {
        if e < 0 && x == 0.0 {
            return Err(SymError::Domain(format!("{a} = 0 under a negative power")));
        }
        return Ok(x.powi(e / 2));
    }
    if x <= 0.0 {
        return Err(SymError::Domain(format!("{a} = {x} under a square root")));
    }
    Ok(x.sqrt().powi(e))
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, o: &Expr) -> Expr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, o: &Expr) -> Expr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, o: &Expr) -> Expr {
        let mut r = Expr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        r
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $f(self, o: Expr) -> Expr {
                (&self).$f(&o)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $f(self, o: &Expr) -> Expr {
                (&self).$f(o)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $f(self, o: Expr) -> Expr {
                self.$f(&o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| a + b)
    }
}
