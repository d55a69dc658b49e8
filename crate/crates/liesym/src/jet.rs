//! Second-order jet machinery: total derivatives, prolongation, and the
//! action of a prolonged vector field on a differential expression.

use std::collections::BTreeSet;

use crate::symexpr::{Atom, Coord, Deriv, Expr, Func, MultiIndex, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("prolongation order {0} is outside 1..=2")]
    Order(u8),
    #[error("vector field component {0} contains jet atoms")]
    JetInField(&'static str),
}

/// `ξ ∂x + γ ∂y + τ ∂t + φ ∂u` with coefficients over `(x, y, t, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VectorField {
    pub xi: Expr,
    pub gamma: Expr,
    pub tau: Expr,
    pub phi: Expr,
}

impl VectorField {
    pub fn new(xi: Expr, gamma: Expr, tau: Expr, phi: Expr) -> Self {
        VectorField {
            xi,
            gamma,
            tau,
            phi,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Field with `φ = λ u`.
    pub fn linear(xi: Expr, gamma: Expr, tau: Expr, lambda: Expr) -> Self {
        let phi = &lambda * &Expr::atom(Atom::U);
        Self::new(xi, gamma, tau, phi)
    }

    /// Field whose coefficients are the opaque atoms `xi, gamma, tau, phi`.
    pub fn generic() -> Self {
        Self::new(
            Expr::atom(Atom::func(Func::Xi)),
            Expr::atom(Atom::func(Func::Gamma)),
            Expr::atom(Atom::func(Func::Tau)),
            Expr::atom(Atom::func(Func::Phi)),
        )
    }

    /// Generic field in `(x, t, u)` only, with `γ = 0`.
    pub fn generic_xt() -> Self {
        let mut v = Self::generic();
        v.gamma = Expr::zero();
        v
    }

    pub fn components(&self) -> [&Expr; 4] {
        [&self.xi, &self.gamma, &self.tau, &self.phi]
    }

    pub fn component(&self, f: Func) -> Option<&Expr> {
        match f {
            Func::Xi => Some(&self.xi),
            Func::Gamma => Some(&self.gamma),
            Func::Tau => Some(&self.tau),
            Func::Phi => Some(&self.phi),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    pub fn validate(&self) -> Result<(), JetError> {
        for (name, c) in ["xi", "gamma", "tau", "phi"].iter().zip(self.components()) {
            if c.contains_jets() {
                return Err(JetError::JetInField(name));
            }
        }
        Ok(())
    }

    /// `φ = λ u + μ` with `λ, μ` free of `u`.
    pub fn is_affine(&self) -> bool {
        self.phi
            .collect_by(Atom::U)
            .keys()
            .all(|k| *k == 0 || *k == 2)
    }

    /// Coefficient of `u` in `φ` (meaningful when affine).
    pub fn lambda(&self) -> Expr {
        self.phi
            .collect_by(Atom::U)
            .remove(&2)
            .unwrap_or_else(Expr::zero)
    }

    /// `u`-free part of `φ`.
    pub fn mu(&self) -> Expr {
        self.phi
            .collect_by(Atom::U)
            .remove(&0)
            .unwrap_or_else(Expr::zero)
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        VectorField::new(
            &self.xi + &o.xi,
            &self.gamma + &o.gamma,
            &self.tau + &o.tau,
            &self.phi + &o.phi,
        )
    }

    pub fn scale(&self, c: &crate::symexpr::Q) -> VectorField {
        VectorField::new(
            self.xi.scale(c),
            self.gamma.scale(c),
            self.tau.scale(c),
            self.phi.scale(c),
        )
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> VectorField {
        VectorField::new(f(&self.xi), f(&self.gamma), f(&self.tau), f(&self.phi))
    }

    /// Apply the field as a derivation to a coefficient expression.
    pub fn act(&self, e: &Expr) -> Expr {
        let mut r = Expr::zero();
        for (c, v) in [
            (&self.xi, Var::X),
            (&self.gamma, Var::Y),
            (&self.tau, Var::T),
            (&self.phi, Var::U),
        ] {
            if !c.is_zero() {
                r = r + c * &e.differentiate(v);
            }
        }
        r
    }

    /// Coordinate swap `x ↔ y` with `a ↔ d`, `b ↔ e`.
    pub fn swap_xy(&self) -> VectorField {
        VectorField::new(
            self.gamma.swap_xy(),
            self.xi.swap_xy(),
            self.tau.swap_xy(),
            self.phi.swap_xy(),
        )
    }
}

/// Jet atoms (and `u`) appearing in `p`.
fn jet_vars(p: &Expr) -> BTreeSet<MultiIndex> {
    let mut out = BTreeSet::new();
    for a in p.atoms() {
        match a {
            Atom::Jet(j) => {
                out.insert(j);
            }
            Atom::U => {
                out.insert(MultiIndex::default());
            }
            // an opaque function depends on u implicitly
            Atom::Fn(..) => {
                out.insert(MultiIndex::default());
            }
            _ => {}
        }
    }
    out
}

/// `D_i P = ∂_i P + Σ_J u_{J,i} ∂P/∂u_J`.
pub fn total_derivative(p: &Expr, i: Coord) -> Expr {
    let mut r = p.differentiate(Var::from(i));
    for j in jet_vars(p) {
        let dp = p.differentiate(Var::of_jet(j));
        if dp.is_zero() {
            continue;
        }
        let next = j.bump(i);
        r = r + &dp * &Expr::atom(Atom::Jet(next));
    }
    r
}

/// `D_J P` applied in the canonical direction order of `J`.
pub fn total_derivative_multi(p: &Expr, j: MultiIndex) -> Expr {
    j.directions()
        .into_iter()
        .fold(p.clone(), |acc, c| total_derivative(&acc, c))
}

/// Characteristic `Q = φ − ξ u_x − γ u_y − τ u_t`.
pub fn characteristic(v: &VectorField) -> Expr {
    let ux = Expr::atom(Atom::jet(1, 0, 0));
    let uy = Expr::atom(Atom::jet(0, 1, 0));
    let ut = Expr::atom(Atom::jet(0, 0, 1));
    &v.phi - &(&(&v.xi * &ux) + &(&(&v.gamma * &uy) + &(&v.tau * &ut)))
}

/// `φ^J = D_J(Q) + ξ u_{J,x} + γ u_{J,y} + τ u_{J,t}`.
pub fn prolongation_coeff(v: &VectorField, j: MultiIndex) -> Result<Expr, JetError> {
    let n = j.order();
    if !(1..=2).contains(&n) {
        return Err(JetError::Order(n));
    }
    v.validate()?;
    let mut r = total_derivative_multi(&characteristic(v), j);
    for (c, dir) in [(&v.xi, Coord::X), (&v.gamma, Coord::Y), (&v.tau, Coord::T)] {
        if !c.is_zero() {
            r = r + c * &Expr::atom(Atom::Jet(j.bump(dir)));
        }
    }
    Ok(r)
}

/// `pr v (Δ)`, skipping jets absent from `Δ`.
pub fn apply_prolonged(v: &VectorField, delta: &Expr) -> Result<Expr, JetError> {
    v.validate()?;
    let mut r = v.act(delta);
    for a in delta.atoms() {
        if let Atom::Jet(j) = a {
            let d = delta.differentiate(Var::Jet(j));
            if !d.is_zero() {
                r = r + &prolongation_coeff(v, j)? * &d;
            }
        }
    }
    Ok(r)
}

/// Opaque atom `f` with derivative counts `(x, y, t, u)`.
pub fn opaque(f: Func, x: u8, y: u8, t: u8, u: u8) -> Expr {
    Expr::atom(Atom::Fn(f, Deriv { x, y, t, u }))
}
