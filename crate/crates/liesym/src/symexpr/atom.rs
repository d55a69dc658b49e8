use std::fmt;

/// Derivative counts of a jet variable `u_J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex {
    pub x: u8,
    pub y: u8,
    pub t: u8,
}

impl MultiIndex {
    pub const fn new(x: u8, y: u8, t: u8) -> Self {
        MultiIndex { x, y, t }
    }

    pub fn order(self) -> u8 {
        self.x + self.y + self.t
    }

    pub fn bump(self, c: Coord) -> Self {
        let mut m = self;
        match c {
            Coord::X => m.x += 1,
            Coord::Y => m.y += 1,
            Coord::T => m.t += 1,
        }
        m
    }

    /// The derivative directions in canonical order, e.g. `u_xt` gives `[X, T]`.
    pub fn directions(self) -> Vec<Coord> {
        let mut v = Vec::new();
        v.extend(std::iter::repeat(Coord::X).take(self.x as usize));
        v.extend(std::iter::repeat(Coord::Y).take(self.y as usize));
        v.extend(std::iter::repeat(Coord::T).take(self.t as usize));
        v
    }

    pub fn suffix(self) -> String {
        let mut s = String::new();
        s.extend(std::iter::repeat('x').take(self.x as usize));
        s.extend(std::iter::repeat('y').take(self.y as usize));
        s.extend(std::iter::repeat('t').take(self.t as usize));
        s
    }
}

/// Independent coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X,
    Y,
    T,
}

impl Coord {
    pub const ALL: [Coord; 3] = [Coord::X, Coord::Y, Coord::T];

    pub fn atom(self) -> Atom {
        match self {
            Coord::X => Atom::X,
            Coord::Y => Atom::Y,
            Coord::T => Atom::T,
        }
    }
}

/// Opaque unknown functions of `(x, y, t, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Xi,
    Gamma,
    Tau,
    Phi,
    H,
    K,
    L,
    S,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Xi,
        Func::Gamma,
        Func::Tau,
        Func::Phi,
        Func::H,
        Func::K,
        Func::L,
        Func::S,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Xi => "xi",
            Func::Gamma => "gamma",
            Func::Tau => "tau",
            Func::Phi => "phi",
            Func::H => "h",
            Func::K => "k",
            Func::L => "l",
            Func::S => "s",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Formal derivative tag on an opaque function, counts in `(x, y, t, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Deriv {
    pub x: u8,
    pub y: u8,
    pub t: u8,
    pub u: u8,
}

impl Deriv {
    pub fn bump(self, v: Var) -> Option<Deriv> {
        let mut d = self;
        match v {
            Var::X => d.x += 1,
            Var::Y => d.y += 1,
            Var::T => d.t += 1,
            Var::U => d.u += 1,
            Var::Jet(_) => return None,
        }
        Some(d)
    }

    pub fn suffix(self) -> String {
        let mut s = String::new();
        for (c, n) in [('x', self.x), ('y', self.y), ('t', self.t), ('u', self.u)] {
            s.extend(std::iter::repeat(c).take(n as usize));
        }
        s
    }

    pub fn order(self) -> u8 {
        self.x + self.y + self.t + self.u
    }
}

/// A symbol that can carry an exponent inside a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Jet variable `u_J` with `#J ≥ 1`.
    Jet(MultiIndex),
    U,
    X,
    Y,
    T,
    Fn(Func, Deriv),
}

impl Atom {
    pub fn jet(x: u8, y: u8, t: u8) -> Atom {
        if x + y + t == 0 {
            Atom::U
        } else {
            Atom::Jet(MultiIndex::new(x, y, t))
        }
    }

    pub fn func(f: Func) -> Atom {
        Atom::Fn(f, Deriv::default())
    }

    /// Whether half-integer and negative exponents are allowed.
    pub fn allows_fractional(self) -> bool {
        matches!(self, Atom::X | Atom::Y)
    }

    pub fn is_jet(self) -> bool {
        matches!(self, Atom::Jet(_))
    }

    /// Whether `∂/∂v` of this atom is nonzero, and what it is.
    pub fn derivative(self, v: Var) -> AtomDerivative {
        match (self, v) {
            (Atom::X, Var::X) | (Atom::Y, Var::Y) | (Atom::T, Var::T) | (Atom::U, Var::U) => {
                AtomDerivative::One
            }
            (Atom::Jet(j), Var::Jet(k)) if j == k => AtomDerivative::One,
            (Atom::Fn(f, d), _) => match d.bump(v) {
                Some(d2) => AtomDerivative::Atom(Atom::Fn(f, d2)),
                None => AtomDerivative::Zero,
            },
            _ => AtomDerivative::Zero,
        }
    }
}

pub enum AtomDerivative {
    Zero,
    One,
    Atom(Atom),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Jet(j) => write!(f, "u_{}", j.suffix()),
            Atom::U => write!(f, "u"),
            Atom::X => write!(f, "x"),
            Atom::Y => write!(f, "y"),
            Atom::T => write!(f, "t"),
            Atom::Fn(func, d) => {
                if d.order() == 0 {
                    write!(f, "{}", func.name())
                } else {
                    write!(f, "{}_{}", func.name(), d.suffix())
                }
            }
        }
    }
}

/// Differentiation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    T,
    U,
    Jet(MultiIndex),
}

impl From<Coord> for Var {
    fn from(c: Coord) -> Self {
        match c {
            Coord::X => Var::X,
            Coord::Y => Var::Y,
            Coord::T => Var::T,
        }
    }
}

impl Var {
    /// Variable for the jet atom `u_J` (or `u` itself when `J = 0`).
    pub fn of_jet(j: MultiIndex) -> Var {
        if j.order() == 0 {
            Var::U
        } else {
            Var::Jet(j)
        }
    }
}
