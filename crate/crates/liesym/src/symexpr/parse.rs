//! Recursive-descent parser for the surface grammar.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' exponent)?
//! primary := number | symbol | 'sqrt(' sum ')' | 'exp(' sum ')' | '(' sum ')'
//! ```

use num_bigint::BigInt;

use super::atom::{Atom, Deriv, Func, MultiIndex};
use super::expr::Expr;
use super::param::{Lin, Param};
use super::{SymError, Q};

pub fn parse(text: &str) -> Result<Expr, SymError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> SymError {
        SymError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SymError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn sum(&mut self) -> Result<Expr, SymError> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.product()?;
            } else if self.eat(b'-') {
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, SymError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                let inv = d.pow_half(-2).map_err(|_| SymError::Syntax {
                    pos: at,
                    msg: "division only by a nonzero rational times radicals/exponentials".into(),
                })?;
                acc = acc * inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SymError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, SymError> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let e = if self.eat(b'(') {
            let neg = self.eat(b'-');
            let mut v = self.number()?;
            if self.eat(b'/') {
                let d = self.number()?;
                v /= d;
            }
            self.expect(b')')?;
            if neg {
                -v
            } else {
                v
            }
        } else {
            let neg = self.eat(b'-');
            let v = self.number()?;
            if neg {
                -v
            } else {
                v
            }
        };
        let twice = &e * Q::from_integer(BigInt::from(2));
        if !twice.is_integer() {
            return Err(SymError::Syntax {
                pos: at,
                msg: "exponent must be an integer or half-integer".into(),
            });
        }
        let h: i32 = twice
            .to_integer()
            .try_into()
            .map_err(|_| SymError::Syntax {
                pos: at,
                msg: "exponent too large".into(),
            })?;
        base.pow_half(h)
    }

    fn number(&mut self) -> Result<Q, SymError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let int: BigInt = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap_or("0")
            .parse()
            .map_err(|_| self.err("bad integer"))?;
        let mut v = Q::from_integer(int);
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let frac = &self.src[fs..self.pos];
            if !frac.is_empty() {
                let n: BigInt = std::str::from_utf8(frac)
                    .unwrap_or("0")
                    .parse()
                    .map_err(|_| self.err("bad decimal"))?;
                let d = num_traits::pow(BigInt::from(10), frac.len());
                v += Q::new(n, d);
            }
        }
        Ok(v)
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn primary(&mut self) -> Result<Expr, SymError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::constant(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let name = self.ident();
                self.symbol(&name, at)
            }
            Some(c) => Err(self.err(&format!("unexpected character '{}'", c as char))),
        }
    }

    fn symbol(&mut self, name: &str, at: usize) -> Result<Expr, SymError> {
        let fail = |msg: String| SymError::Syntax { pos: at, msg };
        match name {
            "sqrt" => {
                self.expect(b'(')?;
                let inner = self.sum()?;
                self.expect(b')')?;
                inner.pow_half(1)
            }
            "exp" => {
                self.expect(b'(')?;
                let inner = self.sum()?;
                self.expect(b')')?;
                exp_of(&inner).ok_or_else(|| {
                    SymError::NonRepresentable(format!("exp({inner}) is not exp(linear*t)"))
                })
            }
            "x" => Ok(Expr::atom(Atom::X)),
            "y" => Ok(Expr::atom(Atom::Y)),
            "t" => Ok(Expr::atom(Atom::T)),
            "u" => Ok(Expr::atom(Atom::U)),
            _ => {
                if let Some(p) = Param::from_name(name) {
                    return Ok(Expr::param(p));
                }
                let (base, suffix) = match name.split_once('_') {
                    Some((b, s)) => (b, s),
                    None => (name, ""),
                };
                if base == "u" {
                    let mut j = MultiIndex::default();
                    for ch in suffix.chars() {
                        match ch {
                            'x' => j.x += 1,
                            'y' => j.y += 1,
                            't' => j.t += 1,
                            _ => return Err(fail(format!("bad jet suffix in {name}"))),
                        }
                    }
                    if j.order() == 0 {
                        return Err(fail(format!("empty jet suffix in {name}")));
                    }
                    return Ok(Expr::atom(Atom::Jet(j)));
                }
                if let Some(f) = Func::from_name(base) {
                    let mut d = Deriv::default();
                    for ch in suffix.chars() {
                        match ch {
                            'x' => d.x += 1,
                            'y' => d.y += 1,
                            't' => d.t += 1,
                            'u' => d.u += 1,
                            _ => return Err(fail(format!("bad derivative suffix in {name}"))),
                        }
                    }
                    return Ok(Expr::atom(Atom::Fn(f, d)));
                }
                Err(fail(format!("unknown symbol '{name}'")))
            }
        }
    }
}

/// `exp(inner)` when `inner` is a rational-linear form in the parameters times `t`.
fn exp_of(inner: &Expr) -> Option<Expr> {
    if inner.is_zero() {
        return Some(Expr::one());
    }
    let mut lin = Lin::zero();
    for (m, c) in inner.terms() {
        let pows: Vec<_> = m.pows().collect();
        if pows != vec![(Atom::T, 2)] || !m.exp_arg().is_zero() {
            return None;
        }
        lin = lin.add(&c.as_linear()?);
    }
    if lin.is_zero() {
        return Some(Expr::one());
    }
    Some(Expr::exp_t(lin))
}
