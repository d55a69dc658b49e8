//! Abstract Lie algebras given by structure constants over the rationals.

use std::fmt;

use num_traits::Zero;

use super::linalg::{self, Matrix};
use super::LieError;
use crate::symexpr::{fmt_q, Q};

/// `[v_i, v_j] = Σ_k c[i][j][k] v_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub labels: Vec<String>,
    pub c: Vec<Vec<Vec<Q>>>,
}

impl StructureConstants {
    pub fn zero(labels: Vec<String>) -> Self {
        let n = labels.len();
        StructureConstants {
            labels,
            c: vec![vec![vec![Q::zero(); n]; n]; n],
        }
    }

    /// Abelian algebra with labels `v1..vn`.
    pub fn abelian(n: usize) -> Self {
        Self::zero((1..=n).map(|i| format!("v{i}")).collect())
    }

    /// Build from the nonzero brackets `[i, j] = Σ coeff·k` with `i < j`
    /// or `i > j`; antisymmetry fills the mirror entry.
    pub fn from_brackets(labels: &[&str], brackets: &[(usize, usize, &[(usize, Q)])]) -> Self {
        let mut s = Self::zero(labels.iter().map(|s| s.to_string()).collect());
        for (i, j, terms) in brackets {
            for (k, v) in terms.iter() {
                s.c[*i][*j][*k] += v;
                s.c[*j][*i][*k] -= v;
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` acting on coordinate columns.
    pub fn ad(&self, x: &[Q]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|j| self.bracket(x, &linalg::unit(n, j)))
            .collect();
        linalg::transpose(&cols)
    }

    pub fn check_antisymmetry(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(LieError::Antisymmetry { i, j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        let e = |i| linalg::unit(n, i);
        for i in 0..n {
            for j in i + 1..n {
                let bij = self.bracket(&e(i), &e(j));
                for k in j + 1..n {
                    let a = self.bracket(&bij, &e(k));
                    let b = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let c = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    if !linalg::is_zero_vec(&linalg::add(&linalg::add(&a, &b), &c)) {
                        return Err(LieError::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), LieError> {
        self.check_antisymmetry()?;
        self.check_jacobi()
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Basis of the center, the common kernel of all `ad_{v_i}`.
    pub fn center(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        // rows: for each i and k, Σ_j c[i][j][k] x_j = 0
        let mut m = Vec::new();
        for i in 0..n {
            for k in 0..n {
                m.push((0..n).map(|j| self.c[i][j][k].clone()).collect());
            }
        }
        linalg::nullspace(&m, n)
    }

    /// Basis of the derived subalgebra `[L, L]`.
    pub fn derived(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        let mut all = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                all.push(self.c[i][j].clone());
            }
        }
        linalg::independent(&all)
    }

    /// Basis of `[A, B]` for subspaces given by spanning vectors.
    pub fn bracket_span(&self, a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let mut all = Vec::new();
        for x in a {
            for y in b {
                all.push(self.bracket(x, y));
            }
        }
        linalg::independent(&all)
    }

    /// Killing form `tr(ad_x ad_y)` on the basis.
    pub fn killing(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad(&linalg::unit(n, i))).collect();
        let mut k = linalg::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let p = linalg::mat_mul(&ads[i], &ads[j]);
                let tr = (0..n).fold(Q::zero(), |acc, d| acc + &p[d][d]);
                k[i][j] = tr.clone();
                k[j][i] = tr;
            }
        }
        k
    }

    /// Solvable radical: the Killing-orthogonal complement of `[L, L]`.
    pub fn radical(&self) -> Vec<Vec<Q>> {
        let k = self.killing();
        let d = self.derived();
        let m: Matrix = d.iter().map(|v| linalg::mat_vec(&k, v)).collect();
        if m.is_empty() {
            return (0..self.dim())
                .map(|i| linalg::unit(self.dim(), i))
                .collect();
        }
        linalg::nullspace(&m, self.dim())
    }

    /// Whether the span of `vecs` is closed under brackets with all of `L`.
    pub fn is_ideal(&self, vecs: &[Vec<Q>]) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            vecs.iter()
                .all(|v| linalg::in_span(vecs, &self.bracket(&linalg::unit(n, i), v)))
        })
    }

    /// Constants in a new basis `f_i = Σ_j p[i][j] v_j`.
    pub fn change_basis(&self, p: &Matrix, labels: Vec<String>) -> Result<Self, LieError> {
        self.subalgebra(p, labels)
    }

    /// Constants of the subalgebra spanned by independent `vecs`.
    pub fn subalgebra(&self, vecs: &[Vec<Q>], labels: Vec<String>) -> Result<Self, LieError> {
        let m = vecs.len();
        if linalg::span_rank(vecs) != m {
            return Err(LieError::Degenerate(m));
        }
        let mut out = Self::zero(labels);
        for i in 0..m {
            for j in 0..m {
                let b = self.bracket(&vecs[i], &vecs[j]);
                let c = linalg::coords_in(vecs, &b).ok_or(LieError::Closure {
                    i,
                    j,
                    detail: "bracket leaves the subspace".into(),
                })?;
                out.c[i][j] = c;
            }
        }
        Ok(out)
    }

    /// Quotient by an ideal; the complement is spanned by unit vectors.
    pub fn quotient(&self, ideal: &[Vec<Q>]) -> Result<Quotient, LieError> {
        if !self.is_ideal(ideal) {
            return Err(LieError::NotIdeal);
        }
        let n = self.dim();
        let ideal = linalg::independent(ideal);
        let full = linalg::complete_basis(&ideal, n);
        let reps: Vec<usize> = full[ideal.len()..]
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("unit vector"))
            .collect();
        let labels = reps
            .iter()
            .map(|&i| format!("{}~", self.labels[i]))
            .collect();
        let mut out = Self::zero(labels);
        let proj = Projector::new(&ideal, n);
        for (a, &i) in reps.iter().enumerate() {
            for (b, &j) in reps.iter().enumerate() {
                let br = self.bracket(&linalg::unit(n, i), &linalg::unit(n, j));
                out.c[a][b] = proj.complement_coords(&br);
            }
        }
        Ok(Quotient {
            constants: out,
            representatives: reps,
            ideal,
        })
    }

    /// Aligned text grid: row `i`, column `j` holds `[v_i, v_j]`.
    pub fn grid(&self) -> String {
        let n = self.dim();
        let cells: Vec<Vec<String>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| format_combination(&self.c[i][j], &self.labels))
                    .collect()
            })
            .collect();
        render_grid(&self.labels, &cells)
    }
}

impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.grid())
    }
}

/// `Σ c_k label_k` as text, `"0"` when empty.
pub fn format_combination(c: &[Q], labels: &[String]) -> String {
    let mut s = String::new();
    for (k, v) in c.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let neg = v < &Q::zero();
        let mag = if neg { -v.clone() } else { v.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != Q::from_integer(1.into()) {
            s.push_str(&fmt_q(&mag));
            s.push('*');
        }
        s.push_str(&labels[k]);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// Render a square table with a `[.,.]` corner.
pub fn render_grid(labels: &[String], cells: &[Vec<String>]) -> String {
    let n = labels.len();
    let mut width = vec![0usize; n + 1];
    width[0] = labels.iter().map(|l| l.len()).max().unwrap_or(0).max(5);
    for j in 0..n {
        width[j + 1] = labels[j].len();
        for row in cells {
            width[j + 1] = width[j + 1].max(row[j].len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, first: &str, rest: &[String]| {
        out.push_str(&format!("{:<w$}", first, w = width[0]));
        for (j, c) in rest.iter().enumerate() {
            out.push_str(" | ");
            out.push_str(&format!("{:<w$}", c, w = width[j + 1]));
        }
        out.push('\n');
    };
    line(&mut out, "[.,.]", labels);
    for (i, row) in cells.iter().enumerate() {
        line(&mut out, &labels[i], row);
    }
    out
}

/// A quotient algebra with the chosen complement.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub constants: StructureConstants,
    /// Original basis indices whose classes form the quotient basis.
    pub representatives: Vec<usize>,
    pub ideal: Vec<Vec<Q>>,
}

/// Coordinates relative to `U ⊕ complement` for a subspace `U`.
#[derive(Clone, Debug)]
pub struct Projector {
    inv: Matrix,
    sub_dim: usize,
    pub basis: Vec<Vec<Q>>,
}

impl Projector {
    pub fn new(sub: &[Vec<Q>], n: usize) -> Self {
        let sub = linalg::independent(sub);
        let basis = linalg::complete_basis(&sub, n);
        let inv = linalg::inverse(&linalg::transpose(&basis)).expect("completed basis");
        Projector {
            inv,
            sub_dim: sub.len(),
            basis,
        }
    }

    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.inv, v)
    }

    /// Coordinates of `v mod U` in the complement.
    pub fn complement_coords(&self, v: &[Q]) -> Vec<Q> {
        self.coords(v)[self.sub_dim..].to_vec()
    }

    pub fn sub_coords(&self, v: &[Q]) -> Vec<Q> {
        self.coords(v)[..self.sub_dim].to_vec()
    }

    pub fn complement(&self) -> &[Vec<Q>] {
        &self.basis[self.sub_dim..]
    }
}
