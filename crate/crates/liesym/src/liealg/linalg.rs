//! Dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::symexpr::Q;

/// Row-major matrix of rationals.
pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

/// `Σ c_i v_i`; `dim` is the length of each `v_i`.
pub fn combine(coeffs: &[Q], vecs: &[Vec<Q>], dim: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    for (c, v) in coeffs.iter().zip(vecs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

pub fn scale_matrix(m: &Matrix, c: &Q) -> Matrix {
    m.iter().map(|r| scale(r, c)).collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Rank of a list of vectors.
pub fn span_rank(vecs: &[Vec<Q>]) -> usize {
    rank(&vecs.to_vec())
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// A solution of `m x = b`, if any.
pub fn solve(m: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Maximal linearly independent subset of `vecs`, in order.
pub fn independent(vecs: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    for v in vecs {
        let mut trial = out.clone();
        trial.push(v.clone());
        if span_rank(&trial) == trial.len() {
            out = trial;
        }
    }
    out
}

/// Whether `v` lies in the span of `vecs`.
pub fn in_span(vecs: &[Vec<Q>], v: &[Q]) -> bool {
    coords_in(vecs, v).is_some()
}

/// Coefficients `c` with `v = Σ c_i vecs_i`, if any.
pub fn coords_in(vecs: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    if vecs.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    solve(&transpose(&vecs.to_vec()), v)
}

/// Intersection of two subspaces given by spanning vectors.
pub fn intersect(a: &[Vec<Q>], b: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let a = independent(a);
    let b = independent(b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Σ α_i a_i − Σ β_j b_j = 0
    let mut cols: Vec<Vec<Q>> = a.clone();
    cols.extend(b.iter().map(|v| scale(v, &-Q::one())));
    let m = transpose(&cols);
    let ns = nullspace(&m, cols.len());
    let out: Vec<Vec<Q>> = ns.iter().map(|k| combine(&k[..a.len()], &a, dim)).collect();
    independent(&out)
}

/// Extend independent `vecs` to a basis of `Q^dim` with unit vectors.
pub fn complete_basis(vecs: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut out = independent(vecs);
    for i in 0..dim {
        if out.len() == dim {
            break;
        }
        let mut trial = out.clone();
        trial.push(unit(dim, i));
        if span_rank(&trial) == trial.len() {
            out = trial;
        }
    }
    out
}

/// Characteristic polynomial coefficients `[c_0, …, c_n]` of a square matrix
/// (monic, `c_n = 1`), by Faddeev–LeVerrier.
pub fn char_poly(m: &Matrix) -> Vec<Q> {
    let n = m.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let tr = (0..n).fold(Q::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -tr / Q::from_integer((k as i64).into());
    }
    coeffs
}
