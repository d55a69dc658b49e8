//! Structure constants as polynomials in the parameters.
//!
//! The basis is brought to reduced form using only pivots with rational
//! coefficients, so every elimination step stays inside the polynomial ring.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{bracket, flatten, mono_text, Key, LieError, StructureConstants};
use crate::generators::GeneratorBasis;
use crate::jet::VectorField;
use crate::symexpr::{ParamPoly, ParamSubst, Q};

type Sparse = BTreeMap<Key, ParamPoly>;

/// `[v_i, v_j] = Σ_k c[i][j][k] v_k` with polynomial constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTable {
    pub labels: Vec<String>,
    pub c: Vec<Vec<Vec<ParamPoly>>>,
}

impl SymbolicTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Bind parameters to exact values.
    pub fn at(&self, sample: &[Q; 4]) -> StructureConstants {
        StructureConstants {
            labels: self.labels.clone(),
            c: self
                .c
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| cell.iter().map(|p| p.eval_exact(sample)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn substitute(&self, s: &ParamSubst) -> SymbolicTable {
        SymbolicTable {
            labels: self.labels.clone(),
            c: self
                .c
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| cell.iter().map(|p| p.subst(s)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Cell text such as `-2*b*v3`.
    pub fn cell(&self, i: usize, j: usize) -> String {
        format_poly_combination(&self.c[i][j], &self.labels)
    }

    pub fn grid(&self) -> String {
        let n = self.dim();
        let cells: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| self.cell(i, j)).collect())
            .collect();
        super::render_grid(&self.labels, &cells)
    }
}

/// `Σ p_k label_k` with polynomial coefficients.
pub fn format_poly_combination(c: &[ParamPoly], labels: &[String]) -> String {
    let mut s = String::new();
    for (k, p) in c.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let (neg, mag) = if p.is_negative_monomial() {
            (true, p.neg())
        } else {
            (false, p.clone())
        };
        let text = mag.to_string();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != ParamPoly::one() {
            if mag.len() > 1 {
                s.push_str(&format!("({text})*"));
            } else {
                s.push_str(&format!("{text}*"));
            }
        }
        s.push_str(&labels[k]);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn axpy(target: &mut Sparse, f: &ParamPoly, x: &Sparse) {
    for (k, v) in x {
        let add = f.mul(v);
        let e = target.entry(k.clone()).or_insert_with(ParamPoly::zero);
        *e = e.add(&add);
        if e.is_zero() {
            target.remove(k);
        }
    }
}

struct Row {
    vec: Sparse,
    /// Coefficients over the original fields.
    transform: Vec<ParamPoly>,
    pivot: Key,
}

/// Reduce the basis; `None` when some row has no rational pivot.
fn reduce(fields: &[VectorField]) -> Option<Vec<Row>> {
    let n = fields.len();
    let mut rows: Vec<Row> = Vec::with_capacity(n);
    for (i, f) in fields.iter().enumerate() {
        let mut vec = flatten(f);
        let mut transform = vec![ParamPoly::zero(); n];
        transform[i] = ParamPoly::one();
        // eliminate existing pivots
        for r in &rows {
            if let Some(c) = vec.get(&r.pivot).cloned() {
                let neg = c.neg();
                axpy(&mut vec, &neg, &r.vec);
                for (t, rt) in transform.iter_mut().zip(&r.transform) {
                    *t = t.add(&neg.mul(rt));
                }
            }
        }
        let (pivot, c) = vec.iter().find_map(|(k, p)| {
            p.as_constant()
                .filter(|c| !c.is_zero())
                .map(|c| (k.clone(), c))
        })?;
        let inv = ParamPoly::constant(c.recip());
        for v in vec.values_mut() {
            *v = v.mul(&inv);
        }
        for t in transform.iter_mut() {
            *t = t.mul(&inv);
        }
        // clear the new pivot from earlier rows
        for r in rows.iter_mut() {
            if let Some(c) = r.vec.get(&pivot).cloned() {
                let neg = c.neg();
                axpy(&mut r.vec, &neg, &vec);
                for (t, nt) in r.transform.iter_mut().zip(&transform) {
                    *t = t.add(&neg.mul(nt));
                }
            }
        }
        rows.push(Row {
            vec,
            transform,
            pivot,
        });
    }
    Some(rows)
}

/// Polynomial structure constants of a symbolic basis under `constraints`.
///
/// Returns `Ok(None)` when the basis has no pivot sequence with rational
/// coefficients (the numeric table is then the fallback).
pub fn symbolic_commutator_table(
    basis: &GeneratorBasis,
    constraints: &ParamSubst,
) -> Result<Option<SymbolicTable>, LieError> {
    let fields: Vec<VectorField> = basis
        .fields
        .iter()
        .map(|v| v.map(|c| c.substitute_params(constraints)))
        .collect();
    let n = fields.len();
    let Some(rows) = reduce(&fields) else {
        return Ok(None);
    };
    let mut c = vec![vec![vec![ParamPoly::zero(); n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let br = bracket(&fields[i], &fields[j]).map(|e| e.substitute_params(constraints));
            let mut rem = flatten(&br);
            let mut coeffs = vec![ParamPoly::zero(); n];
            for r in &rows {
                if let Some(cr) = rem.get(&r.pivot).cloned() {
                    axpy(&mut rem, &cr.neg(), &r.vec);
                    for (k, t) in r.transform.iter().enumerate() {
                        coeffs[k] = coeffs[k].add(&cr.mul(t));
                    }
                }
            }
            if let Some((k, p)) = rem.iter().next() {
                return Err(LieError::Closure {
                    i,
                    j,
                    detail: format!("remainder {p} at {} in component {}", mono_text(&k.1), k.0),
                });
            }
            c[j][i] = coeffs.iter().map(ParamPoly::neg).collect();
            c[i][j] = coeffs;
        }
    }
    Ok(Some(SymbolicTable {
        labels: basis.labels.clone(),
        c,
    }))
}
