//! Brackets of vector fields, structure constants and identification of the
//! resulting algebras against a small reference set.

mod identify;
pub mod linalg;
mod published;
pub mod reference;
mod structure;
mod symbolic;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::generators::{CaseError, GeneratorBasis};
use crate::jet::VectorField;
use crate::symexpr::{fmt_q, Mono, ParamPoly, Q};

pub use identify::{
    find_isomorphism, normal_form, structure_report, structure_report_with, NormalForm,
    StructureReport,
};
pub use linalg::Matrix;
pub use published::{
    inclusion_chains, isomorphism_classes, published_diff, published_witnesses, verify_grid,
    CellDiff, GridCheck, PublishedMap, PublishedMapDomain, TableDiff,
};
pub use reference::{AlgebraName, ReferenceAlgebra};
pub use structure::{format_combination, render_grid, Projector, Quotient, StructureConstants};
pub use symbolic::{symbolic_commutator_table, SymbolicTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("bracket [v{}, v{}] is not in the span of the basis: {detail}", .i + 1, .j + 1)]
    Closure { i: usize, j: usize, detail: String },
    #[error("basis of {0} fields is linearly dependent")]
    Degenerate(usize),
    #[error("antisymmetry fails for the pair ({i}, {j})")]
    Antisymmetry { i: usize, j: usize },
    #[error("Jacobi identity fails for the triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("field coefficients still contain parameters; instantiate the basis first")]
    NotInstantiated,
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("incompatible samples: {0}")]
    IncompatibleSamples(String),
    #[error("Levi decomposition failed: {0}")]
    Levi(String),
    #[error("malformed table cell '{0}'")]
    Cell(String),
    #[error(transparent)]
    Case(#[from] CaseError),
}

/// `[v, w]` with components `v(w^i) − w(v^i)`.
pub fn bracket(v: &VectorField, w: &VectorField) -> VectorField {
    let comp = |a: &crate::symexpr::Expr, b: &crate::symexpr::Expr| v.act(b) - w.act(a);
    VectorField::new(
        comp(&v.xi, &w.xi),
        comp(&v.gamma, &w.gamma),
        comp(&v.tau, &w.tau),
        comp(&v.phi, &w.phi),
    )
}

/// Coordinate key of a flattened field: component index and monomial.
pub(crate) type Key = (usize, Mono);

pub(crate) fn mono_text(m: &Mono) -> String {
    crate::symexpr::Expr::term(ParamPoly::one(), m.clone()).to_string()
}

/// Field as a sparse vector over `(component, monomial)` with polynomial coefficients.
pub(crate) fn flatten(v: &VectorField) -> BTreeMap<Key, ParamPoly> {
    let mut out = BTreeMap::new();
    for (idx, c) in v.components().iter().enumerate() {
        for (m, p) in c.terms() {
            out.insert((idx, m.clone()), p.clone());
        }
    }
    out
}

fn flatten_q(v: &VectorField) -> Result<BTreeMap<Key, Q>, LieError> {
    flatten(v)
        .into_iter()
        .map(|(k, p)| {
            p.as_constant()
                .map(|c| (k, c))
                .ok_or(LieError::NotInstantiated)
        })
        .collect()
}

fn is_parameter_free(b: &GeneratorBasis) -> bool {
    b.fields
        .iter()
        .all(|v| v.components().iter().all(|c| c.is_parameter_free()))
}

/// Basis with parameters bound: symbolic bases are instantiated at their sample.
fn concrete(basis: &GeneratorBasis) -> Result<GeneratorBasis, LieError> {
    let free = is_parameter_free;
    if free(basis) {
        return Ok(basis.clone());
    }
    match &basis.case {
        Some(c) => {
            let b = basis.instantiate(&c.sample_subst());
            if free(&b) {
                Ok(b)
            } else {
                Err(LieError::NotInstantiated)
            }
        }
        None => Err(LieError::NotInstantiated),
    }
}

/// Dense coordinates of parameter-free fields over the union of their keys.
struct Flat {
    keys: Vec<Key>,
    index: BTreeMap<Key, usize>,
    columns: Vec<Vec<Q>>,
}

impl Flat {
    fn new(fields: &[VectorField]) -> Result<Flat, LieError> {
        let maps: Vec<BTreeMap<Key, Q>> = fields.iter().map(flatten_q).collect::<Result<_, _>>()?;
        let keys: Vec<Key> = maps
            .iter()
            .flat_map(|m| m.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: BTreeMap<Key, usize> = keys
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let columns = maps.iter().map(|m| dense(m, &index, keys.len())).collect();
        Ok(Flat {
            keys,
            index,
            columns,
        })
    }

    /// Coordinates of `v` in the span, `Err` with the reason otherwise.
    fn coords(&self, v: &VectorField) -> Result<Vec<Q>, String> {
        let m = flatten_q(v).map_err(|e| e.to_string())?;
        if let Some((k, _)) = m.iter().find(|(k, _)| !self.index.contains_key(*k)) {
            return Err(format!(
                "term {} in component {} is outside the span",
                mono_text(&k.1),
                k.0
            ));
        }
        let d = dense(&m, &self.index, self.keys.len());
        linalg::coords_in(&self.columns, &d).ok_or_else(|| "no exact combination".into())
    }
}

fn dense(m: &BTreeMap<Key, Q>, index: &BTreeMap<Key, usize>, n: usize) -> Vec<Q> {
    let mut out = vec![Q::default(); n];
    for (k, v) in m {
        out[index[k]] = v.clone();
    }
    out
}

/// Structure constants of a basis, exact at the basis sample.
pub fn commutator_table(basis: &GeneratorBasis) -> Result<StructureConstants, LieError> {
    let basis = concrete(basis)?;
    let n = basis.dimension();
    let flat = Flat::new(&basis.fields)?;
    if linalg::span_rank(&flat.columns) != n {
        return Err(LieError::Degenerate(n));
    }
    let mut sc = StructureConstants::zero(basis.labels.clone());
    for i in 0..n {
        for j in i + 1..n {
            let br = bracket(&basis.fields[i], &basis.fields[j]);
            let c = flat
                .coords(&br)
                .map_err(|detail| LieError::Closure { i, j, detail })?;
            sc.c[j][i] = c.iter().map(|x| -x.clone()).collect();
            sc.c[i][j] = c;
        }
    }
    Ok(sc)
}

/// Linear map given by the images of the source basis in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub images: Vec<Vec<Q>>,
}

impl LinearMap {
    pub fn new(images: Vec<Vec<Q>>) -> Self {
        LinearMap { images }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap::new(linalg::identity(n))
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        let dim = self.images.first().map_or(0, Vec::len);
        linalg::combine(x, &self.images, dim)
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &LinearMap) -> LinearMap {
        LinearMap::new(self.images.iter().map(|v| then.apply(v)).collect())
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        linalg::inverse(&self.images).map(LinearMap::new)
    }

    pub fn is_invertible(&self) -> bool {
        let n = self.images.len();
        self.images.iter().all(|r| r.len() == n) && linalg::rank(&self.images) == n
    }

    /// Rows like `v3 -> 1/2*H`.
    pub fn describe(&self, src: &[String], dst: &[String]) -> Vec<String> {
        self.images
            .iter()
            .zip(src)
            .map(|(img, s)| format!("{s} -> {}", format_combination(img, dst)))
            .collect()
    }
}

/// Whether `map` preserves every bracket of basis pairs.
pub fn is_homomorphism(
    map: &LinearMap,
    src: &StructureConstants,
    dst: &StructureConstants,
) -> bool {
    let n = src.dim();
    if map.images.len() != n || map.images.iter().any(|r| r.len() != dst.dim()) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = map.apply(&src.c[i][j]);
            let rhs = dst.bracket(&map.images[i], &map.images[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Bracket-preserving and invertible.
pub fn check_morphism(map: &LinearMap, src: &StructureConstants, dst: &StructureConstants) -> bool {
    src.dim() == dst.dim() && map.is_invertible() && is_homomorphism(map, src, dst)
}

/// Provenance of a witness map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Published,
    Constructed,
}

/// A verified isomorphism onto a reference basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub target: String,
    pub domain_labels: Vec<String>,
    pub target_labels: Vec<String>,
    pub map: LinearMap,
    pub source: WitnessSource,
}

impl Witness {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "target": self.target,
            "source": self.source,
            "images": self.map.describe(&self.domain_labels, &self.target_labels),
            "matrix": self.map.images.iter()
                .map(|r| r.iter().map(fmt_q).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Whether every field of `small` lies in the span of `large`.
///
/// A symbolic `small` is first specialized at the sample of `large`, so a
/// generic family can be compared with one of its special parameter values.
pub fn inclusion_check(small: &GeneratorBasis, large: &GeneratorBasis) -> Result<bool, LieError> {
    if let (Some(a), Some(b)) = (&small.case, &large.case) {
        let p = crate::symexpr::Param::B.index();
        let q = crate::symexpr::Param::E.index();
        if a.sample[p] != b.sample[p] || a.sample[q] != b.sample[q] {
            return Err(LieError::IncompatibleSamples(format!(
                "case {} has b={}, e={} but case {} has b={}, e={}",
                a.id(),
                fmt_q(&a.sample[p]),
                fmt_q(&a.sample[q]),
                b.id(),
                fmt_q(&b.sample[p]),
                fmt_q(&b.sample[q])
            )));
        }
    }
    // a parametric `small` is specialized at the sample of `large`
    let small = match &large.case {
        Some(c) if !is_parameter_free(small) => small.instantiate(&c.sample_subst()),
        _ => small.clone(),
    };
    let small = concrete(&small)?;
    let large = concrete(large)?;
    let mut all = large.fields.clone();
    all.extend(small.fields.iter().cloned());
    let flat = Flat::new(&all)?;
    let (l, s) = flat.columns.split_at(large.fields.len());
    Ok(s.iter().all(|v| linalg::in_span(l, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{basis_for, heat_basis, ParamCase};
    use crate::symexpr::{parse, qi};

    fn fld(xi: &str, gamma: &str, tau: &str, phi: &str) -> VectorField {
        let p = |s: &str| parse(s).unwrap();
        VectorField::new(p(xi), p(gamma), p(tau), p(phi))
    }

    #[test]
    fn bracket_with_zero_is_zero() {
        let v = fld("x*t", "y", "1", "u*x");
        assert!(bracket(&v, &VectorField::zero()).is_zero());
    }

    #[test]
    fn case_1_1_v1_v3_is_half_b_v3() {
        let case = ParamCase::canonical("1.1").unwrap();
        let b = crate::generators::basis_symbolic(&case);
        let br = bracket(&b.fields[0], &b.fields[2]);
        let half_b = parse("b/2").unwrap();
        assert_eq!(br, b.fields[2].map(|c| c * &half_b));
    }

    #[test]
    fn case_2_1_is_abelian() {
        let sc = commutator_table(&basis_for(&ParamCase::canonical("2.1").unwrap())).unwrap();
        assert!(sc.is_abelian());
    }

    #[test]
    fn case_2_2_v1_v2_is_minus_2b_v3() {
        let case = ParamCase::canonical("2.2").unwrap();
        let sc = commutator_table(&basis_for(&case)).unwrap();
        // b = 1 at the canonical sample
        assert_eq!(sc.c[0][1], vec![qi(0), qi(0), qi(-2), qi(0)]);
    }

    #[test]
    fn closure_failure_names_pair() {
        let mut b = heat_basis();
        b.fields.truncate(2);
        b.fields.push(fld("0", "0", "0", "x*u"));
        b.labels.truncate(3);
        match commutator_table(&b) {
            Err(LieError::Closure { i, j, .. }) => assert_eq!((i, j), (0, 2)),
            other => panic!("expected closure error, got {other:?}"),
        }
    }

    #[test]
    fn identity_is_a_morphism() {
        let sc = commutator_table(&heat_basis()).unwrap();
        assert!(check_morphism(&LinearMap::identity(6), &sc, &sc));
    }

    #[test]
    fn swapping_e_and_f_is_not_a_morphism() {
        let s = reference::sl2().constants;
        let swap = LinearMap::new(vec![
            linalg::unit(3, 1),
            linalg::unit(3, 0),
            linalg::unit(3, 2),
        ]);
        assert!(!check_morphism(&swap, &s, &s));
    }

    #[test]
    fn inclusion_self_and_rank() {
        let case = ParamCase::canonical("2.1").unwrap();
        let b = basis_for(&case);
        assert!(inclusion_check(&b, &b).unwrap());
        let mut small = b.clone();
        small.case = None;
        let mut large = b.clone();
        large.case = None;
        large.fields = vec![fld("sqrt(x)", "0", "0", "0")];
        large.labels = vec!["w".into()];
        assert!(!inclusion_check(&small, &large).unwrap());
    }

    #[test]
    fn heat_realizes_sl2_semidirect_h3() {
        // E = v6/4, F = -v2, H = v4, X = -v5/2, Y = v1, Z = -v3/2
        let sc = commutator_table(&heat_basis()).unwrap();
        let m = reference::m_algebra();
        let e = |i| linalg::unit(6, i);
        let s = |i, c| linalg::scale(&linalg::unit(6, i), &qi(c));
        let map = LinearMap::new(vec![e(4), s(1, -1), s(5, -2), e(2), s(3, -2), s(0, 4)]);
        assert!(check_morphism(&map, &sc, &m.constants));
    }

    #[test]
    fn inclusion_rejects_different_rates() {
        let small = basis_for(&ParamCase::canonical("2.2").unwrap());
        let large = basis_for(&ParamCase::canonical("3.3").unwrap());
        assert!(matches!(
            inclusion_check(&small, &large),
            Err(LieError::IncompatibleSamples(_))
        ));
    }
}
