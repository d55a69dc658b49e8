//! Identification of an algebra against the reference set.
//!
//! Witnesses are constructed from invariant data (radical, Levi factor, sl2
//! triple, weight spaces) so the result does not depend on the input basis.

use num_traits::{One, Zero};

use super::linalg::{self, Matrix};
use super::reference::{self, AlgebraName, ReferenceAlgebra};
use super::structure::{Projector, StructureConstants};
use super::{check_morphism, LieError, LinearMap, Witness, WitnessSource};
use crate::symexpr::{q_sqrt, qi, Q};

/// Summary of an algebra's structure.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub dimension: usize,
    pub labels: Vec<String>,
    pub center_basis: Vec<Vec<Q>>,
    pub derived_subalgebra_dim: usize,
    pub radical_dim: usize,
    pub matched: AlgebraName,
    /// Isomorphism from the algebra onto the matched reference basis.
    pub witness: Option<Witness>,
    /// Isomorphism from the quotient by the radical onto `sl2`.
    pub levi_quotient: Option<Witness>,
    /// Report for the quotient by the center when nothing matched.
    pub center_quotient: Option<Box<StructureReport>>,
}

impl StructureReport {
    /// Display name such as `abelian_2` or `sl2_x_R`.
    pub fn matched_name(&self) -> String {
        match self.matched {
            AlgebraName::Abelian => format!("abelian_{}", self.dimension),
            other => other.as_str().to_string(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let vecs = |v: &[Vec<Q>]| {
            v.iter()
                .map(|x| super::format_combination(x, &self.labels))
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "dimension": self.dimension,
            "center_basis": vecs(&self.center_basis),
            "derived_subalgebra_dim": self.derived_subalgebra_dim,
            "radical_dim": self.radical_dim,
            "matched": self.matched_name(),
            "witness": self.witness.as_ref().map(Witness::to_json_value),
            "levi_quotient": self.levi_quotient.as_ref().map(Witness::to_json_value),
            "center_quotient": self.center_quotient.as_ref().map(|r| r.to_json_value()),
        })
    }

    /// Multi-line text summary.
    pub fn text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, "");
        out
    }

    fn write_text(&self, out: &mut String, indent: &str) {
        let center: Vec<String> = self
            .center_basis
            .iter()
            .map(|x| super::format_combination(x, &self.labels))
            .collect();
        out.push_str(&format!(
            "{indent}dimension {}, center [{}], derived dim {}, radical dim {}\n",
            self.dimension,
            center.join(", "),
            self.derived_subalgebra_dim,
            self.radical_dim
        ));
        out.push_str(&format!("{indent}matched: {}\n", self.matched_name()));
        if let Some(w) = &self.witness {
            out.push_str(&format!("{indent}witness ({:?}):\n", w.source));
            for line in w.map.describe(&w.domain_labels, &w.target_labels) {
                out.push_str(&format!("{indent}  {line}\n"));
            }
        }
        if let Some(w) = &self.levi_quotient {
            out.push_str(&format!("{indent}quotient by radical -> sl2:\n"));
            for line in w.map.describe(&w.domain_labels, &w.target_labels) {
                out.push_str(&format!("{indent}  {line}\n"));
            }
        }
        if let Some(q) = &self.center_quotient {
            out.push_str(&format!("{indent}quotient by center:\n"));
            q.write_text(out, &format!("{indent}  "));
        }
    }
}

/// A reference algebra together with its basis realized inside the input:
/// `basis[k]` is the image of the `k`-th reference element.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub reference: ReferenceAlgebra,
    pub basis: Vec<Vec<Q>>,
}

impl NormalForm {
    /// Map from the input basis onto the reference basis.
    pub fn to_reference(&self) -> LinearMap {
        let b = linalg::transpose(&self.basis);
        let inv = linalg::inverse(&b).expect("normal form basis is invertible");
        LinearMap::new(linalg::transpose(&inv))
    }
}

fn witness(map: LinearMap, domain: &[String], r: &ReferenceAlgebra, src: WitnessSource) -> Witness {
    Witness {
        target: r.name.clone(),
        domain_labels: domain.to_vec(),
        target_labels: r.labels().to_vec(),
        map,
        source: src,
    }
}

fn name_of(reference: &str) -> AlgebraName {
    match reference {
        "sl2" => AlgebraName::Sl2,
        "iso2" => AlgebraName::Iso2,
        "N" => AlgebraName::Sl2xR,
        "M" => AlgebraName::Sl2SemidirectH3,
        "sl2_semidirect_J6" => AlgebraName::Sl2SemidirectJ6,
        r if r.starts_with("abelian_") => AlgebraName::Abelian,
        _ => AlgebraName::Unknown,
    }
}

/// Structure report from constants alone.
pub fn structure_report(sc: &StructureConstants) -> Result<StructureReport, LieError> {
    structure_report_with(sc, &[])
}

/// Structure report trying the given candidate witnesses before construction.
pub fn structure_report_with(
    sc: &StructureConstants,
    candidates: &[Witness],
) -> Result<StructureReport, LieError> {
    sc.validate()?;
    let n = sc.dim();
    let center = sc.center();
    let derived = sc.derived();
    let radical = sc.radical();
    let levi = levi_decomposition(sc)?;

    let mut matched = AlgebraName::Unknown;
    let mut wit = None;
    for cand in candidates {
        let target = reference::all()
            .into_iter()
            .chain([reference::abelian(n)])
            .find(|r| r.name == cand.target);
        if let Some(r) = target {
            if check_morphism(&cand.map, sc, &r.constants) {
                matched = name_of(&r.name);
                wit = Some(cand.clone());
                break;
            }
        }
    }
    if wit.is_none() {
        if let Some(nf) = normal_form_with(sc, levi.as_ref()) {
            let m = nf.to_reference();
            if check_morphism(&m, sc, &nf.reference.constants) {
                let name = name_of(&nf.reference.name);
                if name != AlgebraName::Unknown {
                    matched = name;
                    wit = Some(witness(
                        m,
                        &sc.labels,
                        &nf.reference,
                        WitnessSource::Constructed,
                    ));
                }
            }
        }
    }

    let levi_quotient = levi.as_ref().and_then(|l| {
        let t = l.triple.as_ref()?;
        let s = reference::sl2();
        let b = linalg::transpose(&vec![t.e.clone(), t.f.clone(), t.h.clone()]);
        let inv = linalg::inverse(&b)?;
        let map = LinearMap::new(linalg::transpose(&inv));
        check_morphism(&map, &l.quotient, &s.constants)
            .then(|| witness(map, &l.quotient.labels, &s, WitnessSource::Constructed))
    });

    let center_quotient =
        if matched == AlgebraName::Unknown && !center.is_empty() && center.len() < n {
            let q = sc.quotient(&center)?;
            Some(Box::new(structure_report(&q.constants)?))
        } else {
            None
        };

    Ok(StructureReport {
        dimension: n,
        labels: sc.labels.clone(),
        center_basis: center,
        derived_subalgebra_dim: derived.len(),
        radical_dim: radical.len(),
        matched,
        witness: wit,
        levi_quotient,
        center_quotient,
    })
}

/// sl2 triple in some coordinates.
#[derive(Clone, Debug)]
struct Triple {
    e: Vec<Q>,
    f: Vec<Q>,
    h: Vec<Q>,
}

/// Levi factor data: lifts of a quotient basis spanning a subalgebra
/// complementary to the radical.
#[derive(Clone, Debug)]
struct Levi {
    radical: Vec<Vec<Q>>,
    lifts: Vec<Vec<Q>>,
    quotient: StructureConstants,
    triple: Option<Triple>,
}

impl Levi {
    fn lift(&self, x: &[Q], n: usize) -> Vec<Q> {
        linalg::combine(x, &self.lifts, n)
    }
}

/// Levi subalgebra by successive linear corrections along the derived
/// series of the radical; `None` for solvable algebras.
fn levi_decomposition(sc: &StructureConstants) -> Result<Option<Levi>, LieError> {
    let n = sc.dim();
    let radical = sc.radical();
    let s = n - radical.len();
    if s == 0 {
        return Ok(None);
    }
    let proj = Projector::new(&radical, n);
    let comp: Vec<Vec<Q>> = proj.complement().to_vec();
    let labels: Vec<String> = comp
        .iter()
        .map(|v| {
            let i = v.iter().position(|x| !x.is_zero()).expect("unit vector");
            format!("{}~", sc.labels[i])
        })
        .collect();
    let mut quotient = StructureConstants::zero(labels);
    for i in 0..s {
        for j in 0..s {
            quotient.c[i][j] = proj.complement_coords(&sc.bracket(&comp[i], &comp[j]));
        }
    }

    let mut series = vec![radical.clone()];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_empty() {
            break;
        }
        let next = sc.bracket_span(last, last);
        if next.len() == last.len() {
            return Err(LieError::Levi("radical is not solvable".into()));
        }
        series.push(next);
    }

    let mut lifts = comp;
    for k in 0..series.len() - 1 {
        let rk = &series[k];
        let pk = Projector::new(&series[k + 1], n);
        let r = rk.len();
        let unknowns = s * r;
        let mut rows: Matrix = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                let target = linalg::combine(&quotient.c[i][j], &lifts, n);
                let err = linalg::sub(&sc.bracket(&lifts[i], &lifts[j]), &target);
                let err_c = pk.complement_coords(&err);
                // contribution of unknown (p, m): z_p += R_k[m]
                let mut cols: Vec<Vec<Q>> = Vec::with_capacity(unknowns);
                for p in 0..s {
                    for m in 0..r {
                        let mut v = vec![Q::zero(); n];
                        if p == j {
                            v = linalg::add(&v, &sc.bracket(&lifts[i], &rk[m]));
                        }
                        if p == i {
                            v = linalg::sub(&v, &sc.bracket(&lifts[j], &rk[m]));
                        }
                        v = linalg::sub(&v, &linalg::scale(&rk[m], &quotient.c[i][j][p]));
                        cols.push(pk.complement_coords(&v));
                    }
                }
                for (row_idx, e) in err_c.iter().enumerate() {
                    rows.push(cols.iter().map(|c| c[row_idx].clone()).collect());
                    rhs.push(-e.clone());
                }
            }
        }
        if rows.is_empty() {
            continue;
        }
        let sol = linalg::solve(&rows, &rhs)
            .ok_or_else(|| LieError::Levi(format!("no correction at depth {k}")))?;
        for p in 0..s {
            let z = linalg::combine(&sol[p * r..(p + 1) * r], rk, n);
            lifts[p] = linalg::add(&lifts[p], &z);
        }
    }
    for i in 0..s {
        for j in 0..s {
            let lhs = sc.bracket(&lifts[i], &lifts[j]);
            let rhs = linalg::combine(&quotient.c[i][j], &lifts, n);
            if lhs != rhs {
                return Err(LieError::Levi("lifted brackets do not close".into()));
            }
        }
    }
    let triple = if s == 3 { sl2_triple(&quotient) } else { None };
    Ok(Some(Levi {
        radical,
        lifts,
        quotient,
        triple,
    }))
}

/// Integer vectors of dimension `d` with entries in `−k..=k`, by height.
fn small_vectors(d: usize, k: i64) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    for height in 1..=k {
        let mut cur = vec![-height; d];
        loop {
            if cur.iter().any(|x| x.abs() == height) {
                out.push(cur.iter().map(|&x| qi(x)).collect());
            }
            let mut idx = 0;
            loop {
                if idx == d {
                    break;
                }
                if cur[idx] < height {
                    cur[idx] += 1;
                    break;
                }
                cur[idx] = -height;
                idx += 1;
            }
            if idx == d {
                break;
            }
        }
    }
    out
}

fn trace(m: &Matrix) -> Q {
    (0..m.len()).fold(Q::zero(), |acc, i| acc + &m[i][i])
}

/// Split sl2 triple in a three-dimensional simple algebra, if one is found.
fn sl2_triple(sc: &StructureConstants) -> Option<Triple> {
    let d = sc.dim();
    let try_h = |x: &[Q]| -> Option<Triple> {
        let ad = sc.ad(x);
        let mu2 = trace(&linalg::mat_mul(&ad, &ad)) / qi(2);
        if mu2 <= Q::zero() {
            return None;
        }
        let mu = q_sqrt(&mu2)?;
        let h = linalg::scale(x, &(qi(2) / mu));
        let adh = sc.ad(&h);
        let shifted = |lam: i64| -> Matrix {
            let mut m = adh.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] -= qi(lam);
            }
            m
        };
        let es = linalg::nullspace(&shifted(2), d);
        let fs = linalg::nullspace(&shifted(-2), d);
        let (e, f0) = (es.first()?.clone(), fs.first()?.clone());
        let ef = sc.bracket(&e, &f0);
        let k = h.iter().position(|x| !x.is_zero())?;
        let alpha = &ef[k] / &h[k];
        if alpha.is_zero() || linalg::scale(&h, &alpha) != ef {
            return None;
        }
        let f = linalg::scale(&f0, &alpha.recip());
        Some(Triple { e, f, h })
    };
    let cands = small_vectors(d, 4);
    let mut nilpotent = Vec::new();
    for x in &cands {
        if let Some(t) = try_h(x) {
            return Some(t);
        }
        let ad = sc.ad(x);
        if !ad.iter().flatten().all(Zero::is_zero)
            && trace(&linalg::mat_mul(&ad, &ad)).is_zero()
            && nilpotent.len() < 16
        {
            nilpotent.push(x.clone());
        }
    }
    for a in &nilpotent {
        for b in &nilpotent {
            if let Some(t) = try_h(&sc.bracket(a, b)) {
                return Some(t);
            }
        }
    }
    None
}

/// Elements `x` of span(`space`) solving `[a_i, x] = λ_i x` for all `i`.
fn joint_eigen(sc: &StructureConstants, space: &[Vec<Q>], conds: &[(&[Q], i64)]) -> Vec<Vec<Q>> {
    let n = sc.dim();
    let r = space.len();
    let mut rows: Matrix = Vec::new();
    for (a, lam) in conds {
        let cols: Vec<Vec<Q>> = space
            .iter()
            .map(|v| linalg::sub(&sc.bracket(a, v), &linalg::scale(v, &qi(*lam))))
            .collect();
        for i in 0..n {
            rows.push(cols.iter().map(|c| c[i].clone()).collect());
        }
    }
    linalg::nullspace(&rows, r)
        .iter()
        .map(|c| linalg::combine(c, space, n))
        .collect()
}

/// Normal form of the algebra within the reference set.
pub fn normal_form(sc: &StructureConstants) -> Option<NormalForm> {
    let levi = levi_decomposition(sc).ok()?;
    normal_form_with(sc, levi.as_ref())
}

fn normal_form_with(sc: &StructureConstants, levi: Option<&Levi>) -> Option<NormalForm> {
    let n = sc.dim();
    let nf = |reference: ReferenceAlgebra, basis: Vec<Vec<Q>>| {
        let f = NormalForm { reference, basis };
        (linalg::span_rank(&f.basis) == n
            && check_morphism(&f.to_reference(), sc, &f.reference.constants))
        .then_some(f)
    };
    if sc.is_abelian() {
        return nf(reference::abelian(n), linalg::identity(n));
    }
    let center = sc.center();
    match levi {
        None => {
            if n == 3 {
                return iso2_form(sc).and_then(|b| nf(reference::iso2(), b));
            }
            if n == 4 && center.len() == 1 {
                let q = sc.quotient(&center).ok()?;
                let qb = iso2_form(&q.constants)?;
                let lift = |v: &[Q]| {
                    let mut out = vec![Q::zero(); n];
                    for (c, &i) in v.iter().zip(&q.representatives) {
                        out[i] = c.clone();
                    }
                    out
                };
                let e3 = lift(&qb[2]);
                let e1 = sc.bracket(&e3, &lift(&qb[0]));
                let e2 = linalg::scale(&sc.bracket(&e3, &lift(&qb[1])), &-Q::one());
                let z = sc.bracket(&e1, &e2);
                return nf(reference::iso2_central(), vec![e1, e2, e3, z]);
            }
            None
        }
        Some(l) => {
            let t = l.triple.as_ref()?;
            let (e, f, h) = (l.lift(&t.e, n), l.lift(&t.f, n), l.lift(&t.h, n));
            let rad = &l.radical;
            match (n, rad.len(), center.len()) {
                (3, 0, _) => nf(reference::sl2(), vec![e, f, h]),
                (4, 1, 1) => nf(reference::n_algebra(), vec![e, f, h, center[0].clone()]),
                (6, 3, 1) => {
                    let w = joint_eigen(sc, rad, &[(&e, 0), (&h, 1)]);
                    if w.len() != 1 {
                        return None;
                    }
                    let x = w[0].clone();
                    let y = sc.bracket(&f, &x);
                    let z = sc.bracket(&x, &y);
                    nf(reference::m_algebra(), vec![e, f, h, x, y, z])
                }
                (9, 6, 1) => {
                    let w = joint_eigen(sc, rad, &[(&e, 0), (&h, 1)]);
                    let cent = joint_eigen(sc, rad, &[(&e, 0), (&f, 0), (&h, 0)]);
                    if w.len() != 2 {
                        return None;
                    }
                    let r0 = cent.iter().find(|v| !linalg::in_span(&center, v))?.clone();
                    // ad_r on W, normalized so that its square is −1
                    let a: Matrix = linalg::transpose(
                        &w.iter()
                            .map(|v| linalg::coords_in(&w, &sc.bracket(&r0, v)))
                            .collect::<Option<Vec<_>>>()?,
                    );
                    let a2 = linalg::mat_mul(&a, &a);
                    let c = -a2[0][0].clone();
                    if a2 != linalg::scale_matrix(&linalg::identity(2), &-c.clone()) {
                        return None;
                    }
                    let nu = q_sqrt(&c).filter(|x| !x.is_zero())?;
                    let r = linalg::scale(&r0, &nu.recip());
                    let x1 = w[0].clone();
                    let x2 = sc.bracket(&r, &x1);
                    let y1 = sc.bracket(&f, &x1);
                    let y2 = sc.bracket(&f, &x2);
                    let z = sc.bracket(&x1, &y1);
                    nf(reference::j6_algebra(), vec![e, f, h, r, x1, y1, x2, y2, z])
                }
                _ => None,
            }
        }
    }
}

/// `[e1, e2, e3]` with `[e3,e1] = e1`, `[e3,e2] = −e2`, `[e1,e2] = 0`.
fn iso2_form(sc: &StructureConstants) -> Option<Vec<Vec<Q>>> {
    let n = sc.dim();
    let d = sc.derived();
    if n != 3 || d.len() != 2 || !sc.bracket(&d[0], &d[1]).iter().all(Zero::is_zero) {
        return None;
    }
    let proj = Projector::new(&d, n);
    let x = proj.complement()[0].clone();
    let a: Matrix = linalg::transpose(
        &d.iter()
            .map(|v| linalg::coords_in(&d, &sc.bracket(&x, v)))
            .collect::<Option<Vec<_>>>()?,
    );
    if !trace(&a).is_zero() {
        return None;
    }
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    let mu = q_sqrt(&-det).filter(|m| !m.is_zero())?;
    let e3 = linalg::scale(&x, &mu.recip());
    let eig = |lam: i64| -> Option<Vec<Q>> {
        let mut m = linalg::scale_matrix(&a, &mu.recip());
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= qi(lam);
        }
        let ns = linalg::nullspace(&m, 2);
        Some(linalg::combine(ns.first()?, &d, n))
    };
    Some(vec![eig(1)?, eig(-1)?, e3])
}

/// An isomorphism `a → b` through a shared normal form.
pub fn find_isomorphism(a: &StructureConstants, b: &StructureConstants) -> Option<LinearMap> {
    let na = normal_form(a)?;
    let nb = normal_form(b)?;
    if na.reference != nb.reference {
        return None;
    }
    // a → reference → b
    let to_b = LinearMap::new(nb.basis.clone());
    let m = na.to_reference().compose(&to_b);
    check_morphism(&m, a, b).then_some(m)
}
