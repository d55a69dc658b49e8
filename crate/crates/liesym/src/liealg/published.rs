//! Published reference data for the algebras: explicit isomorphisms, the
//! declared inclusions and isomorphism classes, and a diff against the
//! published commutator tables.

use serde::Serialize;

use super::reference::{self, ReferenceAlgebra};
use super::{
    check_morphism, commutator_table, find_isomorphism, inclusion_check, linalg,
    symbolic_commutator_table, LieError, LinearMap, Witness, WitnessSource,
};
use crate::generators::{basis_for, basis_symbolic, published_table, ParamCase};
use crate::symexpr::{parse, q, qi, Atom, Param, ParamPoly, Q};

/// Where a published map is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PublishedMapDomain {
    /// The whole algebra.
    Full,
    /// The quotient by the span of the listed basis indices (0-based).
    Quotient(Vec<usize>),
}

/// An explicit map from the published analysis, written as images of the
/// (classes of the) basis fields in reference coordinates.
#[derive(Clone, Debug)]
pub struct PublishedMap {
    pub case_id: &'static str,
    pub description: &'static str,
    pub domain: PublishedMapDomain,
    pub reference: ReferenceAlgebra,
    /// Images at the given sample, one row per domain basis element.
    pub images: fn(&[Q; 4]) -> Vec<Vec<Q>>,
    /// Parameter values the map is stated for, when they differ from the
    /// canonical sample of the case.
    pub sample: Option<fn() -> [Q; 4]>,
}

fn b_of(s: &[Q; 4]) -> Q {
    s[Param::B.index()].clone()
}

fn sl2_quotient_b(s: &[Q; 4]) -> Vec<Vec<Q>> {
    let b = b_of(s);
    vec![
        vec![-b.clone(), qi(0), qi(0)],
        vec![qi(0), b.clone(), qi(0)],
        vec![qi(0), qi(0), b * q(1, 2)],
    ]
}

fn sl2_quotient_zero(_: &[Q; 4]) -> Vec<Vec<Q>> {
    vec![
        vec![qi(1), qi(0), qi(0)],
        vec![qi(0), qi(0), q(1, 2)],
        vec![qi(0), qi(-1), qi(0)],
    ]
}

fn n_map(s: &[Q; 4]) -> Vec<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = sl2_quotient_b(s)
        .into_iter()
        .map(|mut r| {
            r.push(qi(0));
            r
        })
        .collect();
    rows.push(vec![qi(0), qi(0), qi(0), qi(1)]);
    rows
}

fn m_map(s: &[Q; 4]) -> Vec<Vec<Q>> {
    let b = b_of(s);
    let mut rows = linalg::identity(6);
    rows[1] = linalg::scale(&linalg::unit(6, 1), &-(&b * &b));
    rows[2] = linalg::scale(&linalg::unit(6, 2), &(&b * q(1, 2)));
    rows[4] = linalg::scale(&linalg::unit(6, 4), &-b);
    rows
}

/// `e1 → v̄4, e2 → v̄6, e3 → (2/e) v̄1` on the quotient by `⟨v2, v3, v5⟩`,
/// inverted to a map from the quotient basis `(v̄1, v̄4, v̄6)`.
fn iso2_degenerate(s: &[Q; 4]) -> Vec<Vec<Q>> {
    let e = s[Param::E.index()].clone();
    // reference → quotient coordinates (v̄1, v̄4, v̄6)
    let fwd = vec![
        vec![qi(0), qi(1), qi(0)],
        vec![qi(0), qi(0), qi(1)],
        vec![qi(2) / e, qi(0), qi(0)],
    ];
    linalg::transpose(&linalg::inverse(&linalg::transpose(&fwd)).expect("invertible"))
}

fn b_zero_sample() -> [Q; 4] {
    [q(1, 4), qi(0), q(1, 4), qi(2)]
}

/// Every explicit map stated in the published analysis.
pub fn published_witnesses() -> Vec<PublishedMap> {
    vec![
        PublishedMap {
            case_id: "3.2",
            description: "v1 -> E, v2 -> -b^2 F, v3 -> (b/2) H, v4 -> X, v5 -> -b Y, v6 -> Z",
            domain: PublishedMapDomain::Full,
            reference: reference::m_algebra(),
            images: m_map,
            sample: None,
        },
        PublishedMap {
            case_id: "2.2",
            description: "v1 -> -b E, v2 -> b F, v3 -> (b/2) H, v4 -> Z",
            domain: PublishedMapDomain::Full,
            reference: reference::n_algebra(),
            images: n_map,
            sample: None,
        },
        PublishedMap {
            case_id: "1.2",
            description: "quotient by <v4..v9>: v1 -> -b E, v2 -> b F, v3 -> (b/2) H",
            domain: PublishedMapDomain::Quotient((3..9).collect()),
            reference: reference::sl2(),
            images: sl2_quotient_b,
            sample: None,
        },
        PublishedMap {
            case_id: "1.4",
            description: "quotient by <v4..v9>: v1 -> E, v2 -> H/2, v3 -> -F",
            domain: PublishedMapDomain::Quotient((3..9).collect()),
            reference: reference::sl2(),
            images: sl2_quotient_zero,
            sample: None,
        },
        PublishedMap {
            case_id: "1.1",
            description: "b = 0, quotient by <v2, v3, v5>: e1 -> v4, e2 -> v6, e3 -> (2/e) v1",
            domain: PublishedMapDomain::Quotient(vec![1, 2, 4]),
            reference: reference::iso2(),
            images: iso2_degenerate,
            sample: Some(b_zero_sample),
        },
    ]
}

impl PublishedMap {
    /// Check the map on the catalog basis of `case`, moved to the stated
    /// sample if there is one; errors propagate (for instance a degenerate
    /// basis at the sample).
    pub fn verify(&self, case: &ParamCase) -> Result<bool, LieError> {
        let case = match self.sample {
            Some(f) => case.with_sample(f())?,
            None => case.clone(),
        };
        let sc = commutator_table(&basis_for(&case))?;
        let map = LinearMap::new((self.images)(&case.sample));
        match &self.domain {
            PublishedMapDomain::Full => Ok(check_morphism(&map, &sc, &self.reference.constants)),
            PublishedMapDomain::Quotient(ideal) => {
                let n = sc.dim();
                let vecs: Vec<Vec<Q>> = ideal.iter().map(|&i| linalg::unit(n, i)).collect();
                let quo = sc.quotient(&vecs)?;
                Ok(check_morphism(
                    &map,
                    &quo.constants,
                    &self.reference.constants,
                ))
            }
        }
    }

    /// As a full-algebra witness, when the domain is the whole algebra.
    pub fn witness(&self, case: &ParamCase, labels: &[String]) -> Option<Witness> {
        (self.domain == PublishedMapDomain::Full).then(|| Witness {
            target: self.reference.name.clone(),
            domain_labels: labels.to_vec(),
            target_labels: self.reference.labels().to_vec(),
            map: LinearMap::new((self.images)(&case.sample)),
            source: WitnessSource::Published,
        })
    }
}

/// Declared inclusions `small ⊂ large` between case algebras.
pub fn inclusion_chains() -> Vec<(&'static str, &'static str)> {
    vec![
        ("2.1", "3.1"),
        ("3.1", "1.1"),
        ("2.1", "4.1"),
        ("4.1", "1.1"),
        ("2.2", "3.2"),
        ("3.2", "1.2"),
        ("2.2", "4.2"),
        ("4.2", "1.2"),
        ("2.3", "3.3"),
        ("3.3", "1.3"),
        ("2.3", "4.3"),
        ("4.3", "1.3"),
    ]
}

/// Declared isomorphism classes of case algebras.
pub fn isomorphism_classes() -> Vec<Vec<&'static str>> {
    vec![
        vec!["2.2", "2.3", "2.4"],
        vec!["3.2", "3.3", "3.4", "4.2", "4.3", "4.4"],
        vec!["3.1", "4.1"],
        vec!["1.2", "1.3", "1.4"],
    ]
}

/// Outcome of one declared isomorphism or inclusion.
#[derive(Clone, Debug, Serialize)]
pub struct GridCheck {
    pub kind: &'static str,
    pub left: String,
    pub right: String,
    pub holds: bool,
    /// Images of the basis of `left` in the basis of `right`.
    pub witness: Option<Vec<String>>,
    pub error: Option<String>,
}

fn isomorphism_check(left: &str, right: &str) -> Result<GridCheck, LieError> {
    let table = |id: &str| -> Result<_, LieError> {
        commutator_table(&basis_for(&ParamCase::canonical(id)?))
    };
    let (a, b) = (table(left)?, table(right)?);
    let map = find_isomorphism(&a, &b).filter(|m| check_morphism(m, &a, &b));
    Ok(GridCheck {
        kind: "isomorphism",
        left: left.into(),
        right: right.into(),
        holds: map.is_some(),
        witness: map.map(|m| m.describe(&a.labels, &b.labels)),
        error: None,
    })
}

fn inclusion_grid_check(small: &str, large: &str) -> Result<GridCheck, LieError> {
    let s = basis_symbolic(&ParamCase::canonical(small)?);
    let l = basis_for(&ParamCase::canonical(large)?);
    Ok(GridCheck {
        kind: "inclusion",
        left: small.into(),
        right: large.into(),
        holds: inclusion_check(&s, &l)?,
        witness: None,
        error: None,
    })
}

/// Every declared isomorphism (each class member against the first) and
/// every declared inclusion.
pub fn verify_grid() -> Vec<GridCheck> {
    let failed = |kind, l: &str, r: &str, e: LieError| GridCheck {
        kind,
        left: l.into(),
        right: r.into(),
        holds: false,
        witness: None,
        error: Some(e.to_string()),
    };
    let mut out = Vec::new();
    for class in isomorphism_classes() {
        for other in &class[1..] {
            out.push(
                isomorphism_check(class[0], other)
                    .unwrap_or_else(|e| failed("isomorphism", class[0], other, e)),
            );
        }
    }
    for (s, l) in inclusion_chains() {
        out.push(inclusion_grid_check(s, l).unwrap_or_else(|e| failed("inclusion", s, l, e)));
    }
    out
}

/// One disagreeing cell of a published commutator table.
#[derive(Clone, Debug, Serialize)]
pub struct CellDiff {
    pub i: usize,
    pub j: usize,
    pub published: String,
    pub computed: String,
}

/// Entry-wise comparison of a recomputed table with the published one.
#[derive(Clone, Debug, Serialize)]
pub struct TableDiff {
    pub case_id: String,
    pub compared: usize,
    pub diffs: Vec<CellDiff>,
}

const PLACEHOLDERS: [&str; 9] = [
    "u_x", "u_y", "u_t", "u_xx", "u_xy", "u_xt", "u_yy", "u_yt", "u_tt",
];

/// Coefficients of a cell such as `-2*b*v3 + (1/2)*v9`.
pub fn parse_cell(cell: &str, n: usize) -> Result<Vec<ParamPoly>, LieError> {
    let bad = || LieError::Cell(cell.to_string());
    let mut text = String::new();
    let mut chars = cell.chars().peekable();
    while let Some(c) = chars.next() {
        if c == 'v' && chars.peek().is_some_and(|d| d.is_ascii_digit()) {
            let d = chars.next().and_then(|d| d.to_digit(10)).ok_or_else(bad)? as usize;
            if d == 0 || d > n || d > PLACEHOLDERS.len() {
                return Err(bad());
            }
            text.push_str(PLACEHOLDERS[d - 1]);
        } else {
            text.push(c);
        }
    }
    let e = parse(&text).map_err(|_| bad())?;
    let mut out = vec![ParamPoly::zero(); n];
    for (m, p) in e.terms() {
        let pows: Vec<(Atom, i32)> = m.pows().collect();
        let [(Atom::Jet(j), 2)] = pows.as_slice() else {
            return Err(bad());
        };
        let name = Atom::Jet(*j).to_string();
        let k = PLACEHOLDERS
            .iter()
            .position(|s| *s == name)
            .ok_or_else(bad)?;
        out[k] = out[k].add(p);
    }
    Ok(out)
}

/// Compare the recomputed symbolic table of `case` with the published one.
pub fn published_diff(case: &ParamCase) -> Result<TableDiff, LieError> {
    let id = case.id();
    let table = published_table(&id).ok_or_else(|| LieError::Cell(format!("no table for {id}")))?;
    let basis = basis_symbolic(case);
    let cons = case.family_constraints();
    let n = basis.dimension();
    let sym = symbolic_commutator_table(&basis, &cons)?;
    let exact = match &sym {
        Some(_) => None,
        None => Some(commutator_table(&basis)?),
    };
    let mut diffs = Vec::new();
    let mut compared = 0;
    for (i, row) in table.rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let published: Vec<ParamPoly> = parse_cell(cell, n)?
                .into_iter()
                .map(|p| p.subst(&cons))
                .collect();
            compared += 1;
            let (same, computed) = match (&sym, &exact) {
                (Some(t), _) => (t.c[i][j] == published, t.cell(i, j)),
                (None, Some(sc)) => {
                    let at: Vec<Q> = published
                        .iter()
                        .map(|p| p.eval_exact(&case.sample))
                        .collect();
                    (
                        sc.c[i][j] == at,
                        super::format_combination(&sc.c[i][j], &sc.labels),
                    )
                }
                (None, None) => unreachable!("one of the tables exists"),
            };
            if !same {
                diffs.push(CellDiff {
                    i,
                    j,
                    published: cell.to_string(),
                    computed,
                });
            }
        }
    }
    Ok(TableDiff {
        case_id: id,
        compared,
        diffs,
    })
}
