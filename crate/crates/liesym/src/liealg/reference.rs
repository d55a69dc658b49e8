//! Reference algebras used as identification targets.

use serde::Serialize;

use super::structure::StructureConstants;
use crate::symexpr::{qi, Q};

/// Names reported by the structure identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AlgebraName {
    #[serde(rename = "abelian_n")]
    Abelian,
    #[serde(rename = "iso2")]
    Iso2,
    #[serde(rename = "sl2")]
    Sl2,
    #[serde(rename = "sl2_x_R")]
    Sl2xR,
    #[serde(rename = "sl2_semidirect_h3")]
    Sl2SemidirectH3,
    #[serde(rename = "sl2_semidirect_J6")]
    Sl2SemidirectJ6,
    #[serde(rename = "unknown")]
    Unknown,
}

impl AlgebraName {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraName::Abelian => "abelian_n",
            AlgebraName::Iso2 => "iso2",
            AlgebraName::Sl2 => "sl2",
            AlgebraName::Sl2xR => "sl2_x_R",
            AlgebraName::Sl2SemidirectH3 => "sl2_semidirect_h3",
            AlgebraName::Sl2SemidirectJ6 => "sl2_semidirect_J6",
            AlgebraName::Unknown => "unknown",
        }
    }
}

/// A named algebra with a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceAlgebra {
    pub name: String,
    pub constants: StructureConstants,
}

impl ReferenceAlgebra {
    pub fn labels(&self) -> &[String] {
        &self.constants.labels
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }
}

/// `[i, j] = coef · k`.
type Bracket = (usize, usize, usize, i64);

fn build(name: &str, labels: &[&str], brackets: &[Bracket]) -> ReferenceAlgebra {
    let owned: Vec<(usize, usize, [(usize, Q); 1])> = brackets
        .iter()
        .map(|&(i, j, k, v)| (i, j, [(k, qi(v))]))
        .collect();
    let refs: Vec<(usize, usize, &[(usize, Q)])> = owned
        .iter()
        .map(|(i, j, t)| (*i, *j, t.as_slice()))
        .collect();
    ReferenceAlgebra {
        name: name.to_string(),
        constants: StructureConstants::from_brackets(labels, &refs),
    }
}

pub fn abelian(n: usize) -> ReferenceAlgebra {
    ReferenceAlgebra {
        name: format!("abelian_{n}"),
        constants: StructureConstants::zero((1..=n).map(|i| format!("e{i}")).collect()),
    }
}

/// `[E,F] = H`, `[H,E] = 2E`, `[H,F] = −2F`.
pub fn sl2() -> ReferenceAlgebra {
    build(
        "sl2",
        &["E", "F", "H"],
        &[(0, 1, 2, 1), (2, 0, 0, 2), (2, 1, 1, -2)],
    )
}

/// `[X,Y] = Z`.
pub fn h3() -> ReferenceAlgebra {
    build("h3", &["X", "Y", "Z"], &[(0, 1, 2, 1)])
}

/// `L(3,2,x=−1)`: `[e3,e1] = e1`, `[e3,e2] = −e2`.
pub fn iso2() -> ReferenceAlgebra {
    build("iso2", &["e1", "e2", "e3"], &[(2, 0, 0, 1), (2, 1, 1, -1)])
}

const SL2_BRACKETS: [Bracket; 3] = [(0, 1, 2, 1), (2, 0, 0, 2), (2, 1, 1, -2)];

/// `N = ⟨E,F,H,Z⟩ ≅ sl2 × ℝ`.
pub fn n_algebra() -> ReferenceAlgebra {
    build("N", &["E", "F", "H", "Z"], &SL2_BRACKETS)
}

/// `M = ⟨E,F,H,X,Y,Z⟩ ≅ sl2 ⋉ h3` with the heat-equation bracket table.
pub fn m_algebra() -> ReferenceAlgebra {
    let mut b: Vec<Bracket> = SL2_BRACKETS.to_vec();
    b.extend_from_slice(&[
        (0, 4, 3, 1),  // [E,Y] = X
        (1, 3, 4, 1),  // [F,X] = Y
        (2, 3, 3, 1),  // [H,X] = X
        (2, 4, 4, -1), // [H,Y] = −Y
        (3, 4, 5, 1),  // [X,Y] = Z
    ]);
    build("M", &["E", "F", "H", "X", "Y", "Z"], &b)
}

/// `sl2 ⋉ J6` with `J6 = ⟨R, X1, Y1, X2, Y2, Z⟩`: two copies of the
/// two-dimensional representation sharing the center `Z`, and `R` rotating
/// the copies into each other.
pub fn j6_algebra() -> ReferenceAlgebra {
    let (e, f, h, r, x1, y1, x2, y2, z) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    let mut b: Vec<Bracket> = SL2_BRACKETS.to_vec();
    b.extend_from_slice(&[
        (e, y1, x1, 1),
        (e, y2, x2, 1),
        (f, x1, y1, 1),
        (f, x2, y2, 1),
        (h, x1, x1, 1),
        (h, x2, x2, 1),
        (h, y1, y1, -1),
        (h, y2, y2, -1),
        (x1, y1, z, 1),
        (x2, y2, z, 1),
        (r, x1, x2, 1),
        (r, x2, x1, -1),
        (r, y1, y2, 1),
        (r, y2, y1, -1),
    ]);
    build(
        "sl2_semidirect_J6",
        &["E", "F", "H", "R", "X1", "Y1", "X2", "Y2", "Z"],
        &b,
    )
}

/// Central extension of `iso2`: `[e3,e1] = e1`, `[e3,e2] = −e2`, `[e1,e2] = z`.
pub fn iso2_central() -> ReferenceAlgebra {
    build(
        "iso2_central",
        &["e1", "e2", "e3", "z"],
        &[(2, 0, 0, 1), (2, 1, 1, -1), (0, 1, 3, 1)],
    )
}

/// All named references.
pub fn all() -> Vec<ReferenceAlgebra> {
    vec![
        sl2(),
        h3(),
        iso2(),
        n_algebra(),
        m_algebra(),
        j6_algebra(),
        iso2_central(),
    ]
}
