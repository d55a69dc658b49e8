//! Solutions as evaluable functions, their transport along symmetry flows and
//! finite-difference residual checks.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{FlowError, FlowMap};
use crate::symexpr::{parse, Atom, Compiled, Q};

type EvalFn = dyn Fn([f64; 3]) -> Result<f64, FlowError> + Send + Sync;

/// `u(x, y, t)` together with the chain of operations that produced it.
#[derive(Clone)]
pub struct SolutionFn {
    f: Arc<EvalFn>,
    pub provenance: Vec<String>,
}

impl fmt::Debug for SolutionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SolutionFn({})", self.provenance.join(" -> "))
    }
}

impl SolutionFn {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn([f64; 3]) -> Result<f64, FlowError> + Send + Sync + 'static,
    ) -> Self {
        SolutionFn {
            f: Arc::new(f),
            provenance: vec![label.into()],
        }
    }

    /// `u ≡ 1`.
    pub fn one() -> Self {
        SolutionFn::new("one", |_| Ok(1.0))
    }

    /// A closed form in `x, y, t` with parameters bound at `sample`.
    pub fn from_expr(src: &str, sample: &[Q; 4]) -> Result<Self, FlowError> {
        let e = parse(src)?;
        if e.atoms()
            .iter()
            .any(|a| !matches!(a, Atom::X | Atom::Y | Atom::T))
        {
            return Err(FlowError::Eval(format!(
                "{src}: expected a function of x, y, t"
            )));
        }
        let c = Compiled::new(&e, sample);
        Ok(SolutionFn::new(src, move |[x, y, t]| {
            Ok(c.eval_point([x, y, t, 0.0])?)
        }))
    }

    pub fn eval(&self, p: [f64; 3]) -> Result<f64, FlowError> {
        (self.f)(p)
    }

    /// `(x, y, t) ↦ u(x, y, t + s)`.
    pub fn shift_t(&self, s: f64) -> Self {
        let f = self.f.clone();
        let mut provenance = self.provenance.clone();
        provenance.push(format!("t -> t + {s}"));
        SolutionFn {
            f: Arc::new(move |[x, y, t]| f([x, y, t + s])),
            provenance,
        }
    }
}

/// `u^{ε,v}`: pull the point back along the base flow, evaluate `u` there
/// and push the value forward. Every catalog flow moves `(x, y, t)`
/// independently of `u`, so the pullback uses `u = 1`.
pub fn transform_solution(flow: &FlowMap, u: &SolutionFn, eps: f64) -> SolutionFn {
    let flow = flow.clone();
    let f = u.f.clone();
    let mut provenance = u.provenance.clone();
    provenance.push(format!("exp({eps} {} of {})", flow.label, flow.case_id));
    SolutionFn {
        f: Arc::new(move |[x, y, t]| {
            let [x0, y0, t0, _] = flow.apply([x, y, t, 1.0], -eps)?;
            let u0 = f([x0, y0, t0])?;
            Ok(flow.apply([x0, y0, t0, u0], eps)?[3])
        }),
        provenance,
    }
}

/// Equation a residual is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pde {
    /// `u_t + (a − bx)u_x + (d − ey)u_y + (x/2)u_xx + (y/2)u_yy = 0` with `[a, b, d, e]`.
    Ls([f64; 4]),
    /// `u_t = u_xx`.
    Heat,
}

/// Finite-difference settings; steps are `h · max(1, |coordinate|)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FdConfig {
    /// Step for first derivatives.
    pub h1: f64,
    /// Step for second derivatives.
    pub h2: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        // with h = 1e-5 the second differences carry roundoff of order 1e-6 |u|,
        // which pushes some sweeps past 1e-5; a wider step removes it
        FdConfig { h1: 1e-5, h2: 1e-4 }
    }
}

fn shifted(p: [f64; 3], k: usize, s: f64) -> [f64; 3] {
    let mut q = p;
    q[k] += s;
    q
}

/// Central first and second differences along coordinate `k`.
fn derivs(
    u: &SolutionFn,
    p: [f64; 3],
    k: usize,
    u0: f64,
    fd: &FdConfig,
) -> Result<(f64, f64), FlowError> {
    let scale = p[k].abs().max(1.0);
    let h = fd.h1 * scale;
    let d1 = (u.eval(shifted(p, k, h))? - u.eval(shifted(p, k, -h))?) / (2.0 * h);
    let h = fd.h2 * scale;
    let d2 = (u.eval(shifted(p, k, h))? - 2.0 * u0 + u.eval(shifted(p, k, -h))?) / (h * h);
    Ok((d1, d2))
}

/// Absolute equation residual of `u` at `p = (x, y, t)`.
pub fn residual(pde: &Pde, u: &SolutionFn, p: [f64; 3], fd: &FdConfig) -> Result<f64, FlowError> {
    let u0 = u.eval(p)?;
    let [x, y, t] = p;
    let h = fd.h1 * t.abs().max(1.0);
    let ut = (u.eval([x, y, t + h])? - u.eval([x, y, t - h])?) / (2.0 * h);
    let (ux, uxx) = derivs(u, p, 0, u0, fd)?;
    Ok(match *pde {
        Pde::Ls([a, b, d, e]) => {
            let (uy, uyy) = derivs(u, p, 1, u0, fd)?;
            (ut + (a - b * x) * ux + (d - e * y) * uy + x / 2.0 * uxx + y / 2.0 * uyy).abs()
        }
        Pde::Heat => (ut - uxx).abs(),
    })
}

/// Tensor grid `xs × ys × ts` of evenly spaced points, endpoints included.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepGrid {
    pub x: (f64, f64, usize),
    pub y: (f64, f64, usize),
    pub t: (f64, f64, usize),
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            x: (0.5, 5.0, 10),
            y: (0.5, 5.0, 10),
            t: (-1.0, 1.0, 10),
        }
    }
}

fn linspace((lo, hi, n): (f64, f64, usize)) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

impl SweepGrid {
    pub fn points(&self) -> Vec<[f64; 3]> {
        let (xs, ys, ts) = (linspace(self.x), linspace(self.y), linspace(self.t));
        let mut out = Vec::with_capacity(xs.len() * ys.len() * ts.len());
        for &x in &xs {
            for &y in &ys {
                for &t in &ts {
                    out.push([x, y, t]);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub point: [f64; 3],
    pub residual: f64,
}

/// Residual sweep of one transformed solution.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub case_id: String,
    pub generator: String,
    pub eps: f64,
    pub grid: SweepGrid,
    pub points: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Residual of `u` at every grid point; points above `tol` are violations.
/// The first evaluation error (for example a validity failure) aborts.
pub fn sweep(
    pde: &Pde,
    u: &SolutionFn,
    grid: &SweepGrid,
    tol: f64,
    fd: &FdConfig,
    case_id: &str,
    generator: &str,
    eps: f64,
) -> Result<SweepReport, FlowError> {
    let pts = grid.points();
    let mut max = 0.0f64;
    let mut sum = 0.0;
    let mut violations = Vec::new();
    for &p in &pts {
        let r = residual(pde, u, p, fd)?;
        // NaN counts as a violation
        if !(r <= tol) {
            violations.push(Violation {
                point: p,
                residual: r,
            });
        }
        max = if r.is_nan() { f64::NAN } else { max.max(r) };
        sum += r;
    }
    Ok(SweepReport {
        case_id: case_id.to_string(),
        generator: generator.to_string(),
        eps,
        grid: grid.clone(),
        points: pts.len(),
        max_residual: max,
        mean_residual: if pts.is_empty() {
            0.0
        } else {
            sum / pts.len() as f64
        },
        tolerance: tol,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::zero_sample;

    #[test]
    fn residual_examples() {
        let fd = FdConfig::default();
        let pde = Pde::Ls([0.25, 0.0, 0.5, 1.0]);
        let one = SolutionFn::one();
        assert_eq!(residual(&pde, &one, [1.0, 2.0, 0.0], &fd).unwrap(), 0.0);
        let x = SolutionFn::from_expr("x", &zero_sample()).unwrap();
        for p in [[1.0, 2.0, 0.0], [3.5, 0.7, -0.4]] {
            assert!((residual(&pde, &x, p, &fd).unwrap() - 0.25).abs() < 1e-9);
        }
    }

    #[test]
    fn grid_layout() {
        let g = SweepGrid::default();
        let pts = g.points();
        assert_eq!(pts.len(), 1000);
        assert_eq!(pts[0], [0.5, 0.5, -1.0]);
        assert_eq!(pts[999], [5.0, 5.0, 1.0]);
    }

    #[test]
    fn shift_and_parse() {
        let u = SolutionFn::from_expr("x + t^2", &zero_sample()).unwrap();
        assert_eq!(u.shift_t(1.0).eval([2.0, 0.0, 1.0]).unwrap(), 6.0);
        assert!(SolutionFn::from_expr("u_x", &zero_sample()).is_err());
    }
}
