//! One-parameter groups of the symmetry generators and transported solutions.
//!
//! Points are `[x, y, t, u]`; the heat fixture ignores `y`.

mod closed;
mod solution;

use serde::Serialize;

use crate::generators::{basis_for, heat_basis, ParamCase};
use crate::jet::VectorField;
use crate::symexpr::{qi, Compiled, SymError, Q};

pub use closed::{
    closed_form_flow, flow_catalog, flows_for, time_shift_flow, Axis, FlowKind, FlowMap, HeatKind,
};
pub use solution::{
    residual, sweep, transform_solution, FdConfig, Pde, SolutionFn, SweepGrid, SweepReport,
    Violation,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("trajectory left the domain x, y > 0 at eps = {eps}")]
    DomainExit { eps: f64 },
    #[error("flow of {generator} is not defined at {point:?} for eps = {eps}: {reason}")]
    Validity {
        generator: String,
        point: [f64; 4],
        eps: f64,
        reason: String,
    },
    #[error("case {case} has no generator {index}")]
    UnknownGenerator { case: String, index: usize },
    #[error("evaluation failed: {0}")]
    Eval(String),
    #[error(transparent)]
    Case(#[from] crate::generators::CaseError),
}

impl From<SymError> for FlowError {
    fn from(e: SymError) -> Self {
        FlowError::Eval(e.to_string())
    }
}

/// Fixed-step RK4 settings.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FlowConfig {
    pub step: f64,
    /// Stop with [`FlowError::DomainExit`] when `x` or `y` leaves `(0, ∞)`.
    pub positive_xy: bool,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            step: 1e-3,
            positive_xy: true,
        }
    }
}

/// A vector field with parameters bound, ready for integration.
#[derive(Clone, Debug)]
pub struct NumericField {
    comps: [Compiled; 4],
}

impl NumericField {
    pub fn new(v: &VectorField, sample: &[Q; 4]) -> Self {
        let [xi, gamma, tau, phi] = v.components();
        NumericField {
            comps: [
                Compiled::new(xi, sample),
                Compiled::new(gamma, sample),
                Compiled::new(tau, sample),
                Compiled::new(phi, sample),
            ],
        }
    }

    pub fn eval(&self, p: [f64; 4]) -> Result<[f64; 4], FlowError> {
        let mut out = [0.0; 4];
        for (o, c) in out.iter_mut().zip(&self.comps) {
            *o = c.eval_point(p)?;
        }
        Ok(out)
    }
}

/// Distance between two flow endpoints: absolute in `x, y, t`, relative to
/// `max(1, |u|)` in `u`. Every catalog flow acts on `u` by a factor, so `u` has
/// no fixed scale and can grow by orders of magnitude over a short flow.
pub fn flow_deviation(a: [f64; 4], b: [f64; 4]) -> f64 {
    let d = (0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max);
    d.max((a[3] - b[3]).abs() / a[3].abs().max(1.0))
}

fn axpy(p: [f64; 4], h: f64, k: [f64; 4]) -> [f64; 4] {
    [
        p[0] + h * k[0],
        p[1] + h * k[1],
        p[2] + h * k[2],
        p[3] + h * k[3],
    ]
}

/// Endpoint of `dp/dε = v(p)` after `eps`, by RK4 with step `cfg.step`.
pub fn integrate_flow(
    v: &NumericField,
    p0: [f64; 4],
    eps: f64,
    cfg: &FlowConfig,
) -> Result<[f64; 4], FlowError> {
    let n = (eps.abs() / cfg.step).ceil().max(1.0) as usize;
    let h = eps / n as f64;
    let outside = |p: [f64; 4]| cfg.positive_xy && (p[0] <= 0.0 || p[1] <= 0.0);
    let mut p = p0;
    for i in 0..n {
        let exit = FlowError::DomainExit { eps: i as f64 * h };
        let stage = |q: [f64; 4]| {
            if outside(q) {
                Err(exit.clone())
            } else {
                v.eval(q).map_err(|e| match e {
                    FlowError::Eval(_) if cfg.positive_xy => exit.clone(),
                    e => e,
                })
            }
        };
        let k1 = stage(p)?;
        let k2 = stage(axpy(p, h / 2.0, k1))?;
        let k3 = stage(axpy(p, h / 2.0, k2))?;
        let k4 = stage(axpy(p, h, k3))?;
        for j in 0..4 {
            p[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if outside(p) {
            return Err(FlowError::DomainExit {
                eps: (i + 1) as f64 * h,
            });
        }
    }
    Ok(p)
}

/// Parameter sample for fields without parameters.
pub fn zero_sample() -> [Q; 4] {
    std::array::from_fn(|_| qi(0))
}

/// Generator `index` (1-based) of a case id such as `"1.1"` or `"heat"`,
/// with the sample it is bound at.
pub fn generator_field(case_id: &str, index: usize) -> Result<(VectorField, [Q; 4]), FlowError> {
    let (basis, sample) = if case_id == "heat" {
        (heat_basis(), zero_sample())
    } else {
        let c = ParamCase::canonical(case_id)?;
        (basis_for(&c), c.sample.clone())
    };
    let v = basis
        .fields
        .get(index.wrapping_sub(1))
        .cloned()
        .ok_or_else(|| FlowError::UnknownGenerator {
            case: case_id.to_string(),
            index,
        })?;
    Ok((v, sample))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse;

    fn field(xi: &str, gamma: &str, tau: &str, phi: &str) -> NumericField {
        let p = |s: &str| parse(s).unwrap();
        let zero = zero_sample();
        NumericField::new(&VectorField::new(p(xi), p(gamma), p(tau), p(phi)), &zero)
    }

    #[test]
    fn time_shift_and_scaling() {
        let cfg = FlowConfig::default();
        let p =
            integrate_flow(&field("0", "0", "1", "0"), [1.0, 2.0, 0.3, 4.0], 0.7, &cfg).unwrap();
        assert!((p[2] - 1.0).abs() < 1e-14);
        assert_eq!([p[0], p[1], p[3]], [1.0, 2.0, 4.0]);
        let p =
            integrate_flow(&field("0", "0", "0", "u"), [1.0, 1.0, 0.0, 1.0], 1.0, &cfg).unwrap();
        assert!((p[3] - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn leaving_the_quadrant_is_reported() {
        let cfg = FlowConfig::default();
        let r = integrate_flow(&field("-1", "0", "0", "0"), [0.5, 1.0, 0.0, 1.0], 1.0, &cfg);
        match r {
            Err(FlowError::DomainExit { eps }) => assert!((eps - 0.5).abs() < 2e-3),
            other => panic!("{other:?}"),
        }
    }
}
