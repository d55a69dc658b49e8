//! Closed-form one-parameter groups for every catalog generator.
//!
//! Each generator falls into one of a few shapes; the shape's parameters are
//! expressions in `a, b, d, e` bound at the case sample. `FlowShape::generator`
//! rebuilds the infinitesimal generator so the table can be checked exactly
//! against the catalog.

use serde::Serialize;

use super::{zero_sample, FlowError};
use crate::generators::ParamCase;
use crate::jet::VectorField;
use crate::symexpr::{parse, q_to_f64, Compiled, Expr, ParamSubst, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HeatKind {
    Translate,
    Dilation,
    Galilean,
    Projective,
}

/// Symbolic shape of a generator and of its flow.
#[derive(Clone, Copy, Debug)]
enum FlowShape {
    /// `∂t + c u∂u`.
    TimeShift(&'static str),
    /// `u∂u`.
    ScaleU,
    /// `√x g(t) ∂x + √x h(t) u∂u` (or the same in `y`).
    Radial {
        axis: Axis,
        g: &'static str,
        h: &'static str,
    },
    /// `β e^{βt}(x∂x + y∂y) + e^{βt}∂t + e^{βt}(p x + q y + r) u∂u`.
    Exponential {
        beta: &'static str,
        p: &'static str,
        q: &'static str,
        r: &'static str,
    },
    /// `2tx∂x + 2ty∂y + t²∂t + (2(x + y) − c t) u∂u`.
    Projective(&'static str),
    /// `x∂x + y∂y + t∂t`.
    Dilation,
    /// `√x√y (∂x − ∂y) + κ √x√y u∂u`.
    Rotation(&'static str),
    Heat(HeatKind),
}

fn p(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("built-in expression {s:?}: {e}"))
}

impl FlowShape {
    fn generator(&self) -> VectorField {
        let lin = |xi: &str, gamma: &str, tau: &str, lambda: String| {
            VectorField::linear(p(xi), p(gamma), p(tau), p(&lambda))
        };
        match *self {
            FlowShape::TimeShift(c) => lin("0", "0", "1", c.to_string()),
            FlowShape::ScaleU => lin("0", "0", "0", "1".into()),
            FlowShape::Radial { axis, g, h } => {
                let a = match axis {
                    Axis::X => "sqrt(x)",
                    Axis::Y => "sqrt(y)",
                };
                let xi = format!("{a}*({g})");
                let lambda = format!("{a}*({h})");
                match axis {
                    Axis::X => lin(&xi, "0", "0", lambda),
                    Axis::Y => lin("0", &xi, "0", lambda),
                }
            }
            FlowShape::Exponential { beta, p: pc, q, r } => {
                let ex = format!("exp(({beta})*t)");
                lin(
                    &format!("({beta})*{ex}*x"),
                    &format!("({beta})*{ex}*y"),
                    &ex,
                    format!("{ex}*(({pc})*x + ({q})*y + ({r}))"),
                )
            }
            FlowShape::Projective(c) => {
                lin("2*t*x", "2*t*y", "t^2", format!("2*(x + y) - ({c})*t"))
            }
            FlowShape::Dilation => lin("x", "y", "t", "0".into()),
            FlowShape::Rotation(k) => lin(
                "sqrt(x)*sqrt(y)",
                "-sqrt(x)*sqrt(y)",
                "0",
                format!("({k})*sqrt(x)*sqrt(y)"),
            ),
            FlowShape::Heat(k) => match k {
                HeatKind::Translate => lin("1", "0", "0", "0".into()),
                HeatKind::Dilation => lin("x", "0", "2*t", "-1/2".into()),
                HeatKind::Galilean => lin("2*t", "0", "0", "-x".into()),
                HeatKind::Projective => lin("4*x*t", "0", "4*t^2", "-(x^2 + 2*t)".into()),
            },
        }
    }

    fn bind(&self, sample: &[Q; 4]) -> FlowKind {
        let s = ParamSubst::values(sample);
        let num = |e: &str| {
            let c = p(e)
                .substitute_params(&s)
                .as_constant()
                .unwrap_or_else(|| panic!("{e:?} is not constant at the sample"));
            q_to_f64(&c)
        };
        match *self {
            FlowShape::TimeShift(c) => FlowKind::TimeShift { c: num(c) },
            FlowShape::ScaleU => FlowKind::ScaleU,
            FlowShape::Radial { axis, g, h } => FlowKind::Radial {
                axis,
                g: Compiled::new(&p(g), sample),
                h: Compiled::new(&p(h), sample),
            },
            FlowShape::Exponential { beta, p: pc, q, r } => FlowKind::Exponential {
                beta: num(beta),
                p: num(pc),
                q: num(q),
                r: num(r),
            },
            FlowShape::Projective(c) => FlowKind::Projective { c: num(c) },
            FlowShape::Dilation => FlowKind::Dilation,
            FlowShape::Rotation(k) => FlowKind::Rotation { kappa: num(k) },
            FlowShape::Heat(k) => FlowKind::Heat(k),
        }
    }
}

/// A flow shape with numeric parameters.
#[derive(Clone, Debug)]
pub enum FlowKind {
    TimeShift {
        c: f64,
    },
    ScaleU,
    Radial {
        axis: Axis,
        g: Compiled,
        h: Compiled,
    },
    Exponential {
        beta: f64,
        p: f64,
        q: f64,
        r: f64,
    },
    Projective {
        c: f64,
    },
    Dilation,
    Rotation {
        kappa: f64,
    },
    Heat(HeatKind),
}

impl FlowKind {
    pub fn name(&self) -> &'static str {
        match self {
            FlowKind::TimeShift { .. } => "time_shift",
            FlowKind::ScaleU => "scale_u",
            FlowKind::Radial { .. } => "radial",
            FlowKind::Exponential { .. } => "exponential",
            FlowKind::Projective { .. } => "projective",
            FlowKind::Dilation => "dilation",
            FlowKind::Rotation { .. } => "rotation",
            FlowKind::Heat(HeatKind::Translate) => "heat_translate",
            FlowKind::Heat(HeatKind::Dilation) => "heat_dilation",
            FlowKind::Heat(HeatKind::Galilean) => "heat_galilean",
            FlowKind::Heat(HeatKind::Projective) => "heat_projective",
        }
    }
}

/// `exp(ε v)` for one catalog generator.
#[derive(Clone, Debug)]
pub struct FlowMap {
    pub case_id: String,
    pub label: String,
    pub kind: FlowKind,
    /// The generator with parameters bound.
    pub generator: VectorField,
    pub sample: [Q; 4],
}

impl FlowMap {
    fn invalid(&self, point: [f64; 4], eps: f64, reason: &str) -> FlowError {
        FlowError::Validity {
            generator: format!("{} {}", self.case_id, self.label),
            point,
            eps,
            reason: reason.to_string(),
        }
    }

    /// `(x̃, ỹ, t̃, ũ)`; fails outside the validity region of the closed form.
    pub fn apply(&self, pt: [f64; 4], eps: f64) -> Result<[f64; 4], FlowError> {
        let [x, y, t, u] = pt;
        let at_t = |c: &Compiled| c.eval_point(pt).map_err(FlowError::from);
        let out = match &self.kind {
            FlowKind::TimeShift { c } => [x, y, t + eps, u * (c * eps).exp()],
            FlowKind::ScaleU => [x, y, t, u * eps.exp()],
            FlowKind::Radial { axis, g, h } => {
                let w = match axis {
                    Axis::X => x,
                    Axis::Y => y,
                };
                if w <= 0.0 {
                    return Err(self.invalid(pt, eps, "point outside x, y > 0"));
                }
                let (g, h) = (at_t(g)?, at_t(h)?);
                let r = w.sqrt() + eps * g / 2.0;
                if r <= 0.0 {
                    return Err(self.invalid(pt, eps, "2 sqrt(w) + eps g(t) must stay positive"));
                }
                let u = u * (h * (w.sqrt() * eps + g * eps * eps / 4.0)).exp();
                match axis {
                    Axis::X => [r * r, y, t, u],
                    Axis::Y => [x, r * r, t, u],
                }
            }
            FlowKind::Exponential { beta, p, q, r } => {
                let ex = (beta * t).exp();
                let d = 1.0 - beta * eps * ex;
                if d <= 0.0 {
                    return Err(self.invalid(
                        pt,
                        eps,
                        "1 - beta eps exp(beta t) must stay positive",
                    ));
                }
                let ln = d.ln();
                [
                    x / d,
                    y / d,
                    t - ln / beta,
                    u * ((p * x + q * y) * eps * ex / d - r / beta * ln).exp(),
                ]
            }
            FlowKind::Projective { c } => {
                let d = 1.0 - eps * t;
                if d <= 0.0 {
                    return Err(self.invalid(pt, eps, "1 - eps t must stay positive"));
                }
                [
                    x / (d * d),
                    y / (d * d),
                    t / d,
                    u * d.powf(*c) * (2.0 * eps * (x + y) / d).exp(),
                ]
            }
            FlowKind::Dilation => {
                let s = eps.exp();
                [s * x, s * y, s * t, u]
            }
            FlowKind::Rotation { kappa } => {
                if x <= 0.0 || y <= 0.0 {
                    return Err(self.invalid(pt, eps, "point outside x, y > 0"));
                }
                // x = s cos²(θ/2), y = s sin²(θ/2) with θ ∈ (0, π) moving at unit speed
                let s = x + y;
                let theta = (2.0 * (x * y).sqrt()).atan2(x - y) - eps;
                if theta <= 0.0 || theta >= std::f64::consts::PI {
                    return Err(self.invalid(pt, eps, "rotation angle leaves (0, pi)"));
                }
                let c = theta.cos();
                [
                    s * (1.0 + c) / 2.0,
                    s * (1.0 - c) / 2.0,
                    t,
                    u * (kappa / 2.0 * (s * c - (x - y))).exp(),
                ]
            }
            FlowKind::Heat(k) => match k {
                HeatKind::Translate => [x + eps, y, t, u],
                HeatKind::Dilation => [
                    eps.exp() * x,
                    y,
                    (2.0 * eps).exp() * t,
                    (-eps / 2.0).exp() * u,
                ],
                HeatKind::Galilean => [
                    x + 2.0 * eps * t,
                    y,
                    t,
                    u * (-eps * x - eps * eps * t).exp(),
                ],
                HeatKind::Projective => {
                    let d = 1.0 - 4.0 * eps * t;
                    if d <= 0.0 {
                        return Err(self.invalid(pt, eps, "1 - 4 eps t must stay positive"));
                    }
                    [x / d, y, t / d, u * d.sqrt() * (-eps * x * x / d).exp()]
                }
            },
        };
        Ok(out)
    }
}

use FlowShape::*;

const DT: FlowShape = TimeShift("0");
const EXP_MINUS: FlowShape = Exponential {
    beta: "-b",
    p: "0",
    q: "0",
    r: "0",
};

const fn rx(g: &'static str, h: &'static str) -> FlowShape {
    Radial {
        axis: Axis::X,
        g,
        h,
    }
}

const fn ry(g: &'static str, h: &'static str) -> FlowShape {
    Radial {
        axis: Axis::Y,
        g,
        h,
    }
}

const fn ex(beta: &'static str, p: &'static str, q: &'static str, r: &'static str) -> FlowShape {
    Exponential { beta, p, q, r }
}

fn shapes(major: u8, minor: u8) -> Vec<FlowShape> {
    match (major, minor) {
        (1, 1) => vec![
            DT,
            ScaleU,
            rx("exp(b*t/2)", "2*b*exp(b*t/2)"),
            rx("exp(-b*t/2)", "0"),
            ry("exp(e*t/2)", "2*e*exp(e*t/2)"),
            ry("exp(-e*t/2)", "0"),
        ],
        (1, 2) => vec![
            ex("b", "2*b^2", "2*b^2", "-b"),
            EXP_MINUS,
            TimeShift("-b/2"),
            Rotation("0"),
            rx("exp(b*t/2)", "2*b*exp(b*t/2)"),
            rx("exp(-b*t/2)", "0"),
            ry("exp(b*t/2)", "2*b*exp(b*t/2)"),
            ry("exp(-b*t/2)", "0"),
            ScaleU,
        ],
        (1, 3) => vec![
            ex("b", "2*b^2", "0", "-b/2"),
            ex("-b", "0", "2*b^2", "b/2"),
            DT,
            Rotation("2*b"),
            rx("exp(b*t/2)", "2*b*exp(b*t/2)"),
            rx("exp(-b*t/2)", "0"),
            ry("exp(-b*t/2)", "-2*b*exp(-b*t/2)"),
            ry("exp(b*t/2)", "0"),
            ScaleU,
        ],
        (1, 4) => vec![
            Projective("1"),
            Dilation,
            DT,
            Rotation("0"),
            rx("t", "2"),
            rx("1", "0"),
            ry("t", "2"),
            ry("1", "0"),
            ScaleU,
        ],
        (2, 1) => vec![DT, ScaleU],
        (2, 2) => vec![
            ex("b", "2*b^2", "2*b^2", "-2*b*(a + d)"),
            EXP_MINUS,
            TimeShift("-b*(a + d)"),
            ScaleU,
        ],
        (2, 3) => vec![
            ex("b", "2*b^2", "0", "-2*a*b"),
            ex("-b", "0", "2*b^2", "2*b*d"),
            TimeShift("b*(d - a)"),
            ScaleU,
        ],
        (2, 4) => vec![Projective("2*(a + d)"), Dilation, DT, ScaleU],
        (3, 1) => vec![
            DT,
            ScaleU,
            rx("exp(b*t/2)", "2*b*exp(b*t/2)"),
            rx("exp(-b*t/2)", "0"),
        ],
        (3, 2) => vec![
            ex("b", "2*b^2", "2*b^2", "-2*b*(1/4 + d)"),
            EXP_MINUS,
            TimeShift("-b*(1/4 + d)"),
            rx("exp(b*t/2)", "2*b*exp(b*t/2)"),
            rx("exp(-b*t/2)", "0"),
            ScaleU,
        ],
        (3, 3) => vec![
            ex("b", "2*b^2", "0", "-b/2"),
            ex("-b", "0", "2*b^2", "2*b*d"),
            TimeShift("-b*(1/4 - d)"),
            rx("exp(b*t/2)", "2*b*exp(b*t/2)"),
            rx("exp(-b*t/2)", "0"),
            ScaleU,
        ],
        (3, 4) => vec![
            Projective("2*(1/4 + d)"),
            Dilation,
            DT,
            rx("t", "2"),
            rx("1", "0"),
            ScaleU,
        ],
        (4, 1) => vec![
            DT,
            ScaleU,
            ry("exp(e*t/2)", "2*e*exp(e*t/2)"),
            ry("exp(-e*t/2)", "0"),
        ],
        (4, 2) => vec![
            ex("b", "2*b^2", "2*b^2", "-2*b*(a + 1/4)"),
            EXP_MINUS,
            TimeShift("-b*(1/4 + a)"),
            ry("exp(b*t/2)", "2*b*exp(b*t/2)"),
            ry("exp(-b*t/2)", "0"),
            ScaleU,
        ],
        (4, 3) => vec![
            ex("b", "2*b^2", "0", "-2*a*b"),
            ex("-b", "0", "2*b^2", "b/2"),
            TimeShift("b*(1/4 - a)"),
            ry("exp(-b*t/2)", "-2*b*exp(-b*t/2)"),
            ry("exp(b*t/2)", "0"),
            ScaleU,
        ],
        (4, 4) => vec![
            Projective("2*(a + 1/4)"),
            Dilation,
            DT,
            ry("t", "2"),
            ry("1", "0"),
            ScaleU,
        ],
        _ => Vec::new(),
    }
}

fn heat_shapes() -> Vec<FlowShape> {
    vec![
        Heat(HeatKind::Translate),
        DT,
        ScaleU,
        Heat(HeatKind::Dilation),
        Heat(HeatKind::Galilean),
        Heat(HeatKind::Projective),
    ]
}

fn build(
    case_id: &str,
    shapes: Vec<FlowShape>,
    sample: [Q; 4],
    subst: &ParamSubst,
) -> Vec<FlowMap> {
    shapes
        .iter()
        .enumerate()
        .map(|(i, s)| FlowMap {
            case_id: case_id.to_string(),
            label: format!("v{}", i + 1),
            kind: s.bind(&sample),
            generator: s.generator().map(|e| e.substitute_params(subst)),
            sample: sample.clone(),
        })
        .collect()
}

/// Closed-form flows of every generator of a case id (`"heat"` included).
pub fn flow_catalog(case_id: &str) -> Result<Vec<FlowMap>, FlowError> {
    if case_id == "heat" {
        let z = zero_sample();
        return Ok(build(
            "heat",
            heat_shapes(),
            z.clone(),
            &ParamSubst::values(&z),
        ));
    }
    let c = ParamCase::canonical(case_id)?;
    Ok(flows_for(&c))
}

/// Closed-form flows of a case at its (possibly non-canonical) sample.
pub fn flows_for(case: &ParamCase) -> Vec<FlowMap> {
    build(
        &case.id(),
        shapes(case.major(), case.minor()),
        case.sample.clone(),
        &case.sample_subst(),
    )
}

/// Flow of generator `index` (1-based).
pub fn closed_form_flow(case_id: &str, index: usize) -> Result<FlowMap, FlowError> {
    flow_catalog(case_id)?
        .into_iter()
        .nth(index.wrapping_sub(1))
        .ok_or_else(|| FlowError::UnknownGenerator {
            case: case_id.to_string(),
            index,
        })
}

/// The pure time shift `∂t`, a symmetry of every case.
pub fn time_shift_flow(case_id: &str) -> Result<FlowMap, FlowError> {
    let sample = if case_id == "heat" {
        zero_sample()
    } else {
        ParamCase::canonical(case_id)?.sample
    };
    let subst = ParamSubst::values(&sample);
    let mut f = build(case_id, vec![DT], sample, &subst).remove(0);
    f.label = "v_t".into();
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{basis_symbolic, heat_basis};

    #[test]
    fn shapes_reproduce_the_catalog_generators() {
        for c in ParamCase::all() {
            let cat = basis_symbolic(&c);
            let sp = shapes(c.major(), c.minor());
            assert_eq!(sp.len(), cat.fields.len(), "{}", c.id());
            let cs = c.constraints();
            for (i, (s, v)) in sp.iter().zip(&cat.fields).enumerate() {
                let g = s.generator().map(|e| e.substitute_params(&cs));
                assert_eq!(&g, v, "{} v{}", c.id(), i + 1);
            }
        }
        for (s, v) in heat_shapes().iter().zip(&heat_basis().fields) {
            assert_eq!(&s.generator(), v);
        }
    }

    #[test]
    fn identity_at_zero() {
        for id in ["1.2", "1.3", "1.4", "2.3", "heat"] {
            for f in flow_catalog(id).unwrap() {
                let pt = [1.3, 0.7, 0.2, 1.5];
                let out = f.apply(pt, 0.0).unwrap();
                for k in 0..4 {
                    assert!((out[k] - pt[k]).abs() < 1e-15, "{id} {}", f.label);
                }
            }
        }
    }

    #[test]
    fn radial_matches_the_displayed_form() {
        // x̃ = (2 e^{bt/2} √x + ε)² e^{−bt} / 4 for 1.1 v4
        let f = closed_form_flow("1.1", 4).unwrap();
        let out = f.apply([1.0, 1.0, 0.0, 1.0], 0.2).unwrap();
        let want = (2.0f64 + 0.2).powi(2) / 4.0;
        assert!((out[0] - want).abs() < 1e-15);
    }

    #[test]
    fn unknown_generator() {
        assert!(matches!(
            closed_form_flow("2.1", 3),
            Err(FlowError::UnknownGenerator { .. })
        ));
        assert!(closed_form_flow("2.1", 0).is_err());
    }
}
