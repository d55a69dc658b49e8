//! Subcommand implementations. Each builds a report with a JSON body and a
//! text rendering; nothing here prints.

use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};

use liesym::determining::{
    build_determining_system, check_candidate, solve_reduced, CheckConfig, DeterminingError,
    PdeFamily,
};
use liesym::flows::{
    closed_form_flow, flow_deviation, integrate_flow, sweep, time_shift_flow, transform_solution,
    FdConfig, FlowConfig, FlowError, FlowMap, NumericField, Pde, SolutionFn, SweepGrid,
};
use liesym::generators::{
    basis_for, basis_symbolic, classify as classify_case, heat_basis, parse_rational,
    published_table, CaseError, GeneratorBasis, ParamCase,
};
use liesym::jet::VectorField;
use liesym::liealg::{
    commutator_table, format_combination, published_diff, published_witnesses, render_grid,
    structure_report, symbolic_commutator_table, verify_grid, LieError, StructureConstants,
    StructureReport,
};
use liesym::symexpr::{fmt_q, parse, q_to_f64, ParamSubst, SymError, Q};

use crate::{Format, Global};

pub const SCHEMA: &str = "liesym/1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<CaseError> for CliError {
    fn from(e: CaseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SymError> for CliError {
    fn from(e: SymError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FlowError> for CliError {
    fn from(e: FlowError) -> Self {
        match e {
            FlowError::UnknownGenerator { .. } | FlowError::Case(_) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<DeterminingError> for CliError {
    fn from(e: DeterminingError) -> Self {
        CliError::Failed(e.to_string())
    }
}

/// Output of one subcommand.
pub struct Report {
    pub command: &'static str,
    pub body: Map<String, Value>,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn new(command: &'static str, body: Value, text: String, ok: bool) -> Self {
        let body = match body {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other);
                m
            }
        };
        Report {
            command,
            body,
            text,
            ok,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut m = Map::new();
                m.insert("schema".into(), SCHEMA.into());
                m.insert("command".into(), self.command.into());
                m.insert("ok".into(), self.ok.into());
                m.extend(self.body.clone());
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

type CmdResult = Result<Report, CliError>;

fn rational(name: &str, s: &str) -> Result<Q, CliError> {
    parse_rational(s).map_err(|e| CliError::Usage(format!("--{name} {s:?}: {e}")))
}

fn sample_json(s: &[Q; 4]) -> Value {
    json!({"a": fmt_q(&s[0]), "b": fmt_q(&s[1]), "d": fmt_q(&s[2]), "e": fmt_q(&s[3])})
}

fn sample_f64(s: &[Q; 4]) -> [f64; 4] {
    std::array::from_fn(|k| q_to_f64(&s[k]))
}

/// Case id or `heat`.
fn load_case(id: &str) -> Result<Option<ParamCase>, CliError> {
    if id == "heat" {
        Ok(None)
    } else {
        Ok(Some(ParamCase::canonical(id)?))
    }
}

/// Commutator table of the catalog basis, falling back to the basis solved
/// from the reduced system when the catalog degenerates at the sample.
fn table_for(case: &ParamCase) -> Result<(StructureConstants, &'static str), CliError> {
    match commutator_table(&basis_for(case)) {
        Ok(t) => Ok((t, "catalog")),
        Err(LieError::Degenerate(_)) => Ok((commutator_table(&solve_reduced(case)?)?, "reduced")),
        Err(e) => Err(e.into()),
    }
}

/// `name` plus the center quotient when nothing matched directly.
fn structure_summary(r: &StructureReport) -> String {
    match &r.center_quotient {
        Some(q) => format!(
            "{} (center quotient {})",
            r.matched_name(),
            q.matched_name()
        ),
        None => r.matched_name(),
    }
}

// classify

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    #[arg(long, allow_hyphen_values = true)]
    pub e: String,
}

pub fn classify(args: &ClassifyArgs, _g: &Global) -> CmdResult {
    let a = rational("a", &args.a)?;
    let b = rational("b", &args.b)?;
    let d = rational("d", &args.d)?;
    let e = rational("e", &args.e)?;
    let case = classify_case(&a, &d, &b, &e);
    let (table, source) = table_for(&case)?;
    let report = structure_report(&table)?;
    let structure = structure_summary(&report);
    let constraints = case.constraint_text();
    let text = format!(
        "case {} ({})\ndimension {}\nstructure {}\n",
        case.id(),
        constraints.join(", "),
        table.dim(),
        structure
    );
    let body = json!({
        "case_id": case.id(),
        "constraints": constraints,
        "sample": sample_json(&case.sample),
        "dimension": table.dim(),
        "basis_source": source,
        "structure": report.matched_name(),
        "center_quotient": report.center_quotient.as_ref().map(|q| q.matched_name()),
    });
    Ok(Report::new("classify", body, text, true))
}

// determine

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdeArg {
    Ls,
    Heat,
}

#[derive(Args, Debug)]
pub struct DetermineArgs {
    /// Equation whose determining system is built.
    #[arg(long, value_enum, default_value_t = PdeArg::Ls)]
    pub pde: PdeArg,
}

pub fn determine(args: &DetermineArgs, _g: &Global) -> CmdResult {
    let family = match args.pde {
        PdeArg::Ls => PdeFamily::ls(),
        PdeArg::Heat => PdeFamily::heat(),
    };
    let sys = build_determining_system(&family)?;
    let mut text = String::new();
    for e in &sys.entries {
        text.push_str(&format!("{}: {}\n", e.monomial.label(), e.coeff));
    }
    text.push_str(&format!("{} rows\n", sys.entries.len()));
    let body = json!({
        "pde": sys.family,
        "count": sys.entries.len(),
        "rows": sys.to_json_value(),
    });
    Ok(Report::new("determine", body, text, true))
}

// basis

#[derive(Args, Debug)]
pub struct CaseArgs {
    /// Case id such as 3.2, or heat.
    #[arg(long)]
    pub case: String,
    /// Keep parameters symbolic instead of binding the canonical sample.
    #[arg(long)]
    pub symbolic: bool,
}

fn field_text(label: &str, v: &VectorField) -> String {
    format!(
        "{label}: xi = {}, gamma = {}, tau = {}, phi = {}\n",
        v.xi, v.gamma, v.tau, v.phi
    )
}

pub fn basis(args: &CaseArgs, _g: &Global) -> CmdResult {
    let b: GeneratorBasis = match load_case(&args.case)? {
        None => heat_basis(),
        Some(c) if args.symbolic => basis_symbolic(&c),
        Some(c) => basis_for(&c),
    };
    let mut text = String::new();
    if let Some(c) = &b.case {
        text.push_str(&format!(
            "case {} ({})\n",
            c.id(),
            c.constraint_text().join(", ")
        ));
    }
    for (l, v) in b.labels.iter().zip(&b.fields) {
        text.push_str(&field_text(l, v));
    }
    for n in &b.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    Ok(Report::new("basis", b.to_json_value(), text, true))
}

// bracket-table

#[derive(Args, Debug)]
pub struct BracketArgs {
    /// Case id such as 3.2, or heat.
    #[arg(long)]
    pub case: String,
    /// Also print the published reference table and the cells that differ.
    #[arg(long)]
    pub paper_tables: bool,
}

pub fn bracket_table(args: &BracketArgs, _g: &Global) -> CmdResult {
    let case = load_case(&args.case)?;
    // cells[i][j] as text and coefficient lists
    let (labels, cells, coeffs): Cells = match &case {
        Some(c) => {
            let b = basis_symbolic(c);
            match symbolic_commutator_table(&b, &c.family_constraints())? {
                Some(t) => {
                    let n = t.dim();
                    let cells = (0..n)
                        .map(|i| (0..n).map(|j| t.cell(i, j)).collect())
                        .collect();
                    let co =
                        t.c.iter()
                            .map(|r| {
                                r.iter()
                                    .map(|p| p.iter().map(|x| x.to_string()).collect())
                                    .collect()
                            })
                            .collect();
                    (t.labels, cells, co)
                }
                None => numeric_cells(&commutator_table(&basis_for(c))?),
            }
        }
        None => numeric_cells(&commutator_table(&heat_basis())?),
    };
    let n = labels.len();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push(json!({"i": i + 1, "j": j + 1, "coeffs": coeffs[i][j]}));
        }
    }
    let mut text = render_grid(&labels, &cells);
    let mut body = json!({"case_id": args.case, "labels": labels, "entries": entries});
    if args.paper_tables {
        let c = case
            .as_ref()
            .ok_or_else(|| CliError::Usage("no published table for the heat fixture".into()))?;
        let pt = published_table(&c.id())
            .ok_or_else(|| CliError::Usage(format!("no published table for {}", c.id())))?;
        let rows: Vec<Vec<String>> = pt
            .rows
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        let diff = published_diff(c)?;
        text.push_str("\npublished:\n");
        text.push_str(&render_grid(&labels, &rows));
        text.push_str(&format!(
            "\n{} of {} cells differ\n",
            diff.diffs.len(),
            diff.compared
        ));
        for d in &diff.diffs {
            text.push_str(&format!(
                "[{}, {}]: published {}, computed {}\n",
                labels[d.i], labels[d.j], d.published, d.computed
            ));
        }
        body["published"] = json!(rows);
        body["diff"] = serde_json::to_value(&diff).expect("serializable");
    }
    Ok(Report::new("bracket-table", body, text, true))
}

type Cells = (Vec<String>, Vec<Vec<String>>, Vec<Vec<Vec<String>>>);

fn numeric_cells(t: &StructureConstants) -> Cells {
    let n = t.dim();
    let cells = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| format_combination(&t.c[i][j], &t.labels))
                .collect()
        })
        .collect();
    let co =
        t.c.iter()
            .map(|r| r.iter().map(|p| p.iter().map(fmt_q).collect()).collect())
            .collect();
    (t.labels.clone(), cells, co)
}

// structure

#[derive(Args, Debug)]
pub struct StructureArgs {
    /// Case id such as 3.2, or heat.
    #[arg(long, required_unless_present = "grid")]
    pub case: Option<String>,
    /// Check every declared isomorphism and inclusion instead.
    #[arg(long, conflicts_with = "case")]
    pub grid: bool,
}

pub fn structure(args: &StructureArgs, _g: &Global) -> CmdResult {
    if args.grid {
        let checks = verify_grid();
        let ok = checks.iter().all(|c| c.holds);
        let mut text = String::new();
        for c in &checks {
            let sym = if c.kind == "isomorphism" { "~=" } else { "<=" };
            let status = if c.holds { "ok" } else { "FAIL" };
            text.push_str(&format!("{} {sym} {}: {status}\n", c.left, c.right));
            if let Some(w) = &c.witness {
                text.push_str(&format!("  {}\n", w.join("; ")));
            }
            if let Some(e) = &c.error {
                text.push_str(&format!("  {e}\n"));
            }
        }
        let held = checks.iter().filter(|c| c.holds).count();
        text.push_str(&format!("{held}/{} hold\n", checks.len()));
        let body = json!({"checks": checks, "held": held, "total": checks.len()});
        return Ok(Report::new("structure", body, text, ok));
    }
    let id = args.case.as_deref().expect("clap requires --case");
    let case = load_case(id)?;
    let table = match &case {
        Some(c) => table_for(c)?.0,
        None => commutator_table(&heat_basis())?,
    };
    let report = structure_report(&table)?;
    let mut text = format!("case {id}\n");
    text.push_str(&report.text());
    let mut maps = Vec::new();
    if let Some(c) = &case {
        for m in published_witnesses()
            .into_iter()
            .filter(|m| m.case_id == c.id())
        {
            let (holds, error) = match m.verify(c) {
                Ok(h) => (h, None),
                Err(e) => (false, Some(e.to_string())),
            };
            text.push_str(&format!(
                "published map ({}): {}\n",
                m.description,
                match (&error, holds) {
                    (Some(e), _) => format!("not applicable, {e}"),
                    (None, true) => "verified".into(),
                    (None, false) => "fails".into(),
                }
            ));
            maps.push(json!({"description": m.description, "holds": holds, "error": error}));
        }
    }
    let body = json!({"case_id": id, "report": report.to_json_value(), "published_maps": maps});
    Ok(Report::new("structure", body, text, true))
}

// verify

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Case id such as 3.2, or heat.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    pub case: Option<String>,
    /// Every one of the sixteen cases.
    #[arg(long)]
    pub all: bool,
    /// Add the non-symmetry x d/dx to the basis; verification must then fail.
    #[arg(long)]
    pub tamper: bool,
    /// Also sweep the residual of the transported constant solution for every flow.
    #[arg(long)]
    pub flows: bool,
}

/// Identification expected for each case.
fn expected_structure(id: &str) -> &'static str {
    match id {
        "2.1" => "abelian_2",
        "2.2" | "2.3" | "2.4" => "sl2_x_R",
        "1.2" | "1.3" | "1.4" => "sl2_semidirect_J6",
        "3.1" | "4.1" => "unknown (center quotient iso2)",
        "1.1" => "unknown (center quotient unknown)",
        _ => "sl2_semidirect_h3",
    }
}

fn verify_one(id: &str, args: &VerifyArgs, g: &Global) -> Result<(Value, String, bool), CliError> {
    let case = load_case(id)?;
    let (family, mut basis, subst, sample) = match &case {
        Some(c) => (
            PdeFamily::ls(),
            basis_for(c),
            c.sample_subst(),
            c.sample.clone(),
        ),
        None => (
            PdeFamily::heat(),
            heat_basis(),
            ParamSubst::new(),
            liesym::flows::zero_sample(),
        ),
    };
    if args.tamper {
        let x = parse("x")?;
        let zero = parse("0")?;
        basis.labels.push("tamper x d/dx".into());
        basis
            .fields
            .push(VectorField::new(x, zero.clone(), zero.clone(), zero));
    }
    let sys = build_determining_system(&family)?;
    let cfg = CheckConfig {
        seed: g.seed,
        tol: g.tol_sym,
        ..CheckConfig::default()
    };
    let mut text = String::new();
    let mut fields = Vec::new();
    let mut passed = 0;
    for (l, v) in basis.labels.iter().zip(&basis.fields) {
        let r = check_candidate(v, &sys, &subst, &sample, &cfg)?;
        let ok = r.passed(cfg.tol);
        passed += ok as usize;
        if !ok {
            let names: Vec<&str> = r
                .entries
                .iter()
                .filter(|e| !e.symbolic_pass)
                .map(|e| e.monomial.as_str())
                .collect();
            text.push_str(&format!("  {l} fails at {}\n", names.join(", ")));
        }
        fields.push(json!({
            "label": l,
            "pass": ok,
            "numeric_max_residual": r.numeric_max_residual,
            "failures": r.failures,
        }));
    }
    let n = basis.fields.len();
    let mut ok = passed == n;
    let (closure, table) = match commutator_table(&basis).and_then(|t| t.validate().map(|_| t)) {
        Ok(t) => (json!({"pass": true}), Some(t)),
        Err(e) => {
            ok = false;
            text.push_str(&format!("  closure: {e}\n"));
            (json!({"pass": false, "error": e.to_string()}), None)
        }
    };
    let structure = match (&table, args.tamper) {
        (Some(t), false) => {
            let got = structure_summary(&structure_report(t)?);
            let want = if id == "heat" {
                "sl2_semidirect_h3"
            } else {
                expected_structure(id)
            };
            let pass = got == want;
            ok &= pass;
            if !pass {
                text.push_str(&format!("  structure {got}, expected {want}\n"));
            }
            json!({"matched": got, "expected": want, "pass": pass})
        }
        _ => Value::Null,
    };
    let mut flows = Vec::new();
    if args.flows {
        let pde = match &case {
            Some(c) => Pde::Ls(sample_f64(&c.sample)),
            None => Pde::Heat,
        };
        for f in liesym::flows::flow_catalog(id)? {
            let u = transform_solution(&f, &SolutionFn::one(), 0.05);
            let grid = SweepGrid::default();
            let r = sweep(
                &pde,
                &u,
                &grid,
                g.tol_fd,
                &FdConfig::default(),
                id,
                &f.label,
                0.05,
            )?;
            if !r.passed() {
                ok = false;
                text.push_str(&format!(
                    "  flow {}: max residual {:e}\n",
                    f.label, r.max_residual
                ));
            }
            flows.push(
                json!({"generator": f.label, "max_residual": r.max_residual, "pass": r.passed()}),
            );
        }
    }
    let head = format!(
        "case {id}: {passed}/{n} fields pass, closure {}{}{}: {}\n",
        if table.is_some() { "ok" } else { "FAIL" },
        match structure.get("matched") {
            Some(m) => format!(", structure {}", m.as_str().unwrap_or("")),
            None => String::new(),
        },
        if args.flows {
            format!(", {} flows swept", flows.len())
        } else {
            String::new()
        },
        if ok { "PASS" } else { "FAIL" }
    );
    let body = json!({
        "case_id": id,
        "pass": ok,
        "fields": fields,
        "closure": closure,
        "structure": structure,
        "flows": flows,
    });
    Ok((body, head + &text, ok))
}

pub fn verify(args: &VerifyArgs, g: &Global) -> CmdResult {
    let ids: Vec<String> = if args.all {
        ParamCase::all().iter().map(ParamCase::id).collect()
    } else {
        vec![args.case.clone().expect("clap requires --case or --all")]
    };
    let mut cases = Vec::new();
    let mut text = String::new();
    let mut passed = 0;
    for id in &ids {
        let (body, t, ok) = verify_one(id, args, g)?;
        passed += ok as usize;
        cases.push(body);
        text.push_str(&t);
    }
    text.push_str(&format!("{passed}/{} cases pass\n", ids.len()));
    let ok = passed == ids.len();
    let body = json!({"cases": cases, "passed": passed, "total": ids.len()});
    Ok(Report::new("verify", body, text, ok))
}

// flow

fn parse_floats(name: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim().parse::<f64>().map_err(|_| {
                CliError::Usage(format!("--{name} {s:?}: expected comma-separated numbers"))
            })
        })
        .collect()
}

fn load_flow(case: &str, gen: &str) -> Result<FlowMap, CliError> {
    if gen == "v_t" {
        return Ok(time_shift_flow(case)?);
    }
    let i: usize = gen
        .trim_start_matches('v')
        .parse()
        .map_err(|_| CliError::Usage(format!("--gen {gen:?}: expected an index, vN or v_t")))?;
    Ok(closed_form_flow(case, i)?)
}

#[derive(Args, Debug)]
pub struct FlowArgs {
    /// Case id such as 3.2, or heat.
    #[arg(long)]
    pub case: String,
    /// Generator index (1-based), vN, or v_t for the time shift.
    #[arg(long)]
    pub gen: String,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: f64,
    /// Start point x,y,t,u.
    #[arg(long, allow_hyphen_values = true, default_value = "1,1,0,1")]
    pub point: String,
    /// RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
}

pub fn flow(args: &FlowArgs, _g: &Global) -> CmdResult {
    let f = load_flow(&args.case, &args.gen)?;
    let p = parse_floats("point", &args.point)?;
    let p: [f64; 4] = p
        .try_into()
        .map_err(|_| CliError::Usage("--point needs four numbers x,y,t,u".into()))?;
    let closed = f.apply(p, args.eps)?;
    let cfg = FlowConfig {
        step: args.step,
        positive_xy: f.case_id != "heat",
    };
    let rk4 = integrate_flow(
        &NumericField::new(&f.generator, &f.sample),
        p,
        args.eps,
        &cfg,
    )?;
    let diff = flow_deviation(closed, rk4);
    let ok = diff < 1e-7;
    let text = format!(
        "{} {} ({})\nclosed form {closed:?}\nrk4         {rk4:?}\nmax difference {diff:e}\n",
        f.case_id,
        f.label,
        f.kind.name()
    );
    let body = json!({
        "case_id": f.case_id,
        "generator": f.label,
        "kind": f.kind.name(),
        "eps": args.eps,
        "point": p,
        "closed_form": closed,
        "rk4": rk4,
        "max_difference": diff,
    });
    Ok(Report::new("flow", body, text, ok))
}

// transform

#[derive(Args, Debug)]
pub struct TransformArgs {
    /// Case id such as 3.2, or heat.
    #[arg(long)]
    pub case: String,
    /// Generator index (1-based), vN, or v_t for the time shift.
    #[arg(long)]
    pub gen: String,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: f64,
    /// `one` or a closed form in x, y, t.
    #[arg(long, default_value = "one")]
    pub solution: String,
    /// Shift time by -1/(4 eps) after transforming.
    #[arg(long)]
    pub shift_t: bool,
    /// Extra evaluation points x,y,t (x,t for heat); repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Vec<String>,
    /// Grid in x as lo,hi,n.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_x: Option<String>,
    /// Grid in y as lo,hi,n.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_y: Option<String>,
    /// Grid in t as lo,hi,n.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_t: Option<String>,
}

fn axis(
    name: &str,
    s: &Option<String>,
    default: (f64, f64, usize),
) -> Result<(f64, f64, usize), CliError> {
    let Some(s) = s else { return Ok(default) };
    match parse_floats(name, s)?.as_slice() {
        &[lo, hi, n] if n >= 1.0 && n.fract() == 0.0 => Ok((lo, hi, n as usize)),
        _ => Err(CliError::Usage(format!("--{name} {s:?}: expected lo,hi,n"))),
    }
}

pub fn transform(args: &TransformArgs, g: &Global) -> CmdResult {
    if args.case != "any" {
        let (body, text, ok) = transform_one(&args.case, args, g)?;
        return Ok(Report::new("transform", body, text, ok));
    }
    // the time shift exists in every case; run it in all of them
    if args.gen != "v_t" {
        return Err(CliError::Usage(
            "--case any is only defined for --gen v_t".into(),
        ));
    }
    let mut ids: Vec<String> = ParamCase::all().iter().map(ParamCase::id).collect();
    ids.push("heat".into());
    let mut runs = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for id in &ids {
        let (body, t, pass) = transform_one(id, args, g)?;
        ok &= pass;
        runs.push(body);
        text.push_str(&t);
    }
    let max = runs
        .iter()
        .filter_map(|r| r["report"]["max_residual"].as_f64())
        .fold(0.0, f64::max);
    text.push_str(&format!("{} cases, max residual {max:e}\n", ids.len()));
    let body = json!({"case_id": "any", "runs": runs, "max_residual": max});
    Ok(Report::new("transform", body, text, ok))
}

fn transform_one(
    case: &str,
    args: &TransformArgs,
    g: &Global,
) -> Result<(Value, String, bool), CliError> {
    let heat = case == "heat";
    let f = load_flow(case, &args.gen)?;
    let u = if args.solution == "one" {
        SolutionFn::one()
    } else {
        SolutionFn::from_expr(&args.solution, &f.sample)?
    };
    let mut w = transform_solution(&f, &u, args.eps);
    if args.shift_t {
        if args.eps == 0.0 {
            return Err(CliError::Usage("--shift-t needs a nonzero --eps".into()));
        }
        w = w.shift_t(-1.0 / (4.0 * args.eps));
    }
    let d = SweepGrid::default();
    let grid = SweepGrid {
        x: axis(
            "grid-x",
            &args.grid_x,
            if heat { (-2.0, 2.0, 10) } else { d.x },
        )?,
        y: axis(
            "grid-y",
            &args.grid_y,
            if heat { (0.0, 0.0, 1) } else { d.y },
        )?,
        t: axis(
            "grid-t",
            &args.grid_t,
            if heat && args.shift_t {
                (0.1, 2.0, 10)
            } else {
                d.t
            },
        )?,
    };
    let mut points = Vec::new();
    for s in &args.at {
        let v = parse_floats("at", s)?;
        points.push(match (heat, v.as_slice()) {
            (true, &[x, t]) => [x, 0.0, t],
            (_, &[x, y, t]) => [x, y, t],
            _ => {
                return Err(CliError::Usage(format!(
                    "--at {s:?}: expected x,y,t or x,t for heat"
                )))
            }
        });
    }
    if points.is_empty() && heat && args.shift_t {
        points.push([1.0, 0.0, 1.0]);
    }
    let mut values = Vec::new();
    let mut text = String::new();
    for p in &points {
        let v = w.eval(*p)?;
        text.push_str(&format!("u({}, {}, {}) = {v:.10}\n", p[0], p[1], p[2]));
        values.push(json!({"point": p, "value": v}));
    }
    let pde = if heat {
        Pde::Heat
    } else {
        Pde::Ls(sample_f64(&f.sample))
    };
    let label = format!("{} {}", f.case_id, f.label);
    let base = json!({
        "case_id": f.case_id,
        "generator": f.label,
        "eps": args.eps,
        "solution": args.solution,
        "provenance": w.provenance,
        "values": values,
    });
    match sweep(
        &pde,
        &w,
        &grid,
        g.tol_fd,
        &FdConfig::default(),
        &f.case_id,
        &f.label,
        args.eps,
    ) {
        Ok(r) => {
            text.push_str(&format!(
                "{label}, eps {}: {} points, max residual {:e}, mean {:e}, {} violations\n",
                args.eps,
                r.points,
                r.max_residual,
                r.mean_residual,
                r.violations.len()
            ));
            for v in r.violations.iter().take(10) {
                text.push_str(&format!("  residual {:e} at {:?}\n", v.residual, v.point));
            }
            let ok = r.passed();
            let mut body = base;
            body["report"] = serde_json::to_value(&r).expect("serializable");
            Ok((body, text, ok))
        }
        Err(e) => {
            text.push_str(&format!("{label}: {e}\n"));
            let mut body = base;
            body["error"] = e.to_string().into();
            if let FlowError::Validity { point, .. } = &e {
                body["offending_point"] = json!(point);
            }
            Ok((body, text, false))
        }
    }
}
