//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 on unusable input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use flatham_core::algebra::{ConstSymMatrix, IntegrationError, Poly, PolyMatrix};
use flatham_core::frontend::fixtures::{self, FIXTURES};
use flatham_core::frontend::report::RunReport;
use flatham_core::frontend::{parse_poly, print_canonical, Problem, ProblemFile};
use flatham_core::hierarchy::{
    flows_commute, run_hierarchy, structural_flows, FlowSpec, HierarchyError,
};
use flatham_core::locality::{
    involution_residual, locality_check, localize, wdvv_involution_check, Functional,
    LocalityError, INVOLUTION,
};
use flatham_core::operators::{check_pencil, verify_constant_form, verify_general_form};
use flatham_core::report::{Check, Residual};
use flatham_core::wdvv::{abc_flow_check, ansatz_head, dubrovin_residual, WdvvProblem};
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const FAILURES_SHOWN: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "flatham",
    version,
    about = "Exact checks for flat nonlocal Hamiltonian operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Problem file, or the name of a built-in fixture (`fixtures/<name>`).
    input: String,
    /// Write the JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock time in the JSON report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Associativity equations, the reduced equation and involution of the
    /// first derivatives of the potential.
    VerifyWdvv(Common),
    /// Hamiltonian property of an operator; for general-form data also the
    /// flat pencil.
    VerifyOperator(Common),
    /// Densities and flows of the hierarchy.
    Hierarchy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        steps: usize,
    },
    /// Locality test for a density and, when it passes, the local flow.
    Localize {
        #[command(flatten)]
        common: Common,
        /// Density polynomial; defaults to the file's `density` key.
        #[arg(long)]
        density: Option<String>,
    },
    /// Pairwise involution of the potentials.
    Involution(Common),
    /// Pairwise commutation of flows, or of the structural flows of an operator.
    Commute(Common),
    /// Built-in problem files.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand, Debug)]
enum FixturesAction {
    List,
    Show { name: String },
}

/// Input problems are reported as `Err(message)` and exit with code 2.
type Outcome = Result<RunReport, String>;

struct Input {
    source: String,
    text: String,
    file: ProblemFile,
}

fn load(spec: &str) -> Result<Input, String> {
    let path = Path::new(spec);
    let text = if path.is_file() {
        fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?
    } else if let Some(f) = fixtures::find(spec) {
        f.source.to_string()
    } else {
        return Err(format!("{spec}: no such file or built-in fixture"));
    };
    let file = ProblemFile::parse(&text).map_err(|e| format!("{spec}: {e}"))?;
    Ok(Input {
        source: spec.to_string(),
        text,
        file,
    })
}

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let (name, result, common) = match cli.command {
        Command::Fixtures { action } => return fixtures_cmd(action, out, err),
        Command::VerifyWdvv(c) => ("verify-wdvv", timed(&c, verify_wdvv), c),
        Command::VerifyOperator(c) => ("verify-operator", timed(&c, verify_operator), c),
        Command::Hierarchy { common, steps } => {
            ("hierarchy", timed(&common, |i| hierarchy(i, steps)), common)
        }
        Command::Localize { common, density } => (
            "localize",
            timed(&common, |i| localize_cmd(i, density.as_deref())),
            common,
        ),
        Command::Involution(c) => ("involution", timed(&c, involution), c),
        Command::Commute(c) => ("commute", timed(&c, commute), c),
    };
    let mut report = match result {
        Ok(r) => r,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INPUT;
        }
    };
    report.command = name.to_string();
    let _ = write_summary(&report, out);
    if let Some(path) = &common.out {
        if let Err(e) = fs::write(path, report.to_json()) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn timed(common: &Common, f: impl FnOnce(&Input) -> Outcome) -> Outcome {
    let start = Instant::now();
    let input = load(&common.input)?;
    let mut report = f(&input)?;
    if common.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn new_report(input: &Input) -> RunReport {
    let mut r = RunReport::new("", &input.source, input.text.as_bytes());
    r.output("kind", input.file.problem.kind());
    if let Some(name) = &input.file.name {
        r.output("name", name.as_str());
    }
    r
}

fn write_summary(report: &RunReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{} {}: {}",
        report.command, report.input.source, report.verdict
    )?;
    for c in &report.checks {
        if c.failure_count == 0 {
            writeln!(out, "  pass {}", c.name)?;
            continue;
        }
        writeln!(out, "  fail {} ({} failures)", c.name, c.failure_count)?;
        for f in c.failures.iter().take(FAILURES_SHOWN) {
            let idx: Vec<String> = f.index.iter().map(usize::to_string).collect();
            writeln!(out, "    [{}] {}", idx.join(", "), f.residual)?;
        }
        if c.failure_count > FAILURES_SHOWN {
            writeln!(out, "    ...")?;
        }
    }
    for (key, value) in &report.outputs {
        if let Some(line) = value.get("display").and_then(Value::as_array) {
            for l in line {
                writeln!(out, "{}", l.as_str().unwrap_or_default())?;
            }
        } else if key == "note" {
            writeln!(out, "  note: {}", value.as_str().unwrap_or_default())?;
        }
    }
    Ok(())
}

fn matrix_json(m: &PolyMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::from(
                (0..m.cols())
                    .map(|j| print_canonical(m.get(i, j)))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Value::from(rows)
}

fn polys_json(ps: &[Poly]) -> Value {
    Value::from(ps.iter().map(print_canonical).collect::<Vec<_>>())
}

/// A named output together with the lines shown on stdout.
fn displayed(value: Value, lines: Vec<String>) -> Value {
    json!({ "value": value, "display": lines })
}

/// The nonzero residual carried by an integration failure.
fn integration_residual(e: &IntegrationError) -> Result<Poly, String> {
    match e {
        IntegrationError::NotClosed { residual, .. }
        | IntegrationError::NotSymmetric { residual, .. }
        | IntegrationError::ColumnNotClosed { residual, .. }
        | IntegrationError::PotentialsNotClosed { residual, .. } => Ok(residual.clone()),
        IntegrationError::Shape(msg) => Err(msg.clone()),
    }
}

fn wdvv_problem(input: &Input) -> Result<&WdvvProblem, String> {
    match &input.file.problem {
        Problem::Wdvv(w) => Ok(w),
        other => Err(format!(
            "{}: expected kind `wdvv`, got `{}`",
            input.source,
            other.kind()
        )),
    }
}

fn verify_wdvv(input: &Input) -> Outcome {
    let prob = wdvv_problem(input)?;
    let mut report = new_report(input);
    report.push_report(&wdvv_involution_check(prob));
    if prob.dim() == 3 && prob.eta() == &ConstSymMatrix::antidiagonal(3) {
        let f = prob.phi() - &ansatz_head();
        if let Ok(r) = dubrovin_residual(&f) {
            let mut c = Check::new("reduced-equation");
            let solved = r.is_zero();
            c.record(&[], r);
            report.push_check(&c);
            if solved {
                let abc = abc_flow_check(&f).expect("reduced equation holds");
                report.push_report(&abc);
            }
            report.output("f", print_canonical(&f));
        }
    }
    Ok(report)
}

fn verify_operator(input: &Input) -> Outcome {
    let mut report = new_report(input);
    match &input.file.problem {
        Problem::GeneralForm(spec) => {
            let r = verify_general_form(spec);
            report.push_report(&r);
            match check_pencil(spec) {
                Ok(p) => report.push_report(&p),
                Err(_) => report.output("note", "pencil not checked: operator relations fail"),
            }
        }
        p => {
            let spec = p
                .constant_form()
                .ok_or_else(|| format!("{}: kind `{}` has no operator", input.source, p.kind()))?;
            report.push_report(&verify_constant_form(&spec));
        }
    }
    Ok(report)
}

fn constant_form(input: &Input) -> Result<flatham_core::operators::ConstantFormSpec, String> {
    input.file.problem.constant_form().ok_or_else(|| {
        format!(
            "{}: kind `{}` does not define a flat-coordinate operator",
            input.source,
            input.file.problem.kind()
        )
    })
}

fn hierarchy(input: &Input, steps: usize) -> Outcome {
    let spec = constant_form(input)?;
    let mut report = new_report(input);
    let state = match run_hierarchy(&spec, steps) {
        Ok(s) => s,
        Err(HierarchyError::PreconditionFailed(r)) => {
            report.push_report(&r);
            return Ok(report);
        }
        Err(HierarchyError::IntegrationFailed { step, what, source }) => {
            let mut c = Check::new("integration");
            c.record(&[step - 1], integration_residual(&source)?);
            report.push_check(&c);
            report.output("note", format!("step {step}: {what}: {source}"));
            return Ok(report);
        }
        Err(HierarchyError::FlowMismatch { step, residual }) => {
            report.push_check(&Check::from_matrix("flow-cross-check", &residual));
            report.output(
                "note",
                format!("step {step}: local flow differs from eta * Hess(h)"),
            );
            return Ok(report);
        }
    };
    report.push_report(&verify_constant_form(&spec));
    let mut local = Check::new("locality");
    for (s, h) in state.densities().iter().enumerate() {
        for f in locality_check(&spec, &Functional::new(h.clone())).failures {
            let mut idx = vec![s];
            idx.extend(f.index);
            if let Residual::Field(p) = f.residual {
                local.record(&idx, p);
            }
        }
    }
    report.push_check(&local);

    let lines = state
        .densities()
        .iter()
        .enumerate()
        .map(|(s, h)| format!("h{} = {}", s + 1, print_canonical(h)))
        .collect();
    report.output("densities", displayed(polys_json(state.densities()), lines));
    let steps: Vec<Value> = state
        .steps()
        .iter()
        .enumerate()
        .map(|(s, st)| {
            json!({
                "step": s + 1,
                "potentials": polys_json(&st.potentials),
                "flow": matrix_json(st.flow.matrix()),
            })
        })
        .collect();
    report.output("steps", steps);
    Ok(report)
}

fn localize_cmd(input: &Input, density: Option<&str>) -> Outcome {
    let spec = constant_form(input)?;
    let h = match density {
        Some(src) => parse_poly(src, spec.n()).map_err(|e| format!("--density: {e}"))?,
        None => input
            .file
            .density
            .clone()
            .ok_or_else(|| format!("{}: no density given", input.source))?,
    };
    let mut report = new_report(input);
    let h = Functional::new(h);
    report.push_check(&locality_check(&spec, &h));
    report.output("density", print_canonical(&h.density));
    if !report.passed() {
        return Ok(report);
    }
    match localize(&spec, &h) {
        Ok(loc) => {
            let mut lines: Vec<String> = loc
                .potentials
                .iter()
                .enumerate()
                .map(|(i, p)| format!("P{} = {}", i + 1, print_canonical(p)))
                .collect();
            lines.push(format!("f = {}", print_canonical(&loc.f)));
            let value = json!({
                "potentials": polys_json(&loc.potentials),
                "f": print_canonical(&loc.f),
                "flow": matrix_json(loc.flow.matrix()),
            });
            report.output("localization", displayed(value, lines));
        }
        Err(LocalityError::PreconditionFailed(r)) => report.push_report(&r),
        Err(LocalityError::IntegrationFailed { what, source }) => {
            let mut c = Check::new("integration");
            c.record(&[], integration_residual(&source)?);
            report.push_check(&c);
            report.output("note", format!("{what}: {source}"));
        }
        Err(LocalityError::FlowMismatch(residual)) => {
            report.push_check(&Check::from_matrix("flow-cross-check", &residual));
        }
        Err(e @ LocalityError::DimensionMismatch { .. }) => return Err(e.to_string()),
    }
    Ok(report)
}

fn involution(input: &Input) -> Outcome {
    let mut report = new_report(input);
    if let Problem::Wdvv(prob) = &input.file.problem {
        let r = wdvv_involution_check(prob);
        report.push_check(r.check(INVOLUTION).expect("involution check present"));
        return Ok(report);
    }
    let spec = constant_form(input)?;
    let psis = spec.psis();
    let mut c = Check::new(INVOLUTION);
    for a in 0..psis.len() {
        for b in a + 1..psis.len() {
            let r = involution_residual(&psis[a], &psis[b], spec.eta());
            for l in 0..r.rows() {
                for k in l + 1..r.cols() {
                    c.record(&[a, b, l, k], r.get(l, k).clone());
                }
            }
        }
    }
    report.push_check(&c);
    Ok(report)
}

fn commute(input: &Input) -> Outcome {
    let flows: Vec<FlowSpec> = match &input.file.problem {
        Problem::Flows(f) => f.clone(),
        _ => structural_flows(&constant_form(input)?),
    };
    let mut report = new_report(input);
    let mut c = Check::new("commutation");
    for a in 0..flows.len() {
        for b in a + 1..flows.len() {
            let r = flows_commute(&flows[a], &flows[b]).map_err(|e| e.to_string())?;
            for (i, comp) in r.into_iter().enumerate() {
                c.record_jet(&[a, b, i], comp);
            }
        }
    }
    report.push_check(&c);
    report.output("flows", flows.len());
    Ok(report)
}

fn fixtures_cmd(action: FixturesAction, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match action {
        FixturesAction::List => {
            for f in FIXTURES {
                let _ = writeln!(out, "{:<20} {}", f.name, f.summary);
            }
            EXIT_PASS
        }
        FixturesAction::Show { name } => match fixtures::find(&name) {
            Some(f) => {
                let _ = write!(out, "{}", f.source);
                EXIT_PASS
            }
            None => {
                let _ = writeln!(err, "error: no built-in fixture `{name}`");
                EXIT_INPUT
            }
        },
    }
}
