//! TOML problem files.
//!
//! ```toml
//! kind = "wdvv"          # wdvv | constant-form | general-form | flow
//! name = "example"       # optional
//! n = 3
//! f = "1/4*u2^2*u3^2 + 1/60*u3^5"
//! ```
//!
//! Keys by kind:
//!
//! * `wdvv`: `phi` with `eta`, or `f` alone for the three-field ansatz.
//! * `constant-form`: `eta`, `mu`, `psi` (list of polynomials).
//! * `general-form`: `g`, `b` (`b[i][j][k]` is `b^{ij}_k`), `w` (list of
//!   matrices), `mu`. With no affinors `w` and `mu` may be omitted.
//! * `flow`: `flows`, a list of matrices `A` for `u_t = A u_x`.
//!
//! Any kind may carry a `density` polynomial. Matrix entries are integers or
//! strings in the polynomial grammar; constant matrices accept only constants.

use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{ConstSymMatrix, Poly, PolyMatrix, PolyTensor, Scalar};
use crate::frontend::{parse_poly, ParseError};
use crate::hierarchy::FlowSpec;
use crate::operators::{ConstantFormSpec, GeneralFormSpec};
use crate::wdvv::WdvvProblem;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("malformed problem file: {0}")]
    Syntax(String),
    #[error("in `{field}`: {source}")]
    Parse {
        field: String,
        #[source]
        source: ParseError,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Int(i) => write!(f, "{i}"),
            Entry::Text(s) => f.write_str(s),
        }
    }
}

type Grid = Vec<Vec<Entry>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct Raw {
    kind: String,
    name: Option<String>,
    n: usize,
    eta: Option<Grid>,
    mu: Option<Grid>,
    phi: Option<String>,
    f: Option<String>,
    psi: Option<Vec<String>>,
    g: Option<Grid>,
    b: Option<Vec<Grid>>,
    w: Option<Vec<Grid>>,
    flows: Option<Vec<Grid>>,
    density: Option<String>,
}

/// The mathematical content of a problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    Wdvv(WdvvProblem),
    ConstantForm(ConstantFormSpec),
    GeneralForm(GeneralFormSpec),
    Flows(Vec<FlowSpec>),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::Wdvv(_) => "wdvv",
            Problem::ConstantForm(_) => "constant-form",
            Problem::GeneralForm(_) => "general-form",
            Problem::Flows(_) => "flow",
        }
    }

    /// A flat-coordinate operator, when the problem defines one. A potential
    /// `phi` gives `mu = eta` and `psi_n = d phi / du^n`.
    pub fn constant_form(&self) -> Option<ConstantFormSpec> {
        match self {
            Problem::Wdvv(p) => Some(ConstantFormSpec::from_wdvv(p)),
            Problem::ConstantForm(s) => Some(s.clone()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub name: Option<String>,
    pub n: usize,
    pub problem: Problem,
    pub density: Option<Poly>,
}

impl ProblemFile {
    pub fn parse(src: &str) -> Result<Self, ProblemError> {
        let raw: Raw =
            toml::from_str(src).map_err(|e| ProblemError::Syntax(e.message().to_string()))?;
        let n = raw.n;
        if n == 0 {
            return Err(ProblemError::Invalid("n must be positive".into()));
        }
        let allowed: &[&str] = match raw.kind.as_str() {
            "wdvv" => &["eta", "phi", "f"],
            "constant-form" => &["eta", "mu", "psi"],
            "general-form" => &["g", "b", "w", "mu"],
            "flow" => &["flows"],
            other => {
                return Err(ProblemError::Invalid(format!(
                    "unknown kind `{other}` (expected wdvv, constant-form, general-form or flow)"
                )))
            }
        };
        let present = [
            ("eta", raw.eta.is_some()),
            ("mu", raw.mu.is_some()),
            ("phi", raw.phi.is_some()),
            ("f", raw.f.is_some()),
            ("psi", raw.psi.is_some()),
            ("g", raw.g.is_some()),
            ("b", raw.b.is_some()),
            ("w", raw.w.is_some()),
            ("flows", raw.flows.is_some()),
        ];
        if let Some((key, _)) = present.iter().find(|(k, p)| *p && !allowed.contains(k)) {
            return Err(ProblemError::Invalid(format!(
                "key `{key}` is not used by kind `{}`",
                raw.kind
            )));
        }

        let density = raw
            .density
            .as_deref()
            .map(|s| poly("density", s, n))
            .transpose()?;
        let problem = match raw.kind.as_str() {
            "wdvv" => Problem::Wdvv(wdvv(&raw, n)?),
            "constant-form" => {
                let eta = const_matrix("eta", required(&raw.eta, "eta")?, n, n)?;
                let psis = required(&raw.psi, "psi")?
                    .iter()
                    .enumerate()
                    .map(|(i, s)| poly(&format!("psi[{}]", i + 1), s, n))
                    .collect::<Result<Vec<_>, _>>()?;
                let mu = const_matrix("mu", required(&raw.mu, "mu")?, psis.len(), n)?;
                Problem::ConstantForm(ConstantFormSpec::new(eta, mu, psis).map_err(invalid)?)
            }
            "general-form" => {
                let g = poly_matrix("g", required(&raw.g, "g")?, n)?;
                let b_raw = required(&raw.b, "b")?;
                if b_raw.len() != n {
                    return Err(ProblemError::Invalid(format!("b must have {n} blocks")));
                }
                let mut b = PolyTensor::zeros(&[n, n, n], n);
                for (i, block) in b_raw.iter().enumerate() {
                    let m = poly_matrix(&format!("b[{}]", i + 1), block, n)?;
                    for j in 0..n {
                        for k in 0..n {
                            b.set(&[i, j, k], m.get(j, k).clone());
                        }
                    }
                }
                let ws = match &raw.w {
                    Some(list) => list
                        .iter()
                        .enumerate()
                        .map(|(i, m)| poly_matrix(&format!("w[{}]", i + 1), m, n))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => Vec::new(),
                };
                let mu = match &raw.mu {
                    Some(m) => const_matrix("mu", m, ws.len(), n)?,
                    None if ws.is_empty() => ConstSymMatrix::identity(0),
                    None => return Err(ProblemError::Invalid("missing key `mu`".into())),
                };
                Problem::GeneralForm(GeneralFormSpec::new(g, b, ws, mu).map_err(invalid)?)
            }
            _ => {
                let flows = required(&raw.flows, "flows")?
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        let a = poly_matrix(&format!("flows[{}]", i + 1), m, n)?;
                        FlowSpec::new(a).map_err(|e| ProblemError::Invalid(e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Problem::Flows(flows)
            }
        };
        Ok(ProblemFile {
            name: raw.name,
            n,
            problem,
            density,
        })
    }
}

fn invalid(e: impl fmt::Display) -> ProblemError {
    ProblemError::Invalid(e.to_string())
}

fn required<'a, T>(v: &'a Option<T>, key: &str) -> Result<&'a T, ProblemError> {
    v.as_ref()
        .ok_or_else(|| ProblemError::Invalid(format!("missing key `{key}`")))
}

fn poly(field: &str, src: &str, n: usize) -> Result<Poly, ProblemError> {
    parse_poly(src, n).map_err(|source| ProblemError::Parse {
        field: field.to_string(),
        source,
    })
}

fn entry(field: &str, e: &Entry, n: usize) -> Result<Poly, ProblemError> {
    match e {
        Entry::Int(i) => Ok(Poly::constant(n, Scalar::from_integer((*i).into()))),
        Entry::Text(s) => poly(field, s, n),
    }
}

fn check_square(field: &str, grid: &Grid, size: usize) -> Result<(), ProblemError> {
    if grid.len() != size || grid.iter().any(|r| r.len() != size) {
        return Err(ProblemError::Invalid(format!(
            "`{field}` must be {size}x{size}"
        )));
    }
    Ok(())
}

fn poly_matrix(field: &str, grid: &Grid, n: usize) -> Result<PolyMatrix, ProblemError> {
    check_square(field, grid, n)?;
    let mut rows = Vec::with_capacity(n);
    for (i, r) in grid.iter().enumerate() {
        let row = r
            .iter()
            .enumerate()
            .map(|(j, e)| entry(&format!("{field}[{}][{}]", i + 1, j + 1), e, n))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    PolyMatrix::from_rows(n, rows).map_err(invalid)
}

fn const_matrix(
    field: &str,
    grid: &Grid,
    size: usize,
    n: usize,
) -> Result<ConstSymMatrix, ProblemError> {
    check_square(field, grid, size)?;
    let mut rows = Vec::with_capacity(size);
    for (i, r) in grid.iter().enumerate() {
        let mut row = Vec::with_capacity(size);
        for (j, e) in r.iter().enumerate() {
            let name = format!("{field}[{}][{}]", i + 1, j + 1);
            let c = entry(&name, e, n)?.as_constant().ok_or_else(|| {
                ProblemError::Invalid(format!("`{name}` must be a constant, got `{e}`"))
            })?;
            row.push(c);
        }
        rows.push(row);
    }
    ConstSymMatrix::new(rows).map_err(|e| ProblemError::Invalid(format!("`{field}`: {e}")))
}

fn wdvv(raw: &Raw, n: usize) -> Result<WdvvProblem, ProblemError> {
    match (&raw.phi, &raw.f) {
        (Some(_), Some(_)) => Err(ProblemError::Invalid(
            "give either `phi` or `f`, not both".into(),
        )),
        (None, None) => Err(ProblemError::Invalid("missing key `phi` or `f`".into())),
        (None, Some(f)) => {
            if n != 3 {
                return Err(ProblemError::Invalid("`f` requires n = 3".into()));
            }
            if raw.eta.is_some() {
                return Err(ProblemError::Invalid(
                    "`f` fixes the metric; remove `eta`".into(),
                ));
            }
            WdvvProblem::three_dim_ansatz(&poly("f", f, 3)?).map_err(invalid)
        }
        (Some(phi), None) => {
            let eta = const_matrix("eta", required(&raw.eta, "eta")?, n, n)?;
            WdvvProblem::new(eta, poly("phi", phi, n)?).map_err(invalid)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ansatz_file() {
        let pf = ProblemFile::parse("kind = \"wdvv\"\nn = 3\nf = \"u3^3\"\n").unwrap();
        assert_eq!(pf.problem.kind(), "wdvv");
        assert!(pf.problem.constant_form().is_some());
    }

    #[test]
    fn constant_form_file() {
        let src = r#"
kind = "constant-form"
n = 2
eta = [[1, 0], [0, "1/2"]]
mu = [[1]]
psi = ["u1^2*u2"]
density = "u1"
"#;
        let pf = ProblemFile::parse(src).unwrap();
        let spec = pf.problem.constant_form().unwrap();
        assert_eq!(spec.l(), 1);
        assert_eq!(pf.density.unwrap(), parse_poly("u1", 2).unwrap());
    }

    #[test]
    fn general_form_without_affinors() {
        let src = r#"
kind = "general-form"
n = 2
g = [[1, 0], [0, 1]]
b = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
"#;
        let pf = ProblemFile::parse(src).unwrap();
        assert!(matches!(pf.problem, Problem::GeneralForm(ref s) if s.l() == 0));
    }

    #[test]
    fn rejects_bad_input() {
        let unknown = ProblemFile::parse("kind = \"wdvv\"\nn = 3\nf = \"0\"\ncolour = 1\n");
        assert!(matches!(unknown, Err(ProblemError::Syntax(_))));
        let misplaced = ProblemFile::parse("kind = \"wdvv\"\nn = 3\nf = \"0\"\npsi = []\n");
        assert!(matches!(misplaced, Err(ProblemError::Invalid(_))));
        let parse = ProblemFile::parse("kind = \"wdvv\"\nn = 3\nf = \"2u3\"\n");
        assert!(matches!(parse, Err(ProblemError::Parse { ref field, .. }) if field == "f"));
        let nonconst = ProblemFile::parse(
            "kind = \"constant-form\"\nn = 1\neta = [[\"u1\"]]\nmu = [[1]]\npsi = [\"u1\"]\n",
        );
        assert!(matches!(nonconst, Err(ProblemError::Invalid(_))));
        let kind = ProblemFile::parse("kind = \"nope\"\nn = 1\n");
        assert!(matches!(kind, Err(ProblemError::Invalid(_))));
    }
}
