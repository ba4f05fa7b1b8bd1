//! Verification verdicts with the residuals that caused them.

use std::fmt;

use crate::algebra::{JetPoly, Poly, PolyMatrix, PolyTensor};

/// A nonzero residual: either a function of the fields or a jet expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Field(Poly),
    Jet(JetPoly),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Field(p) => p.fmt(f),
            Residual::Jet(e) => e.fmt(f),
        }
    }
}

/// One failing index tuple (zero-based) of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub index: Vec<usize>,
    pub residual: Residual,
}

/// The verdict of a single relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub failures: Vec<Failure>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records `residual` at `index` if it is nonzero.
    pub fn record(&mut self, index: &[usize], residual: Poly) {
        if !residual.is_zero() {
            self.failures.push(Failure {
                index: index.to_vec(),
                residual: Residual::Field(residual),
            });
        }
    }

    pub fn record_jet(&mut self, index: &[usize], residual: JetPoly) {
        if !residual.is_zero() {
            self.failures.push(Failure {
                index: index.to_vec(),
                residual: Residual::Jet(residual),
            });
        }
    }

    pub fn from_tensor(name: impl Into<String>, t: &PolyTensor) -> Self {
        let mut c = Check::new(name);
        for (idx, p) in t.nonzero() {
            c.record(&idx, p.clone());
        }
        c
    }

    pub fn from_matrix(name: impl Into<String>, m: &PolyMatrix) -> Self {
        let mut c = Check::new(name);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                c.record(&[i, j], m.get(i, j).clone());
            }
        }
        c
    }
}

/// Collection of relation verdicts; passes iff every relation passes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_residuals() {
        let mut r = VerificationReport::new();
        let mut ok = Check::new("a");
        ok.record(&[0], Poly::zero(1));
        r.push(ok);
        assert!(r.passed());
        let mut bad = Check::new("b");
        bad.record(&[1, 2], Poly::var(1, 0));
        r.push(bad);
        assert!(!r.passed());
        assert_eq!(r.failed_checks().count(), 1);
        assert_eq!(r.check("b").unwrap().failures[0].residual.to_string(), "u1");
    }
}
