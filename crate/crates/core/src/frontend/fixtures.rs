//! Built-in problem files.

use crate::frontend::{ProblemError, ProblemFile};

/// A named problem file shipped with the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
}

impl Fixture {
    pub fn load(&self) -> Result<ProblemFile, ProblemError> {
        ProblemFile::parse(self.source)
    }
}

macro_rules! fixture {
    ($name:literal, $summary:literal) => {
        Fixture {
            name: $name,
            summary: $summary,
            source: include_str!(concat!("../../fixtures/", $name, ".toml")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("trivial", "three-field ansatz with f = 0"),
    fixture!(
        "dubrovin1",
        "polynomial solution f = 1/4*u2^2*u3^2 + 1/60*u3^5"
    ),
    fixture!("dubrovin2", "polynomial solution of degree 7 in u3"),
    fixture!("dubrovin3", "polynomial solution of degree 11 in u3"),
    fixture!("cubic-defect", "f = u3^3, not a solution"),
    fixture!("hopf", "one field, psi = 1/6*u1^3"),
    fixture!(
        "noncommuting-pair",
        "two potentials with non-commuting affinors"
    ),
    fixture!(
        "flat-curvilinear",
        "Euclidean metric in curvilinear coordinates"
    ),
    fixture!(
        "nonconstant-metric",
        "nonconstant metric with zero connection"
    ),
    fixture!("hopf-flows", "three commuting one-field flows"),
];

/// The polynomial solutions of the three-field ansatz.
pub const WDVV_SOLUTIONS: [&str; 3] = ["dubrovin1", "dubrovin2", "dubrovin3"];

/// Looks up `name` or `fixtures/name`.
pub fn find(name: &str) -> Option<&'static Fixture> {
    let name = name.strip_prefix("fixtures/").unwrap_or(name);
    let name = name.strip_suffix(".toml").unwrap_or(name);
    FIXTURES.iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_load() {
        for f in FIXTURES {
            let pf = f.load().unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert_eq!(pf.name.as_deref(), Some(f.name));
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(find("fixtures/hopf").unwrap().name, "hopf");
        assert_eq!(find("dubrovin2.toml").unwrap().name, "dubrovin2");
        assert!(find("missing").is_none());
    }
}
