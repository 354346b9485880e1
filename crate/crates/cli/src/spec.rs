//! Problem specification files and their resolution into validated objects.

use std::path::Path;

use lefschetz_core::algebraic::FieldElement;
use lefschetz_core::dynamics::{bch_group_from_algebra, PolynomialGroup, PolynomialMap};
use lefschetz_core::exact::{Rational, RationalMatrix};
use lefschetz_core::lefschetz::{default_precision, FoliationChoice};
use lefschetz_core::lie::NilpotentLieAlgebra;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub lie_algebra: NilpotentLieAlgebra,
    /// Explicit group law; when absent the group is built from the algebra
    /// by the Baker-Campbell-Hausdorff formula.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<PolynomialGroup>,
    pub endomorphism: EndomorphismSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foliation: Option<FoliationSpec>,
    /// Interval-mode width target: a rational such as `1/1000` or `2^-64`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_betti: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EndomorphismSpec {
    Polynomial(PolynomialMap),
    /// Linear map in the group coordinates, given by rows.
    Matrix(Vec<Vec<Rational>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "UPPERCASE")]
pub enum FoliationKind {
    Unstable,
    Stable,
    Zero,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationSpec {
    pub kind: FoliationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Rational>>>,
}

/// A spec with its group and endomorphism map resolved.
#[derive(Debug, Clone)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub group: PolynomialGroup,
    /// Warnings from building the group, e.g. non-integer BCH coefficients.
    pub group_warnings: Vec<String>,
    pub group_is_derived: bool,
    pub map: PolynomialMap,
}

pub fn parse_precision(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let value = if let Some(exp) = s.strip_prefix("2^") {
        exp.parse::<i32>().ok().filter(|e| e.unsigned_abs() <= 4096).map(Rational::pow2)
    } else {
        s.parse::<Rational>().ok()
    };
    value
        .filter(|p| p.is_positive())
        .ok_or_else(|| CliError::Spec(format!("precision must be a positive rational or 2^k, got {s:?}")))
}

impl ProblemSpec {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            origin: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text, &path.display().to_string())
    }

    /// Canonical serialization: two-space indented JSON with a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    pub fn precision(&self, flag: Option<&str>) -> Result<Rational, CliError> {
        match flag.or(self.precision.as_deref()) {
            Some(p) => parse_precision(p),
            None => Ok(default_precision()),
        }
    }

    pub fn foliation(&self, flag: Option<FoliationKind>) -> Result<FoliationChoice, CliError> {
        let kind = flag.or(self.foliation.as_ref().map(|f| f.kind)).unwrap_or(FoliationKind::Unstable);
        Ok(match kind {
            FoliationKind::Unstable => FoliationChoice::Unstable,
            FoliationKind::Stable => FoliationChoice::Stable,
            FoliationKind::Zero => FoliationChoice::Zero,
            FoliationKind::Custom => {
                let basis = self
                    .foliation
                    .as_ref()
                    .and_then(|f| f.basis.clone())
                    .ok_or_else(|| CliError::Spec("CUSTOM foliation needs a basis in the spec file".into()))?;
                let n = self.lie_algebra.dim();
                if basis.iter().any(|v| v.len() != n) {
                    return Err(CliError::Spec(format!("foliation basis vectors must have {n} entries")));
                }
                FoliationChoice::Custom(
                    basis.into_iter().map(|v| v.into_iter().map(FieldElement::rational).collect()).collect(),
                )
            }
        })
    }

    /// Builds the group and the endomorphism map, checking shapes. Semantic
    /// validation (group laws, homomorphism identity) is left to the caller.
    pub fn resolve(self) -> Result<Problem, CliError> {
        let n = self.lie_algebra.dim();
        let (group, group_warnings, group_is_derived) = match &self.group {
            Some(g) => {
                if g.dim() != n {
                    return Err(CliError::Spec(format!("group has dimension {}, algebra has {n}", g.dim())));
                }
                (g.clone(), Vec::new(), false)
            }
            None => {
                let (g, w) = bch_group_from_algebra(&self.lie_algebra).map_err(|e| CliError::Spec(e.to_string()))?;
                (g, w, true)
            }
        };
        let map = match &self.endomorphism {
            EndomorphismSpec::Polynomial(p) => {
                let p = p.clone().with_arity(n).ok_or_else(|| {
                    CliError::Spec(format!("endomorphism takes {} variables, the group has dimension {n}", p.arity()))
                })?;
                if p.outputs().len() != n {
                    return Err(CliError::Spec(format!(
                        "endomorphism has {} outputs, expected {n}",
                        p.outputs().len()
                    )));
                }
                p
            }
            EndomorphismSpec::Matrix(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(CliError::Spec(format!("endomorphism matrix must be {n}x{n}")));
                }
                PolynomialMap::from_matrix(&RationalMatrix::from_rows(rows.clone()))
            }
        };
        Ok(Problem { spec: self, group, group_warnings, group_is_derived, map })
    }
}
