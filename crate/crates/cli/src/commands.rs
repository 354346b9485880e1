use std::fmt::Write;
use std::path::Path;

use lefschetz_core::algebraic::{unit_circle_counts, CircleClass, FieldElement};
use lefschetz_core::dynamics::{validate_endomorphism_map, validate_group, GroupEndomorphism, GroupReport};
use lefschetz_core::exact::{Rational, RationalMatrix};
use lefschetz_core::hyperbolic::{
    anosov_class_of_matrix, is_gamma_acceptable, spectral_acceptability, split, AcceptabilityReport, AnosovClass,
    HyperbolicError, Splitting,
};
use lefschetz_core::lefschetz::{nomizu_check, verify, LefschetzReport, NomizuReport};
use lefschetz_core::lie::{lower_central_series, validate_algebra, validate_homomorphism, AlgebraReport};
use serde::Serialize;

use crate::spec::{FoliationKind, Problem, ProblemSpec};
use crate::{CliError, Format};

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn rows(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

fn fmt_vec<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Serialize)]
struct GroupSection {
    source: &'static str,
    report: GroupReport,
    warnings: Vec<String>,
    matches_algebra: bool,
}

#[derive(Serialize)]
struct EndomorphismSection {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    linear_part: Option<Vec<Vec<Rational>>>,
}

#[derive(Serialize)]
struct ValidateReport {
    name: String,
    valid: bool,
    algebra: AlgebraReport,
    group: GroupSection,
    endomorphism: EndomorphismSection,
}

/// Runs every structural check without stopping at the first failure.
pub fn validate(path: &Path, format: Format) -> Result<(bool, String), CliError> {
    let problem = ProblemSpec::load(path)?.resolve()?;
    let algebra = validate_algebra(&problem.spec.lie_algebra);
    let report = validate_group(&problem.group);
    let mut warnings = problem.group_warnings.clone();
    // a derived group only loses fixed-point enumeration when Z^n is not closed
    let group_ok = report.checks.iter().all(|c| c.passed || (problem.group_is_derived && c.name == "lattice_closure"));
    if problem.group_is_derived {
        if let Some(c) = report.checks.iter().find(|c| c.name == "lattice_closure" && !c.passed) {
            warnings.push(format!(
                "lattice closure fails ({}); supply an explicit group",
                c.witness.clone().unwrap_or_default()
            ));
        }
    }
    let matches_algebra = report.checks[0].passed && problem.group.lie_algebra() == problem.spec.lie_algebra;
    let endo = match report.checks[0].passed {
        true => validate_endomorphism_map(&problem.group, problem.map.clone()),
        false => Err(lefschetz_core::dynamics::DynamicsError::InvalidGroup("group shape is invalid".into())),
    };
    let endomorphism = match &endo {
        Ok(f) => EndomorphismSection { valid: true, error: None, linear_part: Some(rows(f.linear_part())) },
        Err(e) => EndomorphismSection { valid: false, error: Some(e.to_string()), linear_part: None },
    };
    let valid = algebra.is_valid() && group_ok && matches_algebra && endomorphism.valid;
    let r = ValidateReport {
        name: problem.spec.name.clone(),
        valid,
        algebra,
        group: GroupSection {
            source: if problem.group_is_derived { "bch" } else { "explicit" },
            report,
            warnings,
            matches_algebra,
        },
        endomorphism,
    };
    let out = match format {
        Format::Json => json(&r),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", r.name);
            let a = &r.algebra;
            let _ = writeln!(
                s,
                "algebra       antisymmetry {}, jacobi {}, nilpotent {}",
                pass(a.antisymmetry.passed),
                pass(a.jacobi.passed),
                pass(a.nilpotency.passed)
            );
            if let Some(c) = a.nilpotency_class {
                let _ = writeln!(s, "              class {c}");
            }
            let _ = writeln!(s, "group ({})", r.group.source);
            for c in &r.group.report.checks {
                let _ = write!(s, "  {:<22}{}", c.name, pass(c.passed));
                if let Some(w) = &c.witness {
                    let _ = write!(s, "  {w}");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "  {:<22}{}", "lie_algebra_matches", pass(r.group.matches_algebra));
            for w in &r.group.warnings {
                let _ = writeln!(s, "  warning: {w}");
            }
            match &r.endomorphism.error {
                None => {
                    let _ = writeln!(s, "endomorphism  ok");
                }
                Some(e) => {
                    let _ = writeln!(s, "endomorphism  FAIL  {e}");
                }
            }
            let _ = writeln!(s, "{}", if r.valid { "valid" } else { "INVALID" });
            s
        }
    };
    Ok((valid, out))
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// Validates the pieces needed downstream, failing on the first problem.
fn checked_endomorphism(problem: &Problem) -> Result<GroupEndomorphism, CliError> {
    if problem.group.lie_algebra() != problem.spec.lie_algebra {
        return Err(CliError::Spec("the group's Lie algebra differs from lie_algebra".into()));
    }
    Ok(validate_endomorphism_map(&problem.group, problem.map.clone())?)
}

#[derive(Serialize)]
struct SeriesTerm {
    dim: usize,
    basis: Vec<Vec<Rational>>,
}

#[derive(Serialize)]
struct UnitCircle {
    inside: usize,
    on: usize,
    outside: usize,
}

#[derive(Serialize)]
struct Acceptability {
    unstable: AcceptabilityReport,
    stable: AcceptabilityReport,
}

#[derive(Serialize)]
struct AnalyzeReport {
    name: String,
    dim: usize,
    nilpotency_class: usize,
    central_series: Vec<SeriesTerm>,
    linear_part: Vec<Vec<Rational>>,
    char_poly: String,
    unit_circle: UnitCircle,
    anosov_class: AnosovClass,
    dims: [usize; 3],
    splitting: Option<Splitting>,
    #[serde(skip_serializing_if = "Option::is_none")]
    splitting_note: Option<String>,
    acceptability: Option<Acceptability>,
    acceptable: Option<bool>,
}

pub fn analyze(path: &Path, format: Format) -> Result<(bool, String), CliError> {
    let problem = ProblemSpec::load(path)?.resolve()?;
    let l = &problem.spec.lie_algebra;
    let f = checked_endomorphism(&problem)?;
    let lf = validate_homomorphism(l, f.linear_part().clone())?;
    let series = lower_central_series(l)?;
    let chi = f.linear_part().char_poly().expect("square");
    let (inside, on, outside) = unit_circle_counts(&chi);
    let class = anosov_class_of_matrix(f.linear_part());
    let (splitting, note) = match split(l, &lf) {
        Ok(s) => (Some(s), None),
        Err(HyperbolicError::UnsupportedScalarTower(m)) => (None, Some(format!("no exact splitting: {m}"))),
        Err(e) => return Err(e.into()),
    };
    let acceptability = match &splitting {
        Some(s) => {
            Some(Acceptability { unstable: is_gamma_acceptable(&s.unstable)?, stable: is_gamma_acceptable(&s.stable)? })
        }
        // decided from the rational factors of each layer instead
        None => match (
            spectral_acceptability(l, &lf, CircleClass::Outside)?,
            spectral_acceptability(l, &lf, CircleClass::Inside)?,
        ) {
            (Some(unstable), Some(stable)) => Some(Acceptability { unstable, stable }),
            _ => None,
        },
    };
    let r = AnalyzeReport {
        name: problem.spec.name.clone(),
        dim: l.dim(),
        nilpotency_class: series.len() - 1,
        central_series: series.iter().map(|c| SeriesTerm { dim: c.dim(), basis: c.basis().to_vec() }).collect(),
        linear_part: rows(f.linear_part()),
        char_poly: chi.to_string(),
        unit_circle: UnitCircle { inside, on, outside },
        anosov_class: class,
        dims: [outside, inside, on],
        acceptable: acceptability.as_ref().map(|a| a.unstable.overall),
        splitting,
        splitting_note: note,
        acceptability,
    };
    let out = match format {
        Format::Json => json(&r),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", r.name);
            let dims: Vec<usize> = r.central_series.iter().map(|t| t.dim).collect();
            let _ = writeln!(s, "central series dims  {}", fmt_vec(&dims));
            let _ = writeln!(s, "char poly            {}", r.char_poly);
            let _ = writeln!(s, "class                {}", r.anosov_class);
            let _ = writeln!(s, "dims (u, s, e)       {}", fmt_vec(&r.dims));
            if let Some(sp) = &r.splitting {
                for (label, p) in [("unstable", &sp.unstable), ("stable", &sp.stable), ("neutral", &sp.neutral)] {
                    for v in p.basis() {
                        let _ = writeln!(s, "  {label:<9}{}", fmt_vec::<FieldElement>(v));
                    }
                }
            }
            if let Some(n) = &r.splitting_note {
                let _ = writeln!(s, "  {n}");
            }
            if let Some(a) = &r.acceptability {
                for (label, rep) in [("unstable", &a.unstable), ("stable", &a.stable)] {
                    let _ = writeln!(s, "acceptable ({label:<8}) {}", rep.overall);
                    for layer in rep.layers.iter().filter(|l| !l.dense) {
                        let w = layer.witness.as_deref().map(fmt_vec).unwrap_or_default();
                        let _ = writeln!(s, "  layer {} not dense, witness {w}", layer.j);
                    }
                }
            }
            s
        }
    };
    Ok((true, out))
}

#[derive(Serialize)]
struct NamedReport<'a, T> {
    name: &'a str,
    #[serde(flatten)]
    report: &'a T,
}

pub fn lefschetz(
    path: &Path,
    foliation: Option<FoliationKind>,
    precision: Option<&str>,
    format: Format,
) -> Result<(bool, String), CliError> {
    let spec = ProblemSpec::load(path)?;
    let choice = spec.foliation(foliation)?;
    let precision = spec.precision(precision)?;
    let problem = spec.resolve()?;
    let f = checked_endomorphism(&problem)?;
    let report: LefschetzReport = verify(&problem.group, &f, &choice, &precision)?;
    let ok = report.verdict.is_success();
    let out = match format {
        Format::Json => json(&NamedReport { name: &problem.spec.name, report: &report }),
        Format::Text => format!("{}\n{}", problem.spec.name, report.to_text()),
    };
    Ok((ok, out))
}

pub fn betti(path: &Path, format: Format) -> Result<(bool, String), CliError> {
    let spec = ProblemSpec::load(path)?;
    let l = &spec.lie_algebra;
    if !validate_algebra(l).is_valid() {
        return Err(CliError::Spec("lie_algebra fails validation; run `validate` for details".into()));
    }
    let report: NomizuReport = nomizu_check(l, spec.expected_betti.as_deref());
    let ok = report.passed();
    let out = match format {
        Format::Json => json(&NamedReport { name: &spec.name, report: &report }),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", spec.name);
            let _ = writeln!(s, "betti                 {}", fmt_vec(&report.betti));
            let _ = writeln!(s, "euler characteristic  {}", report.euler_characteristic);
            if let Some(m) = report.matches_expected {
                let _ = writeln!(s, "matches expected      {m}");
            }
            s
        }
    };
    Ok((ok, out))
}
