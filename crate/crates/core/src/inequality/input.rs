//! JSON job files for the inequality checks.
//!
//! ```json
//! {"grid": {"m": 3, "K": 4}, "f": "linear:1", "g": {"table": ["0", "-7/64", …]}, "A": "abs:1"}
//! ```
//!
//! A function is `"zero"`, `"linear:q"`, `"abs:q"`, or a table of values in
//! increasing order of the grid points, given as `{"table": [...]}` or a bare
//! array. Table entries are integers or `"num/den"` strings.

use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use super::{
    check_phi_hypotheses, check_star_star, construct_solution, extract_remainder, format_rational,
    halving_report, parse_rational, DyadicGrid, GridFunction, InequalityViolation,
    PhiHypothesisReport, Rational,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Zero,
    Linear(Rational),
    Abs(Rational),
    Table(Vec<Rational>),
}

impl FunctionSpec {
    pub fn parse(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => Self::parse_str(s),
            Value::Array(items) => Self::parse_table(items),
            Value::Object(map) => match map.get("table") {
                Some(Value::Array(items)) if map.len() == 1 => Self::parse_table(items),
                _ => Err(Error::Parse(format!(
                    "unrecognized function object {value}"
                ))),
            },
            other => Err(Error::Parse(format!("unrecognized function {other}"))),
        }
    }

    fn parse_str(s: &str) -> Result<Self> {
        if s == "zero" {
            return Ok(Self::Zero);
        }
        match s.split_once(':') {
            Some(("linear", q)) => Ok(Self::Linear(parse_rational(q)?)),
            Some(("abs", q)) => Ok(Self::Abs(parse_rational(q)?)),
            _ => Err(Error::Parse(format!("unrecognized function {s:?}"))),
        }
    }

    fn parse_table(items: &[Value]) -> Result<Self> {
        items
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) if n.is_i64() => {
                    Ok(Rational::from_integer(n.as_i64().expect("checked").into()))
                }
                other => Err(Error::Parse(format!(
                    "table entries must be integers or \"num/den\" strings, got {other}"
                ))),
            })
            .collect::<Result<_>>()
            .map(Self::Table)
    }

    pub fn realize(&self, grid: DyadicGrid) -> Result<GridFunction> {
        Ok(match self {
            Self::Zero => GridFunction::zero(grid),
            Self::Linear(q) => GridFunction::linear(grid, q),
            Self::Abs(q) => GridFunction::abs(grid, q),
            Self::Table(values) => GridFunction::from_values(grid, values.clone())?,
        })
    }
}

/// Renders a grid function as a table usable in a job file.
pub fn table_json(f: &GridFunction) -> Value {
    Value::Array(
        f.values()
            .iter()
            .map(|q| Value::String(format_rational(q)))
            .collect(),
    )
}

#[derive(Debug, Clone)]
pub struct InequalityJob {
    pub grid: DyadicGrid,
    pub f: GridFunction,
    pub g: Option<GridFunction>,
    pub a: Option<GridFunction>,
}

impl InequalityJob {
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("job must be a JSON object".into()))?;
        let grid = obj
            .get("grid")
            .ok_or_else(|| Error::Parse("missing \"grid\"".into()))?;
        let dim = |key: &str| {
            grid.get(key)
                .and_then(Value::as_u64)
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| Error::Parse(format!("grid needs a non-negative integer {key:?}")))
        };
        let grid = DyadicGrid::new(dim("m")?, dim("K")?)?;
        let function = |key: &str| -> Result<Option<GridFunction>> {
            obj.get(key)
                .map(|v| FunctionSpec::parse(v)?.realize(grid))
                .transpose()
        };
        let f = function("f")?.ok_or_else(|| Error::Parse("missing \"f\"".into()))?;
        let g = function("g")?;
        let a = function("A")?;
        if g.is_none() && a.is_none() {
            return Err(Error::Parse("need \"g\", \"A\", or both".into()));
        }
        Ok(Self { grid, f, g, a })
    }
}

impl FromStr for InequalityJob {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_json(&value)
    }
}

/// A named pass/fail check.
#[derive(Debug, Clone, Serialize)]
pub struct NamedCheck {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<InequalityViolation>,
}

impl NamedCheck {
    fn new(name: &'static str, pass: bool) -> Self {
        Self {
            name,
            pass,
            message: None,
            violations: Vec::new(),
        }
    }

    fn failed(name: &'static str, message: String) -> Self {
        Self {
            name,
            pass: false,
            message: Some(message),
            violations: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridCoverage {
    pub m: u32,
    #[serde(rename = "K")]
    pub half_width: u32,
    pub points: usize,
    pub pairs: usize,
    pub core_pairs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityOutcome {
    pub grid: GridCoverage,
    pub checks: Vec<NamedCheck>,
    /// Reported conditions that do not affect the verdict.
    pub phi_hypotheses: PhiHypothesisReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remainder: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halving_at_one: Option<super::HalvingReport>,
}

impl InequalityOutcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs every check the job's inputs allow.
///
/// With `g`: the inequality itself, and for additive `f` the remainder
/// `x f(x) - g(x)` must come out subadditive. With `A`: the constructed
/// solution must satisfy the inequality, and match `g` when both are given.
pub fn evaluate(job: &InequalityJob) -> InequalityOutcome {
    let grid = job.grid;
    let mut checks = Vec::new();
    let mut remainder = None;
    let mut halving_at_one = None;

    if let Some(g) = &job.g {
        let violations = check_star_star(&job.f, g).expect("same grid");
        checks.push(NamedCheck {
            violations: violations.clone(),
            ..NamedCheck::new("inequality", violations.is_empty())
        });
        if job.f.is_additive_on_core() {
            match extract_remainder(&job.f, g) {
                Ok(a) => {
                    checks.push(NamedCheck::new("remainder_subadditive", true));
                    remainder = Some(table_json(&a));
                }
                Err(e) => checks.push(NamedCheck::failed("remainder_subadditive", e.to_string())),
            }
        }
        let one = grid.value(grid.one());
        halving_at_one = Some(halving_report(g, &one).expect("1 is a grid point"));
    }

    if let Some(a) = &job.a {
        match construct_solution(&job.f, a) {
            Ok(constructed) => {
                let violations = check_star_star(&job.f, &constructed).expect("same grid");
                checks.push(NamedCheck {
                    violations: violations.clone(),
                    ..NamedCheck::new("constructed_inequality", violations.is_empty())
                });
                if let Some(g) = &job.g {
                    checks.push(NamedCheck::new("constructed_matches_g", constructed == *g));
                }
            }
            Err(e) => checks.push(NamedCheck::failed("construction", e.to_string())),
        }
    }

    InequalityOutcome {
        grid: GridCoverage {
            m: grid.m,
            half_width: grid.half_width,
            points: grid.len(),
            pairs: grid.len() * grid.len(),
            core_pairs: grid.core_size(),
        },
        checks,
        phi_hypotheses: check_phi_hypotheses(&job.f),
        remainder,
        halving_at_one,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_function_forms() {
        assert_eq!(
            FunctionSpec::parse(&json!("zero")).unwrap(),
            FunctionSpec::Zero
        );
        assert_eq!(
            FunctionSpec::parse(&json!("linear:3/2")).unwrap(),
            FunctionSpec::Linear(parse_rational("3/2").unwrap())
        );
        assert!(matches!(
            FunctionSpec::parse(&json!({"table": [0, "1/2"]})).unwrap(),
            FunctionSpec::Table(v) if v.len() == 2
        ));
        assert!(FunctionSpec::parse(&json!("quadratic:1")).is_err());
        assert!(FunctionSpec::parse(&json!({"table": [0.5]})).is_err());
        assert!(FunctionSpec::parse(&json!(3)).is_err());
    }

    #[test]
    fn job_validation() {
        assert!(InequalityJob::from_json(&json!({"f": "zero", "g": "zero"})).is_err());
        assert!(InequalityJob::from_json(&json!({"grid": {"m": 1, "K": 1}, "g": "zero"})).is_err());
        assert!(InequalityJob::from_json(&json!({"grid": {"m": 1, "K": 1}, "f": "zero"})).is_err());
        assert!(
            InequalityJob::from_json(&json!({"grid": {"m": 1}, "f": "zero", "g": "zero"})).is_err()
        );
        // table length must match the grid (m = 1, K = 1 has 5 points)
        assert!(InequalityJob::from_json(
            &json!({"grid": {"m": 1, "K": 1}, "f": "zero", "g": {"table": [0, 0, 0]}})
        )
        .is_err());
        assert!(InequalityJob::from_str("{not json").is_err());
    }

    #[test]
    fn evaluates_known_solution_and_failure() {
        let grid = DyadicGrid::new(3, 4).unwrap();
        let g = GridFunction::from_fn(grid, |x| {
            use num_traits::Signed;
            x * x - x.abs()
        });
        let job = json!({"grid": {"m": 3, "K": 4}, "f": "linear:1", "g": {"table": table_json(&g)}, "A": "abs:1"});
        let outcome = evaluate(&InequalityJob::from_json(&job).unwrap());
        assert!(outcome.pass(), "{outcome:?}");
        assert_eq!(outcome.checks.len(), 4);

        let job = json!({"grid": {"m": 3, "K": 4}, "f": "linear:1", "g": "zero"});
        let outcome = evaluate(&InequalityJob::from_json(&job).unwrap());
        assert!(!outcome.pass());
        let ineq = &outcome.checks[0];
        assert!(ineq.violations.iter().any(|v| v.x == "1" && v.y == "1"));
    }
}
