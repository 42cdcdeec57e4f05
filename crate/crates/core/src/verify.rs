//! Residual engine: evaluates catalog entries on a zoo and assembles reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{Check, Condition, IdentityEntry, Suite};
use crate::error::Result;
use crate::forms::{self, Worst};
use crate::multivector::Picture;
use crate::operator::{derivation_defect, LinearOperator};
use crate::scalar::{Real, Scalar, ScalarMode};
use crate::tables::Tables;
use crate::zoo::Zoo;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GuardStatus {
    Exercised,
    Vacuous,
    /// The entry's hypothesis does not hold on this model.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The entry could not be evaluated (missing operator, mixed parity).
    Error,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryResult {
    pub id: String,
    pub label: String,
    pub formula: String,
    /// Largest entry of the difference, rendered exactly in exact mode.
    pub residual: String,
    pub residual_magnitude: f64,
    pub status: Status,
    pub guard: GuardStatus,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub external: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub exercised: usize,
    pub vacuous: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub mode: ScalarMode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    pub suite: Suite,
    pub summary: Summary,
    pub entries: Vec<EntryResult>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tables: Option<Tables>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.errors == 0
    }

    pub fn failing_ids(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, Status::Fail | Status::Error))
            .map(|e| e.id.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Identity report: {}\n", self.model);
        let mode = match (self.mode, self.tolerance) {
            (ScalarMode::Exact, _) => "exact".to_string(),
            (ScalarMode::Float, Some(t)) => format!("float, tolerance {t:e}"),
            (ScalarMode::Float, None) => "float".to_string(),
        };
        let s = &self.summary;
        let _ = writeln!(out, "Suite `{}`, {} arithmetic.\n", self.suite, mode);
        let _ = writeln!(
            out,
            "{} entries: {} passed, {} failed, {} errors; {} exercised, {} vacuous, {} not applicable.\n",
            s.total, s.passed, s.failed, s.errors, s.exercised, s.vacuous, s.not_applicable
        );
        let _ = writeln!(out, "| id | formula | residual | guard | status |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for e in &self.entries {
            let formula = e.formula.replace('|', "\\|");
            let mark = if e.external { " (external)" } else { "" };
            let _ = writeln!(
                out,
                "| `{}` | {}{} | {} | {:?} | {:?} |",
                e.id, formula, mark, e.residual, e.guard, e.status
            );
        }
        if let Some(tables) = &self.tables {
            out.push('\n');
            out.push_str(&tables.to_markdown());
        }
        out
    }
}

/// Residual and exercise flag of one check.
struct Outcome<S> {
    residual: S,
    exercised: bool,
}

fn max_entry<S: Scalar>(op: &LinearOperator<S>) -> S {
    op.matrix.max_entry().1
}

fn run_check<S: Scalar>(zoo: &Zoo<S>, check: &Check) -> Result<Outcome<S>> {
    let ext = Picture::Exterior;
    match check {
        Check::Equal { lhs, rhs } => {
            let l = lhs.eval(zoo, ext)?;
            let r = rhs.eval(zoo, l.picture)?;
            let r = if r.is_zero() && r.picture != l.picture {
                LinearOperator::zero(r.dim(), l.picture)
            } else {
                r
            };
            let diff = l.minus(&r)?;
            Ok(Outcome {
                residual: max_entry(&diff),
                exercised: !l.is_zero() || !r.is_zero(),
            })
        }
        Check::EachFrame(inner) => {
            let m = 2 * zoo.half_dim();
            let mut worst = Worst::default();
            let mut exercised = false;
            for a in 1..=m {
                let o = run_check(zoo, &inner.substitute(a))?;
                worst.push(&o.residual);
                exercised |= o.exercised;
            }
            Ok(Outcome {
                residual: worst.value(),
                exercised,
            })
        }
        Check::Derivation { op, odd } => {
            let p = op.eval(zoo, ext)?;
            Ok(Outcome {
                residual: derivation_defect(&p, zoo.half_dim(), *odd),
                exercised: !p.is_zero(),
            })
        }
        Check::Bidegree { op, declared } => {
            let p = op.eval(zoo, ext)?;
            let mut worst = Worst::default();
            for (b, part) in zoo.geometry.space.bidegree_decompose(&p) {
                if b != *declared {
                    worst.push_op(&part);
                }
            }
            Ok(Outcome {
                residual: worst.value(),
                exercised: !p.is_zero(),
            })
        }
        Check::Form(f) => {
            let o = forms::run(*f, zoo)?;
            Ok(Outcome {
                residual: o.residual,
                exercised: o.exercised,
            })
        }
    }
}

fn guard_status<S: Scalar>(
    zoo: &Zoo<S>,
    entry: &IdentityEntry,
    default_exercised: bool,
) -> Result<GuardStatus> {
    if entry.guards.is_empty() {
        return Ok(if default_exercised {
            GuardStatus::Exercised
        } else {
            GuardStatus::Vacuous
        });
    }
    let m = 2 * zoo.half_dim();
    for g in &entry.guards {
        let nonzero = if g.op_names().iter().any(|n| n.contains('#')) {
            (1..=m)
                .map(|a| g.substitute(a).eval(zoo, Picture::Exterior))
                .any(|r| r.map(|o| !o.is_zero()).unwrap_or(false))
        } else {
            !g.eval(zoo, Picture::Exterior)?.is_zero()
        };
        if !nonzero {
            return Ok(GuardStatus::Vacuous);
        }
    }
    Ok(GuardStatus::Exercised)
}

/// Verify one entry. Any nonzero residual fails, exercised or not.
pub fn verify_entry<S: Scalar>(zoo: &Zoo<S>, entry: &IdentityEntry, tolerance: f64) -> EntryResult {
    let mut result = EntryResult {
        id: entry.id.clone(),
        label: entry.label.clone(),
        formula: entry.formula(),
        residual: "0".to_string(),
        residual_magnitude: 0.0,
        status: Status::Pass,
        guard: GuardStatus::Exercised,
        external: entry.external,
        error: None,
    };
    if entry.condition == Condition::AlmostKahler && !zoo.geometry.is_almost_kahler() {
        result.status = Status::Skipped;
        result.guard = GuardStatus::NotApplicable;
        result.residual = "-".to_string();
        return result;
    }
    let outcome = run_check(zoo, &entry.check).and_then(|o| {
        let guard = guard_status(zoo, entry, o.exercised)?;
        Ok((o, guard))
    });
    match outcome {
        Ok((o, guard)) => {
            result.residual = o.residual.render();
            result.residual_magnitude = o.residual.magnitude();
            result.guard = guard;
            if !o.residual.is_negligible(tolerance) {
                result.status = Status::Fail;
            }
        }
        Err(e) => {
            result.status = Status::Error;
            result.residual = "-".to_string();
            result.error = Some(e.to_string());
        }
    }
    result
}

/// Verify entries in parallel; results keep catalog order.
pub fn verify_all<S: Scalar>(
    zoo: &Zoo<S>,
    entries: &[IdentityEntry],
    tolerance: f64,
) -> Vec<EntryResult> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(entries.len().max(1));
    let chunk = entries.len().div_ceil(workers).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|e| verify_entry(zoo, e, tolerance))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verifier thread panicked"))
            .collect()
    })
}

pub fn summarize(entries: &[EntryResult]) -> Summary {
    let mut s = Summary {
        total: entries.len(),
        ..Summary::default()
    };
    for e in entries {
        match e.status {
            Status::Pass => s.passed += 1,
            Status::Fail => s.failed += 1,
            Status::Error => s.errors += 1,
            Status::Skipped => {}
        }
        match e.guard {
            GuardStatus::Exercised => s.exercised += 1,
            GuardStatus::Vacuous => s.vacuous += 1,
            GuardStatus::NotApplicable => s.not_applicable += 1,
        }
    }
    s
}

pub fn mode_of<S: Scalar>() -> ScalarMode {
    if <S::Real as Real>::EXACT {
        ScalarMode::Exact
    } else {
        ScalarMode::Float
    }
}

/// Run a suite on a zoo. Tables are attached for the `tables` and `all` suites.
pub fn run_suite<S: Scalar>(zoo: &Zoo<S>, suite: Suite, tolerance: f64) -> Result<Report> {
    let entries = crate::catalog::catalog_for(suite);
    let results = verify_all(zoo, &entries, tolerance);
    let tables = match suite {
        Suite::Tables | Suite::All => Some(Tables::build(zoo, tolerance)?),
        _ => None,
    };
    let mode = mode_of::<S>();
    Ok(Report {
        model: zoo.name().to_string(),
        mode,
        tolerance: (mode == ScalarMode::Float).then_some(tolerance),
        suite,
        summary: summarize(&results),
        entries: results,
        tables,
    })
}
