//! Commutator and bidegree tables recomputed on a model.
//!
//! Commutator cells are expressed in the span of the pure operator families
//! by an exact linear solve, so the emitted expression is what the matrices
//! say, independently of the expected value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{bidegree_items, commutator_rows};
use crate::error::Result;
use crate::expr::{br, op, Expr};
use crate::multivector::Picture;
use crate::operator::LinearOperator;
use crate::scalar::Scalar;
use crate::zoo::Zoo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    /// The expected expression equals the commutator.
    Match,
    /// The commutator is in the span but differs from the expected expression.
    Mismatch,
    /// The commutator is outside the span of the basis operators.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub column: String,
    pub expected: String,
    /// Solved expression in the basis, or `UNRESOLVED`.
    pub computed: String,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorRow {
    pub operator: String,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorTable {
    pub basis: Vec<String>,
    pub rows: Vec<CommutatorRow>,
    /// Basis operators that vanish on this model.
    pub vanishing: Vec<String>,
    /// Linear relations among the remaining basis operators on this model.
    pub coincidences: Vec<String>,
}

impl CommutatorTable {
    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.rows.iter().flat_map(|r| r.cells.iter())
    }

    pub fn count(&self, status: CellStatus) -> usize {
        self.cells().filter(|c| c.status == status).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// Nonzero, with every component at the declared bidegree.
    Placed,
    /// Nonzero with a component elsewhere.
    Misplaced,
    /// Zero on this model.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BidegreeEntry {
    pub operator: String,
    pub declared: (i32, i32),
    pub measured: Vec<(i32, i32)>,
    pub placement: Placement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BidegreeTable {
    pub entries: Vec<BidegreeEntry>,
}

impl BidegreeTable {
    pub fn count(&self, placement: Placement) -> usize {
        self.entries
            .iter()
            .filter(|e| e.placement == placement)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tables {
    pub commutators: CommutatorTable,
    pub bidegrees: BidegreeTable,
}

impl Tables {
    pub fn build<S: Scalar>(zoo: &Zoo<S>, tolerance: f64) -> Result<Self> {
        Ok(Tables {
            commutators: commutator_table(zoo, tolerance)?,
            bidegrees: bidegree_table(zoo, tolerance)?,
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let c = &self.commutators;
        let _ = writeln!(out, "## Commutators with Λ and L\n");
        let _ = writeln!(out, "| X | [X, Λ] | [X, L] |");
        let _ = writeln!(out, "|---|---|---|");
        for row in &c.rows {
            let cell = |k: usize| {
                let cell = &row.cells[k];
                match cell.status {
                    CellStatus::Match => cell.computed.clone(),
                    CellStatus::Mismatch => {
                        format!("{} (expected {})", cell.computed, cell.expected)
                    }
                    CellStatus::Unresolved => format!("UNRESOLVED (expected {})", cell.expected),
                }
            };
            let _ = writeln!(out, "| {} | {} | {} |", row.operator, cell(0), cell(1));
        }
        if !c.vanishing.is_empty() {
            let _ = writeln!(out, "\nZero on this model: {}.", c.vanishing.join(", "));
        }
        if !c.coincidences.is_empty() {
            let _ = writeln!(out, "\nRelations on this model:\n");
            for rel in &c.coincidences {
                let _ = writeln!(out, "- {rel}");
            }
        }
        let _ = writeln!(out, "\n## Bidegrees (p, q)\n");
        let placed: Vec<&BidegreeEntry> = self
            .bidegrees
            .entries
            .iter()
            .filter(|e| e.placement == Placement::Placed)
            .collect();
        if placed.is_empty() {
            let _ = writeln!(out, "Every listed operator vanishes on this model.");
        } else {
            let mut grid: BTreeMap<(i32, i32), Vec<&str>> = BTreeMap::new();
            for e in &placed {
                grid.entry(e.declared).or_default().push(&e.operator);
            }
            let ps: Vec<i32> = grid.keys().map(|k| k.0).collect();
            let qs: Vec<i32> = grid.keys().map(|k| k.1).collect();
            let (pmin, pmax) = (*ps.iter().min().unwrap(), *ps.iter().max().unwrap());
            let (qmin, qmax) = (*qs.iter().min().unwrap(), *qs.iter().max().unwrap());
            let _ = write!(out, "| q \\ p |");
            for p in pmin..=pmax {
                let _ = write!(out, " {p} |");
            }
            let _ = write!(out, "\n|---|");
            for _ in pmin..=pmax {
                let _ = write!(out, "---|");
            }
            out.push('\n');
            for q in (qmin..=qmax).rev() {
                let _ = write!(out, "| {q} |");
                for p in pmin..=pmax {
                    let names = grid.get(&(p, q)).map(|v| v.join(", ")).unwrap_or_default();
                    let _ = write!(out, " {names} |");
                }
                out.push('\n');
            }
        }
        let misplaced: Vec<&BidegreeEntry> = self
            .bidegrees
            .entries
            .iter()
            .filter(|e| e.placement == Placement::Misplaced)
            .collect();
        for e in misplaced {
            let _ = writeln!(
                out,
                "\nMISPLACED: {} declared {:?}, measured {:?}",
                e.operator, e.declared, e.measured
            );
        }
        out
    }
}

/// The 28 operators the commutator cells are solved against.
pub fn span_basis() -> Vec<Expr> {
    let names = [
        "mu",
        "del",
        "delbar",
        "mubar",
        "tau_mu",
        "tau_del",
        "tau_delbar",
        "tau_mubar",
        "lambda_mu",
        "lambda_del",
        "lambda_delbar",
        "lambda_mubar",
        "rho_del",
        "rho_delbar",
    ];
    let mut basis: Vec<Expr> = names.iter().map(|n| op(n)).collect();
    basis.extend(names.iter().map(|n| op(n).adj()));
    basis
}

/// Reduced row echelon form of `[A | B]` over the scalar field.
struct Echelon<S> {
    /// Pivot column and its reduced row (over all columns).
    pivots: Vec<(usize, Vec<S>)>,
    /// Rows that reduced to zero on the basis columns.
    residual_rows: Vec<Vec<S>>,
}

fn echelon<S: Scalar>(mut rows: Vec<Vec<S>>, basis_cols: usize, tolerance: f64) -> Echelon<S> {
    let mut pivots: Vec<(usize, Vec<S>)> = Vec::new();
    for col in 0..basis_cols {
        let best = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_negligible(tolerance))
            .max_by(|a, b| a.1[col].magnitude().total_cmp(&b.1[col].magnitude()))
            .map(|(k, _)| k);
        let Some(k) = best else { continue };
        let mut pivot = rows.swap_remove(k);
        let inv = S::one() / pivot[col].clone();
        for v in pivot.iter_mut() {
            if !v.is_zero() {
                *v = v.mul_ref(&inv);
            }
        }
        let eliminate = |row: &mut Vec<S>, pivot: &[S]| {
            let factor = row[col].clone();
            if factor.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(pivot) {
                if !p.is_zero() {
                    *v = v.clone() - factor.mul_ref(p);
                }
            }
        };
        for row in rows.iter_mut() {
            eliminate(row, &pivot);
        }
        for (_, row) in pivots.iter_mut() {
            eliminate(row, &pivot);
        }
        pivots.push((col, pivot));
    }
    Echelon {
        pivots,
        residual_rows: rows,
    }
}

fn pretty_combination<S: Scalar>(terms: &[(S, &Expr)]) -> String {
    let mut out = String::new();
    for (c, e) in terms {
        let name = e.pretty();
        let coef = c.render();
        let (sign, body) = match coef.as_str() {
            "1" => ("+", name),
            "-1" => ("-", name),
            s if s.starts_with('-') && !s[1..].contains(['+', '-']) => {
                ("-", format!("{}·{}", &s[1..], name))
            }
            s if s.contains(['+', '-']) => ("+", format!("({s})·{name}")),
            s => ("+", format!("{s}·{name}")),
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            let _ = write!(out, " {sign} {body}");
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

fn flatten<S: Scalar>(op: &LinearOperator<S>) -> &[S] {
    op.matrix.entries()
}

pub fn commutator_table<S: Scalar>(zoo: &Zoo<S>, tolerance: f64) -> Result<CommutatorTable> {
    let ext = Picture::Exterior;
    let basis = span_basis();
    let basis_ops: Vec<LinearOperator<S>> = basis
        .iter()
        .map(|e| e.eval(zoo, ext))
        .collect::<Result<_>>()?;
    let rows_def = commutator_rows();
    let mut targets = Vec::new();
    let mut expected_ok = Vec::new();
    for row in &rows_def {
        let x = crate::catalog::named_expr(row.operator);
        for (m, value) in [(op("Lambda"), &row.with_lambda), (op("L"), &row.with_l)] {
            let c = br(x.clone(), m).eval(zoo, ext)?;
            let v = value.eval(zoo, ext)?;
            expected_ok.push(c.minus(&v)?.matrix.is_negligible(tolerance));
            targets.push(c);
        }
    }

    let k = basis_ops.len();
    let dim2 = zoo.dim() * zoo.dim();
    let mut rows = Vec::new();
    for pos in 0..dim2 {
        let any = basis_ops
            .iter()
            .chain(&targets)
            .any(|o| !flatten(o)[pos].is_zero());
        if any {
            rows.push(
                basis_ops
                    .iter()
                    .chain(&targets)
                    .map(|o| flatten(o)[pos].clone())
                    .collect::<Vec<S>>(),
            );
        }
    }
    let ech = echelon(rows, k, tolerance);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|(c, _)| *c).collect();

    let mut vanishing = Vec::new();
    let mut coincidences = Vec::new();
    for (col, b) in basis_ops.iter().enumerate() {
        if pivot_cols.contains(&col) {
            continue;
        }
        if b.matrix.is_negligible(tolerance) {
            vanishing.push(basis[col].pretty());
            continue;
        }
        let terms: Vec<(S, &Expr)> = ech
            .pivots
            .iter()
            .filter(|(_, r)| !r[col].is_negligible(tolerance))
            .map(|(pc, r)| (r[col].clone(), &basis[*pc]))
            .collect();
        coincidences.push(format!(
            "{} = {}",
            basis[col].pretty(),
            pretty_combination(&terms)
        ));
    }

    let mut out_rows = Vec::new();
    let mut t = 0;
    for row in &rows_def {
        let mut cells = Vec::new();
        for (column, value) in [("Λ", &row.with_lambda), ("L", &row.with_l)] {
            let col = k + t;
            let consistent = ech
                .residual_rows
                .iter()
                .all(|r| r[col].is_negligible(tolerance));
            let computed = if consistent {
                let terms: Vec<(S, &Expr)> = ech
                    .pivots
                    .iter()
                    .filter(|(_, r)| !r[col].is_negligible(tolerance))
                    .map(|(pc, r)| (r[col].clone(), &basis[*pc]))
                    .collect();
                pretty_combination(&terms)
            } else {
                "UNRESOLVED".to_string()
            };
            let status = if !consistent {
                CellStatus::Unresolved
            } else if expected_ok[t] {
                CellStatus::Match
            } else {
                CellStatus::Mismatch
            };
            cells.push(Cell {
                column: column.to_string(),
                expected: value.pretty(),
                computed,
                status,
            });
            t += 1;
        }
        out_rows.push(CommutatorRow {
            operator: crate::catalog::named_expr(row.operator).pretty(),
            cells,
        });
    }
    Ok(CommutatorTable {
        basis: basis.iter().map(Expr::pretty).collect(),
        rows: out_rows,
        vanishing,
        coincidences,
    })
}

pub fn bidegree_table<S: Scalar>(zoo: &Zoo<S>, tolerance: f64) -> Result<BidegreeTable> {
    let mut items = bidegree_items();
    for (name, b) in [("L", (1, 1)), ("Lambda", (-1, -1)), ("H", (0, 0))] {
        items.push(crate::catalog::BidegreeItem {
            key: name.to_string(),
            expr: op(name),
            declared: b,
        });
    }
    let space = &zoo.geometry.space;
    let mut entries = Vec::new();
    for item in items {
        let o = item.expr.eval(zoo, Picture::Exterior)?;
        let measured: Vec<(i32, i32)> = space
            .measured_bidegrees(&o, tolerance)
            .into_iter()
            .collect();
        let placement = if measured.is_empty() {
            Placement::Zero
        } else if measured == [item.declared] {
            Placement::Placed
        } else {
            Placement::Misplaced
        };
        entries.push(BidegreeEntry {
            operator: item.expr.pretty(),
            declared: item.declared,
            measured,
            placement,
        });
    }
    Ok(BidegreeTable { entries })
}
