//! End-to-end reproduction of the rescue-robot example: normalize, sweep,
//! regions, and λ estimation from the published sample, each checked against
//! the published tables.

use std::fmt::Write as _;

use crate::estimate::{estimate_lambda, EstimateMode, Identifiability};
use crate::fixtures::{
    printed_misprints, rescue_fixture, sample_log_fixture, PRINTED_BEST_STRATEGIES,
    PRINTED_BEST_VALUES, PRINTED_COLUMNS, PRINTED_MATRIX, PRINTED_SWEEP,
};
use crate::hurwicz::{row_extremes, strategy_regions, sweep, LambdaInterval, LambdaSet};
use crate::model::DecisionTree;
use crate::normalize::{normalize, DEFAULT_STRATEGY_CAP};
use crate::render::{render_profile, render_regions, render_sweep, strategy_name};
use crate::scalar::Scalar;
use crate::simulate::ObservationLog;
use crate::{io, Rational, Result};

/// Report text plus every discrepancy found; empty `mismatches` means the
/// reproduction succeeded.
#[derive(Debug, Clone)]
pub struct ReproOutcome {
    pub report: String,
    pub mismatches: Vec<String>,
}

impl ReproOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// Reproduction on the embedded example with the given λ grid step.
pub fn run_reproduction(step: &Rational) -> Result<ReproOutcome> {
    reproduce(&rescue_fixture(), &sample_log_fixture(), step)
}

/// Runs the full pipeline on `tree` and `log` and diffs every stage against
/// the published example.
pub fn reproduce(
    tree: &DecisionTree<Rational>,
    log: &ObservationLog<Rational>,
    step: &Rational,
) -> Result<ReproOutcome> {
    let mut report = String::new();
    let mut bad = Vec::new();

    let matrix = normalize(tree, DEFAULT_STRATEGY_CAP)?;
    writeln!(report, "== Normalized payment matrix ==").unwrap();
    report.push_str(&io::render_matrix(&matrix, None));
    check_matrix(&matrix, &mut bad);

    let table = sweep(&matrix, step)?;
    writeln!(
        report,
        "\n== Hurwicz criterion values (step {}) ==",
        step.to_literal()
    )
    .unwrap();
    report.push_str(&render_sweep(&table, 1));
    check_sweep(&table, &mut bad);

    let regions = strategy_regions(&matrix)?;
    writeln!(report, "\n== Optimal strategy regions ==").unwrap();
    report.push_str(&render_regions(&regions, &matrix.row_labels));
    let expected_regions = [
        (1, q(0, 1), q(2, 5)),
        (2, q(2, 5), q(4, 5)),
        (0, q(4, 5), q(1, 1)),
    ];
    let got: Vec<(usize, Rational, Rational)> = regions
        .regions
        .iter()
        .map(|r| (r.strategy, r.lo.clone(), r.hi.clone()))
        .collect();
    if got != expected_regions {
        bad.push(format!(
            "regions: expected f2 [0, 2/5], f3 [2/5, 4/5], f1 [4/5, 1]; computed {}",
            regions
                .regions
                .iter()
                .map(|r| format!(
                    "{} [{}, {}]",
                    strategy_name(r.strategy),
                    r.lo.to_literal(),
                    r.hi.to_literal()
                ))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }

    let grid_mode = EstimateMode::Grid(step.clone());
    let (_, grid) = estimate_lambda(log, tree, &grid_mode, DEFAULT_STRATEGY_CAP)?;
    let (_, exact) = estimate_lambda(log, tree, &EstimateMode::Exact, DEFAULT_STRATEGY_CAP)?;
    writeln!(report, "\n== Risk profile from the observation sample ==").unwrap();
    writeln!(report, "-- grid (step {}) --", step.to_literal()).unwrap();
    report.push_str(&render_profile(&grid, &matrix.row_labels));
    writeln!(report, "-- exact --").unwrap();
    report.push_str(&render_profile(&exact, &matrix.row_labels));

    let f3_interior = LambdaInterval::open(q(2, 5), q(4, 5));
    let expected_points: Vec<Rational> = table
        .grid
        .iter()
        .filter(|l| f3_interior.contains(l))
        .cloned()
        .collect();
    for (name, profile, expected) in [
        ("grid", &grid, LambdaSet::Points(expected_points)),
        (
            "exact",
            &exact,
            LambdaSet::Intervals(vec![f3_interior.clone()]),
        ),
    ] {
        if profile.strategies != [2] || profile.status != Identifiability::Identified {
            bad.push(format!(
                "{name} estimate: expected identified f3, computed {} ({})",
                profile
                    .strategies
                    .iter()
                    .map(|&h| strategy_name(h))
                    .collect::<Vec<_>>()
                    .join(", "),
                profile.status
            ));
        }
        if profile.estimate != expected {
            bad.push(format!(
                "{name} estimate: expected λ ∈ {expected}, computed λ ∈ {}",
                profile.estimate
            ));
        }
    }

    writeln!(report, "\n== Checks ==").unwrap();
    if bad.is_empty() {
        writeln!(report, "all reproduction checks passed").unwrap();
    } else {
        for m in &bad {
            writeln!(report, "MISMATCH {m}").unwrap();
        }
    }
    Ok(ReproOutcome {
        report,
        mismatches: bad,
    })
}

fn check_matrix(matrix: &crate::PayoffMatrix<Rational>, bad: &mut Vec<String>) {
    if matrix.column_labels != PRINTED_COLUMNS {
        bad.push(format!(
            "matrix columns: computed {}",
            matrix.column_labels.join(" ")
        ));
        return;
    }
    if matrix.strategy_count() != PRINTED_MATRIX.len() {
        bad.push(format!(
            "matrix: expected 8 rows, computed {}",
            matrix.strategy_count()
        ));
        return;
    }
    let skip: Vec<(usize, usize)> = printed_misprints().collect();
    for (h, (label, printed)) in PRINTED_MATRIX.iter().enumerate() {
        if matrix.row_labels[h] != *label {
            bad.push(format!(
                "matrix row {h}: expected label {label}, computed {}",
                matrix.row_labels[h]
            ));
            continue;
        }
        let row = matrix.row(h);
        for (j, &p) in printed.iter().enumerate() {
            if !skip.contains(&(h, j)) && row[j] != q(p, 1) {
                bad.push(format!(
                    "matrix cell ({label}, {}): expected {p}, computed {}",
                    PRINTED_COLUMNS[j],
                    row[j].to_literal()
                ));
            }
        }
        let expected = (
            q(*printed.iter().min().unwrap(), 1),
            q(*printed.iter().max().unwrap(), 1),
        );
        let computed = row_extremes(row).expect("rows are non-empty");
        if computed != expected {
            bad.push(format!(
                "matrix row {label} (min, max): expected ({}, {}), computed ({}, {})",
                expected.0, expected.1, computed.0, computed.1
            ));
        }
    }
}

/// Compares every grid point that falls on the published 0.1 grid.
fn check_sweep(table: &crate::SweepTable<Rational>, bad: &mut Vec<String>) {
    if table.values.len() != PRINTED_SWEEP.len() {
        bad.push(format!(
            "sweep: expected 8 rows, computed {}",
            table.values.len()
        ));
        return;
    }
    for (k, lambda) in table.grid.iter().enumerate() {
        let tenths = lambda * Rational::from_ratio(10, 1);
        if !tenths.is_integer() {
            continue;
        }
        let col = tenths.to_integer().try_into().unwrap_or(usize::MAX);
        let at = lambda.format_decimal();
        for (h, (label, printed)) in PRINTED_SWEEP.iter().enumerate() {
            let got = table.values[h][k].format_fixed(1);
            if got != printed[col] {
                bad.push(format!(
                    "sweep cell ({label}, {at}): expected {}, computed {got}",
                    printed[col]
                ));
            }
        }
        let got = table.best_values[k].format_fixed(1);
        if got != PRINTED_BEST_VALUES[col] {
            bad.push(format!(
                "sweep L*({at}): expected {}, computed {got}",
                PRINTED_BEST_VALUES[col]
            ));
        }
        let got = table.best_strategies[k] + 1;
        if got != PRINTED_BEST_STRATEGIES[col] {
            bad.push(format!(
                "sweep f*({at}): expected f{}, computed f{got}",
                PRINTED_BEST_STRATEGIES[col]
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let out = run_reproduction(&q(1, 10)).unwrap();
        assert!(out.passed(), "{:?}", out.mismatches);
        assert!(out.report.contains("λ ∈ {0.5, 0.6, 0.7}"));
        assert!(out.report.contains("λ ∈ (2/5, 4/5)"));
    }

    #[test]
    fn coarse_step() {
        let out = run_reproduction(&q(1, 5)).unwrap();
        assert!(out.passed(), "{:?}", out.mismatches);
        assert!(out.report.contains("f*,f2,f2,f2,f3,f1,f1\n"));
    }

    #[test]
    fn corrupted_tree_is_diffed() {
        let mut tree = rescue_fixture::<Rational>();
        tree.set_payoff("c", 1, "d", q(7, 1));
        let out = reproduce(&tree, &sample_log_fixture(), &q(1, 10)).unwrap();
        assert!(!out.passed());
        assert!(out
            .mismatches
            .iter()
            .any(|m| m.contains("matrix cell (010, cd): expected 8, computed 7")));
        assert!(out.report.contains("MISMATCH"));
    }
}
