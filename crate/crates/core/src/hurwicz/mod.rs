//! Hurwicz criterion over a payoff matrix.
//!
//! For a row with minimum `m` and maximum `M`, the criterion value is
//! `λ·m + (1 − λ)·M`. λ is the pessimism weight: λ = 1 scores a strategy by
//! its worst case (Wald maximin), λ = 0 by its best case (maximax).
//!
//! Ties between strategies always go to the lowest strategy index.

pub(crate) mod envelope;

pub use envelope::{
    invert, strategy_regions, InversionMode, LambdaInterval, LambdaRegion, LambdaRegionSet,
    LambdaSet,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::normalize::PayoffMatrix;
use crate::scalar::{definitely_greater, Scalar};

/// Pessimism weight λ ∈ [0, 1].
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct RiskParameter<T>(T);

impl<T: Scalar> RiskParameter<T> {
    pub fn new(lambda: T) -> Result<Self> {
        if lambda < T::zero() || lambda > T::one() {
            return Err(Error::LambdaOutOfRange(lambda.to_literal()));
        }
        Ok(RiskParameter(lambda))
    }

    /// λ = 1: judge every strategy by its worst outcome.
    pub fn pessimist() -> Self {
        RiskParameter(T::one())
    }

    /// λ = 0: judge every strategy by its best outcome.
    pub fn optimist() -> Self {
        RiskParameter(T::zero())
    }

    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn into_inner(self) -> T {
        self.0
    }
}

impl<T: Scalar> fmt::Display for RiskParameter<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_literal())
    }
}

/// `L(h, λ) = intercept + slope·λ` with intercept = row max and
/// slope = row min − row max.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionLine<T> {
    pub strategy: usize,
    pub intercept: T,
    pub slope: T,
}

impl<T: Scalar> CriterionLine<T> {
    pub fn from_row(strategy: usize, row: &[T]) -> Result<Self> {
        let (min, max) = row_extremes(row)?;
        Ok(CriterionLine {
            strategy,
            slope: min - max.clone(),
            intercept: max,
        })
    }

    pub fn value_at(&self, lambda: &T) -> T {
        self.intercept.clone() + self.slope.clone() * lambda.clone()
    }
}

/// (min, max) of a non-empty row.
pub fn row_extremes<T: Scalar>(row: &[T]) -> Result<(T, T)> {
    let first = row.first().ok_or(Error::EmptyRow)?;
    Ok(row[1..]
        .iter()
        .fold((first.clone(), first.clone()), |(lo, hi), x| {
            (
                if *x < lo { x.clone() } else { lo },
                if *x > hi { x.clone() } else { hi },
            )
        }))
}

pub fn hurwicz_value<T: Scalar>(row: &[T], lambda: &RiskParameter<T>) -> Result<T> {
    let (min, max) = row_extremes(row)?;
    let lambda = lambda.value().clone();
    Ok(lambda.clone() * min + (T::one() - lambda) * max)
}

pub fn criterion_lines<T: Scalar>(matrix: &PayoffMatrix<T>) -> Result<Vec<CriterionLine<T>>> {
    matrix.ensure_nonempty()?;
    matrix
        .cells
        .iter()
        .enumerate()
        .map(|(h, row)| CriterionLine::from_row(h, row))
        .collect()
}

/// Lowest-index maximizer of the lines at `lambda`.
pub(crate) fn best_of_lines<T: Scalar>(lines: &[CriterionLine<T>], lambda: &T) -> (usize, T) {
    let mut best = (lines[0].strategy, lines[0].value_at(lambda));
    for line in &lines[1..] {
        let v = line.value_at(lambda);
        if definitely_greater(&v, &best.1) {
            best = (line.strategy, v);
        }
    }
    best
}

/// Maximizing strategy (0-based) and the criterion value V(λ).
pub fn best_strategy<T: Scalar>(
    matrix: &PayoffMatrix<T>,
    lambda: &RiskParameter<T>,
) -> Result<(usize, T)> {
    let lines = criterion_lines(matrix)?;
    Ok(best_of_lines(&lines, lambda.value()))
}

/// Grid `0, step, 2·step, …` closed with 1; the last regular point is
/// dropped when it falls within tolerance of 1.
pub fn lambda_grid<T: Scalar>(step: &T) -> Result<Vec<T>> {
    if *step <= T::zero() || *step > T::one() {
        return Err(Error::StepOutOfRange(step.to_literal()));
    }
    let mut grid = Vec::new();
    let mut k: i64 = 0;
    loop {
        let point = T::from_ratio(k, 1) * step.clone();
        if !definitely_greater(&T::one(), &point) {
            break;
        }
        grid.push(point);
        k += 1;
    }
    grid.push(T::one());
    Ok(grid)
}

/// Criterion values of every strategy on a λ grid, with the per-point optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable<T> {
    pub row_labels: Vec<String>,
    pub grid: Vec<T>,
    /// `values[h][k]` = L(h, grid[k]).
    pub values: Vec<Vec<T>>,
    pub best_values: Vec<T>,
    /// 0-based strategy index per grid point.
    pub best_strategies: Vec<usize>,
}

pub fn sweep<T: Scalar>(matrix: &PayoffMatrix<T>, step: &T) -> Result<SweepTable<T>> {
    let grid = lambda_grid(step)?;
    sweep_points(matrix, grid)
}

/// Sweep over an explicit list of λ values.
pub fn sweep_points<T: Scalar>(matrix: &PayoffMatrix<T>, grid: Vec<T>) -> Result<SweepTable<T>> {
    for lambda in &grid {
        RiskParameter::new(lambda.clone())?;
    }
    let lines = criterion_lines(matrix)?;
    let values = lines
        .iter()
        .map(|line| grid.iter().map(|l| line.value_at(l)).collect())
        .collect();
    let (best_strategies, best_values) = grid.iter().map(|l| best_of_lines(&lines, l)).unzip();
    Ok(SweepTable {
        row_labels: matrix.row_labels.clone(),
        grid,
        values,
        best_values,
        best_strategies,
    })
}
