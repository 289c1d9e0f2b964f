//! Normal form of a two-stage tree: pure strategies × compound nature states.

use crate::error::{Error, Result};
use crate::model::{CompoundState, DecisionTree, Strategy};
use crate::scalar::Scalar;

pub const DEFAULT_STRATEGY_CAP: usize = 1 << 20;

/// Row/column provenance of a matrix built from a tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeLayout {
    pub strategies: Vec<Strategy>,
    pub states: Vec<CompoundState>,
}

/// Payment matrix: one row per pure strategy, one column per nature state.
///
/// Matrices loaded from files carry only labels; those built by [`normalize`]
/// also keep the strategies and compound states behind each label.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix<T> {
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub cells: Vec<Vec<T>>,
    pub layout: Option<TreeLayout>,
}

impl<T: Scalar> PayoffMatrix<T> {
    /// Builds a bare labelled matrix, checking the grid is rectangular and
    /// non-empty.
    pub fn from_rows(
        row_labels: Vec<String>,
        column_labels: Vec<String>,
        cells: Vec<Vec<T>>,
    ) -> Result<Self> {
        if row_labels.is_empty() || column_labels.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if cells.len() != row_labels.len() {
            return Err(Error::parse(
                "matrix",
                format!("{} labels for {} rows", row_labels.len(), cells.len()),
            ));
        }
        if let Some((i, _)) = cells
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != column_labels.len())
        {
            return Err(Error::parse(
                format!("matrix row {}", row_labels[i]),
                format!(
                    "expected {} cells, found {}",
                    column_labels.len(),
                    cells[i].len()
                ),
            ));
        }
        Ok(PayoffMatrix {
            row_labels,
            column_labels,
            cells,
            layout: None,
        })
    }

    pub fn strategy_count(&self) -> usize {
        self.cells.len()
    }

    pub fn state_count(&self) -> usize {
        self.column_labels.len()
    }

    pub fn row(&self, strategy: usize) -> &[T] {
        &self.cells[strategy]
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    pub fn column_index(&self, label: &str) -> Option<usize> {
        self.column_labels.iter().position(|l| l == label)
    }

    pub fn ensure_nonempty(&self) -> Result<()> {
        if self.cells.is_empty() || self.column_labels.is_empty() {
            Err(Error::EmptyMatrix)
        } else {
            Ok(())
        }
    }

    pub fn check_strategy(&self, index: usize) -> Result<()> {
        if index < self.strategy_count() {
            Ok(())
        } else {
            Err(Error::StrategyIndexOutOfRange {
                index,
                count: self.strategy_count(),
            })
        }
    }

    /// Applies `f` to every cell, keeping labels and layout.
    pub fn map_cells(&self, mut f: impl FnMut(&T) -> T) -> Self {
        PayoffMatrix {
            row_labels: self.row_labels.clone(),
            column_labels: self.column_labels.clone(),
            cells: self
                .cells
                .iter()
                .map(|r| r.iter().map(&mut f).collect())
                .collect(),
            layout: self.layout.clone(),
        }
    }
}

/// Number of pure strategies, without enumerating them.
pub fn strategy_count<T: Scalar>(tree: &DecisionTree<T>) -> u128 {
    tree.decision_states()
        .map(|s| s.alternatives.len() as u128)
        .try_fold(1u128, |acc, n| acc.checked_mul(n))
        .unwrap_or(u128::MAX)
}

/// All pure strategies in lexicographic order, the first decision state being
/// the most significant position.
pub fn enumerate_strategies<T: Scalar>(
    tree: &DecisionTree<T>,
    cap: usize,
) -> Result<Vec<Strategy>> {
    tree.ensure_valid()?;
    let count = strategy_count(tree);
    if count > cap as u128 {
        return Err(Error::StrategySpaceTooLarge { count, cap });
    }
    let radices: Vec<usize> = tree
        .decision_states()
        .map(|s| s.alternatives.len())
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; radices.len()];
    loop {
        out.push(Strategy(digits.clone()));
        // Odometer increment from the least significant position.
        let mut pos = radices.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Compound states: decision-relevant stage-1 outcomes (outer) × stage-2
/// outcomes (inner), both in declaration order.
pub fn enumerate_states<T: Scalar>(tree: &DecisionTree<T>) -> Result<Vec<CompoundState>> {
    tree.ensure_valid()?;
    Ok(tree
        .decision_states()
        .flat_map(|first| {
            tree.stage2.iter().map(move |second| CompoundState {
                first: first.id.clone(),
                second: second.clone(),
            })
        })
        .collect())
}

pub fn normalize<T: Scalar>(tree: &DecisionTree<T>, cap: usize) -> Result<PayoffMatrix<T>> {
    let strategies = enumerate_strategies(tree, cap)?;
    let states = enumerate_states(tree)?;
    let positions: Vec<usize> = states
        .iter()
        .map(|s| {
            tree.decision_position(s.first.as_str())
                .expect("enumerated state is decision-relevant")
        })
        .collect();
    let cells = strategies
        .iter()
        .map(|strategy| {
            states
                .iter()
                .zip(&positions)
                .map(|(state, &pos)| {
                    tree.path_payoff(
                        state.first.as_str(),
                        strategy.choice_at(pos),
                        state.second.as_str(),
                    )
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PayoffMatrix {
        row_labels: strategies.iter().map(|s| s.label(tree)).collect(),
        column_labels: states.iter().map(CompoundState::label).collect(),
        cells,
        layout: Some(TreeLayout { strategies, states }),
    })
}
