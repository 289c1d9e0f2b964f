//! Recovering a decision taker's strategy and pessimism weight λ from an
//! observation log.

use std::fmt;

use crate::error::{Error, Result};
use crate::hurwicz::{
    best_of_lines, criterion_lines, envelope::envelope_regions, invert, InversionMode, LambdaSet,
    RiskParameter,
};
use crate::model::{DecisionTree, StateId, Strategy};
use crate::normalize::{enumerate_strategies, normalize, PayoffMatrix};
use crate::scalar::{definitely_greater, Scalar};
use crate::simulate::ObservationLog;

/// Decision counts observed at one decision-relevant state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateTally {
    pub state: StateId,
    /// Count per alternative index.
    pub counts: Vec<usize>,
    /// Majority alternative; `None` when the state was never observed.
    pub inferred: Option<usize>,
    /// Set when two or more alternatives share the majority count.
    pub ambiguous: bool,
}

impl StateTally {
    pub fn observations(&self) -> usize {
        self.counts.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyInference {
    pub tallies: Vec<StateTally>,
    /// The full strategy when every decision state was observed.
    pub strategy: Option<Strategy>,
    /// 0-based indices of every strategy agreeing with all inferred choices.
    pub completions: Vec<usize>,
}

impl StrategyInference {
    pub fn is_total(&self) -> bool {
        self.strategy.is_some()
    }

    pub fn is_ambiguous(&self) -> bool {
        self.tallies.iter().any(|t| t.ambiguous)
    }
}

/// Per-state majority vote over the log. Majority ties go to the lowest
/// alternative index and are flagged.
pub fn infer_strategy<T: Scalar>(
    log: &ObservationLog<T>,
    tree: &DecisionTree<T>,
    cap: usize,
) -> Result<StrategyInference> {
    tree.ensure_valid()?;
    let mut tallies: Vec<StateTally> = tree
        .decision_states()
        .map(|s| StateTally {
            state: s.id.clone(),
            counts: vec![0; s.alternatives.len()],
            inferred: None,
            ambiguous: false,
        })
        .collect();
    for rec in &log.records {
        let bad = |message: String| Error::BadRecord {
            index: rec.index,
            message,
        };
        let state = tree
            .stage1_state(rec.first.as_str())
            .map_err(|e| bad(e.to_string()))?;
        let pos = tree
            .decision_position(rec.first.as_str())
            .filter(|_| state.decision)
            .ok_or_else(|| bad(format!("state `{}` takes no decision", rec.first)))?;
        if tree.stage2_index(rec.second.as_str()).is_none() {
            return Err(bad(format!("unknown stage-2 state `{}`", rec.second)));
        }
        let tally = &mut tallies[pos];
        if rec.decision >= tally.counts.len() {
            return Err(bad(format!(
                "state `{}` has no alternative #{}",
                rec.first, rec.decision
            )));
        }
        tally.counts[rec.decision] += 1;
    }
    for tally in &mut tallies {
        let top = tally.counts.iter().copied().max().unwrap_or(0);
        if top > 0 {
            tally.inferred = tally.counts.iter().position(|&c| c == top);
            tally.ambiguous = tally.counts.iter().filter(|&&c| c == top).count() > 1;
        }
    }

    let completions = enumerate_strategies(tree, cap)?
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            tallies
                .iter()
                .zip(s.choices())
                .all(|(t, &c)| t.inferred.is_none_or(|i| i == c))
        })
        .map(|(h, _)| h)
        .collect();
    let strategy = tallies
        .iter()
        .map(|t| t.inferred)
        .collect::<Option<Vec<_>>>()
        .map(Strategy);
    Ok(StrategyInference {
        tallies,
        strategy,
        completions,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum EstimateMode<T> {
    /// Exact λ intervals from the upper envelope.
    Exact,
    /// Grid points `0, step, …, 1`.
    Grid(T),
}

impl<T: Scalar> EstimateMode<T> {
    pub fn default_grid() -> Self {
        EstimateMode::Grid(T::from_ratio(1, 10))
    }

    fn step(&self) -> Option<&T> {
        match self {
            EstimateMode::Exact => None,
            EstimateMode::Grid(step) => Some(step),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identifiability {
    /// Every decision state observed; the strategy is Hurwicz-optimal for some λ.
    Identified,
    /// Some decision states unobserved; the estimate covers every completion.
    PartiallyIdentified,
    /// No λ in [0, 1] selects the observed strategy (or any completion).
    NonRationalizable,
}

impl fmt::Display for Identifiability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identifiability::Identified => "identified",
            Identifiability::PartiallyIdentified => "partially-identified",
            Identifiability::NonRationalizable => "non-rationalizable",
        })
    }
}

/// Closest-fitting λ for a strategy no Hurwicz agent would pick.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretFallback<T> {
    pub strategy: usize,
    pub lambda: RiskParameter<T>,
    pub regret: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiskProfile<T> {
    /// Strategy indices the estimate was built from (one when identified).
    pub strategies: Vec<usize>,
    pub estimate: LambdaSet<T>,
    pub status: Identifiability,
    pub fallback: Option<RegretFallback<T>>,
}

/// Minimizer of the regret V(λ) − L(strategy, λ) over [0, 1]; ties go to
/// the smallest λ. The regret is convex piecewise linear, so only envelope
/// knots need checking.
pub fn regret_fallback<T: Scalar>(
    matrix: &PayoffMatrix<T>,
    strategy: usize,
) -> Result<(RiskParameter<T>, T)> {
    matrix.check_strategy(strategy)?;
    let lines = criterion_lines(matrix)?;
    let regions = envelope_regions(&lines);
    let mut best: Option<(T, T)> = None;
    for knot in regions.knots() {
        let regret = best_of_lines(&lines, &knot).1 - lines[strategy].value_at(&knot);
        match &best {
            Some((_, r)) if !definitely_greater(r, &regret) => {}
            _ => best = Some((knot, regret)),
        }
    }
    let (lambda, regret) = best.expect("knots always include 0 and 1");
    Ok((RiskParameter::new(lambda)?, regret))
}

/// λ estimate for a set of candidate strategies (a single observed strategy,
/// or every completion of a partial observation).
pub fn profile_strategies<T: Scalar>(
    matrix: &PayoffMatrix<T>,
    strategies: &[usize],
    mode: &EstimateMode<T>,
    total: bool,
) -> Result<RiskProfile<T>> {
    let mut exact = LambdaSet::Intervals(Vec::new());
    let mut estimate = match mode {
        EstimateMode::Exact => LambdaSet::Intervals(Vec::new()),
        EstimateMode::Grid(_) => LambdaSet::Points(Vec::new()),
    };
    for &h in strategies {
        let selected = invert(matrix, h, InversionMode::Selected, None)?;
        if let Some(step) = mode.step() {
            estimate = estimate.union(invert(matrix, h, InversionMode::Selected, Some(step))?);
        }
        exact = exact.union(selected);
    }
    if mode.step().is_none() {
        estimate = exact.clone();
    }

    if exact.is_empty() {
        let mut fallback: Option<RegretFallback<T>> = None;
        for &h in strategies {
            let (lambda, regret) = regret_fallback(matrix, h)?;
            let better = match &fallback {
                None => true,
                Some(f) => {
                    definitely_greater(&f.regret, &regret)
                        || (!definitely_greater(&regret, &f.regret)
                            && lambda.value() < f.lambda.value())
                }
            };
            if better {
                fallback = Some(RegretFallback {
                    strategy: h,
                    lambda,
                    regret,
                });
            }
        }
        return Ok(RiskProfile {
            strategies: strategies.to_vec(),
            estimate: estimate.empty_like(),
            status: Identifiability::NonRationalizable,
            fallback,
        });
    }
    Ok(RiskProfile {
        strategies: strategies.to_vec(),
        estimate,
        status: if total {
            Identifiability::Identified
        } else {
            Identifiability::PartiallyIdentified
        },
        fallback: None,
    })
}

/// Infers the strategy behind `log` and inverts the Hurwicz selection map.
pub fn estimate_lambda<T: Scalar>(
    log: &ObservationLog<T>,
    tree: &DecisionTree<T>,
    mode: &EstimateMode<T>,
    cap: usize,
) -> Result<(StrategyInference, RiskProfile<T>)> {
    let inference = infer_strategy(log, tree, cap)?;
    let matrix = normalize(tree, cap)?;
    let profile = profile_strategies(&matrix, &inference.completions, mode, inference.is_total())?;
    Ok((inference, profile))
}

impl<T: Scalar> RiskProfile<T> {
    pub fn is_zero_regret(&self) -> bool {
        self.fallback.as_ref().is_none_or(|f| f.regret.is_zero())
    }
}
