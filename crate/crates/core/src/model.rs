//! Two-stage decision trees: nature → decision taker → nature, with a payoff
//! at every leaf.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{approx_eq, Scalar};

/// Label of a nature outcome, e.g. `"b"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(String);

impl StateId {
    pub fn new(label: impl Into<String>) -> Self {
        StateId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for StateId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for StateId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for StateId {
    fn from(s: &str) -> Self {
        StateId(s.to_owned())
    }
}

impl From<String> for StateId {
    fn from(s: String) -> Self {
        StateId(s)
    }
}

/// A first-stage nature outcome. Only decision-relevant states carry
/// alternatives; the others exist so the simulator can sample them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage1State {
    pub id: StateId,
    pub decision: bool,
    pub alternatives: Vec<String>,
}

impl Stage1State {
    pub fn decision(id: impl Into<StateId>, alternatives: &[&str]) -> Self {
        Stage1State {
            id: id.into(),
            decision: true,
            alternatives: alternatives.iter().map(|a| a.to_string()).collect(),
        }
    }

    pub fn passive(id: impl Into<StateId>) -> Self {
        Stage1State {
            id: id.into(),
            decision: false,
            alternatives: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PayoffKey {
    pub first: StateId,
    pub alternative: usize,
    pub second: StateId,
}

impl PayoffKey {
    pub fn new(first: impl Into<StateId>, alternative: usize, second: impl Into<StateId>) -> Self {
        PayoffKey {
            first: first.into(),
            alternative,
            second: second.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree<T> {
    pub name: String,
    pub stage1: Vec<Stage1State>,
    pub stage2: Vec<StateId>,
    pub payoffs: BTreeMap<PayoffKey, T>,
    /// Aligned with `stage1` when present.
    pub stage1_probs: Option<Vec<T>>,
    /// Aligned with `stage2` when present.
    pub stage2_probs: Option<Vec<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    First,
    Second,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::First => "stage1",
            Stage::Second => "stage2",
        })
    }
}

/// A broken tree invariant, naming the field and state involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoDecisionStates,
    NoStage2States,
    EmptyStateId {
        stage: Stage,
    },
    DuplicateState {
        stage: Stage,
        state: String,
    },
    NoAlternatives {
        state: String,
    },
    AlternativesOnPassiveState {
        state: String,
    },
    DuplicateAlternative {
        state: String,
        label: String,
    },
    MissingPayoff {
        first: String,
        alternative: String,
        second: String,
    },
    UnexpectedPayoff {
        first: String,
        alternative: usize,
        second: String,
    },
    ProbabilityCount {
        stage: Stage,
        expected: usize,
        found: usize,
    },
    NegativeProbability {
        stage: Stage,
        state: String,
    },
    ProbabilitySum {
        stage: Stage,
        sum: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NoDecisionStates => write!(f, "stage1: no decision states"),
            NoStage2States => write!(f, "stage2: no states"),
            EmptyStateId { stage } => write!(f, "{stage}: empty state id"),
            DuplicateState { stage, state } => write!(f, "{stage}: duplicate state `{state}`"),
            NoAlternatives { state } => {
                write!(f, "alternatives: decision state `{state}` has none")
            }
            AlternativesOnPassiveState { state } => {
                write!(
                    f,
                    "alternatives: non-decision state `{state}` must not carry alternatives"
                )
            }
            DuplicateAlternative { state, label } => {
                write!(f, "alternatives: `{state}` lists `{label}` twice")
            }
            MissingPayoff {
                first,
                alternative,
                second,
            } => {
                write!(f, "payoff: missing cell ({first}, {alternative}, {second})")
            }
            UnexpectedPayoff {
                first,
                alternative,
                second,
            } => {
                write!(
                    f,
                    "payoff: cell ({first}, #{alternative}, {second}) is outside the tree"
                )
            }
            ProbabilityCount {
                stage,
                expected,
                found,
            } => {
                write!(
                    f,
                    "{stage} probabilities: expected {expected} values, found {found}"
                )
            }
            NegativeProbability { stage, state } => {
                write!(f, "{stage} probabilities: negative value for `{state}`")
            }
            ProbabilitySum { stage, sum } => {
                write!(f, "{stage} probabilities do not sum to 1 (sum = {sum})")
            }
        }
    }
}

/// Choice of one alternative index per decision-relevant stage-1 state, in
/// declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strategy(pub Vec<usize>);

impl Strategy {
    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    /// Alternative chosen at the `position`-th decision state.
    pub fn choice_at(&self, position: usize) -> usize {
        self.0[position]
    }

    /// Concatenated alternative labels, e.g. `"010"`.
    pub fn label<T: Scalar>(&self, tree: &DecisionTree<T>) -> String {
        tree.decision_states()
            .zip(&self.0)
            .map(|(state, &alt)| state.alternatives[alt].as_str())
            .collect()
    }

    /// Parses a label string such as `"010"` against the tree's alternatives.
    pub fn parse<T: Scalar>(label: &str, tree: &DecisionTree<T>) -> Result<Self> {
        let mut rest = label;
        let mut choices = Vec::new();
        for state in tree.decision_states() {
            // Longest matching label wins so multi-character labels work.
            let hit = state
                .alternatives
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_empty() && rest.starts_with(a.as_str()))
                .max_by_key(|(_, a)| a.len());
            match hit {
                Some((idx, alt)) => {
                    choices.push(idx);
                    rest = &rest[alt.len()..];
                }
                None => {
                    return Err(Error::InvalidStrategy(format!(
                        "`{label}` has no valid alternative for state `{}`",
                        state.id
                    )))
                }
            }
        }
        if !rest.is_empty() {
            return Err(Error::InvalidStrategy(format!(
                "`{label}` has trailing `{rest}`"
            )));
        }
        Ok(Strategy(choices))
    }
}

/// Matrix column: (decision-relevant stage-1 outcome, stage-2 outcome).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompoundState {
    pub first: StateId,
    pub second: StateId,
}

impl CompoundState {
    pub fn label(&self) -> String {
        format!("{}{}", self.first, self.second)
    }
}

impl<T: Scalar> DecisionTree<T> {
    pub fn decision_states(&self) -> impl Iterator<Item = &Stage1State> + Clone {
        self.stage1.iter().filter(|s| s.decision)
    }

    pub fn decision_count(&self) -> usize {
        self.decision_states().count()
    }

    pub fn stage1_state(&self, id: &str) -> Result<&Stage1State> {
        self.stage1
            .iter()
            .find(|s| s.id.as_str() == id)
            .ok_or_else(|| Error::UnknownFirstState(id.to_owned()))
    }

    /// Index of `id` among the decision-relevant states.
    pub fn decision_position(&self, id: &str) -> Option<usize> {
        self.decision_states().position(|s| s.id.as_str() == id)
    }

    pub fn stage2_index(&self, id: &str) -> Option<usize> {
        self.stage2.iter().position(|s| s.as_str() == id)
    }

    pub fn set_payoff(&mut self, first: &str, alternative: usize, second: &str, value: T) {
        self.payoffs
            .insert(PayoffKey::new(first, alternative, second), value);
    }

    /// Leaf payment for the path (first, alternative, second).
    pub fn path_payoff(&self, first: &str, alternative: usize, second: &str) -> Result<T> {
        let state = self.stage1_state(first)?;
        if !state.decision || alternative >= state.alternatives.len() {
            return Err(Error::UnknownAlternative {
                state: first.to_owned(),
                alternative: alternative.to_string(),
            });
        }
        if self.stage2_index(second).is_none() {
            return Err(Error::UnknownSecondState(second.to_owned()));
        }
        let key = PayoffKey::new(first, alternative, second);
        self.payoffs.get(&key).cloned().ok_or_else(|| {
            Error::InvalidTree(vec![Violation::MissingPayoff {
                first: first.to_owned(),
                alternative: state.alternatives[alternative].clone(),
                second: second.to_owned(),
            }])
        })
    }

    /// Checks every structural invariant and returns all violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();

        if self.decision_count() == 0 {
            out.push(Violation::NoDecisionStates);
        }
        if self.stage2.is_empty() {
            out.push(Violation::NoStage2States);
        }

        check_ids(Stage::First, self.stage1.iter().map(|s| &s.id), &mut out);
        check_ids(Stage::Second, self.stage2.iter(), &mut out);

        let mut expected_keys = BTreeSet::new();
        for state in &self.stage1 {
            if !state.decision {
                if !state.alternatives.is_empty() {
                    out.push(Violation::AlternativesOnPassiveState {
                        state: state.id.to_string(),
                    });
                }
                continue;
            }
            if state.alternatives.is_empty() {
                out.push(Violation::NoAlternatives {
                    state: state.id.to_string(),
                });
            }
            let mut seen = HashSet::new();
            for label in &state.alternatives {
                if !seen.insert(label) {
                    out.push(Violation::DuplicateAlternative {
                        state: state.id.to_string(),
                        label: label.clone(),
                    });
                }
            }
            for (alt, label) in state.alternatives.iter().enumerate() {
                for second in &self.stage2 {
                    let key = PayoffKey::new(state.id.clone(), alt, second.clone());
                    if !self.payoffs.contains_key(&key) {
                        out.push(Violation::MissingPayoff {
                            first: state.id.to_string(),
                            alternative: label.clone(),
                            second: second.to_string(),
                        });
                    }
                    expected_keys.insert(key);
                }
            }
        }
        for key in self.payoffs.keys() {
            if !expected_keys.contains(key) {
                out.push(Violation::UnexpectedPayoff {
                    first: key.first.to_string(),
                    alternative: key.alternative,
                    second: key.second.to_string(),
                });
            }
        }

        if let Some(probs) = &self.stage1_probs {
            let ids: Vec<_> = self.stage1.iter().map(|s| &s.id).collect();
            check_probabilities(Stage::First, &ids, probs, &mut out);
        }
        if let Some(probs) = &self.stage2_probs {
            let ids: Vec<_> = self.stage2.iter().collect();
            check_probabilities(Stage::Second, &ids, probs, &mut out);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `Ok(())` or [`Error::InvalidTree`] carrying every violation.
    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidTree(violations))
        }
    }
}

fn check_ids<'a>(stage: Stage, ids: impl Iterator<Item = &'a StateId>, out: &mut Vec<Violation>) {
    let mut seen = HashSet::new();
    for id in ids {
        if id.as_str().is_empty() {
            out.push(Violation::EmptyStateId { stage });
        } else if !seen.insert(id) {
            out.push(Violation::DuplicateState {
                stage,
                state: id.to_string(),
            });
        }
    }
}

fn check_probabilities<T: Scalar>(
    stage: Stage,
    ids: &[&StateId],
    probs: &[T],
    out: &mut Vec<Violation>,
) {
    if ids.len() != probs.len() {
        out.push(Violation::ProbabilityCount {
            stage,
            expected: ids.len(),
            found: probs.len(),
        });
        return;
    }
    for (id, p) in ids.iter().zip(probs) {
        if *p < T::zero() {
            out.push(Violation::NegativeProbability {
                stage,
                state: id.to_string(),
            });
        }
    }
    let sum = probs.iter().cloned().fold(T::zero(), |acc, p| acc + p);
    if !approx_eq(&sum, &T::one()) {
        out.push(Violation::ProbabilitySum {
            stage,
            sum: sum.to_literal(),
        });
    }
}
