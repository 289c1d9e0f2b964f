//! Seeded generation of observation logs for a modelled decision taker.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hurwicz::{best_strategy, RiskParameter};
use crate::model::{DecisionTree, StateId, Strategy};
use crate::normalize::{enumerate_strategies, normalize};
use crate::scalar::Scalar;

/// One observed episode: nature, decision, nature, payment.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationRecord<T> {
    /// 1-based position in the log.
    pub index: usize,
    pub first: StateId,
    /// Alternative index at `first`.
    pub decision: usize,
    pub second: StateId,
    pub payment: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservationLog<T> {
    /// Name of the tree the log was recorded against.
    pub tree: String,
    pub records: Vec<ObservationRecord<T>>,
}

impl<T: Scalar> ObservationLog<T> {
    /// Checks indices run 1..N and every record is a decision path of `tree`
    /// whose payment matches the leaf.
    pub fn verify_against(&self, tree: &DecisionTree<T>) -> Result<()> {
        for (i, rec) in self.records.iter().enumerate() {
            let bad = |message: String| Error::BadRecord {
                index: rec.index,
                message,
            };
            if rec.index != i + 1 {
                return Err(bad(format!("expected index {}", i + 1)));
            }
            let expected = tree
                .path_payoff(rec.first.as_str(), rec.decision, rec.second.as_str())
                .map_err(|e| bad(e.to_string()))?;
            if expected != rec.payment {
                return Err(bad(format!(
                    "payment {} does not match tree payoff {}",
                    rec.payment.to_literal(),
                    expected.to_literal()
                )));
            }
        }
        Ok(())
    }

    pub fn mean_payment(&self) -> Option<T> {
        if self.records.is_empty() {
            return None;
        }
        let total = self
            .records
            .iter()
            .fold(T::zero(), |acc, r| acc + r.payment.clone());
        Some(total / T::from_ratio(self.records.len() as i64, 1))
    }
}

/// How the simulated decision taker picks alternatives.
#[derive(Debug, Clone, PartialEq)]
pub enum Behavior<T> {
    /// Plays the Hurwicz-optimal strategy for this λ.
    Lambda(RiskParameter<T>),
    /// Plays a fixed pure strategy.
    Strategy(Strategy),
}

/// Strategy a behavior resolves to on `tree`.
pub fn resolve_behavior<T: Scalar>(
    tree: &DecisionTree<T>,
    behavior: &Behavior<T>,
    cap: usize,
) -> Result<Strategy> {
    match behavior {
        Behavior::Lambda(lambda) => {
            let matrix = normalize(tree, cap)?;
            let (h, _) = best_strategy(&matrix, lambda)?;
            Ok(enumerate_strategies(tree, cap)?.swap_remove(h))
        }
        Behavior::Strategy(s) => {
            tree.ensure_valid()?;
            let decision_states: Vec<_> = tree.decision_states().collect();
            if s.0.len() != decision_states.len() {
                return Err(Error::InvalidStrategy(format!(
                    "{} choices for {} decision states",
                    s.0.len(),
                    decision_states.len()
                )));
            }
            for (state, &choice) in decision_states.iter().zip(&s.0) {
                if choice >= state.alternatives.len() {
                    return Err(Error::UnknownAlternative {
                        state: state.id.to_string(),
                        alternative: choice.to_string(),
                    });
                }
            }
            Ok(s.clone())
        }
    }
}

const DRAW_BITS: u32 = 53;

/// Uniform draw on [0, 1) with 53 bits of resolution, as an exact scalar.
fn uniform<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    let k = rng.random::<u64>() >> (64 - DRAW_BITS);
    T::from_ratio(k as i64, 1i64 << DRAW_BITS)
}

/// Cumulative-probability inversion: first index whose running sum exceeds u.
fn sample_index<T: Scalar>(probs: &[T], rng: &mut ChaCha8Rng) -> usize {
    let u: T = uniform(rng);
    let mut cumulative = T::zero();
    for (i, p) in probs.iter().enumerate() {
        cumulative = cumulative + p.clone();
        if u < cumulative {
            return i;
        }
    }
    // Only reachable when float rounding leaves the total just below 1.
    probs
        .iter()
        .rposition(|p| *p > T::zero())
        .expect("validated probabilities have positive mass")
}

/// Generates `n` records. Non-decision stage-1 outcomes are drawn and
/// discarded, so records follow the stage-1 distribution conditioned on a
/// decision being required.
pub fn simulate<T: Scalar>(
    tree: &DecisionTree<T>,
    behavior: &Behavior<T>,
    n: usize,
    seed: u64,
    cap: usize,
) -> Result<ObservationLog<T>> {
    if n == 0 {
        return Err(Error::EmptySimulation);
    }
    tree.ensure_valid()?;
    let p1 = tree
        .stage1_probs
        .as_ref()
        .ok_or(Error::MissingProbabilities("stage1"))?;
    let p2 = tree
        .stage2_probs
        .as_ref()
        .ok_or(Error::MissingProbabilities("stage2"))?;
    let decision_mass = tree
        .stage1
        .iter()
        .zip(p1)
        .filter(|(s, _)| s.decision)
        .fold(T::zero(), |acc, (_, p)| acc + p.clone());
    if decision_mass.is_zero() || decision_mass < T::zero() {
        return Err(Error::NoDecisionMass);
    }
    let strategy = resolve_behavior(tree, behavior, cap)?;
    let positions: Vec<Option<usize>> = tree
        .stage1
        .iter()
        .map(|s| tree.decision_position(s.id.as_str()).filter(|_| s.decision))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(n);
    for index in 1..=n {
        let (first, position) = loop {
            let i = sample_index(p1, &mut rng);
            if let Some(pos) = positions[i] {
                break (&tree.stage1[i].id, pos);
            }
        };
        let decision = strategy.choice_at(position);
        let second = &tree.stage2[sample_index(p2, &mut rng)];
        let payment = tree.path_payoff(first.as_str(), decision, second.as_str())?;
        records.push(ObservationRecord {
            index,
            first: first.clone(),
            decision,
            second: second.clone(),
            payment,
        });
    }
    Ok(ObservationLog {
        tree: tree.name.clone(),
        records,
    })
}
