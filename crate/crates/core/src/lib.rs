//! Risk-attitude profiling with the Hurwicz pessimism criterion.
//!
//! A two-stage decision tree (nature, decision taker, nature) is normalized
//! into a payoff matrix of pure strategies against compound nature states.
//! The Hurwicz criterion `λ·min + (1 − λ)·max` then maps every pessimism
//! weight λ ∈ [0, 1] to an optimal strategy, and the map is inverted to
//! estimate λ from the decisions an operator was observed to make.
//!
//! All algorithms are generic over [`Scalar`]; [`Rational`] (arbitrary
//! precision) is the default for exact, tie-sensitive work.

pub mod config;
pub mod error;
pub mod estimate;
pub mod fixtures;
pub mod hurwicz;
pub mod io;
pub mod model;
pub mod normalize;
pub mod render;
pub mod repro;
pub mod scalar;
pub mod simulate;

pub use config::{RunConfig, TieBreak};
pub use error::{Error, Result};
pub use estimate::{
    estimate_lambda, infer_strategy, profile_strategies, regret_fallback, EstimateMode,
    Identifiability, RegretFallback, RiskProfile, StateTally, StrategyInference,
};
pub use hurwicz::{
    best_strategy, criterion_lines, hurwicz_value, invert, lambda_grid, strategy_regions, sweep,
    CriterionLine, InversionMode, LambdaInterval, LambdaRegion, LambdaRegionSet, LambdaSet,
    RiskParameter, SweepTable,
};
pub use model::{
    CompoundState, DecisionTree, PayoffKey, Stage1State, StateId, Strategy, Violation,
};
pub use normalize::{
    enumerate_states, enumerate_strategies, normalize, PayoffMatrix, DEFAULT_STRATEGY_CAP,
};
pub use scalar::Scalar;
pub use simulate::{simulate, Behavior, ObservationLog, ObservationRecord};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type ExactTree = DecisionTree<Rational>;
pub type ExactMatrix = PayoffMatrix<Rational>;
pub type ExactLog = ObservationLog<Rational>;

pub type FloatTree = DecisionTree<f64>;
pub type FloatMatrix = PayoffMatrix<f64>;
pub type FloatLog = ObservationLog<f64>;
