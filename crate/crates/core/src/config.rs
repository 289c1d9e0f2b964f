use crate::error::{Error, Result};
use crate::normalize::DEFAULT_STRATEGY_CAP;
use crate::scalar::Scalar;

/// How ties between equally valued strategies are resolved. Only one rule is
/// supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestIndex,
}

impl TieBreak {
    pub fn name(self) -> &'static str {
        match self {
            TieBreak::LowestIndex => "lowest-index",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig<T> {
    pub step: T,
    pub strategy_cap: usize,
    pub tie_break: TieBreak,
    /// Decimal places for display tables.
    pub precision: usize,
}

impl<T: Scalar> Default for RunConfig<T> {
    fn default() -> Self {
        RunConfig {
            step: T::from_ratio(1, 10),
            strategy_cap: DEFAULT_STRATEGY_CAP,
            tie_break: TieBreak::LowestIndex,
            precision: 1,
        }
    }
}

impl<T: Scalar> RunConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.step <= T::zero() || self.step > T::one() {
            return Err(Error::StepOutOfRange(self.step.to_literal()));
        }
        if self.strategy_cap == 0 {
            return Err(Error::StrategySpaceTooLarge { count: 1, cap: 0 });
        }
        Ok(())
    }
}
