//! Human-readable tables and summaries. Output is locale-independent: `.` as
//! decimal point, no digit grouping.

use std::fmt::Write as _;

use crate::estimate::{RiskProfile, StrategyInference};
use crate::hurwicz::{LambdaRegionSet, SweepTable};
use crate::scalar::Scalar;

/// 1-based strategy name as used in tables, e.g. `f3`.
pub fn strategy_name(index: usize) -> String {
    format!("f{}", index + 1)
}

fn join(cells: impl IntoIterator<Item = String>) -> String {
    cells.into_iter().collect::<Vec<_>>().join(",")
}

/// One column per grid point, one row per strategy, then the `L*` and `f*`
/// rows. Values are rounded to `precision` decimals.
pub fn render_sweep<T: Scalar>(table: &SweepTable<T>, precision: usize) -> String {
    let mut out = String::new();
    let header =
        std::iter::once("λ".to_owned()).chain(table.grid.iter().map(Scalar::format_decimal));
    writeln!(out, "{}", join(header)).unwrap();
    for (label, row) in table.row_labels.iter().zip(&table.values) {
        let cells =
            std::iter::once(label.clone()).chain(row.iter().map(|v| v.format_fixed(precision)));
        writeln!(out, "{}", join(cells)).unwrap();
    }
    let best = std::iter::once("L*".to_owned())
        .chain(table.best_values.iter().map(|v| v.format_fixed(precision)));
    writeln!(out, "{}", join(best)).unwrap();
    let picks = std::iter::once("f*".to_owned())
        .chain(table.best_strategies.iter().map(|&h| strategy_name(h)));
    writeln!(out, "{}", join(picks)).unwrap();
    out
}

/// `strategy,label,lo,hi` per region, endpoints as exact literals.
pub fn render_regions<T: Scalar>(regions: &LambdaRegionSet<T>, row_labels: &[String]) -> String {
    let mut out = String::from("strategy,label,lo,hi\n");
    for r in &regions.regions {
        let label = row_labels.get(r.strategy).cloned().unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{}",
            strategy_name(r.strategy),
            label,
            r.lo.to_literal(),
            r.hi.to_literal()
        )
        .unwrap();
    }
    out
}

fn named(index: usize, row_labels: &[String]) -> String {
    match row_labels.get(index) {
        Some(label) => format!("{} ({label})", strategy_name(index)),
        None => strategy_name(index),
    }
}

pub fn render_inference(inference: &StrategyInference, alternatives: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (tally, alts) in inference.tallies.iter().zip(alternatives) {
        let counts: Vec<String> = tally
            .counts
            .iter()
            .zip(alts)
            .map(|(c, a)| format!("{a}:{c}"))
            .collect();
        let choice = match tally.inferred {
            Some(i) => alts[i].clone(),
            None => "unobserved".to_owned(),
        };
        let flag = if tally.ambiguous { " (tie)" } else { "" };
        writeln!(
            out,
            "state {}: {} → {choice}{flag}",
            tally.state,
            counts.join(" ")
        )
        .unwrap();
    }
    out
}

pub fn render_profile<T: Scalar>(profile: &RiskProfile<T>, row_labels: &[String]) -> String {
    let mut out = String::new();
    let names: Vec<String> = profile
        .strategies
        .iter()
        .map(|&h| named(h, row_labels))
        .collect();
    let key = if profile.strategies.len() == 1 {
        "strategy"
    } else {
        "strategies"
    };
    writeln!(out, "{key}: {}", names.join(", ")).unwrap();
    writeln!(out, "status: {}", profile.status).unwrap();
    writeln!(out, "λ ∈ {}", profile.estimate).unwrap();
    if let Some(f) = &profile.fallback {
        writeln!(
            out,
            "fallback: λ̂ = {} with regret {} for {}",
            f.lambda.value().to_literal(),
            f.regret.to_literal(),
            named(f.strategy, row_labels)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rescue_fixture;
    use crate::hurwicz::{strategy_regions, sweep};
    use crate::normalize::{normalize, DEFAULT_STRATEGY_CAP};
    use crate::Rational;

    #[test]
    fn sweep_rendering_matches_published_layout() {
        let m = normalize(&rescue_fixture::<Rational>(), DEFAULT_STRATEGY_CAP).unwrap();
        let t = sweep(&m, &Rational::from_ratio(1, 10)).unwrap();
        let text = render_sweep(&t, 1);
        let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
        assert_eq!(rows.len(), 11);
        assert_eq!(rows[0][1..4], ["0.0", "0.1", "0.2"]);
        assert_eq!(rows[0][11], "1.0");
        assert_eq!(rows[7][0], "110");
        assert_eq!(rows[7][4], "5.9");
        assert_eq!(rows[9][0], "L*");
        assert_eq!(rows[9][6], "5.5");
        assert_eq!(rows[10][1..].join(" "), "f2 f2 f2 f2 f2 f3 f3 f3 f1 f1 f1");
    }

    #[test]
    fn region_rendering() {
        let m = normalize(&rescue_fixture::<Rational>(), DEFAULT_STRATEGY_CAP).unwrap();
        let r = strategy_regions(&m).unwrap();
        assert_eq!(
            render_regions(&r, &m.row_labels),
            "strategy,label,lo,hi\nf2,001,0,2/5\nf3,010,2/5,4/5\nf1,000,4/5,1\n"
        );
    }
}
