#![allow(dead_code)]

use std::collections::BTreeMap;

use hurwicz_profile::{
    DecisionTree, ExactMatrix, PayoffKey, Rational, Scalar, Stage1State, StateId,
};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// Tree with decision states `x0..`, optional passive state `p` first,
/// stage-2 states `y0..`, payoffs consumed row-major from `cells`.
pub fn build_tree(
    alts: &[usize],
    n2: usize,
    passive: Option<i64>,
    cells: &[i64],
    w1: &[i64],
    w2: &[i64],
) -> DecisionTree<Rational> {
    let mut stage1 = Vec::new();
    let mut weights1 = Vec::new();
    if let Some(w) = passive {
        stage1.push(Stage1State::passive("p"));
        weights1.push(w);
    }
    let mut payoffs = BTreeMap::new();
    let mut it = cells.iter();
    for (i, &n) in alts.iter().enumerate() {
        let labels: Vec<String> = (0..n).map(|a| a.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let id = format!("x{i}");
        stage1.push(Stage1State::decision(id.as_str(), &refs));
        weights1.push(w1[i]);
        for a in 0..n {
            for j in 0..n2 {
                payoffs.insert(
                    PayoffKey::new(id.as_str(), a, format!("y{j}")),
                    q(*it.next().unwrap(), 1),
                );
            }
        }
    }
    let normalize_weights = |w: &[i64]| {
        let total: i64 = w.iter().sum();
        w.iter().map(|&x| q(x, total)).collect::<Vec<_>>()
    };
    DecisionTree {
        name: "random".into(),
        stage1,
        stage2: (0..n2).map(|j| StateId::new(format!("y{j}"))).collect(),
        payoffs,
        stage1_probs: Some(normalize_weights(&weights1)),
        stage2_probs: Some(normalize_weights(&w2[..n2])),
    }
}

/// Small random trees: ≤ 3 decision states with ≤ 3 alternatives, ≤ 4
/// stage-2 states, integer payoffs in [-10, 10], every decision state and
/// stage-2 state with positive probability.
pub fn arb_tree() -> impl Strategy<Value = DecisionTree<Rational>> {
    (
        prop::collection::vec(1usize..=3, 1..=3),
        1usize..=4,
        prop::option::of(0i64..=4),
    )
        .prop_flat_map(|(alts, n2, passive)| {
            let cells = alts.iter().sum::<usize>() * n2;
            (
                Just(alts.clone()),
                Just(n2),
                Just(passive),
                prop::collection::vec(-10i64..=10, cells),
                prop::collection::vec(1i64..=5, alts.len()),
                prop::collection::vec(1i64..=5, n2),
            )
        })
        .prop_map(|(alts, n2, passive, cells, w1, w2)| {
            build_tree(&alts, n2, passive, &cells, &w1, &w2)
        })
}

/// Random matrices with 1–6 rows and 1–5 columns of small integers.
pub fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=6, 1usize..=5)
        .prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(-6i64..=6, n), m))
        .prop_map(|rows| {
            ExactMatrix::from_rows(
                (0..rows.len()).map(|h| format!("r{h}")).collect(),
                (0..rows[0].len()).map(|j| format!("c{j}")).collect(),
                rows.iter()
                    .map(|r| r.iter().map(|&x| q(x, 1)).collect())
                    .collect(),
            )
            .unwrap()
        })
}

/// Criterion value and lowest-index argmax computed straight from the rows.
pub fn brute_best(rows: &[Vec<Rational>], lambda: &Rational) -> (usize, Rational) {
    let one = q(1, 1);
    let mut best: Option<(usize, Rational)> = None;
    for (h, row) in rows.iter().enumerate() {
        let min = row.iter().min().unwrap().clone();
        let max = row.iter().max().unwrap().clone();
        let v = lambda * min + (&one - lambda) * max;
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((h, v));
        }
    }
    best.unwrap()
}
