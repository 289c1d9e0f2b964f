//! The worked rescue-robot example: its decision tree, the 15-row observation
//! sample, and the published normalized matrix and criterion table used to
//! check reproductions.

use std::collections::BTreeMap;

use crate::model::{DecisionTree, Stage1State, StateId};
use crate::scalar::Scalar;
use crate::simulate::{ObservationLog, ObservationRecord};

pub const FIXTURE_NAME: &str = "rs-control";

const STATES: [&str; 4] = ["a", "b", "c", "d"];

/// Payoffs of alternative 1 ("send") per first-stage state over second-stage
/// a, b, c, d. Alternative 0 pays 4 everywhere.
const SEND_PAYOFFS: [(&str, [i64; 4]); 3] = [
    ("b", [1, 2, 3, 4]),
    ("c", [3, 5, 6, 8]),
    ("d", [0, 4, 7, 10]),
];
const HOLD_PAYOFF: i64 = 4;

fn probs<T: Scalar>() -> Vec<T> {
    vec![
        T::from_ratio(3, 10),
        T::from_ratio(3, 10),
        T::from_ratio(3, 10),
        T::from_ratio(1, 10),
    ]
}

/// Stage 1 = a (no decision), b, c, d with alternatives {0, 1}; stage 2 = a..d;
/// both stages distributed (0.3, 0.3, 0.3, 0.1).
pub fn rescue_fixture<T: Scalar>() -> DecisionTree<T> {
    let mut stage1 = vec![Stage1State::passive("a")];
    stage1.extend(
        SEND_PAYOFFS
            .iter()
            .map(|(id, _)| Stage1State::decision(*id, &["0", "1"])),
    );
    let mut tree = DecisionTree {
        name: FIXTURE_NAME.to_owned(),
        stage1,
        stage2: STATES.iter().map(|s| StateId::from(*s)).collect(),
        payoffs: BTreeMap::new(),
        stage1_probs: Some(probs()),
        stage2_probs: Some(probs()),
    };
    for (first, send) in SEND_PAYOFFS {
        for (second, pay) in STATES.iter().zip(send) {
            tree.set_payoff(first, 0, second, T::from_ratio(HOLD_PAYOFF, 1));
            tree.set_payoff(first, 1, second, T::from_ratio(pay, 1));
        }
    }
    tree
}

/// (step 1, decision, step 3, payment) for each published observation.
pub const SAMPLE_ROWS: [(&str, usize, &str, i64); 15] = [
    ("b", 0, "c", 4),
    ("b", 0, "a", 4),
    ("d", 0, "d", 4),
    ("c", 1, "d", 8),
    ("b", 0, "c", 4),
    ("b", 0, "c", 4),
    ("b", 0, "a", 4),
    ("b", 0, "b", 4),
    ("c", 1, "a", 3),
    ("b", 0, "c", 4),
    ("b", 0, "b", 4),
    ("c", 1, "a", 3),
    ("d", 0, "c", 4),
    ("c", 1, "d", 8),
    ("d", 0, "b", 4),
];

pub fn sample_log_fixture<T: Scalar>() -> ObservationLog<T> {
    ObservationLog {
        tree: FIXTURE_NAME.to_owned(),
        records: SAMPLE_ROWS
            .iter()
            .enumerate()
            .map(|(i, &(first, decision, second, pay))| ObservationRecord {
                index: i + 1,
                first: first.into(),
                decision,
                second: second.into(),
                payment: T::from_ratio(pay, 1),
            })
            .collect(),
    }
}

/// Column labels of the published normalized matrix.
pub const PRINTED_COLUMNS: [&str; 12] = [
    "ba", "bb", "bc", "bd", "ca", "cb", "cc", "cd", "da", "db", "dc", "dd",
];

/// The normalized matrix exactly as published, including row 001 whose b*
/// and c* cells read 3 instead of the path-consistent 4.
pub const PRINTED_MATRIX: [(&str, [i64; 12]); 8] = [
    ("000", [4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4]),
    ("001", [3, 3, 3, 3, 3, 3, 3, 3, 0, 4, 7, 10]),
    ("010", [4, 4, 4, 4, 3, 5, 6, 8, 4, 4, 4, 4]),
    ("011", [4, 4, 4, 4, 3, 5, 6, 8, 0, 4, 7, 10]),
    ("100", [1, 2, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4]),
    ("101", [1, 2, 3, 4, 4, 4, 4, 4, 0, 4, 7, 10]),
    ("110", [1, 2, 3, 4, 3, 5, 6, 8, 4, 4, 4, 4]),
    ("111", [1, 2, 3, 4, 3, 5, 6, 8, 0, 4, 7, 10]),
];

/// Cells of [`PRINTED_MATRIX`] known to be misprinted: (row, column).
pub fn printed_misprints() -> impl Iterator<Item = (usize, usize)> {
    (0..8).map(|col| (1, col))
}

/// Published criterion values at λ = 0, 0.1, …, 1.0 (one decimal).
pub const PRINTED_SWEEP: [(&str, [&str; 11]); 8] = [
    (
        "000",
        [
            "4.0", "4.0", "4.0", "4.0", "4.0", "4.0", "4.0", "4.0", "4.0", "4.0", "4.0",
        ],
    ),
    (
        "001",
        [
            "10.0", "9.0", "8.0", "7.0", "6.0", "5.0", "4.0", "3.0", "2.0", "1.0", "0.0",
        ],
    ),
    (
        "010",
        [
            "8.0", "7.5", "7.0", "6.5", "6.0", "5.5", "5.0", "4.5", "4.0", "3.5", "3.0",
        ],
    ),
    (
        "011",
        [
            "10.0", "9.0", "8.0", "7.0", "6.0", "5.0", "4.0", "3.0", "2.0", "1.0", "0.0",
        ],
    ),
    (
        "100",
        [
            "4.0", "3.7", "3.4", "3.1", "2.8", "2.5", "2.2", "1.9", "1.6", "1.3", "1.0",
        ],
    ),
    (
        "101",
        [
            "10.0", "9.0", "8.0", "7.0", "6.0", "5.0", "4.0", "3.0", "2.0", "1.0", "0.0",
        ],
    ),
    (
        "110",
        [
            "8.0", "7.3", "6.6", "5.9", "5.2", "4.5", "3.8", "3.1", "2.4", "1.7", "1.0",
        ],
    ),
    (
        "111",
        [
            "10.0", "9.0", "8.0", "7.0", "6.0", "5.0", "4.0", "3.0", "2.0", "1.0", "0.0",
        ],
    ),
];

pub const PRINTED_BEST_VALUES: [&str; 11] = [
    "10.0", "9.0", "8.0", "7.0", "6.0", "5.5", "5.0", "4.5", "4.0", "4.0", "4.0",
];

/// Published f*(λ), as 1-based strategy numbers.
pub const PRINTED_BEST_STRATEGIES: [usize; 11] = [2, 2, 2, 2, 2, 3, 3, 3, 1, 1, 1];
