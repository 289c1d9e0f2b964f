//! Independent oracles behind the frozen expected values used elsewhere.

mod common;

use common::{brute_best, q};
use hurwicz_profile::{
    fixtures::rescue_fixture, normalize, regret_fallback, simulate, strategy_regions, Behavior,
    ExactTree, Rational, RiskParameter, DEFAULT_STRATEGY_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn fixture() -> ExactTree {
    rescue_fixture()
}

/// Walks the tree directly for every (strategy digits, x, y) triple.
#[test]
fn fixture_matrix_equals_direct_traversal() {
    let tree = fixture();
    let m = normalize(&tree, DEFAULT_STRATEGY_CAP).unwrap();
    let firsts = ["b", "c", "d"];
    let seconds = ["a", "b", "c", "d"];
    for h in 0..8usize {
        let digits = [(h >> 2) & 1, (h >> 1) & 1, h & 1];
        for (xi, x) in firsts.iter().enumerate() {
            for (yi, y) in seconds.iter().enumerate() {
                let key = hurwicz_profile::PayoffKey::new(*x, digits[xi], *y);
                assert_eq!(
                    m.cells[h][xi * 4 + yi],
                    tree.payoffs[&key],
                    "f{} {x}{y}",
                    h + 1
                );
            }
        }
    }
}

/// Brute-force sweep at step 1/10000 against the exact regions.
#[test]
fn fixture_regions_agree_with_fine_sweep() {
    let m = normalize(&fixture(), DEFAULT_STRATEGY_CAP).unwrap();
    let regions = strategy_regions(&m).unwrap();
    let breakpoints = regions.breakpoints();
    assert_eq!(breakpoints, vec![q(2, 5), q(4, 5)]);
    let mut disagreements = 0;
    for k in 0..=10_000i64 {
        let lambda = q(k, 10_000);
        if breakpoints.contains(&lambda) {
            continue;
        }
        let (oracle, _) = brute_best(&m.cells, &lambda);
        let claimed = regions.strategies_at(&lambda);
        if claimed != [oracle] {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
}

/// Fine-grid minimization of V(λ) − L(f5, λ).
#[test]
fn f5_regret_minimum_by_grid_search() {
    let m = normalize(&fixture(), DEFAULT_STRATEGY_CAP).unwrap();
    let one = q(1, 1);
    let (min5, max5) = (q(1, 1), q(4, 1));
    let mut best: Option<(Rational, Rational)> = None;
    for k in 0..=10_000i64 {
        let lambda = q(k, 10_000);
        let (_, v) = brute_best(&m.cells, &lambda);
        let l5 = &lambda * &min5 + (&one - &lambda) * &max5;
        let regret = v - l5;
        if best.as_ref().is_none_or(|(_, r)| regret < *r) {
            best = Some((lambda, regret));
        }
    }
    let (lambda, regret) = best.unwrap();
    assert_eq!((lambda.clone(), regret.clone()), (q(4, 5), q(12, 5)));
    let (l, r) = regret_fallback(&m, 4).unwrap();
    assert_eq!((l.into_inner(), r), (lambda, regret));
}

/// E[payment] for f3 by exact enumeration over the conditioned stage-1
/// distribution, and by a Monte-Carlo estimate that shares no code with the
/// simulator.
#[test]
fn expected_payment_of_cautious_operator() {
    let tree = fixture();
    let p = [q(3, 10), q(3, 10), q(3, 10), q(1, 10)];
    let states = ["a", "b", "c", "d"];
    let choice = |x: &str| usize::from(x == "c");
    let decision_mass: Rational = p[1..].iter().sum();
    let mut exact = q(0, 1);
    for (i, x) in states.iter().enumerate().skip(1) {
        for (j, y) in states.iter().enumerate() {
            let pay = tree.path_payoff(x, choice(x), y).unwrap();
            exact += &p[i] / &decision_mass * &p[j] * pay;
        }
    }
    assert_eq!(exact, q(31, 7));

    let pf = [0.3, 0.3, 0.3, 0.1];
    // f3 sends only at c; holding pays 4.
    let send_at_c = [3.0, 5.0, 6.0, 8.0];
    let draw = |rng: &mut ChaCha20Rng| {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        pf.iter()
            .position(|w| {
                acc += w;
                u < acc
            })
            .unwrap_or(3)
    };
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    let n = 400_000;
    let mut total = 0.0;
    let mut taken = 0;
    while taken < n {
        let x = draw(&mut rng);
        if x == 0 {
            continue;
        }
        let y = draw(&mut rng);
        total += if x == 2 { send_at_c[y] } else { 4.0 };
        taken += 1;
    }
    let mc = total / n as f64;
    assert!((mc - 31.0 / 7.0).abs() < 0.01, "Monte Carlo mean {mc}");

    let behavior = Behavior::Lambda(RiskParameter::new(q(7, 10)).unwrap());
    let log = simulate(&tree, &behavior, 10_000, 7, DEFAULT_STRATEGY_CAP).unwrap();
    let mean = log.mean_payment().unwrap();
    let diff = mean - q(31, 7);
    let gap = if diff < q(0, 1) { -diff } else { diff };
    assert!(gap <= q(1, 10), "gap {gap}");
}
