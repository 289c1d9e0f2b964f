use std::fs;
use std::process::{Command, Output};

use hurwicz_profile::fixtures::rescue_fixture;
use hurwicz_profile::io::serialize_tree;
use hurwicz_profile::{ExactTree, PayoffKey, Rational, Scalar};
use tempfile::TempDir;

fn hurwicz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwicz"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_tree(dir: &TempDir, name: &str, tree: &ExactTree) -> String {
    let path = dir.path().join(name);
    fs::write(&path, serialize_tree(tree)).unwrap();
    path.to_str().unwrap().to_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn normalize_then_sweep_and_regions_from_matrix() {
    let dir = TempDir::new().unwrap();
    let tree = write_tree(&dir, "tree.json", &rescue_fixture());
    let matrix = path(&dir, "m.csv");
    let out = hurwicz(&["normalize", "--tree", &tree, "--out", &matrix]);
    assert!(out.status.success());
    let csv = fs::read_to_string(&matrix).unwrap();
    assert!(csv.starts_with(",ba,bb,bc,bd,ca,cb,cc,cd,da,db,dc,dd\n"));
    assert!(csv.contains("010,4,4,4,4,3,5,6,8,4,4,4,4\n"));

    let from_matrix = hurwicz(&["sweep", "--matrix", &matrix]);
    let from_tree = hurwicz(&["sweep", "--tree", &tree]);
    assert_eq!(stdout(&from_matrix), stdout(&from_tree));
    assert!(stdout(&from_tree).ends_with("f*,f2,f2,f2,f2,f2,f3,f3,f3,f1,f1,f1\n"));

    let regions = stdout(&hurwicz(&["regions", "--matrix", &matrix]));
    assert_eq!(
        regions,
        "strategy,label,lo,hi\nf2,001,0,2/5\nf3,010,2/5,4/5\nf1,000,4/5,1\n"
    );
}

#[test]
fn sweep_precision_and_step() {
    let dir = TempDir::new().unwrap();
    let tree = write_tree(&dir, "tree.json", &rescue_fixture());
    let out = stdout(&hurwicz(&[
        "sweep",
        "--tree",
        &tree,
        "--step",
        "0.25",
        "--precision",
        "2",
    ]));
    assert!(out.starts_with("λ,0.0,0.25,0.5,0.75,1.0\n"), "{out}");
    assert!(out.contains("010,8.00,6.75,5.50,4.25,3.00\n"), "{out}");
}

#[test]
fn simulate_then_estimate() {
    let dir = TempDir::new().unwrap();
    let tree = write_tree(&dir, "tree.json", &rescue_fixture());
    let log = path(&dir, "log.csv");
    let out = hurwicz(&[
        "simulate", "--tree", &tree, "--lambda", "7/10", "--n", "300", "--seed", "11", "--out",
        &log,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&log).unwrap();
    assert!(text.starts_with("index,step1,decision,step3,payment\n"));
    assert_eq!(text.lines().count(), 301);

    let again = path(&dir, "again.csv");
    hurwicz(&[
        "simulate", "--tree", &tree, "--lambda", "0.7", "--n", "300", "--seed", "11", "--out",
        &again,
    ]);
    assert_eq!(fs::read_to_string(&again).unwrap(), text);

    let exact = stdout(&hurwicz(&[
        "estimate", "--tree", &tree, "--log", &log, "--exact",
    ]));
    assert!(exact.contains("strategy: f3 (010)"), "{exact}");
    assert!(exact.contains("status: identified"));
    assert!(exact.contains("λ ∈ (2/5, 4/5)"));
    let grid = stdout(&hurwicz(&["estimate", "--tree", &tree, "--log", &log]));
    assert!(grid.contains("λ ∈ {0.5, 0.6, 0.7}"), "{grid}");
}

#[test]
fn strict_estimate_of_irrational_strategy_exits_2() {
    let dir = TempDir::new().unwrap();
    let tree = write_tree(&dir, "tree.json", &rescue_fixture());
    let log = path(&dir, "log.csv");
    let out = hurwicz(&[
        "simulate",
        "--tree",
        &tree,
        "--strategy",
        "100",
        "--n",
        "200",
        "--seed",
        "1",
        "--out",
        &log,
    ]);
    assert!(out.status.success());

    let lenient = hurwicz(&["estimate", "--tree", &tree, "--log", &log, "--exact"]);
    assert_eq!(lenient.status.code(), Some(0));
    let text = stdout(&lenient);
    assert!(text.contains("status: non-rationalizable"), "{text}");
    assert!(text.contains("4/5"), "{text}");

    let strict = hurwicz(&[
        "estimate", "--tree", &tree, "--log", &log, "--exact", "--strict",
    ]);
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn repro_with_coarse_step() {
    let out = hurwicz(&["repro-paper", "--step", "1/5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("f*,f2,f2,f2,f3,f1,f1\n"));
}

#[test]
fn repro_on_corrupted_tree_reports_the_cell() {
    let dir = TempDir::new().unwrap();
    let mut tree = rescue_fixture::<Rational>();
    tree.payoffs
        .insert(PayoffKey::new("c", 1, "d"), Rational::from_ratio(7, 1));
    let tree = write_tree(&dir, "bad.json", &tree);
    let out = hurwicz(&["repro-paper", "--tree", &tree]);
    assert_eq!(out.status.code(), Some(2));
    let report = stdout(&out);
    assert!(
        report.contains("MISMATCH matrix cell (010, cd): expected 8, computed 7"),
        "{report}"
    );
}

#[test]
fn bad_inputs_exit_1() {
    let dir = TempDir::new().unwrap();
    let junk = path(&dir, "junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(
        hurwicz(&["normalize", "--tree", &junk]).status.code(),
        Some(1)
    );
    assert_eq!(
        hurwicz(&["normalize", "--tree", "/nonexistent/tree.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(hurwicz(&["sweep"]).status.code(), Some(1));
    assert_eq!(hurwicz(&["frobnicate"]).status.code(), Some(1));

    let tree = write_tree(&dir, "tree.json", &rescue_fixture());
    let out = hurwicz(&[
        "simulate", "--tree", &tree, "--lambda", "3/2", "--n", "5", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = hurwicz(&[
        "simulate",
        "--tree",
        &tree,
        "--strategy",
        "121",
        "--n",
        "5",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = hurwicz(&["sweep", "--tree", &tree, "--step", "0"]);
    assert_eq!(out.status.code(), Some(1));

    let log = path(&dir, "log.csv");
    fs::write(&log, "index,step1,decision,step3,payment\n1,c,1,d,9\n").unwrap();
    let out = hurwicz(&["estimate", "--tree", &tree, "--log", &log]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    assert_eq!(
        hurwicz(&["--cap", "4", "normalize", "--tree", &tree])
            .status
            .code(),
        Some(1)
    );
}
