//! On-disk formats: JSON tree documents, CSV payoff matrices and CSV
//! observation logs.
//!
//! Rationals are written losslessly (`"7/10"`, `"4"`) and accepted as JSON
//! numbers or strings in integer, decimal or `p/q` spelling.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{DecisionTree, PayoffKey, Stage1State, StateId};
use crate::normalize::PayoffMatrix;
use crate::scalar::Scalar;
use crate::simulate::{ObservationLog, ObservationRecord};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Literal {
    Number(serde_json::Number),
    Text(String),
}

impl Literal {
    fn to_scalar<T: Scalar>(&self, location: impl FnOnce() -> String) -> Result<T> {
        let text = match self {
            Literal::Number(n) => n.to_string(),
            Literal::Text(s) => s.clone(),
        };
        T::parse_literal(&text)
            .ok_or_else(|| Error::parse(location(), format!("`{text}` is not a rational")))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Stage1Entry {
    id: String,
    decision: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDocument {
    #[serde(default)]
    name: String,
    stage1: Vec<Stage1Entry>,
    #[serde(default)]
    alternatives: BTreeMap<String, Vec<String>>,
    stage2: Vec<String>,
    #[serde(default)]
    payoff: BTreeMap<String, BTreeMap<String, Vec<Literal>>>,
    p1: Option<BTreeMap<String, Literal>>,
    p2: Option<BTreeMap<String, Literal>>,
}

fn probability_vector<T: Scalar>(
    field: &str,
    ids: &[&StateId],
    map: Option<BTreeMap<String, Literal>>,
) -> Result<Option<Vec<T>>> {
    let Some(mut map) = map else { return Ok(None) };
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let lit = map
            .remove(id.as_str())
            .ok_or_else(|| Error::parse(field, format!("no probability for state `{id}`")))?;
        out.push(lit.to_scalar(|| format!("{field}.{id}"))?);
    }
    if let Some(extra) = map.keys().next() {
        return Err(Error::parse(field, format!("unknown state `{extra}`")));
    }
    Ok(Some(out))
}

/// Parses and validates a tree document.
pub fn parse_tree<T: Scalar>(text: &str) -> Result<DecisionTree<T>> {
    let doc: TreeDocument = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;

    let mut alternatives = doc.alternatives;
    let stage1: Vec<Stage1State> = doc
        .stage1
        .into_iter()
        .map(|e| Stage1State {
            alternatives: alternatives.remove(&e.id).unwrap_or_default(),
            id: e.id.into(),
            decision: e.decision,
        })
        .collect();
    if let Some(extra) = alternatives.keys().next() {
        return Err(Error::parse(
            "alternatives",
            format!("unknown stage1 state `{extra}`"),
        ));
    }
    let stage2: Vec<StateId> = doc.stage2.into_iter().map(StateId::from).collect();

    let mut payoffs = BTreeMap::new();
    for (first, by_alt) in doc.payoff {
        let state = stage1
            .iter()
            .find(|s| s.id.as_str() == first)
            .ok_or_else(|| Error::parse("payoff", format!("unknown stage1 state `{first}`")))?;
        for (label, values) in by_alt {
            let alt = state
                .alternatives
                .iter()
                .position(|a| *a == label)
                .ok_or_else(|| {
                    Error::parse(
                        format!("payoff.{first}"),
                        format!("unknown alternative `{label}`"),
                    )
                })?;
            if values.len() > stage2.len() {
                return Err(Error::parse(
                    format!("payoff.{first}.{label}"),
                    format!("{} values for {} stage2 states", values.len(), stage2.len()),
                ));
            }
            for (second, lit) in stage2.iter().zip(&values) {
                let v = lit.to_scalar(|| format!("payoff.{first}.{label}.{second}"))?;
                payoffs.insert(PayoffKey::new(first.as_str(), alt, second.clone()), v);
            }
        }
    }

    let stage1_ids: Vec<&StateId> = stage1.iter().map(|s| &s.id).collect();
    let stage2_ids: Vec<&StateId> = stage2.iter().collect();
    let stage1_probs = probability_vector("p1", &stage1_ids, doc.p1)?;
    let stage2_probs = probability_vector("p2", &stage2_ids, doc.p2)?;

    let tree = DecisionTree {
        name: doc.name,
        stage1,
        stage2,
        payoffs,
        stage1_probs,
        stage2_probs,
    };
    tree.ensure_valid()?;
    Ok(tree)
}

/// Pretty-printed tree document; every rational is written as a lossless
/// string.
pub fn serialize_tree<T: Scalar>(tree: &DecisionTree<T>) -> String {
    let mut alternatives = Map::new();
    let mut payoff = Map::new();
    for state in tree.decision_states() {
        alternatives.insert(state.id.to_string(), json!(state.alternatives));
        let mut by_alt = Map::new();
        for (alt, label) in state.alternatives.iter().enumerate() {
            let row: Vec<Value> = tree
                .stage2
                .iter()
                .map(|second| {
                    let key = PayoffKey::new(state.id.clone(), alt, second.clone());
                    tree.payoffs
                        .get(&key)
                        .map_or(Value::Null, |v| json!(v.to_literal()))
                })
                .collect();
            by_alt.insert(label.clone(), Value::Array(row));
        }
        payoff.insert(state.id.to_string(), Value::Object(by_alt));
    }
    let probs = |ids: Vec<&StateId>, p: &Option<Vec<T>>| -> Option<Value> {
        p.as_ref().map(|p| {
            Value::Object(
                ids.iter()
                    .zip(p)
                    .map(|(id, v)| (id.to_string(), json!(v.to_literal())))
                    .collect(),
            )
        })
    };
    let mut doc = Map::new();
    doc.insert("name".into(), json!(tree.name));
    doc.insert(
        "stage1".into(),
        Value::Array(
            tree.stage1
                .iter()
                .map(|s| json!({ "id": s.id.as_str(), "decision": s.decision }))
                .collect(),
        ),
    );
    doc.insert("alternatives".into(), Value::Object(alternatives));
    doc.insert(
        "stage2".into(),
        Value::Array(tree.stage2.iter().map(|s| json!(s.as_str())).collect()),
    );
    doc.insert("payoff".into(), Value::Object(payoff));
    if let Some(p) = probs(
        tree.stage1.iter().map(|s| &s.id).collect(),
        &tree.stage1_probs,
    ) {
        doc.insert("p1".into(), p);
    }
    if let Some(p) = probs(tree.stage2.iter().collect(), &tree.stage2_probs) {
        doc.insert("p2".into(), p);
    }
    let mut out =
        serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values always serialize");
    out.push('\n');
    out
}

fn csv_error(e: csv::Error) -> Error {
    let location = e
        .position()
        .map_or_else(|| "csv".to_owned(), |p| format!("line {}", p.line()));
    Error::parse(location, e.to_string())
}

fn write_csv(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("writing to memory cannot fail");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

/// Matrix as delimited text: header of state labels, one row per strategy.
/// `precision = None` writes lossless literals (the matrix file format);
/// `Some(k)` rounds each cell to `k` decimals for display.
pub fn render_matrix<T: Scalar>(matrix: &PayoffMatrix<T>, precision: Option<usize>) -> String {
    let header = std::iter::once(String::new()).chain(matrix.column_labels.iter().cloned());
    let rows = matrix
        .row_labels
        .iter()
        .zip(&matrix.cells)
        .map(|(label, row)| {
            std::iter::once(label.clone())
                .chain(row.iter().map(|v| match precision {
                    None => v.to_literal(),
                    Some(k) => v.format_fixed(k),
                }))
                .collect()
        });
    write_csv(std::iter::once(header.collect()).chain(rows))
}

pub fn parse_matrix<T: Scalar>(text: &str) -> Result<PayoffMatrix<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = records
        .next()
        .ok_or_else(|| Error::parse("line 1", "missing header"))?
        .map_err(csv_error)?;
    let column_labels: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let mut row_labels = Vec::new();
    let mut cells = Vec::new();
    for (i, record) in records.enumerate() {
        let record = record.map_err(csv_error)?;
        let line = i + 2;
        let label = record.get(0).unwrap_or_default().to_owned();
        let row = record
            .iter()
            .skip(1)
            .enumerate()
            .map(|(j, cell)| {
                T::parse_literal(cell).ok_or_else(|| {
                    let col = column_labels.get(j).map_or("?", String::as_str);
                    Error::parse(
                        format!("line {line}, column {col}"),
                        format!("`{cell}` is not a rational"),
                    )
                })
            })
            .collect::<Result<Vec<T>>>()?;
        row_labels.push(label);
        cells.push(row);
    }
    PayoffMatrix::from_rows(row_labels, column_labels, cells)
}

const LOG_HEADER: [&str; 5] = ["index", "step1", "decision", "step3", "payment"];

/// Log CSV. Decisions are written as alternative labels when a tree is
/// given, otherwise as alternative indices.
pub fn serialize_log<T: Scalar>(log: &ObservationLog<T>, tree: Option<&DecisionTree<T>>) -> String {
    let header = LOG_HEADER.iter().map(|s| s.to_string()).collect();
    let rows = log.records.iter().map(|r| {
        let decision = tree
            .and_then(|t| t.stage1_state(r.first.as_str()).ok())
            .and_then(|s| s.alternatives.get(r.decision).cloned())
            .unwrap_or_else(|| r.decision.to_string());
        vec![
            r.index.to_string(),
            r.first.to_string(),
            decision,
            r.second.to_string(),
            r.payment.to_literal(),
        ]
    });
    write_csv(std::iter::once(header).chain(rows))
}

/// Parses a log CSV. With a tree, decision labels are resolved against its
/// alternatives and every payment is checked against the leaf payoff.
pub fn parse_log<T: Scalar>(
    text: &str,
    tree: Option<&DecisionTree<T>>,
) -> Result<ObservationLog<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_error)?.clone();
    if header.iter().ne(LOG_HEADER) {
        return Err(Error::parse(
            "line 1",
            format!("expected header `{}`", LOG_HEADER.join(",")),
        ));
    }
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(csv_error)?;
        let line = i + 2;
        let field = |k: usize| row.get(k).unwrap_or_default();
        let at = |name: &str| format!("line {line}, {name}");
        let index: usize = field(0)
            .parse()
            .map_err(|_| Error::parse(at("index"), format!("`{}` is not an index", field(0))))?;
        let first = StateId::from(field(1));
        let decision = match tree {
            Some(t) => {
                let state = t
                    .stage1_state(first.as_str())
                    .map_err(|e| Error::parse(at("step1"), e.to_string()))?;
                state
                    .alternatives
                    .iter()
                    .position(|a| a == field(2))
                    .ok_or_else(|| {
                        Error::parse(
                            at("decision"),
                            format!("`{}` is not an alternative of `{first}`", field(2)),
                        )
                    })?
            }
            None => field(2).parse().map_err(|_| {
                Error::parse(at("decision"), format!("`{}` is not an index", field(2)))
            })?,
        };
        let payment = T::parse_literal(field(4)).ok_or_else(|| {
            Error::parse(at("payment"), format!("`{}` is not a rational", field(4)))
        })?;
        records.push(ObservationRecord {
            index,
            first,
            decision,
            second: StateId::from(field(3)),
            payment,
        });
    }
    let log = ObservationLog {
        tree: tree.map(|t| t.name.clone()).unwrap_or_default(),
        records,
    };
    if let Some(t) = tree {
        log.verify_against(t)?;
    }
    Ok(log)
}
