//! Instance and graph file formats.
//!
//! Instances are single JSON objects; weights may be numbers or decimal
//! strings, and strings are the exactness-preserving path (numbers go
//! through their shortest decimal rendering first). Graphs use a line
//! format: `p <vertices> <edges>` followed by one `e <u> <v>` line per
//! edge, all indices 0-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{validate_instance, Instance, RawInstance, RawWeight};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n: usize,
    weights: Vec<WeightField>,
    leader: SideFile,
    follower: SideFile,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    meta: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SideFile {
    groups: Vec<Vec<usize>>,
    budgets: Vec<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum WeightField {
    Number(serde_json::Number),
    Text(String),
}

fn classify_json_error(err: serde_json::Error) -> Error {
    let (line, column) = (err.line(), err.column());
    let message = err.to_string();
    match err.classify() {
        serde_json::error::Category::Data => Error::SchemaError { line, column, message },
        _ => Error::SyntaxError { line, column, message },
    }
}

/// Parses the JSON instance format and validates the result. Unknown fields
/// are rejected with their position.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(classify_json_error)?;
    let weights = file
        .weights
        .into_iter()
        .map(|w| match w {
            WeightField::Number(num) => {
                if let Some(v) = num.as_i64() {
                    RawWeight::Integer(v)
                } else if let Some(v) = num.as_u64() {
                    // larger than i64: let weight parsing report the bound
                    RawWeight::Decimal(v.to_string())
                } else {
                    RawWeight::Decimal(num.to_string())
                }
            }
            WeightField::Text(text) => RawWeight::Decimal(text),
        })
        .collect();
    validate_instance(RawInstance {
        n: file.n,
        weights,
        leader_groups: file.leader.groups,
        leader_budgets: file.leader.budgets,
        follower_groups: file.follower.groups,
        follower_budgets: file.follower.budgets,
        meta: file.meta,
    })
}

/// Serializes a validated instance; integer weights become JSON numbers,
/// fractional ones exact decimal strings, so parsing the output reproduces
/// the instance.
pub fn serialize_instance(instance: &Instance) -> String {
    let file = InstanceFile {
        n: instance.n(),
        weights: instance
            .weights()
            .iter()
            .map(|w| {
                if w.is_integer() {
                    WeightField::Number(serde_json::Number::from(w.numerator()))
                } else {
                    WeightField::Text(w.to_decimal_string())
                }
            })
            .collect(),
        leader: SideFile {
            groups: instance.leader_groups().to_vec(),
            budgets: instance.leader_budgets().to_vec(),
        },
        follower: SideFile {
            groups: instance.follower_groups().to_vec(),
            budgets: instance.follower_budgets().to_vec(),
        },
        meta: instance.meta().clone(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("instance serialization is total");
    out.push('\n');
    out
}

fn graph_syntax_error(line: usize, message: impl Into<String>) -> Error {
    Error::SyntaxError {
        line,
        column: 1,
        message: message.into(),
    }
}

/// Parses the `p`/`e` line format into a validated graph. Blank lines are
/// ignored; anything else must match the declared edge count.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (header.is_some(), fields.as_slice()) {
            (false, ["p", v, e]) => {
                let v = v.parse().map_err(|_| graph_syntax_error(line_no, "bad vertex count"))?;
                let e = e.parse().map_err(|_| graph_syntax_error(line_no, "bad edge count"))?;
                header = Some((v, e));
            }
            (false, _) => {
                return Err(graph_syntax_error(line_no, "expected header `p <vertices> <edges>`"))
            }
            (true, ["e", u, v]) => {
                let u = u.parse().map_err(|_| graph_syntax_error(line_no, "bad endpoint"))?;
                let v = v.parse().map_err(|_| graph_syntax_error(line_no, "bad endpoint"))?;
                edges.push((u, v));
            }
            (true, _) => return Err(graph_syntax_error(line_no, "expected edge line `e <u> <v>`")),
        }
    }
    let (num_vertices, num_edges) =
        header.ok_or_else(|| graph_syntax_error(1, "missing header `p <vertices> <edges>`"))?;
    if edges.len() != num_edges {
        return Err(graph_syntax_error(
            text.lines().count().max(1),
            format!("header declares {num_edges} edges, found {}", edges.len()),
        ));
    }
    Graph::new(num_vertices, edges)
}

pub fn serialize_graph(graph: &Graph) -> String {
    let mut out = format!("p {} {}\n", graph.num_vertices(), graph.num_edges());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::PartitionDefect;
    use crate::samples::{cycle4_graph, figure1_instance};

    #[test]
    fn figure1_round_trips() {
        let instance = figure1_instance();
        let text = serialize_instance(&instance);
        let parsed = parse_instance(&text).unwrap();
        assert_eq!(parsed, instance);
    }

    #[test]
    fn fractional_weights_round_trip_exactly() {
        let text = r#"{
            "n": 2,
            "weights": ["0.5", 1.25],
            "leader": {"groups": [[0, 1]], "budgets": [1]},
            "follower": {"groups": [[0], [1]], "budgets": [1, 1]}
        }"#;
        let instance = parse_instance(text).unwrap();
        let sorted = crate::model::sort_weights(instance.clone()).unwrap();
        assert_eq!(sorted.scale(), 4);
        assert_eq!(sorted.sorted_weights(), &[0, 2, 5]);
        let reparsed = parse_instance(&serialize_instance(&instance)).unwrap();
        assert_eq!(reparsed, instance);
    }

    #[test]
    fn overlapping_groups_report_the_element() {
        let text = r#"{
            "n": 3,
            "weights": [1, 2, 3],
            "leader": {"groups": [[0, 1], [1, 2]], "budgets": [1, 1]},
            "follower": {"groups": [[0, 1, 2]], "budgets": [1]}
        }"#;
        match parse_instance(text) {
            Err(Error::NonPartition { element: 1, defect: PartitionDefect::Overlapping, .. }) => {}
            other => panic!("expected overlap on element 1, got {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected_with_position() {
        let text = "{\n  \"n\": 1,\n  \"wheights\": [1],\n  \"leader\": {\"groups\": [[0]], \"budgets\": [1]},\n  \"follower\": {\"groups\": [[0]], \"budgets\": [1]}\n}";
        match parse_instance(text) {
            Err(Error::SchemaError { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("wheights"), "{message}");
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        match parse_instance("{\n  \"n\": 1,,\n}") {
            Err(Error::SyntaxError { line: 2, column, .. }) => assert!(column > 0),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn negative_json_weight_is_a_weight_error() {
        let text = r#"{
            "n": 1,
            "weights": [-2],
            "leader": {"groups": [[0]], "budgets": [1]},
            "follower": {"groups": [[0]], "budgets": [1]}
        }"#;
        assert!(matches!(
            parse_instance(text),
            Err(Error::NegativeWeight { index: 0 })
        ));
    }

    #[test]
    fn graph_round_trips() {
        let graph = cycle4_graph();
        let text = serialize_graph(&graph);
        assert_eq!(text, "p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\n");
        assert_eq!(parse_graph(&text).unwrap(), graph);
    }

    #[test]
    fn graph_parse_errors() {
        assert!(matches!(
            parse_graph("e 0 1\n"),
            Err(Error::SyntaxError { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("p 2 2\ne 0 1\n"),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_graph("p 2 1\ne 0 x\n"),
            Err(Error::SyntaxError { line: 2, .. })
        ));
    }
}
