//! Network and matrix file formats: structured JSON with rational-function
//! literals, one document per object.
//!
//! Network: `{ "n": 4, "edges": [{"from": 1, "to": 2, "w": "1"}, ...] }`
//! with an optional `"labels"` array recording original vertex names after a
//! reduction. Matrix: `{ "rows": [["0", "1/l^2"], ["-1", "-2/l"]] }`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::netgraph::Network;
use crate::ratfield::{parse_ratfunc, RatFunc};

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    from: usize,
    to: usize,
    w: String,
}

#[derive(Serialize, Deserialize)]
struct NetworkDoc {
    n: usize,
    edges: Vec<EdgeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    rows: Vec<Vec<String>>,
}

/// Parses a network document; returns the network and the optional label map.
pub fn parse_network(text: &str) -> Result<(Network, Option<Vec<usize>>)> {
    let doc: NetworkDoc = serde_json::from_str(text).map_err(|e| Error::ParseError {
        pos: 0,
        msg: format!("network document: {e}"),
    })?;
    let mut net = Network::new(doc.n);
    for (k, e) in doc.edges.iter().enumerate() {
        let w = parse_ratfunc(&e.w).map_err(|err| Error::ParseError {
            pos: 0,
            msg: format!("edge #{k} ({} -> {}): {err}", e.from, e.to),
        })?;
        net.add_edge(e.from, e.to, w)?;
    }
    if let Some(labels) = &doc.labels {
        if labels.len() != doc.n {
            return Err(Error::ParseError {
                pos: 0,
                msg: "labels length differs from n".into(),
            });
        }
    }
    Ok((net, doc.labels))
}

/// Serializes a network deterministically (edges sorted by (from, to)).
pub fn write_network(net: &Network, labels: Option<&[usize]>) -> String {
    let doc = NetworkDoc {
        n: net.n(),
        edges: net
            .edges()
            .map(|(from, to, w)| EdgeDoc { from, to, w: w.to_literal() })
            .collect(),
        labels: labels.map(|l| l.to_vec()),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Parses a dense matrix document of rational-function literals.
pub fn parse_matrix(text: &str) -> Result<Mat<RatFunc>> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::ParseError {
        pos: 0,
        msg: format!("matrix document: {e}"),
    })?;
    let rows = doc
        .rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, s)| {
                    parse_ratfunc(s).map_err(|err| Error::ParseError {
                        pos: 0,
                        msg: format!("entry ({},{}): {err}", r + 1, c + 1),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows)
}

pub fn write_matrix(m: &Mat<RatFunc>) -> String {
    let doc = MatrixDoc {
        rows: (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_literal()).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::example_network;

    const FIG1: &str = r#"{
        "n": 4,
        "edges": [
            {"from": 1, "to": 2, "w": "1"},
            {"from": 2, "to": 3, "w": "1"},
            {"from": 3, "to": 4, "w": "1"},
            {"from": 4, "to": 3, "w": "-2"},
            {"from": 4, "to": 1, "w": "-1"}
        ]
    }"#;

    #[test]
    fn parses_the_example_document() {
        let (net, labels) = parse_network(FIG1).unwrap();
        assert_eq!(net, example_network());
        assert_eq!(net.n(), 4);
        assert_eq!(net.edge_count(), 5);
        assert!(labels.is_none());
    }

    #[test]
    fn empty_edge_list_gives_edgeless_network() {
        let (net, _) = parse_network(r#"{"n": 3, "edges": []}"#).unwrap();
        assert_eq!(net.edge_count(), 0);
    }

    #[test]
    fn weight_literals_parse_through_the_grammar() {
        let (net, _) = parse_network(
            r#"{"n": 2, "edges": [{"from": 1, "to": 2, "w": "1/l^2"}]}"#,
        )
        .unwrap();
        assert_eq!(net.weight(1, 2), parse_ratfunc("1/l^2").unwrap());
    }

    #[test]
    fn rejects_bad_indices_and_duplicates() {
        let bad = r#"{"n": 2, "edges": [{"from": 1, "to": 9, "w": "1"}]}"#;
        assert!(matches!(
            parse_network(bad),
            Err(Error::BadVertexIndex { index: 9, n: 2 })
        ));
        let dup = r#"{"n": 2, "edges": [
            {"from": 1, "to": 2, "w": "1"},
            {"from": 1, "to": 2, "w": "2"}
        ]}"#;
        assert!(matches!(
            parse_network(dup),
            Err(Error::DuplicateEdge { from: 1, to: 2 })
        ));
    }

    #[test]
    fn network_round_trip_is_lossless() {
        let net = example_network();
        let text = write_network(&net, Some(&[1, 2, 3, 4]));
        let (back, labels) = parse_network(&text).unwrap();
        assert_eq!(back, net);
        assert_eq!(labels, Some(vec![1, 2, 3, 4]));
    }

    #[test]
    fn matrix_round_trip_is_lossless() {
        let m = Mat::from_rows(vec![
            vec![parse_ratfunc("0").unwrap(), parse_ratfunc("1/l^2").unwrap()],
            vec![parse_ratfunc("-1").unwrap(), parse_ratfunc("-2/l").unwrap()],
        ])
        .unwrap();
        let text = write_matrix(&m);
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }
}
