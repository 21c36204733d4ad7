//! Canonical JSON and DOT serialization.
//!
//! JSON output is canonical: object keys are sorted, arrays keep their
//! documented order, and output ends with a newline. Document shapes
//! (all vertex indices 1-based, exchange-graph nodes 0-based):
//!
//! - quiver: `{"B": [[..]], "d": [..], "frozen": [..], "n": n}` where
//!   `frozen` lists frozen vertices;
//! - exchange graph: `{"arcs": [[from, direction, to], ..], "nodes":
//!   [quiver, ..], "verdict": {..}}`;
//! - certificate: `{"witnesses": [{"epsilon": 1, "node": 0, "sigma":
//!   [..]}, ..], "word": [..]}` with one witness per graph node.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::explore::{ExchangeGraph, Verdict};
use crate::loops::LoopCertificate;
use crate::quiver::{Permutation, ValuedQuiver};
use crate::symmetry::{Sign, SymmetryWitness};
use crate::word::MutationWord;

fn render(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializing built values");
    out.push('\n');
    out
}

fn quiver_value(q: &ValuedQuiver) -> Value {
    let frozen: Vec<usize> = (1..=q.rank()).filter(|&i| q.is_frozen(i)).collect();
    json!({
        "B": q.matrix(),
        "d": q.symmetrizer(),
        "frozen": frozen,
        "n": q.rank(),
    })
}

/// Canonical JSON for a quiver.
pub fn quiver_to_json(q: &ValuedQuiver) -> String {
    render(&quiver_value(q))
}

#[derive(Deserialize)]
struct QuiverDoc {
    #[serde(rename = "B")]
    b: Vec<Vec<i64>>,
    d: Option<Vec<i64>>,
    #[serde(default)]
    frozen: Vec<usize>,
    n: Option<usize>,
}

fn malformed(msg: impl std::fmt::Display) -> Error {
    Error::MalformedDocument(msg.to_string())
}

/// Parses a quiver document. `d` and `n` may be omitted; `frozen` lists
/// 1-based frozen vertices and defaults to none.
pub fn quiver_from_json(text: &str) -> Result<ValuedQuiver> {
    let doc: QuiverDoc = serde_json::from_str(text).map_err(malformed)?;
    if let Some(n) = doc.n {
        if n != doc.b.len() {
            return Err(malformed("field n disagrees with the matrix size"));
        }
    }
    let q = ValuedQuiver::new(&doc.b, doc.d)?;
    if doc.frozen.is_empty() {
        return Ok(q);
    }
    for &i in &doc.frozen {
        if i == 0 || i > q.rank() {
            return Err(Error::VertexOutOfRange {
                vertex: i,
                rank: q.rank(),
            });
        }
    }
    let mutable: Vec<usize> = (1..=q.rank()).filter(|i| !doc.frozen.contains(i)).collect();
    q.restrict(&mutable)
}

fn verdict_value(v: &Verdict) -> Value {
    match v {
        Verdict::Finite => json!({"type": "finite"}),
        Verdict::InfiniteWeightWitness { path, weight } => json!({
            "type": "infinite_weight_witness",
            "path": path,
            "weight": weight,
        }),
        Verdict::Inconclusive { reason } => json!({
            "type": "inconclusive",
            "reason": reason,
        }),
    }
}

/// Canonical JSON for an exchange graph.
pub fn graph_to_json(graph: &ExchangeGraph) -> String {
    let nodes: Vec<Value> = graph.nodes().iter().map(quiver_value).collect();
    let arcs: Vec<Value> = graph
        .arcs()
        .iter()
        .map(|&(from, k, to)| json!([from, k, to]))
        .collect();
    render(&json!({
        "arcs": arcs,
        "nodes": nodes,
        "verdict": verdict_value(graph.verdict()),
    }))
}

/// Canonical JSON for a global-loop certificate.
pub fn certificate_to_json(cert: &LoopCertificate) -> String {
    let witnesses: Vec<Value> = cert
        .witnesses
        .iter()
        .enumerate()
        .map(|(node, w)| {
            json!({
                "epsilon": w.epsilon.factor(),
                "node": node,
                "sigma": w.sigma.images(),
            })
        })
        .collect();
    render(&json!({
        "witnesses": witnesses,
        "word": cert.word.letters(),
    }))
}

#[derive(Deserialize)]
struct WitnessDoc {
    epsilon: i64,
    node: usize,
    sigma: Vec<usize>,
}

#[derive(Deserialize)]
struct CertificateDoc {
    witnesses: Vec<WitnessDoc>,
    word: Vec<usize>,
}

/// Parses a certificate document. Witnesses must cover nodes `0..count`
/// exactly once each (in any order); the quiver rank is read off the
/// permutations.
pub fn certificate_from_json(text: &str) -> Result<LoopCertificate> {
    let doc: CertificateDoc = serde_json::from_str(text).map_err(malformed)?;
    if doc.witnesses.is_empty() {
        return Err(malformed("a certificate needs at least one witness"));
    }
    let rank = doc.witnesses[0].sigma.len();
    let count = doc.witnesses.len();
    let mut slots: Vec<Option<SymmetryWitness>> = vec![None; count];
    for w in doc.witnesses {
        if w.node >= count {
            return Err(malformed(format!(
                "witness node {} outside 0..{count}",
                w.node
            )));
        }
        if slots[w.node].is_some() {
            return Err(malformed(format!("duplicate witness for node {}", w.node)));
        }
        slots[w.node] = Some(SymmetryWitness {
            sigma: Permutation::from_images(w.sigma)?,
            epsilon: Sign::from_factor(w.epsilon)?,
        });
    }
    let witnesses: Vec<SymmetryWitness> = slots.into_iter().map(Option::unwrap).collect();
    if witnesses.iter().any(|w| w.sigma.len() != rank) {
        return Err(malformed("witness permutations have differing lengths"));
    }
    let word = MutationWord::new(doc.word, rank)?;
    let homogeneous = word.is_homogeneous();
    let full = word.is_full(rank);
    Ok(LoopCertificate {
        word,
        witnesses,
        homogeneous,
        full,
    })
}

/// GraphViz DOT rendering of a quiver: one node per vertex annotated
/// with its symmetrizer entry, one labeled arrow per edge.
pub fn quiver_to_dot(q: &ValuedQuiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for i in 1..=q.rank() {
        let shape = if q.is_frozen(i) { ", shape=box" } else { "" };
        out.push_str(&format!("  {i} [label=\"{i} (d={})\"{shape}];\n", q.d(i)));
    }
    for e in q.edges() {
        out.push_str(&format!(
            "  {} -> {} [label=\"({},{})\"];\n",
            e.source, e.target, e.valuation.0, e.valuation.1
        ));
    }
    out.push_str("}\n");
    out
}

/// GraphViz DOT rendering of an exchange graph: nodes are class members
/// (node 0 the seed), each mutation pair drawn once as an undirected
/// edge labeled with its direction.
pub fn graph_to_dot(graph: &ExchangeGraph) -> String {
    let mut out = String::from("graph exchange {\n");
    for v in 0..graph.nodes().len() {
        out.push_str(&format!("  {v};\n"));
    }
    for &(from, k, to) in graph.arcs() {
        if from <= to {
            out.push_str(&format!("  {from} -- {to} [label=\"{k}\"];\n"));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::{enumerate_class, Limits};
    use crate::fixtures;
    use crate::loops::{search_global_loops_in, verify_certificate};

    #[test]
    fn quiver_round_trip_preserves_everything() {
        let q = fixtures::sample7().restrict(&[1, 2, 3]).unwrap();
        let text = quiver_to_json(&q);
        let back = quiver_from_json(&text).unwrap();
        assert_eq!(back, q);
        assert_eq!((1..=7).filter(|&i| back.is_frozen(i)).count(), 4);
    }

    #[test]
    fn canonical_output_is_key_sorted_and_stable() {
        let q = fixtures::markov4();
        let text = quiver_to_json(&q);
        let b = text.find("\"B\"").unwrap();
        let d = text.find("\"d\"").unwrap();
        let f = text.find("\"frozen\"").unwrap();
        let n = text.find("\"n\"").unwrap();
        assert!(b < d && d < f && f < n);
        assert!(text.ends_with('\n'));
        assert_eq!(text, quiver_to_json(&quiver_from_json(&text).unwrap()));
    }

    #[test]
    fn malformed_quiver_documents_are_rejected() {
        assert!(quiver_from_json("{").is_err());
        assert!(quiver_from_json("{\"B\": [[0,1],[1,0]]}").is_err()); // sign condition
        assert!(quiver_from_json("{\"B\": [[0,1],[-1,0]], \"n\": 3}").is_err());
        assert!(quiver_from_json("{\"B\": [[0,1],[-1,0]], \"frozen\": [3]}").is_err());
        assert!(quiver_from_json("{\"B\": [[0,1],[-1,0]], \"d\": [1,2]}").is_err());
    }

    #[test]
    fn graph_document_shape() {
        let graph = enumerate_class(&fixtures::markov4(), Limits::default()).unwrap();
        let text = graph_to_json(&graph);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["nodes"].as_array().unwrap().len(), 2);
        assert_eq!(value["verdict"]["type"], "finite");
        // 2 nodes x 3 directions, closed under involution
        assert_eq!(value["arcs"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn certificate_round_trip_verifies() {
        let graph = enumerate_class(&fixtures::markov4(), Limits::default()).unwrap();
        let certs = search_global_loops_in(&graph, 2).unwrap();
        assert!(!certs.is_empty());
        for cert in &certs {
            let text = certificate_to_json(cert);
            let back = certificate_from_json(&text).unwrap();
            assert_eq!(back.word, cert.word);
            assert_eq!(back.witnesses, cert.witnesses);
            verify_certificate(&graph, &back).unwrap();
        }
    }

    #[test]
    fn malformed_certificates_are_rejected() {
        assert!(certificate_from_json("{\"witnesses\": [], \"word\": [1,2]}").is_err());
        let dup = r#"{"witnesses": [
            {"epsilon": 1, "node": 0, "sigma": [1,2,3]},
            {"epsilon": 1, "node": 0, "sigma": [1,2,3]}],
            "word": [1,2]}"#;
        assert!(certificate_from_json(dup).is_err());
        let bad_eps = r#"{"witnesses": [{"epsilon": 2, "node": 0, "sigma": [1,2,3]}], "word": [1,2]}"#;
        assert!(certificate_from_json(bad_eps).is_err());
        let bad_sigma = r#"{"witnesses": [{"epsilon": 1, "node": 0, "sigma": [1,1,3]}], "word": [1,2]}"#;
        assert!(certificate_from_json(bad_sigma).is_err());
    }

    #[test]
    fn dot_renderings_contain_the_expected_lines() {
        let q = fixtures::markov4();
        let dot = quiver_to_dot(&q);
        assert!(dot.contains("1 -> 2 [label=\"(2,2)\"]"));
        assert!(dot.starts_with("digraph"));
        let graph = enumerate_class(&q, Limits::default()).unwrap();
        let gdot = graph_to_dot(&graph);
        assert!(gdot.contains("0 -- 1"));
    }
}
