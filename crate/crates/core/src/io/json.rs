//! Positioned-graph JSON.
//!
//! Output is written by hand so that field order and number formatting are
//! fixed: nodes in layer-ordinal then id order, edges by source, target and
//! layer, every number with exactly six decimals.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{edge_layer, edge_order, ensure_finite, fixed6, layer_key_of, node_order};
use crate::error::Result;
use crate::graph::MultilayerGraph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub layout: String,
    pub seed: u64,
    /// Echo of the configuration that produced the layout.
    pub config: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct LayerRecord {
    pub key: String,
    pub ordinal: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct NodeRecord {
    pub id: String,
    pub layer: String,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub size: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub layer: Option<String>,
    pub weight: f64,
    pub kind: String,
}

/// A parsed positioned-graph document.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct PositionedOutput {
    pub meta: RunMeta,
    pub layers: Vec<LayerRecord>,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl PositionedOutput {
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        Ok(serde_json::from_slice(bytes)?)
    }

    /// Intra-layer edges as a multiplex edge list, with replica suffixes
    /// stripped. Layer keys that are positive integers are used as ids;
    /// otherwise layers are numbered by ordinal and a layer table is
    /// returned alongside.
    pub fn multiplex_edge_list(&self) -> (String, Option<String>) {
        let numeric = self
            .layers
            .iter()
            .all(|l| l.key.parse::<u64>().is_ok_and(|v| v > 0));
        let id_of = |key: &str| -> String {
            if numeric {
                key.to_owned()
            } else {
                self.layers
                    .iter()
                    .find(|l| l.key == key)
                    .map_or_else(|| "0".to_owned(), |l| (l.ordinal + 1).to_string())
            }
        };
        let strip = |id: &str, key: &str| -> String {
            id.strip_suffix(key)
                .and_then(|s| s.strip_suffix('@'))
                .unwrap_or(id)
                .to_owned()
        };
        let mut edges = String::new();
        for e in &self.edges {
            let Some(key) = e.layer.as_deref() else {
                continue;
            };
            if e.kind != "intra" {
                continue;
            }
            let _ = writeln!(
                edges,
                "{} {} {} {}",
                id_of(key),
                strip(&e.source, key),
                strip(&e.target, key),
                e.weight
            );
        }
        let table = (!numeric).then(|| {
            let mut t = String::from("layerID layerLabel\n");
            for l in &self.layers {
                let _ = writeln!(t, "{} {}", l.ordinal + 1, l.key);
            }
            t
        });
        (edges, table)
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Serialize a laid-out graph.
pub fn write_positioned_json<T: Scalar>(
    graph: &MultilayerGraph<T>,
    meta: &RunMeta,
) -> Result<Vec<u8>> {
    ensure_finite(graph)?;
    let num = |v: T| fixed6(v.to_f64_lossy());
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(
        out,
        "  \"meta\": {{\"layout\": {}, \"seed\": {}, \"config\": {}}},",
        quote(&meta.layout),
        meta.seed,
        serde_json::to_string(&meta.config)?
    );

    out.push_str("  \"layers\": [");
    for (i, l) in graph.layers().iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(
            out,
            "    {{\"key\": {}, \"ordinal\": {}, \"size\": {}}}",
            quote(&l.key),
            l.ordinal,
            l.len()
        );
    }
    out.push_str(if graph.layers().is_empty() {
        "],\n"
    } else {
        "\n  ],\n"
    });

    let nodes = node_order(graph);
    out.push_str("  \"nodes\": [");
    for (i, &m) in nodes.iter().enumerate() {
        let n = graph.node_at(m);
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(
            out,
            "    {{\"id\": {}, \"layer\": {}, \"x\": {}, \"y\": {}, \"z\": {}, \"size\": {}, \"label\": {}}}",
            quote(n.id.as_str()),
            quote(layer_key_of(graph, m)),
            num(n.pos.x),
            num(n.pos.y),
            num(n.pos.z),
            num(n.size()),
            quote(n.label())
        );
    }
    out.push_str(if nodes.is_empty() { "],\n" } else { "\n  ],\n" });

    let edges = edge_order(graph);
    out.push_str("  \"edges\": [");
    for (i, &e) in edges.iter().enumerate() {
        let edge = &graph.edges()[e];
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let layer = edge_layer(graph, e).map_or_else(|| "null".to_owned(), quote);
        let _ = write!(
            out,
            "    {{\"source\": {}, \"target\": {}, \"layer\": {}, \"weight\": {}, \"kind\": \"{}\"}}",
            quote(edge.source.as_str()),
            quote(edge.target.as_str()),
            layer,
            num(edge.weight),
            edge.kind.as_str()
        );
    }
    out.push_str(if edges.is_empty() { "]\n" } else { "\n  ]\n" });
    out.push_str("}\n");
    Ok(out.into_bytes())
}
