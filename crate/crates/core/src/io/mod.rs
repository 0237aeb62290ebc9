//! Input parsers and output writers.

pub mod edgelist;
pub mod gexf;
pub mod json;
pub mod nodes;
pub mod svg;

pub use edgelist::{
    graph_from_records, parse_layer_table, parse_multiplex_edge_list, read_multiplex_edge_list,
    LayerTable, MpxEdgeRecord,
};
pub use gexf::write_gexf;
pub use json::{write_positioned_json, PositionedOutput, RunMeta};
pub use nodes::{merge_node_table, parse_node_csv, NodeRecord, NodeTable};
pub use svg::{render_svg, StyleConfig};

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, MultilayerGraph};
use crate::scalar::Scalar;

/// Fixed six-decimal notation, never an exponent, never `-0`.
pub(crate) fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_owned()
    } else {
        s
    }
}

/// [`fixed6`] with trailing zeros removed; keeps one decimal when
/// `keep_point` is set (`1.0`), otherwise drops the point (`1`).
pub(crate) fn trimmed(v: f64, keep_point: bool) -> String {
    let mut s = fixed6(v);
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        if keep_point {
            s.push('0');
        } else {
            s.pop();
        }
    }
    s
}

pub(crate) fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn ensure_finite<T: Scalar>(graph: &MultilayerGraph<T>) -> Result<()> {
    match graph.nodes().iter().find(|n| !n.pos.is_finite()) {
        Some(n) => Err(Error::NonFinitePosition(n.id.to_string())),
        None => Ok(()),
    }
}

/// Node indices in layer-ordinal, then id, order. Unlayered graphs fall
/// back to id order.
pub(crate) fn node_order<T: Scalar>(graph: &MultilayerGraph<T>) -> Vec<usize> {
    if graph.layers().is_empty() {
        let mut all: Vec<usize> = (0..graph.node_count()).collect();
        all.sort_by(|&a, &b| graph.node_at(a).id.cmp(&graph.node_at(b).id));
        all
    } else {
        graph
            .layers()
            .iter()
            .flat_map(|l| l.members.iter().copied())
            .collect()
    }
}

pub(crate) fn layer_key_of<T: Scalar>(graph: &MultilayerGraph<T>, node: usize) -> &str {
    graph
        .node_at(node)
        .layer()
        .and_then(|o| graph.layer(o))
        .map_or("", |l| l.key.as_str())
}

/// Layer key an edge is filed under: its layer for intra-layer edges,
/// otherwise its own label, if any.
pub(crate) fn edge_layer<T: Scalar>(graph: &MultilayerGraph<T>, edge: usize) -> Option<&str> {
    let e = &graph.edges()[edge];
    match e.kind {
        EdgeKind::IntraLayer if !graph.layers().is_empty() => {
            Some(layer_key_of(graph, graph.edge_ends(edge).0))
        }
        _ => e.layer_label.as_deref(),
    }
}

/// Edge indices sorted by source id, target id, then layer key.
pub(crate) fn edge_order<T: Scalar>(graph: &MultilayerGraph<T>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.edges().len()).collect();
    order.sort_by(|&a, &b| {
        let (ea, eb) = (&graph.edges()[a], &graph.edges()[b]);
        ea.source
            .cmp(&eb.source)
            .then_with(|| ea.target.cmp(&eb.target))
            .then_with(|| edge_layer(graph, a).cmp(&edge_layer(graph, b)))
    });
    order
}
