//! Read-only layout quality measures.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Layer, MultilayerGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundingBox<T> {
    pub min_x: T,
    pub min_y: T,
    pub max_x: T,
    pub max_y: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerReport<T = f64> {
    pub layer_key: String,
    pub node_count: usize,
    pub bbox: BoundingBox<T>,
    pub overlap_pairs: usize,
    pub mean_intra_edge_length: T,
}

/// Unordered member pairs whose discs intersect
/// (`centre distance < size_i + size_j`).
pub fn count_overlaps<T: Scalar>(graph: &MultilayerGraph<T>, layer: &Layer) -> usize {
    count_pairs(graph, layer, false)
}

/// Like [`count_overlaps`], but each body is widened by half its label.
pub fn count_label_overlaps<T: Scalar>(graph: &MultilayerGraph<T>, layer: &Layer) -> usize {
    count_pairs(graph, layer, true)
}

fn count_pairs<T: Scalar>(graph: &MultilayerGraph<T>, layer: &Layer, labels: bool) -> usize {
    let half = T::of(0.5);
    let reach = |i: usize| {
        let n = graph.node_at(i);
        if labels {
            n.size() + n.label_width() * half
        } else {
            n.size()
        }
    };
    let m = &layer.members;
    let mut count = 0;
    for (a, &i) in m.iter().enumerate() {
        for &j in &m[a + 1..] {
            let d = graph.node_at(i).pos.planar_distance(&graph.node_at(j).pos);
            if d < reach(i) + reach(j) {
                count += 1;
            }
        }
    }
    count
}

/// Gap between consecutive layers along `axis`: lowest centre of layer
/// `i + 1` minus highest centre of layer `i`. Overlapping layers give
/// negative gaps.
pub fn layer_separation<T: Scalar>(graph: &MultilayerGraph<T>, axis: Axis) -> Result<Vec<T>> {
    if graph.layers().len() < 2 {
        return Err(Error::SingleLayer);
    }
    let coord = |i: usize| {
        let p = graph.node_at(i).pos;
        match axis {
            Axis::X => p.x,
            Axis::Y => p.y,
        }
    };
    let span = |l: &Layer| {
        l.members
            .iter()
            .map(|&m| coord(m))
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    Ok(graph
        .layers()
        .windows(2)
        .map(|w| span(&w[1]).0 - span(&w[0]).1)
        .collect())
}

pub fn bounding_box<T: Scalar>(graph: &MultilayerGraph<T>, layer: &Layer) -> BoundingBox<T> {
    if layer.is_empty() {
        return BoundingBox {
            min_x: T::zero(),
            min_y: T::zero(),
            max_x: T::zero(),
            max_y: T::zero(),
        };
    }
    let mut bb = BoundingBox {
        min_x: T::infinity(),
        min_y: T::infinity(),
        max_x: T::neg_infinity(),
        max_y: T::neg_infinity(),
    };
    for &m in &layer.members {
        let p = graph.node_at(m).pos;
        bb.min_x = bb.min_x.min(p.x);
        bb.min_y = bb.min_y.min(p.y);
        bb.max_x = bb.max_x.max(p.x);
        bb.max_y = bb.max_y.max(p.y);
    }
    bb
}

/// One report per layer, in ordinal order.
pub fn report<T: Scalar>(graph: &MultilayerGraph<T>) -> Vec<LayerReport<T>> {
    graph
        .layers()
        .iter()
        .map(|layer| {
            let (mut total, mut count) = (T::zero(), 0usize);
            for e in graph.intra_edges(layer.ordinal) {
                let (s, t) = graph.edge_ends(e);
                total += graph.node_at(s).pos.planar_distance(&graph.node_at(t).pos);
                count += 1;
            }
            LayerReport {
                layer_key: layer.key.clone(),
                node_count: layer.len(),
                bbox: bounding_box(graph, layer),
                overlap_pairs: count_overlaps(graph, layer),
                mean_intra_edge_length: if count == 0 {
                    T::zero()
                } else {
                    total / T::from_usize(count).unwrap()
                },
            }
        })
        .collect()
}

/// Plain-text table of `reports`.
pub fn render_table<T: Scalar>(reports: &[LayerReport<T>]) -> String {
    let key_w = reports
        .iter()
        .map(|r| r.layer_key.chars().count())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<key_w$}  {:>6}  {:>12}  {:>12}  {:>12}  {:>12}  {:>8}  {:>12}",
        "layer", "nodes", "min_x", "min_y", "max_x", "max_y", "overlaps", "mean_edge"
    );
    for r in reports {
        let f = |v: T| format!("{:.3}", v.to_f64_lossy());
        let _ = writeln!(
            out,
            "{:<key_w$}  {:>6}  {:>12}  {:>12}  {:>12}  {:>12}  {:>8}  {:>12}",
            r.layer_key,
            r.node_count,
            f(r.bbox.min_x),
            f(r.bbox.min_y),
            f(r.bbox.max_x),
            f(r.bbox.max_y),
            r.overlap_pairs,
            f(r.mean_intra_edge_length)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, LayerSource, Node, NodeId, Position};

    fn graph(
        points: &[(&str, &str, f64, f64, f64)],
        edges: &[(&str, &str)],
    ) -> MultilayerGraph<f64> {
        let nodes = points
            .iter()
            .map(|(id, layer, size, x, y)| {
                let mut n = Node::with_label(NodeId::new(*id).unwrap(), "", *size, 8.0);
                n.attributes.insert("l".into(), (*layer).into());
                n.pos = Position::planar(*x, *y);
                n
            })
            .collect();
        let edges = edges
            .iter()
            .map(|(s, t)| {
                Edge::new(
                    NodeId::new(*s).unwrap(),
                    NodeId::new(*t).unwrap(),
                    1.0,
                    None,
                )
            })
            .collect();
        MultilayerGraph::new(nodes, edges)
            .unwrap()
            .assign_layers(LayerSource::NodeAttribute("l".into()))
            .unwrap()
    }

    #[test]
    fn overlap_threshold() {
        let g = graph(
            &[("a", "0", 10.0, 0.0, 0.0), ("b", "0", 10.0, 25.0, 0.0)],
            &[],
        );
        assert_eq!(count_overlaps(&g, &g.layers()[0]), 0);
        let g = graph(
            &[("a", "0", 10.0, 0.0, 0.0), ("b", "0", 10.0, 15.0, 0.0)],
            &[],
        );
        assert_eq!(count_overlaps(&g, &g.layers()[0]), 1);
        let g = graph(
            &[("a", "0", 10.0, 0.0, 0.0), ("b", "0", 10.0, 20.0, 0.0)],
            &[],
        );
        assert_eq!(count_overlaps(&g, &g.layers()[0]), 0);
    }

    #[test]
    fn coincident_nodes_all_overlap() {
        let pts: Vec<(String, &str, f64, f64, f64)> = (0..6)
            .map(|i| (format!("n{i}"), "0", 1.0, 3.0, 3.0))
            .collect();
        let pts: Vec<_> = pts
            .iter()
            .map(|(a, b, c, d, e)| (a.as_str(), *b, *c, *d, *e))
            .collect();
        let g = graph(&pts, &[]);
        assert_eq!(count_overlaps(&g, &g.layers()[0]), 15);
    }

    #[test]
    fn label_aware_overlap_is_stricter() {
        let mut g = graph(
            &[("a", "0", 10.0, 0.0, 0.0), ("b", "0", 10.0, 25.0, 0.0)],
            &[],
        );
        g.node_at_mut(0).set_label("abc", 8.0);
        assert_eq!(count_overlaps(&g, &g.layers()[0]), 0);
        assert_eq!(count_label_overlaps(&g, &g.layers()[0]), 1);
    }

    #[test]
    fn separation_lists() {
        let g = graph(
            &[("a", "0", 10.0, 0.0, 0.0), ("b", "1", 10.0, 0.0, 310.0)],
            &[],
        );
        assert_eq!(layer_separation(&g, Axis::Y).unwrap(), vec![310.0]);
        let g = graph(
            &[
                ("a", "0", 1.0, 0.0, 0.0),
                ("b", "1", 1.0, 0.0, -5.0),
                ("c", "2", 1.0, 7.0, 1.0),
            ],
            &[],
        );
        let gaps = layer_separation(&g, Axis::Y).unwrap();
        assert_eq!(gaps, vec![-5.0, 6.0]);
        assert_eq!(layer_separation(&g, Axis::X).unwrap().len(), 2);
        let one = graph(&[("a", "0", 1.0, 0.0, 0.0)], &[]);
        assert!(matches!(
            layer_separation(&one, Axis::Y),
            Err(Error::SingleLayer)
        ));
    }

    #[test]
    fn report_is_per_layer_and_read_only() {
        let g = graph(
            &[
                ("a", "0", 1.0, 0.0, 0.0),
                ("b", "0", 1.0, 3.0, 4.0),
                ("c", "0", 1.0, 6.0, 8.0),
                ("d", "1", 1.0, 0.0, 100.0),
            ],
            &[("a", "b"), ("a", "c"), ("c", "d")],
        );
        let before: Vec<_> = g.nodes().iter().map(|n| n.pos).collect();
        let r = report(&g);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].node_count, 3);
        assert_eq!(r[0].mean_intra_edge_length, 7.5);
        assert_eq!(
            r[0].bbox,
            BoundingBox {
                min_x: 0.0,
                min_y: 0.0,
                max_x: 6.0,
                max_y: 8.0
            }
        );
        assert_eq!(r[1].mean_intra_edge_length, 0.0);
        let after: Vec<_> = g.nodes().iter().map(|n| n.pos).collect();
        assert_eq!(before, after);
        let table = render_table(&r);
        assert_eq!(table.lines().count(), 3);
    }
}
