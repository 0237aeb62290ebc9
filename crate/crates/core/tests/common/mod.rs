#![allow(dead_code)]

use std::path::PathBuf;

use multilayer_layout::{Edge, Graph, LayerSource, MultilayerGraph, Node, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub struct Shape {
    pub max_nodes: usize,
    pub max_layers: usize,
    pub min_size: f64,
    pub max_size: f64,
    pub max_label: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            max_nodes: 500,
            max_layers: 10,
            min_size: 5.0,
            max_size: 30.0,
            max_label: 20,
        }
    }
}

pub fn random_label(rng: &mut impl Rng, max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| rng.gen_range(b'a'..=b'z') as char)
        .collect()
}

/// Layer-disjoint graph partitioned on the `layer` attribute. Every layer
/// gets at least one node; edges are mostly intra-layer.
pub fn random_graph(seed: u64, shape: &Shape) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let layers = rng.gen_range(1..=shape.max_layers);
    let n = rng.gen_range(layers..=shape.max_nodes.max(layers));
    let mut by_layer: Vec<Vec<String>> = vec![Vec::new(); layers];
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let l = if i < layers {
            i
        } else {
            rng.gen_range(0..layers)
        };
        let id = format!("v{i:04}");
        let size = rng.gen_range(shape.min_size..=shape.max_size);
        let label = random_label(&mut rng, shape.max_label);
        let mut node = Node::with_label(NodeId::new(id.as_str()).unwrap(), label, size, 8.0);
        node.attributes.insert("layer".into(), format!("L{l}"));
        by_layer[l].push(id);
        nodes.push(node);
    }
    let mut edges = Vec::new();
    let m = rng.gen_range(0..=2 * n);
    for _ in 0..m {
        let la = rng.gen_range(0..layers);
        let lb = if rng.gen_bool(0.9) {
            la
        } else {
            rng.gen_range(0..layers)
        };
        let a = &by_layer[la][rng.gen_range(0..by_layer[la].len())];
        let b = &by_layer[lb][rng.gen_range(0..by_layer[lb].len())];
        edges.push(Edge::new(
            NodeId::new(a.as_str()).unwrap(),
            NodeId::new(b.as_str()).unwrap(),
            1.0,
            None,
        ));
    }
    MultilayerGraph::new(nodes, edges)
        .unwrap()
        .assign_layers(LayerSource::NodeAttribute("layer".into()))
        .unwrap()
}

/// One layer with the given `(size, label)` members joined in a path, closed
/// into a ring when there are more than two.
pub fn single_layer(members: &[(f64, String)]) -> Graph {
    let nodes = members
        .iter()
        .enumerate()
        .map(|(i, (size, label))| {
            let mut node = Node::with_label(
                NodeId::new(format!("n{i:03}")).unwrap(),
                label.as_str(),
                *size,
                8.0,
            );
            node.attributes.insert("layer".into(), "only".into());
            node
        })
        .collect();
    let k = members.len();
    let edges = (0..k)
        .filter(|&i| i + 1 < k || k > 2)
        .map(|i| {
            Edge::new(
                NodeId::new(format!("n{i:03}")).unwrap(),
                NodeId::new(format!("n{:03}", (i + 1) % k)).unwrap(),
                1.0,
                None,
            )
        })
        .collect();
    MultilayerGraph::new(nodes, edges)
        .unwrap()
        .assign_layers(LayerSource::NodeAttribute("layer".into()))
        .unwrap()
}

pub fn min_y(g: &Graph, ordinal: usize) -> f64 {
    g.layers()[ordinal]
        .members
        .iter()
        .map(|&m| g.node_at(m).pos.y)
        .fold(f64::INFINITY, f64::min)
}
