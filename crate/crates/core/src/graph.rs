//! Multilayer graph model: nodes, edges and the layer partition.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default render radius of a node, in px.
pub const DEFAULT_NODE_SIZE: f64 = 10.0;
/// Default horizontal advance of one label glyph, in px.
pub const DEFAULT_GLYPH_WIDTH: f64 = 8.0;

/// Opaque, non-empty node identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidNodeId(id));
        }
        Ok(Self(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Identifier of the copy of `self` living in layer `layer_key`.
    pub fn replica(&self, layer_key: &str) -> NodeId {
        NodeId(format!("{}@{}", self.0, layer_key))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for NodeId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Position<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Position<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn planar(x: T, y: T) -> Self {
        Self { x, y, z: T::zero() }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn planar_distance(&self, other: &Self) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node<T> {
    pub id: NodeId,
    label: String,
    size: T,
    label_width: T,
    pub pos: Position<T>,
    pub attributes: BTreeMap<String, String>,
    layer: Option<usize>,
}

impl<T: Scalar> Node<T> {
    /// A node of default size whose label is its id.
    pub fn new(id: NodeId) -> Self {
        let label = id.as_str().to_owned();
        Self::with_label(
            id,
            label,
            T::of(DEFAULT_NODE_SIZE),
            T::of(DEFAULT_GLYPH_WIDTH),
        )
    }

    /// # Panics
    /// If `size` is not strictly positive.
    pub fn with_label(id: NodeId, label: impl Into<String>, size: T, glyph_width: T) -> Self {
        assert!(size > T::zero(), "node size must be positive");
        let mut node = Self {
            id,
            label: String::new(),
            size,
            label_width: T::zero(),
            pos: Position::default(),
            attributes: BTreeMap::new(),
            layer: None,
        };
        node.set_label(label, glyph_width);
        node
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> T {
        self.size
    }

    pub fn label_width(&self) -> T {
        self.label_width
    }

    /// Ordinal of the layer holding this node, once layers are assigned.
    pub fn layer(&self) -> Option<usize> {
        self.layer
    }

    /// Replace the label; its width is `chars × glyph_width`.
    pub fn set_label(&mut self, label: impl Into<String>, glyph_width: T) {
        self.label = label.into();
        let chars = T::from_usize(self.label.chars().count()).unwrap_or_else(T::zero);
        self.label_width = chars * glyph_width.max(T::zero());
    }

    /// Returns `false` (and leaves the node unchanged) for non-positive sizes.
    pub fn set_size(&mut self, size: T) -> bool {
        if size > T::zero() && size.is_finite() {
            self.size = size;
            true
        } else {
            false
        }
    }

    /// Diameter plus label: the horizontal room the node occupies.
    pub fn footprint(&self) -> T {
        self.size + self.size + self.label_width
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    IntraLayer,
    InterLayer,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::IntraLayer => "intra",
            EdgeKind::InterLayer => "inter",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<T> {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: T,
    pub layer_label: Option<String>,
    pub kind: EdgeKind,
}

impl<T: Scalar> Edge<T> {
    pub fn new(source: NodeId, target: NodeId, weight: T, layer_label: Option<String>) -> Self {
        Self {
            source,
            target,
            weight,
            layer_label,
            kind: EdgeKind::IntraLayer,
        }
    }
}

/// A layer of the partition. `members` are node indices ordered by node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub key: String,
    pub ordinal: usize,
    pub members: Vec<usize>,
}

impl Layer {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayerSource {
    /// Partition nodes by the value of a node attribute.
    NodeAttribute(String),
    /// Partition by edge layer labels, replicating nodes per layer.
    EdgeLayerLabel,
}

/// Nodes, edges and (after [`MultilayerGraph::assign_layers`]) the layer
/// partition. `layers[i].ordinal == i` always holds.
#[derive(Debug, Clone)]
pub struct MultilayerGraph<T> {
    nodes: Vec<Node<T>>,
    edges: Vec<Edge<T>>,
    ends: Vec<(usize, usize)>,
    index: HashMap<NodeId, usize>,
    layers: Vec<Layer>,
    layer_source: Option<LayerSource>,
    layer_order: Vec<String>,
}

impl<T: Scalar> MultilayerGraph<T> {
    pub fn new(nodes: Vec<Node<T>>, edges: Vec<Edge<T>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.id.clone(), i).is_some() {
                return Err(Error::DuplicateNode(n.id.to_string()));
            }
        }
        let ends = edges
            .iter()
            .map(|e| {
                let s = *index
                    .get(&e.source)
                    .ok_or_else(|| Error::UnknownNode(e.source.to_string()))?;
                let t = *index
                    .get(&e.target)
                    .ok_or_else(|| Error::UnknownNode(e.target.to_string()))?;
                Ok((s, t))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            nodes,
            edges,
            ends,
            index,
            layers: Vec::new(),
            layer_source: None,
            layer_order: Vec::new(),
        })
    }

    /// Preferred ordering of layer keys for [`Self::assign_layers`]. Keys not
    /// listed follow in natural order.
    pub fn with_layer_order(mut self, keys: Vec<String>) -> Self {
        self.layer_order = keys;
        self
    }

    /// Drop the layer partition and hand back nodes and edges.
    pub fn into_parts(self) -> (Vec<Node<T>>, Vec<Edge<T>>) {
        let mut nodes = self.nodes;
        for n in &mut nodes {
            n.layer = None;
        }
        (nodes, self.edges)
    }

    pub fn layer_order(&self) -> &[String] {
        &self.layer_order
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn nodes_mut(&mut self) -> impl Iterator<Item = &mut Node<T>> {
        self.nodes.iter_mut()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    /// Node indices of the endpoints of edge `i`.
    pub fn edge_ends(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, ordinal: usize) -> Option<&Layer> {
        self.layers.get(ordinal)
    }

    pub fn layer_source(&self) -> Option<&LayerSource> {
        self.layer_source.as_ref()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn node(&self, id: &str) -> Option<&Node<T>> {
        self.index_of(id).map(|i| &self.nodes[i])
    }

    pub fn node_at(&self, i: usize) -> &Node<T> {
        &self.nodes[i]
    }

    pub fn node_at_mut(&mut self, i: usize) -> &mut Node<T> {
        &mut self.nodes[i]
    }

    /// Indices of the intra-layer edges whose endpoints both lie in `ordinal`.
    pub fn intra_edges(&self, ordinal: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&i| {
            self.edges[i].kind == EdgeKind::IntraLayer
                && self.nodes[self.ends[i].0].layer == Some(ordinal)
        })
    }

    /// Partition the nodes into layers and classify every edge.
    pub fn assign_layers(&self, source: LayerSource) -> Result<Self> {
        if self.nodes.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut out = match &source {
            LayerSource::NodeAttribute(name) => self.partition_by_attribute(name)?,
            LayerSource::EdgeLayerLabel => self.replicate_by_edge_label()?,
        };
        out.layer_source = Some(source);
        Ok(out)
    }

    fn partition_by_attribute(&self, name: &str) -> Result<Self> {
        let mut keys = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            match n.attributes.get(name) {
                Some(v) => keys.push(v.clone()),
                None => {
                    return Err(Error::MissingLayerAttribute {
                        node: n.id.to_string(),
                        reason: format!("attribute {name:?} is not set"),
                    })
                }
            }
        }
        let order = self.ordered_keys(keys.iter().cloned().collect());
        let ordinal_of: HashMap<&str, usize> = order
            .iter()
            .enumerate()
            .map(|(i, k)| (k.as_str(), i))
            .collect();

        let mut out = self.clone();
        for (node, key) in out.nodes.iter_mut().zip(&keys) {
            node.layer = Some(ordinal_of[key.as_str()]);
        }
        out.rebuild_layers(order);
        Ok(out)
    }

    fn replicate_by_edge_label(&self) -> Result<Self> {
        let mut labels_of: Vec<BTreeSet<&str>> = vec![BTreeSet::new(); self.nodes.len()];
        let mut all = BTreeSet::new();
        for (e, &(s, t)) in self.edges.iter().zip(&self.ends) {
            let label = e
                .layer_label
                .as_deref()
                .ok_or_else(|| Error::MissingLayerAttribute {
                    node: e.source.to_string(),
                    reason: format!("edge {} -> {} has no layer label", e.source, e.target),
                })?;
            labels_of[s].insert(label);
            labels_of[t].insert(label);
            all.insert(label.to_owned());
        }
        if let Some(i) = labels_of.iter().position(BTreeSet::is_empty) {
            return Err(Error::MissingLayerAttribute {
                node: self.nodes[i].id.to_string(),
                reason: "no incident edge carries a layer label".into(),
            });
        }
        let order = self.ordered_keys(all);
        let ordinal_of: HashMap<&str, usize> = order
            .iter()
            .enumerate()
            .map(|(i, k)| (k.as_str(), i))
            .collect();

        let mut nodes = Vec::new();
        let mut coupling = Vec::new();
        for (node, labels) in self.nodes.iter().zip(&labels_of) {
            let mut ordinals: Vec<usize> = labels.iter().map(|l| ordinal_of[l]).collect();
            ordinals.sort_unstable();
            let mut prev: Option<NodeId> = None;
            for o in ordinals {
                let mut replica = node.clone();
                replica.id = node.id.replica(&order[o]);
                replica.layer = Some(o);
                if let Some(p) = prev.take() {
                    coupling.push(Edge {
                        source: p,
                        target: replica.id.clone(),
                        weight: T::one(),
                        layer_label: None,
                        kind: EdgeKind::InterLayer,
                    });
                }
                prev = Some(replica.id.clone());
                nodes.push(replica);
            }
        }
        let mut edges: Vec<Edge<T>> = self
            .edges
            .iter()
            .map(|e| {
                let key = e.layer_label.as_deref().unwrap_or_default();
                Edge {
                    source: e.source.replica(key),
                    target: e.target.replica(key),
                    weight: e.weight,
                    layer_label: e.layer_label.clone(),
                    kind: EdgeKind::IntraLayer,
                }
            })
            .collect();
        edges.extend(coupling);

        let mut out = Self::new(nodes, edges)?;
        out.layer_order = self.layer_order.clone();
        out.rebuild_layers(order);
        Ok(out)
    }

    /// Hinted keys first (those present), then the rest in natural order.
    fn ordered_keys(&self, present: BTreeSet<String>) -> Vec<String> {
        let mut order: Vec<String> = self
            .layer_order
            .iter()
            .filter(|k| present.contains(*k))
            .cloned()
            .collect();
        let mut rest: Vec<String> = present.into_iter().filter(|k| !order.contains(k)).collect();
        rest.sort_by(|a, b| natural_cmp(a, b));
        order.extend(rest);
        order
    }

    /// Rebuild `layers` from each node's ordinal and reclassify edges.
    fn rebuild_layers(&mut self, keys: Vec<String>) {
        let mut layers: Vec<Layer> = keys
            .into_iter()
            .enumerate()
            .map(|(ordinal, key)| Layer {
                key,
                ordinal,
                members: Vec::new(),
            })
            .collect();
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(o) = n.layer {
                layers[o].members.push(i);
            }
        }
        for layer in &mut layers {
            layer
                .members
                .sort_by(|&a, &b| self.nodes[a].id.cmp(&self.nodes[b].id));
        }
        self.layers = layers;
        for (e, &(s, t)) in self.edges.iter_mut().zip(&self.ends) {
            e.kind = if self.nodes[s].layer == self.nodes[t].layer {
                EdgeKind::IntraLayer
            } else {
                EdgeKind::InterLayer
            };
        }
    }

    /// Reorder layers by ascending member count, ties by key.
    pub fn sort_layers_by_size(&self) -> Self {
        let mut out = self.clone();
        if out.layers.len() < 2 {
            return out;
        }
        let mut perm: Vec<usize> = (0..out.layers.len()).collect();
        perm.sort_by(|&a, &b| {
            let (la, lb) = (&out.layers[a], &out.layers[b]);
            la.len().cmp(&lb.len()).then_with(|| la.key.cmp(&lb.key))
        });
        let mut new_ordinal = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_ordinal[old] = new;
        }
        for n in &mut out.nodes {
            n.layer = n.layer.map(|o| new_ordinal[o]);
        }
        let old = std::mem::take(&mut out.layers);
        let mut slots: Vec<Option<Layer>> = old.into_iter().map(Some).collect();
        out.layers = perm
            .iter()
            .enumerate()
            .map(|(new, &o)| {
                let mut l = slots[o].take().expect("permutation");
                l.ordinal = new;
                l
            })
            .collect();
        out
    }

    fn layer_or_err(&self, ordinal: usize) -> Result<&Layer> {
        let layer = self
            .layers
            .get(ordinal)
            .ok_or_else(|| Error::EmptyLayer(format!("#{ordinal}")))?;
        if layer.is_empty() {
            return Err(Error::EmptyLayer(layer.key.clone()));
        }
        Ok(layer)
    }

    /// Member with the largest `y`; ties go to the smallest id.
    pub fn farthest_node(&self, ordinal: usize) -> Result<&Node<T>> {
        let layer = self.layer_or_err(ordinal)?;
        Ok(arg_max_by(&self.nodes, &layer.members, |n| n.pos.y))
    }

    /// Member with the largest size; ties go to the smallest id.
    pub fn biggest_node(&self, ordinal: usize) -> Result<&Node<T>> {
        let layer = self.layer_or_err(ordinal)?;
        Ok(arg_max_by(&self.nodes, &layer.members, |n| n.size))
    }
}

/// `members` are id-ordered, so keeping the first maximum breaks ties by id.
pub(crate) fn arg_max_by<'a, T: Scalar>(
    nodes: &'a [Node<T>],
    members: &[usize],
    key: impl Fn(&Node<T>) -> T,
) -> &'a Node<T> {
    let mut best = &nodes[members[0]];
    for &m in &members[1..] {
        if key(&nodes[m]) > key(best) {
            best = &nodes[m];
        }
    }
    best
}

/// Integers compare numerically and sort before other strings.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}
