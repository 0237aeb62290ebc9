//! Per-layer node placement.
//!
//! Every algorithm works on a [`Subgraph`] (one layer, or the whole network)
//! and returns one position per member, in member order. Nothing is written
//! back to the graph here.

mod basic;
mod force;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{arg_max_by, MultilayerGraph, Node, Position};
use crate::scalar::Scalar;

pub use basic::{circle, grid, linear, random, SPACING};
pub use force::{force_atlas, fr_temperature, fruchterman_reingold, MIN_DISTANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Circle,
    Grid,
    Linear,
    Random,
    #[value(name = "fr")]
    #[serde(rename = "fr")]
    FruchtermanReingold,
    #[value(name = "forceatlas")]
    #[serde(rename = "forceatlas")]
    ForceAtlas,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Circle,
        Algorithm::Grid,
        Algorithm::Linear,
        Algorithm::Random,
        Algorithm::FruchtermanReingold,
        Algorithm::ForceAtlas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Circle => "circle",
            Algorithm::Grid => "grid",
            Algorithm::Linear => "linear",
            Algorithm::Random => "random",
            Algorithm::FruchtermanReingold => "fr",
            Algorithm::ForceAtlas => "forceatlas",
        }
    }

    /// Circle, grid and linear place nodes without overlap.
    pub fn is_overlap_free(self) -> bool {
        matches!(
            self,
            Algorithm::Circle | Algorithm::Grid | Algorithm::Linear
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown layout {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayoutConfig<T = f64> {
    pub algorithm: Algorithm,
    pub iterations: usize,
    pub speed: T,
    pub gravity: T,
    /// Placement area for force layouts, px².
    pub area: T,
    pub seed: u64,
}

impl<T: Scalar> Default for LayoutConfig<T> {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::FruchtermanReingold,
            iterations: 100,
            speed: T::one(),
            gravity: T::of(10.0),
            area: T::of(10_000.0),
            seed: 42,
        }
    }
}

impl<T: Scalar> LayoutConfig<T> {
    pub fn with_algorithm(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        if !(self.area > T::zero() && self.area.is_finite()) {
            return Err(Error::InvalidConfig("area must be positive".into()));
        }
        if !(self.speed > T::zero() && self.speed.is_finite()) {
            return Err(Error::InvalidConfig("speed must be positive".into()));
        }
        if !(self.gravity >= T::zero() && self.gravity.is_finite()) {
            return Err(Error::InvalidConfig("gravity must be non-negative".into()));
        }
        Ok(())
    }
}

/// Square placement region of a layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerFrame<T> {
    pub origin_x: T,
    pub origin_y: T,
    /// Side length, px.
    pub extent: T,
}

/// The nodes one layout invocation places, and the edges among them.
#[derive(Debug, Clone)]
pub struct Subgraph<'g, T> {
    graph: &'g MultilayerGraph<T>,
    members: Vec<usize>,
    edges: Vec<(usize, usize)>,
    ordinal: usize,
    origin: (T, T),
}

impl<'g, T: Scalar> Subgraph<'g, T> {
    /// Members of layer `ordinal` with its intra-layer edges only.
    pub fn layer(graph: &'g MultilayerGraph<T>, ordinal: usize) -> Result<Self> {
        let layer = graph
            .layer(ordinal)
            .ok_or_else(|| Error::EmptyLayer(format!("#{ordinal}")))?;
        if layer.is_empty() {
            return Err(Error::EmptyLayer(layer.key.clone()));
        }
        let local = local_index(graph.node_count(), &layer.members);
        let edges = graph
            .intra_edges(ordinal)
            .map(|e| {
                let (s, t) = graph.edge_ends(e);
                (local[s], local[t])
            })
            .collect();
        Ok(Self {
            graph,
            members: layer.members.clone(),
            edges,
            ordinal,
            origin: (T::zero(), T::zero()),
        })
    }

    /// Every node (in id order) and every edge, intra- and inter-layer.
    pub fn whole(graph: &'g MultilayerGraph<T>) -> Result<Self> {
        if graph.node_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut members: Vec<usize> = (0..graph.node_count()).collect();
        members.sort_by(|&a, &b| graph.node_at(a).id.cmp(&graph.node_at(b).id));
        let local = local_index(graph.node_count(), &members);
        let edges = (0..graph.edges().len())
            .map(|e| {
                let (s, t) = graph.edge_ends(e);
                (local[s], local[t])
            })
            .collect();
        Ok(Self {
            graph,
            members,
            edges,
            ordinal: 0,
            origin: (T::zero(), T::zero()),
        })
    }

    pub fn with_origin(mut self, x: T, y: T) -> Self {
        self.origin = (x, y);
        self
    }

    pub fn graph(&self) -> &'g MultilayerGraph<T> {
        self.graph
    }

    /// Node indices, ordered by node id.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn node(&self, local: usize) -> &'g Node<T> {
        self.graph.node_at(self.members[local])
    }

    /// Edges as pairs of member positions.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn ordinal(&self) -> usize {
        self.ordinal
    }

    /// Biggest member by size, ties by id.
    pub fn biggest(&self) -> &'g Node<T> {
        arg_max_by(self.graph.nodes(), &self.members, |n| n.size())
    }

    pub fn frame(&self) -> LayerFrame<T> {
        LayerFrame {
            origin_x: self.origin.0,
            origin_y: self.origin.1,
            extent: layer_extent(self),
        }
    }

    fn rng(&self, seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed ^ self.ordinal as u64)
    }
}

fn local_index(total: usize, members: &[usize]) -> Vec<usize> {
    let mut local = vec![usize::MAX; total];
    for (i, &m) in members.iter().enumerate() {
        local[m] = i;
    }
    local
}

/// `biggest.size + biggest.labelWidth × |members|`.
pub fn layer_extent<T: Scalar>(sub: &Subgraph<'_, T>) -> T {
    let big = sub.biggest();
    let n = T::from_usize(sub.len()).unwrap_or_else(T::one);
    big.size() + big.label_width() * n
}

/// Run `cfg.algorithm` on `sub`.
pub fn run<T: Scalar>(sub: &Subgraph<'_, T>, cfg: &LayoutConfig<T>) -> Result<Vec<Position<T>>> {
    cfg.validate()?;
    let out = match cfg.algorithm {
        Algorithm::Circle => circle(sub),
        Algorithm::Grid => grid(sub),
        Algorithm::Linear => linear(sub),
        Algorithm::Random => random(sub, cfg.seed),
        Algorithm::FruchtermanReingold => fruchterman_reingold(sub, cfg),
        Algorithm::ForceAtlas => force_atlas(sub, cfg),
    };
    if let Some(i) = out.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinitePosition(sub.node(i).id.to_string()));
    }
    Ok(out)
}
