//! Layer-stacked layouts for multilayer networks.
//!
//! A [`MultilayerGraph`] is partitioned into layers (by a node attribute or
//! by edge layer labels), each layer is placed with one of six layout
//! algorithms, and the layers are stacked at a fixed distance from one
//! another, optionally rotated or given a pseudo-3D tilt. The math is
//! generic over [`Scalar`] (`f32` or `f64`); the aliases below fix `f64`.

pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod layout;
pub mod metrics;
pub mod scalar;
pub mod stack;

pub use error::{Error, ParseError, Result};
pub use graph::{Edge, EdgeKind, Layer, LayerSource, MultilayerGraph, Node, NodeId, Position};
pub use layout::{Algorithm, LayoutConfig, Subgraph};
pub use scalar::Scalar;
pub use stack::{split_by_level, stack, Orientation, StackConfig};

pub type Graph = MultilayerGraph<f64>;
pub type Graph32 = MultilayerGraph<f32>;
pub type Layout = LayoutConfig<f64>;
pub type Stacking = StackConfig<f64>;
pub type Point = Position<f64>;
