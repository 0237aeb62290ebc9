//! Layer stacking: per-layer (or whole-network) layout, the inter-layer
//! offset chain, horizontal rotation and the pseudo-3D projection.
//!
//! Each layer after the first is shifted along y by
//! `fy = farthest.y + farthest.size + layer_distance`, where `farthest` is
//! the member of the previous layer with the largest (already shifted) y.
//! The offsets are computed in vertical stacking coordinates; the
//! horizontal orientation and the 3D projection are applied afterwards,
//! so both reuse exactly the same chain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MultilayerGraph, Position};
use crate::layout::{self, LayoutConfig, Subgraph};
use crate::scalar::Scalar;

/// Rotation applied by the horizontal orientation, degrees.
pub const HORIZONTAL_ROTATION_DEG: f64 = 270.0;
/// Tilt of the pseudo-3D projection, degrees.
pub const PROJECTION_TILT_DEG: f64 = 65.0;
/// Upper bound (exclusive) of the random depth given to projected nodes.
pub const DEPTH_JITTER: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StackConfig<T = f64> {
    pub layer_distance: T,
    pub orientation: Orientation,
    pub three_d: bool,
    pub split_by_level: bool,
    pub sort_layers: bool,
}

impl<T: Scalar> Default for StackConfig<T> {
    fn default() -> Self {
        Self {
            layer_distance: T::of(200.0),
            orientation: Orientation::Vertical,
            three_d: false,
            split_by_level: false,
            sort_layers: false,
        }
    }
}

impl<T: Scalar> StackConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.layer_distance >= T::zero() && self.layer_distance.is_finite()) {
            return Err(Error::InvalidConfig(
                "layer distance must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Lay out and stack every layer of `graph`.
///
/// With `split_by_level` set this defers to [`split_by_level`]. Otherwise each
/// layer is laid out on its own (layers run in parallel), anchored so its
/// lowest member sits at y = 0, and then offset in ordinal order.
pub fn stack<T: Scalar>(
    graph: &MultilayerGraph<T>,
    layout_cfg: &LayoutConfig<T>,
    stack_cfg: &StackConfig<T>,
) -> Result<MultilayerGraph<T>> {
    let mut g = prepare(graph, layout_cfg, stack_cfg)?;
    if stack_cfg.split_by_level {
        return split_prepared(g, layout_cfg, stack_cfg);
    }

    let placed: Vec<Vec<Position<T>>> = (0..g.layers().len())
        .into_par_iter()
        .map(|o| {
            let sub = Subgraph::layer(&g, o)?;
            let mut pos = layout::run(&sub, layout_cfg)?;
            anchor_at_zero(&mut pos);
            Ok(pos)
        })
        .collect::<Result<_>>()?;

    for (o, positions) in placed.into_iter().enumerate() {
        let members = g.layers()[o].members.clone();
        for (m, p) in members.into_iter().zip(positions) {
            g.node_at_mut(m).pos = p;
        }
    }
    apply_offsets(&mut g, stack_cfg.layer_distance)?;
    finish(&mut g, layout_cfg, stack_cfg);
    Ok(g)
}

/// Exploded view: one layout of the whole network (every edge takes part),
/// then each layer is translated rigidly by its offset.
pub fn split_by_level<T: Scalar>(
    graph: &MultilayerGraph<T>,
    layout_cfg: &LayoutConfig<T>,
    stack_cfg: &StackConfig<T>,
) -> Result<MultilayerGraph<T>> {
    let g = prepare(graph, layout_cfg, stack_cfg)?;
    split_prepared(g, layout_cfg, stack_cfg)
}

fn prepare<T: Scalar>(
    graph: &MultilayerGraph<T>,
    layout_cfg: &LayoutConfig<T>,
    stack_cfg: &StackConfig<T>,
) -> Result<MultilayerGraph<T>> {
    layout_cfg.validate()?;
    stack_cfg.validate()?;
    if graph.layers().is_empty() {
        return Err(Error::LayersUnassigned);
    }
    if let Some(l) = graph.layers().iter().find(|l| l.is_empty()) {
        return Err(Error::EmptyLayer(l.key.clone()));
    }
    Ok(if stack_cfg.sort_layers {
        graph.sort_layers_by_size()
    } else {
        graph.clone()
    })
}

fn split_prepared<T: Scalar>(
    mut g: MultilayerGraph<T>,
    layout_cfg: &LayoutConfig<T>,
    stack_cfg: &StackConfig<T>,
) -> Result<MultilayerGraph<T>> {
    let sub = Subgraph::whole(&g)?;
    let members = sub.members().to_vec();
    let positions = layout::run(&sub, layout_cfg)?;
    for (m, p) in members.into_iter().zip(positions) {
        g.node_at_mut(m).pos = p;
    }
    apply_offsets(&mut g, stack_cfg.layer_distance)?;
    finish(&mut g, layout_cfg, stack_cfg);
    Ok(g)
}

fn anchor_at_zero<T: Scalar>(pos: &mut [Position<T>]) {
    let min_y = pos.iter().map(|p| p.y).fold(T::infinity(), T::min);
    if min_y.is_finite() {
        for p in pos {
            p.y -= min_y;
        }
    }
}

/// The sequential offset chain; the first layer stays where it is.
fn apply_offsets<T: Scalar>(g: &mut MultilayerGraph<T>, distance: T) -> Result<()> {
    for o in 1..g.layers().len() {
        let far = g.farthest_node(o - 1)?;
        let fy = far.pos.y + far.size() + distance;
        let members = g.layers()[o].members.clone();
        for m in members {
            g.node_at_mut(m).pos.y += fy;
        }
    }
    Ok(())
}

fn finish<T: Scalar>(
    g: &mut MultilayerGraph<T>,
    layout_cfg: &LayoutConfig<T>,
    stack_cfg: &StackConfig<T>,
) {
    if stack_cfg.orientation == Orientation::Horizontal {
        let theta = T::of(HORIZONTAL_ROTATION_DEG.to_radians());
        let (sin, cos) = theta.sin_cos();
        for n in g.nodes_mut() {
            let Position { x, y, .. } = n.pos;
            n.pos.x = x * cos - y * sin;
            n.pos.y = y * cos + x * sin;
        }
    }
    if stack_cfg.three_d {
        project(g, layout_cfg.seed);
    }
}

/// Tilt y by the projection angle and give each node a tiny random depth.
/// Depths are drawn in layer-ordinal, then id, order.
fn project<T: Scalar>(g: &mut MultilayerGraph<T>, seed: u64) {
    let theta = T::of(PROJECTION_TILT_DEG.to_radians());
    let (sin, cos) = theta.sin_cos();
    let cap = T::of(DEPTH_JITTER);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order: Vec<usize> = g
        .layers()
        .iter()
        .flat_map(|l| l.members.iter().copied())
        .collect();
    for m in order {
        let n = g.node_at_mut(m);
        n.pos.y = n.pos.y * cos - n.pos.z * sin;
        let mut z = T::of(rng.gen::<f64>() * DEPTH_JITTER);
        if z >= cap {
            z = cap * (T::one() - T::epsilon());
        }
        n.pos.z = z;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, LayerSource, Node, NodeId};
    use crate::layout::Algorithm;

    /// `shape`: per layer, `(id, size)` members; edges are a path per layer.
    fn layered(shape: &[&[(&str, f64)]]) -> MultilayerGraph<f64> {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for (o, members) in shape.iter().enumerate() {
            for (i, (id, size)) in members.iter().enumerate() {
                let mut n = Node::with_label(NodeId::new(*id).unwrap(), "", *size, 8.0);
                n.attributes.insert("layer".into(), o.to_string());
                nodes.push(n);
                if i > 0 {
                    edges.push(Edge::new(
                        NodeId::new(members[i - 1].0).unwrap(),
                        NodeId::new(*id).unwrap(),
                        1.0,
                        None,
                    ));
                }
            }
        }
        MultilayerGraph::new(nodes, edges)
            .unwrap()
            .assign_layers(LayerSource::NodeAttribute("layer".into()))
            .unwrap()
    }

    fn cfgs(algo: Algorithm, distance: f64) -> (LayoutConfig<f64>, StackConfig<f64>) {
        (
            LayoutConfig::with_algorithm(algo),
            StackConfig {
                layer_distance: distance,
                ..Default::default()
            },
        )
    }

    #[test]
    fn offset_uses_farthest_node_of_previous_layer() {
        let g = layered(&[&[("a", 10.0)], &[("b", 10.0)]]);
        let (lc, mut sc) = cfgs(Algorithm::Grid, 0.0);
        let out = stack(&g, &lc, &sc).unwrap();
        assert_eq!(out.node("a").unwrap().pos.y, 0.0);
        assert_eq!(out.node("b").unwrap().pos.y, 10.0);

        sc.layer_distance = 200.0;
        let out = stack(&g, &lc, &sc).unwrap();
        assert_eq!(out.node("b").unwrap().pos.y, 210.0);
    }

    #[test]
    fn offset_formula_with_raised_farthest_node() {
        // grid of 4 in layer 0: rows at 0 and pitch 24; farthest y = 24, size 10
        let g = layered(&[
            &[("a", 10.0), ("b", 10.0), ("c", 10.0), ("d", 10.0)],
            &[("e", 10.0)],
        ]);
        let (lc, sc) = cfgs(Algorithm::Grid, 200.0);
        let out = stack(&g, &lc, &sc).unwrap();
        assert_eq!(out.node("c").unwrap().pos.y, 24.0);
        assert_eq!(out.node("e").unwrap().pos.y, 24.0 + 10.0 + 200.0);
    }

    #[test]
    fn horizontal_is_quarter_turn_of_vertical() {
        let g = layered(&[
            &[("a", 5.0), ("b", 7.0), ("c", 9.0)],
            &[("d", 6.0), ("e", 6.0)],
        ]);
        for algo in Algorithm::ALL {
            let (lc, sc) = cfgs(algo, 50.0);
            let v = stack(&g, &lc, &sc).unwrap();
            let h = stack(
                &g,
                &lc,
                &StackConfig {
                    orientation: Orientation::Horizontal,
                    ..sc
                },
            )
            .unwrap();
            for (pv, ph) in v.nodes().iter().zip(h.nodes()) {
                assert!((ph.pos.x - pv.pos.y).abs() < 1e-6);
                assert!((ph.pos.y + pv.pos.x).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn rotation_example_point() {
        let g = layered(&[&[("a", 1.0)]]);
        let mut g = g.clone();
        g.node_at_mut(0).pos = Position::planar(3.0, 7.0);
        let sc = StackConfig {
            orientation: Orientation::Horizontal,
            ..Default::default()
        };
        finish(&mut g, &LayoutConfig::default(), &sc);
        let p = g.node_at(0).pos;
        assert!((p.x - 7.0).abs() < 1e-9 && (p.y + 3.0).abs() < 1e-9);
    }

    #[test]
    fn projection_scales_y_and_jitters_z() {
        let mut g = layered(&[&[("a", 1.0), ("b", 1.0)]]);
        g.node_at_mut(0).pos = Position::planar(2.0, 10.0);
        let sc = StackConfig {
            three_d: true,
            ..Default::default()
        };
        finish(&mut g, &LayoutConfig::default(), &sc);
        let p = g.node_at(0).pos;
        assert!((p.y - 4.226_182_617).abs() < 1e-6);
        assert_eq!(p.x, 2.0);
        assert!(g.nodes().iter().all(|n| (0.0..0.01).contains(&n.pos.z)));
    }

    #[test]
    fn depth_stays_below_cap_in_f32() {
        let mut g: MultilayerGraph<f32> = MultilayerGraph::new(
            (0..500)
                .map(|i| {
                    let mut n = Node::new(NodeId::new(format!("n{i}")).unwrap());
                    n.attributes.insert("t".into(), "x".into());
                    n
                })
                .collect(),
            vec![],
        )
        .unwrap()
        .assign_layers(LayerSource::NodeAttribute("t".into()))
        .unwrap();
        project(&mut g, 3);
        assert!(g.nodes().iter().all(|n| n.pos.z >= 0.0 && n.pos.z < 0.01));
    }

    #[test]
    fn split_by_level_is_rigid_per_layer() {
        let g = layered(&[
            &[("a", 5.0), ("b", 7.0), ("c", 9.0)],
            &[("d", 6.0), ("e", 6.0)],
        ]);
        let (lc, sc) = cfgs(Algorithm::FruchtermanReingold, 80.0);
        let whole = {
            let sub = Subgraph::whole(&g).unwrap();
            let members = sub.members().to_vec();
            let pos = layout::run(&sub, &lc).unwrap();
            let mut w = g.clone();
            for (m, p) in members.into_iter().zip(pos) {
                w.node_at_mut(m).pos = p;
            }
            w
        };
        let out = split_by_level(&g, &lc, &sc).unwrap();
        for layer in out.layers() {
            for &u in &layer.members {
                for &v in &layer.members {
                    let before = (
                        whole.node_at(u).pos.x - whole.node_at(v).pos.x,
                        whole.node_at(u).pos.y - whole.node_at(v).pos.y,
                    );
                    let after = (
                        out.node_at(u).pos.x - out.node_at(v).pos.x,
                        out.node_at(u).pos.y - out.node_at(v).pos.y,
                    );
                    assert!((before.0 - after.0).abs() < 1e-9 && (before.1 - after.1).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn split_single_layer_equals_plain_layout() {
        let g = layered(&[&[("a", 5.0), ("b", 7.0), ("c", 9.0)]]);
        let (lc, sc) = cfgs(Algorithm::ForceAtlas, 80.0);
        let out = split_by_level(&g, &lc, &sc).unwrap();
        let sub = Subgraph::whole(&g).unwrap();
        let pos = layout::run(&sub, &lc).unwrap();
        for (&m, p) in sub.members().iter().zip(pos) {
            assert_eq!(out.node_at(m).pos, p);
        }
    }

    #[test]
    fn split_grid_path_layers_are_separated() {
        let g = layered(&[
            &[("a1", 8.0), ("a2", 8.0), ("a3", 8.0)],
            &[("b1", 12.0), ("b2", 12.0)],
            &[("c1", 5.0), ("c2", 5.0), ("c3", 5.0), ("c4", 5.0)],
        ]);
        let (lc, sc) = cfgs(Algorithm::Grid, 50.0);
        let out = split_by_level(&g, &lc, &sc).unwrap();
        let max_size = out.nodes().iter().map(|n| n.size()).fold(0.0, f64::max);
        for w in out.layers().windows(2) {
            let max_lo = w[0]
                .members
                .iter()
                .map(|&m| out.node_at(m).pos.y)
                .fold(f64::MIN, f64::max);
            let min_hi = w[1]
                .members
                .iter()
                .map(|&m| out.node_at(m).pos.y)
                .fold(f64::MAX, f64::min);
            assert!(min_hi - max_lo >= 50.0 - max_size);
        }
    }

    #[test]
    fn sorting_happens_before_stacking() {
        let g = layered(&[&[("a", 5.0), ("b", 5.0), ("c", 5.0)], &[("d", 5.0)]]);
        let (lc, sc) = cfgs(Algorithm::Linear, 10.0);
        let out = stack(
            &g,
            &lc,
            &StackConfig {
                sort_layers: true,
                ..sc
            },
        )
        .unwrap();
        assert_eq!(out.layers()[0].key, "1");
        assert_eq!(out.node("d").unwrap().pos.y, 0.0);
        assert_eq!(out.node("a").unwrap().pos.y, 15.0);
    }

    #[test]
    fn unassigned_and_invalid_config_rejected() {
        let g = MultilayerGraph::<f64>::new(vec![Node::new(NodeId::new("a").unwrap())], vec![])
            .unwrap();
        let (lc, sc) = cfgs(Algorithm::Grid, 10.0);
        assert!(matches!(stack(&g, &lc, &sc), Err(Error::LayersUnassigned)));
        let g = layered(&[&[("a", 5.0)]]);
        let bad = StackConfig {
            layer_distance: -1.0,
            ..sc
        };
        assert!(matches!(stack(&g, &lc, &bad), Err(Error::InvalidConfig(_))));
    }
}
