//! Fruchterman-Reingold and ForceAtlas.
//!
//! Both treat nodes as solid bodies: the distance fed into the force laws is
//! the gap between node discs with half of each label added to the body,
//! floored at [`MIN_DISTANCE`]. Both start from the seeded random layout and
//! pull every node toward the frame origin with a constant-magnitude gravity
//! of `gravity · 0.01 · k`.

use super::{basic, LayoutConfig, Subgraph};
use crate::graph::Position;
use crate::scalar::Scalar;

/// Floor for the effective distance between two bodies, px.
pub const MIN_DISTANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Vec2<T> {
    x: T,
    y: T,
}

impl<T: Scalar> Vec2<T> {
    fn zero() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
        }
    }

    fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    fn scale(self, s: T) -> Self {
        Self {
            x: self.x * s,
            y: self.y * s,
        }
    }

    fn add_assign(&mut self, o: Self) {
        self.x += o.x;
        self.y += o.y;
    }

    fn sub_assign(&mut self, o: Self) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

/// Working state shared by both force models.
struct Bodies<T> {
    pos: Vec<Vec2<T>>,
    radius: Vec<T>,
    half_label: Vec<T>,
    origin: Vec2<T>,
}

impl<T: Scalar> Bodies<T> {
    fn seeded(sub: &Subgraph<'_, T>, seed: u64) -> Self {
        let frame = sub.frame();
        let half = T::of(0.5);
        Self {
            pos: basic::random(sub, seed)
                .into_iter()
                .map(|p| Vec2 { x: p.x, y: p.y })
                .collect(),
            radius: (0..sub.len()).map(|i| sub.node(i).size()).collect(),
            half_label: (0..sub.len())
                .map(|i| sub.node(i).label_width() * half)
                .collect(),
            origin: Vec2 {
                x: frame.origin_x,
                y: frame.origin_y,
            },
        }
    }

    /// Unit vector from `j` to `i` and the effective (surface) distance.
    fn separation(&self, i: usize, j: usize) -> (Vec2<T>, T) {
        let delta = Vec2 {
            x: self.pos[i].x - self.pos[j].x,
            y: self.pos[i].y - self.pos[j].y,
        };
        let centre = delta.norm();
        let dir = if centre > T::zero() {
            delta.scale(centre.recip())
        } else {
            // coincident centres: any fixed direction will do
            let a = T::of(2.399_963_229_728_653) * T::from_usize(i + 3 * j + 1).unwrap();
            Vec2 {
                x: a.cos(),
                y: a.sin(),
            }
        };
        let surface =
            centre - self.radius[i] - self.radius[j] - self.half_label[i] - self.half_label[j];
        (dir, surface.max(T::of(MIN_DISTANCE)))
    }

    fn add_gravity(&self, disp: &mut [Vec2<T>], strength: T) {
        if strength <= T::zero() {
            return;
        }
        for (d, p) in disp.iter_mut().zip(&self.pos) {
            let to_origin = Vec2 {
                x: self.origin.x - p.x,
                y: self.origin.y - p.y,
            };
            let len = to_origin.norm();
            if len > T::zero() {
                d.add_assign(to_origin.scale(strength / len));
            }
        }
    }

    fn into_positions(self) -> Vec<Position<T>> {
        self.pos
            .into_iter()
            .map(|p| Position::planar(p.x, p.y))
            .collect()
    }
}

fn force_area<T: Scalar>(sub: &Subgraph<'_, T>, cfg: &LayoutConfig<T>) -> T {
    let extent = sub.frame().extent;
    cfg.area.max(extent * extent)
}

/// Optimal pair distance `k = √(A / n)`.
fn ideal_distance<T: Scalar>(area: T, n: usize) -> T {
    (area / T::from_usize(n).unwrap()).sqrt()
}

/// Displacement cap for iteration `step` (0-based): falls linearly from
/// `speed · 0.1 · √area` toward zero.
pub fn fr_temperature<T: Scalar>(area: T, cfg: &LayoutConfig<T>, step: usize) -> T {
    let start = T::of(0.1) * area.sqrt() * cfg.speed;
    let iters = T::from_usize(cfg.iterations.max(1)).unwrap();
    let left = T::from_usize(cfg.iterations.saturating_sub(step)).unwrap();
    start * left / iters
}

/// Spring-electrical layout: `k²/d` repulsion between all pairs, `d²/k`
/// attraction along edges, displacement capped by a cooling temperature.
pub fn fruchterman_reingold<T: Scalar>(
    sub: &Subgraph<'_, T>,
    cfg: &LayoutConfig<T>,
) -> Vec<Position<T>> {
    let n = sub.len();
    let area = force_area(sub, cfg);
    let k = ideal_distance(area, n);
    let k2 = k * k;
    let gravity = cfg.gravity * T::of(0.01) * k;
    let mut bodies = Bodies::seeded(sub, cfg.seed);
    let mut disp = vec![Vec2::zero(); n];

    for step in 0..cfg.iterations {
        disp.iter_mut().for_each(|d| *d = Vec2::zero());
        for i in 0..n {
            for j in i + 1..n {
                let (dir, d) = bodies.separation(i, j);
                let f = dir.scale(k2 / d);
                disp[i].add_assign(f);
                disp[j].sub_assign(f);
            }
        }
        for &(a, b) in sub.edges() {
            if a == b {
                continue;
            }
            let (dir, d) = bodies.separation(a, b);
            let f = dir.scale(d * d / k);
            disp[a].sub_assign(f);
            disp[b].add_assign(f);
        }
        bodies.add_gravity(&mut disp, gravity);

        let t = fr_temperature(area, cfg, step);
        for (p, d) in bodies.pos.iter_mut().zip(&disp) {
            let len = d.norm();
            if len > T::zero() {
                p.add_assign(d.scale(len.min(t) / len));
            }
        }
    }
    bodies.into_positions()
}

/// Degree-weighted repulsion `k_r (deg_i + 1)(deg_j + 1) / d` with
/// `k_r = area / 100`, linear attraction `d` along edges. Each step moves a
/// node by `0.1 · speed` times its net force, capped at `10 · speed` px.
pub fn force_atlas<T: Scalar>(sub: &Subgraph<'_, T>, cfg: &LayoutConfig<T>) -> Vec<Position<T>> {
    let n = sub.len();
    let area = force_area(sub, cfg);
    let k = ideal_distance(area, n);
    let repulsion = cfg.area / T::of(100.0);
    let gravity = cfg.gravity * T::of(0.01) * k;
    let step_scale = cfg.speed * T::of(0.1);
    let max_step = cfg.speed * T::of(10.0);

    let mut mass = vec![T::one(); n];
    for &(a, b) in sub.edges() {
        if a != b {
            mass[a] += T::one();
            mass[b] += T::one();
        }
    }

    let mut bodies = Bodies::seeded(sub, cfg.seed);
    let mut disp = vec![Vec2::zero(); n];
    for _ in 0..cfg.iterations {
        disp.iter_mut().for_each(|d| *d = Vec2::zero());
        for i in 0..n {
            for j in i + 1..n {
                let (dir, d) = bodies.separation(i, j);
                let f = dir.scale(repulsion * mass[i] * mass[j] / d);
                disp[i].add_assign(f);
                disp[j].sub_assign(f);
            }
        }
        for &(a, b) in sub.edges() {
            if a == b {
                continue;
            }
            let (dir, d) = bodies.separation(a, b);
            let f = dir.scale(d);
            disp[a].sub_assign(f);
            disp[b].add_assign(f);
        }
        bodies.add_gravity(&mut disp, gravity);

        for (p, d) in bodies.pos.iter_mut().zip(&disp) {
            let mv = d.scale(step_scale);
            let len = mv.norm();
            if len > max_step {
                p.add_assign(mv.scale(max_step / len));
            } else {
                p.add_assign(mv);
            }
        }
    }
    bodies.into_positions()
}
