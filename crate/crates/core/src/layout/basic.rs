use rand::Rng;

use super::Subgraph;
use crate::graph::Position;
use crate::scalar::Scalar;

/// Gap kept between neighbouring node footprints, px.
pub const SPACING: f64 = 4.0;

/// Members on a circle around the frame origin, counterclockwise from angle 0.
///
/// The radius is the largest of half the frame extent, the circumference
/// needed to lay every footprint end to end, and the radius at which the
/// chord between neighbours fits the widest footprint.
pub fn circle<T: Scalar>(sub: &Subgraph<'_, T>) -> Vec<Position<T>> {
    let frame = sub.frame();
    let n = sub.len();
    let pad = T::of(SPACING);
    let two_pi = T::of(std::f64::consts::TAU);

    let circumference: T = (0..n).map(|i| sub.node(i).footprint() + pad).sum();
    let mut radius = (frame.extent / T::of(2.0)).max(circumference / two_pi);
    if n >= 2 {
        let pitch = widest_footprint(sub) + pad;
        let half_step = T::of(std::f64::consts::PI) / T::from_usize(n).unwrap();
        radius = radius.max(pitch / (T::of(2.0) * half_step.sin()));
    }
    let n_t = T::from_usize(n).unwrap();
    (0..n)
        .map(|k| {
            let angle = two_pi * T::from_usize(k).unwrap() / n_t;
            Position::planar(
                frame.origin_x + radius * angle.cos(),
                frame.origin_y + radius * angle.sin(),
            )
        })
        .collect()
}

/// Row-major square grid, `⌈√n⌉` columns, starting at the frame origin.
pub fn grid<T: Scalar>(sub: &Subgraph<'_, T>) -> Vec<Position<T>> {
    let frame = sub.frame();
    let n = sub.len();
    let cols = ceil_sqrt(n);
    let pitch = widest_footprint(sub) + T::of(SPACING);
    (0..n)
        .map(|k| {
            let col = T::from_usize(k % cols).unwrap();
            let row = T::from_usize(k / cols).unwrap();
            Position::planar(frame.origin_x + col * pitch, frame.origin_y + row * pitch)
        })
        .collect()
}

/// Members along +x; each gap clears the previous node's body and label.
pub fn linear<T: Scalar>(sub: &Subgraph<'_, T>) -> Vec<Position<T>> {
    let frame = sub.frame();
    let pad = T::of(SPACING);
    let mut x = frame.origin_x;
    let mut out = Vec::with_capacity(sub.len());
    for k in 0..sub.len() {
        if k > 0 {
            let prev = sub.node(k - 1);
            x += prev.size() + prev.label_width() + sub.node(k).size() + pad;
        }
        out.push(Position::planar(x, frame.origin_y));
    }
    out
}

/// Uniform in the frame square. Sizes are ignored, so nodes may overlap.
pub fn random<T: Scalar>(sub: &Subgraph<'_, T>, seed: u64) -> Vec<Position<T>> {
    let frame = sub.frame();
    let extent = frame.extent.to_f64_lossy();
    let mut rng = sub.rng(seed);
    (0..sub.len())
        .map(|_| {
            let dx = extent * (rng.gen::<f64>() - 0.5);
            let dy = extent * (rng.gen::<f64>() - 0.5);
            Position::planar(frame.origin_x + T::of(dx), frame.origin_y + T::of(dy))
        })
        .collect()
}

fn widest_footprint<T: Scalar>(sub: &Subgraph<'_, T>) -> T {
    (0..sub.len())
        .map(|i| sub.node(i).footprint())
        .fold(T::zero(), T::max)
}

fn ceil_sqrt(n: usize) -> usize {
    let mut c = (n as f64).sqrt() as usize;
    while c * c < n {
        c += 1;
    }
    while c > 1 && (c - 1) * (c - 1) >= n {
        c -= 1;
    }
    c.max(1)
}
