//! Static SVG rendering.
//!
//! Graph +y points up on screen, so the layer stacked last is drawn on top.
//! Intra-layer edges take their layer's palette colour; inter-layer edges
//! are gray at 40% opacity. Edges are drawn before nodes.

use std::fmt::Write as _;

use super::{edge_order, ensure_finite, node_order, trimmed, xml_escape};
use crate::error::Result;
use crate::graph::{EdgeKind, MultilayerGraph};
use crate::scalar::Scalar;

/// Layer colours, indexed by ordinal modulo 12.
pub const PALETTE: [(&str, (u8, u8, u8)); 12] = [
    ("crimson", (220, 20, 60)),
    ("royalblue", (65, 105, 225)),
    ("forestgreen", (34, 139, 34)),
    ("darkorange", (255, 140, 0)),
    ("darkviolet", (148, 0, 211)),
    ("teal", (0, 128, 128)),
    ("goldenrod", (218, 165, 32)),
    ("deeppink", (255, 20, 147)),
    ("saddlebrown", (139, 69, 19)),
    ("dodgerblue", (30, 144, 255)),
    ("olivedrab", (107, 142, 35)),
    ("indigo", (75, 0, 130)),
];

pub const INTER_LAYER_STROKE: &str = "gray";
pub const INTER_LAYER_OPACITY: &str = "0.4";

pub fn layer_color(ordinal: usize) -> &'static str {
    PALETTE[ordinal % PALETTE.len()].0
}

pub(crate) fn layer_color_rgb(ordinal: usize) -> (u8, u8, u8) {
    PALETTE[ordinal % PALETTE.len()].1
}

#[derive(Debug, Clone, PartialEq)]
pub struct StyleConfig {
    pub show_labels: bool,
    pub font_size: f64,
    pub edge_width: f64,
}

impl Default for StyleConfig {
    fn default() -> Self {
        Self {
            show_labels: false,
            font_size: 12.0,
            edge_width: 1.0,
        }
    }
}

pub fn render_svg<T: Scalar>(graph: &MultilayerGraph<T>, style: &StyleConfig) -> Result<Vec<u8>> {
    ensure_finite(graph)?;
    let num = |v: f64| trimmed(v, false);
    // screen coordinates: (x, -y)
    let at = |i: usize| {
        let p = graph.node_at(i).pos;
        (p.x.to_f64_lossy(), -p.y.to_f64_lossy())
    };

    let view_box = if graph.node_count() == 0 {
        "0 0 1 1".to_owned()
    } else {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for i in 0..graph.node_count() {
            let (x, y) = at(i);
            let r = graph.node_at(i).size().to_f64_lossy();
            x0 = x0.min(x - r);
            y0 = y0.min(y - r);
            x1 = x1.max(x + r);
            y1 = y1.max(y + r);
        }
        let pad = 0.05 * (x1 - x0).max(y1 - y0);
        format!(
            "{} {} {} {}",
            num(x0 - pad),
            num(y0 - pad),
            num(x1 - x0 + 2.0 * pad),
            num(y1 - y0 + 2.0 * pad)
        )
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{view_box}\">"
    );

    out.push_str("  <g class=\"edges\">\n");
    let width = num(style.edge_width);
    for e in edge_order(graph) {
        let (s, t) = graph.edge_ends(e);
        let ((x1, y1), (x2, y2)) = (at(s), at(t));
        let coords = format!(
            "x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"",
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
        match graph.edges()[e].kind {
            EdgeKind::IntraLayer => {
                let color = layer_color(graph.node_at(s).layer().unwrap_or(0));
                let _ = writeln!(
                    out,
                    "    <line class=\"edge intra\" {coords} stroke=\"{color}\" stroke-width=\"{width}\"/>"
                );
            }
            EdgeKind::InterLayer => {
                let _ = writeln!(
                    out,
                    "    <line class=\"edge inter\" {coords} stroke=\"{INTER_LAYER_STROKE}\" stroke-opacity=\"{INTER_LAYER_OPACITY}\" stroke-width=\"{width}\"/>"
                );
            }
        }
    }
    out.push_str("  </g>\n");

    let order = node_order(graph);
    out.push_str("  <g class=\"nodes\">\n");
    for &m in &order {
        let n = graph.node_at(m);
        let (x, y) = at(m);
        let fill = n
            .attributes
            .get("color")
            .map(|c| xml_escape(c))
            .unwrap_or_else(|| layer_color(n.layer().unwrap_or(0)).to_owned());
        let _ = writeln!(
            out,
            "    <circle class=\"node\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"><title>{}</title></circle>",
            num(x),
            num(y),
            num(n.size().to_f64_lossy()),
            xml_escape(n.id.as_str())
        );
    }
    out.push_str("  </g>\n");

    if style.show_labels {
        let _ = writeln!(
            out,
            "  <g class=\"labels\" font-family=\"monospace\" font-size=\"{}\">",
            num(style.font_size)
        );
        for &m in &order {
            let n = graph.node_at(m);
            if n.label().is_empty() {
                continue;
            }
            let (x, y) = at(m);
            let _ = writeln!(
                out,
                "    <text x=\"{}\" y=\"{}\">{}</text>",
                num(x + n.size().to_f64_lossy() + 2.0),
                num(y),
                xml_escape(n.label())
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}
