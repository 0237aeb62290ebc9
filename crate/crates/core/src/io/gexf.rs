//! GEXF 1.2 output with the `viz` extension.

use std::fmt::Write as _;

use super::svg::layer_color_rgb;
use super::{edge_layer, edge_order, ensure_finite, layer_key_of, node_order, trimmed, xml_escape};
use crate::error::Result;
use crate::graph::MultilayerGraph;
use crate::scalar::Scalar;

pub fn write_gexf<T: Scalar>(graph: &MultilayerGraph<T>) -> Result<Vec<u8>> {
    ensure_finite(graph)?;
    let num = |v: T| trimmed(v.to_f64_lossy(), true);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<gexf xmlns=\"http://gexf.net/1.2\" xmlns:viz=\"http://gexf.net/1.2/viz\" version=\"1.2\">\n",
    );
    out.push_str("  <meta>\n    <creator>multilayer-layout</creator>\n  </meta>\n");
    out.push_str("  <graph mode=\"static\" defaultedgetype=\"undirected\">\n");
    out.push_str("    <attributes class=\"node\">\n");
    out.push_str("      <attribute id=\"layer\" title=\"layer\" type=\"string\"/>\n");
    out.push_str("    </attributes>\n");
    out.push_str("    <attributes class=\"edge\">\n");
    out.push_str("      <attribute id=\"layer\" title=\"layer\" type=\"string\"/>\n");
    out.push_str("      <attribute id=\"kind\" title=\"kind\" type=\"string\"/>\n");
    out.push_str("    </attributes>\n");

    out.push_str("    <nodes>\n");
    for m in node_order(graph) {
        let n = graph.node_at(m);
        let (r, g, b) = layer_color_rgb(n.layer().unwrap_or(0));
        let _ = write!(
            out,
            "      <node id=\"{}\" label=\"{}\">\n        <attvalues>\n          <attvalue for=\"layer\" value=\"{}\"/>\n        </attvalues>\n",
            xml_escape(n.id.as_str()),
            xml_escape(n.label()),
            xml_escape(layer_key_of(graph, m)),
        );
        let _ = write!(
            out,
            "        <viz:color r=\"{r}\" g=\"{g}\" b=\"{b}\"/>\n        <viz:size value=\"{}\"/>\n        <viz:position x=\"{}\" y=\"{}\" z=\"{}\"/>\n      </node>\n",
            num(n.size()),
            num(n.pos.x),
            num(n.pos.y),
            num(n.pos.z),
        );
    }
    out.push_str("    </nodes>\n");

    out.push_str("    <edges>\n");
    for (i, e) in edge_order(graph).into_iter().enumerate() {
        let edge = &graph.edges()[e];
        let _ = write!(
            out,
            "      <edge id=\"{i}\" source=\"{}\" target=\"{}\" weight=\"{}\">\n        <attvalues>\n",
            xml_escape(edge.source.as_str()),
            xml_escape(edge.target.as_str()),
            num(edge.weight),
        );
        if let Some(layer) = edge_layer(graph, e) {
            let _ = writeln!(
                out,
                "          <attvalue for=\"layer\" value=\"{}\"/>",
                xml_escape(layer)
            );
        }
        let _ = write!(
            out,
            "          <attvalue for=\"kind\" value=\"{}\"/>\n        </attvalues>\n      </edge>\n",
            edge.kind.as_str()
        );
    }
    out.push_str("    </edges>\n  </graph>\n</gexf>\n");
    Ok(out.into_bytes())
}
