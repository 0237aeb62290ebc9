//! Node attribute tables in CSV form.
//!
//! The header must start with `id`. Optional `label` and `size` columns set
//! the node's label and radius; every other column becomes a string
//! attribute.

use std::collections::BTreeMap;

use crate::error::{ParseError, Result};
use crate::graph::{MultilayerGraph, Node, NodeId, DEFAULT_NODE_SIZE};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct NodeRecord {
    pub id: String,
    pub label: Option<String>,
    pub size: Option<f64>,
    pub attributes: BTreeMap<String, String>,
}

/// Rows keyed by id, in file order.
pub type NodeTable = Vec<NodeRecord>;

pub fn parse_node_csv(bytes: &[u8]) -> Result<NodeTable, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| csv_error(&e, 1))?
        .iter()
        .map(str::to_owned)
        .collect::<Vec<_>>();
    if headers.first().map(String::as_str) != Some("id") {
        return Err(ParseError::new(
            1,
            1,
            "header must begin with an \"id\" column",
        ));
    }
    let label_col = headers.iter().position(|h| h == "label");
    let size_col = headers.iter().position(|h| h == "size");

    let mut table = NodeTable::new();
    let mut seen = std::collections::HashSet::new();
    for row in reader.records() {
        let row = row.map_err(|e| csv_error(&e, 0))?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let id = row.get(0).unwrap_or_default();
        if id.is_empty() {
            return Err(ParseError::new(line, 1, "empty node id"));
        }
        if !seen.insert(id.to_owned()) {
            return Err(ParseError::new(
                line,
                1,
                format!("duplicate node id {id:?}"),
            ));
        }
        let size = match size_col.and_then(|c| row.get(c)) {
            None | Some("") => None,
            Some(s) => match s.parse::<f64>() {
                Ok(v) if v.is_finite() && v > 0.0 => Some(v),
                _ => {
                    return Err(ParseError::new(
                        line,
                        size_col.unwrap() + 1,
                        format!("size {s:?} is not a positive number"),
                    ))
                }
            },
        };
        let mut attributes = BTreeMap::new();
        for (c, h) in headers.iter().enumerate().skip(1) {
            if Some(c) == label_col || Some(c) == size_col {
                continue;
            }
            if let Some(v) = row.get(c) {
                attributes.insert(h.clone(), v.to_owned());
            }
        }
        table.push(NodeRecord {
            id: id.to_owned(),
            label: label_col.and_then(|c| row.get(c)).map(str::to_owned),
            size,
            attributes,
        });
    }
    Ok(table)
}

fn csv_error(e: &csv::Error, fallback_line: usize) -> ParseError {
    let line = e.position().map_or(fallback_line, |p| p.line() as usize);
    ParseError::new(line, 1, e.to_string())
}

/// Overlay `table` on the nodes of an unlayered graph. Unknown ids become
/// new, edgeless nodes with the default size and their id as label.
pub fn merge_node_table<T: Scalar>(
    graph: MultilayerGraph<T>,
    table: &NodeTable,
    glyph_width: T,
) -> Result<MultilayerGraph<T>> {
    let order = graph.layer_order().to_vec();
    let (mut nodes, edges) = graph.into_parts();
    let mut index: std::collections::HashMap<String, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.id.as_str().to_owned(), i))
        .collect();
    for rec in table {
        let i = match index.get(&rec.id) {
            Some(&i) => i,
            None => {
                let id = NodeId::new(rec.id.as_str())?;
                nodes.push(Node::with_label(
                    id,
                    rec.id.as_str(),
                    T::of(DEFAULT_NODE_SIZE),
                    glyph_width,
                ));
                index.insert(rec.id.clone(), nodes.len() - 1);
                nodes.len() - 1
            }
        };
        let node = &mut nodes[i];
        if let Some(label) = &rec.label {
            node.set_label(label.as_str(), glyph_width);
        }
        if let Some(size) = rec.size {
            node.set_size(T::of(size));
        }
        for (k, v) in &rec.attributes {
            node.attributes.insert(k.clone(), v.clone());
        }
    }
    Ok(MultilayerGraph::new(nodes, edges)?.with_layer_order(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_and_attribute_columns() {
        let t = parse_node_csv(b"id,label,type\nn1,Asthma,disorder\n").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].label.as_deref(), Some("Asthma"));
        assert_eq!(t[0].attributes["type"], "disorder");
        assert!(!t[0].attributes.contains_key("label"));
    }

    #[test]
    fn header_only_is_empty() {
        assert!(parse_node_csv(b"id\n").unwrap().is_empty());
    }

    #[test]
    fn duplicate_or_missing_id() {
        let err = parse_node_csv(b"id,x\nn1,a\nn1,b\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(parse_node_csv(b"name,x\nn1,a\n").is_err());
        assert!(parse_node_csv(b"").is_err());
    }

    #[test]
    fn quoted_fields_and_sizes() {
        let t = parse_node_csv(b"id,label,size\n\"a,b\",\"Hello, world\",12.5\nc,,\n").unwrap();
        assert_eq!(t[0].id, "a,b");
        assert_eq!(t[0].size, Some(12.5));
        assert_eq!(t[1].size, None);
        assert!(parse_node_csv(b"id,size\na,-3\n").is_err());
        assert!(parse_node_csv(b"id,size\na,big\n").is_err());
    }

    #[test]
    fn merge_overrides_and_adds() {
        let g = MultilayerGraph::<f64>::new(vec![Node::new(NodeId::new("n1").unwrap())], vec![])
            .unwrap();
        let t = parse_node_csv(b"id,label,size,type\nn1,Asthma,20,disorder\nn2,,,gene\n").unwrap();
        let g = merge_node_table(g, &t, 8.0).unwrap();
        let n1 = g.node("n1").unwrap();
        assert_eq!(
            (n1.label(), n1.size(), n1.label_width()),
            ("Asthma", 20.0, 48.0)
        );
        let n2 = g.node("n2").unwrap();
        assert_eq!(n2.label(), "");
        assert_eq!(n2.size(), DEFAULT_NODE_SIZE);
        assert_eq!(n2.attributes["type"], "gene");
    }

    #[test]
    fn empty_table_leaves_graph_unchanged() {
        let g = MultilayerGraph::<f64>::new(vec![Node::new(NodeId::new("n1").unwrap())], vec![])
            .unwrap();
        let merged = merge_node_table(g.clone(), &parse_node_csv(b"id\n").unwrap(), 8.0).unwrap();
        assert_eq!(merged.nodes(), g.nodes());
    }
}
