//! Multiplex edge lists (`layerId src dst [weight]`) and layer tables
//! (`layerId layerLabel`).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{ParseError, Result};
use crate::graph::{Edge, LayerSource, MultilayerGraph, Node, NodeId};
use crate::scalar::Scalar;

/// Layer id → label.
pub type LayerTable = BTreeMap<u64, String>;

#[derive(Debug, Clone, PartialEq)]
pub struct MpxEdgeRecord {
    pub layer_id: u64,
    pub source: String,
    pub target: String,
    pub weight: f64,
}

/// Split `bytes` into `(1-based line number, trimmed text)`, skipping blank
/// lines and `#` comments.
fn content_lines(bytes: &[u8]) -> impl Iterator<Item = Result<(usize, &str), ParseError>> {
    bytes
        .split(|&b| b == b'\n')
        .enumerate()
        .filter_map(|(i, raw)| {
            let line_no = i + 1;
            let text = match std::str::from_utf8(raw) {
                Ok(t) => t,
                Err(e) => {
                    return Some(Err(ParseError::new(
                        line_no,
                        e.valid_up_to() + 1,
                        "invalid UTF-8",
                    )))
                }
            };
            let text = text.strip_suffix('\r').unwrap_or(text);
            let trimmed = text.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                None
            } else {
                Some(Ok((line_no, text)))
            }
        })
}

/// Whitespace-separated fields with their 1-based character columns.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, f)| (line[..byte].chars().count() + 1, f))
        .collect()
}

fn parse_layer_id(line: usize, col: usize, field: &str) -> Result<u64, ParseError> {
    match field.parse::<u64>() {
        Ok(0) => Err(ParseError::new(line, col, "layer id must be positive")),
        Ok(v) => Ok(v),
        Err(_) => Err(ParseError::new(
            line,
            col,
            format!("layer id {field:?} is not a positive integer"),
        )),
    }
}

/// Parse one content line of an edge list.
pub fn parse_edge_line(line_no: usize, text: &str) -> Result<MpxEdgeRecord, ParseError> {
    let f = fields(text);
    if f.len() < 3 {
        let col = text.chars().count() + 1;
        return Err(ParseError::new(
            line_no,
            col,
            format!("expected 3 or 4 fields, found {}", f.len()),
        ));
    }
    if f.len() > 4 {
        return Err(ParseError::new(
            line_no,
            f[4].0,
            format!("expected 3 or 4 fields, found {}", f.len()),
        ));
    }
    let layer_id = parse_layer_id(line_no, f[0].0, f[0].1)?;
    let weight = match f.get(3) {
        None => 1.0,
        Some(&(col, w)) => match w.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => v,
            Ok(_) => {
                return Err(ParseError::new(
                    line_no,
                    col,
                    "weight must be positive and finite",
                ))
            }
            Err(_) => {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("weight {w:?} is not a number"),
                ))
            }
        },
    };
    Ok(MpxEdgeRecord {
        layer_id,
        source: f[1].1.to_owned(),
        target: f[2].1.to_owned(),
        weight,
    })
}

/// Every content line as a record, stopping at the first malformed line.
pub fn read_multiplex_edge_list(bytes: &[u8]) -> Result<Vec<MpxEdgeRecord>, ParseError> {
    content_lines(bytes)
        .map(|line| {
            let (no, text) = line?;
            parse_edge_line(no, text)
        })
        .collect()
}

/// Per-line outcome for every line, comments and blanks reported as `None`.
pub fn scan_multiplex_edge_list(bytes: &[u8]) -> Vec<Option<Result<MpxEdgeRecord, ParseError>>> {
    let mut out: Vec<Option<Result<MpxEdgeRecord, ParseError>>> =
        vec![None; bytes.split(|&b| b == b'\n').count()];
    for line in content_lines(bytes) {
        match line {
            Ok((no, text)) => out[no - 1] = Some(parse_edge_line(no, text)),
            Err(e) => {
                let idx = e.line - 1;
                out[idx] = Some(Err(e));
            }
        }
    }
    out
}

/// Build an unlayered graph from edge records. Each edge carries its
/// layer label (the table entry, or the decimal id); layer ordering follows
/// ascending layer id.
pub fn graph_from_records<T: Scalar>(
    records: &[MpxEdgeRecord],
    table: Option<&LayerTable>,
    glyph_width: T,
) -> Result<MultilayerGraph<T>> {
    let label_of = |id: u64| -> String {
        table
            .and_then(|t| t.get(&id).cloned())
            .unwrap_or_else(|| id.to_string())
    };
    let mut seen: HashMap<&str, ()> = HashMap::new();
    let mut nodes = Vec::new();
    let mut edges = Vec::with_capacity(records.len());
    let mut layer_ids = BTreeSet::new();
    for r in records {
        for id in [r.source.as_str(), r.target.as_str()] {
            if seen.insert(id, ()).is_none() {
                let nid = NodeId::new(id)?;
                nodes.push(Node::with_label(
                    nid,
                    id,
                    T::of(crate::graph::DEFAULT_NODE_SIZE),
                    glyph_width,
                ));
            }
        }
        layer_ids.insert(r.layer_id);
        edges.push(Edge::new(
            NodeId::new(r.source.as_str())?,
            NodeId::new(r.target.as_str())?,
            T::of(r.weight),
            Some(label_of(r.layer_id)),
        ));
    }
    let mut order: Vec<String> = Vec::new();
    for id in layer_ids {
        let l = label_of(id);
        if !order.contains(&l) {
            order.push(l);
        }
    }
    Ok(MultilayerGraph::new(nodes, edges)?.with_layer_order(order))
}

/// Parse an edge list into a layered graph with one replica per node and
/// layer (see [`MultilayerGraph::assign_layers`]).
pub fn parse_multiplex_edge_list<T: Scalar>(
    bytes: &[u8],
    table: Option<&LayerTable>,
) -> Result<MultilayerGraph<T>> {
    let records = read_multiplex_edge_list(bytes)?;
    graph_from_records(&records, table, T::of(crate::graph::DEFAULT_GLYPH_WIDTH))?
        .assign_layers(LayerSource::EdgeLayerLabel)
}

/// `layerId label…` lines; a leading `layerID layerLabel` header is skipped.
/// Labels run to the end of the line.
pub fn parse_layer_table(bytes: &[u8]) -> Result<LayerTable, ParseError> {
    let mut table = LayerTable::new();
    for (i, line) in content_lines(bytes).enumerate() {
        let (no, text) = line?;
        let f = fields(text);
        if i == 0 && f[0].1.eq_ignore_ascii_case("layerid") {
            continue;
        }
        let id = parse_layer_id(no, f[0].0, f[0].1)?;
        if f.len() < 2 {
            return Err(ParseError::new(
                no,
                text.chars().count() + 1,
                "missing layer label",
            ));
        }
        let label_start: usize = text.char_indices().nth(f[1].0 - 1).map(|(b, _)| b).unwrap();
        let label = text[label_start..].trim_end().to_owned();
        if table.insert(id, label).is_some() {
            return Err(ParseError::new(
                no,
                f[0].0,
                format!("duplicate layer id {id}"),
            ));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKind;

    #[test]
    fn two_layers_three_replicas_one_coupling() {
        let g: MultilayerGraph<f64> =
            parse_multiplex_edge_list(b"1 a b 1.0\n2 a c 2.0", None).unwrap();
        assert_eq!(g.layers().len(), 2);
        let ids = |o: usize| -> Vec<&str> {
            g.layers()[o]
                .members
                .iter()
                .map(|&m| g.node_at(m).id.as_str())
                .collect()
        };
        assert_eq!(ids(0), ["a@1", "b@1"]);
        assert_eq!(ids(1), ["a@2", "c@2"]);
        let inter: Vec<_> = g
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::InterLayer)
            .collect();
        assert_eq!(inter.len(), 1);
        assert_eq!(g.edges()[1].weight, 2.0);
    }

    #[test]
    fn field_count_violation_reports_line() {
        let err = read_multiplex_edge_list(b"1 a").unwrap_err();
        assert_eq!(err.line, 1);
        let err = read_multiplex_edge_list(b"# c\n\n1 a b\n1 a b 1 x").unwrap_err();
        assert_eq!((err.line, err.column), (4, 9));
    }

    #[test]
    fn three_fields_default_weight_and_tabs() {
        let r = read_multiplex_edge_list(b"3\tx \t y\r\n").unwrap();
        assert_eq!(
            r,
            vec![MpxEdgeRecord {
                layer_id: 3,
                source: "x".into(),
                target: "y".into(),
                weight: 1.0
            }]
        );
    }

    #[test]
    fn bad_numbers() {
        for (text, col) in [
            ("x a b 1", 1),
            ("0 a b 1", 1),
            ("-1 a b", 1),
            ("1 a b w", 7),
            ("1 a b -2", 7),
            ("1 a b 0", 7),
            ("1 a b NaN", 7),
            ("1 a b inf", 7),
        ] {
            let err = read_multiplex_edge_list(text.as_bytes()).unwrap_err();
            assert_eq!((err.line, err.column), (1, col), "{text}");
        }
    }

    #[test]
    fn invalid_utf8_is_a_parse_error() {
        let err = read_multiplex_edge_list(b"1 a b\n1 \xff b\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn scan_accounts_for_every_line() {
        let scan = scan_multiplex_edge_list(b"# header\n1 a b\n\nbad\n2 b c 0.5\n");
        assert_eq!(scan.len(), 6);
        assert!(scan[0].is_none() && scan[2].is_none() && scan[5].is_none());
        assert!(matches!(scan[1], Some(Ok(_))));
        assert!(matches!(&scan[3], Some(Err(e)) if e.line == 4));
        assert!(matches!(scan[4], Some(Ok(_))));
    }

    #[test]
    fn layer_table_basic_and_header() {
        let t = parse_layer_table(b"1 Tube\n2 Overground\n3 DLR").unwrap();
        assert_eq!(t[&1], "Tube");
        assert_eq!(t[&2], "Overground");
        assert_eq!(t[&3], "DLR");
        let t = parse_layer_table(b"layerID layerLabel\n1 Physical association\n").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[&1], "Physical association");
        assert!(parse_layer_table(b"").unwrap().is_empty());
    }

    #[test]
    fn layer_table_duplicate_id() {
        let err = parse_layer_table(b"1 X\n1 Y").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_layer_table(b"1\n").is_err());
    }

    #[test]
    fn table_renames_layers_and_keeps_id_order() {
        let table = parse_layer_table(b"1 Tube\n2 Overground\n3 DLR").unwrap();
        let g: MultilayerGraph<f64> =
            parse_multiplex_edge_list(b"3 a b\n1 a c\n2 c d\n", Some(&table)).unwrap();
        let keys: Vec<_> = g.layers().iter().map(|l| l.key.as_str()).collect();
        assert_eq!(keys, ["Tube", "Overground", "DLR"]);
        assert!(g.node("a@DLR").is_some());
    }

    #[test]
    fn layer_ids_order_numerically() {
        let g: MultilayerGraph<f64> = parse_multiplex_edge_list(b"10 a b\n9 a b\n", None).unwrap();
        let keys: Vec<_> = g.layers().iter().map(|l| l.key.as_str()).collect();
        assert_eq!(keys, ["9", "10"]);
    }
}
