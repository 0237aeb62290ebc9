//! Command-line front end: parse → merge attributes → assign layers →
//! stack → write outputs.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::graph::{LayerSource, MultilayerGraph, DEFAULT_GLYPH_WIDTH};
use crate::io::{self, RunMeta, StyleConfig};
use crate::layout::{Algorithm, LayoutConfig};
use crate::metrics;
use crate::stack::{stack, Orientation, StackConfig};

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_LAYER_ATTRIBUTE: i32 = 2;
pub const EXIT_WRITE: i32 = 3;

/// Lay out a multilayer network as stacked layers.
#[derive(Debug, Clone, Parser)]
#[command(name = "mlayout", version)]
#[command(group(ArgGroup::new("outputs").required(true).multiple(true)
    .args(["json", "gexf", "svg", "report"])))]
pub struct Cli {
    /// Graph file: a multiplex edge list (`layerId src dst [weight]`), or a
    /// node CSV when the name ends in `.csv`
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Layer table (`layerId layerLabel`) naming the edge-list layer ids
    #[arg(long, value_name = "PATH")]
    pub layers: Option<PathBuf>,

    /// Node CSV (`id[,label][,size],...`) merged into the graph
    #[arg(long, value_name = "PATH")]
    pub nodes: Option<PathBuf>,

    /// Partition nodes by this attribute instead of by edge layer
    #[arg(long = "layer-attr", value_name = "NAME")]
    pub layer_attr: Option<String>,

    #[arg(long, value_enum, default_value_t = Algorithm::FruchtermanReingold)]
    pub layout: Algorithm,

    /// Force-layout iterations
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub iterations: u64,

    /// Force-layout speed
    #[arg(long, default_value_t = 1.0)]
    pub speed: f64,

    /// Pull toward each layer's origin
    #[arg(long, default_value_t = 10.0)]
    pub gravity: f64,

    /// Force-layout placement area, px²
    #[arg(long, default_value_t = 10_000.0)]
    pub area: f64,

    /// Gap between consecutive layers, px
    #[arg(long = "layer-distance", default_value_t = 200.0)]
    pub layer_distance: f64,

    /// Lay layers side by side instead of stacking them [default: off]
    #[arg(long)]
    pub horizontal: bool,

    /// Tilt layers into a pseudo-3D view [default: off]
    #[arg(long = "3d")]
    pub three_d: bool,

    /// Lay out the whole network once, then pull the layers apart [default: off]
    #[arg(long = "split-by-level")]
    pub split_by_level: bool,

    /// Stack smaller layers first [default: off]
    #[arg(long = "sort-layers")]
    pub sort_layers: bool,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Label width per character, px
    #[arg(long = "glyph-width", default_value_t = DEFAULT_GLYPH_WIDTH)]
    pub glyph_width: f64,

    /// Draw node labels in the SVG [default: off]
    #[arg(long)]
    pub labels: bool,

    /// Write positioned graph JSON
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Write GEXF 1.2
    #[arg(long, value_name = "PATH")]
    pub gexf: Option<PathBuf>,

    /// Write an SVG drawing
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,

    /// Write the per-layer quality report (JSON if PATH ends in .json, else a table)
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Run manifest path [default: next to the first output, as *.manifest.json]
    #[arg(long, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MissingLayerAttribute { .. } => EXIT_LAYER_ATTRIBUTE,
            _ => EXIT_PARSE,
        };
        CliError::new(code, e.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputFile {
    pub format: &'static str,
    pub path: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub layer_count: usize,
    pub layers: Vec<String>,
    pub nodes: usize,
    pub edges: usize,
    pub outputs: Vec<OutputFile>,
    pub manifest: PathBuf,
}

impl Cli {
    pub fn layout_config(&self) -> LayoutConfig<f64> {
        LayoutConfig {
            algorithm: self.layout,
            iterations: self.iterations as usize,
            speed: self.speed,
            gravity: self.gravity,
            area: self.area,
            seed: self.seed,
        }
    }

    pub fn stack_config(&self) -> StackConfig<f64> {
        StackConfig {
            layer_distance: self.layer_distance,
            orientation: if self.horizontal {
                Orientation::Horizontal
            } else {
                Orientation::Vertical
            },
            three_d: self.three_d,
            split_by_level: self.split_by_level,
            sort_layers: self.sort_layers,
        }
    }

    fn outputs(&self) -> Vec<OutputFile> {
        [
            ("json", &self.json),
            ("gexf", &self.gexf),
            ("svg", &self.svg),
            ("report", &self.report),
        ]
        .into_iter()
        .filter_map(|(format, p)| {
            p.as_ref().map(|p| OutputFile {
                format,
                path: p.clone(),
            })
        })
        .collect()
    }

    fn manifest_path(&self, outputs: &[OutputFile]) -> PathBuf {
        self.manifest
            .clone()
            .unwrap_or_else(|| outputs[0].path.with_extension("manifest.json"))
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes)
        .map_err(|e| CliError::new(EXIT_WRITE, format!("cannot write {}: {e}", path.display())))
}

fn parse_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::new(EXIT_PARSE, format!("{}: {e}", path.display()))
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Load and merge the input files into an unlayered graph.
pub fn load_graph(cli: &Cli) -> Result<MultilayerGraph<f64>, CliError> {
    if !(cli.glyph_width >= 0.0 && cli.glyph_width.is_finite()) {
        return Err(CliError::new(
            EXIT_PARSE,
            "glyph width must be non-negative",
        ));
    }
    let table = match &cli.layers {
        Some(p) => Some(io::parse_layer_table(&read(p)?).map_err(|e| parse_err(p, e))?),
        None => None,
    };
    let bytes = read(&cli.input)?;
    let mut graph = if is_csv(&cli.input) {
        let nodes = io::parse_node_csv(&bytes).map_err(|e| parse_err(&cli.input, e))?;
        io::merge_node_table(
            MultilayerGraph::new(vec![], vec![])?,
            &nodes,
            cli.glyph_width,
        )?
    } else {
        let records = io::read_multiplex_edge_list(&bytes).map_err(|e| parse_err(&cli.input, e))?;
        io::graph_from_records(&records, table.as_ref(), cli.glyph_width)?
    };
    if let Some(p) = &cli.nodes {
        let nodes = io::parse_node_csv(&read(p)?).map_err(|e| parse_err(p, e))?;
        graph = io::merge_node_table(graph, &nodes, cli.glyph_width)?;
    }
    Ok(graph)
}

pub fn run(cli: &Cli) -> Result<RunSummary, CliError> {
    let layout_cfg = cli.layout_config();
    let stack_cfg = cli.stack_config();
    layout_cfg.validate()?;
    stack_cfg.validate()?;

    let source = match &cli.layer_attr {
        Some(name) => LayerSource::NodeAttribute(name.clone()),
        None => LayerSource::EdgeLayerLabel,
    };
    let graph = load_graph(cli)?.assign_layers(source)?;
    let placed = stack(&graph, &layout_cfg, &stack_cfg)?;

    let config = json!({
        "layout": layout_cfg,
        "stack": stack_cfg,
        "glyph_width": cli.glyph_width,
        "layer_source": cli.layer_attr.as_deref().map_or("edge-layer".to_owned(), |a| format!("attribute:{a}")),
    });
    let outputs = cli.outputs();
    for out in &outputs {
        let bytes = match out.format {
            "json" => {
                let meta = RunMeta {
                    layout: layout_cfg.algorithm.name().into(),
                    seed: layout_cfg.seed,
                    config: config.clone(),
                };
                io::write_positioned_json(&placed, &meta)?
            }
            "gexf" => io::write_gexf(&placed)?,
            "svg" => {
                let style = StyleConfig {
                    show_labels: cli.labels,
                    ..Default::default()
                };
                io::render_svg(&placed, &style)?
            }
            _ => {
                let reports = metrics::report(&placed);
                let is_json = out
                    .path
                    .extension()
                    .is_some_and(|e| e.eq_ignore_ascii_case("json"));
                if is_json {
                    let mut v = serde_json::to_vec_pretty(&reports).map_err(Error::from)?;
                    v.push(b'\n');
                    v
                } else {
                    metrics::render_table(&reports).into_bytes()
                }
            }
        };
        write(&out.path, &bytes)?;
    }

    let summary = RunSummary {
        layer_count: placed.layers().len(),
        layers: placed.layers().iter().map(|l| l.key.clone()).collect(),
        nodes: placed.node_count(),
        edges: placed.edges().len(),
        manifest: cli.manifest_path(&outputs),
        outputs,
    };
    let manifest = json!({
        "tool": "mlayout",
        "version": env!("CARGO_PKG_VERSION"),
        "input": cli.input,
        "layer_table": cli.layers,
        "node_table": cli.nodes,
        "seed": layout_cfg.seed,
        "config": config,
        "layer_count": summary.layer_count,
        "layers": summary.layers,
        "nodes": summary.nodes,
        "edges": summary.edges,
        "outputs": summary.outputs,
    });
    let mut bytes = serde_json::to_vec_pretty(&manifest).map_err(Error::from)?;
    bytes.push(b'\n');
    write(&summary.manifest, &bytes)?;
    Ok(summary)
}
