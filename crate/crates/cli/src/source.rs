//! Graph and state inputs shared by the subcommands.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use toric_core::{corona_product, BridgeChainSpec, GraphFamily, SimpleGraph, State};

/// Builds a graph from a source string:
///
/// - a family: `path:3`, `complete:4`, `star:5`, `cycle:6`, `pruefer:0.0`,
///   `explicit:4:0-1.1-2.2-3`, or the short forms `K4`, `P3`, `C5`;
/// - `chain:K3,P2,K3` (optionally `;a-b,...` junction pairs);
/// - `corona:K3,P3,0` for `K3 ⊙ P3` attached at vertex 0 of each copy;
/// - `json:FILE` for a graph JSON document.
pub fn parse_graph(source: &str) -> Result<SimpleGraph> {
    if let Some(spec) = source.strip_prefix("chain:") {
        let spec: BridgeChainSpec = spec.parse()?;
        return Ok(spec.build()?);
    }
    if let Some(rest) = source.strip_prefix("corona:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let [g1, g2, attach] = parts[..] else {
            bail!("corona source must look like corona:K3,P3,0");
        };
        let g1 = g1.parse::<GraphFamily>()?.build()?;
        let g2 = g2.parse::<GraphFamily>()?.build()?;
        let attach = attach.parse().context("attach vertex")?;
        return Ok(corona_product(&g1, &g2, attach)?);
    }
    if let Some(path) = source.strip_prefix("json:") {
        return read_graph_json(Path::new(path));
    }
    Ok(source.parse::<GraphFamily>()?.build()?)
}

pub fn read_graph_json(path: &Path) -> Result<SimpleGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(SimpleGraph::from_json(&text)?)
}

pub fn graph_from_args(graph: Option<&str>, graph_json: Option<&Path>) -> Result<SimpleGraph> {
    match (graph, graph_json) {
        (Some(src), None) => parse_graph(src),
        (None, Some(path)) => read_graph_json(path),
        (Some(_), Some(_)) => bail!("give either --graph or --graph-json, not both"),
        (None, None) => bail!("a graph is required (--graph or --graph-json)"),
    }
}

/// One-line labeling plus active label, or a state JSON file.
pub fn state_from_args(
    one_line: Option<&str>,
    active: Option<usize>,
    state_json: Option<&Path>,
) -> Result<State> {
    match (one_line, state_json) {
        (Some(line), None) => Ok(State::parse(line, active.unwrap_or(1))?),
        (None, Some(path)) => {
            if active.is_some() {
                bail!("--active cannot be combined with --state-json");
            }
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(State::from_json(&text)?)
        }
        (Some(_), Some(_)) => bail!("give either --state or --state-json, not both"),
        (None, None) => bail!("a state is required (--state and --active, or --state-json)"),
    }
}
