//! Graph sources shared by the subcommands: inline graph6, named
//! constructions, files and stdin.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::Args;
use satgraph::constructions::{self, LabeledConstruction};
use satgraph::{parse_graph6, Graph};

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Inline graph6 string
    #[arg(long, conflicts_with_all = ["construct", "file"])]
    pub g6: Option<String>,
    /// Named construction: gn:N, ehm:N,K, edge-join-cycle:N, small:N
    #[arg(long, conflicts_with = "file")]
    pub construct: Option<String>,
    /// File of graph6 lines; `-` or nothing reads stdin
    pub file: Option<PathBuf>,
}

/// A graph with the name it is reported under.
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

pub fn construct(spec: &str) -> Result<LabeledConstruction, String> {
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| format!("construction {spec:?} needs the form name:args"))?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|a| a.trim().parse().map_err(|_| format!("bad number {a:?} in {spec:?}")))
        .collect::<Result<_, _>>()?;
    let built = match (kind, nums.as_slice()) {
        ("gn", &[n]) => constructions::gn(n).map_err(|e| {
            if (6..=11).contains(&n) {
                format!("{e}; use small:{n} for a cached witness")
            } else {
                e.to_string()
            }
        })?,
        ("ehm", &[n, k]) => constructions::ehm(n, k).map_err(|e| e.to_string())?,
        ("edge-join-cycle", &[n]) => constructions::edge_join_cycle(n).map_err(|e| e.to_string())?,
        ("small", &[n]) => constructions::small_witness(n).map_err(|e| e.to_string())?,
        _ => return Err(format!("unknown construction {spec:?}")),
    };
    Ok(built)
}

fn parse_lines(text: &str, source: &str) -> Result<Vec<NamedGraph>, String> {
    let graphs: Vec<NamedGraph> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            parse_graph6(l)
                .map(|graph| NamedGraph {
                    name: l.to_string(),
                    graph,
                })
                .map_err(|e| format!("{source}: {l:?}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    if graphs.is_empty() {
        return Err(format!("{source}: no graphs"));
    }
    Ok(graphs)
}

impl GraphInput {
    pub fn load(&self) -> Result<Vec<NamedGraph>, String> {
        if let Some(s) = &self.g6 {
            let graph = parse_graph6(s).map_err(|e| format!("{s:?}: {e}"))?;
            return Ok(vec![NamedGraph {
                name: s.trim().to_string(),
                graph,
            }]);
        }
        if let Some(spec) = &self.construct {
            let c = construct(spec)?;
            return Ok(vec![NamedGraph {
                name: c.name,
                graph: c.graph,
            }]);
        }
        match &self.file {
            Some(path) if path.as_os_str() != "-" => {
                let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                parse_lines(&text, &path.display().to_string())
            }
            _ => {
                let mut text = String::new();
                io::stdin()
                    .read_to_string(&mut text)
                    .map_err(|e| format!("stdin: {e}"))?;
                parse_lines(&text, "stdin")
            }
        }
    }
}
