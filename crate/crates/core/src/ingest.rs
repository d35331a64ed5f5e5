//! Edge-list input and output, and per-network summary statistics.
//!
//! Input follows the KONECT text conventions: one edge per line given by two
//! whitespace-separated vertex tokens, optional extra columns ignored, and
//! lines starting with `%` or `#` treated as comments. Tokens are arbitrary
//! strings mapped to dense IDs in first-appearance order. A first comment line
//! declaring `asym` marks a directed list; it is read as undirected.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{sig, sig_opt};
use crate::graph::{build_graph, DropCounts, Graph, PathMode};
use crate::powerlaw::{powerlaw_exponent, PowerLawConfig};
use crate::spectral::{self, coherence_estimate, EstimateConfig, Method};

pub const STATS_CSV_HEADER: &str =
    "name,n_raw,m_raw,n_lcc,m_lcc,mean_degree,gamma,mean_path,h_fo,h_so,method";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOptions {
    pub comment_prefixes: Vec<char>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            comment_prefixes: vec!['%', '#'],
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// Original token of each dense vertex ID.
    pub labels: Vec<String>,
    pub dropped: DropCounts,
    /// The header declared a directed list.
    pub symmetrized: bool,
}

impl ParsedGraph {
    /// Human-readable notes on anything altered while reading.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.symmetrized {
            out.push("directed edge list read as undirected".to_string());
        }
        if self.dropped.duplicates > 0 {
            out.push(format!(
                "dropped {} duplicate edges",
                self.dropped.duplicates
            ));
        }
        if self.dropped.self_loops > 0 {
            out.push(format!("dropped {} self-loops", self.dropped.self_loops));
        }
        out
    }
}

pub fn parse_edge_list<R: BufRead>(input: R, options: &ParseOptions) -> Result<ParsedGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut symmetrized = false;
    let mut seen_comment = false;

    let mut intern = |token: &str| -> usize {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len();
        ids.insert(token.to_string(), id);
        labels.push(token.to_string());
        id
    };

    for (index, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with(options.comment_prefixes.as_slice()) {
            if !seen_comment {
                seen_comment = true;
                symmetrized = trimmed[1..].split_whitespace().next() == Some("asym");
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match (tokens.next(), tokens.next()) {
            (Some(a), Some(b)) => {
                let u = intern(a);
                let v = intern(b);
                edges.push((u, v));
            }
            _ => {
                return Err(Error::Parse {
                    line: index + 1,
                    message: format!("expected two vertex tokens, found {trimmed:?}"),
                })
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (graph, dropped) = build_graph(&edges, Some(labels.len()))?;
    Ok(ParsedGraph {
        graph,
        labels,
        dropped,
        symmetrized,
    })
}

pub fn read_edge_list_file(path: &std::path::Path) -> Result<ParsedGraph> {
    let file = std::fs::File::open(path)?;
    parse_edge_list(std::io::BufReader::new(file), &ParseOptions::default())
}

/// Writes `header` lines as `%` comments, then one `u v` line per edge with
/// `u < v`, sorted.
pub fn write_edge_list<W: Write>(g: &Graph, header: &[String], mut out: W) -> Result<()> {
    for line in header {
        writeln!(out, "% {line}")?;
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsConfig {
    pub compute_coherence: bool,
    /// Largest component size evaluated by the dense spectrum.
    pub dense_threshold: usize,
    pub estimate: EstimateConfig,
    pub path_seed: u64,
    pub powerlaw: PowerLawConfig,
}

impl Default for StatsConfig {
    fn default() -> Self {
        Self {
            compute_coherence: true,
            dense_threshold: spectral::DEFAULT_DENSE_THRESHOLD,
            estimate: EstimateConfig::default(),
            path_seed: 0,
            powerlaw: PowerLawConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkStats {
    pub name: String,
    pub n_raw: usize,
    pub m_raw: usize,
    pub n_lcc: usize,
    pub m_lcc: usize,
    pub mean_degree: f64,
    /// Fitted degree exponent, absent when the fit is impossible.
    pub gamma: Option<f64>,
    pub mean_path: f64,
    pub h_fo: Option<f64>,
    pub h_so: Option<f64>,
    pub method: Option<Method>,
}

impl NetworkStats {
    pub fn csv_row(&self) -> String {
        [
            csv_field(&self.name),
            self.n_raw.to_string(),
            self.m_raw.to_string(),
            self.n_lcc.to_string(),
            self.m_lcc.to_string(),
            sig(self.mean_degree),
            sig_opt(self.gamma),
            sig(self.mean_path),
            sig_opt(self.h_fo),
            sig_opt(self.h_so),
            self.method.map(|m| m.to_string()).unwrap_or_default(),
        ]
        .join(",")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn network_stats(g: &Graph, name: &str, config: &StatsConfig) -> Result<NetworkStats> {
    let (lcc, _) = g.largest_connected_component();
    let n_lcc = lcc.n_vertices();
    let m_lcc = lcc.n_edges();
    let mean_path = if n_lcc > 1 {
        lcc.average_shortest_path(PathMode::auto(n_lcc, config.path_seed))?
    } else {
        0.0
    };
    let gamma = powerlaw_exponent(&lcc.degrees(), &config.powerlaw)
        .ok()
        .map(|fit| fit.gamma);
    let (h_fo, h_so, method) = if config.compute_coherence && n_lcc > 1 {
        let report = if n_lcc <= config.dense_threshold {
            spectral::dense_coherence(&lcc)?
        } else {
            coherence_estimate(&lcc, &config.estimate)?
        };
        (Some(report.h_fo), Some(report.h_so), Some(report.method))
    } else {
        (None, None, None)
    };
    Ok(NetworkStats {
        name: name.to_string(),
        n_raw: g.n_vertices(),
        m_raw: g.n_edges(),
        n_lcc,
        m_lcc,
        mean_degree: 2.0 * m_lcc as f64 / n_lcc as f64,
        gamma,
        mean_path,
        h_fo,
        h_so,
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ParsedGraph> {
        parse_edge_list(text.as_bytes(), &ParseOptions::default())
    }

    #[test]
    fn triangle() {
        let p = parse("0 1\n1 2\n2 0\n").unwrap();
        assert_eq!((p.graph.n_vertices(), p.graph.n_edges()), (3, 3));
        assert!(p.warnings().is_empty());
    }

    #[test]
    fn tokens_and_extra_columns() {
        let p = parse("% comment\na b 5 123\nb c\n").unwrap();
        assert_eq!(p.labels, vec!["a", "b", "c"]);
        assert_eq!(p.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn comments_blank_lines_and_drops() {
        let p = parse("# header\n\n1 2\n2 1\n3 3\n2 3\n").unwrap();
        assert_eq!(p.graph.n_edges(), 2);
        assert_eq!(
            p.dropped,
            DropCounts {
                duplicates: 1,
                self_loops: 1
            }
        );
        assert_eq!(p.warnings().len(), 2);
    }

    #[test]
    fn short_line_reports_line_number() {
        let err = parse("0 1\n\n7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(err.to_string().starts_with("line 3:"));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(parse(""), Err(Error::EmptyGraph)));
        assert!(matches!(parse("% only comments\n"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn directed_header_is_flagged() {
        let p = parse("% asym unweighted\n1 2\n2 3\n").unwrap();
        assert!(p.symmetrized);
        assert!(!parse("% sym unweighted\n1 2\n").unwrap().symmetrized);
    }

    #[test]
    fn round_trip() {
        let g = crate::generators::psfw_iterative(3).unwrap().graph;
        let mut buf = Vec::new();
        write_edge_list(&g, &["psfw n=3".into()], &mut buf).unwrap();
        let back = parse(std::str::from_utf8(&buf).unwrap()).unwrap();
        let relabeled: Vec<usize> = back.labels.iter().map(|l| l.parse().unwrap()).collect();
        let mut edges: Vec<(usize, usize)> = back
            .graph
            .edges()
            .map(|(u, v)| {
                let (a, b) = (relabeled[u], relabeled[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        assert_eq!(edges, g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn stats_of_small_graph() {
        let p = parse("0 1\n1 2\n2 0\n5 6\n").unwrap();
        let s = network_stats(&p.graph, "tri", &StatsConfig::default()).unwrap();
        assert_eq!((s.n_raw, s.m_raw, s.n_lcc, s.m_lcc), (5, 4, 3, 3));
        assert_eq!(s.mean_degree, 2.0);
        assert_eq!(s.mean_path, 1.0);
        assert!((s.h_fo.unwrap() - 1.0 / 9.0).abs() < 1e-12);
        assert_eq!(s.gamma, None);
        assert_eq!(s.method, Some(Method::DenseSpectrum));
        assert_eq!(
            s.csv_row(),
            "tri,5,4,3,3,2,,1,0.111111111111,0.037037037037,dense-spectrum"
        );
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
