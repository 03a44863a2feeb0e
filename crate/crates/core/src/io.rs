//! Plain-text file formats.
//!
//! * Edge list: one edge per line as two whitespace-separated labels; lines
//!   starting with `#` are comments. A `# nodes: <labels>` comment, when
//!   present, fixes node order and carries isolated nodes.
//! * Cluster file: one `label<TAB>cluster-index` line per node.
//! * Log file: a `# nodes: <labels>` header over the overt nodes, then one
//!   log per line as space-separated labels; an empty line is an empty log.
//! * Truth file: same layout over every node, one pattern per line with the
//!   initiator first.
//! * Ranking CSV: `rank,log_index,score`, most suspicious first.
//! * Curves CSV: `D_r,precision,recall,f,p_limit,r_limit,f_limit,p_rand,r_rand,f_rand`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::evaluation::{Curves, EvalCurves};
use crate::graph::Graph;
use crate::ranking::RankingResult;
use crate::transmission::{ActivityPattern, GroundTruth, LogDataset, SurveillanceLog, Theta};

const NODES_HEADER: &str = "# nodes:";
pub const CURVES_HEADER: &str = "D_r,precision,recall,f,p_limit,r_limit,f_limit,p_rand,r_rand,f_rand";

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn header_line(labels: &[String]) -> String {
    let mut line = NODES_HEADER.to_string();
    for label in labels {
        line.push(' ');
        line.push_str(label);
    }
    line
}

fn parse_header(line: &str) -> Option<Vec<String>> {
    line.strip_prefix(NODES_HEADER)
        .map(|rest| rest.split_whitespace().map(str::to_string).collect())
}

pub fn format_edge_list(g: &Graph) -> String {
    let labels = g.node_labels();
    let mut out = header_line(&labels);
    out.push('\n');
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "{} {}", labels[a], labels[b]);
    }
    out
}

pub fn format_cluster_file(g: &Graph) -> Option<String> {
    let clusters = g.cluster_of()?;
    let mut out = String::new();
    for (j, c) in clusters.iter().enumerate() {
        let _ = writeln!(out, "{}\t{c}", g.label(j));
    }
    Some(out)
}

/// Parses an edge list and optional cluster file into a labeled graph.
pub fn parse_graph(edges_text: &str, edges_path: &Path, clusters: Option<(&str, &Path)>) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let intern = |label: &str, labels: &mut Vec<String>, index: &mut HashMap<String, usize>| -> usize {
        *index.entry(label.to_string()).or_insert_with(|| {
            labels.push(label.to_string());
            labels.len() - 1
        })
    };
    let mut edges = Vec::new();
    for (lineno, line) in edges_text.lines().enumerate() {
        let trimmed = line.trim();
        if let Some(header) = parse_header(trimmed) {
            for label in header {
                intern(&label, &mut labels, &mut index);
            }
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(edges_path, lineno + 1, "expected two node labels"));
        }
        let a = intern(fields[0], &mut labels, &mut index);
        let b = intern(fields[1], &mut labels, &mut index);
        edges.push((a, b));
    }

    let mut assignments = Vec::new();
    if let Some((text, path)) = clusters {
        for (lineno, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split('\t');
            let (Some(label), Some(cluster), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::parse(path, lineno + 1, "expected label<TAB>cluster-index"));
            };
            let cluster: usize = cluster
                .trim()
                .parse()
                .map_err(|_| Error::parse(path, lineno + 1, format!("bad cluster index {cluster:?}")))?;
            let j = intern(label.trim(), &mut labels, &mut index);
            assignments.push((lineno + 1, j, cluster));
        }
    }

    let n = labels.len();
    let mut graph = Graph::new(n, edges)
        .map_err(|e| Error::parse(edges_path, 0, e.to_string()))?
        .with_labels(labels)?;
    if let Some((_, path)) = clusters {
        let mut cluster_of = vec![None; n];
        for (lineno, j, c) in assignments {
            if cluster_of[j].replace(c).is_some() {
                return Err(Error::parse(path, lineno, "node assigned twice"));
            }
        }
        let cluster_of = cluster_of
            .into_iter()
            .enumerate()
            .map(|(j, c)| c.ok_or_else(|| Error::parse(path, 0, format!("node {} has no cluster", graph.label(j)))))
            .collect::<Result<Vec<_>>>()?;
        graph = graph.with_clusters(cluster_of)?;
    }
    Ok(graph)
}

pub fn read_graph(edges: &Path, clusters: Option<&Path>) -> Result<Graph> {
    let text = read_to_string(edges)?;
    let cluster_text = clusters.map(read_to_string).transpose()?;
    parse_graph(&text, edges, cluster_text.as_deref().zip(clusters))
}

pub fn write_graph(g: &Graph, edges: &Path, clusters: Option<&Path>) -> Result<()> {
    write_file(edges, &format_edge_list(g))?;
    if let (Some(path), Some(text)) = (clusters, format_cluster_file(g)) {
        write_file(path, &text)?;
    }
    Ok(())
}

fn join_labels<'a>(labels: impl Iterator<Item = &'a str>) -> String {
    labels.collect::<Vec<_>>().join(" ")
}

pub fn format_logs(ds: &LogDataset) -> String {
    let labels = ds.overt_labels();
    let mut out = header_line(labels);
    out.push('\n');
    for log in ds.logs() {
        out.push_str(&join_labels(log.members().iter().map(|&j| labels[j].as_str())));
        out.push('\n');
    }
    out
}

pub fn format_truth(truth: &GroundTruth) -> String {
    let labels = &truth.node_labels;
    let mut out = header_line(labels);
    out.push('\n');
    for p in &truth.patterns {
        let initiator = p.initiator();
        let rest = p.members().iter().copied().filter(|&j| j != initiator);
        let ordered = std::iter::once(initiator).chain(rest);
        out.push_str(&join_labels(ordered.map(|j| labels[j].as_str())));
        out.push('\n');
    }
    out
}

/// Header labels and one member-label list per body line.
fn parse_layout(text: &str, path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut lines = text.split('\n');
    let header = lines
        .next()
        .and_then(|l| parse_header(l.trim_end_matches('\r')))
        .ok_or_else(|| Error::parse(path, 1, format!("missing '{NODES_HEADER}' header")))?;
    let mut body: Vec<&str> = lines.collect();
    // the final newline terminates the last record rather than starting one
    if body.last() == Some(&"") {
        body.pop();
    }
    let rows = body
        .iter()
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    Ok((header, rows))
}

fn label_map<'a>(labels: &'a [String], path: &Path) -> Result<HashMap<&'a str, usize>> {
    let mut map = HashMap::with_capacity(labels.len());
    for (j, l) in labels.iter().enumerate() {
        if map.insert(l.as_str(), j).is_some() {
            return Err(Error::parse(path, 1, format!("duplicate node label {l:?}")));
        }
    }
    Ok(map)
}

fn resolve(map: &HashMap<&str, usize>, label: &str, path: &Path, line: usize) -> Result<usize> {
    map.get(label)
        .copied()
        .ok_or_else(|| Error::parse(path, line, format!("unknown node label {label:?}")))
}

pub fn parse_logs(text: &str, path: &Path) -> Result<LogDataset> {
    let (labels, rows) = parse_layout(text, path)?;
    let map = label_map(&labels, path)?;
    let mut logs = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let members = row
            .iter()
            .map(|l| resolve(&map, l, path, i + 2))
            .collect::<Result<Vec<_>>>()?;
        logs.push(SurveillanceLog::new(members));
    }
    LogDataset::with_labels(labels, logs)
}

/// Attaches a truth file to a log dataset parsed from its companion file.
pub fn attach_truth(ds: LogDataset, text: &str, path: &Path) -> Result<LogDataset> {
    let (labels, rows) = parse_layout(text, path)?;
    let map = label_map(&labels, path)?;
    let overt_nodes = ds
        .overt_labels()
        .iter()
        .map(|l| resolve(&map, l, path, 1))
        .collect::<Result<Vec<_>>>()?;
    let mut patterns = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let members = row
            .iter()
            .map(|l| resolve(&map, l, path, i + 2))
            .collect::<Result<Vec<_>>>()?;
        let Some(&initiator) = members.first() else {
            return Err(Error::parse(path, i + 2, "pattern has no initiator"));
        };
        patterns.push(ActivityPattern::new(initiator, members));
    }
    ds.with_ground_truth(GroundTruth {
        node_labels: labels,
        overt_nodes,
        patterns,
    })
}

pub fn read_logs(logs: &Path, truth: Option<&Path>) -> Result<LogDataset> {
    let ds = parse_logs(&read_to_string(logs)?, logs)?;
    match truth {
        Some(path) => attach_truth(ds, &read_to_string(path)?, path),
        None => Ok(ds),
    }
}

pub fn write_logs(ds: &LogDataset, logs: &Path, truth: Option<&Path>) -> Result<()> {
    write_file(logs, &format_logs(ds))?;
    if let Some(path) = truth {
        let truth = ds.ground_truth().ok_or(Error::MissingGroundTruth)?;
        write_file(path, &format_truth(truth))?;
    }
    Ok(())
}

pub fn format_ranking(ranking: &RankingResult) -> String {
    let mut out = String::from("rank,log_index,score\n");
    for (t, &i) in ranking.order().iter().enumerate() {
        let _ = writeln!(out, "{},{i},{}", t + 1, ranking.scores()[i]);
    }
    out
}

pub fn parse_ranking(text: &str, path: &Path) -> Result<RankingResult> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let parsed = (fields.len() == 3)
            .then(|| {
                Some((
                    fields[1].trim().parse::<usize>().ok()?,
                    fields[2].trim().parse::<f64>().ok()?,
                ))
            })
            .flatten();
        let Some((index, score)) = parsed else {
            return Err(Error::parse(path, lineno + 1, "expected rank,log_index,score"));
        };
        entries.push((index, score));
    }
    let mut scores = vec![f64::NAN; entries.len()];
    for (index, score) in entries {
        if index >= scores.len() || !scores[index].is_nan() {
            return Err(Error::parse(path, 0, format!("log index {index} missing or repeated")));
        }
        scores[index] = score;
    }
    Ok(RankingResult::from_scores(scores))
}

pub fn read_ranking(path: &Path) -> Result<RankingResult> {
    parse_ranking(&read_to_string(path)?, path)
}

fn push_curve_row(out: &mut String, t: usize, a: &Curves, limit: &Curves, random: &Curves) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{}",
        t + 1,
        a.precision[t],
        a.recall[t],
        a.f_measure[t],
        limit.precision[t],
        limit.recall[t],
        limit.f_measure[t],
        random.precision[t],
        random.recall[t],
        random.f_measure[t],
    );
}

/// Curves CSV from the three curve sets, which must have equal length.
pub fn format_curve_table(actual: &Curves, limit: &Curves, random: &Curves) -> String {
    let mut out = format!("{CURVES_HEADER}\n");
    for t in 0..actual.len() {
        push_curve_row(&mut out, t, actual, limit, random);
    }
    out
}

pub fn format_curves(curves: &EvalCurves) -> String {
    format_curve_table(&curves.actual, &curves.theoretical_limit, &curves.random_baseline)
}

/// `r̂` as an `N x N` matrix and `f̂` as one value per line.
pub fn format_theta(theta: &Theta) -> (String, String) {
    let n = theta.node_count();
    let mut r = String::new();
    for j in 0..n {
        let row: Vec<String> = (0..n).map(|k| theta.transmission(j, k).to_string()).collect();
        r.push_str(&row.join(","));
        r.push('\n');
    }
    let mut f = String::new();
    for x in theta.f() {
        let _ = writeln!(f, "{x}");
    }
    (r, f)
}
