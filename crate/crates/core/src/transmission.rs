//! Hub-and-spoke influence transmission and the surveillance-log dataset.
//!
//! An activity pattern is produced by drawing an initiator `j ~ f` and then
//! recruiting every other node `k` independently with probability `r[j][k]`.
//! A surveillance log is the pattern with the covert nodes deleted.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

const SIMPLEX_TOL: f64 = 1e-9;

/// Initiation probabilities `f` and transmission probabilities `r`.
///
/// `r` is a dense row-major `n x n` matrix; the diagonal carries no meaning
/// and is kept at zero. The row-sum bound `sum_k r[j][k] <= 1` is not
/// enforced: hubs under a 0/1 transmission model violate it.
#[derive(Debug, Clone, PartialEq)]
pub struct Theta {
    n: usize,
    f: Vec<f64>,
    r: Vec<f64>,
}

impl Theta {
    pub fn new(f: Vec<f64>, mut r: Vec<f64>) -> Result<Self> {
        let n = f.len();
        if r.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: r.len(),
            });
        }
        if n == 0 {
            return Err(Error::InvalidTheta("no nodes".into()));
        }
        if let Some(j) = f.iter().position(|&x| !(x >= 0.0 && x.is_finite())) {
            return Err(Error::InvalidTheta(format!("f[{j}] = {} is not a probability", f[j])));
        }
        let total: f64 = f.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidTheta(format!("f sums to {total}, not 1")));
        }
        for j in 0..n {
            r[j * n + j] = 0.0;
        }
        if let Some(idx) = r.iter().position(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::InvalidTheta(format!(
                "r[{}][{}] = {} outside [0, 1]",
                idx / n,
                idx % n,
                r[idx]
            )));
        }
        Ok(Self { n, f, r })
    }

    /// Skips validation; callers keep `f` on the simplex and `r` in the box.
    pub(crate) fn from_parts(f: Vec<f64>, r: Vec<f64>) -> Self {
        let n = f.len();
        debug_assert_eq!(r.len(), n * n);
        Self { n, f, r }
    }

    /// Parameters implied by a ground-truth network: uniform initiation and
    /// certain, symmetric transmission along every link.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.node_count();
        let mut r = vec![0.0; n * n];
        for &(a, b) in g.edges() {
            r[a * n + b] = 1.0;
            r[b * n + a] = 1.0;
        }
        Self::from_parts(vec![1.0 / n as f64; n], r)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    /// Row-major `n x n` transmission matrix.
    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn initiation(&self, j: usize) -> f64 {
        self.f[j]
    }

    pub fn transmission(&self, j: usize, k: usize) -> f64 {
        self.r[j * self.n + k]
    }
}

pub fn theta_from_graph(g: &Graph) -> Theta {
    Theta::from_graph(g)
}

/// The full set of participants in one collaborative activity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActivityPattern {
    initiator: usize,
    members: Vec<usize>,
}

impl ActivityPattern {
    pub fn new(initiator: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut set: BTreeSet<usize> = members.into_iter().collect();
        set.insert(initiator);
        Self {
            initiator,
            members: set.into_iter().collect(),
        }
    }

    pub fn initiator(&self) -> usize {
        self.initiator
    }

    /// Sorted, deduplicated members, initiator included.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.binary_search(&node).is_ok()
    }
}

/// The overt projection of a pattern, in overt-node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SurveillanceLog {
    members: Vec<usize>,
}

impl SurveillanceLog {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = members.into_iter().collect();
        Self {
            members: set.into_iter().collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.binary_search(&node).is_ok()
    }
}

/// Ground-truth side of a dataset, indexed over every node (overt and covert).
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub node_labels: Vec<String>,
    /// `overt_nodes[o]` is the full-network index of overt node `o`.
    pub overt_nodes: Vec<usize>,
    pub patterns: Vec<ActivityPattern>,
}

impl GroundTruth {
    pub fn covert_nodes(&self) -> Vec<usize> {
        let overt: BTreeSet<_> = self.overt_nodes.iter().copied().collect();
        (0..self.node_labels.len()).filter(|j| !overt.contains(j)).collect()
    }
}

/// `D` surveillance logs over `N` overt nodes with the binary `D x N`
/// membership matrix, and optionally the patterns they were projected from.
#[derive(Debug, Clone, PartialEq)]
pub struct LogDataset {
    overt_count: usize,
    logs: Vec<SurveillanceLog>,
    matrix: Vec<bool>,
    overt_labels: Vec<String>,
    truth: Option<GroundTruth>,
    targets: Option<Vec<bool>>,
}

impl LogDataset {
    /// Dataset without ground truth; nodes are labeled by index.
    pub fn new(overt_count: usize, logs: Vec<SurveillanceLog>) -> Result<Self> {
        let labels = (0..overt_count).map(|j| j.to_string()).collect();
        Self::with_labels(labels, logs)
    }

    pub fn with_labels(overt_labels: Vec<String>, logs: Vec<SurveillanceLog>) -> Result<Self> {
        let n = overt_labels.len();
        let mut matrix = vec![false; logs.len() * n];
        for (i, log) in logs.iter().enumerate() {
            for &j in log.members() {
                if j >= n {
                    return Err(Error::NodeOutOfRange {
                        index: j,
                        node_count: n,
                    });
                }
                matrix[i * n + j] = true;
            }
        }
        Ok(Self {
            overt_count: n,
            logs,
            matrix,
            overt_labels,
            truth: None,
            targets: None,
        })
    }

    /// Convenience constructor from raw member lists.
    pub fn from_members(overt_count: usize, logs: &[&[usize]]) -> Result<Self> {
        Self::new(
            overt_count,
            logs.iter().map(|l| SurveillanceLog::new(l.iter().copied())).collect(),
        )
    }

    pub fn with_ground_truth(mut self, truth: GroundTruth) -> Result<Self> {
        if truth.patterns.len() != self.logs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.logs.len(),
                actual: truth.patterns.len(),
            });
        }
        if truth.overt_nodes.len() != self.overt_count {
            return Err(Error::DimensionMismatch {
                expected: self.overt_count,
                actual: truth.overt_nodes.len(),
            });
        }
        let m = truth.node_labels.len();
        if let Some(&bad) = truth
            .overt_nodes
            .iter()
            .chain(truth.patterns.iter().flat_map(|p| p.members()))
            .find(|&&j| j >= m)
        {
            return Err(Error::NodeOutOfRange {
                index: bad,
                node_count: m,
            });
        }
        let targets = self
            .logs
            .iter()
            .zip(&truth.patterns)
            .map(|(log, pattern)| {
                log.len() != pattern.members().len()
                    || log.members().iter().any(|&o| !pattern.contains(truth.overt_nodes[o]))
            })
            .collect();
        self.targets = Some(targets);
        self.truth = Some(truth);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn overt_count(&self) -> usize {
        self.overt_count
    }

    pub fn logs(&self) -> &[SurveillanceLog] {
        &self.logs
    }

    pub fn overt_labels(&self) -> &[String] {
        &self.overt_labels
    }

    pub fn ground_truth(&self) -> Option<&GroundTruth> {
        self.truth.as_ref()
    }

    /// `d_ij`: whether overt node `j` appears in log `i`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.overt_count + j]
    }

    /// Row `i` of the binary membership matrix.
    pub fn row(&self, i: usize) -> &[bool] {
        &self.matrix[i * self.overt_count..(i + 1) * self.overt_count]
    }

    /// Per-log relevance flags: `true` where the log differs from its pattern.
    pub fn targets(&self) -> Result<&[bool]> {
        self.targets.as_deref().ok_or(Error::MissingGroundTruth)
    }

    /// Number of logs in which each overt node appears.
    pub fn appearance_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.overt_count];
        for log in &self.logs {
            for &j in log.members() {
                counts[j] += 1;
            }
        }
        counts
    }

    /// Same logs in a new order: `order[t]` is the old index of new log `t`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let logs = order.iter().map(|&i| self.logs[i].clone()).collect();
        let ds = Self::with_labels(self.overt_labels.clone(), logs)?;
        match &self.truth {
            Some(truth) => ds.with_ground_truth(GroundTruth {
                patterns: order.iter().map(|&i| truth.patterns[i].clone()).collect(),
                ..truth.clone()
            }),
            None => Ok(ds),
        }
    }
}

/// Draws `count` independent activity patterns under `theta`.
pub fn generate_patterns(theta: &Theta, count: usize, seed: u64) -> Vec<ActivityPattern> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = theta.node_count();
    (0..count)
        .map(|_| {
            let mut u = rng.random::<f64>();
            let mut initiator = n - 1;
            for (j, &fj) in theta.f().iter().enumerate() {
                if u < fj {
                    initiator = j;
                    break;
                }
                u -= fj;
            }
            let row = &theta.r()[initiator * n..(initiator + 1) * n];
            let responders = row.iter().enumerate().filter_map(|(k, &p)| {
                let hit = if k == initiator || p <= 0.0 {
                    false
                } else if p >= 1.0 {
                    true
                } else {
                    rng.random::<f64>() < p
                };
                hit.then_some(k)
            });
            let responders: Vec<usize> = responders.collect();
            ActivityPattern::new(initiator, responders)
        })
        .collect()
}

/// Deletes the covert nodes from every pattern and re-indexes the overt
/// nodes densely in ascending order of their network index. Fully covert
/// patterns become empty logs and are kept.
pub fn project_logs(graph: &Graph, patterns: Vec<ActivityPattern>, covert: &[usize]) -> Result<LogDataset> {
    let m = graph.node_count();
    let mut is_covert = vec![false; m];
    for &c in covert {
        if c >= m {
            return Err(Error::NodeOutOfRange {
                index: c,
                node_count: m,
            });
        }
        is_covert[c] = true;
    }
    let overt_nodes: Vec<usize> = (0..m).filter(|&j| !is_covert[j]).collect();
    let mut overt_index = vec![usize::MAX; m];
    for (o, &j) in overt_nodes.iter().enumerate() {
        overt_index[j] = o;
    }
    if let Some(&bad) = patterns.iter().flat_map(|p| p.members()).find(|&&j| j >= m) {
        return Err(Error::NodeOutOfRange {
            index: bad,
            node_count: m,
        });
    }
    let logs = patterns
        .iter()
        .map(|p| SurveillanceLog::new(p.members().iter().filter(|&&j| !is_covert[j]).map(|&j| overt_index[j])))
        .collect();
    let labels = graph.node_labels();
    let overt_labels = overt_nodes.iter().map(|&j| labels[j].clone()).collect();
    LogDataset::with_labels(overt_labels, logs)?.with_ground_truth(GroundTruth {
        node_labels: labels,
        overt_nodes,
        patterns,
    })
}

/// Number of logs altered by covert-node deletion.
pub fn count_targets(ds: &LogDataset) -> Result<usize> {
    Ok(ds.targets()?.iter().filter(|&&t| t).count())
}
