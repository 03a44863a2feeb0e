//! Clustered preferential-attachment network generator.
//!
//! Nodes are assigned to clusters round-robin. The first `cluster_count` nodes
//! (one per cluster) seed the process and receive `initial_intercluster_edges`
//! random links among themselves. Every later node attaches
//! `edges_per_new_node` links, each to an existing node chosen with weight
//! `contrast * (C - 1) * K` inside its own cluster and `K` outside it, where
//! `K` is the current degree (1 for isolated nodes).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisConfig {
    pub node_count: usize,
    pub cluster_count: usize,
    /// Cluster contrast: intra-cluster attachment weight multiplier.
    pub contrast: f64,
    pub edges_per_new_node: usize,
    pub initial_intercluster_edges: usize,
    pub seed: u64,
}

impl SynthesisConfig {
    /// Defaults tuned to the 101-node, 5-cluster networks with contrast 50.
    pub fn clustered(seed: u64) -> Self {
        Self {
            node_count: 101,
            cluster_count: 5,
            contrast: 50.0,
            edges_per_new_node: 2,
            initial_intercluster_edges: 5,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.cluster_count == 0 {
            return bad("cluster count must be positive".into());
        }
        if self.node_count < 2 * self.cluster_count {
            return bad(format!(
                "{} nodes cannot seed {} clusters (need at least {})",
                self.node_count,
                self.cluster_count,
                2 * self.cluster_count
            ));
        }
        if self.edges_per_new_node == 0 {
            return bad("edges per new node must be positive".into());
        }
        if !(self.contrast.is_finite() && self.contrast > 0.0) {
            return bad(format!("contrast must be positive, got {}", self.contrast));
        }
        Ok(())
    }
}

pub fn synthesize(cfg: &SynthesisConfig) -> Result<Graph> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let m = cfg.node_count;
    let c = cfg.cluster_count;
    let cluster_of: Vec<usize> = (0..m).map(|j| j % c).collect();
    let intra_factor = if c == 1 { 1.0 } else { cfg.contrast * (c - 1) as f64 };

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut edges = Vec::new();
    let mut connect = |adjacency: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adjacency[a].push(b);
        adjacency[b].push(a);
        edges.push((a, b));
    };

    // random links among the seed nodes, all in distinct clusters
    let mut seed_pairs: Vec<(usize, usize)> = (0..c).flat_map(|a| (a + 1..c).map(move |b| (a, b))).collect();
    for _ in 0..cfg.initial_intercluster_edges.min(seed_pairs.len()) {
        let (a, b) = seed_pairs.swap_remove(rng.random_range(0..seed_pairs.len()));
        connect(&mut adjacency, a, b);
    }

    let mut weights = Vec::with_capacity(m);
    for k in c..m {
        let home = cluster_of[k];
        weights.clear();
        weights.extend((0..k).map(|j| {
            let degree = adjacency[j].len().max(1) as f64;
            if cluster_of[j] == home {
                intra_factor * degree
            } else {
                degree
            }
        }));
        let total: f64 = weights.iter().sum();
        let mut chosen: Vec<usize> = Vec::with_capacity(cfg.edges_per_new_node);
        for _ in 0..cfg.edges_per_new_node {
            // redraw duplicates up to M times, then give up on this link
            for _ in 0..m {
                let target = draw(&weights, total, &mut rng);
                if !chosen.contains(&target) {
                    chosen.push(target);
                    break;
                }
            }
        }
        // attach after drawing so every link of node k sees the same weights
        for target in chosen {
            connect(&mut adjacency, k, target);
        }
    }

    Graph::new(m, edges)?.with_clusters(cluster_of)
}

fn draw(weights: &[f64], total: f64, rng: &mut impl Rng) -> usize {
    let mut u = rng.random::<f64>() * total;
    for (j, &w) in weights.iter().enumerate() {
        if u < w {
            return j;
        }
        u -= w;
    }
    weights.len() - 1
}
