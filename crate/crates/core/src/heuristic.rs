//! Clustering heuristic: group observed nodes by Jaccard co-occurrence with
//! k-medoids, then rank each log by how many clusters it touches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ranking::RankingResult;
use crate::transmission::LogDataset;

pub const KMEDOIDS_MAX_ITERATIONS: usize = 100;

/// Node-to-cluster assignment produced by [`kmedoids`].
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Cluster of every overt node; `None` for nodes that never appear.
    pub cluster_of: Vec<Option<usize>>,
    pub medoids: Vec<usize>,
    /// Total within-cluster distance after each assignment pass.
    pub cost_history: Vec<f64>,
}

impl Clustering {
    pub fn cluster_count(&self) -> usize {
        self.medoids.len()
    }

    pub fn members(&self, l: usize) -> impl Iterator<Item = usize> + '_ {
        self.cluster_of
            .iter()
            .enumerate()
            .filter_map(move |(j, c)| (*c == Some(l)).then_some(j))
    }
}

fn occurrences(ds: &LogDataset) -> Vec<Vec<usize>> {
    let mut occ = vec![Vec::new(); ds.overt_count()];
    for (i, log) in ds.logs().iter().enumerate() {
        for &j in log.members() {
            occ[j].push(i);
        }
    }
    occ
}

fn jaccard_sorted(a: &[usize], b: &[usize]) -> f64 {
    let (mut x, mut y, mut both) = (0, 0, 0usize);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                both += 1;
                x += 1;
                y += 1;
            }
        }
    }
    let either = a.len() + b.len() - both;
    if either == 0 {
        0.0
    } else {
        both as f64 / either as f64
    }
}

/// Jaccard coefficient of the occurrence sets of two overt nodes; 0 when
/// neither node ever appears.
pub fn jaccard(ds: &LogDataset, a: usize, b: usize) -> f64 {
    let occ = |j: usize| -> Vec<usize> { (0..ds.len()).filter(|&i| ds.contains(i, j)).collect() };
    jaccard_sorted(&occ(a), &occ(b))
}

/// k-medoids over the nodes that appear in at least one log, with distance
/// `1 - jaccard`. Medoids start as `clusters` distinct nodes drawn with
/// `seed`; assignment and medoid update alternate until the medoids stop
/// moving or [`KMEDOIDS_MAX_ITERATIONS`] is reached.
pub fn kmedoids(ds: &LogDataset, clusters: usize, seed: u64) -> Result<Clustering> {
    let occ = occurrences(ds);
    let nodes: Vec<usize> = (0..ds.overt_count()).filter(|&j| !occ[j].is_empty()).collect();
    let n = nodes.len();
    if clusters == 0 || clusters > n {
        return Err(Error::TooManyClusters {
            requested: clusters,
            available: n,
        });
    }
    let mut dist = vec![0.0; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let d = 1.0 - jaccard_sorted(&occ[nodes[a]], &occ[nodes[b]]);
            dist[a * n + b] = d;
            dist[b * n + a] = d;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut medoids: Vec<usize> = rand::seq::index::sample(&mut rng, n, clusters).into_vec();
    let mut assign = vec![0usize; n];
    let mut cost_history = Vec::new();

    for _ in 0..KMEDOIDS_MAX_ITERATIONS {
        let mut cost = 0.0;
        for a in 0..n {
            let mut best = 0;
            for l in 1..clusters {
                if dist[a * n + medoids[l]] < dist[a * n + medoids[best]] {
                    best = l;
                }
            }
            if let Some(own) = medoids.iter().position(|&m| m == a) {
                best = own;
            }
            assign[a] = best;
            cost += dist[a * n + medoids[best]];
        }
        cost_history.push(cost);

        let mut moved = false;
        for (l, medoid) in medoids.iter_mut().enumerate() {
            let members: Vec<usize> = (0..n).filter(|&a| assign[a] == l).collect();
            let spread = |c: usize| members.iter().map(|&a| dist[c * n + a]).sum::<f64>();
            let mut best = *medoid;
            let mut best_spread = spread(best);
            for &c in &members {
                let s = spread(c);
                if s < best_spread {
                    best = c;
                    best_spread = s;
                }
            }
            if best != *medoid {
                *medoid = best;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }

    let mut cluster_of = vec![None; ds.overt_count()];
    for (a, &j) in nodes.iter().enumerate() {
        cluster_of[j] = Some(assign[a]);
    }
    Ok(Clustering {
        cluster_of,
        medoids: medoids.into_iter().map(|a| nodes[a]).collect(),
        cost_history,
    })
}

/// Correlation between log `i` and cluster `l`: the largest
/// `1 / appearance count` over cluster members present in the log.
pub fn cluster_weight(ds: &LogDataset, clustering: &Clustering, i: usize, l: usize) -> f64 {
    let counts = ds.appearance_counts();
    clustering
        .members(l)
        .filter(|&j| ds.contains(i, j))
        .map(|j| 1.0 / counts[j] as f64)
        .fold(0.0, f64::max)
}

/// Scores every log by the number of clusters it intersects.
pub fn heuristic_scores(ds: &LogDataset, clustering: &Clustering) -> Vec<f64> {
    ds.logs()
        .iter()
        .map(|log| {
            let mut touched = vec![false; clustering.cluster_count()];
            for &j in log.members() {
                if let Some(l) = clustering.cluster_of[j] {
                    touched[l] = true;
                }
            }
            touched.iter().filter(|&&t| t).count() as f64
        })
        .collect()
}

pub fn heuristic_rank(ds: &LogDataset, clusters: usize, seed: u64) -> Result<RankingResult> {
    let clustering = kmedoids(ds, clusters, seed)?;
    Ok(RankingResult::from_scores(heuristic_scores(ds, &clustering)))
}
