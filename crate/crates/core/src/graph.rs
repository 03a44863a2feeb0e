//! Undirected ground-truth network and its topological statistics.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A node reference: dense index plus an optional human-readable label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeId {
    pub index: usize,
    pub label: Option<String>,
}

/// Simple undirected graph over nodes `0..node_count`.
///
/// Immutable once built. Edges are stored normalized (`a < b`) and sorted, so
/// two graphs with the same edge set compare equal regardless of the order
/// the edges were supplied in.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    cluster_of: Option<Vec<usize>>,
}

/// Average degree, average clustering coefficient and degree Gini coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub avg_degree: f64,
    pub avg_clustering: f64,
    pub gini: f64,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidGraph("graph must have at least one node".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for end in [a, b] {
                if end >= node_count {
                    return Err(Error::NodeOutOfRange { index: end, node_count });
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {a}-{b}")));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); node_count];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            node_count,
            edges,
            adjacency,
            labels: None,
            cluster_of: None,
        })
    }

    /// Attaches unique, whitespace-free labels to every node.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count {
            return Err(Error::DimensionMismatch {
                expected: self.node_count,
                actual: labels.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidGraph(format!("invalid node label {label:?}")));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate node label {label:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Attaches a cluster index to every node.
    pub fn with_clusters(mut self, cluster_of: Vec<usize>) -> Result<Self> {
        if cluster_of.len() != self.node_count {
            return Err(Error::DimensionMismatch {
                expected: self.node_count,
                actual: cluster_of.len(),
            });
        }
        self.cluster_of = Some(cluster_of);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Normalized (`a < b`), sorted edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, j: usize) -> Result<&[usize]> {
        self.check(j)?;
        Ok(&self.adjacency[j])
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.node_count && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn cluster_of(&self) -> Option<&[usize]> {
        self.cluster_of.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of node `j`, falling back to its decimal index.
    pub fn label(&self, j: usize) -> String {
        match &self.labels {
            Some(labels) => labels[j].clone(),
            None => j.to_string(),
        }
    }

    /// Labels of every node, falling back to decimal indices.
    pub fn node_labels(&self) -> Vec<String> {
        (0..self.node_count).map(|j| self.label(j)).collect()
    }

    pub fn node(&self, j: usize) -> Result<NodeId> {
        self.check(j)?;
        Ok(NodeId {
            index: j,
            label: self.labels.as_ref().map(|l| l[j].clone()),
        })
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&j| j < self.node_count),
        }
    }

    fn check(&self, j: usize) -> Result<()> {
        if j >= self.node_count {
            Err(Error::NodeOutOfRange {
                index: j,
                node_count: self.node_count,
            })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, j: usize) -> Result<usize> {
        self.check(j)?;
        Ok(self.adjacency[j].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Watts-Strogatz local clustering coefficient; 0 for nodes of degree < 2.
    pub fn clustering_coefficient(&self, j: usize) -> Result<f64> {
        self.check(j)?;
        let nbrs = &self.adjacency[j];
        let k = nbrs.len();
        if k < 2 {
            return Ok(0.0);
        }
        let mut links = 0usize;
        for (x, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[x + 1..] {
                if self.has_edge(a, b) {
                    links += 1;
                }
            }
        }
        Ok(links as f64 / (k * (k - 1) / 2) as f64)
    }

    pub fn gini_degree(&self) -> f64 {
        gini(&self.degrees())
    }

    pub fn stats(&self) -> GraphStats {
        let m = self.node_count as f64;
        let avg_clustering = (0..self.node_count)
            .map(|j| self.clustering_coefficient(j).expect("index in range"))
            .sum::<f64>()
            / m;
        GraphStats {
            avg_degree: 2.0 * self.edges.len() as f64 / m,
            avg_clustering,
            gini: self.gini_degree(),
        }
    }
}

/// Gini coefficient of a degree sequence: the mean absolute pairwise
/// difference over twice the mean. Zero for empty, constant or all-zero input.
pub fn gini(degrees: &[usize]) -> f64 {
    let n = degrees.len();
    let total: usize = degrees.iter().sum();
    if n == 0 || total == 0 {
        return 0.0;
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    // sum_{j,k} |x_j - x_k| = 2 * sum_i (2i - n + 1) x_(i) over the ascending order
    let pair_sum: i128 = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| (2 * i as i128 - n as i128 + 1) * x as i128)
        .sum::<i128>()
        * 2;
    let mean = total as f64 / n as f64;
    pair_sum as f64 / (2.0 * (n * n) as f64 * mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn gini_pairwise(xs: &[usize]) -> f64 {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<usize>() as f64 / n;
        if mean == 0.0 {
            return 0.0;
        }
        let mut s = 0.0;
        for &a in xs {
            for &b in xs {
                s += (a as f64 - b as f64).abs();
            }
        }
        s / (2.0 * n * n * mean)
    }

    #[test]
    fn degree_examples() {
        let g = triangle();
        for j in 0..3 {
            assert_eq!(g.degree(j).unwrap(), 2);
        }
        let empty = Graph::new(4, []).unwrap();
        assert_eq!(empty.degree(3).unwrap(), 0);
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.degree(1).unwrap(), 2);
        assert!(matches!(path.degree(3), Err(Error::NodeOutOfRange { index: 3, .. })));
    }

    #[test]
    fn clustering_examples() {
        let g = triangle();
        assert_eq!(g.clustering_coefficient(1).unwrap(), 1.0);
        let star = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.clustering_coefficient(0).unwrap(), 0.0);
        assert_eq!(star.clustering_coefficient(1).unwrap(), 0.0);
        // 4-cycle a-b-c-d-a plus chord a-c
        let chorded = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!((chorded.clustering_coefficient(0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(chorded.clustering_coefficient(9).is_err());
    }

    #[test]
    fn gini_examples() {
        let cycle = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(cycle.gini_degree(), 0.0);
        assert_eq!(gini(&[1, 1, 1, 1]), 0.0);
        assert_eq!(gini(&[0, 4]), 0.5);
        assert_eq!(gini(&[0, 0, 0]), 0.0);
    }

    #[test]
    fn triangle_stats() {
        let s = triangle().stats();
        assert_eq!(s.avg_degree, 2.0);
        assert_eq!(s.avg_clustering, 1.0);
        assert_eq!(s.gini, 0.0);
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(0, []).is_err());
        let g = triangle();
        assert!(g.clone().with_labels(vec!["a".into(), "a".into(), "b".into()]).is_err());
        assert!(g
            .clone()
            .with_labels(vec!["a".into(), "b c".into(), "d".into()])
            .is_err());
        assert!(g.with_clusters(vec![0, 1]).is_err());
    }

    #[test]
    fn labels_and_lookup() {
        let g = triangle()
            .with_labels(vec!["x".into(), "y".into(), "z".into()])
            .unwrap();
        assert_eq!(g.index_of("z"), Some(2));
        assert_eq!(g.node(1).unwrap().label.as_deref(), Some("y"));
        let unlabeled = triangle();
        assert_eq!(unlabeled.index_of("2"), Some(2));
        assert_eq!(unlabeled.index_of("3"), None);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..14).prop_flat_map(|n| {
            proptest::collection::btree_set((0..n, 0..n), 0..40).prop_map(move |pairs| {
                let edges: BTreeSet<_> = pairs
                    .into_iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (a.min(b), a.max(b)))
                    .collect();
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn degree_sum_is_twice_edge_count(g in arb_graph()) {
            prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
            let s = g.stats();
            prop_assert!((s.avg_degree - 2.0 * g.edge_count() as f64 / g.node_count() as f64).abs() < 1e-12);
            prop_assert!(s.avg_degree.is_finite() && s.avg_clustering.is_finite() && s.gini.is_finite());
        }

        #[test]
        fn gini_matches_pairwise_definition(xs in proptest::collection::vec(0usize..30, 1..25)) {
            let g = gini(&xs);
            prop_assert!((g - gini_pairwise(&xs)).abs() < 1e-12);
            prop_assert!((0.0..1.0).contains(&g));
        }

        #[test]
        fn clustering_invariant_under_relabeling(g in arb_graph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let n = g.node_count();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let h = Graph::new(n, g.edges().iter().map(|&(a, b)| (perm[a], perm[b]))).unwrap();
            for (j, &pj) in perm.iter().enumerate() {
                prop_assert!((g.clustering_coefficient(j).unwrap() - h.clustering_coefficient(pj).unwrap()).abs() < 1e-15);
            }
        }

        #[test]
        fn disjoint_union_preserves_averages(g in arb_graph()) {
            let n = g.node_count();
            let doubled = Graph::new(
                2 * n,
                g.edges().iter().flat_map(|&(a, b)| [(a, b), (a + n, b + n)]),
            ).unwrap();
            let (s, d) = (g.stats(), doubled.stats());
            prop_assert!((s.avg_degree - d.avg_degree).abs() < 1e-12);
            prop_assert!((s.avg_clustering - d.avg_clustering).abs() < 1e-12);
        }
    }
}
