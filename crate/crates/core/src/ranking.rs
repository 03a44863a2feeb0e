/// Logs ordered from most to least suspicious.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingResult {
    order: Vec<usize>,
    scores: Vec<f64>,
}

impl RankingResult {
    /// Sorts log indices by non-increasing score; equal scores keep ascending
    /// log index. `+inf` ranks first.
    pub fn from_scores(scores: Vec<f64>) -> Self {
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        Self { order, scores }
    }

    /// `order()[t]` is the log retrieved at position `t` (0-based).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Scores indexed by log, not by rank.
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn top(&self) -> Option<usize> {
        self.order.first().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ties_keep_index_order() {
        let r = RankingResult::from_scores(vec![1.0, 3.0, 1.0, f64::INFINITY, 3.0]);
        assert_eq!(r.order(), &[3, 1, 4, 0, 2]);
        assert_eq!(r.top(), Some(3));
    }

    proptest! {
        #[test]
        fn order_is_sorted_permutation(scores in proptest::collection::vec(0u8..5, 0..40)) {
            let r = RankingResult::from_scores(scores.iter().map(|&s| s as f64).collect());
            let mut seen = r.order().to_vec();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..scores.len()).collect::<Vec<_>>());
            for w in r.order().windows(2) {
                let (a, b) = (r.scores()[w[0]], r.scores()[w[1]]);
                prop_assert!(a > b || (a == b && w[0] < w[1]));
            }
        }
    }
}
