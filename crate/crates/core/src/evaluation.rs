//! Precision, recall and F-measure as functions of the retrieved count, with
//! the oracle upper bound and the random-retrieval expectation.

use crate::error::{Error, Result};
use crate::ranking::RankingResult;
use crate::transmission::LogDataset;

/// Precision, recall and F over `D_r = 1..=D`; index `t` holds `D_r = t + 1`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Curves {
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
    pub f_measure: Vec<f64>,
}

impl Curves {
    fn with_capacity(d: usize) -> Self {
        Self {
            precision: Vec::with_capacity(d),
            recall: Vec::with_capacity(d),
            f_measure: Vec::with_capacity(d),
        }
    }

    fn push(&mut self, p: f64, r: f64) {
        self.precision.push(p);
        self.recall.push(r);
        self.f_measure.push(f_measure(p, r));
    }

    pub fn len(&self) -> usize {
        self.precision.len()
    }

    pub fn is_empty(&self) -> bool {
        self.precision.is_empty()
    }

    pub fn peak_f(&self) -> f64 {
        self.f_measure.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalCurves {
    pub actual: Curves,
    pub target_count: usize,
    pub theoretical_limit: Curves,
    pub random_baseline: Curves,
}

impl EvalCurves {
    pub fn log_count(&self) -> usize {
        self.actual.len()
    }
}

/// Harmonic mean of precision and recall; 0 when both are 0.
pub fn f_measure(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

fn check_counts(d: usize, targets: usize) -> Result<()> {
    if targets == 0 {
        return Err(Error::NoTargets);
    }
    if targets > d {
        return Err(Error::InvalidConfig(format!("{targets} targets among {d} logs")));
    }
    Ok(())
}

/// Curves for a retrieval order given the relevance of every log.
pub fn evaluate_order(order: &[usize], relevant: &[bool]) -> Result<Curves> {
    if order.len() != relevant.len() {
        return Err(Error::DimensionMismatch {
            expected: relevant.len(),
            actual: order.len(),
        });
    }
    let targets = relevant.iter().filter(|&&t| t).count();
    check_counts(relevant.len(), targets)?;
    let mut curves = Curves::with_capacity(order.len());
    let mut hits = 0usize;
    for (t, &i) in order.iter().enumerate() {
        if relevant[i] {
            hits += 1;
        }
        curves.push(hits as f64 / (t + 1) as f64, hits as f64 / targets as f64);
    }
    Ok(curves)
}

pub fn evaluate(ranking: &RankingResult, ds: &LogDataset) -> Result<EvalCurves> {
    let relevant = ds.targets()?;
    let actual = evaluate_order(ranking.order(), relevant)?;
    let d = relevant.len();
    let targets = relevant.iter().filter(|&&t| t).count();
    Ok(EvalCurves {
        actual,
        target_count: targets,
        theoretical_limit: theoretical_limit(d, targets)?,
        random_baseline: random_baseline(d, targets)?,
    })
}

/// Curves of an oracle that retrieves every target log first.
pub fn theoretical_limit(d: usize, targets: usize) -> Result<Curves> {
    check_counts(d, targets)?;
    let mut curves = Curves::with_capacity(d);
    for retrieved in 1..=d {
        let hits = retrieved.min(targets) as f64;
        curves.push(hits / retrieved as f64, hits / targets as f64);
    }
    Ok(curves)
}

/// Expected curves of a uniformly random retrieval order.
pub fn random_baseline(d: usize, targets: usize) -> Result<Curves> {
    check_counts(d, targets)?;
    let mut curves = Curves::with_capacity(d);
    let p = targets as f64 / d as f64;
    for retrieved in 1..=d {
        curves.push(p, retrieved as f64 / d as f64);
    }
    Ok(curves)
}
