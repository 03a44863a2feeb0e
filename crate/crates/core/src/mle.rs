//! Maximum-likelihood fit of the hub-and-spoke model to surveillance logs and
//! anomaly scoring of each log by its improbability under the fit.
//!
//! For a log `d` over the overt nodes,
//!
//! ```text
//! p(d | θ) = Σ_{j ∈ d} f_j Π_{k ≠ j} q_jk,   q_jk = r_jk if k ∈ d else 1 - r_jk
//! ```
//!
//! All products are accumulated in the log domain; logs with hundreds of
//! absent nodes would otherwise underflow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::RankingResult;
use crate::transmission::{LogDataset, Theta};

/// Step halvings tried before an iteration is declared stalled.
const MAX_HALVINGS: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub learning_rate: f64,
    pub max_iterations: usize,
    /// Stop once an accepted step improves the log-likelihood by less than this.
    pub convergence_tol: f64,
    /// Lower bound on every `f_j` and on every `r_jk`, `1 - r_jk`.
    pub parameter_floor: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.01,
            max_iterations: 300,
            convergence_tol: 1e-6,
            parameter_floor: 1e-6,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(self.learning_rate.is_finite() && self.learning_rate >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "learning rate must be non-negative, got {}",
                self.learning_rate
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max iterations must be positive".into()));
        }
        if !positive(self.convergence_tol) {
            return Err(Error::InvalidConfig("convergence tolerance must be positive".into()));
        }
        if !(positive(self.parameter_floor) && self.parameter_floor < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "parameter floor must lie in (0, 0.5), got {}",
                self.parameter_floor
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub theta_hat: Theta,
    /// Log-likelihood of the non-empty logs: the starting value, then one
    /// entry per accepted iteration.
    pub log_likelihood_trace: Vec<f64>,
    pub converged: bool,
}

impl FitResult {
    pub fn iterations(&self) -> usize {
        self.log_likelihood_trace.len().saturating_sub(1)
    }

    pub fn final_log_likelihood(&self) -> f64 {
        *self
            .log_likelihood_trace
            .last()
            .expect("trace holds the starting value")
    }
}

/// Partial derivatives of the log-likelihood; `r` is row-major `n x n` with a
/// zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub r: Vec<f64>,
    pub f: Vec<f64>,
}

fn check_row(theta: &Theta, row: &[bool]) -> Result<()> {
    if row.len() != theta.node_count() {
        return Err(Error::DimensionMismatch {
            expected: theta.node_count(),
            actual: row.len(),
        });
    }
    Ok(())
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|&t| (t - max).exp()).sum::<f64>().ln()
}

/// `log f_j + Σ_{k≠j} log q_jk` for every member `j` of the log.
fn initiator_terms(theta: &Theta, row: &[bool], members: &[usize]) -> Vec<f64> {
    let n = theta.node_count();
    let r = theta.r();
    members
        .iter()
        .map(|&j| {
            let rj = &r[j * n..(j + 1) * n];
            let mut acc = theta.initiation(j).ln();
            for k in 0..n {
                if k != j {
                    acc += if row[k] { rj[k].ln() } else { (1.0 - rj[k]).ln() };
                }
            }
            acc
        })
        .collect()
}

fn members_of(row: &[bool]) -> Vec<usize> {
    row.iter().enumerate().filter_map(|(k, &b)| b.then_some(k)).collect()
}

/// `log p(d | θ)` for one row of the membership matrix; `-inf` for an empty
/// log or when no member can have initiated it.
pub fn log_probability(theta: &Theta, row: &[bool]) -> Result<f64> {
    check_row(theta, row)?;
    let members = members_of(row);
    Ok(log_sum_exp(&initiator_terms(theta, row, &members)))
}

fn check_dataset(theta: &Theta, ds: &LogDataset) -> Result<()> {
    if ds.overt_count() != theta.node_count() {
        return Err(Error::DimensionMismatch {
            expected: theta.node_count(),
            actual: ds.overt_count(),
        });
    }
    Ok(())
}

/// Sum of per-log log-probabilities; `-inf` as soon as one log is impossible.
pub fn log_likelihood(theta: &Theta, ds: &LogDataset) -> Result<f64> {
    check_dataset(theta, ds)?;
    log_likelihood_over(theta, ds, 0..ds.len())
}

fn log_likelihood_over(theta: &Theta, ds: &LogDataset, logs: impl IntoIterator<Item = usize>) -> Result<f64> {
    let mut total = 0.0;
    for i in logs {
        total += log_probability(theta, ds.row(i))?;
    }
    Ok(total)
}

/// Analytic gradient of [`log_likelihood`] with respect to every `r_nm`
/// (`n ≠ m`) and `f_n`, treating all entries as free coordinates.
pub fn gradients(theta: &Theta, ds: &LogDataset) -> Result<Gradients> {
    check_dataset(theta, ds)?;
    gradients_over(theta, ds, 0..ds.len())
}

fn gradients_over(theta: &Theta, ds: &LogDataset, logs: impl IntoIterator<Item = usize>) -> Result<Gradients> {
    let n = theta.node_count();
    let r = theta.r();
    let mut grad_r = vec![0.0; n * n];
    let mut grad_f = vec![0.0; n];
    for i in logs {
        let row = ds.row(i);
        let members = members_of(row);
        let terms = initiator_terms(theta, row, &members);
        let log_p = log_sum_exp(&terms);
        if log_p == f64::NEG_INFINITY {
            return Err(Error::ZeroProbability(i));
        }
        for (&nn, &term) in members.iter().zip(&terms) {
            // P_in / p_i, and f_n P_in / p_i (the initiator responsibility)
            let ratio = (term - theta.initiation(nn).ln() - log_p).exp();
            grad_f[nn] += ratio;
            let resp = (term - log_p).exp();
            let rn = &r[nn * n..(nn + 1) * n];
            let gn = &mut grad_r[nn * n..(nn + 1) * n];
            for m in 0..n {
                if m == nn {
                    continue;
                }
                let q = if row[m] { rn[m] } else { 1.0 - rn[m] };
                let sign = if row[m] { 1.0 } else { -1.0 };
                if q > 0.0 {
                    gn[m] += sign * resp / q;
                } else {
                    // P_in vanishes with q; take the product over k ≠ m directly
                    let mut acc = theta.initiation(nn).ln() - log_p;
                    for k in 0..n {
                        if k != nn && k != m {
                            acc += if row[k] { rn[k].ln() } else { (1.0 - rn[k]).ln() };
                        }
                    }
                    gn[m] += sign * acc.exp();
                }
            }
        }
    }
    Ok(Gradients { r: grad_r, f: grad_f })
}

/// Euclidean projection onto `{x : x_j >= floor, Σ x_j = 1}`.
pub(crate) fn project_floored_simplex(v: &[f64], floor: f64) -> Vec<f64> {
    let n = v.len();
    let budget = 1.0 - n as f64 * floor;
    let shifted: Vec<f64> = v.iter().map(|&x| x - floor).collect();
    let mut sorted = shifted.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut tau = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let t = (cumulative - budget) / (i + 1) as f64;
        if u - t > 0.0 {
            tau = t;
        }
    }
    shifted.iter().map(|&x| (x - tau).max(0.0) + floor).collect()
}

fn initial_theta(ds: &LogDataset, active: &[usize], floor: f64) -> Theta {
    let n = ds.overt_count();
    let mut appear = vec![0.0; n];
    let mut cooc = vec![0.0; n * n];
    for &i in active {
        let members = ds.logs()[i].members();
        for &j in members {
            appear[j] += 1.0;
            for &k in members {
                if k != j {
                    cooc[j * n + k] += 1.0;
                }
            }
        }
    }
    let total: f64 = appear.iter().sum();
    let f = project_floored_simplex(&appear.iter().map(|&a| a / total).collect::<Vec<_>>(), floor);
    let mut r = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            if k != j {
                let v = if appear[j] > 0.0 {
                    cooc[j * n + k] / appear[j]
                } else {
                    0.0
                };
                r[j * n + k] = v.clamp(floor, 1.0 - floor);
            }
        }
    }
    Theta::from_parts(f, r)
}

fn ascent_step(theta: &Theta, grad: &Gradients, step: f64, floor: f64) -> Theta {
    let n = theta.node_count();
    let f: Vec<f64> = theta.f().iter().zip(&grad.f).map(|(&x, &g)| x + step * g).collect();
    let f = project_floored_simplex(&f, floor);
    let mut r: Vec<f64> = theta
        .r()
        .iter()
        .zip(&grad.r)
        .map(|(&x, &g)| (x + step * g).clamp(floor, 1.0 - floor))
        .collect();
    for j in 0..n {
        r[j * n + j] = 0.0;
    }
    Theta::from_parts(f, r)
}

/// Projected gradient ascent on the log-likelihood of the non-empty logs.
///
/// The first iteration tries a step of `learning_rate`. A trial step is
/// halved until the likelihood does not decrease, so the trace is
/// non-decreasing; after an accepted step the next trial doubles it, never
/// beyond `learning_rate`.
pub fn fit(ds: &LogDataset, cfg: &FitConfig) -> Result<FitResult> {
    cfg.validate()?;
    let n = ds.overt_count();
    if n as f64 * cfg.parameter_floor >= 1.0 {
        return Err(Error::InvalidConfig(format!(
            "parameter floor {} too large for {n} nodes",
            cfg.parameter_floor
        )));
    }
    let active: Vec<usize> = (0..ds.len()).filter(|&i| !ds.logs()[i].is_empty()).collect();
    if active.is_empty() {
        return Err(Error::AllLogsEmpty);
    }
    let floor = cfg.parameter_floor;
    let mut theta = initial_theta(ds, &active, floor);
    let mut current = log_likelihood_over(&theta, ds, active.iter().copied())?;
    let mut trace = vec![current];
    let mut converged = false;

    let mut step = cfg.learning_rate;
    for _ in 0..cfg.max_iterations {
        let grad = gradients_over(&theta, ds, active.iter().copied())?;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let candidate = ascent_step(&theta, &grad, step, floor);
            let value = log_likelihood_over(&candidate, ds, active.iter().copied())?;
            if value >= current {
                accepted = Some((candidate, value));
                break;
            }
            step *= 0.5;
        }
        let Some((candidate, value)) = accepted else {
            converged = true;
            break;
        };
        let gain = value - current;
        step = (step * 2.0).min(cfg.learning_rate);
        theta = candidate;
        current = value;
        trace.push(current);
        if gain < cfg.convergence_tol {
            converged = true;
            break;
        }
    }

    Ok(FitResult {
        theta_hat: theta,
        log_likelihood_trace: trace,
        converged,
    })
}

/// Suspiciousness `-log p(d_i | θ̂)`; empty or impossible logs score `+inf`.
pub fn anomaly_scores(theta: &Theta, ds: &LogDataset) -> Result<Vec<f64>> {
    check_dataset(theta, ds)?;
    (0..ds.len())
        .map(|i| log_probability(theta, ds.row(i)).map(|lp| -lp))
        .collect()
}

pub fn score_logs(fit: &FitResult, ds: &LogDataset) -> Result<RankingResult> {
    Ok(RankingResult::from_scores(anomaly_scores(&fit.theta_hat, ds)?))
}

/// Fits and scores in one call.
pub fn mle_rank(ds: &LogDataset, cfg: &FitConfig) -> Result<(FitResult, RankingResult)> {
    let fitted = fit(ds, cfg)?;
    let ranking = score_logs(&fitted, ds)?;
    Ok((fitted, ranking))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::transmission::{generate_patterns, project_logs, theta_from_graph};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_theta(n: usize, rng: &mut impl Rng) -> Theta {
        let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..0.9)).collect();
        let total: f64 = raw.iter().sum();
        let r = (0..n * n).map(|_| rng.random_range(0.1..0.9)).collect();
        Theta::new(raw.iter().map(|x| x / total).collect(), r).unwrap()
    }

    /// Sums the mass of every (initiator, responder subset) outcome that
    /// reproduces the log exactly.
    fn enumerated_probability(theta: &Theta, row: &[bool]) -> f64 {
        let n = theta.node_count();
        let mut total = 0.0;
        for j in 0..n {
            let others: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            for mask in 0u32..(1 << others.len()) {
                let mut p = theta.initiation(j);
                let mut outcome = vec![false; n];
                outcome[j] = true;
                for (bit, &k) in others.iter().enumerate() {
                    let joined = mask & (1 << bit) != 0;
                    outcome[k] = joined;
                    let r = theta.transmission(j, k);
                    p *= if joined { r } else { 1.0 - r };
                }
                if outcome == row {
                    total += p;
                }
            }
        }
        total
    }

    fn all_rows(n: usize) -> Vec<Vec<bool>> {
        (0u32..(1 << n))
            .map(|mask| (0..n).map(|k| mask & (1 << k) != 0).collect())
            .collect()
    }

    #[test]
    fn certain_pair_has_probability_one() {
        let t = Theta::new(vec![0.5, 0.5], vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(log_probability(&t, &[true, true]).unwrap(), 0.0);
        assert_eq!(log_probability(&t, &[false, false]).unwrap(), f64::NEG_INFINITY);
        assert_eq!(log_probability(&t, &[true, false]).unwrap(), f64::NEG_INFINITY);
        assert!(log_probability(&t, &[true]).is_err());
    }

    #[test]
    fn probability_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 1..=5 {
            for _ in 0..5 {
                let t = random_theta(n, &mut rng);
                for row in all_rows(n) {
                    let expected = enumerated_probability(&t, &row);
                    let got = log_probability(&t, &row).unwrap().exp();
                    assert!((got - expected).abs() < 1e-12, "n={n} row={row:?}");
                }
            }
        }
    }

    #[test]
    fn likelihood_is_additive_over_logs() {
        let t = Theta::new(vec![0.5, 0.5], vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let one = LogDataset::from_members(2, &[&[0, 1]]).unwrap();
        assert_eq!(log_likelihood(&t, &one).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_theta(4, &mut rng);
        let single = LogDataset::from_members(4, &[&[0, 2, 3]]).unwrap();
        let double = LogDataset::from_members(4, &[&[0, 2, 3], &[0, 2, 3]]).unwrap();
        let a = log_likelihood(&t, &single).unwrap();
        assert_eq!(log_likelihood(&t, &double).unwrap(), 2.0 * a);
        let mixed = LogDataset::from_members(4, &[&[1], &[0, 2, 3], &[]]).unwrap();
        assert_eq!(log_likelihood(&t, &mixed).unwrap(), f64::NEG_INFINITY);
    }

    fn finite_difference(theta: &Theta, ds: &LogDataset, h: f64) -> Gradients {
        let n = theta.node_count();
        let eval = |f: Vec<f64>, r: Vec<f64>| log_likelihood(&Theta::from_parts(f, r), ds).unwrap();
        let mut gr = vec![0.0; n * n];
        for idx in 0..n * n {
            if idx / n == idx % n {
                continue;
            }
            let mut up = theta.r().to_vec();
            let mut down = theta.r().to_vec();
            up[idx] += h;
            down[idx] -= h;
            gr[idx] = (eval(theta.f().to_vec(), up) - eval(theta.f().to_vec(), down)) / (2.0 * h);
        }
        let mut gf = vec![0.0; n];
        for (j, g) in gf.iter_mut().enumerate() {
            let mut up = theta.f().to_vec();
            let mut down = theta.f().to_vec();
            up[j] += h;
            down[j] -= h;
            *g = (eval(up, theta.r().to_vec()) - eval(down, theta.r().to_vec())) / (2.0 * h);
        }
        Gradients { r: gr, f: gf }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let n = rng.random_range(3..=6);
            let d = rng.random_range(3..=10);
            let t = random_theta(n, &mut rng);
            let logs: Vec<Vec<usize>> = (0..d)
                .map(|_| {
                    let mut l: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
                    if l.is_empty() {
                        l.push(rng.random_range(0..n));
                    }
                    l
                })
                .collect();
            let refs: Vec<&[usize]> = logs.iter().map(Vec::as_slice).collect();
            let ds = LogDataset::from_members(n, &refs).unwrap();
            let analytic = gradients(&t, &ds).unwrap();
            let numeric = finite_difference(&t, &ds, 1e-6);
            for (a, b) in analytic
                .r
                .iter()
                .chain(&analytic.f)
                .zip(numeric.r.iter().chain(&numeric.f))
            {
                let scale = a.abs().max(b.abs()).max(1e-3);
                assert!((a - b).abs() / scale < 1e-6, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn absent_node_has_zero_f_gradient() {
        let t = Theta::new(vec![0.25; 4], vec![0.5; 16]).unwrap();
        let ds = LogDataset::from_members(4, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        let g = gradients(&t, &ds).unwrap();
        assert_eq!(g.f[3], 0.0);
        // nodes 0, 1 and 2 play symmetric roles
        assert!((g.f[0] - g.f[1]).abs() < 1e-12 && (g.f[1] - g.f[2]).abs() < 1e-12);
    }

    #[test]
    fn zero_probability_log_is_an_error() {
        let t = Theta::new(vec![0.5, 0.5], vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let ds = LogDataset::from_members(2, &[&[0]]).unwrap();
        assert!(matches!(gradients(&t, &ds), Err(Error::ZeroProbability(0))));
    }

    #[test]
    fn floored_simplex_projection() {
        let p = project_floored_simplex(&[0.2, 0.3, 0.5], 1e-6);
        assert!(p.iter().zip([0.2, 0.3, 0.5]).all(|(a, b)| (a - b).abs() < 1e-15));
        let p = project_floored_simplex(&[5.0, -1.0, -2.0], 0.01);
        assert!((p[0] - 0.98).abs() < 1e-12 && (p[1] - 0.01).abs() < 1e-15 && (p[2] - 0.01).abs() < 1e-15);
        let p = project_floored_simplex(&[0.0, 0.0], 0.1);
        assert_eq!(p, vec![0.5, 0.5]);
    }

    #[test]
    fn single_log_fit_hits_the_boundary() {
        let ds = LogDataset::from_members(3, &[&[0]]).unwrap();
        let eps = 1e-6;
        let cfg = FitConfig {
            learning_rate: 0.05,
            max_iterations: 20_000,
            convergence_tol: 1e-12,
            parameter_floor: eps,
        };
        let fitted = fit(&ds, &cfg).unwrap();
        let t = &fitted.theta_hat;
        assert!((t.initiation(0) - (1.0 - 2.0 * eps)).abs() < 1e-9, "{:?}", t.f());
        assert!((t.transmission(0, 1) - eps).abs() < 1e-12);
        assert!((t.transmission(0, 2) - eps).abs() < 1e-12);
    }

    #[test]
    fn zero_learning_rate_leaves_theta_unchanged() {
        let ds = LogDataset::from_members(3, &[&[0, 1], &[1, 2], &[2]]).unwrap();
        let cfg = FitConfig {
            learning_rate: 0.0,
            ..FitConfig::default()
        };
        let fitted = fit(&ds, &cfg).unwrap();
        assert!(fitted.converged);
        assert_eq!(fitted.iterations(), 1);
        let start = initial_theta(&ds, &[0, 1, 2], cfg.parameter_floor);
        assert_eq!(fitted.theta_hat, start);
    }

    #[test]
    fn fit_rejects_degenerate_inputs() {
        let empty = LogDataset::from_members(3, &[&[], &[]]).unwrap();
        assert!(matches!(fit(&empty, &FitConfig::default()), Err(Error::AllLogsEmpty)));
        let ds = LogDataset::from_members(3, &[&[0]]).unwrap();
        for cfg in [
            FitConfig {
                parameter_floor: 0.5,
                ..FitConfig::default()
            },
            FitConfig {
                parameter_floor: 0.4,
                ..FitConfig::default()
            },
            FitConfig {
                max_iterations: 0,
                ..FitConfig::default()
            },
            FitConfig {
                convergence_tol: 0.0,
                ..FitConfig::default()
            },
            FitConfig {
                learning_rate: -1.0,
                ..FitConfig::default()
            },
        ] {
            assert!(matches!(fit(&ds, &cfg), Err(Error::InvalidConfig(_))), "{cfg:?}");
        }
    }

    #[test]
    fn recovers_small_topology() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        for seed in 0..3 {
            let patterns = generate_patterns(&theta_from_graph(&g), 500, seed);
            let ds = project_logs(&g, patterns, &[]).unwrap();
            let t = fit(&ds, &FitConfig::default()).unwrap().theta_hat;
            for j in 0..5 {
                for k in 0..5 {
                    if j != k {
                        assert_eq!(t.transmission(j, k) > 0.5, g.has_edge(j, k), "seed {seed} r[{j}][{k}]");
                    }
                }
            }
        }
    }

    #[test]
    fn nested_neighbourhoods_admit_an_equally_likely_mixture() {
        // 0 and 1 both produce {0,1,2}; 2 produces {0,1,2,3}. A lone initiator
        // 0 that adds 3 a third of the time fits those two logs equally well.
        let g = Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let truth = theta_from_graph(&g);
        let mut f = vec![0.0, 0.0, 0.0, 0.2, 0.2];
        f[0] = 0.6;
        let mut r = truth.r().to_vec();
        r[3] = 1.0 / 3.0;
        // rows of nodes that never initiate are unconstrained
        for k in 0..5 {
            if k != 1 {
                r[5 + k] = 0.2;
            }
            if k != 2 {
                r[10 + k] = 0.2;
            }
        }
        let mixture = Theta::new(f, r).unwrap();
        for members in [&[0, 1, 2][..], &[0, 1, 2, 3], &[2, 3, 4], &[3, 4]] {
            let mut row = vec![false; 5];
            members.iter().for_each(|&j| row[j] = true);
            let a = log_probability(&truth, &row).unwrap();
            let b = log_probability(&mixture, &row).unwrap();
            assert!((a - b).abs() < 1e-12, "{members:?}: {a} vs {b}");
        }
        assert!(mixture.transmission(2, 3) < 0.5 && g.has_edge(2, 3));
    }

    #[test]
    fn scoring_examples() {
        let ds = LogDataset::from_members(3, &[&[0, 1], &[2], &[0, 1], &[]]).unwrap();
        let (fitted, ranking) = mle_rank(&ds, &FitConfig::default()).unwrap();
        assert_eq!(ranking.top(), Some(3));
        assert_eq!(ranking.scores()[3], f64::INFINITY);
        assert_eq!(ranking.scores()[0], ranking.scores()[2]);
        let pos = |i: usize| ranking.order().iter().position(|&x| x == i).unwrap();
        assert_eq!(pos(2), pos(0) + 1);
        assert!(fitted.log_likelihood_trace.windows(2).all(|w| w[1] >= w[0]));

        // a certain log scores zero and ranks last
        let t = Theta::new(vec![0.5, 0.5], vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let certain = FitResult {
            theta_hat: t,
            log_likelihood_trace: vec![0.0],
            converged: true,
        };
        let ds = LogDataset::from_members(2, &[&[0, 1], &[0]]).unwrap();
        let r = score_logs(&certain, &ds).unwrap();
        assert_eq!(r.scores()[0], 0.0);
        assert_eq!(r.order().last(), Some(&0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn trace_is_monotone_and_theta_feasible(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(3..7);
            let logs: Vec<Vec<usize>> = (0..rng.random_range(2..12))
                .map(|_| (0..n).filter(|_| rng.random_bool(0.4)).collect())
                .collect();
            let refs: Vec<&[usize]> = logs.iter().map(Vec::as_slice).collect();
            let ds = LogDataset::from_members(n, &refs).unwrap();
            let cfg = FitConfig { max_iterations: 60, ..FitConfig::default() };
            let fitted = match fit(&ds, &cfg) {
                Err(Error::AllLogsEmpty) => return Ok(()),
                other => other.unwrap(),
            };
            for w in fitted.log_likelihood_trace.windows(2) {
                prop_assert!(w[1] >= w[0]);
            }
            let t = &fitted.theta_hat;
            prop_assert!((t.f().iter().sum::<f64>() - 1.0).abs() < 1e-9);
            prop_assert!(t.f().iter().all(|&x| x >= cfg.parameter_floor - 1e-15));
            for j in 0..n {
                for k in 0..n {
                    if j != k {
                        let r = t.transmission(j, k);
                        prop_assert!(r >= cfg.parameter_floor && r <= 1.0 - cfg.parameter_floor);
                    }
                }
            }
            prop_assert!(Theta::new(t.f().to_vec(), t.r().to_vec()).is_ok());
        }

        #[test]
        fn row_permutation_permutes_scores(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_theta(5, &mut rng);
            let logs: Vec<Vec<usize>> = (0..8)
                .map(|_| (0..5).filter(|_| rng.random_bool(0.5)).collect())
                .collect();
            let refs: Vec<&[usize]> = logs.iter().map(Vec::as_slice).collect();
            let ds = LogDataset::from_members(5, &refs).unwrap();
            let order: Vec<usize> = vec![3, 1, 7, 0, 2, 6, 5, 4];
            let p = ds.permuted(&order).unwrap();
            let a = anomaly_scores(&t, &ds).unwrap();
            let b = anomaly_scores(&t, &p).unwrap();
            for (new, &old) in order.iter().enumerate() {
                prop_assert_eq!(b[new], a[old]);
            }
            // ranking under 1/p equals ranking under -log p
            let inverse: Vec<f64> = a.iter().map(|s| s.exp()).collect();
            let by_inverse = RankingResult::from_scores(inverse);
            let by_log = RankingResult::from_scores(a.clone());
            prop_assert_eq!(by_inverse.order(), by_log.order());
        }
    }
}
