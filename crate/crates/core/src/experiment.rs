//! End-to-end experiments: build a network, pick covert nodes, simulate logs,
//! rank them with each method and aggregate the curves over seeds.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::{evaluate, Curves, EvalCurves};
use crate::graph::Graph;
use crate::heuristic::heuristic_rank;
use crate::io;
use crate::mle::{mle_rank, FitConfig, FitResult};
use crate::ranking::RankingResult;
use crate::synthesis::{synthesize, SynthesisConfig};
use crate::transmission::{count_targets, generate_patterns, project_logs, theta_from_graph, LogDataset};

const PATTERN_STREAM: u64 = 1;
const CLUSTERING_STREAM: u64 = 2;

/// Independent sub-seed for one consumer of a run seed (splitmix64 finalizer).
pub fn stream_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSource {
    /// A fresh graph per run; the synthesis seed is the run seed.
    Synthesized(SynthesisConfig),
    EdgeList {
        edges: PathBuf,
        clusters: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CovertSelection {
    /// The node of maximum degree, lowest index on ties.
    Hub,
    /// The node of minimum degree, lowest index on ties.
    Peripheral,
    Labels(Vec<String>),
}

impl CovertSelection {
    pub fn select(&self, g: &Graph) -> Result<Vec<usize>> {
        let n = g.node_count();
        let degrees = g.degrees();
        let mut chosen = match self {
            CovertSelection::Hub => vec![(0..n).max_by_key(|&j| (degrees[j], std::cmp::Reverse(j))).unwrap_or(0)],
            CovertSelection::Peripheral => vec![(0..n).min_by_key(|&j| (degrees[j], j)).unwrap_or(0)],
            CovertSelection::Labels(labels) => labels
                .iter()
                .map(|l| {
                    g.index_of(l)
                        .ok_or_else(|| Error::InvalidConfig(format!("covert node {l:?} is not in the graph")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        chosen.sort_unstable();
        chosen.dedup();
        if chosen.is_empty() || chosen.len() >= n {
            return Err(Error::InvalidConfig(format!(
                "covert set must be a nonempty strict subset of the {n} nodes"
            )));
        }
        Ok(chosen)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Heuristic { clusters: usize },
    Mle(FitConfig),
}

impl Method {
    /// Short name used in output file names.
    pub fn name(&self) -> String {
        match self {
            Method::Heuristic { clusters } => format!("heuristic-c{clusters}"),
            Method::Mle(_) => "mle".to_string(),
        }
    }

    /// Ranks `ds`; `seed` drives the clustering initialisation of the heuristic.
    pub fn rank(&self, ds: &LogDataset, seed: u64) -> Result<(RankingResult, Option<FitResult>)> {
        match self {
            Method::Heuristic { clusters } => Ok((
                heuristic_rank(ds, *clusters, stream_seed(seed, CLUSTERING_STREAM))?,
                None,
            )),
            Method::Mle(cfg) => {
                let (fit, ranking) = mle_rank(ds, cfg)?;
                Ok((ranking, Some(fit)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub network: NetworkSource,
    pub covert: CovertSelection,
    pub log_count: usize,
    pub methods: Vec<Method>,
    pub seeds: Vec<u64>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.log_count == 0 {
            return Err(Error::InvalidConfig("log count must be positive".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no ranking method selected".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidConfig("no seeds given".into()));
        }
        let mut names: Vec<String> = self.methods.iter().map(Method::name).collect();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig("a method is listed twice".into()));
        }
        for m in &self.methods {
            match m {
                Method::Mle(cfg) => cfg.validate()?,
                Method::Heuristic { clusters: 0 } => {
                    return Err(Error::InvalidConfig("heuristic needs at least one cluster".into()))
                }
                Method::Heuristic { .. } => {}
            }
        }
        if let NetworkSource::Synthesized(cfg) = &self.network {
            cfg.validate()?;
        }
        Ok(())
    }
}

/// Simulates `log_count` logs on `g` with the given covert set.
pub fn simulate(g: &Graph, covert: &[usize], log_count: usize, seed: u64) -> Result<LogDataset> {
    let patterns = generate_patterns(&theta_from_graph(g), log_count, stream_seed(seed, PATTERN_STREAM));
    project_logs(g, patterns, covert)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodRun {
    pub ranking: RankingResult,
    pub curves: EvalCurves,
    pub fit: Option<FitResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedRun {
    pub seed: u64,
    pub graph: Graph,
    pub covert: Vec<usize>,
    pub dataset: LogDataset,
    /// Parallel to the configured methods.
    pub methods: Vec<MethodRun>,
}

impl SeedRun {
    pub fn target_count(&self) -> usize {
        self.methods.first().map_or(0, |m| m.curves.target_count)
    }
}

/// Pointwise mean and sample standard deviation across seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveStats {
    pub mean: Curves,
    pub std: Curves,
}

fn column_stats(columns: &[&[f64]]) -> (Vec<f64>, Vec<f64>) {
    let len = columns[0].len();
    let k = columns.len() as f64;
    let mut mean = vec![0.0; len];
    let mut std = vec![0.0; len];
    for t in 0..len {
        let m = columns.iter().map(|c| c[t]).sum::<f64>() / k;
        mean[t] = m;
        if columns.len() > 1 {
            let ss: f64 = columns.iter().map(|c| (c[t] - m).powi(2)).sum();
            std[t] = (ss / (k - 1.0)).sqrt();
        }
    }
    (mean, std)
}

impl CurveStats {
    fn of(curves: &[&Curves]) -> Self {
        let pick = |f: fn(&Curves) -> &[f64]| column_stats(&curves.iter().map(|c| f(c)).collect::<Vec<_>>());
        let (pm, ps) = pick(|c| &c.precision);
        let (rm, rs) = pick(|c| &c.recall);
        let (fm, fs) = pick(|c| &c.f_measure);
        Self {
            mean: Curves {
                precision: pm,
                recall: rm,
                f_measure: fm,
            },
            std: Curves {
                precision: ps,
                recall: rs,
                f_measure: fs,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSummary {
    pub name: String,
    pub actual: CurveStats,
    pub limit: CurveStats,
    pub random: CurveStats,
    /// Mean over seeds of F at each seed's own `D_r = D_t`.
    pub mean_f_at_target: f64,
    pub mean_precision_at_target: f64,
    /// Mean over seeds of `D_t / D`.
    pub mean_random_precision: f64,
}

impl MethodSummary {
    fn of(name: String, runs: &[&EvalCurves]) -> Self {
        let k = runs.len() as f64;
        let at_target = |c: &&EvalCurves, f: fn(&Curves) -> &[f64]| f(&c.actual)[c.target_count - 1];
        Self {
            name,
            actual: CurveStats::of(&runs.iter().map(|c| &c.actual).collect::<Vec<_>>()),
            limit: CurveStats::of(&runs.iter().map(|c| &c.theoretical_limit).collect::<Vec<_>>()),
            random: CurveStats::of(&runs.iter().map(|c| &c.random_baseline).collect::<Vec<_>>()),
            mean_f_at_target: runs.iter().map(|c| at_target(c, |x| &x.f_measure)).sum::<f64>() / k,
            mean_precision_at_target: runs.iter().map(|c| at_target(c, |x| &x.precision)).sum::<f64>() / k,
            mean_random_precision: runs
                .iter()
                .map(|c| c.target_count as f64 / c.log_count() as f64)
                .sum::<f64>()
                / k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// Evaluated runs in seed-list order.
    pub runs: Vec<SeedRun>,
    /// Seeds whose logs held no target.
    pub skipped: Vec<u64>,
    /// Parallel to the configured methods.
    pub summaries: Vec<MethodSummary>,
}

fn run_seed(cfg: &ExperimentConfig, loaded: Option<&Graph>, seed: u64) -> Result<Option<SeedRun>> {
    let graph = match (&cfg.network, loaded) {
        (_, Some(g)) => g.clone(),
        (NetworkSource::Synthesized(syn), None) => synthesize(&SynthesisConfig { seed, ..syn.clone() })?,
        (NetworkSource::EdgeList { .. }, None) => unreachable!("edge lists are loaded up front"),
    };
    let covert = cfg.covert.select(&graph)?;
    let dataset = simulate(&graph, &covert, cfg.log_count, seed)?;
    if count_targets(&dataset)? == 0 {
        return Ok(None);
    }
    let methods = cfg
        .methods
        .iter()
        .map(|m| {
            let (ranking, fit) = m.rank(&dataset, seed)?;
            let curves = evaluate(&ranking, &dataset)?;
            Ok(MethodRun { ranking, curves, fit })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(SeedRun {
        seed,
        graph,
        covert,
        dataset,
        methods,
    }))
}

/// Runs every seed (in parallel) and aggregates in seed-list order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let loaded = match &cfg.network {
        NetworkSource::EdgeList { edges, clusters } => Some(io::read_graph(edges, clusters.as_deref())?),
        NetworkSource::Synthesized(_) => None,
    };
    let outcomes = cfg
        .seeds
        .par_iter()
        .map(|&seed| run_seed(cfg, loaded.as_ref(), seed))
        .collect::<Result<Vec<_>>>()?;
    let mut runs = Vec::new();
    let mut skipped = Vec::new();
    for (&seed, outcome) in cfg.seeds.iter().zip(outcomes) {
        match outcome {
            Some(run) => runs.push(run),
            None => skipped.push(seed),
        }
    }
    if runs.is_empty() {
        return Err(Error::NoTargets);
    }
    let summaries = cfg
        .methods
        .iter()
        .enumerate()
        .map(|(m, method)| {
            let curves: Vec<&EvalCurves> = runs.iter().map(|r| &r.methods[m].curves).collect();
            MethodSummary::of(method.name(), &curves)
        })
        .collect();
    Ok(ExperimentResult {
        config: cfg.clone(),
        runs,
        skipped,
        summaries,
    })
}

/// Flat key-value configuration as read from and written to TOML files.
/// Every key is optional; missing keys take the defaults of
/// [`ConfigFile::defaults`].
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_list: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contrast: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges_per_new_node: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_intercluster_edges: Option<usize>,
    /// `hub`, `peripheral` or `labels`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covert: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covert_labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_count: Option<usize>,
    /// Any of `mle`, `heuristic`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heuristic_clusters: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub learning_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    /// Inputs of the single-step subcommands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranking_file: Option<PathBuf>,
}

macro_rules! overlay_fields {
    ($base:expr, $top:expr, $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field; } )*
    };
}

impl ConfigFile {
    /// Clustered synthetic network, hub covert, 100 logs, both methods, seeds 0..20.
    pub fn defaults() -> Self {
        let syn = SynthesisConfig::clustered(0);
        let fit = FitConfig::default();
        Self {
            edge_list: None,
            cluster_file: None,
            node_count: Some(syn.node_count),
            cluster_count: Some(syn.cluster_count),
            contrast: Some(syn.contrast),
            edges_per_new_node: Some(syn.edges_per_new_node),
            initial_intercluster_edges: Some(syn.initial_intercluster_edges),
            covert: Some("hub".into()),
            covert_labels: None,
            log_count: Some(100),
            methods: Some(vec!["mle".into(), "heuristic".into()]),
            heuristic_clusters: Some(5),
            learning_rate: Some(fit.learning_rate),
            max_iterations: Some(fit.max_iterations),
            convergence_tol: Some(fit.convergence_tol),
            parameter_floor: Some(fit.parameter_floor),
            seeds: Some((0..20).collect()),
            log_file: None,
            truth_file: None,
            ranking_file: None,
        }
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| text[..s.start].lines().count().max(1));
            Error::parse(path, line, e.message())
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&io::read_to_string(path)?, path)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config always serializes")
    }

    /// Keys set in `top` replace those in `self`.
    pub fn overlay(mut self, top: ConfigFile) -> Self {
        overlay_fields!(
            self,
            top,
            edge_list,
            cluster_file,
            node_count,
            cluster_count,
            contrast,
            edges_per_new_node,
            initial_intercluster_edges,
            covert,
            covert_labels,
            log_count,
            methods,
            heuristic_clusters,
            learning_rate,
            max_iterations,
            convergence_tol,
            parameter_floor,
            seeds,
            log_file,
            truth_file,
            ranking_file
        );
        self
    }

    pub fn fit_config(&self) -> FitConfig {
        let d = FitConfig::default();
        FitConfig {
            learning_rate: self.learning_rate.unwrap_or(d.learning_rate),
            max_iterations: self.max_iterations.unwrap_or(d.max_iterations),
            convergence_tol: self.convergence_tol.unwrap_or(d.convergence_tol),
            parameter_floor: self.parameter_floor.unwrap_or(d.parameter_floor),
        }
    }

    pub fn synthesis_config(&self, seed: u64) -> SynthesisConfig {
        let d = SynthesisConfig::clustered(seed);
        SynthesisConfig {
            node_count: self.node_count.unwrap_or(d.node_count),
            cluster_count: self.cluster_count.unwrap_or(d.cluster_count),
            contrast: self.contrast.unwrap_or(d.contrast),
            edges_per_new_node: self.edges_per_new_node.unwrap_or(d.edges_per_new_node),
            initial_intercluster_edges: self.initial_intercluster_edges.unwrap_or(d.initial_intercluster_edges),
            seed,
        }
    }

    pub fn covert_selection(&self) -> Result<CovertSelection> {
        match self.covert.as_deref().unwrap_or("hub") {
            "hub" => Ok(CovertSelection::Hub),
            "peripheral" => Ok(CovertSelection::Peripheral),
            "labels" => Ok(CovertSelection::Labels(self.covert_labels.clone().unwrap_or_default())),
            other => Err(Error::InvalidConfig(format!(
                "covert must be hub, peripheral or labels, got {other:?}"
            ))),
        }
    }

    pub fn method_list(&self) -> Result<Vec<Method>> {
        let names = self
            .methods
            .clone()
            .unwrap_or_else(|| vec!["mle".into(), "heuristic".into()]);
        names
            .iter()
            .map(|name| match name.as_str() {
                "mle" => Ok(Method::Mle(self.fit_config())),
                "heuristic" => Ok(Method::Heuristic {
                    clusters: self.heuristic_clusters.unwrap_or(5),
                }),
                other => Err(Error::InvalidConfig(format!("unknown method {other:?}"))),
            })
            .collect()
    }

    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let network = match &self.edge_list {
            Some(edges) => NetworkSource::EdgeList {
                edges: edges.clone(),
                clusters: self.cluster_file.clone(),
            },
            None => NetworkSource::Synthesized(self.synthesis_config(0)),
        };
        let cfg = ExperimentConfig {
            network,
            covert: self.covert_selection()?,
            log_count: self.log_count.unwrap_or(100),
            methods: self.method_list()?,
            seeds: self.seeds.clone().unwrap_or_else(|| (0..20).collect()),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl From<&ExperimentConfig> for ConfigFile {
    fn from(cfg: &ExperimentConfig) -> Self {
        let mut file = ConfigFile {
            log_count: Some(cfg.log_count),
            seeds: Some(cfg.seeds.clone()),
            ..Default::default()
        };
        match &cfg.network {
            NetworkSource::Synthesized(s) => {
                file.node_count = Some(s.node_count);
                file.cluster_count = Some(s.cluster_count);
                file.contrast = Some(s.contrast);
                file.edges_per_new_node = Some(s.edges_per_new_node);
                file.initial_intercluster_edges = Some(s.initial_intercluster_edges);
            }
            NetworkSource::EdgeList { edges, clusters } => {
                file.edge_list = Some(edges.clone());
                file.cluster_file = clusters.clone();
            }
        }
        match &cfg.covert {
            CovertSelection::Hub => file.covert = Some("hub".into()),
            CovertSelection::Peripheral => file.covert = Some("peripheral".into()),
            CovertSelection::Labels(labels) => {
                file.covert = Some("labels".into());
                file.covert_labels = Some(labels.clone());
            }
        }
        let mut methods = Vec::new();
        for m in &cfg.methods {
            match m {
                Method::Mle(fit) => {
                    methods.push("mle".to_string());
                    file.learning_rate = Some(fit.learning_rate);
                    file.max_iterations = Some(fit.max_iterations);
                    file.convergence_tol = Some(fit.convergence_tol);
                    file.parameter_floor = Some(fit.parameter_floor);
                }
                Method::Heuristic { clusters } => {
                    methods.push("heuristic".to_string());
                    file.heuristic_clusters = Some(*clusters);
                }
            }
        }
        file.methods = Some(methods);
        file
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn manifest(result: &ExperimentResult) -> String {
    let mut out = String::from("# experiment manifest; a valid config file for `nodedisc experiment --config`\n");
    out.push_str(&ConfigFile::from(&result.config).to_toml());
    let _ = writeln!(
        out,
        "\n# evaluated seeds: [{}]",
        join(result.runs.iter().map(|r| r.seed))
    );
    let _ = writeln!(out, "# skipped seeds (no target logs): [{}]", join(&result.skipped));
    let _ = writeln!(
        out,
        "# target counts: [{}]",
        join(result.runs.iter().map(SeedRun::target_count))
    );
    for run in &result.runs {
        let labels = run.covert.iter().map(|&j| run.graph.label(j));
        let _ = writeln!(out, "# seed {} covert: {}", run.seed, join(labels));
    }
    for s in &result.summaries {
        let _ = writeln!(
            out,
            "# {}: peak mean F {}, mean F at D_t {}, mean precision at D_t {}, random precision {}",
            s.name,
            s.actual.mean.peak_f(),
            s.mean_f_at_target,
            s.mean_precision_at_target,
            s.mean_random_precision
        );
    }
    out
}

/// Gnuplot script drawing the mean F curves next to the mean bounds.
pub fn plot_script(result: &ExperimentResult) -> String {
    let mut out = String::from(
        "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'D_r'\nset ylabel 'F'\nset yrange [0:1.05]\n",
    );
    out.push_str("set terminal pngcairo size 800,600\nset output 'f-measure.png'\nplot \\\n");
    let mut series = Vec::new();
    for s in &result.summaries {
        series.push(format!(
            "  'curves-{0}.csv' using 1:4 with lines lw 2 title '{0}'",
            s.name
        ));
    }
    if let Some(first) = result.summaries.first() {
        series.push(format!(
            "  'curves-{}.csv' using 1:7 with lines dt 2 title 'limit'",
            first.name
        ));
        series.push(format!(
            "  'curves-{}.csv' using 1:10 with lines dt 3 title 'random'",
            first.name
        ));
    }
    out.push_str(&series.join(", \\\n"));
    out.push('\n');
    out
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

/// Writes the manifest, plot script, mean and dispersion curves, and one
/// directory of raw artifacts per evaluated seed.
pub fn write_outputs(result: &ExperimentResult, dir: &Path) -> Result<()> {
    create_dir(dir)?;
    for s in &result.summaries {
        io::write_file(
            &dir.join(format!("curves-{}.csv", s.name)),
            &io::format_curve_table(&s.actual.mean, &s.limit.mean, &s.random.mean),
        )?;
        io::write_file(
            &dir.join(format!("curves-{}-std.csv", s.name)),
            &io::format_curve_table(&s.actual.std, &s.limit.std, &s.random.std),
        )?;
    }
    for run in &result.runs {
        let seed_dir = dir.join(format!("seed-{}", run.seed));
        create_dir(&seed_dir)?;
        let clusters = run.graph.cluster_of().map(|_| seed_dir.join("graph.clusters"));
        io::write_graph(&run.graph, &seed_dir.join("graph.edges"), clusters.as_deref())?;
        io::write_logs(
            &run.dataset,
            &seed_dir.join("logs.txt"),
            Some(&seed_dir.join("truth.txt")),
        )?;
        for (method, m) in result.config.methods.iter().zip(&run.methods) {
            let name = method.name();
            io::write_file(
                &seed_dir.join(format!("ranking-{name}.csv")),
                &io::format_ranking(&m.ranking),
            )?;
            io::write_file(
                &seed_dir.join(format!("curves-{name}.csv")),
                &io::format_curves(&m.curves),
            )?;
        }
    }
    io::write_file(&dir.join("plot.gp"), &plot_script(result))?;
    io::write_file(&dir.join("manifest.txt"), &manifest(result))
}
