use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nodedisc::experiment::simulate;
use nodedisc::{io, run_experiment, synthesize, write_outputs, ConfigFile, EvalCurves};

/// Covert-node discovery from surveillance logs.
#[derive(Parser)]
#[command(name = "nodedisc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a clustered preferential-attachment network.
    Synthesize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Simulate influence transmission on a network and write surveillance logs.
    GenLogs {
        #[command(flatten)]
        common: Common,
        /// Edge-list file of the network.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        cluster_file: Option<PathBuf>,
        #[command(flatten)]
        covert: CovertArgs,
        /// Number of logs D.
        #[arg(long)]
        log_count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Rank logs by suspiciousness.
    Rank {
        #[command(flatten)]
        common: Common,
        /// Log file to rank.
        #[arg(long)]
        logs: Option<PathBuf>,
        /// `mle` or `heuristic`.
        #[arg(long)]
        method: Option<String>,
        /// Cluster count of the heuristic.
        #[arg(long)]
        clusters: Option<usize>,
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Precision, recall and F curves of a ranking against the truth file.
    Evaluate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        logs: Option<PathBuf>,
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(long)]
        ranking: Option<PathBuf>,
    },
    /// Synthesize or load, simulate, rank and evaluate over many seeds.
    Experiment {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        network: NetworkArgs,
        /// Load this edge list instead of synthesizing.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        cluster_file: Option<PathBuf>,
        #[command(flatten)]
        covert: CovertArgs,
        #[arg(long)]
        log_count: Option<usize>,
        /// Repeat for several methods: `mle`, `heuristic`.
        #[arg(long = "method")]
        methods: Vec<String>,
        #[arg(long)]
        heuristic_clusters: Option<usize>,
        #[command(flatten)]
        fit: FitArgs,
        /// `A..B` (exclusive) or a comma-separated list.
        #[arg(long)]
        seeds: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// Flat TOML config file; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct NetworkArgs {
    #[arg(long)]
    nodes: Option<usize>,
    /// Cluster count of the synthesized network.
    #[arg(long)]
    clusters: Option<usize>,
    #[arg(long)]
    contrast: Option<f64>,
    #[arg(long)]
    edges_per_node: Option<usize>,
    #[arg(long)]
    initial_links: Option<usize>,
}

#[derive(Args)]
struct CovertArgs {
    /// `hub` or `peripheral`.
    #[arg(long, conflicts_with = "covert_label")]
    covert: Option<String>,
    /// Explicit covert node; repeat for several.
    #[arg(long)]
    covert_label: Vec<String>,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Parameter floor.
    #[arg(long)]
    eps: Option<f64>,
}

impl NetworkArgs {
    fn apply(&self, c: &mut ConfigFile) {
        set(&mut c.node_count, self.nodes);
        set(&mut c.cluster_count, self.clusters);
        set(&mut c.contrast, self.contrast);
        set(&mut c.edges_per_new_node, self.edges_per_node);
        set(&mut c.initial_intercluster_edges, self.initial_links);
    }
}

impl CovertArgs {
    fn apply(&self, c: &mut ConfigFile) {
        if !self.covert_label.is_empty() {
            c.covert = Some("labels".into());
            c.covert_labels = Some(self.covert_label.clone());
        } else if let Some(sel) = &self.covert {
            c.covert = Some(sel.clone());
            c.covert_labels = None;
        }
    }
}

impl FitArgs {
    fn apply(&self, c: &mut ConfigFile) {
        set(&mut c.learning_rate, self.learning_rate);
        set(&mut c.max_iterations, self.max_iters);
        set(&mut c.convergence_tol, self.tol);
        set(&mut c.parameter_floor, self.eps);
    }
}

fn set<T>(slot: &mut Option<T>, value: Option<T>) {
    if value.is_some() {
        *slot = value;
    }
}

fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().context("bad seed range start")?;
        let b: u64 = b.trim().parse().context("bad seed range end")?;
        if a >= b {
            bail!("empty seed range {text}");
        }
        return Ok((a..b).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse().with_context(|| format!("bad seed {s:?}")))
        .collect()
}

/// Defaults, then the config file, then flags.
fn load(common: &Common, flags: impl FnOnce(&mut ConfigFile) -> Result<()>) -> Result<ConfigFile> {
    let mut cfg = ConfigFile::defaults();
    if let Some(path) = &common.config {
        cfg = cfg.overlay(ConfigFile::read(path)?);
    }
    flags(&mut cfg)?;
    Ok(cfg)
}

fn first_seed(cfg: &ConfigFile) -> u64 {
    cfg.seeds.as_ref().and_then(|s| s.first().copied()).unwrap_or(0)
}

fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn write_manifest(dir: &Path, command: &str, cfg: &ConfigFile, notes: &[String]) -> Result<()> {
    let mut text = format!("# nodedisc {command}; a valid --config file\n");
    text.push_str(&cfg.to_toml());
    if !notes.is_empty() {
        text.push('\n');
    }
    for note in notes {
        text.push_str("# ");
        text.push_str(note);
        text.push('\n');
    }
    io::write_file(&dir.join("manifest.txt"), &text)?;
    Ok(())
}

fn required<'a>(value: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
    value
        .as_deref()
        .with_context(|| format!("no {what} given (flag or config key)"))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Synthesize { common, network, seed } => {
            let cfg = load(&common, |c| {
                network.apply(c);
                set(&mut c.seeds, seed.map(|s| vec![s]));
                Ok(())
            })?;
            let seed = first_seed(&cfg);
            let g = synthesize(&cfg.synthesis_config(seed))?;
            prepare_out(&common.out)?;
            io::write_graph(
                &g,
                &common.out.join("graph.edges"),
                Some(&common.out.join("graph.clusters")),
            )?;
            let s = g.stats();
            let stats = format!("<K> = {}, <W> = {}, G = {}", s.avg_degree, s.avg_clustering, s.gini);
            println!("{} nodes, {} edges, {stats}", g.node_count(), g.edge_count());
            write_manifest(&common.out, "synthesize", &cfg, &[format!("seed {seed}: {stats}")])
        }
        Command::GenLogs {
            common,
            graph,
            cluster_file,
            covert,
            log_count,
            seed,
        } => {
            let cfg = load(&common, |c| {
                set(&mut c.edge_list, graph);
                set(&mut c.cluster_file, cluster_file);
                covert.apply(c);
                set(&mut c.log_count, log_count);
                set(&mut c.seeds, seed.map(|s| vec![s]));
                Ok(())
            })?;
            let g = io::read_graph(required(&cfg.edge_list, "graph")?, cfg.cluster_file.as_deref())?;
            let covert = cfg.covert_selection()?.select(&g)?;
            let seed = first_seed(&cfg);
            let ds = simulate(&g, &covert, cfg.log_count.unwrap_or(100), seed)?;
            prepare_out(&common.out)?;
            io::write_logs(&ds, &common.out.join("logs.txt"), Some(&common.out.join("truth.txt")))?;
            let targets = nodedisc::count_targets(&ds)?;
            let labels: Vec<String> = covert.iter().map(|&j| g.label(j)).collect();
            println!(
                "{} logs, {targets} altered by covert nodes {}",
                ds.len(),
                labels.join(" ")
            );
            write_manifest(
                &common.out,
                "gen-logs",
                &cfg,
                &[
                    format!("covert: {}", labels.join(" ")),
                    format!("target logs: {targets}"),
                ],
            )
        }
        Command::Rank {
            common,
            logs,
            method,
            clusters,
            fit,
            seed,
        } => {
            let cfg = load(&common, |c| {
                set(&mut c.log_file, logs);
                set(&mut c.methods, method.map(|m| vec![m]));
                set(&mut c.heuristic_clusters, clusters);
                fit.apply(c);
                set(&mut c.seeds, seed.map(|s| vec![s]));
                Ok(())
            })?;
            let methods = cfg.method_list()?;
            let [method] = methods.as_slice() else {
                bail!("rank takes exactly one method, got {}", methods.len());
            };
            let ds = io::read_logs(required(&cfg.log_file, "log file")?, None)?;
            let (ranking, fitted) = method.rank(&ds, first_seed(&cfg))?;
            prepare_out(&common.out)?;
            let name = method.name();
            io::write_file(
                &common.out.join(format!("ranking-{name}.csv")),
                &io::format_ranking(&ranking),
            )?;
            let mut notes = Vec::new();
            if let Some(fitted) = fitted {
                let (r, f) = io::format_theta(&fitted.theta_hat);
                io::write_file(&common.out.join("theta-r.csv"), &r)?;
                io::write_file(&common.out.join("theta-f.csv"), &f)?;
                notes.push(format!(
                    "log-likelihood {} after {} iterations, converged: {}",
                    fitted.final_log_likelihood(),
                    fitted.iterations(),
                    fitted.converged
                ));
            }
            println!(
                "ranked {} logs with {name}; most suspicious: {:?}",
                ds.len(),
                ranking.top()
            );
            write_manifest(&common.out, "rank", &cfg, &notes)
        }
        Command::Evaluate {
            common,
            logs,
            truth,
            ranking,
        } => {
            let cfg = load(&common, |c| {
                set(&mut c.log_file, logs);
                set(&mut c.truth_file, truth);
                set(&mut c.ranking_file, ranking);
                Ok(())
            })?;
            let ds = io::read_logs(
                required(&cfg.log_file, "log file")?,
                Some(required(&cfg.truth_file, "truth file")?),
            )?;
            let ranking_path = required(&cfg.ranking_file, "ranking file")?;
            let ranking = io::read_ranking(ranking_path)?;
            let curves: EvalCurves = nodedisc::evaluate(&ranking, &ds)?;
            let stem = ranking_path.file_stem().and_then(|s| s.to_str()).unwrap_or("ranking");
            let name = stem.strip_prefix("ranking-").unwrap_or(stem);
            prepare_out(&common.out)?;
            io::write_file(
                &common.out.join(format!("curves-{name}.csv")),
                &io::format_curves(&curves),
            )?;
            let t = curves.target_count;
            let summary = format!(
                "D_t = {t}, F at D_r = D_t: {}, peak F: {}",
                curves.actual.f_measure[t - 1],
                curves.actual.peak_f()
            );
            println!("{summary}");
            write_manifest(&common.out, "evaluate", &cfg, &[summary])
        }
        Command::Experiment {
            common,
            network,
            graph,
            cluster_file,
            covert,
            log_count,
            methods,
            heuristic_clusters,
            fit,
            seeds,
        } => {
            let cfg = load(&common, |c| {
                network.apply(c);
                set(&mut c.edge_list, graph);
                set(&mut c.cluster_file, cluster_file);
                covert.apply(c);
                set(&mut c.log_count, log_count);
                if !methods.is_empty() {
                    c.methods = Some(methods);
                }
                set(&mut c.heuristic_clusters, heuristic_clusters);
                fit.apply(c);
                if let Some(text) = seeds {
                    c.seeds = Some(parse_seeds(&text)?);
                }
                Ok(())
            })?;
            let result = run_experiment(&cfg.resolve()?)?;
            write_outputs(&result, &common.out)?;
            println!(
                "{} seeds evaluated, {} skipped",
                result.runs.len(),
                result.skipped.len()
            );
            for s in &result.summaries {
                println!(
                    "{}: peak mean F {:.3}, mean F at D_t {:.3}, mean precision at D_t {:.3} (random {:.3})",
                    s.name,
                    s.actual.mean.peak_f(),
                    s.mean_f_at_target,
                    s.mean_precision_at_target,
                    s.mean_random_precision
                );
            }
            Ok(())
        }
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
