//! Discovery of covert nodes in a social network from surveillance logs.
//!
//! The pipeline: synthesize (or load) a network, simulate hub-and-spoke
//! influence transmission into activity patterns, delete the covert nodes to
//! obtain surveillance logs, rank the logs by suspiciousness and score the
//! rankings with precision/recall/F curves.

pub mod error;
pub mod evaluation;
pub mod experiment;
pub mod graph;
pub mod heuristic;
pub mod io;
pub mod mle;
pub mod ranking;
pub mod synthesis;
pub mod transmission;

pub use error::{Error, Result};
pub use evaluation::{evaluate, random_baseline, theoretical_limit, Curves, EvalCurves};
pub use experiment::{
    run_experiment, write_outputs, ConfigFile, CovertSelection, ExperimentConfig, ExperimentResult, Method,
    MethodSummary, NetworkSource,
};
pub use graph::{gini, Graph, GraphStats, NodeId};
pub use heuristic::{heuristic_rank, jaccard, kmedoids, Clustering};
pub use mle::{fit, gradients, log_likelihood, log_probability, mle_rank, score_logs, FitConfig, FitResult, Gradients};
pub use ranking::RankingResult;
pub use synthesis::{synthesize, SynthesisConfig};
pub use transmission::{
    count_targets, generate_patterns, project_logs, theta_from_graph, ActivityPattern, GroundTruth, LogDataset,
    SurveillanceLog, Theta,
};
