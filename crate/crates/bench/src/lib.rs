//! Fixtures shared by the benchmarks.

use nodedisc::experiment::{simulate, CovertSelection};
use nodedisc::{synthesize, Graph, LogDataset, SynthesisConfig};

/// A clustered 101-node network and 100 logs with its hub hidden.
pub fn hub_fixture(seed: u64) -> (Graph, LogDataset) {
    let g = synthesize(&SynthesisConfig::clustered(seed)).expect("default config is valid");
    let covert = CovertSelection::Hub.select(&g).expect("hub exists");
    let ds = simulate(&g, &covert, 100, seed).expect("simulation on a valid graph");
    (g, ds)
}
