//! Spread random embeddings of bounded-degree spanning trees into graphs of
//! high minimum degree.
//!
//! The construction runs in four stages:
//!
//! 1. split the tree into edge-disjoint pieces of constant size
//!    ([`split`]) and sample a random labelled partition of the host into
//!    slightly smaller parts ([`partition`]);
//! 2. embed the bag-tree of the splitting into the graph of good part pairs
//!    with a colour-respecting random greedy ([`greedy`]);
//! 3. top up every used part with leftover vertices through a random star
//!    matching ([`matching`]);
//! 4. embed each piece into its part with a pinned root ([`rooted`]).
//!
//! [`pipeline`] wires the stages together and [`spread`] measures how spread
//! the resulting distributions are.
//!
//! All randomness flows through a caller-supplied [`rand::Rng`]; use
//! [`rng_from_seed`] for bit-reproducible runs.

pub mod error;
pub mod graph;
pub mod greedy;
pub mod matching;
pub mod partition;
pub mod pipeline;
pub mod rooted;
pub mod split;
pub mod spread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use error::{Error, Result, Stage};
pub use graph::{
    gen_bounded_tree, gen_dirac_graph, is_valid_embedding, Embedding, Graph, Tree, Vertex,
};

pub use pipeline::{embed_unrooted, run_pipeline, PipelineConfig, PipelineRun};
pub use split::{bag_graph, bag_tree, split_once, tree_splitting, BagTree, TreeSplitting};

/// The generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

/// Deterministic generator for `seed`.
pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for stream `stream` of `master`. Distinct streams of the same
/// master seed are independent, which lets trials run in any order.
pub fn rng_for_stream(master: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng
}
