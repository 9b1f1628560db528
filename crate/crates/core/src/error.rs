use std::io;

use thiserror::Error;

/// Pipeline stage that produced a failure. Used to tag resample diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Partition,
    Core,
    BagEmbedding,
    Reallocation,
    SubtreeEmbedding,
    Validation,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Partition,
        Stage::Core,
        Stage::BagEmbedding,
        Stage::Reallocation,
        Stage::SubtreeEmbedding,
        Stage::Validation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Partition => "partition",
            Stage::Core => "core",
            Stage::BagEmbedding => "bag_embedding",
            Stage::Reallocation => "reallocation",
            Stage::SubtreeEmbedding => "subtree_embedding",
            Stage::Validation => "validation",
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("incomplete embedding: tree vertex {0} is unmapped")]
    IncompleteEmbedding(usize),

    #[error("invalid tree-splitting: {0}")]
    InvalidSplitting(String),

    #[error("search budget of {0} exhausted")]
    BudgetExceeded(u64),

    #[error("no embedding found")]
    NotFound,

    #[error("no admissible host vertex for tree vertex {0}")]
    AdmissibleEmpty(usize),

    #[error("core extraction failed: {0}")]
    CoreExtraction(String),

    #[error("bipartite graph has no perfect matching")]
    NoPerfectMatching,

    #[error("degree condition violated: {0}")]
    DegreeCondition(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{stage} stage failed on every one of {attempts} attempts (last error: {last})")]
    ResampleExhausted {
        stage: Stage,
        attempts: usize,
        last: String,
    },

    #[error("sampler failure rate {rate:.4} exceeds threshold {threshold:.4}")]
    SamplerFailure { rate: f64, threshold: f64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
