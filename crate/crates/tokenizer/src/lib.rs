//! SVG-aware tokenization on top of a base subword vocabulary.
//!
//! The special inventory adds whole-tag tokens (`<path`, `</g>`), attribute
//! prefixes ending in `="`, integer tokens and fractional tokens. Encoding
//! mixes special ids with base ids and always decodes back to the input
//! bytes. New embedding rows are initialized as the mean of the base
//! embeddings of each token's subword decomposition.

pub mod base;
pub mod codec;
pub mod embed;
pub mod stats;
pub mod vocab;

pub use base::PieceTokenizer;
pub use codec::{Codec, TokenSeq};
pub use embed::{init_embeddings, row_index, stack_rows, EmbeddingInit, EmbeddingMatrix, RowIndex};
pub use stats::{compression_stats, count_histogram, CompressionStats, FileCounts, Histogram};
pub use vocab::{build_vocab, Category, Manifest, SpecialToken, SpecialVocab};

/// The checked-in vocabulary manifest.
pub const VOCAB_MANIFEST: &str = include_str!("../vocab_manifest.json");

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown token id {0}")]
    UnknownId(u32),
    #[error("decoded bytes are not valid UTF-8")]
    InvalidUtf8,
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("token {0:?} has an empty base decomposition")]
    EmptyDecomposition(String),
    #[error("no embedding row for base id {0}")]
    MissingEmbedding(u32),
    #[error("embedding data of {len} values does not split into {rows} rows")]
    EmbeddingShape { len: usize, rows: usize },
    #[error("invalid base vocabulary: {0}")]
    BaseVocab(String),
    #[error("invalid vocabulary manifest: {0}")]
    Manifest(String),
    #[error("i/o: {0}")]
    Io(String),
}
