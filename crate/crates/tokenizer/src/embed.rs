//! Subword-averaged initialization of special-token embeddings.
//!
//! Each new token's vector is the componentwise mean of the base embeddings
//! of the subwords its text decomposes into under the base tokenizer.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::base::PieceTokenizer;
use crate::vocab::SpecialVocab;
use crate::Error;

/// Row-major `rows × dim` matrix of `f32`, stored on disk as little-endian
/// bytes with no header.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    pub rows: usize,
    pub dim: usize,
    pub data: Vec<f32>,
}

impl EmbeddingMatrix {
    pub fn new(rows: usize, dim: usize, data: Vec<f32>) -> Result<Self, Error> {
        if data.len() != rows * dim || dim == 0 {
            return Err(Error::EmbeddingShape { len: data.len(), rows });
        }
        Ok(EmbeddingMatrix { rows, dim, data })
    }

    /// Uniform values in `[-1, 1)` from a seeded generator.
    pub fn random(rows: usize, dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..rows * dim).map(|_| rng.gen_range(-1.0f32..1.0)).collect();
        EmbeddingMatrix { rows, dim, data }
    }

    pub fn row(&self, id: usize) -> Option<&[f32]> {
        (id < self.rows).then(|| &self.data[id * self.dim..(id + 1) * self.dim])
    }

    pub fn from_le_bytes(bytes: &[u8], rows: usize) -> Result<Self, Error> {
        if rows == 0 || !bytes.len().is_multiple_of(4) || !(bytes.len() / 4).is_multiple_of(rows) {
            return Err(Error::EmbeddingShape { len: bytes.len() / 4, rows });
        }
        let data: Vec<f32> = bytes.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
        let dim = data.len() / rows;
        EmbeddingMatrix::new(rows, dim, data)
    }

    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.data.iter().flat_map(|v| v.to_le_bytes()).collect()
    }

    pub fn read(path: impl AsRef<Path>, rows: usize) -> Result<Self, Error> {
        let bytes = std::fs::read(path.as_ref()).map_err(|e| Error::Io(e.to_string()))?;
        EmbeddingMatrix::from_le_bytes(&bytes, rows)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), Error> {
        std::fs::write(path.as_ref(), self.to_le_bytes()).map_err(|e| Error::Io(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingInit {
    pub token: String,
    pub id: u32,
    pub subword_ids: Vec<u32>,
    pub vector: Vec<f32>,
}

/// Initializes every special token in id order.
pub fn init_embeddings(vocab: &SpecialVocab, base: &PieceTokenizer, emb: &EmbeddingMatrix) -> Result<Vec<EmbeddingInit>, Error> {
    let offset = base.vocab_size() as u32;
    vocab
        .tokens()
        .iter()
        .map(|t| {
            let subword_ids = base.encode_text(&t.text);
            if subword_ids.is_empty() {
                return Err(Error::EmptyDecomposition(t.text.clone()));
            }
            let mut acc = vec![0.0f64; emb.dim];
            for &id in &subword_ids {
                let row = emb.row(id as usize).ok_or(Error::MissingEmbedding(id))?;
                for (a, v) in acc.iter_mut().zip(row) {
                    *a += *v as f64;
                }
            }
            let n = subword_ids.len() as f64;
            Ok(EmbeddingInit {
                token: t.text.clone(),
                id: offset + t.index,
                subword_ids,
                vector: acc.into_iter().map(|a| (a / n) as f32).collect(),
            })
        })
        .collect()
}

/// Stacks initialized vectors into a matrix of new rows, in id order.
pub fn stack_rows(inits: &[EmbeddingInit]) -> Result<EmbeddingMatrix, Error> {
    let dim = inits.first().map(|i| i.vector.len()).unwrap_or(0);
    let data: Vec<f32> = inits.iter().flat_map(|i| i.vector.iter().copied()).collect();
    EmbeddingMatrix::new(inits.len(), dim, data)
}

/// JSON index written beside a row matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowIndex {
    pub dim: usize,
    pub first_id: u32,
    pub rows: Vec<RowEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowEntry {
    pub id: u32,
    pub token: String,
    pub subword_ids: Vec<u32>,
}

pub fn row_index(inits: &[EmbeddingInit]) -> RowIndex {
    RowIndex {
        dim: inits.first().map(|i| i.vector.len()).unwrap_or(0),
        first_id: inits.first().map(|i| i.id).unwrap_or(0),
        rows: inits.iter().map(|i| RowEntry { id: i.id, token: i.token.clone(), subword_ids: i.subword_ids.clone() }).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::build_vocab;

    #[test]
    fn single_subword_copies_row() {
        let base = PieceTokenizer::synthetic();
        let emb = EmbeddingMatrix::random(base.vocab_size(), 8, 1);
        let vocab = build_vocab();
        let inits = init_embeddings(&vocab, &base, &emb).unwrap();
        let five = inits.iter().find(|i| i.token == "5").unwrap();
        assert_eq!(five.subword_ids.len(), 1);
        assert_eq!(five.vector.as_slice(), emb.row(five.subword_ids[0] as usize).unwrap());
    }

    #[test]
    fn two_subwords_average() {
        let base = PieceTokenizer::synthetic();
        let emb = EmbeddingMatrix::random(base.vocab_size(), 4, 2);
        let vocab = build_vocab();
        let inits = init_embeddings(&vocab, &base, &emb).unwrap();
        let t = inits.iter().find(|i| i.token == "12").unwrap();
        let (a, b) = (emb.row(t.subword_ids[0] as usize).unwrap(), emb.row(t.subword_ids[1] as usize).unwrap());
        for k in 0..4 {
            assert!((t.vector[k] - (a[k] + b[k]) / 2.0).abs() < 1e-7);
        }
    }

    #[test]
    fn byte_round_trip_and_shape_errors() {
        let m = EmbeddingMatrix::random(3, 5, 9);
        assert_eq!(EmbeddingMatrix::from_le_bytes(&m.to_le_bytes(), 3).unwrap(), m);
        assert!(EmbeddingMatrix::from_le_bytes(&m.to_le_bytes(), 4).is_err());
        let short = EmbeddingMatrix::random(10, 2, 0);
        let base = PieceTokenizer::synthetic();
        assert!(matches!(init_embeddings(&build_vocab(), &base, &short), Err(Error::MissingEmbedding(_))));
    }
}
