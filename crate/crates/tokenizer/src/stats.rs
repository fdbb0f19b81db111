//! Sequence-length statistics with and without the special vocabulary.

use rayon::prelude::*;
use serde::Serialize;

use crate::codec::Codec;
use crate::Error;

/// Width of one ratio histogram bin.
pub const RATIO_BIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileCounts {
    pub base: usize,
    pub special: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    /// Lower edge of each bin; bins are `[edge, edge + width)`.
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompressionStats {
    pub files: usize,
    pub mean_before: f64,
    pub mean_after: f64,
    /// `mean_after / mean_before`.
    pub ratio: f64,
    pub per_file: Vec<FileCounts>,
    /// Distribution of per-file `special / base` ratios.
    pub ratio_histogram: Histogram,
}

fn ratio_histogram(per_file: &[FileCounts]) -> Histogram {
    let bins = (1.0 / RATIO_BIN).round() as usize;
    let mut counts = vec![0; bins];
    for f in per_file {
        let r = if f.base == 0 { 1.0 } else { f.special as f64 / f.base as f64 };
        let b = ((r / RATIO_BIN).floor() as usize).min(bins - 1);
        counts[b] += 1;
    }
    Histogram { edges: (0..bins).map(|i| i as f64 * RATIO_BIN).collect(), counts }
}

/// Histogram of token counts with bins of `width` tokens.
pub fn count_histogram(counts: impl IntoIterator<Item = usize>, width: usize) -> Histogram {
    let width = width.max(1);
    let mut bins: Vec<usize> = Vec::new();
    for c in counts {
        let b = c / width;
        if bins.len() <= b {
            bins.resize(b + 1, 0);
        }
        bins[b] += 1;
    }
    Histogram { edges: (0..bins.len()).map(|i| (i * width) as f64).collect(), counts: bins }
}

pub fn compression_stats<S: AsRef<str> + Sync>(corpus: &[S], codec: &Codec) -> Result<CompressionStats, Error> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let per_file: Vec<FileCounts> = corpus
        .par_iter()
        .map(|s| FileCounts { base: codec.base.encode_text(s.as_ref()).len(), special: codec.encode(s.as_ref()).len() })
        .collect();
    let n = per_file.len() as f64;
    let mean_before = per_file.iter().map(|f| f.base as f64).sum::<f64>() / n;
    let mean_after = per_file.iter().map(|f| f.special as f64).sum::<f64>() / n;
    let ratio = if mean_before == 0.0 { 1.0 } else { mean_after / mean_before };
    Ok(CompressionStats { files: per_file.len(), mean_before, mean_after, ratio, ratio_histogram: ratio_histogram(&per_file), per_file })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::PieceTokenizer;
    use crate::vocab::build_vocab;

    #[test]
    fn prose_is_unchanged() {
        let base = PieceTokenizer::synthetic();
        let vocab = build_vocab();
        let c = Codec::new(&base, &vocab);
        let s = compression_stats(&["just some words here"], &c).unwrap();
        assert_eq!(s.ratio, 1.0);
    }

    #[test]
    fn repeated_literal_ratio() {
        let base = PieceTokenizer::synthetic();
        let vocab = build_vocab();
        let c = Codec::new(&base, &vocab);
        let s = compression_stats(&["-128 -128 -128"], &c).unwrap();
        // each literal: 4 base tokens become 1; the two spaces stay
        assert_eq!(s.per_file[0], FileCounts { base: 14, special: 5 });
        assert!(matches!(compression_stats::<&str>(&[], &c), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn histograms() {
        let h = count_histogram([0, 5, 12, 12], 10);
        assert_eq!(h.counts, vec![2, 2]);
        assert_eq!(h.edges, vec![0.0, 10.0]);
    }
}
