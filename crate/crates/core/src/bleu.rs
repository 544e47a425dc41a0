//! Corpus BLEU with multi-bleu conventions: clipped n-gram precision up to
//! 4-grams, closest-length brevity penalty, no smoothing by default.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Document, ReferenceSet, Segment};
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    #[default]
    None,
    /// Adds one to matches and totals of every order above unigrams.
    AddOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BleuConfig {
    pub smoothing: Smoothing,
    pub ignore_case: bool,
}

/// Sufficient statistics of one or more segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BleuStats {
    /// Clipped n-gram matches per order.
    pub matches: [u64; MAX_ORDER],
    /// Hypothesis n-grams per order.
    pub totals: [u64; MAX_ORDER],
    pub hyp_len: u64,
    /// Length of the reference closest in length to the hypothesis.
    pub ref_len: u64,
}

impl BleuStats {
    pub fn add(&mut self, other: &BleuStats) {
        for n in 0..MAX_ORDER {
            self.matches[n] += other.matches[n];
            self.totals[n] += other.totals[n];
        }
        self.hyp_len += other.hyp_len;
        self.ref_len += other.ref_len;
    }

    pub fn sum<'a>(stats: impl IntoIterator<Item = &'a BleuStats>) -> BleuStats {
        let mut acc = BleuStats::default();
        for s in stats {
            acc.add(s);
        }
        acc
    }

    pub fn score(&self, smoothing: Smoothing) -> BleuScore {
        let mut precisions = [0.0; MAX_ORDER];
        for n in 0..MAX_ORDER {
            let (m, t) = match smoothing {
                Smoothing::AddOne if n > 0 => (self.matches[n] + 1, self.totals[n] + 1),
                _ => (self.matches[n], self.totals[n]),
            };
            precisions[n] = if t == 0 { 0.0 } else { m as f64 / t as f64 };
        }
        let brevity_penalty = if self.hyp_len == 0 {
            0.0
        } else if self.hyp_len < self.ref_len {
            (1.0 - self.ref_len as f64 / self.hyp_len as f64).exp()
        } else {
            1.0
        };
        let score = if precisions.contains(&0.0) {
            0.0
        } else {
            let log_mean = precisions.iter().map(|p| p.ln()).sum::<f64>() / MAX_ORDER as f64;
            brevity_penalty * log_mean.exp()
        };
        let ratio = if self.ref_len == 0 {
            0.0
        } else {
            self.hyp_len as f64 / self.ref_len as f64
        };
        BleuScore {
            precisions,
            brevity_penalty,
            score,
            ratio,
            hyp_len: self.hyp_len,
            ref_len: self.ref_len,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BleuScore {
    pub precisions: [f64; MAX_ORDER],
    pub brevity_penalty: f64,
    /// In [0, 1]; multiply by 100 for the usual presentation.
    pub score: f64,
    pub ratio: f64,
    pub hyp_len: u64,
    pub ref_len: u64,
}

impl BleuScore {
    /// The one-line summary printed by multi-bleu.perl.
    pub fn summary_line(&self) -> String {
        let p = self.precisions.map(|p| 100.0 * p);
        format!(
            "BLEU = {:.2}, {:.1}/{:.1}/{:.1}/{:.1} (BP={:.3}, ratio={:.3}, hyp_len={}, ref_len={})",
            100.0 * self.score,
            p[0],
            p[1],
            p[2],
            p[3],
            self.brevity_penalty,
            self.ratio,
            self.hyp_len,
            self.ref_len
        )
    }
}

fn ngram_counts<'a, 'b>(words: &'b [&'a str], n: usize) -> HashMap<&'b [&'a str], u64> {
    let mut counts = HashMap::new();
    for gram in words.windows(n) {
        *counts.entry(gram).or_insert(0) += 1;
    }
    counts
}

fn words<'a>(seg: &'a Segment, lowered: &'a mut Vec<String>, ignore_case: bool) -> Vec<&'a str> {
    if ignore_case {
        *lowered = seg.surfaces().map(str::to_lowercase).collect();
        lowered.iter().map(String::as_str).collect()
    } else {
        seg.surfaces().collect()
    }
}

/// Statistics of one hypothesis segment against its references.
pub fn segment_stats(hyp: &Segment, refs: &[&Segment], config: &BleuConfig) -> BleuStats {
    let mut hyp_buf = Vec::new();
    let hyp_words = words(hyp, &mut hyp_buf, config.ignore_case);
    let mut ref_bufs: Vec<Vec<String>> = vec![Vec::new(); refs.len()];
    let ref_words: Vec<Vec<&str>> = refs
        .iter()
        .zip(ref_bufs.iter_mut())
        .map(|(r, buf)| words(r, buf, config.ignore_case))
        .collect();

    let mut stats = BleuStats {
        hyp_len: hyp_words.len() as u64,
        ..BleuStats::default()
    };
    // closest reference length, shorter on ties
    stats.ref_len = ref_words
        .iter()
        .map(|r| r.len())
        .min_by_key(|&len| (len.abs_diff(hyp_words.len()), len))
        .unwrap_or(0) as u64;

    for n in 1..=MAX_ORDER {
        let hyp_counts = ngram_counts(&hyp_words, n);
        let mut max_ref: HashMap<&[&str], u64> = HashMap::new();
        for r in &ref_words {
            for (gram, count) in ngram_counts(r, n) {
                let slot = max_ref.entry(gram).or_insert(0);
                *slot = (*slot).max(count);
            }
        }
        stats.totals[n - 1] = hyp_words.len().saturating_sub(n - 1) as u64;
        stats.matches[n - 1] = hyp_counts
            .iter()
            .map(|(gram, &c)| c.min(max_ref.get(gram).copied().unwrap_or(0)))
            .sum();
    }
    stats
}

/// Per-segment statistics for a document, in segment order.
pub fn corpus_stats(
    hyps: &Document,
    refs: &ReferenceSet,
    config: &BleuConfig,
) -> Result<Vec<BleuStats>> {
    if hyps.is_empty() {
        return Err(Error::Argument("BLEU needs at least one segment".into()));
    }
    refs.check_shape(hyps)?;
    Ok(hyps
        .segments()
        .par_iter()
        .enumerate()
        .map(|(idx, hyp)| segment_stats(hyp, &refs.segment_refs(idx), config))
        .collect())
}

pub fn corpus_bleu_with(
    hyps: &Document,
    refs: &ReferenceSet,
    config: &BleuConfig,
) -> Result<BleuScore> {
    let stats = corpus_stats(hyps, refs, config)?;
    Ok(BleuStats::sum(&stats).score(config.smoothing))
}

/// Corpus BLEU, case-sensitive and unsmoothed.
pub fn corpus_bleu(hyps: &Document, refs: &ReferenceSet) -> Result<BleuScore> {
    corpus_bleu_with(hyps, refs, &BleuConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(h: &[&str], r: &[&str]) -> BleuScore {
        let refs = ReferenceSet::single(Document::from_lines(r));
        corpus_bleu(&Document::from_lines(h), &refs).unwrap()
    }

    #[test]
    fn identity_is_100() {
        let s = single(&["a b c d e", "the cat sat on the mat"], &["a b c d e", "the cat sat on the mat"]);
        assert_eq!(100.0 * s.score, 100.0);
        assert_eq!(s.precisions, [1.0; 4]);
        assert_eq!(s.brevity_penalty, 1.0);
    }

    #[test]
    fn missing_fourgram_zeroes_score() {
        let s = single(&["the cat sat"], &["the cat sat down"]);
        assert_eq!(s.precisions[..3], [1.0, 1.0, 1.0]);
        assert_eq!(s.precisions[3], 0.0);
        assert_eq!(s.score, 0.0);
    }

    #[test]
    fn five_token_fixture() {
        let s = single(&["a b c d e"], &["a b c d f"]);
        assert_eq!(s.precisions, [0.8, 0.75, 2.0 / 3.0, 0.5]);
        assert_eq!(s.brevity_penalty, 1.0);
        // (4/5 * 3/4 * 2/3 * 1/2)^(1/4) = 0.2^(1/4)
        assert!((100.0 * s.score - 66.874).abs() < 1e-3, "{}", s.score);
    }

    #[test]
    fn clipping_uses_max_reference_count() {
        let refs = ReferenceSet::new(vec![
            Document::from_lines(&["the cat"]),
            Document::from_lines(&["the the mat"]),
        ])
        .unwrap();
        let stats = corpus_stats(&Document::from_lines(&["the the the"]), &refs, &BleuConfig::default()).unwrap();
        assert_eq!(stats[0].matches[0], 2);
        assert_eq!(stats[0].totals[0], 3);
        assert_eq!(stats[0].matches[1], 1);
    }

    #[test]
    fn closest_reference_length_prefers_shorter_on_tie() {
        let refs = ReferenceSet::new(vec![
            Document::from_lines(&["a b c d e f"]),
            Document::from_lines(&["a b"]),
        ])
        .unwrap();
        let stats = corpus_stats(&Document::from_lines(&["a b c d"]), &refs, &BleuConfig::default()).unwrap();
        assert_eq!(stats[0].ref_len, 2);
    }

    #[test]
    fn brevity_penalty_applies() {
        let s = single(&["a b c d"], &["a b c d e f g h"]);
        assert!((s.brevity_penalty - (1.0f64 - 2.0).exp()).abs() < 1e-15);
        assert!((s.score - s.brevity_penalty).abs() < 1e-15);
    }

    #[test]
    fn add_one_smoothing_rescues_short_segments() {
        let refs = ReferenceSet::single(Document::from_lines(&["the cat sat down"]));
        let cfg = BleuConfig {
            smoothing: Smoothing::AddOne,
            ..BleuConfig::default()
        };
        let s = corpus_bleu_with(&Document::from_lines(&["the cat sat"]), &refs, &cfg).unwrap();
        assert!(s.score > 0.0);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let refs = ReferenceSet::single(Document::from_lines::<&str>(&[]));
        assert!(matches!(
            corpus_bleu(&Document::from_lines::<&str>(&[]), &refs),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn summary_line_format() {
        let s = single(&["a b c d e"], &["a b c d f"]);
        assert_eq!(
            s.summary_line(),
            "BLEU = 66.87, 80.0/75.0/66.7/50.0 (BP=1.000, ratio=1.000, hyp_len=5, ref_len=5)"
        );
    }
}
