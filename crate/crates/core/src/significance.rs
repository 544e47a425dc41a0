//! Paired approximate randomization and bootstrap confidence intervals over
//! per-segment sufficient statistics.
//!
//! Corpus scores are always recomputed from summed statistics, never by
//! averaging segment scores. Trial `t` draws from its own ChaCha stream
//! `(seed, t)`, so results do not depend on thread count or scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bleu::{BleuStats, Smoothing};
use crate::error::{Error, Result};
use crate::ter::TerScore;

/// Per-segment statistics that can be pooled into a corpus score.
pub trait Metric: Sync {
    type Stats: Clone + Send + Sync;

    fn name(&self) -> &str;

    fn zero(&self) -> Self::Stats;

    fn accumulate(&self, acc: &mut Self::Stats, item: &Self::Stats);

    /// Corpus score of pooled statistics.
    fn score(&self, total: &Self::Stats) -> f64;

    fn corpus_score(&self, stats: &[Self::Stats]) -> f64 {
        let mut acc = self.zero();
        for s in stats {
            self.accumulate(&mut acc, s);
        }
        self.score(&acc)
    }
}

/// TER-family metric over (edits, denominator) pairs. Lower is better.
#[derive(Debug, Clone, Copy, Default)]
pub struct TerMetric;

impl Metric for TerMetric {
    type Stats = TerScore;

    fn name(&self) -> &str {
        "TER"
    }

    fn zero(&self) -> TerScore {
        TerScore::zero()
    }

    fn accumulate(&self, acc: &mut TerScore, item: &TerScore) {
        *acc = TerScore::sum([&*acc, item]);
    }

    fn score(&self, total: &TerScore) -> f64 {
        total.score
    }
}

/// BLEU over clipped n-gram counts and lengths. Higher is better.
#[derive(Debug, Clone, Copy, Default)]
pub struct BleuMetric {
    pub smoothing: Smoothing,
}

impl Metric for BleuMetric {
    type Stats = BleuStats;

    fn name(&self) -> &str {
        "BLEU"
    }

    fn zero(&self) -> BleuStats {
        BleuStats::default()
    }

    fn accumulate(&self, acc: &mut BleuStats, item: &BleuStats) {
        acc.add(item);
    }

    fn score(&self, total: &BleuStats) -> f64 {
        total.score(self.smoothing).score
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceResult {
    pub metric: String,
    pub score_a: f64,
    pub score_b: f64,
    /// `score_a - score_b`.
    pub observed_diff: f64,
    pub p_value: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SignificanceResult {
    pub fn is_significant(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// Significance level used for report markers.
pub const DEFAULT_ALPHA: f64 = 0.05;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Scores both systems after swapping the segments selected by `swap`.
pub(crate) fn swapped_diff<M: Metric>(
    metric: &M,
    a: &[M::Stats],
    b: &[M::Stats],
    mut swap: impl FnMut(usize) -> bool,
) -> f64 {
    let mut acc_a = metric.zero();
    let mut acc_b = metric.zero();
    for (i, (sa, sb)) in a.iter().zip(b).enumerate() {
        if swap(i) {
            metric.accumulate(&mut acc_a, sb);
            metric.accumulate(&mut acc_b, sa);
        } else {
            metric.accumulate(&mut acc_a, sa);
            metric.accumulate(&mut acc_b, sb);
        }
    }
    metric.score(&acc_a) - metric.score(&acc_b)
}

/// Paired approximate randomization test.
///
/// Each trial swaps every segment between the two systems with probability
/// 1/2 and recomputes both corpus scores. The p-value is
/// `(#{trials with |diff| >= |observed|} + 1) / (trials + 1)`.
pub fn approx_randomization<M: Metric>(
    metric: &M,
    a: &[M::Stats],
    b: &[M::Stats],
    trials: u64,
    seed: u64,
) -> Result<SignificanceResult> {
    if a.len() != b.len() {
        return Err(Error::Shape {
            what: "system B statistics".into(),
            expected: a.len(),
            found: b.len(),
        });
    }
    if trials == 0 {
        return Err(Error::Argument("trials must be at least 1".into()));
    }
    let score_a = metric.corpus_score(a);
    let score_b = metric.corpus_score(b);
    let observed = swapped_diff(metric, a, b, |_| false);
    let threshold = observed.abs();

    let at_least: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let diff = swapped_diff(metric, a, b, |_| rng.gen::<bool>());
            u64::from(diff.abs() >= threshold)
        })
        .sum();

    Ok(SignificanceResult {
        metric: metric.name().to_string(),
        score_a,
        score_b,
        observed_diff: observed,
        p_value: (at_least + 1) as f64 / (trials + 1) as f64,
        trials,
        seed,
    })
}

/// Percentile bootstrap interval of the corpus score at confidence `level`.
pub fn bootstrap_ci<M: Metric>(
    metric: &M,
    stats: &[M::Stats],
    trials: u64,
    seed: u64,
    level: f64,
) -> Result<(f64, f64)> {
    if stats.is_empty() {
        return Err(Error::Argument("bootstrap needs at least one segment".into()));
    }
    if trials < 100 {
        return Err(Error::Argument("bootstrap needs at least 100 trials".into()));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Argument(format!("confidence level {level} outside (0, 1)")));
    }
    let n = stats.len();
    let mut scores: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut acc = metric.zero();
            for _ in 0..n {
                metric.accumulate(&mut acc, &stats[rng.gen_range(0..n)]);
            }
            metric.score(&acc)
        })
        .collect();
    scores.sort_by(f64::total_cmp);

    let tail = (1.0 - level) / 2.0;
    let last = scores.len() - 1;
    let lo = ((tail * trials as f64).floor() as usize).min(last);
    let hi = (((1.0 - tail) * trials as f64).ceil() as usize)
        .saturating_sub(1)
        .min(last);
    Ok((scores[lo], scores[hi]))
}
