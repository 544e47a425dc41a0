mod common;

use common::*;
use mtprof::bleu::{corpus_bleu, corpus_stats, BleuConfig, BleuStats};
use mtprof::significance::{approx_randomization, bootstrap_ci, BleuMetric, Metric, TerMetric};
use mtprof::ter::{corpus_ter, segment_ters, TerConfig, TerScore};
use mtprof::{Document, ReferenceSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ter_stats() -> impl Strategy<Value = Vec<TerScore>> {
    prop::collection::vec((0u64..12, 1u32..15), 1..30)
        .prop_map(|v| v.into_iter().map(|(e, d)| TerScore::new(e, d as f64)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn interval_contains_point_estimate(stats in ter_stats(), level in 0.5f64..0.99, seed in any::<u64>()) {
        let point = TerMetric.corpus_score(&stats);
        let (lo, hi) = bootstrap_ci(&TerMetric, &stats, 400, seed, level).unwrap();
        prop_assert!(lo <= point && point <= hi, "{lo} <= {point} <= {hi}");
    }

    #[test]
    fn p_value_in_unit_interval(a in ter_stats(), seed in any::<u64>()) {
        let b: Vec<TerScore> = a.iter().rev().cloned().collect();
        let r = approx_randomization(&TerMetric, &a, &b, 200, seed).unwrap();
        prop_assert!(r.p_value > 0.0 && r.p_value <= 1.0);
    }
}

fn random_docs(rng: &mut ChaCha8Rng, n: usize) -> (Document, Document, ReferenceSet) {
    let line = |rng: &mut ChaCha8Rng| words(rng, 10, 12).join(" ");
    let a: Vec<String> = (0..n).map(|_| line(rng)).collect();
    let b: Vec<String> = (0..n).map(|_| line(rng)).collect();
    let refs: Vec<Document> = (0..2)
        .map(|_| Document::from_lines(&(0..n).map(|_| line(rng)).collect::<Vec<_>>()))
        .collect();
    (Document::from_lines(&a), Document::from_lines(&b), ReferenceSet::new(refs).unwrap())
}

#[test]
fn pooled_stats_reproduce_corpus_scores_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (a, _, refs) = random_docs(&mut rng, 25);
        let segs: Vec<TerScore> = segment_ters(&a, &refs, &TerConfig::surface())
            .unwrap()
            .into_iter()
            .map(|s| s.score)
            .collect();
        let corpus = corpus_ter(&a, &refs, &TerConfig::surface()).unwrap();
        assert_eq!(TerMetric.corpus_score(&segs).to_bits(), corpus.score.to_bits());

        let stats = corpus_stats(&a, &refs, &BleuConfig::default()).unwrap();
        let bleu = corpus_bleu(&a, &refs).unwrap();
        assert_eq!(BleuMetric::default().corpus_score(&stats).to_bits(), bleu.score.to_bits());
    }
}

#[test]
fn larger_observed_difference_never_raises_p() {
    // b2 is b with every segment made worse, so |diff| grows
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a: Vec<TerScore> = (0..12).map(|_| TerScore::new(rng.gen_range(0..4), 10.0)).collect();
    let b: Vec<TerScore> = a.iter().map(|s| TerScore::new(s.edits + 1, 10.0)).collect();
    let b2: Vec<TerScore> = a.iter().map(|s| TerScore::new(s.edits + 3, 10.0)).collect();
    let p1 = approx_randomization(&TerMetric, &a, &b, 5000, 1).unwrap().p_value;
    let p2 = approx_randomization(&TerMetric, &a, &b2, 5000, 1).unwrap().p_value;
    assert!(p2 <= p1, "{p2} > {p1}");
}

#[test]
fn bleu_randomization_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (a, b, refs) = random_docs(&mut rng, 8);
    let cfg = BleuConfig {
        smoothing: mtprof::bleu::Smoothing::AddOne,
        ..BleuConfig::default()
    };
    let metric = BleuMetric { smoothing: cfg.smoothing };
    let sa = corpus_stats(&a, &refs, &cfg).unwrap();
    let sb = corpus_stats(&b, &refs, &cfg).unwrap();
    let exact = exact_ar_p(&sa, &sb, |s: &[BleuStats]| BleuStats::sum(s).score(cfg.smoothing).score);
    let r = approx_randomization(&metric, &sa, &sb, 50_000, 4).unwrap();
    assert!((r.p_value - exact).abs() <= 0.01, "{} vs {exact}", r.p_value);
}
