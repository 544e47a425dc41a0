mod common;

use common::*;
use mtprof::taxonomy::{
    classify, classify_edits, deltas, normalize, profile_system, CategoryCounts, ErrorProfile,
};
use mtprof::ter::{ter_single, EditKind, TerConfig};
use mtprof::ReferenceSet;
use proptest::prelude::*;

fn seq(max_len: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec((0usize..9).prop_map(|k| format!("w{k}")), 0..=max_len)
}

fn counts() -> impl Strategy<Value = CategoryCounts> {
    (0u64..500, 0u64..500, 0u64..500, 0u64..500).prop_map(|(l, m, r, mr)| CategoryCounts {
        lexical: l,
        morph: m,
        reordering: r,
        morph_reo: mr,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn categories_account_for_every_error(h in seq(12), r in seq(12)) {
        let (score, script) = ter_single(&annotated_segment(&h), &annotated_segment(&r), &TerConfig::lemma()).unwrap();
        let c = classify_edits(&script).unwrap();
        prop_assert_eq!(c.lexical + c.reordering + c.morph_reo, score.edits);
        let inflected = script.ops.iter().filter(|o| o.kind == EditKind::Match && !o.surface_equal).count();
        prop_assert_eq!(c.morph, inflected as u64);
        prop_assert_eq!(c.total(), score.edits + inflected as u64);
    }

    #[test]
    fn provenance_is_consistent(h in seq(12), r in seq(12)) {
        let (_, script) = ter_single(&annotated_segment(&h), &annotated_segment(&r), &TerConfig::lemma()).unwrap();
        for op in &script.ops {
            let lemmas = (
                op.hyp_token.as_ref().and_then(|t| t.lemma.as_ref()),
                op.ref_token.as_ref().and_then(|t| t.lemma.as_ref()),
            );
            match op.kind {
                // morphological candidates always share the lemma
                EditKind::Match | EditKind::ShiftMatch => prop_assert_eq!(lemmas.0, lemmas.1),
                // lexical substitutions never do
                EditKind::Substitution => prop_assert_ne!(lemmas.0, lemmas.1),
                _ => {}
            }
        }
    }

    #[test]
    fn by_pos_counts_inflected_tokens(h in seq(12), r in seq(12)) {
        let (_, script) = ter_single(&annotated_segment(&h), &annotated_segment(&r), &TerConfig::lemma()).unwrap();
        let c = classify(&script).unwrap();
        let inflected = script.ops.iter()
            .filter(|o| matches!(o.kind, EditKind::Match | EditKind::ShiftMatch) && !o.surface_equal)
            .count() as u64;
        prop_assert_eq!(c.by_pos.values().sum::<u64>(), inflected);
    }

    #[test]
    fn baseline_deltas_vanish(base in counts(), others in prop::collection::vec(counts(), 0..4)) {
        prop_assume!(base.total() > 0);
        let mut profiles = vec![ErrorProfile::new("base", base)];
        profiles.extend(others.iter().enumerate().map(|(i, c)| ErrorProfile::new(format!("s{i}"), *c)));
        let n = normalize(&profiles, "base").unwrap();
        prop_assert_eq!(n[0].total_pct, 100.0);
        let d = deltas(&n, "base").unwrap();
        prop_assert_eq!(d[0].total, 0.0);
        prop_assert_eq!(d[0].deltas.lexical, 0.0);
        prop_assert_eq!(d[0].deltas.morph_reo, 0.0);
        for rep in &d {
            let parts = rep.deltas.lexical + rep.deltas.morph + rep.deltas.reordering + rep.deltas.morph_reo;
            prop_assert!((parts - rep.total).abs() < 1e-9);
        }
    }

    #[test]
    fn scaling_all_counts_changes_nothing(base in counts(), other in counts(), k in 2u64..50) {
        prop_assume!(base.total() > 0);
        let scale = |c: &CategoryCounts| c.map(|x| x * k);
        let plain = vec![ErrorProfile::new("b", base), ErrorProfile::new("o", other)];
        let scaled = vec![ErrorProfile::new("b", scale(&base)), ErrorProfile::new("o", scale(&other))];
        let (n1, n2) = (normalize(&plain, "b").unwrap(), normalize(&scaled, "b").unwrap());
        prop_assert_eq!(&n1, &n2);
        prop_assert_eq!(deltas(&n1, "b").unwrap(), deltas(&n2, "b").unwrap());
    }
}

#[test]
fn engineered_corpus_profile() {
    let (hyp, pe) = four_error_corpus();
    let profile = profile_system("sys", &hyp, &ReferenceSet::single(pe), &TerConfig::lemma()).unwrap();
    assert_eq!(
        (profile.counts.lexical, profile.counts.morph, profile.counts.reordering, profile.counts.morph_reo),
        (2, 1, 1, 0)
    );
    assert_eq!(profile.total, 4);
    assert_eq!(profile.by_pos.get("VVFIN"), Some(&1));
}

#[test]
fn engineered_corpus_matches_exhaustive_oracle() {
    // lemma-level edits per segment, checked against the unconstrained single-shift oracle
    let (hyp, pe) = four_error_corpus();
    for (h, r) in hyp.segments().iter().zip(pe.segments()) {
        let lemmas = |s: &mtprof::Segment| s.tokens.iter().map(|t| t.lemma.clone().unwrap()).collect::<Vec<_>>();
        let (score, _) = ter_single(h, r, &TerConfig::lemma()).unwrap();
        assert_eq!(score.edits as usize, single_shift_oracle(&lemmas(h), &lemmas(r)));
    }
}

#[test]
fn identity_corpus_profile_is_empty() {
    let (hyp, _) = four_error_corpus();
    let p = profile_system("sys", &hyp, &ReferenceSet::single(hyp.clone()), &TerConfig::lemma()).unwrap();
    assert_eq!(p.total, 0);
}

#[test]
fn table_four_proportions() {
    let profiles = table4_recurrent_profiles();
    let n = normalize(&profiles, "NMT").unwrap();
    let d = deltas(&n, "NMT").unwrap();
    let r2 = |x: f64| format!("{x:.2}");
    assert_eq!(r2(n[0].total_pct), "100.00");
    assert_eq!(r2(n[1].total_pct), "90.31");
    assert_eq!(r2(n[2].total_pct), "109.84");
    assert_eq!(r2(d[1].total), "-9.69");
    assert_eq!(r2(d[2].total), "9.84");
    assert_eq!(r2(d[1].deltas.lexical), "-7.64");
}
