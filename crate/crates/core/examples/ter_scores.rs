//! TER against one post-edit, mTER against both, and lmmTER (lemma matching),
//! followed by the edit script of the first segment.
//!
//! cargo run -p mtprof --example ter_scores

use mtprof::ter::{corpus_ter, segment_ters};
use mtprof::{Document, ReferenceSet, TerConfig};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

fn main() -> mtprof::Result<()> {
    let hyp = Document::read_annotated(format!("{DATA}/nmt.conll"))?;
    let pe1 = Document::read_annotated(format!("{DATA}/pe1.conll"))?;
    let pe2 = Document::read_annotated(format!("{DATA}/pe2.conll"))?;

    let single = ReferenceSet::single(pe1.clone());
    let both = ReferenceSet::new(vec![pe1, pe2])?;

    let ter = corpus_ter(&hyp, &single, &TerConfig::surface())?;
    let mter = corpus_ter(&hyp, &both, &TerConfig::surface())?;
    let lmm = corpus_ter(&hyp, &both, &TerConfig::lemma())?;
    println!("TER    {:6.2}  ({} edits / {} words)", 100.0 * ter.score, ter.edits, ter.denominator);
    println!("mTER   {:6.2}  ({} edits / {} words)", 100.0 * mter.score, mter.edits, mter.denominator);
    println!("lmmTER {:6.2}  ({} edits / {} words)", 100.0 * lmm.score, lmm.edits, lmm.denominator);

    let segments = segment_ters(&hyp, &both, &TerConfig::lemma())?;
    let first = &segments[0];
    println!("\nsegment 0, closest post-edit #{}:", first.chosen_ref);
    for shift in &first.script.shifts {
        println!("  shift tokens {:?} from {} to {}", shift.hyp_indices, shift.from, shift.to);
    }
    for op in &first.script.ops {
        let word = |t: &Option<mtprof::Token>| t.as_ref().map_or("-".to_string(), |t| t.surface.clone());
        println!(
            "  {:<12} {:<8} {:<8}{}",
            format!("{:?}", op.kind),
            word(&op.hyp_token),
            word(&op.ref_token),
            if op.surface_equal || op.hyp_token.is_none() || op.ref_token.is_none() { "" } else { "  (surface differs)" }
        );
    }
    Ok(())
}
