//! Lexical, morphological and reordering error counts for one system, with a
//! per-POS breakdown of the inflection errors.
//!
//! cargo run -p mtprof --example error_profile [system.conll]

use mtprof::taxonomy::{classify_edits, profile_system_detailed, ErrorCategory};
use mtprof::{Document, ReferenceSet, TerConfig};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

fn main() -> mtprof::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| format!("{DATA}/zst.conll"));
    let hyp = Document::read_annotated(&path)?;
    let refs = ReferenceSet::new(vec![
        Document::read_annotated(format!("{DATA}/pe1.conll"))?,
        Document::read_annotated(format!("{DATA}/pe2.conll"))?,
    ])?;

    let (profile, per_segment) = profile_system_detailed("system", &hyp, &refs, &TerConfig::lemma())?;
    println!("{path}");
    for cat in ErrorCategory::ALL {
        println!("  {:<14} {:>3}", cat.label(), profile.counts.get(cat));
    }
    println!("  {:<14} {:>3}", "Total", profile.total);

    println!("\ninflection errors by POS:");
    for (pos, n) in &profile.by_pos {
        println!("  {pos:<8} {n}");
    }

    println!("\nper segment (lexical/morph/reordering/morph&reo):");
    for (i, seg) in per_segment.iter().enumerate() {
        let c = classify_edits(&seg.script)?;
        println!("  {i}: {}/{}/{}/{}", c.lexical, c.morph, c.reordering, c.morph_reo);
    }
    Ok(())
}
