//! Corpus BLEU for each system against both post-edits, in the familiar
//! multi-bleu summary format.
//!
//! cargo run -p mtprof --example bleu_score

use mtprof::bleu::corpus_bleu;
use mtprof::{Document, ReferenceSet};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

fn main() -> mtprof::Result<()> {
    let refs = ReferenceSet::new(vec![
        Document::read_plain(format!("{DATA}/pe1.txt"))?,
        Document::read_plain(format!("{DATA}/pe2.txt"))?,
    ])?;
    for name in ["nmt", "mnmt", "zst"] {
        let hyp = Document::read_plain(format!("{DATA}/{name}.txt"))?;
        let score = corpus_bleu(&hyp, &refs)?;
        println!("{name:<5} {}", score.summary_line());
    }
    Ok(())
}
