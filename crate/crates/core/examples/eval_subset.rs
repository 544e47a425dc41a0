//! Finds the test segments that also appear in another evaluation set, so
//! scores can be compared on exactly the shared sentences.
//!
//! cargo run -p mtprof --example eval_subset

use mtprof::corpus::match_eval_subset;
use mtprof::Document;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

fn main() -> mtprof::Result<()> {
    let candidate = Document::read_plain(format!("{DATA}/pe1.txt"))?;
    let anchors = Document::read_plain(format!("{DATA}/anchors.txt"))?;
    let pairs = match_eval_subset(&candidate, &anchors);
    println!("{} of {} segments are shared:", pairs.len(), candidate.len());
    for (c, a) in pairs {
        let text: Vec<&str> = candidate.segments()[c].surfaces().collect();
        println!("  candidate {c} = anchor {a}: {}", text.join(" "));
    }
    Ok(())
}
