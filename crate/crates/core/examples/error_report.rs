//! The full batch: load every system listed in a manifest, profile its errors
//! against the post-edits, and print the baseline-normalized table.
//!
//! cargo run -p mtprof --example error_report [run.toml]

use mtprof::corpus::Manifest;
use mtprof::report::{Format, ReportTable};
use mtprof::taxonomy::profile_system;
use mtprof::TerConfig;

fn main() -> mtprof::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/run.toml").into());
    let manifest = Manifest::load(&path)?;
    let corpus = manifest.load_documents()?;

    let profiles = corpus
        .systems
        .iter()
        .map(|(name, doc)| profile_system(name, doc, &corpus.references, &TerConfig::lemma()))
        .collect::<mtprof::Result<Vec<_>>>()?;
    for p in &profiles {
        println!("{:<6} raw counts {:?}, total {}", p.system, p.counts, p.total);
    }
    println!();

    let table = ReportTable::from_profiles(&profiles, &manifest.baseline, Some("example corpus".into()))?;
    print!("{}", table.render(Format::Markdown));
    Ok(())
}
