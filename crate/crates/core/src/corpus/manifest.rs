use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

use super::{Document, ReferenceSet};

/// A batch description: which hypothesis file belongs to which system, the
/// reference files, and the system every other one is normalized against.
///
/// ```toml
/// baseline = "NMT"
/// annotated = true
/// references = ["pe0.tsv", "pe1.tsv"]
///
/// [[systems]]
/// name = "NMT"
/// path = "nmt.tsv"
/// ```
///
/// Relative paths are resolved against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub systems: Vec<(String, PathBuf)>,
    pub references: Vec<PathBuf>,
    pub baseline: String,
    pub annotated: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    baseline: String,
    #[serde(default)]
    annotated: bool,
    references: Vec<PathBuf>,
    systems: Vec<RawSystem>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    name: String,
    path: PathBuf,
}

/// Documents loaded from a manifest, all checked for equal segment counts.
#[derive(Debug, Clone)]
pub struct LoadedCorpus {
    pub systems: Vec<(String, Document)>,
    pub references: ReferenceSet,
}

impl Manifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Manifest> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Manifest::parse(&text, base).map_err(|e| match e {
            Error::Argument(message) => Error::Config {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    /// Parses manifest text, resolving relative paths against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Manifest> {
        let raw: RawManifest =
            toml::from_str(text).map_err(|e| Error::Argument(e.message().to_string()))?;
        let resolve = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };
        let manifest = Manifest {
            systems: raw
                .systems
                .into_iter()
                .map(|s| (s.name, resolve(s.path)))
                .collect(),
            references: raw.references.into_iter().map(resolve).collect(),
            baseline: raw.baseline,
            annotated: raw.annotated,
        };
        manifest.validate()?;
        Ok(manifest)
    }

    fn validate(&self) -> Result<()> {
        if self.systems.is_empty() {
            return Err(Error::Argument("manifest lists no systems".into()));
        }
        if self.references.is_empty() {
            return Err(Error::Argument("manifest lists no references".into()));
        }
        for (i, (name, _)) in self.systems.iter().enumerate() {
            if self.systems[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::Argument(format!("duplicate system `{name}`")));
            }
        }
        if !self.systems.iter().any(|(n, _)| *n == self.baseline) {
            return Err(Error::UnknownBaseline(self.baseline.clone()));
        }
        Ok(())
    }

    /// Reads every listed document and checks that segment counts agree.
    pub fn load_documents(&self) -> Result<LoadedCorpus> {
        let refs = self
            .references
            .iter()
            .map(|p| Document::read(p, self.annotated))
            .collect::<Result<Vec<_>>>()?;
        let references = ReferenceSet::new(refs)?;
        let mut systems = Vec::with_capacity(self.systems.len());
        for (name, path) in &self.systems {
            let doc = Document::read(path, self.annotated)?;
            references.check_shape(&doc).map_err(|e| e.in_file(path))?;
            systems.push((name.clone(), doc));
        }
        Ok(LoadedCorpus {
            systems,
            references,
        })
    }
}
