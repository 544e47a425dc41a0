//! Input data: tokens, segments, documents, reference sets and manifests.
//!
//! Two on-disk formats are supported. The plain format holds one segment per
//! line with space-separated tokens. The annotated format holds one token per
//! line as `surface<TAB>lemma<TAB>pos`, with a blank line closing each segment.

mod format;
mod manifest;

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Side};

pub use format::{parse_annotated, parse_plain, serialize_annotated, serialize_plain};
pub use manifest::{LoadedCorpus, Manifest};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<String>,
}

impl Token {
    /// A bare surface token with no annotation.
    pub fn plain(surface: impl Into<String>) -> Token {
        Token {
            surface: surface.into(),
            lemma: None,
            pos: None,
        }
    }

    pub fn annotated(
        surface: impl Into<String>,
        lemma: impl Into<String>,
        pos: impl Into<String>,
    ) -> Token {
        Token {
            surface: surface.into(),
            lemma: Some(lemma.into()),
            pos: Some(pos.into()),
        }
    }

    pub fn is_annotated(&self) -> bool {
        self.lemma.is_some() && self.pos.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub id: usize,
    pub tokens: Vec<Token>,
}

impl Segment {
    pub fn new(id: usize, tokens: Vec<Token>) -> Segment {
        Segment { id, tokens }
    }

    /// Builds an unannotated segment by splitting `text` on whitespace.
    pub fn from_plain(id: usize, text: &str) -> Segment {
        Segment::new(id, text.split_whitespace().map(Token::plain).collect())
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn is_annotated(&self) -> bool {
        self.tokens.iter().all(Token::is_annotated)
    }

    pub fn surfaces(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.surface.as_str())
    }

    pub(crate) fn require_annotated(&self, side: Side) -> Result<()> {
        if self.is_annotated() {
            Ok(())
        } else {
            Err(Error::AnnotationMissing {
                side,
                segment: self.id,
            })
        }
    }
}

/// An ordered list of segments. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    segments: Vec<Segment>,
    annotated: bool,
}

impl Document {
    /// Renumbers segments from zero and derives the annotation flag.
    pub fn from_segments(segments: Vec<Segment>) -> Document {
        let segments: Vec<Segment> = segments
            .into_iter()
            .enumerate()
            .map(|(id, s)| Segment::new(id, s.tokens))
            .collect();
        let annotated = segments.iter().all(Segment::is_annotated);
        Document {
            segments,
            annotated,
        }
    }

    /// Convenience constructor: one whitespace-tokenized segment per string.
    pub fn from_lines<S: AsRef<str>>(lines: &[S]) -> Document {
        let segments = lines
            .iter()
            .enumerate()
            .map(|(id, l)| Segment::from_plain(id, l.as_ref()))
            .collect();
        Document {
            segments,
            annotated: false,
        }
    }

    pub(crate) fn unannotated(segments: Vec<Segment>) -> Document {
        Document {
            segments,
            annotated: false,
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn annotated(&self) -> bool {
        self.annotated
    }

    pub fn token_count(&self) -> usize {
        self.segments.iter().map(Segment::len).sum()
    }

    /// Reads a plain-format file.
    pub fn read_plain(path: impl AsRef<Path>) -> Result<Document> {
        let path = path.as_ref();
        let bytes = read_bytes(path)?;
        parse_plain(&bytes).map_err(|e| e.in_file(path))
    }

    /// Reads an annotated-format file.
    pub fn read_annotated(path: impl AsRef<Path>) -> Result<Document> {
        let path = path.as_ref();
        let bytes = read_bytes(path)?;
        parse_annotated(&bytes).map_err(|e| e.in_file(path))
    }

    pub fn read(path: impl AsRef<Path>, annotated: bool) -> Result<Document> {
        if annotated {
            Document::read_annotated(path)
        } else {
            Document::read_plain(path)
        }
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// One or more reference documents with identical segment counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSet {
    references: Vec<Document>,
}

impl ReferenceSet {
    pub fn new(references: Vec<Document>) -> Result<ReferenceSet> {
        let first = references
            .first()
            .ok_or_else(|| Error::Argument("reference set needs at least one document".into()))?;
        let expected = first.len();
        for (i, doc) in references.iter().enumerate().skip(1) {
            if doc.len() != expected {
                return Err(Error::Shape {
                    what: format!("reference {i}"),
                    expected,
                    found: doc.len(),
                });
            }
        }
        Ok(ReferenceSet { references })
    }

    pub fn single(reference: Document) -> ReferenceSet {
        ReferenceSet {
            references: vec![reference],
        }
    }

    pub fn documents(&self) -> &[Document] {
        &self.references
    }

    /// Number of reference documents.
    pub fn count(&self) -> usize {
        self.references.len()
    }

    /// Number of segments in every member document.
    pub fn segment_count(&self) -> usize {
        self.references[0].len()
    }

    /// The references for segment `idx`, one per document.
    pub fn segment_refs(&self, idx: usize) -> Vec<&Segment> {
        self.references.iter().map(|d| &d.segments()[idx]).collect()
    }

    pub fn annotated(&self) -> bool {
        self.references.iter().all(Document::annotated)
    }

    /// Checks that `hyps` has as many segments as the references.
    pub fn check_shape(&self, hyps: &Document) -> Result<()> {
        if hyps.len() != self.segment_count() {
            return Err(Error::Shape {
                what: "hypothesis".into(),
                expected: self.segment_count(),
                found: hyps.len(),
            });
        }
        Ok(())
    }
}

/// Pairs every candidate segment whose surface token sequence exactly equals
/// some anchor segment with the lowest such anchor index. Sorted by candidate id.
pub fn match_eval_subset(candidate: &Document, anchors: &Document) -> Vec<(usize, usize)> {
    let mut first_anchor: HashMap<Vec<&str>, usize> = HashMap::new();
    for (idx, seg) in anchors.segments().iter().enumerate() {
        first_anchor.entry(seg.surfaces().collect()).or_insert(idx);
    }
    candidate
        .segments()
        .iter()
        .enumerate()
        .filter_map(|(idx, seg)| {
            let key: Vec<&str> = seg.surfaces().collect();
            first_anchor.get(&key).map(|&a| (idx, a))
        })
        .collect()
}
