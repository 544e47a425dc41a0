//! Error profiling for machine translation output.
//!
//! * [`corpus`]: plain and lemma/POS-annotated documents, reference sets,
//!   manifests, and evaluation-subset matching.
//! * [`ter`]: TER with greedy block shifts; multi-reference (mTER) and
//!   lemma-matching (lmmTER) variants with full edit scripts.
//! * [`bleu`]: corpus BLEU with multi-bleu conventions.
//! * [`taxonomy`]: lexical / morphological / reordering error counts from
//!   lemma-level edit scripts, baseline normalization and deltas.
//! * [`significance`]: approximate randomization and bootstrap intervals.
//! * [`report`]: normalized error tables.
//! * [`cli`]: the `mtprof` command line.

pub mod bleu;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod report;
pub mod significance;
pub mod taxonomy;
pub mod ter;

pub use corpus::{Document, ReferenceSet, Segment, Token};
pub use error::{Error, Result};
pub use ter::{EditKind, EditOp, EditScript, MatchMode, TerConfig, TerScore};
