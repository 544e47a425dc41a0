//! Error categories derived from lemma-level edit scripts.
//!
//! Every edit op of a lemma-mode script falls into one category:
//!
//! | op                                   | category              |
//! |--------------------------------------|-----------------------|
//! | substitution, insertion, deletion    | lexical               |
//! | in-place match, surfaces differ      | morphological         |
//! | shift block, all surfaces agree      | reordering            |
//! | shift block, some surface differs    | morph. & reordering   |
//!
//! A shift block counts once however many tokens it moves, as TER does, so
//! lexical + reordering + morph. & reordering equals the script's edit count
//! and morphological equals its number of surface-only mismatches.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{Document, ReferenceSet};
use crate::error::{Error, Result, Side};
use crate::ter::{segment_ters, EditKind, EditScript, MatchMode, SegmentTer, TerConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCategory {
    Lexical,
    Morph,
    Reordering,
    MorphReo,
}

impl ErrorCategory {
    pub const ALL: [ErrorCategory; 4] = [
        ErrorCategory::Lexical,
        ErrorCategory::Morph,
        ErrorCategory::Reordering,
        ErrorCategory::MorphReo,
    ];

    /// Row label as used in published error tables.
    pub fn label(self) -> &'static str {
        match self {
            ErrorCategory::Lexical => "Lexical",
            ErrorCategory::Morph => "Morph",
            ErrorCategory::Reordering => "Reordering",
            ErrorCategory::MorphReo => "Morph. & Reo.",
        }
    }
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One value per error category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PerCategory<T> {
    pub lexical: T,
    pub morph: T,
    pub reordering: T,
    pub morph_reo: T,
}

pub type CategoryCounts = PerCategory<u64>;

impl<T: Copy> PerCategory<T> {
    pub fn get(&self, cat: ErrorCategory) -> T {
        match cat {
            ErrorCategory::Lexical => self.lexical,
            ErrorCategory::Morph => self.morph,
            ErrorCategory::Reordering => self.reordering,
            ErrorCategory::MorphReo => self.morph_reo,
        }
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> PerCategory<U> {
        PerCategory {
            lexical: f(self.lexical),
            morph: f(self.morph),
            reordering: f(self.reordering),
            morph_reo: f(self.morph_reo),
        }
    }

    pub fn zip_with<U: Copy, V>(&self, other: &PerCategory<U>, f: impl Fn(T, U) -> V) -> PerCategory<V> {
        PerCategory {
            lexical: f(self.lexical, other.lexical),
            morph: f(self.morph, other.morph),
            reordering: f(self.reordering, other.reordering),
            morph_reo: f(self.morph_reo, other.morph_reo),
        }
    }
}

impl PerCategory<u64> {
    pub fn get_mut(&mut self, cat: ErrorCategory) -> &mut u64 {
        match cat {
            ErrorCategory::Lexical => &mut self.lexical,
            ErrorCategory::Morph => &mut self.morph,
            ErrorCategory::Reordering => &mut self.reordering,
            ErrorCategory::MorphReo => &mut self.morph_reo,
        }
    }

    pub fn total(&self) -> u64 {
        self.lexical + self.morph + self.reordering + self.morph_reo
    }

    pub fn add(&mut self, other: &CategoryCounts) {
        *self = self.zip_with(other, |a, b| a + b);
    }
}

/// Category counts of one script, with the POS tags of morphologically wrong tokens.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Classification {
    pub counts: CategoryCounts,
    pub by_pos: BTreeMap<String, u64>,
}

fn check_provenance(script: &EditScript) -> Result<()> {
    let missing = || Error::AnnotationMissing {
        side: Side::Hypothesis,
        segment: script.segment_id,
    };
    if script.mode != MatchMode::Lemma {
        return Err(missing());
    }
    for op in &script.ops {
        if op.hyp_token.as_ref().is_some_and(|t| !t.is_annotated()) {
            return Err(missing());
        }
        if op.ref_token.as_ref().is_some_and(|t| !t.is_annotated()) {
            return Err(Error::AnnotationMissing {
                side: Side::Reference,
                segment: script.segment_id,
            });
        }
    }
    Ok(())
}

/// Classifies a lemma-mode edit script.
pub fn classify(script: &EditScript) -> Result<Classification> {
    check_provenance(script)?;
    let mut out = Classification::default();
    let mut note_pos = |op: &crate::ter::EditOp| {
        if let Some(pos) = op.hyp_token.as_ref().and_then(|t| t.pos.clone()) {
            *out.by_pos.entry(pos).or_insert(0) += 1;
        }
    };

    let mut counts = CategoryCounts::default();
    for op in &script.ops {
        match op.kind {
            k if k.is_edit() => counts.lexical += 1,
            EditKind::Match if !op.surface_equal => {
                counts.morph += 1;
                note_pos(op);
            }
            EditKind::ShiftMatch if !op.surface_equal => note_pos(op),
            _ => {}
        }
    }
    for shift in &script.shifts {
        let inflected = script.ops.iter().any(|op| {
            op.kind == EditKind::ShiftMatch
                && !op.surface_equal
                && op.hyp_index.is_some_and(|i| shift.hyp_indices.contains(&i))
        });
        if inflected {
            counts.morph_reo += 1;
        } else {
            counts.reordering += 1;
        }
    }
    out.counts = counts;
    Ok(out)
}

/// Category counts of a lemma-mode edit script.
pub fn classify_edits(script: &EditScript) -> Result<CategoryCounts> {
    classify(script).map(|c| c.counts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorProfile {
    pub system: String,
    pub counts: CategoryCounts,
    pub total: u64,
    #[serde(default)]
    pub by_pos: BTreeMap<String, u64>,
}

impl ErrorProfile {
    pub fn new(system: impl Into<String>, counts: CategoryCounts) -> ErrorProfile {
        ErrorProfile {
            system: system.into(),
            total: counts.total(),
            counts,
            by_pos: BTreeMap::new(),
        }
    }
}

fn first_unannotated(doc: &Document) -> Option<usize> {
    doc.segments()
        .iter()
        .find(|s| !s.is_annotated())
        .map(|s| s.id)
}

/// Runs lemma-level multi-reference TER per segment and classifies each
/// script against the chosen (fewest-edit) post-edit. Returns the profile and
/// the per-segment results it was built from.
pub fn profile_system_detailed(
    system: &str,
    hyps: &Document,
    postedits: &ReferenceSet,
    config: &TerConfig,
) -> Result<(ErrorProfile, Vec<SegmentTer>)> {
    if let Some(segment) = first_unannotated(hyps) {
        return Err(Error::AnnotationMissing {
            side: Side::Hypothesis,
            segment,
        });
    }
    for doc in postedits.documents() {
        if let Some(segment) = first_unannotated(doc) {
            return Err(Error::AnnotationMissing {
                side: Side::Reference,
                segment,
            });
        }
    }
    let config = TerConfig {
        mode: MatchMode::Lemma,
        ..*config
    };
    let segments = segment_ters(hyps, postedits, &config)?;
    let mut counts = CategoryCounts::default();
    let mut by_pos = BTreeMap::new();
    for seg in &segments {
        let c = classify(&seg.script)?;
        counts.add(&c.counts);
        for (pos, n) in c.by_pos {
            *by_pos.entry(pos).or_insert(0) += n;
        }
    }
    let mut profile = ErrorProfile::new(system, counts);
    profile.by_pos = by_pos;
    Ok((profile, segments))
}

pub fn profile_system(
    system: &str,
    hyps: &Document,
    postedits: &ReferenceSet,
    config: &TerConfig,
) -> Result<ErrorProfile> {
    profile_system_detailed(system, hyps, postedits, config).map(|(p, _)| p)
}

/// Error counts as percentages of the baseline system's total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedProfile {
    pub system: String,
    pub baseline: String,
    pub percentages: PerCategory<f64>,
    pub total_pct: f64,
}

/// Expresses every profile relative to the baseline's total error count
/// (baseline total = 100).
pub fn normalize(profiles: &[ErrorProfile], baseline: &str) -> Result<Vec<NormalizedProfile>> {
    let base = profiles
        .iter()
        .find(|p| p.system == baseline)
        .ok_or_else(|| Error::UnknownBaseline(baseline.to_string()))?;
    if base.total == 0 {
        return Err(Error::DegenerateBaseline(baseline.to_string()));
    }
    let denom = base.total as f64;
    let pct = |count: u64| 100.0 * count as f64 / denom;
    Ok(profiles
        .iter()
        .map(|p| NormalizedProfile {
            system: p.system.clone(),
            baseline: baseline.to_string(),
            percentages: p.counts.map(pct),
            total_pct: pct(p.total),
        })
        .collect())
}

/// Differences to the baseline, per category and in total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub system: String,
    pub baseline: String,
    pub deltas: PerCategory<f64>,
    pub total: f64,
}

pub fn deltas(normalized: &[NormalizedProfile], baseline: &str) -> Result<Vec<DeltaReport>> {
    if let Some(p) = normalized.iter().find(|p| p.baseline != baseline) {
        return Err(Error::Argument(format!(
            "profile `{}` is normalized against `{}`, not `{baseline}`",
            p.system, p.baseline
        )));
    }
    let base = normalized
        .iter()
        .find(|p| p.system == baseline)
        .ok_or_else(|| Error::UnknownBaseline(baseline.to_string()))?;
    Ok(normalized
        .iter()
        .map(|p| DeltaReport {
            system: p.system.clone(),
            baseline: baseline.to_string(),
            deltas: p.percentages.zip_with(&base.percentages, |a, b| a - b),
            total: p.total_pct - base.total_pct,
        })
        .collect())
}
