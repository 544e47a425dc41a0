//! Translation edit rate with block shifts.
//!
//! A hypothesis is compared to a reference by unit-cost word edits
//! (substitution, insertion, deletion) plus block shifts, each shift costing
//! one edit regardless of its length. Shifts are found greedily. Matching can
//! use surface forms or lemmas; in lemma mode every aligned pair also records
//! whether the surfaces agree, which is what error classification needs.
//! Greedy search is not monotone in the match key, so lemma mode also replays
//! the shifts found on surface forms and keeps them when they come out cheaper;
//! lemma matching therefore never costs more than surface matching.
//!
//! Multi-reference scoring takes, per segment, the minimum edit count over all
//! references and divides by the average reference length.

mod align;
mod shift;

use std::borrow::Cow;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Document, ReferenceSet, Segment, Token};
use crate::error::{Error, Result, Side};

use align::Step;
pub use shift::{ShiftLimits, ShiftRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    #[default]
    Surface,
    Lemma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct TerConfig {
    pub mode: MatchMode,
    pub ignore_case: bool,
    pub shift_limits: ShiftLimits,
}

impl TerConfig {
    pub fn surface() -> TerConfig {
        TerConfig::default()
    }

    pub fn lemma() -> TerConfig {
        TerConfig {
            mode: MatchMode::Lemma,
            ..TerConfig::default()
        }
    }

    pub fn with_ignore_case(mut self, ignore_case: bool) -> TerConfig {
        self.ignore_case = ignore_case;
        self
    }
}

/// Edit count over a length denominator.
///
/// Summing scores pools both numerator and denominator, which is how corpus
/// TER is formed from segment scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TerScore {
    pub edits: u64,
    pub denominator: f64,
    pub score: f64,
}

impl TerScore {
    pub fn new(edits: u64, denominator: f64) -> TerScore {
        let score = if edits == 0 {
            0.0
        } else {
            edits as f64 / denominator
        };
        TerScore {
            edits,
            denominator,
            score,
        }
    }

    pub fn zero() -> TerScore {
        TerScore::new(0, 0.0)
    }

    /// Pools edits and denominators.
    pub fn sum<'a>(scores: impl IntoIterator<Item = &'a TerScore>) -> TerScore {
        let (edits, denominator) = scores
            .into_iter()
            .fold((0u64, 0.0f64), |(e, d), s| (e + s.edits, d + s.denominator));
        TerScore::new(edits, denominator)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EditKind {
    Match,
    Substitution,
    /// A reference token missing from the hypothesis.
    Insertion,
    /// A hypothesis token absent from the reference.
    Deletion,
    /// A match reached only after the token was moved by a shift.
    ShiftMatch,
}

impl EditKind {
    pub fn is_edit(self) -> bool {
        matches!(
            self,
            EditKind::Substitution | EditKind::Insertion | EditKind::Deletion
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditOp {
    pub kind: EditKind,
    /// Position in the original, unshifted hypothesis.
    pub hyp_index: Option<usize>,
    pub ref_index: Option<usize>,
    /// Aligned surfaces are character-identical. False when one side is absent.
    pub surface_equal: bool,
    pub hyp_token: Option<Token>,
    pub ref_token: Option<Token>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EditScript {
    pub segment_id: usize,
    pub mode: MatchMode,
    pub ops: Vec<EditOp>,
    pub shifts: Vec<ShiftRecord>,
}

impl EditScript {
    pub fn shift_count(&self) -> usize {
        self.shifts.len()
    }

    pub fn count(&self, kind: EditKind) -> usize {
        self.ops.iter().filter(|op| op.kind == kind).count()
    }

    /// Substitutions, insertions and deletions, plus one per shift.
    pub fn edits(&self) -> u64 {
        let word_edits = self.ops.iter().filter(|op| op.kind.is_edit()).count();
        (word_edits + self.shifts.len()) as u64
    }
}

/// Result of scoring one segment against one or more references.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentTer {
    pub score: TerScore,
    pub script: EditScript,
    /// Index of the reference with the fewest edits (lowest index on ties).
    pub chosen_ref: usize,
}

fn match_key<'a>(tok: &'a Token, config: &TerConfig) -> Cow<'a, str> {
    let raw = match config.mode {
        MatchMode::Surface => tok.surface.as_str(),
        MatchMode::Lemma => tok.lemma.as_deref().unwrap_or(&tok.surface),
    };
    if config.ignore_case {
        Cow::Owned(raw.to_lowercase())
    } else {
        Cow::Borrowed(raw)
    }
}

fn intern<'a>(
    tokens: &'a [Token],
    config: &TerConfig,
    table: &mut HashMap<Cow<'a, str>, u32>,
) -> Vec<u32> {
    tokens
        .iter()
        .map(|t| {
            let next = table.len() as u32;
            *table.entry(match_key(t, config)).or_insert(next)
        })
        .collect()
}

fn check_mode(hyp: &Segment, reference: &Segment, config: &TerConfig) -> Result<()> {
    if config.mode == MatchMode::Lemma {
        hyp.require_annotated(Side::Hypothesis)?;
        reference.require_annotated(Side::Reference)?;
    }
    Ok(())
}

fn build_script(
    hyp: &Segment,
    reference: &Segment,
    config: &TerConfig,
) -> EditScript {
    let mut table = HashMap::new();
    let hyp_keys = intern(&hyp.tokens, config, &mut table);
    let ref_keys = intern(&reference.tokens, config, &mut table);

    let mut search = shift::greedy_shifts(&hyp_keys, &ref_keys, config.shift_limits);
    if config.mode == MatchMode::Lemma {
        if let Some(alt) = cheaper_surface_shifts(hyp, reference, config, &hyp_keys, &ref_keys, &search) {
            search = alt;
        }
    }
    let mut moved = vec![false; hyp_keys.len()];
    for s in &search.shifts {
        for &i in &s.hyp_indices {
            moved[i] = true;
        }
    }

    let (_, steps) = align::align(&search.tokens, &ref_keys);
    let mut ops = Vec::with_capacity(steps.len());
    let (mut i, mut j) = (0, 0);
    for step in steps {
        let op = match step {
            Step::Diag => {
                let orig = search.order[i];
                let h = &hyp.tokens[orig];
                let r = &reference.tokens[j];
                let kind = if search.tokens[i] != ref_keys[j] {
                    EditKind::Substitution
                } else if moved[orig] {
                    EditKind::ShiftMatch
                } else {
                    EditKind::Match
                };
                let op = EditOp {
                    kind,
                    hyp_index: Some(orig),
                    ref_index: Some(j),
                    surface_equal: h.surface == r.surface,
                    hyp_token: Some(h.clone()),
                    ref_token: Some(r.clone()),
                };
                i += 1;
                j += 1;
                op
            }
            Step::HypOnly => {
                let orig = search.order[i];
                i += 1;
                EditOp {
                    kind: EditKind::Deletion,
                    hyp_index: Some(orig),
                    ref_index: None,
                    surface_equal: false,
                    hyp_token: Some(hyp.tokens[orig].clone()),
                    ref_token: None,
                }
            }
            Step::RefOnly => {
                j += 1;
                EditOp {
                    kind: EditKind::Insertion,
                    hyp_index: None,
                    ref_index: Some(j - 1),
                    surface_equal: false,
                    hyp_token: None,
                    ref_token: Some(reference.tokens[j - 1].clone()),
                }
            }
        };
        ops.push(op);
    }

    EditScript {
        segment_id: hyp.id,
        mode: config.mode,
        ops,
        shifts: search.shifts,
    }
}

/// The surface-level shift sequence applied to lemma keys, if it yields
/// strictly fewer edits than `current`.
fn cheaper_surface_shifts(
    hyp: &Segment,
    reference: &Segment,
    config: &TerConfig,
    hyp_keys: &[u32],
    ref_keys: &[u32],
    current: &shift::ShiftSearch,
) -> Option<shift::ShiftSearch> {
    let surface = TerConfig {
        mode: MatchMode::Surface,
        ..*config
    };
    let mut table = HashMap::new();
    let h = intern(&hyp.tokens, &surface, &mut table);
    let r = intern(&reference.tokens, &surface, &mut table);
    let alt = shift::greedy_shifts(&h, &r, config.shift_limits);
    if alt.shifts.is_empty() {
        return None;
    }
    let tokens: Vec<u32> = alt.order.iter().map(|&k| hyp_keys[k]).collect();
    let mut row = Vec::new();
    let alt_cost = align::edit_distance(&tokens, ref_keys, &mut row) as usize + alt.shifts.len();
    let cur_cost = align::edit_distance(&current.tokens, ref_keys, &mut row) as usize + current.shifts.len();
    (alt_cost < cur_cost).then_some(shift::ShiftSearch {
        tokens,
        order: alt.order,
        shifts: alt.shifts,
    })
}

/// Denominator for a segment whose references have `mean_len` tokens on average.
/// All-empty references against a non-empty hypothesis divide by one.
fn denominator(mean_len: f64, hyp_len: usize) -> f64 {
    if mean_len == 0.0 && hyp_len > 0 {
        1.0
    } else {
        mean_len
    }
}

/// TER of one hypothesis segment against one reference.
pub fn ter_single(
    hyp: &Segment,
    reference: &Segment,
    config: &TerConfig,
) -> Result<(TerScore, EditScript)> {
    check_mode(hyp, reference, config)?;
    let script = build_script(hyp, reference, config);
    let score = TerScore::new(
        script.edits(),
        denominator(reference.len() as f64, hyp.len()),
    );
    Ok((score, script))
}

/// Multi-reference TER of one segment: fewest edits over `refs`, divided by
/// the mean reference length.
pub fn mter(hyp: &Segment, refs: &[&Segment], config: &TerConfig) -> Result<SegmentTer> {
    if refs.is_empty() {
        return Err(Error::Argument("mter needs at least one reference".into()));
    }
    let mut best: Option<(usize, EditScript)> = None;
    for (idx, reference) in refs.iter().enumerate() {
        let (_, script) = ter_single(hyp, reference, config)?;
        if best
            .as_ref()
            .is_none_or(|(_, b)| script.edits() < b.edits())
        {
            best = Some((idx, script));
        }
    }
    let (chosen_ref, script) = best.expect("refs is non-empty");
    let total_len: usize = refs.iter().map(|r| r.len()).sum();
    let mean_len = total_len as f64 / refs.len() as f64;
    Ok(SegmentTer {
        score: TerScore::new(script.edits(), denominator(mean_len, hyp.len())),
        script,
        chosen_ref,
    })
}

/// Per-segment multi-reference TER for a whole document. Segments are scored
/// in parallel; the output order follows the input.
pub fn segment_ters(
    hyps: &Document,
    refs: &ReferenceSet,
    config: &TerConfig,
) -> Result<Vec<SegmentTer>> {
    refs.check_shape(hyps)?;
    hyps.segments()
        .par_iter()
        .enumerate()
        .map(|(idx, hyp)| mter(hyp, &refs.segment_refs(idx), config))
        .collect()
}

/// How segment results are combined into a corpus score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerAggregation {
    /// Total edits over total denominator.
    #[default]
    Pooled,
    /// Arithmetic mean of per-segment scores.
    SegmentMean,
}

pub fn aggregate(segments: &[SegmentTer], aggregation: TerAggregation) -> f64 {
    match aggregation {
        TerAggregation::Pooled => TerScore::sum(segments.iter().map(|s| &s.score)).score,
        TerAggregation::SegmentMean => {
            if segments.is_empty() {
                0.0
            } else {
                segments.iter().map(|s| s.score.score).sum::<f64>() / segments.len() as f64
            }
        }
    }
}

/// Corpus TER (or mTER / lmmTER, depending on reference count and mode):
/// summed per-segment minimum edits over summed per-segment denominators.
pub fn corpus_ter(hyps: &Document, refs: &ReferenceSet, config: &TerConfig) -> Result<TerScore> {
    let segments = segment_ters(hyps, refs, config)?;
    Ok(TerScore::sum(segments.iter().map(|s| &s.score)))
}
