//! Greedy block-shift search.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::align::{align, edit_distance, matched_flags};

/// Limits on which blocks may be shifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftLimits {
    /// Longest block that may move.
    pub max_size: usize,
    /// Largest distance between a block's old and new start position.
    pub max_distance: usize,
}

impl Default for ShiftLimits {
    fn default() -> Self {
        ShiftLimits {
            max_size: 10,
            max_distance: 50,
        }
    }
}

/// One applied block move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRecord {
    /// Original hypothesis positions of the moved tokens, in block order.
    pub hyp_indices: Vec<usize>,
    /// Block start before the move, in the working sequence at that time.
    pub from: usize,
    /// Block start after the move.
    pub to: usize,
    /// Edit-distance reduction gained by this move when the search chose it.
    pub gain: u32,
}

pub(crate) struct ShiftSearch {
    /// Hypothesis after all accepted shifts.
    pub tokens: Vec<u32>,
    /// `order[k]` is the original position of `tokens[k]`.
    pub order: Vec<usize>,
    pub shifts: Vec<ShiftRecord>,
}

struct Candidate {
    from: usize,
    len: usize,
    to: usize,
    gain: u32,
}

/// Writes `seq` with `seq[from..from+len]` moved to start at `to` into `out`.
/// `to` indexes the sequence after the block has been removed.
fn apply_move<T: Copy>(seq: &[T], from: usize, len: usize, to: usize, out: &mut Vec<T>) {
    out.clear();
    let block = &seq[from..from + len];
    let rest = seq[..from].iter().chain(&seq[from + len..]);
    let mut rest = rest.copied();
    out.extend(rest.by_ref().take(to));
    out.extend_from_slice(block);
    out.extend(rest);
}

/// Repeatedly applies the legal block shift with the largest edit-distance
/// reduction until none reduces it.
///
/// A block is legal when it equals some contiguous reference span, contains at
/// least one token not matched by the current alignment, and respects
/// `limits`. Ties go to the leftmost origin, then the shortest block, then the
/// leftmost destination.
pub(crate) fn greedy_shifts(hyp: &[u32], reference: &[u32], limits: ShiftLimits) -> ShiftSearch {
    let n = hyp.len();
    let mut tokens = hyp.to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    let mut shifts = Vec::new();

    let max_size = limits.max_size.max(1);
    let spans: HashSet<&[u32]> = (1..=max_size.min(reference.len()))
        .flat_map(|len| reference.windows(len))
        .collect();
    let floor = n.abs_diff(reference.len()) as u32;

    let mut row = Vec::new();
    let mut moved = Vec::with_capacity(n);
    let mut scratch = Vec::with_capacity(n);

    loop {
        let (dist, steps) = align(&tokens, reference);
        if dist <= floor {
            break;
        }
        let matched = matched_flags(&tokens, reference, &steps);
        let best_possible = dist - floor;

        let mut best: Option<Candidate> = None;
        'search: for from in 0..n {
            for len in 1..=max_size.min(n - from) {
                let block = &tokens[from..from + len];
                if !spans.contains(block) {
                    // no longer block starting here can match either
                    break;
                }
                if matched[from..from + len].iter().all(|&m| m) {
                    continue;
                }
                let lo = from.saturating_sub(limits.max_distance);
                let hi = (n - len).min(from + limits.max_distance);
                for to in lo..=hi {
                    if to == from {
                        continue;
                    }
                    apply_move(&tokens, from, len, to, &mut moved);
                    let d = edit_distance(&moved, reference, &mut row);
                    if d < dist {
                        let gain = dist - d;
                        if best.as_ref().is_none_or(|b| gain > b.gain) {
                            best = Some(Candidate {
                                from,
                                len,
                                to,
                                gain,
                            });
                            if gain == best_possible {
                                break 'search;
                            }
                        }
                    }
                }
            }
        }

        let Some(c) = best else { break };
        shifts.push(ShiftRecord {
            hyp_indices: order[c.from..c.from + c.len].to_vec(),
            from: c.from,
            to: c.to,
            gain: c.gain,
        });
        apply_move(&tokens, c.from, c.len, c.to, &mut moved);
        std::mem::swap(&mut tokens, &mut moved);
        apply_move(&order, c.from, c.len, c.to, &mut scratch);
        std::mem::swap(&mut order, &mut scratch);
    }

    ShiftSearch {
        tokens,
        order,
        shifts,
    }
}
