//! Unit-cost word edit distance and its alignment path.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    /// Hypothesis and reference token aligned (match or substitution).
    Diag,
    /// Hypothesis token with no reference counterpart.
    HypOnly,
    /// Reference token with no hypothesis counterpart.
    RefOnly,
}

/// Levenshtein distance over token ids, reusing `row` as scratch space.
pub(crate) fn edit_distance(hyp: &[u32], reference: &[u32], row: &mut Vec<u32>) -> u32 {
    row.clear();
    row.extend(0..=reference.len() as u32);
    for (i, &h) in hyp.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i as u32 + 1;
        for (j, &r) in reference.iter().enumerate() {
            let up = row[j + 1];
            let sub = diag + u32::from(h != r);
            let best = sub.min(up + 1).min(row[j] + 1);
            diag = up;
            row[j + 1] = best;
        }
    }
    row[reference.len()]
}

/// Minimum edit distance plus one optimal path, in left-to-right order.
///
/// When several paths are optimal the backtrace prefers a diagonal step,
/// then a hypothesis-only step, then a reference-only step.
pub(crate) fn align(hyp: &[u32], reference: &[u32]) -> (u32, Vec<Step>) {
    let n = hyp.len();
    let m = reference.len();
    let width = m + 1;
    let mut d = vec![0u32; (n + 1) * width];
    for j in 0..=m {
        d[j] = j as u32;
    }
    for i in 1..=n {
        d[i * width] = i as u32;
        for j in 1..=m {
            let sub = d[(i - 1) * width + j - 1] + u32::from(hyp[i - 1] != reference[j - 1]);
            let del = d[(i - 1) * width + j] + 1;
            let ins = d[i * width + j - 1] + 1;
            d[i * width + j] = sub.min(del).min(ins);
        }
    }

    let mut steps = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = d[i * width + j];
        if i > 0
            && j > 0
            && here == d[(i - 1) * width + j - 1] + u32::from(hyp[i - 1] != reference[j - 1])
        {
            steps.push(Step::Diag);
            i -= 1;
            j -= 1;
        } else if i > 0 && here == d[(i - 1) * width + j] + 1 {
            steps.push(Step::HypOnly);
            i -= 1;
        } else {
            steps.push(Step::RefOnly);
            j -= 1;
        }
    }
    steps.reverse();
    (d[n * width + m], steps)
}

/// For each hypothesis position, whether the path aligns it to an equal token.
pub(crate) fn matched_flags(hyp: &[u32], reference: &[u32], steps: &[Step]) -> Vec<bool> {
    let mut flags = vec![false; hyp.len()];
    let (mut i, mut j) = (0, 0);
    for step in steps {
        match step {
            Step::Diag => {
                flags[i] = hyp[i] == reference[j];
                i += 1;
                j += 1;
            }
            Step::HypOnly => i += 1,
            Step::RefOnly => j += 1,
        }
    }
    flags
}
