use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::general::CutAssignment;

/// A fully expanded pattern: per middle column, its `i` and which rows carry
/// `c = e^ε` (the rest carry `c = 1`).
pub type ExpandedPattern = Vec<(usize, Vec<bool>)>;

const MAX_RAW_BITS: usize = 20;

/// Literal enumeration: every `c ∈ {1, e^ε}` for `columns_per_i` raw columns
/// per `i`, kept when the monotonicity conditions hold (inside the yellow
/// region `c` does not increase toward the lower right, outside it does not
/// increase toward the upper left), with consecutive repeats collapsed.
///
/// The raw space has `2^{n·(n−1)·columns_per_i}` points; sizes beyond
/// `2^20` are refused.
pub fn naive_c_enumeration(n: usize, columns_per_i: usize) -> Result<BTreeSet<ExpandedPattern>> {
    if !(2..=3).contains(&n) || n * (n - 1) * columns_per_i > MAX_RAW_BITS {
        return Err(Error::UnsupportedSize { n, supported: 3 });
    }
    let slots: Vec<usize> = (2..=n).flat_map(|i| std::iter::repeat_n(i, columns_per_i)).collect();
    let bits = n * (n - 1) * columns_per_i;
    let mut out = BTreeSet::new();
    for raw in 0u32..(1 << bits) {
        let columns: Vec<(usize, Vec<bool>)> = slots
            .iter()
            .enumerate()
            .map(|(k, &i)| (i, (0..n).map(|j| raw >> (k * n + j) & 1 == 1).collect()))
            .collect();
        if monotone(n, &columns) {
            let mut collapsed: ExpandedPattern = Vec::with_capacity(columns.len());
            for col in columns {
                if collapsed.last() != Some(&col) {
                    collapsed.push(col);
                }
            }
            out.insert(collapsed);
        }
    }
    Ok(out)
}

/// For every pair of cells `(j, x) ⪯ (j', y)` (row and column both not
/// decreasing) lying on the same side of the yellow boundary.
fn monotone(n: usize, columns: &[(usize, Vec<bool>)]) -> bool {
    for x in 0..columns.len() {
        for y in x..columns.len() {
            let (ax, ay) = (n + 1 - columns[x].0, n + 1 - columns[y].0);
            for j in 0..n {
                for jj in j..n {
                    let (cx, cy) = (columns[x].1[j], columns[y].1[jj]);
                    let inside = j < ax && jj < ay;
                    let outside = j >= ax && jj >= ay;
                    if (inside && cy && !cx) || (outside && cx && !cy) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Expansion of assignments, for comparison with [`naive_c_enumeration`].
pub fn expanded_patterns<'a>(assignments: impl IntoIterator<Item = &'a CutAssignment>) -> BTreeSet<ExpandedPattern> {
    assignments.into_iter().map(CutAssignment::expand_pattern).collect()
}
