use std::fmt;

use serde::{Deserialize, Serialize};

/// A middle column of the general form. Rows are 1-based in canonical
/// secret order. Rows `1..=n+1−i` are yellow; rows `1..=b` (inside the
/// yellow block) and rows `c..=n` (outside it) are wide, the rest narrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutColumn {
    pub i: usize,
    pub b: usize,
    pub c: usize,
}

impl CutColumn {
    /// Number of yellow rows.
    pub fn yellow_rows(&self, n: usize) -> usize {
        n + 1 - self.i
    }

    pub fn is_valid(&self, n: usize) -> bool {
        (2..=n).contains(&self.i) && self.b <= self.yellow_rows(n) && (self.yellow_rows(n) + 1..=n + 1).contains(&self.c)
    }

    /// Whether 1-based row `j` is wide.
    pub fn is_wide(&self, j: usize) -> bool {
        j <= self.b || j >= self.c
    }

    /// Every row wide or every row narrow.
    pub fn is_uniform(&self, n: usize) -> bool {
        let a = self.yellow_rows(n);
        (self.b == 0 && self.c == n + 1) || (self.b == a && self.c == a + 1)
    }

    /// `self` may be followed by `next` in an assignment.
    pub fn precedes(&self, next: &CutColumn) -> bool {
        self != next && self.i <= next.i && self.b >= next.b && self.c >= next.c
    }

    /// Wide/narrow pattern for rows `1..=n`.
    pub fn pattern(&self, n: usize) -> Vec<bool> {
        (1..=n).map(|j| self.is_wide(j)).collect()
    }
}

/// An ordered chain of middle columns for `n` secrets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutAssignment {
    pub n: usize,
    pub columns: Vec<CutColumn>,
}

impl CutAssignment {
    pub fn is_valid(&self) -> bool {
        self.columns.iter().all(|col| col.is_valid(self.n))
            && self.columns.windows(2).all(|w| w[0].precedes(&w[1]))
    }

    /// `c[k][j−1] ∈ {1, e^ε}` for column `k`, row `j`.
    pub fn expand(&self, epsilon: f64) -> Vec<Vec<f64>> {
        let e = epsilon.exp();
        self.columns
            .iter()
            .map(|col| col.pattern(self.n).into_iter().map(|w| if w { e } else { 1.0 }).collect())
            .collect()
    }

    /// Symbolic expansion: `(i, wide rows)` per column.
    pub fn expand_pattern(&self) -> Vec<(usize, Vec<bool>)> {
        self.columns.iter().map(|col| (col.i, col.pattern(self.n))).collect()
    }

    pub fn has_uniform_column(&self) -> bool {
        self.columns.iter().any(|col| col.is_uniform(self.n))
    }

    pub fn columns_for(&self, i: usize) -> usize {
        self.columns.iter().filter(|col| col.i == i).count()
    }
}

impl fmt::Display for CutAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, col) in self.columns.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({},{},{})", col.i, col.b, col.c)?;
        }
        f.write_str("]")
    }
}

/// All valid columns for `n` secrets, in an order every chain respects.
pub fn all_columns(n: usize) -> Vec<CutColumn> {
    let mut out = Vec::new();
    for i in 2..=n {
        let a = n + 1 - i;
        for b in (0..=a).rev() {
            for c in (a + 1..=n + 1).rev() {
                out.push(CutColumn { i, b, c });
            }
        }
    }
    out
}

/// Every chain of distinct columns with `i` non-decreasing and `b`, `c`
/// non-increasing, at most `max_columns_per_i` columns per `i`. The empty
/// assignment comes first.
pub fn enumerate_assignments(n: usize, max_columns_per_i: usize) -> Vec<CutAssignment> {
    let columns = all_columns(n);
    let mut out = Vec::new();
    let mut chain = Vec::new();
    extend(&columns, 0, &mut chain, max_columns_per_i, n, &mut out);
    out
}

fn extend(
    columns: &[CutColumn],
    from: usize,
    chain: &mut Vec<CutColumn>,
    cap: usize,
    n: usize,
    out: &mut Vec<CutAssignment>,
) {
    out.push(CutAssignment { n, columns: chain.clone() });
    for k in from..columns.len() {
        let col = columns[k];
        if chain.last().is_some_and(|last| !last.precedes(&col)) {
            continue;
        }
        if chain.iter().filter(|c| c.i == col.i).count() >= cap {
            continue;
        }
        chain.push(col);
        extend(columns, k + 1, chain, cap, n, out);
        chain.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn two_secrets_have_twelve_assignments() {
        let all = enumerate_assignments(2, 6);
        assert_eq!(all.len(), 12);
        assert!(all[0].columns.is_empty());
        assert!(all.iter().all(CutAssignment::is_valid));
        let unique: HashSet<_> = all.iter().map(|a| a.expand_pattern()).collect();
        assert_eq!(unique.len(), 12);
    }

    #[test]
    fn expansion_marks_wide_rows() {
        let a = CutAssignment { n: 2, columns: vec![CutColumn { i: 2, b: 1, c: 3 }] };
        let c = a.expand(2f64.ln());
        assert!((c[0][0] - 2.0).abs() < 1e-15);
        assert_eq!(c[0][1], 1.0);
        assert!(CutColumn { i: 2, b: 0, c: 3 }.is_uniform(2));
        assert!(CutColumn { i: 2, b: 1, c: 2 }.is_uniform(2));
        assert!(!CutColumn { i: 2, b: 0, c: 2 }.is_uniform(2));
    }

    #[test]
    fn chains_respect_order_and_cap() {
        let all = enumerate_assignments(3, 9);
        assert!(all.iter().all(CutAssignment::is_valid));
        let capped = enumerate_assignments(3, 1);
        assert!(capped.iter().all(|a| a.columns_for(2) <= 1 && a.columns_for(3) <= 1));
        assert!(capped.len() < all.len());
        let bad = CutAssignment { n: 3, columns: vec![CutColumn { i: 3, b: 0, c: 2 }, CutColumn { i: 2, b: 0, c: 3 }] };
        assert!(!bad.is_valid());
    }
}
