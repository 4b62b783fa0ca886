use serde::{Deserialize, Serialize};

use crate::model::InfoStructure;
use crate::CHECK_SLACK;

/// A structural property that failed, with the offending cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionWitness {
    pub check: String,
    pub secret: Option<usize>,
    pub signal: usize,
    pub detail: String,
}

/// Shape of an information structure relative to the optimal form.
///
/// Signals of positive mass are ordered by decreasing posterior, secrets by
/// decreasing `P(Y=1|S)`. Cell sets: `A` are the yellow cells; within the
/// interior signals (posterior strictly between 0 and 1), `B` are the yellow
/// cells of maximal width and `C` the white cells of maximal width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    /// Every cell is either fully yellow or fully white.
    pub cells_binary: bool,
    /// Every interior signal has widths in `{L_t, e^ε L_t}` with both present.
    pub columns_binding: bool,
    pub a_upper_left: bool,
    pub b_upper_left: bool,
    pub c_lower_right: bool,
    /// Positive-mass signals in the order used for the checks.
    pub signal_order: Vec<usize>,
    pub witnesses: Vec<RegionWitness>,
    /// Zero-width cells in positive-mass signals; treated as wildcards.
    pub zero_width_cells: Vec<(usize, usize)>,
}

impl RegionReport {
    pub fn all_hold(&self) -> bool {
        self.cells_binary && self.columns_binding && self.a_upper_left && self.b_upper_left && self.c_lower_right
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cell {
    In,
    Out,
    Wild,
}

pub fn check_regions(st: &InfoStructure, epsilon: f64) -> RegionReport {
    check_regions_with_slack(st, epsilon, CHECK_SLACK)
}

pub fn check_regions_with_slack(st: &InfoStructure, epsilon: f64, tol: f64) -> RegionReport {
    let n = st.num_secrets();
    let widths = st.widths();
    let cells = st.cells();
    let summary = st.posterior_summary();
    let mut witnesses = Vec::new();

    let yellow = |s: usize, t: usize| cells[s][t] >= 1.0 - tol;
    let zero = |s: usize, t: usize| widths[s][t] == 0.0;
    let yellow_count = |t: usize| (0..n).filter(|&s| yellow(s, t)).count();

    let mut cells_binary = true;
    for &t in &summary.signal {
        for s in 0..n {
            let c = cells[s][t];
            if !zero(s, t) && c > tol && c < 1.0 - tol {
                cells_binary = false;
                witnesses.push(RegionWitness {
                    check: "cells_binary".into(),
                    secret: Some(s),
                    signal: t,
                    detail: format!("cell posterior {c}"),
                });
            }
        }
    }

    let mut order: Vec<(usize, f64)> = summary.signal.iter().copied().zip(summary.q.iter().copied()).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| yellow_count(b.0).cmp(&yellow_count(a.0))));
    let signal_order: Vec<usize> = order.iter().map(|&(t, _)| t).collect();
    let interior: Vec<usize> = order.iter().filter(|&&(_, q)| q > tol && q < 1.0 - tol).map(|&(t, _)| t).collect();

    let e = epsilon.exp();
    let high = |t: usize| (0..n).map(|s| widths[s][t]).fold(0.0, f64::max);
    let low = |t: usize| (0..n).map(|s| widths[s][t]).fold(f64::INFINITY, f64::min);
    let is_high = |s: usize, t: usize| {
        let h = high(t);
        h > 0.0 && (widths[s][t] - h).abs() <= tol * h.max(1.0)
    };

    let mut columns_binding = true;
    for &t in &interior {
        let (h, l) = (high(t), low(t));
        let ratio_ok = l > 0.0 && (h - e * l).abs() <= tol * h.max(1.0);
        let two_valued =
            (0..n).all(|s| (widths[s][t] - h).abs() <= tol * h.max(1.0) || (widths[s][t] - l).abs() <= tol * h.max(1.0));
        if !(ratio_ok && two_valued) {
            columns_binding = false;
            witnesses.push(RegionWitness {
                check: "columns_binding".into(),
                secret: None,
                signal: t,
                detail: format!("widths range over [{l}, {h}], e^eps = {e}"),
            });
        }
    }

    let classify = |member: &dyn Fn(usize, usize) -> bool, cols: &[usize]| -> Vec<Vec<Cell>> {
        (0..n)
            .map(|s| {
                cols.iter()
                    .map(|&t| {
                        if zero(s, t) {
                            Cell::Wild
                        } else if member(s, t) {
                            Cell::In
                        } else {
                            Cell::Out
                        }
                    })
                    .collect()
            })
            .collect()
    };

    let a_grid = classify(&|s, t| yellow(s, t), &signal_order);
    let b_grid = classify(&|s, t| yellow(s, t) && is_high(s, t), &interior);
    let c_grid = classify(&|s, t| !yellow(s, t) && is_high(s, t), &interior);

    let a_upper_left = corner_closed(&a_grid, false, "a_upper_left", &signal_order, &mut witnesses);
    let b_upper_left = corner_closed(&b_grid, false, "b_upper_left", &interior, &mut witnesses);
    let c_lower_right = corner_closed(&c_grid, true, "c_lower_right", &interior, &mut witnesses);

    RegionReport {
        cells_binary,
        columns_binding,
        a_upper_left,
        b_upper_left,
        c_lower_right,
        signal_order,
        witnesses,
        zero_width_cells: st.zero_width_cells(),
    }
}

/// Whether every member's upper-left (or lower-right) quadrant lies in the set.
fn corner_closed(
    grid: &[Vec<Cell>],
    lower_right: bool,
    check: &str,
    cols: &[usize],
    witnesses: &mut Vec<RegionWitness>,
) -> bool {
    let n = grid.len();
    let m = cols.len();
    for i in 0..n {
        for j in 0..m {
            if grid[i][j] != Cell::In {
                continue;
            }
            let rows: Vec<usize> = if lower_right { (i..n).collect() } else { (0..=i).collect() };
            let colr: Vec<usize> = if lower_right { (j..m).collect() } else { (0..=j).collect() };
            for &k in &rows {
                for &l in &colr {
                    if grid[k][l] == Cell::Out {
                        witnesses.push(RegionWitness {
                            check: check.into(),
                            secret: Some(k),
                            signal: cols[l],
                            detail: format!("cell ({i}, {}) is in the region but ({k}, {}) is not", cols[j], cols[l]),
                        });
                        return false;
                    }
                }
            }
        }
    }
    true
}
