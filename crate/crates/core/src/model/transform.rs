//! Equivalent transformations: splitting a signal into copies that share its
//! posteriors, merging signals with identical posteriors, and compressing a
//! structure down to one signal per equivalence class.

use super::InfoStructure;
use crate::error::{Error, Result};
use crate::{EQUIVALENCE_TOL, NORMALIZATION_TOL};

/// Replaces signal `t` by `weights.len()` signals whose widths are the
/// original widths scaled by each weight. `P(Y|T)` and `P(S|T)` carry over.
pub fn split_signal(st: &InfoStructure, t: usize, weights: &[f64]) -> Result<InfoStructure> {
    if t >= st.num_signals() {
        return Err(Error::UnknownSignal(t.to_string()));
    }
    if weights.is_empty() || weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
        return Err(Error::BadWeights("weights must be positive".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::BadWeights(format!("weights sum to {total}")));
    }
    if weights.len() == 1 {
        return Ok(st.clone());
    }

    let label = &st.signals()[t];
    let mut signals = Vec::with_capacity(st.num_signals() + weights.len() - 1);
    for (u, name) in st.signals().iter().enumerate() {
        if u == t {
            signals.extend((1..=weights.len()).map(|k| format!("{label}.{k}")));
        } else {
            signals.push(name.clone());
        }
    }
    let expand = |row: &[f64], scale: bool| -> Vec<f64> {
        let mut out = Vec::with_capacity(signals.len());
        for (u, &v) in row.iter().enumerate() {
            if u == t {
                out.extend(weights.iter().map(|w| if scale { v * w } else { v }));
            } else {
                out.push(v);
            }
        }
        out
    };
    let widths = st.widths().iter().map(|row| expand(row, true)).collect();
    let cells = st.cells().iter().map(|row| expand(row, false)).collect();
    InfoStructure::new(st.prior().clone(), signals, widths, cells)
}

/// Whether two signals share `P(Y=1|T)` and `P(S|T)` within `tol`. Zero-mass
/// signals are equivalent to everything.
pub fn equivalent_signals(st: &InfoStructure, a: usize, b: usize, tol: f64) -> bool {
    let (Some(qa), Some(qb)) = (st.signal_posterior(a), st.signal_posterior(b)) else {
        return true;
    };
    if (qa - qb).abs() > tol {
        return false;
    }
    let sa = st.secret_posterior(a).expect("positive mass");
    let sb = st.secret_posterior(b).expect("positive mass");
    sa.iter().zip(&sb).all(|(x, y)| (x - y).abs() <= tol)
}

/// Merges `group` into a single signal placed at the group's first position
/// and carrying its first label. Widths add up; cell posteriors are the
/// width-weighted average.
pub fn merge_signals(st: &InfoStructure, group: &[usize]) -> Result<InfoStructure> {
    let mut group = group.to_vec();
    group.sort_unstable();
    group.dedup();
    let Some(&head) = group.first() else {
        return Err(Error::UnknownSignal("empty group".into()));
    };
    if let Some(&bad) = group.iter().find(|&&t| t >= st.num_signals()) {
        return Err(Error::UnknownSignal(bad.to_string()));
    }
    for &t in &group[1..] {
        if !equivalent_signals(st, head, t, EQUIVALENCE_TOL) {
            return Err(Error::NotEquivalentSignals {
                first: st.signals()[head].clone(),
                second: st.signals()[t].clone(),
            });
        }
    }
    Ok(merge_unchecked(st, &group))
}

pub(crate) fn merge_unchecked(st: &InfoStructure, group: &[usize]) -> InfoStructure {
    let head = group[0];
    let keep: Vec<usize> = (0..st.num_signals()).filter(|t| *t == head || !group.contains(t)).collect();
    let mut widths = Vec::with_capacity(st.num_secrets());
    let mut cells = Vec::with_capacity(st.num_secrets());
    for s in 0..st.num_secrets() {
        let w = &st.widths()[s];
        let c = &st.cells()[s];
        let mut wrow = Vec::with_capacity(keep.len());
        let mut crow = Vec::with_capacity(keep.len());
        for &t in &keep {
            if t == head {
                let width: f64 = group.iter().map(|&u| w[u]).sum();
                let yellow: f64 = group.iter().map(|&u| w[u] * c[u]).sum();
                wrow.push(width);
                crow.push(if width > 0.0 { (yellow / width).clamp(0.0, 1.0) } else { c[head] });
            } else {
                wrow.push(w[t]);
                crow.push(c[t]);
            }
        }
        widths.push(wrow);
        cells.push(crow);
    }
    let signals = keep.iter().map(|&t| st.signals()[t].clone()).collect();
    InfoStructure::new(st.prior().clone(), signals, widths, cells).expect("merging preserves validity")
}

/// Drops zero-mass signals and merges every equivalence class of the rest
/// (posterior tolerance 1e-9), keeping first-occurrence order.
pub fn compress(st: &InfoStructure) -> InfoStructure {
    let st = st.without_empty_signals();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for t in 0..st.num_signals() {
        match classes.iter_mut().find(|class| equivalent_signals(&st, class[0], t, EQUIVALENCE_TOL)) {
            Some(class) => class.push(t),
            None => classes.push(vec![t]),
        }
    }
    if classes.iter().all(|c| c.len() == 1) {
        return st;
    }
    // merge from the back so earlier indices stay valid
    let mut out = st;
    for class in classes.iter().rev().filter(|c| c.len() > 1) {
        out = merge_unchecked(&out, class);
    }
    out
}
