use serde::{Deserialize, Serialize};

use crate::model::InfoStructure;
use crate::scalar::Scalar;
use crate::CHECK_SLACK;

/// The column where the largest width ratio is attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IpWitness {
    pub signal: usize,
    /// Secret with the widest cell in the column.
    pub high: usize,
    /// Secret with the narrowest cell in the column.
    pub low: usize,
    /// `ln(high / low)`, infinite when the narrow cell is empty.
    pub log_ratio: f64,
}

/// Outcome of an inferential-privacy check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IpReport {
    pub satisfied: bool,
    pub epsilon: f64,
    /// `max_t max_{s,s'} ln(P(T=t|s) / P(T=t|s'))`.
    pub max_log_ratio: f64,
    pub witness: Option<IpWitness>,
    /// Per signal: the column's width ratio equals `e^ε` within the slack.
    pub binding: Vec<bool>,
}

/// Checks `P(T=t|s) ≤ e^ε P(T=t|s')` for every signal and pair of secrets,
/// comparing in log space with the default slack.
pub fn check_ip(st: &InfoStructure, epsilon: f64) -> IpReport {
    check_ip_with_slack(st, epsilon, CHECK_SLACK)
}

pub fn check_ip_with_slack(st: &InfoStructure, epsilon: f64, slack: f64) -> IpReport {
    let mut max_log_ratio = 0.0_f64;
    let mut witness = None;
    let mut binding = Vec::with_capacity(st.num_signals());
    for t in 0..st.num_signals() {
        let column: Vec<f64> = st.widths().iter().map(|row| row[t]).collect();
        let (high, low) = extremes(&column);
        let (h, l) = (column[high], column[low]);
        if h == 0.0 {
            binding.push(false);
            continue;
        }
        let log_ratio = if l == 0.0 { f64::INFINITY } else { h.ln() - l.ln() };
        binding.push(l > 0.0 && (log_ratio - epsilon).abs() <= slack);
        if witness.is_none() || log_ratio > max_log_ratio {
            max_log_ratio = log_ratio;
            witness = Some(IpWitness { signal: t, high, low, log_ratio });
        }
    }
    IpReport { satisfied: max_log_ratio <= epsilon + slack, epsilon, max_log_ratio, witness, binding }
}

/// Index of the first maximum and first minimum.
fn extremes(column: &[f64]) -> (usize, usize) {
    let mut high = 0;
    let mut low = 0;
    for (s, &w) in column.iter().enumerate() {
        if w > column[high] {
            high = s;
        }
        if w < column[low] {
            low = s;
        }
    }
    (high, low)
}

/// Exact form of the check: every column of `widths[s][t]` satisfies
/// `max ≤ e^ε · min` with `exp_eps` given directly.
pub fn ip_holds_exact<T: Scalar>(widths: &[Vec<T>], exp_eps: &T) -> bool {
    let m = widths.first().map_or(0, Vec::len);
    (0..m).all(|t| {
        widths.iter().all(|a| widths.iter().all(|b| a[t] <= exp_eps.clone() * b[t].clone()))
    })
}
