use serde::{Deserialize, Serialize};

use super::Prior;
use crate::error::{Error, Result};
use crate::{CONSISTENCY_TOL, NORMALIZATION_TOL};

/// An information structure `P(S, Y, T)` in grid form.
///
/// Row `s` holds the cell widths `P(T=t|S=s)` and the cell posteriors
/// `P(Y=1|S=s,T=t)`. Rows follow the prior's canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoStructure {
    prior: Prior,
    signals: Vec<String>,
    widths: Vec<Vec<f64>>,
    cells: Vec<Vec<f64>>,
}

impl InfoStructure {
    /// Validates and builds a structure. Round-off below the normalization
    /// tolerance is snapped (tiny negative widths become zero, cells are
    /// clamped into `[0, 1]`).
    pub fn new(
        prior: Prior,
        signals: Vec<String>,
        mut widths: Vec<Vec<f64>>,
        mut cells: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = prior.len();
        let m = signals.len();
        if m == 0 {
            return Err(Error::InvalidStructure("no signals".into()));
        }
        if widths.len() != n || cells.len() != n {
            return Err(Error::InvalidStructure(format!(
                "expected {n} rows, got {} width rows and {} cell rows",
                widths.len(),
                cells.len()
            )));
        }
        for s in 0..n {
            if widths[s].len() != m || cells[s].len() != m {
                return Err(Error::InvalidStructure(format!("row {s} does not have {m} entries")));
            }
            for t in 0..m {
                let w = widths[s][t];
                if !w.is_finite() || w < -NORMALIZATION_TOL {
                    return Err(Error::InvalidStructure(format!("width ({s},{t}) = {w}")));
                }
                widths[s][t] = w.max(0.0);
                let c = cells[s][t];
                if !(-NORMALIZATION_TOL..=1.0 + NORMALIZATION_TOL).contains(&c) {
                    return Err(Error::InvalidStructure(format!("cell ({s},{t}) = {c}")));
                }
                cells[s][t] = c.clamp(0.0, 1.0);
            }
            let sum: f64 = widths[s].iter().sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::InvalidStructure(format!("row {s} widths sum to {sum}")));
            }
            let yellow: f64 = widths[s].iter().zip(&cells[s]).map(|(w, c)| w * c).sum();
            if (yellow - prior.cond()[s]).abs() > CONSISTENCY_TOL {
                return Err(Error::InvalidStructure(format!(
                    "row {s} has P(Y=1|S) = {yellow}, prior says {}",
                    prior.cond()[s]
                )));
            }
        }
        Ok(InfoStructure { prior, signals, widths, cells })
    }

    pub fn prior(&self) -> &Prior {
        &self.prior
    }

    pub fn signals(&self) -> &[String] {
        &self.signals
    }

    pub fn num_signals(&self) -> usize {
        self.signals.len()
    }

    pub fn num_secrets(&self) -> usize {
        self.prior.len()
    }

    /// `widths()[s][t] = P(T=t|S=s)`.
    pub fn widths(&self) -> &[Vec<f64>] {
        &self.widths
    }

    /// `cells()[s][t] = P(Y=1|S=s,T=t)`.
    pub fn cells(&self) -> &[Vec<f64>] {
        &self.cells
    }

    pub fn signal_index(&self, label: &str) -> Option<usize> {
        self.signals.iter().position(|s| s == label)
    }

    /// `P(T=t)`.
    pub fn signal_mass(&self, t: usize) -> f64 {
        self.prior.mass().iter().zip(&self.widths).map(|(p, row)| p * row[t]).sum()
    }

    /// `P(Y=1|T=t)`, or `None` for a zero-mass signal.
    pub fn signal_posterior(&self, t: usize) -> Option<f64> {
        let mass = self.signal_mass(t);
        if mass <= 0.0 {
            return None;
        }
        let yellow: f64 = (0..self.num_secrets())
            .map(|s| self.prior.mass()[s] * self.widths[s][t] * self.cells[s][t])
            .sum();
        Some((yellow / mass).clamp(0.0, 1.0))
    }

    /// `P(S=s|T=t)` for every `s`, or `None` for a zero-mass signal.
    pub fn secret_posterior(&self, t: usize) -> Option<Vec<f64>> {
        let mass = self.signal_mass(t);
        if mass <= 0.0 {
            return None;
        }
        Some((0..self.num_secrets()).map(|s| self.prior.mass()[s] * self.widths[s][t] / mass).collect())
    }

    /// Cells of zero width inside signals of positive mass. Their posterior
    /// is not pinned down by the joint distribution.
    pub fn zero_width_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in 0..self.num_signals() {
            if self.signal_mass(t) <= 0.0 {
                continue;
            }
            for s in 0..self.num_secrets() {
                if self.widths[s][t] == 0.0 {
                    out.push((s, t));
                }
            }
        }
        out
    }

    pub fn posterior_summary(&self) -> PosteriorSummary {
        let mut summary = PosteriorSummary::default();
        for t in 0..self.num_signals() {
            let Some(q) = self.signal_posterior(t) else { continue };
            summary.signal.push(t);
            summary.mass.push(self.signal_mass(t));
            summary.q.push(q);
            summary.secret_post.push(self.secret_posterior(t).expect("positive mass"));
        }
        summary
    }

    /// Drops signals of zero mass.
    pub fn without_empty_signals(&self) -> InfoStructure {
        let keep: Vec<usize> = (0..self.num_signals()).filter(|&t| self.signal_mass(t) > 0.0).collect();
        self.select_signals(&keep)
    }

    pub(crate) fn select_signals(&self, keep: &[usize]) -> InfoStructure {
        InfoStructure {
            prior: self.prior.clone(),
            signals: keep.iter().map(|&t| self.signals[t].clone()).collect(),
            widths: self.widths.iter().map(|row| keep.iter().map(|&t| row[t]).collect()).collect(),
            cells: self.cells.iter().map(|row| keep.iter().map(|&t| row[t]).collect()).collect(),
        }
    }
}

/// Distribution of posteriors induced by a structure: for each signal of
/// positive mass, `p_t = P(T=t)`, `q_t = P(Y=1|T=t)` and `P(S|T=t)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    /// Index of the signal in the originating structure.
    pub signal: Vec<usize>,
    pub mass: Vec<f64>,
    pub q: Vec<f64>,
    pub secret_post: Vec<Vec<f64>>,
}

impl PosteriorSummary {
    /// A bare distribution over posteriors `q` with weights `mass`.
    pub fn from_distribution(mass: Vec<f64>, q: Vec<f64>) -> Self {
        assert_eq!(mass.len(), q.len());
        let keep: Vec<usize> = (0..mass.len()).filter(|&i| mass[i] > 0.0).collect();
        PosteriorSummary {
            signal: keep.clone(),
            mass: keep.iter().map(|&i| mass[i]).collect(),
            q: keep.iter().map(|&i| q[i]).collect(),
            secret_post: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    /// `E[Q] = P(Y=1)` for summaries induced by a structure.
    pub fn mean(&self) -> f64 {
        self.mass.iter().zip(&self.q).map(|(p, q)| p * q).sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perfect_privacy() -> InfoStructure {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap();
        InfoStructure::new(
            prior,
            vec!["t1".into(), "t2".into(), "t3".into()],
            vec![vec![0.25, 0.5, 0.25], vec![0.25, 0.5, 0.25]],
            vec![vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]],
        )
        .unwrap()
    }

    #[test]
    fn summary_of_perfect_privacy_structure() {
        let st = perfect_privacy();
        let summary = st.posterior_summary();
        assert_eq!(summary.mass, vec![0.25, 0.5, 0.25]);
        assert_eq!(summary.q, vec![1.0, 0.5, 0.0]);
        assert_eq!(summary.secret_post[1], vec![0.5, 0.5]);
        assert!((summary.mean() - st.prior().p_y1()).abs() < 1e-15);
    }

    #[test]
    fn rejects_inconsistent_rows() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap();
        let bad_sum = InfoStructure::new(
            prior.clone(),
            vec!["a".into(), "b".into()],
            vec![vec![0.75, 0.2], vec![0.25, 0.75]],
            vec![vec![1.0, 0.0], vec![1.0, 0.0]],
        );
        assert!(matches!(bad_sum, Err(Error::InvalidStructure(_))));
        let bad_yellow = InfoStructure::new(
            prior,
            vec!["a".into(), "b".into()],
            vec![vec![0.5, 0.5], vec![0.25, 0.75]],
            vec![vec![1.0, 0.0], vec![1.0, 0.0]],
        );
        assert!(matches!(bad_yellow, Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn zero_width_cells_are_reported() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.6, 0.6]).unwrap();
        let st = InfoStructure::new(
            prior,
            vec!["t1".into(), "t2".into(), "t3".into()],
            vec![vec![0.6, 0.0, 0.4], vec![0.6, 0.0, 0.4]],
            vec![vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]],
        )
        .unwrap();
        assert!(st.zero_width_cells().is_empty());
        assert_eq!(st.posterior_summary().len(), 2);
        assert_eq!(st.without_empty_signals().num_signals(), 2);
    }
}
