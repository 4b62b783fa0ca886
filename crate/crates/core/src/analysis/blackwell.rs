use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PosteriorSummary;
use crate::EQUIVALENCE_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlackwellVerdict {
    /// `a` is at least as informative as `b`.
    pub dominates: bool,
    /// Each dominates the other.
    pub equivalent: bool,
}

/// `Σ_t p_t · max(q_t − x, 0)`.
pub fn stop_loss(summary: &PosteriorSummary, x: f64) -> f64 {
    summary.mass.iter().zip(&summary.q).map(|(p, q)| p * (q - x).max(0.0)).sum()
}

/// Convex-order comparison of two posterior distributions with equal means.
///
/// For distributions on `[0, 1]` with equal means, `a` dominates `b` iff the
/// stop-loss transform of `a` lies above that of `b`. Both transforms are
/// piecewise linear with kinks at support points, so comparing there suffices.
pub fn blackwell_dominates(a: &PosteriorSummary, b: &PosteriorSummary) -> Result<BlackwellVerdict> {
    let (ma, mb) = (a.mean(), b.mean());
    if (ma - mb).abs() > EQUIVALENCE_TOL {
        return Err(Error::MeanMismatch { left: ma, right: mb });
    }
    let mut dominates = true;
    let mut dominated = true;
    for &x in a.q.iter().chain(&b.q) {
        let (sa, sb) = (stop_loss(a, x), stop_loss(b, x));
        dominates &= sa >= sb - EQUIVALENCE_TOL;
        dominated &= sb >= sa - EQUIVALENCE_TOL;
    }
    Ok(BlackwellVerdict { dominates, equivalent: dominates && dominated })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(mass: &[f64], q: &[f64]) -> PosteriorSummary {
        PosteriorSummary::from_distribution(mass.to_vec(), q.to_vec())
    }

    #[test]
    fn spread_dominates_point_mass() {
        let full = summary(&[0.5, 0.5], &[1.0, 0.0]);
        let none = summary(&[1.0], &[0.5]);
        let mid = summary(&[0.5, 0.5], &[0.75, 0.25]);
        assert_eq!(blackwell_dominates(&full, &none).unwrap(), BlackwellVerdict { dominates: true, equivalent: false });
        assert!(!blackwell_dominates(&none, &full).unwrap().dominates);
        assert!(blackwell_dominates(&full, &mid).unwrap().dominates);
        assert!(blackwell_dominates(&mid, &none).unwrap().dominates);
        assert!(blackwell_dominates(&mid, &mid).unwrap().equivalent);
    }

    #[test]
    fn crossing_distributions_are_incomparable() {
        let a = summary(&[0.5, 0.5], &[0.9, 0.1]);
        let b = summary(&[0.2, 0.6, 0.2], &[1.0, 0.5, 0.0]);
        assert!(!blackwell_dominates(&a, &b).unwrap().dominates);
        assert!(!blackwell_dominates(&b, &a).unwrap().dominates);
    }

    #[test]
    fn different_means_are_rejected() {
        let a = summary(&[1.0], &[0.5]);
        let b = summary(&[1.0], &[0.4]);
        assert!(matches!(blackwell_dominates(&a, &b), Err(Error::MeanMismatch { .. })));
    }
}
