use serde::{Deserialize, Serialize};

use super::{expected_utility, UtilityFn};
use crate::binary::{solve_binary, solve_perfect_privacy, RegimeTag};
use crate::error::Result;
use crate::model::Prior;

/// Optimal utility at `ε` against the perfectly private optimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityGain {
    pub u_eps: f64,
    pub u_0: f64,
    /// `u_eps / u_0`; infinite when the baseline is zero and `u_eps > 0`, and
    /// 1 when both vanish.
    pub gain: f64,
    pub zero_baseline: bool,
    pub regime: RegimeTag,
    pub num_signals: usize,
}

/// Ratio of optimal expected utility at `ε` to that at `ε = 0` for a binary
/// secret.
pub fn utility_gain(prior: &Prior, epsilon: f64, u: &UtilityFn) -> Result<UtilityGain> {
    let sol = solve_binary(prior, epsilon)?;
    let base = solve_perfect_privacy(prior)?;
    let u_eps = expected_utility(&sol.structure, u);
    let u_0 = expected_utility(&base.structure, u);
    let zero_baseline = u_0 == 0.0;
    let gain = if !zero_baseline {
        u_eps / u_0
    } else if u_eps > 0.0 {
        f64::INFINITY
    } else {
        1.0
    };
    Ok(UtilityGain {
        u_eps,
        u_0,
        gain,
        zero_baseline,
        regime: sol.regime.tag,
        num_signals: sol.structure.num_signals(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_disclosure_gains() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap();
        let g = utility_gain(&prior, 3f64.ln(), &UtilityFn::Abs).unwrap();
        assert_eq!(g.regime, RegimeTag::FullDisclosure);
        assert!((g.gain - 2.0).abs() < 1e-12);
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.9, 0.1]).unwrap();
        let g = utility_gain(&prior, 2.0 * 3f64.ln(), &UtilityFn::Abs).unwrap();
        assert!((g.gain - 5.0).abs() < 1e-12);
    }

    #[test]
    fn zero_epsilon_has_unit_gain() {
        let prior = Prior::from_pairs(&[0.4, 0.6], &[0.7, 0.2]).unwrap();
        for u in UtilityFn::builtin() {
            let g = utility_gain(&prior, 0.0, &u).unwrap();
            assert_eq!(g.gain, 1.0);
        }
    }

    #[test]
    fn zero_baseline_is_flagged() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.7, 0.3]).unwrap();
        let flat = UtilityFn::rewards(vec![0.0], vec![0.0]).unwrap();
        let g = utility_gain(&prior, 1.0, &flat).unwrap();
        assert!(g.zero_baseline);
        assert_eq!(g.gain, 1.0);
    }
}
