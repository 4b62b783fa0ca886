use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{InfoStructure, PosteriorSummary};
use crate::scalar::Scalar;

/// Decision-maker utility as a convex function of the posterior `q = P(Y=1|T)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum UtilityFn {
    /// `|2q − 1|`
    Abs,
    /// `(2q − 1)²`
    Quadratic,
    /// Shifted negative binary entropy `q·log₂q + (1−q)·log₂(1−q) + 1`, with
    /// `0·log 0 = 0`.
    Negentropy,
    /// `max_a q·r(1,a) + (1−q)·r(0,a)` for a reward table `rewards[y][a]`.
    Rewards { rewards: [Vec<f64>; 2] },
}

impl UtilityFn {
    pub fn builtin() -> [UtilityFn; 3] {
        [UtilityFn::Abs, UtilityFn::Quadratic, UtilityFn::Negentropy]
    }

    pub fn rewards(rewards_y0: Vec<f64>, rewards_y1: Vec<f64>) -> Result<Self> {
        if rewards_y0.is_empty() || rewards_y0.len() != rewards_y1.len() {
            return Err(Error::BadUtilitySpec("reward rows must be non-empty and of equal length".into()));
        }
        if rewards_y0.iter().chain(&rewards_y1).any(|r| !r.is_finite()) {
            return Err(Error::BadUtilitySpec("rewards must be finite".into()));
        }
        Ok(UtilityFn::Rewards { rewards: [rewards_y0, rewards_y1] })
    }

    /// `L·|q − ½|`, the `L`-Lipschitz tent, as a two-action reward table.
    pub fn tent(lipschitz: f64) -> Self {
        let h = lipschitz / 2.0;
        UtilityFn::Rewards { rewards: [vec![h, -h], vec![-h, h]] }
    }

    /// Parses `abs | quadratic | negentropy | rewards:<path>`; the reward file
    /// holds a JSON array `[[r(0,a)...], [r(1,a)...]]`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        match spec.trim() {
            "abs" => Ok(UtilityFn::Abs),
            "quadratic" => Ok(UtilityFn::Quadratic),
            "negentropy" => Ok(UtilityFn::Negentropy),
            other => match other.strip_prefix("rewards:") {
                Some(path) => Self::from_reward_file(Path::new(path)),
                None => Err(Error::BadUtilitySpec(other.to_string())),
            },
        }
    }

    pub fn from_reward_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let table: Vec<Vec<f64>> =
            serde_json::from_str(&text).map_err(|e| Error::BadUtilitySpec(format!("{}: {e}", path.display())))?;
        let [r0, r1]: [Vec<f64>; 2] = table
            .try_into()
            .map_err(|_| Error::BadUtilitySpec("reward table needs exactly two rows (y = 0, y = 1)".into()))?;
        Self::rewards(r0, r1)
    }

    pub fn label(&self) -> &'static str {
        match self {
            UtilityFn::Abs => "abs",
            UtilityFn::Quadratic => "quadratic",
            UtilityFn::Negentropy => "negentropy",
            UtilityFn::Rewards { .. } => "rewards",
        }
    }

    pub fn eval(&self, q: f64) -> f64 {
        match self {
            UtilityFn::Abs => (2.0 * q - 1.0).abs(),
            UtilityFn::Quadratic => (2.0 * q - 1.0).powi(2),
            UtilityFn::Negentropy => xlog2x(q) + xlog2x(1.0 - q) + 1.0,
            UtilityFn::Rewards { rewards } => rewards[0]
                .iter()
                .zip(&rewards[1])
                .map(|(r0, r1)| q * r1 + (1.0 - q) * r0)
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Evaluation in an exact field; `None` for the entropy family, whose
    /// values are irrational.
    pub fn eval_exact<T: Scalar>(&self, q: &T) -> Option<T> {
        let two = T::from_ratio(2, 1);
        let centered = two * q.clone() - T::one();
        match self {
            UtilityFn::Abs => Some(centered.abs()),
            UtilityFn::Quadratic => Some(centered.clone() * centered),
            UtilityFn::Negentropy => None,
            UtilityFn::Rewards { rewards } => rewards[0]
                .iter()
                .zip(&rewards[1])
                .map(|(&r0, &r1)| q.clone() * T::from_f64(r1) + (T::one() - q.clone()) * T::from_f64(r0))
                .fold(None, |best: Option<T>, v| match best {
                    Some(b) if b >= v => Some(b),
                    _ => Some(v),
                }),
        }
    }

    /// Midpoint convexity on a uniform grid of `points` points over `[0, 1]`.
    pub fn is_convex_on_grid(&self, points: usize) -> bool {
        let step = 1.0 / (points - 1) as f64;
        (1..points - 1).all(|i| {
            let x = i as f64 * step;
            let mid = self.eval(x);
            let chord = 0.5 * (self.eval(x - step) + self.eval(x + step));
            mid <= chord + 1e-12
        })
    }
}

impl fmt::Display for UtilityFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `E_t[u(q_t)]` over signals of positive mass.
pub fn expected_utility(st: &InfoStructure, u: &UtilityFn) -> f64 {
    summary_utility(&st.posterior_summary(), u)
}

pub fn summary_utility(summary: &PosteriorSummary, u: &UtilityFn) -> f64 {
    summary.mass.iter().zip(&summary.q).map(|(p, &q)| p * u.eval(q)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Prior;
    use crate::scalar::rational;

    #[test]
    fn builtin_values() {
        assert_eq!(UtilityFn::Abs.eval(0.0), 1.0);
        assert_eq!(UtilityFn::Abs.eval(0.5), 0.0);
        assert_eq!(UtilityFn::Quadratic.eval(0.25), 0.25);
        assert_eq!(UtilityFn::Negentropy.eval(0.0), 1.0);
        assert_eq!(UtilityFn::Negentropy.eval(1.0), 1.0);
        assert!(UtilityFn::Negentropy.eval(0.5).abs() < 1e-15);
        assert_eq!(UtilityFn::tent(6.0).eval(0.0), 3.0);
        assert_eq!(UtilityFn::tent(6.0).eval(0.5), 0.0);
    }

    #[test]
    fn all_families_are_convex() {
        for u in UtilityFn::builtin() {
            assert!(u.is_convex_on_grid(1001), "{u}");
        }
        let r = UtilityFn::rewards(vec![1.0, 0.0, 0.4], vec![0.0, 1.0, 0.4]).unwrap();
        assert!(r.is_convex_on_grid(1001));
    }

    #[test]
    fn exact_evaluation() {
        assert_eq!(UtilityFn::Abs.eval_exact(&rational(1, 3)), Some(rational(1, 3)));
        assert_eq!(UtilityFn::Quadratic.eval_exact(&rational(2, 3)), Some(rational(1, 9)));
        assert_eq!(UtilityFn::Negentropy.eval_exact(&rational(1, 3)), None);
        assert_eq!(UtilityFn::tent(2.0).eval_exact(&rational(1, 4)), Some(rational(1, 2)));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(UtilityFn::parse_spec("abs").unwrap(), UtilityFn::Abs);
        assert!(matches!(UtilityFn::parse_spec("cubic"), Err(Error::BadUtilitySpec(_))));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        std::fs::write(&path, "[[1, 0], [0, 1]]").unwrap();
        let u = UtilityFn::parse_spec(&format!("rewards:{}", path.display())).unwrap();
        assert_eq!(u.eval(0.25), 0.75);
        std::fs::write(&path, "[[1, 0]]").unwrap();
        assert!(UtilityFn::parse_spec(&format!("rewards:{}", path.display())).is_err());
    }

    #[test]
    fn expected_utility_of_small_structures() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap();
        let full = InfoStructure::new(
            prior.clone(),
            vec!["t1".into(), "t2".into()],
            vec![vec![0.75, 0.25], vec![0.25, 0.75]],
            vec![vec![1.0, 0.0], vec![1.0, 0.0]],
        )
        .unwrap();
        assert_eq!(expected_utility(&full, &UtilityFn::Abs), 1.0);
        let perfect = InfoStructure::new(
            prior,
            vec!["t1".into(), "t2".into(), "t3".into()],
            vec![vec![0.25, 0.5, 0.25], vec![0.25, 0.5, 0.25]],
            vec![vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]],
        )
        .unwrap();
        assert_eq!(expected_utility(&perfect, &UtilityFn::Abs), 0.5);
    }
}
