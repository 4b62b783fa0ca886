use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::NORMALIZATION_TOL;

/// Joint prior over a finite secret `S` and a binary state `Y`, held as
/// secret masses `P(S=s)` and conditionals `P(Y=1|S=s)`.
///
/// Secrets are stored in canonical order: decreasing `P(Y=1|S)`, ties kept
/// in the order they were supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prior {
    names: Vec<String>,
    mass: Vec<f64>,
    cond: Vec<f64>,
    /// `order[k]` is the caller's index of the secret at canonical rank `k`.
    order: Vec<usize>,
}

impl Prior {
    /// Builds a prior from named `(P(S=s), P(Y=1|S=s))` pairs in caller order.
    pub fn new(names: Vec<String>, mass: Vec<f64>, cond: Vec<f64>) -> Result<Self> {
        let n = names.len();
        if mass.len() != n || cond.len() != n {
            return Err(Error::Parse(format!(
                "{} names, {} masses and {} conditionals",
                n,
                mass.len(),
                cond.len()
            )));
        }
        if n < 2 {
            return Err(Error::TooFewSecrets(n));
        }
        for (index, &value) in mass.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveMass { index, value });
            }
        }
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::MassNotNormalized { sum });
        }
        for (index, &value) in cond.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ConditionalOutOfRange { index, value });
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        // stable: equal conditionals keep caller order
        order.sort_by(|&a, &b| cond[b].partial_cmp(&cond[a]).expect("finite"));

        Ok(Prior {
            names: order.iter().map(|&i| names[i].clone()).collect(),
            mass: order.iter().map(|&i| mass[i]).collect(),
            cond: order.iter().map(|&i| cond[i]).collect(),
            order,
        })
    }

    /// Unnamed secrets are labelled `s0, s1, ...` in caller order.
    pub fn from_pairs(mass: &[f64], cond: &[f64]) -> Result<Self> {
        let names = (0..mass.len()).map(|i| format!("s{i}")).collect();
        Self::new(names, mass.to_vec(), cond.to_vec())
    }

    /// Builds a prior from a joint table of `P(S=s, Y=1)` and `P(S=s, Y=0)`.
    pub fn from_joint(names: Vec<String>, joint_y1: &[f64], joint_y0: &[f64]) -> Result<Self> {
        if joint_y1.len() != joint_y0.len() {
            return Err(Error::Parse("joint table columns differ in length".into()));
        }
        let mut mass = Vec::with_capacity(joint_y1.len());
        let mut cond = Vec::with_capacity(joint_y1.len());
        for (index, (&a, &b)) in joint_y1.iter().zip(joint_y0).enumerate() {
            if a < 0.0 || b < 0.0 {
                return Err(Error::NonPositiveMass { index, value: a.min(b) });
            }
            let p = a + b;
            mass.push(p);
            cond.push(if p > 0.0 { a / p } else { 0.0 });
        }
        Self::new(names, mass, cond)
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `P(S=s)` in canonical order.
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// `P(Y=1|S=s)` in canonical order.
    pub fn cond(&self) -> &[f64] {
        &self.cond
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Canonical rank of the secret the caller supplied at `user_index`.
    pub fn canonical_index(&self, user_index: usize) -> Option<usize> {
        self.order.iter().position(|&i| i == user_index)
    }

    pub fn secret_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `P(S=s, Y=y)`.
    pub fn joint(&self, s: usize, y: u8) -> f64 {
        if y == 1 {
            self.mass[s] * self.cond[s]
        } else {
            self.mass[s] * (1.0 - self.cond[s])
        }
    }

    /// `P(Y=1)`.
    pub fn p_y1(&self) -> f64 {
        self.mass.iter().zip(&self.cond).map(|(p, q)| p * q).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_sorts_by_decreasing_conditional() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
        assert_eq!(prior.cond(), &[0.75, 0.25]);
        assert_eq!(prior.order(), &[1, 0]);
        assert_eq!(prior.names(), &["s1".to_string(), "s0".to_string()]);
        assert_eq!(prior.canonical_index(0), Some(1));
    }

    #[test]
    fn sorted_input_keeps_identity() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap();
        assert_eq!(prior.order(), &[0, 1]);
    }

    #[test]
    fn ties_keep_caller_order() {
        let prior = Prior::from_pairs(&[0.2, 0.3, 0.5], &[0.4, 0.9, 0.4]).unwrap();
        assert_eq!(prior.order(), &[1, 0, 2]);
    }

    #[test]
    fn joint_table_is_marginalized() {
        let prior = Prior::from_joint(
            vec!["a".into(), "b".into()],
            &[0.375, 0.125],
            &[0.125, 0.375],
        )
        .unwrap();
        assert_eq!(prior.mass(), &[0.5, 0.5]);
        assert_eq!(prior.cond(), &[0.75, 0.25]);
        assert!((prior.p_y1() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Prior::from_pairs(&[0.0, 1.0], &[0.5, 0.5]),
            Err(Error::NonPositiveMass { index: 0, .. })
        ));
        assert!(matches!(
            Prior::from_pairs(&[0.5, 0.4], &[0.5, 0.5]),
            Err(Error::MassNotNormalized { .. })
        ));
        assert!(matches!(
            Prior::from_pairs(&[0.5, 0.5], &[1.5, 0.5]),
            Err(Error::ConditionalOutOfRange { index: 0, .. })
        ));
        assert!(matches!(Prior::from_pairs(&[1.0], &[0.5]), Err(Error::TooFewSecrets(1))));
    }
}
