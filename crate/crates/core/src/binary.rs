//! Closed-form optimal structures for a binary secret.
//!
//! Secrets are indexed canonically: `s0` has the larger `q0 = P(Y=1|s0)`.
//! The optimal structure uses at most four signals `t1..t4` with a fixed cell
//! pattern: `t1` is all yellow, `t4` all white, and in `t2`, `t3` the cell of
//! `s0` is yellow while that of `s1` is white. Writing `E = e^ε`, the outer
//! widths `l1(1) = q1` and `l4(0) = 1 − q0` are fixed, and the middle columns
//! satisfy `l2(0) = E·l2(1)` and `l3(1) = E·l3(0)`.

use serde::{Deserialize, Serialize};

use crate::analysis::UtilityFn;
use crate::error::{Error, Result};
use crate::model::{structure_to_mechanism, InfoStructure, Mechanism, Prior};
use crate::scalar::Scalar;

/// Which of the four closed forms applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeTag {
    FullDisclosure,
    /// `t2` is empty.
    ThreeSignalT3,
    /// `t3` is empty.
    ThreeSignalT2,
    FourSignal,
    /// `ε = 0` with distinct conditionals.
    PerfectPrivacy,
}

impl RegimeTag {
    pub fn label(self) -> &'static str {
        match self {
            RegimeTag::FullDisclosure => "FullDisclosure",
            RegimeTag::ThreeSignalT3 => "ThreeSignalT3",
            RegimeTag::ThreeSignalT2 => "ThreeSignalT2",
            RegimeTag::FourSignal => "FourSignal",
            RegimeTag::PerfectPrivacy => "PerfectPrivacy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub tag: RegimeTag,
    /// `q0 / q1`, infinite when `q1 = 0`.
    pub r1: f64,
    /// `(1 − q1) / (1 − q0)`, infinite when `q0 = 1`.
    pub r2: f64,
}

impl Regime {
    fn new(tag: RegimeTag, q0: f64, q1: f64) -> Self {
        let ratio = |a: f64, b: f64| if b == 0.0 { f64::INFINITY } else { a / b };
        Regime { tag, r1: ratio(q0, q1), r2: ratio(1.0 - q1, 1.0 - q0) }
    }
}

/// The eight widths `w[i][j] = P(T=t_{i+1}|S=s_j)` of a four-signal binary
/// structure with the fixed cell pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryWidths<T> {
    pub w: [[T; 2]; 4],
}

impl<T: Scalar> BinaryWidths<T> {
    /// `l_i^{(j)}` with `i` in `1..=4`.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.w[i - 1][j]
    }

    pub fn row_sums(&self) -> [T; 2] {
        [0, 1].map(|j| self.w.iter().fold(T::zero(), |acc, col| acc + col[j].clone()))
    }

    /// `Σ_t l_t^{(j)}·P(Y=1|s_j,t)` for each row.
    pub fn yellow_sums(&self) -> [T; 2] {
        let w = &self.w;
        [
            w[0][0].clone() + w[1][0].clone() + w[2][0].clone(),
            w[0][1].clone(),
        ]
    }

    /// `P(T=t_i)` given secret masses `p = (p0, p1)`.
    pub fn signal_masses(&self, p: &[T; 2]) -> [T; 4] {
        std::array::from_fn(|i| p[0].clone() * self.w[i][0].clone() + p[1].clone() * self.w[i][1].clone())
    }

    /// `P(Y=1|T=t_i)`, `None` for empty signals.
    pub fn signal_posteriors(&self, p: &[T; 2]) -> [Option<T>; 4] {
        let masses = self.signal_masses(p);
        std::array::from_fn(|i| {
            if masses[i].is_zero() {
                return None;
            }
            let yellow = match i {
                0 => masses[0].clone(),
                1 | 2 => p[0].clone() * self.w[i][0].clone(),
                _ => T::zero(),
            };
            Some(yellow / masses[i].clone())
        })
    }

    pub fn expected_utility_with(&self, p: &[T; 2], u: impl Fn(&T) -> T) -> T {
        let masses = self.signal_masses(p);
        self.signal_posteriors(p)
            .iter()
            .zip(masses)
            .filter_map(|(q, m)| q.as_ref().map(|q| m * u(q)))
            .fold(T::zero(), |a, b| a + b)
    }

    /// `None` for utility families without exact values.
    pub fn expected_utility(&self, p: &[T; 2], u: &UtilityFn) -> Option<T> {
        let masses = self.signal_masses(p);
        let mut total = T::zero();
        for (q, m) in self.signal_posteriors(p).iter().zip(masses) {
            if let Some(q) = q {
                total = total + m * u.eval_exact(q)?;
            }
        }
        Some(total)
    }
}

impl BinaryWidths<f64> {
    fn to_structure(&self, prior: &Prior, labels: &[&str]) -> Result<InfoStructure> {
        let keep: Vec<usize> = match labels.len() {
            4 => (0..4).collect(),
            _ => vec![0, 1, 3],
        };
        let yellow = [[1.0, 1.0], [1.0, 0.0], [1.0, 0.0], [0.0, 0.0]];
        let widths = (0..2).map(|j| keep.iter().map(|&i| self.w[i][j]).collect()).collect();
        let cells = (0..2).map(|j| keep.iter().map(|&i| yellow[i][j]).collect()).collect();
        let st = InfoStructure::new(prior.clone(), labels.iter().map(|s| s.to_string()).collect(), widths, cells)?;
        Ok(st.without_empty_signals())
    }
}

/// Picks the regime for `q0 ≥ q1` and `E = e^ε`. Comparisons are multiplied
/// out, so `q1 = 0` and `q0 = 1` need no special handling.
pub fn classify_regime<T: Scalar>(q0: &T, q1: &T, e: &T) -> RegimeTag {
    let one = T::one();
    let r1_ok = q0.approx_le(&(e.clone() * q1.clone()));
    let r2_ok = (one.clone() - q1.clone()).approx_le(&(e.clone() * (one.clone() - q0.clone())));
    match (r1_ok, r2_ok) {
        (true, true) => RegimeTag::FullDisclosure,
        (true, false) => RegimeTag::ThreeSignalT3,
        (false, true) => RegimeTag::ThreeSignalT2,
        (false, false) => {
            if (q1.clone() * (one.clone() + e.clone())).approx_ge(&one) {
                RegimeTag::ThreeSignalT3
            } else if (q0.clone() * (one + e.clone())).approx_le(e) {
                RegimeTag::ThreeSignalT2
            } else {
                RegimeTag::FourSignal
            }
        }
    }
}

/// Widths of the closed form for a given regime.
pub fn regime_widths<T: Scalar>(tag: RegimeTag, q0: &T, q1: &T, e: &T) -> BinaryWidths<T> {
    let one = T::one();
    let zero = T::zero();
    let (q0, q1, e) = (q0.clone(), q1.clone(), e.clone());
    // (l1(0), l2(1), l3(1), l4(1)); the rest follow from the fixed widths and ratios
    let (l1_0, l2_1, l3_1, l4_1) = match tag {
        RegimeTag::FullDisclosure => (q0.clone(), zero.clone(), zero.clone(), one.clone() - q1.clone()),
        RegimeTag::ThreeSignalT3 => {
            let l4_1 = e.clone() * (one.clone() - q0.clone());
            (
                one.clone() - (one.clone() - q1.clone()) / e.clone(),
                zero.clone(),
                one.clone() - q1.clone() - l4_1.clone(),
                l4_1,
            )
        }
        RegimeTag::ThreeSignalT2 => (
            e.clone() * q1.clone(),
            q0.clone() / e.clone() - q1.clone(),
            zero.clone(),
            one.clone() - q0.clone() / e.clone(),
        ),
        RegimeTag::FourSignal => {
            let ep1 = e.clone() + one.clone();
            (
                e.clone() * q1.clone(),
                one.clone() / ep1.clone() - q1.clone(),
                e.clone() * q0.clone() - e.clone() * e.clone() / ep1,
                e.clone() * (one.clone() - q0.clone()),
            )
        }
        RegimeTag::PerfectPrivacy => {
            let mid = q0.clone() - q1.clone();
            return BinaryWidths {
                w: [
                    [q1.clone(), q1.clone()],
                    [mid.clone(), mid],
                    [zero.clone(), zero],
                    [one.clone() - q0.clone(), one - q0],
                ],
            };
        }
    };
    let l2_0 = e.clone() * l2_1.clone();
    let l3_0 = l3_1.clone() / e;
    let snap = |x: T| x.snap_zero();
    BinaryWidths {
        w: [
            [snap(l1_0), snap(q1)],
            [snap(l2_0), snap(l2_1)],
            [snap(l3_0), snap(l3_1)],
            [snap(one - q0), snap(l4_1)],
        ],
    }
}

/// Regime and widths for `q0 ≥ q1`, `E = e^ε > 1`.
pub fn closed_form<T: Scalar>(q0: &T, q1: &T, e: &T) -> (RegimeTag, BinaryWidths<T>) {
    let tag = classify_regime(q0, q1, e);
    (tag, regime_widths(tag, q0, q1, e))
}

/// Middle widths `(l2(1), l3(1))` implied by the outer widths `l1(0)` and
/// `l4(1)` through the row and yellow-mass constraints.
pub fn middle_widths<T: Scalar>(l1_0: &T, l4_1: &T, q0: &T, q1: &T, e: &T) -> (T, T) {
    let one = T::one();
    let den = e.clone() * e.clone() - one.clone();
    let l2 = (l4_1.clone() - e.clone() * l1_0.clone() + e.clone() * q0.clone() + q1.clone() - one) / den.clone();
    let l3 = e.clone()
        * (l1_0.clone() - e.clone() * l4_1.clone() - q0.clone() - e.clone() * q1.clone() + e.clone())
        / den;
    (l2, l3)
}

/// A solved binary instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySolution {
    pub structure: InfoStructure,
    pub mechanism: Mechanism,
    pub regime: Regime,
    pub widths: BinaryWidths<f64>,
}

fn binary_conditionals(prior: &Prior) -> Result<(f64, f64)> {
    if prior.len() != 2 {
        return Err(Error::NotBinarySecret(prior.len()));
    }
    Ok((prior.cond()[0], prior.cond()[1]))
}

/// Blackwell-optimal structure under `ε`-inferential privacy.
pub fn solve_binary(prior: &Prior, epsilon: f64) -> Result<BinarySolution> {
    let (q0, q1) = binary_conditionals(prior)?;
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    if epsilon == 0.0 {
        return solve_perfect_privacy(prior);
    }
    let (tag, widths) = closed_form(&q0, &q1, &epsilon.exp());
    let structure = widths.to_structure(prior, &["t1", "t2", "t3", "t4"])?;
    let mechanism = structure_to_mechanism(&structure)?;
    Ok(BinarySolution { structure, mechanism, regime: Regime::new(tag, q0, q1), widths })
}

/// Optimal structure at `ε = 0`: signals `t1, t2, t3` of widths
/// `q1, q0 − q1, 1 − q0` in both rows.
pub fn solve_perfect_privacy(prior: &Prior) -> Result<BinarySolution> {
    let (q0, q1) = binary_conditionals(prior)?;
    let widths = regime_widths(RegimeTag::PerfectPrivacy, &q0, &q1, &1.0);
    let structure = widths.to_structure(prior, &["t1", "t2", "t3"])?;
    let mechanism = structure_to_mechanism(&structure)?;
    let tag = if q0 == q1 { RegimeTag::FullDisclosure } else { RegimeTag::PerfectPrivacy };
    Ok(BinarySolution { structure, mechanism, regime: Regime::new(tag, q0, q1), widths })
}

/// Instance where the privacy gain is exactly `1.5·δ`: uniform secret,
/// conditionals `E/(1+E)` and `1/(1+E)`, and the tent utility
/// `L·|q − ½|` with `L = 3δ(1 + 2/(E−1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapInstance {
    pub prior: Prior,
    pub utility: UtilityFn,
    pub lipschitz: f64,
    pub u_eps: f64,
    pub u_0: f64,
}

/// Exact counterpart of [`GapInstance`] values.
#[derive(Debug, Clone, PartialEq)]
pub struct GapValues<T> {
    pub lipschitz: T,
    pub u_eps: T,
    pub u_0: T,
}

pub fn gap_instance(epsilon: f64, delta: f64) -> Result<GapInstance> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let e = epsilon.exp();
    let lipschitz = 3.0 * delta * (1.0 + 2.0 / (e - 1.0));
    let prior = Prior::from_pairs(&[0.5, 0.5], &[e / (1.0 + e), 1.0 / (1.0 + e)])?;
    let utility = UtilityFn::tent(lipschitz);
    let u_eps = crate::analysis::expected_utility(&solve_binary(&prior, epsilon)?.structure, &utility);
    let u_0 = crate::analysis::expected_utility(&solve_perfect_privacy(&prior)?.structure, &utility);
    Ok(GapInstance { prior, utility, lipschitz, u_eps, u_0 })
}

/// Gap instance values computed from the closed forms in `T`, with `E`
/// supplied directly.
pub fn gap_values<T: Scalar>(e: &T, delta: &T) -> GapValues<T> {
    let one = T::one();
    let two = T::from_ratio(2, 1);
    let half = T::from_ratio(1, 2);
    let lipschitz = T::from_ratio(3, 1) * delta.clone() * (one.clone() + two / (e.clone() - one.clone()));
    let q0 = e.clone() / (one.clone() + e.clone());
    let q1 = one.clone() / (one + e.clone());
    let p = [half.clone(), half.clone()];
    let tent = |q: &T| lipschitz.clone() * (q.clone() - half.clone()).abs();
    let (_, w_eps) = closed_form(&q0, &q1, e);
    let w_0 = regime_widths(RegimeTag::PerfectPrivacy, &q0, &q1, e);
    GapValues {
        u_eps: w_eps.expected_utility_with(&p, tent),
        u_0: w_0.expected_utility_with(&p, tent),
        lipschitz,
    }
}
