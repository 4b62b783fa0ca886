use serde::{Deserialize, Serialize};

use super::{InfoStructure, Prior};
use crate::error::{Error, Result};
use crate::NORMALIZATION_TOL;

/// Release kernel `P(T=t|S=s, Y=y)`, indexed `kernel[s][y][t]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mechanism {
    prior: Prior,
    signals: Vec<String>,
    kernel: Vec<[Vec<f64>; 2]>,
}

impl Mechanism {
    /// Rows for contexts `(s, y)` of positive prior mass must be
    /// distributions; rows for zero-mass contexts only need entries in `[0, 1]`.
    pub fn new(prior: Prior, signals: Vec<String>, kernel: Vec<[Vec<f64>; 2]>) -> Result<Self> {
        let m = signals.len();
        if kernel.len() != prior.len() {
            return Err(Error::InvalidMechanism(format!(
                "{} kernel rows for {} secrets",
                kernel.len(),
                prior.len()
            )));
        }
        for (s, rows) in kernel.iter().enumerate() {
            for (y, row) in rows.iter().enumerate() {
                if row.len() != m {
                    return Err(Error::InvalidMechanism(format!("row ({s},{y}) has {} entries", row.len())));
                }
                if let Some(v) = row.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                    return Err(Error::InvalidMechanism(format!("row ({s},{y}) has entry {v}")));
                }
                if prior.joint(s, y as u8) > 0.0 {
                    let sum: f64 = row.iter().sum();
                    if (sum - 1.0).abs() > NORMALIZATION_TOL {
                        return Err(Error::InvalidMechanism(format!("row ({s},{y}) sums to {sum}")));
                    }
                }
            }
        }
        Ok(Mechanism { prior, signals, kernel })
    }

    pub fn prior(&self) -> &Prior {
        &self.prior
    }

    pub fn signals(&self) -> &[String] {
        &self.signals
    }

    pub fn kernel(&self) -> &[[Vec<f64>; 2]] {
        &self.kernel
    }

    /// `P(T=·|S=s, Y=y)`.
    pub fn row(&self, s: usize, y: u8) -> &[f64] {
        &self.kernel[s][y as usize]
    }
}

/// `P(T|S,Y) = P(S,Y,T) / P(S,Y)`.
///
/// Rows for zero-mass contexts are filled with the full-disclosure row: all
/// mass on the signal with the highest posterior for `Y=1`, lowest for `Y=0`.
pub fn structure_to_mechanism(st: &InfoStructure) -> Result<Mechanism> {
    let prior = st.prior();
    let m = st.num_signals();
    let (top, bottom) = extreme_signals(st);
    let mut kernel = Vec::with_capacity(prior.len());
    for s in 0..prior.len() {
        let widths = &st.widths()[s];
        let cells = &st.cells()[s];
        let yes: Vec<f64> = widths.iter().zip(cells).map(|(w, c)| w * c).collect();
        let no: Vec<f64> = widths.iter().zip(cells).map(|(w, c)| w * (1.0 - c)).collect();
        let q = prior.cond()[s];

        let row_y1 = if q > 0.0 {
            normalized(yes)
        } else if yes.iter().sum::<f64>() > NORMALIZATION_TOL {
            return Err(Error::DegenerateConditional { secret: s });
        } else {
            indicator(m, top)
        };
        let row_y0 = if q < 1.0 {
            normalized(no)
        } else if no.iter().sum::<f64>() > NORMALIZATION_TOL {
            return Err(Error::DegenerateConditional { secret: s });
        } else {
            indicator(m, bottom)
        };
        kernel.push([row_y0, row_y1]);
    }
    Mechanism::new(prior.clone(), st.signals().to_vec(), kernel)
}

/// Inverse of [`structure_to_mechanism`]: `P(T|S) = Σ_y P(Y=y|S) P(T|S,Y)`
/// and cells by Bayes' rule. Zero-width cells get posterior 0.
pub fn mechanism_to_structure(mech: &Mechanism) -> Result<InfoStructure> {
    let prior = mech.prior();
    let mut widths = Vec::with_capacity(prior.len());
    let mut cells = Vec::with_capacity(prior.len());
    for s in 0..prior.len() {
        let q = prior.cond()[s];
        let [row0, row1] = &mech.kernel()[s];
        let w: Vec<f64> = row1.iter().zip(row0).map(|(a, b)| q * a + (1.0 - q) * b).collect();
        let c: Vec<f64> = row1
            .iter()
            .zip(&w)
            .map(|(a, &wt)| if wt > 0.0 { (q * a / wt).clamp(0.0, 1.0) } else { 0.0 })
            .collect();
        widths.push(w);
        cells.push(c);
    }
    InfoStructure::new(prior.clone(), mech.signals().to_vec(), widths, cells)
}

fn normalized(mut row: Vec<f64>) -> Vec<f64> {
    let sum: f64 = row.iter().sum();
    row.iter_mut().for_each(|v| *v /= sum);
    row
}

fn indicator(m: usize, at: usize) -> Vec<f64> {
    let mut row = vec![0.0; m];
    row[at] = 1.0;
    row
}

/// Positive-mass signals with the highest and lowest `P(Y=1|T)`; first wins ties.
fn extreme_signals(st: &InfoStructure) -> (usize, usize) {
    let mut top: Option<(usize, f64)> = None;
    let mut bottom: Option<(usize, f64)> = None;
    for t in 0..st.num_signals() {
        let Some(q) = st.signal_posterior(t) else { continue };
        if top.is_none_or(|(_, best)| q > best) {
            top = Some((t, q));
        }
        if bottom.is_none_or(|(_, best)| q < best) {
            bottom = Some((t, q));
        }
    }
    (top.map_or(0, |x| x.0), bottom.map_or(st.num_signals() - 1, |x| x.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prior() -> Prior {
        Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap()
    }

    fn labels(k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("t{i}")).collect()
    }

    #[test]
    fn full_disclosure_mechanism() {
        let st = InfoStructure::new(
            prior(),
            labels(2),
            vec![vec![0.75, 0.25], vec![0.25, 0.75]],
            vec![vec![1.0, 0.0], vec![1.0, 0.0]],
        )
        .unwrap();
        let mech = structure_to_mechanism(&st).unwrap();
        for s in 0..2 {
            assert_eq!(mech.row(s, 1), &[1.0, 0.0]);
            assert_eq!(mech.row(s, 0), &[0.0, 1.0]);
        }
    }

    #[test]
    fn mechanism_ignoring_state_gives_prior_cells() {
        let kernel = vec![
            [vec![0.3, 0.7], vec![0.3, 0.7]],
            [vec![0.6, 0.4], vec![0.6, 0.4]],
        ];
        let mech = Mechanism::new(prior(), labels(2), kernel).unwrap();
        let st = mechanism_to_structure(&mech).unwrap();
        for s in 0..2 {
            for t in 0..2 {
                assert!((st.cells()[s][t] - st.prior().cond()[s]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn perfect_privacy_mechanism_has_equal_rows() {
        // kernel of the three-signal perfect-privacy structure for q = (.75, .25)
        let kernel = vec![
            [vec![0.0, 0.0, 1.0], vec![1.0 / 3.0, 2.0 / 3.0, 0.0]],
            [vec![0.0, 2.0 / 3.0, 1.0 / 3.0], vec![1.0, 0.0, 0.0]],
        ];
        let mech = Mechanism::new(prior(), labels(3), kernel).unwrap();
        let st = mechanism_to_structure(&mech).unwrap();
        for s in 0..2 {
            for (w, e) in st.widths()[s].iter().zip([0.25, 0.5, 0.25]) {
                assert!((w - e).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn degenerate_conditionals_use_full_disclosure_rows() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[1.0, 0.0]).unwrap();
        let st = InfoStructure::new(
            prior,
            labels(2),
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![1.0, 0.0], vec![0.0, 0.0]],
        )
        .unwrap();
        let mech = structure_to_mechanism(&st).unwrap();
        assert_eq!(mech.row(0, 0), &[0.0, 1.0]);
        assert_eq!(mech.row(1, 1), &[1.0, 0.0]);
        let back = mechanism_to_structure(&mech).unwrap();
        assert_eq!(back.widths(), st.widths());
    }

    #[test]
    fn rejects_unnormalized_rows() {
        let kernel = vec![[vec![0.5, 0.4], vec![1.0, 0.0]], [vec![0.0, 1.0], vec![1.0, 0.0]]];
        assert!(matches!(Mechanism::new(prior(), labels(2), kernel), Err(Error::InvalidMechanism(_))));
    }
}
