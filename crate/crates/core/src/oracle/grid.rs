use super::{OracleReport, Tally};
use crate::analysis::{check_ip, UtilityFn};
use crate::binary::{middle_widths, solve_binary, BinaryWidths};
use crate::error::{Error, Result};
use crate::model::{InfoStructure, Prior};

/// Sweeps the outer widths `(l1(0), l4(1))` over a `(grid+1)²` lattice of
/// their ratio boxes `[e^{−ε}·l1(1), e^ε·l1(1)] × [e^{−ε}·l4(0), e^ε·l4(0)]`,
/// derives the middle widths from the row constraints and scores every
/// feasible point against [`solve_binary`].
pub fn binary_grid_oracle(prior: &Prior, epsilon: f64, u: &UtilityFn, grid: usize) -> Result<OracleReport> {
    if prior.len() != 2 {
        return Err(Error::NotBinarySecret(prior.len()));
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    if grid == 0 {
        return Err(Error::BadGrid("grid must be at least 1".into()));
    }
    let solver = solve_binary(prior, epsilon)?;
    let mut tally = Tally::new(&solver.structure, u);
    let (q0, q1) = (prior.cond()[0], prior.cond()[1]);
    let e = epsilon.exp();
    let lattice = |centre: f64| -> Vec<f64> {
        let (lo, hi) = (centre / e, centre * e);
        (0..=grid).map(|k| if k == grid { hi } else { lo + (hi - lo) * k as f64 / grid as f64 }).collect()
    };
    for &l1_0 in &lattice(q1) {
        for &l4_1 in &lattice(1.0 - q0) {
            tally.report.trials += 1;
            let (l2_1, l3_1) = middle_widths(&l1_0, &l4_1, &q0, &q1, &e);
            if l2_1 < -1e-12 || l3_1 < -1e-12 {
                continue;
            }
            let (l2_1, l3_1) = (l2_1.max(0.0), l3_1.max(0.0));
            let w = BinaryWidths { w: [[l1_0, q1], [e * l2_1, l2_1], [l3_1 / e, l3_1], [1.0 - q0, l4_1]] };
            let Some(st) = to_structure(prior, &w) else { continue };
            if check_ip(&st, epsilon).satisfied {
                tally.score(st, u);
            }
        }
    }
    Ok(tally.report)
}

fn to_structure(prior: &Prior, w: &BinaryWidths<f64>) -> Option<InfoStructure> {
    let cells = [[1.0, 1.0], [1.0, 0.0], [1.0, 0.0], [0.0, 0.0]];
    let widths = (0..2).map(|j| (0..4).map(|i| w.w[i][j]).collect()).collect();
    let cells = (0..2).map(|j| (0..4).map(|i| cells[i][j]).collect()).collect();
    let labels = ["t1", "t2", "t3", "t4"].map(String::from).to_vec();
    InfoStructure::new(prior.clone(), labels, widths, cells).ok().map(|st| st.without_empty_signals())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_optimum_is_a_lattice_corner() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap();
        let r = binary_grid_oracle(&prior, 2f64.ln(), &UtilityFn::Abs, 1).unwrap();
        assert_eq!(r.trials, 4);
        assert!((r.best_utility - 5.0 / 6.0).abs() < 1e-12);
        assert!(r.solver_wins(1e-9));
        let r = binary_grid_oracle(&prior, 2f64.ln(), &UtilityFn::Abs, 100).unwrap();
        assert!(r.solver_wins(1e-9) && r.solver_dominates_all);
        assert!(r.scored > 100);
    }

    #[test]
    fn quadratic_sweep_is_dominated() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.9, 0.4]).unwrap();
        let r = binary_grid_oracle(&prior, 2f64.ln(), &UtilityFn::Quadratic, 100).unwrap();
        assert!(r.solver_wins(1e-9));
        assert!(r.solver_dominates_all);
    }

    #[test]
    fn rejects_bad_input() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.9, 0.4]).unwrap();
        assert!(matches!(binary_grid_oracle(&prior, 1.0, &UtilityFn::Abs, 0), Err(Error::BadGrid(_))));
        let three = Prior::from_pairs(&[0.2, 0.3, 0.5], &[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(binary_grid_oracle(&three, 1.0, &UtilityFn::Abs, 5).unwrap_err(), Error::NotBinarySecret(3));
    }
}
