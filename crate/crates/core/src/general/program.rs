use super::assignment::CutAssignment;
use super::simplex::{LpProblem, Relation};
use crate::analysis::UtilityFn;
use crate::model::Prior;

/// The linear program for one cut assignment, with the data needed to turn
/// its solution back into widths.
///
/// Variables, in order: `r_1^{(j)}` for rows `1..n−1` (so that the first
/// column has widths `r_1^{(j)}·q_n`), `r_{n+1}^{(j)}` for rows `2..n` (last
/// column widths `r_{n+1}^{(j)}·(1 − q_1)`), then the row-`n` width of every
/// middle column.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentLp {
    pub assignment: CutAssignment,
    pub lp: LpProblem,
    /// `P(Y=1|T=t)` of each middle column, fixed by the assignment.
    pub column_q: Vec<f64>,
    /// `c^{(j)}/c^{(n)}` per middle column and row.
    pub column_ratio: Vec<Vec<f64>>,
    /// Objective for an arbitrary utility, in the same variables.
    pub mass_coeffs: Vec<f64>,
}

impl AssignmentLp {
    pub fn num_vars(&self) -> usize {
        self.lp.num_vars()
    }

    /// Linear objective `Σ_t P(T=t)·u(q_t)` for `u`.
    pub fn objective_for(&self, prior: &Prior, u: &UtilityFn) -> Vec<f64> {
        objective(prior, &self.column_q, &self.mass_coeffs, u)
    }

    /// Widths `l[s][t]` (rows in canonical order, columns `t1`, middle
    /// columns, `t_{n+1}`) from a solution vector.
    pub fn widths(&self, prior: &Prior, x: &[f64]) -> Vec<Vec<f64>> {
        let n = prior.len();
        let (qn, q1) = (prior.cond()[n - 1], prior.cond()[0]);
        let m = self.column_q.len();
        (0..n)
            .map(|j| {
                let mut row = Vec::with_capacity(m + 2);
                row.push(if j < n - 1 { x[j] * qn } else { qn });
                for k in 0..m {
                    row.push(self.column_ratio[k][j] * x[2 * (n - 1) + k]);
                }
                row.push(if j == 0 { 1.0 - q1 } else { x[n - 1 + j - 1] * (1.0 - q1) });
                row
            })
            .collect()
    }
}

fn objective(prior: &Prior, column_q: &[f64], mass_coeffs: &[f64], u: &UtilityFn) -> Vec<f64> {
    let n = prior.len();
    let mut obj = mass_coeffs.to_vec();
    for v in &mut obj[..n - 1] {
        *v *= u.eval(1.0);
    }
    for v in &mut obj[n - 1..2 * (n - 1)] {
        *v *= u.eval(0.0);
    }
    for (k, &q) in column_q.iter().enumerate() {
        obj[2 * (n - 1) + k] *= u.eval(q);
    }
    obj
}

/// Builds the program: the `r` variables range over `[e^{−ε}, e^ε]` and
/// pairwise within a factor `e^ε` of each other, every row sums to one, and
/// the yellow part of row `j` has mass `q_j`.
///
/// The objective drops the constant contributions of the fixed widths
/// `l_1^{(n)} = q_n` and `l_{n+1}^{(1)} = 1 − q_1`; [`AssignmentLp::widths`]
/// restores them and [`constant_utility`] gives their value.
pub fn assemble_lp(prior: &Prior, epsilon: f64, u: &UtilityFn, assignment: &CutAssignment) -> AssignmentLp {
    let n = prior.len();
    let e = epsilon.exp();
    let p = prior.mass();
    let q = prior.cond();
    let (qn, q1) = (q[n - 1], q[0]);
    let m = assignment.columns.len();
    let nv = 2 * (n - 1) + m;
    let r1 = |j: usize| j; // row j in 0..n-1
    let rl = |j: usize| n - 1 + j - 1; // row j in 1..n
    let col = |k: usize| 2 * (n - 1) + k;

    let c = assignment.expand(epsilon);
    let column_ratio: Vec<Vec<f64>> = c.iter().map(|cj| cj.iter().map(|v| v / cj[n - 1]).collect()).collect();
    let column_q: Vec<f64> = assignment
        .columns
        .iter()
        .zip(&c)
        .map(|(cc, cj)| {
            let a = cc.yellow_rows(n);
            let num: f64 = (0..a).map(|j| p[j] * cj[j]).sum();
            let den: f64 = (0..n).map(|j| p[j] * cj[j]).sum();
            num / den
        })
        .collect();

    let mut mass_coeffs = vec![0.0; nv];
    for j in 0..n - 1 {
        mass_coeffs[r1(j)] = p[j] * qn;
    }
    for j in 1..n {
        mass_coeffs[rl(j)] = p[j] * (1.0 - q1);
    }
    for k in 0..m {
        mass_coeffs[col(k)] = (0..n).map(|j| p[j] * column_ratio[k][j]).sum();
    }

    let names: Vec<String> = (0..n - 1)
        .map(|j| format!("r1[{}]", j + 1))
        .chain((1..n).map(|j| format!("r{}[{}]", n + 1, j + 1)))
        .chain(assignment.columns.iter().map(|cc| format!("l({},{},{})", cc.i, cc.b, cc.c)))
        .collect();
    let mut lp = LpProblem::new(names, objective(prior, &column_q, &mass_coeffs, u));

    let unit = |idx: usize, scale: f64| {
        let mut v = vec![0.0; nv];
        v[idx] = scale;
        v
    };
    // first column: row n is the reference (ratio 1); last column: row 1
    let first: Vec<usize> = (0..n - 1).map(r1).collect();
    let last: Vec<usize> = (1..n).map(rl).collect();
    for group in [&first, &last] {
        for &v in group {
            lp.add(unit(v, 1.0), Relation::Le, e);
            lp.add(unit(v, 1.0), Relation::Ge, 1.0 / e);
        }
        for &a in group {
            for &b in group {
                if a != b {
                    let mut coeffs = unit(a, 1.0);
                    coeffs[b] = -e;
                    lp.add(coeffs, Relation::Le, 0.0);
                }
            }
        }
    }

    for j in 0..n {
        // row sums; row 1 is implied by its yellow sum and the fixed last width
        if j > 0 {
            let mut coeffs = vec![0.0; nv];
            if j < n - 1 {
                coeffs[r1(j)] = qn;
            }
            coeffs[rl(j)] = 1.0 - q1;
            for k in 0..m {
                coeffs[col(k)] = column_ratio[k][j];
            }
            let fixed = if j == n - 1 { qn } else { 0.0 };
            lp.add(coeffs, Relation::Eq, 1.0 - fixed);
        }
        // yellow sums; row n is just the fixed first width
        if j < n - 1 {
            let mut coeffs = vec![0.0; nv];
            coeffs[r1(j)] = qn;
            for (k, cc) in assignment.columns.iter().enumerate() {
                if j < cc.yellow_rows(n) {
                    coeffs[col(k)] = column_ratio[k][j];
                }
            }
            lp.add(coeffs, Relation::Eq, q[j]);
        }
    }

    AssignmentLp { assignment: assignment.clone(), lp, column_q, column_ratio, mass_coeffs }
}

/// Utility contributed by the fixed widths `l_1^{(n)}` and `l_{n+1}^{(1)}`.
pub fn constant_utility(prior: &Prior, u: &UtilityFn) -> f64 {
    let n = prior.len();
    let (p, q) = (prior.mass(), prior.cond());
    p[n - 1] * q[n - 1] * u.eval(1.0) + p[0] * (1.0 - q[0]) * u.eval(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::general::assignment::CutColumn;
    use crate::general::simplex::{solve_lp, LpStatus};

    fn fixture() -> Prior {
        Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap()
    }

    #[test]
    fn two_column_program_shape() {
        let a = CutAssignment {
            n: 2,
            columns: vec![CutColumn { i: 2, b: 1, c: 3 }, CutColumn { i: 2, b: 0, c: 2 }],
        };
        let prog = assemble_lp(&fixture(), 2f64.ln(), &UtilityFn::Abs, &a);
        assert_eq!(prog.num_vars(), 4);
        assert!((prog.column_q[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((prog.column_q[1] - 1.0 / 3.0).abs() < 1e-15);
        // the closed-form optimum is feasible
        let x = [2.0, 2.0, 1.0 / 12.0, 1.0 / 6.0];
        assert!(prog.lp.max_residual(&x) < 1e-12);
        let sol = solve_lp(&prog.lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        let total = sol.objective + constant_utility(&fixture(), &UtilityFn::Abs);
        assert!((total - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn empty_assignment_is_full_disclosure_when_allowed() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.6, 0.5]).unwrap();
        let prog = assemble_lp(&prior, 2f64.ln(), &UtilityFn::Quadratic, &CutAssignment { n: 2, columns: vec![] });
        assert_eq!(prog.num_vars(), 2);
        let sol = solve_lp(&prog.lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective + constant_utility(&prior, &UtilityFn::Quadratic) - 1.0).abs() < 1e-12);
        let w = prog.widths(&prior, &sol.values);
        assert!((w[0][0] - 0.6).abs() < 1e-12 && (w[1][1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_assignment_is_infeasible_for_spread_priors() {
        let prog = assemble_lp(&fixture(), 2f64.ln(), &UtilityFn::Abs, &CutAssignment { n: 2, columns: vec![] });
        assert_eq!(solve_lp(&prog.lp).status, LpStatus::Infeasible);
    }
}
