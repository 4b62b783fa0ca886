//! Dense two-phase simplex with Bland's rule.

use serde::{Deserialize, Serialize};

const PIVOT_TOL: f64 = 1e-11;
const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `maximize objective·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpProblem {
    pub var_names: Vec<String>,
    pub objective: Vec<f64>,
    pub constraints: Vec<LinearConstraint>,
}

impl LpProblem {
    pub fn new(var_names: Vec<String>, objective: Vec<f64>) -> Self {
        assert_eq!(var_names.len(), objective.len());
        LpProblem { var_names, objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.num_vars());
        self.constraints.push(LinearConstraint { coeffs, relation, rhs });
    }

    /// Largest violation of any constraint or sign condition at `x`.
    pub fn max_residual(&self, x: &[f64]) -> f64 {
        let mut worst = x.iter().map(|v| (-v).max(0.0)).fold(0.0, f64::max);
        for con in &self.constraints {
            let lhs: f64 = con.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let gap = match con.relation {
                Relation::Le => (lhs - con.rhs).max(0.0),
                Relation::Ge => (con.rhs - lhs).max(0.0),
                Relation::Eq => (lhs - con.rhs).abs(),
            };
            worst = worst.max(gap);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective: f64,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col];
        self.rows[r].iter_mut().for_each(|v| *v /= p);
        self.rhs[r] /= p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r];
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][col];
            if f == 0.0 {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.rows[i][col] = 0.0;
            self.rhs[i] -= f * pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Maximizes `cost·x` over columns with `allowed[j]`; `false` if unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && {
                    let rc = cost[j]
                        - self.basis.iter().zip(&self.rows).map(|(&b, row)| cost[b] * row[j]).sum::<f64>();
                    rc > PIVOT_TOL
                }
            });
            let Some(col) = entering else { return true };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][col];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs[i].max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        if ratio < best - PIVOT_TOL || (ratio <= best + PIVOT_TOL && self.basis[i] < self.basis[k]) {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }

    fn values(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs[i].max(0.0);
            }
        }
        x
    }
}

/// Solves the program exactly up to floating-point round-off. Deterministic:
/// entering and leaving variables follow Bland's rule.
pub fn solve_lp(problem: &LpProblem) -> LpSolution {
    let n = problem.num_vars();
    let m = problem.constraints.len();
    let fail = |status| LpSolution { status, values: vec![0.0; n], objective: f64::NEG_INFINITY };

    // normalize to non-negative right-hand sides
    let cons: Vec<(Vec<f64>, Relation, f64)> = problem
        .constraints
        .iter()
        .map(|c| {
            if c.rhs < 0.0 {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (c.coeffs.iter().map(|v| -v).collect(), flipped, -c.rhs)
            } else {
                (c.coeffs.clone(), c.relation, c.rhs)
            }
        })
        .collect();

    let slacks = cons.iter().filter(|c| c.1 != Relation::Eq).count();
    let artificials = cons.iter().filter(|c| c.1 != Relation::Le).count();
    let width = n + slacks + artificials;
    let first_artificial = n + slacks;
    let mut t = Tableau { rows: Vec::with_capacity(m), rhs: Vec::with_capacity(m), basis: Vec::with_capacity(m), width };
    let (mut s, mut a) = (n, first_artificial);
    for (coeffs, rel, rhs) in &cons {
        let mut row = vec![0.0; width];
        row[..n].copy_from_slice(coeffs);
        match rel {
            Relation::Le => {
                row[s] = 1.0;
                t.basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -1.0;
                row[a] = 1.0;
                t.basis.push(a);
                s += 1;
                a += 1;
            }
            Relation::Eq => {
                row[a] = 1.0;
                t.basis.push(a);
                a += 1;
            }
        }
        t.rows.push(row);
        t.rhs.push(*rhs);
    }

    if artificials > 0 {
        let cost: Vec<f64> = (0..width).map(|j| if j >= first_artificial { -1.0 } else { 0.0 }).collect();
        t.optimize(&cost, &vec![true; width]);
        let infeasibility: f64 =
            t.basis.iter().zip(&t.rhs).filter(|(&b, _)| b >= first_artificial).map(|(_, &v)| v).sum();
        if infeasibility > FEASIBILITY_TOL {
            return fail(LpStatus::Infeasible);
        }
        // drive remaining artificials out of the basis; drop redundant rows
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&j| t.rows[i][j].abs() > 1e-9) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![0.0; width];
    cost[..n].copy_from_slice(&problem.objective);
    let allowed: Vec<bool> = (0..width).map(|j| j < first_artificial).collect();
    if !t.optimize(&cost, &allowed) {
        return fail(LpStatus::Unbounded);
    }
    let values = t.values(n);
    let objective = values.iter().zip(&problem.objective).map(|(v, c)| v * c).sum();
    LpSolution { status: LpStatus::Optimal, values, objective }
}
