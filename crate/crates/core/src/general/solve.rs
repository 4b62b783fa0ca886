use serde::{Deserialize, Serialize};

use super::assignment::{enumerate_assignments, CutAssignment};
use super::program::{assemble_lp, constant_utility, AssignmentLp};
use super::simplex::{solve_lp, LpSolution, LpStatus, Relation};
use crate::analysis::{expected_utility, UtilityFn};
use crate::error::{Error, Result};
use crate::model::{compress, structure_to_mechanism, InfoStructure, Mechanism, Prior};

/// Default refusal threshold for the number of secrets.
pub const DEFAULT_MAX_SECRETS: usize = 5;

const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralOptions {
    pub max_secrets: usize,
    /// Columns allowed per `i`; `None` means `3n`.
    pub max_columns_per_i: Option<usize>,
    pub diagnostics: bool,
}

impl Default for GeneralOptions {
    fn default() -> Self {
        GeneralOptions { max_secrets: DEFAULT_MAX_SECRETS, max_columns_per_i: None, diagnostics: false }
    }
}

/// Outcome of the program for one assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentRecord {
    pub assignment: String,
    pub status: LpStatus,
    pub objective: Option<f64>,
    pub uniform_column: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralSolution {
    pub structure: InfoStructure,
    pub mechanism: Mechanism,
    pub assignment: CutAssignment,
    pub utility: f64,
    pub diagnostics: Vec<AssignmentRecord>,
}

pub fn solve_general(prior: &Prior, epsilon: f64, u: &UtilityFn) -> Result<GeneralSolution> {
    solve_general_with(prior, epsilon, u, &GeneralOptions::default())
}

/// Maximizes expected utility over every cut assignment.
///
/// Among assignments whose optimum is within `1e-9` of the best, the
/// solution maximizing quadratic utility at that level is kept (so that
/// piecewise-linear utilities still get a strictly informative
/// representative); remaining ties go to the lexicographically smallest
/// assignment.
pub fn solve_general_with(
    prior: &Prior,
    epsilon: f64,
    u: &UtilityFn,
    opts: &GeneralOptions,
) -> Result<GeneralSolution> {
    let n = prior.len();
    if n > opts.max_secrets {
        return Err(Error::TooManySecrets { n, cap: opts.max_secrets });
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let cap = opts.max_columns_per_i.unwrap_or(3 * n);

    let mut solved: Vec<(AssignmentLp, LpSolution)> = Vec::new();
    let mut diagnostics = Vec::new();
    for assignment in enumerate_assignments(n, cap) {
        let prog = assemble_lp(prior, epsilon, u, &assignment);
        let sol = solve_lp(&prog.lp);
        if opts.diagnostics {
            diagnostics.push(AssignmentRecord {
                assignment: assignment.to_string(),
                status: sol.status,
                objective: (sol.status == LpStatus::Optimal).then_some(sol.objective),
                uniform_column: assignment.has_uniform_column(),
            });
        }
        if sol.status == LpStatus::Optimal {
            solved.push((prog, sol));
        }
    }
    let best = solved.iter().map(|(_, s)| s.objective).fold(f64::NEG_INFINITY, f64::max);
    if !best.is_finite() {
        return Err(Error::NoFeasibleAssignment);
    }

    let mut chosen: Option<(f64, &AssignmentLp, Vec<f64>)> = None;
    for (prog, sol) in solved.iter().filter(|(_, s)| s.objective >= best - TIE_TOL) {
        let (score, values) = refine(prior, prog, sol, best);
        let better = match &chosen {
            None => true,
            Some((s, p, _)) => score > s + TIE_TOL || (score >= s - TIE_TOL && prog.assignment < p.assignment),
        };
        if better {
            chosen = Some((score, prog, values));
        }
    }
    let (_, prog, values) = chosen.expect("at least one optimal assignment");

    let structure = build_structure(prior, prog, &values)?;
    let structure = compress(&structure);
    let mechanism = structure_to_mechanism(&structure)?;
    let utility = expected_utility(&structure, u);
    Ok(GeneralSolution { structure, mechanism, assignment: prog.assignment.clone(), utility, diagnostics })
}

/// Re-optimizes quadratic utility on the face where the primary objective
/// stays at `best`.
fn refine(prior: &Prior, prog: &AssignmentLp, sol: &LpSolution, best: f64) -> (f64, Vec<f64>) {
    let quad = prog.objective_for(prior, &UtilityFn::Quadratic);
    let mut lp = prog.lp.clone();
    lp.objective = quad.clone();
    lp.add(prog.lp.objective.clone(), Relation::Ge, best - TIE_TOL);
    let refined = solve_lp(&lp);
    if refined.status == LpStatus::Optimal && prog.lp.max_residual(&refined.values) <= 1e-9 {
        (refined.objective, refined.values)
    } else {
        let score = quad.iter().zip(&sol.values).map(|(c, v)| c * v).sum();
        (score, sol.values.clone())
    }
}

fn build_structure(prior: &Prior, prog: &AssignmentLp, values: &[f64]) -> Result<InfoStructure> {
    let n = prior.len();
    let widths = prog.widths(prior, values);
    let mut signals = vec!["t1".to_string()];
    let mut per_i = vec![0usize; n + 2];
    for col in &prog.assignment.columns {
        per_i[col.i] += 1;
        signals.push(format!("t{}.{}", col.i, per_i[col.i]));
    }
    signals.push(format!("t{}", n + 1));
    let cells: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut row = vec![1.0];
            row.extend(prog.assignment.columns.iter().map(|col| if j < col.yellow_rows(n) { 1.0 } else { 0.0 }));
            row.push(0.0);
            row
        })
        .collect();
    Ok(InfoStructure::new(prior.clone(), signals, widths, cells)?.without_empty_signals())
}

/// Total optimal utility of an assignment's program, including the fixed
/// widths.
pub fn program_utility(prior: &Prior, u: &UtilityFn, objective: f64) -> f64 {
    objective + constant_utility(prior, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{check_ip, check_regions};
    use crate::binary::solve_binary;

    #[test]
    fn matches_binary_fixture() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap();
        let sol = solve_general(&prior, 2f64.ln(), &UtilityFn::Abs).unwrap();
        assert!((sol.utility - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(sol.structure.num_signals(), 4);
        let bin = solve_binary(&prior, 2f64.ln()).unwrap();
        for s in 0..2 {
            for t in 0..4 {
                assert!((sol.structure.widths()[s][t] - bin.structure.widths()[s][t]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn full_disclosure_when_ratios_allow() {
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.6, 0.5]).unwrap();
        let sol = solve_general(&prior, 2f64.ln(), &UtilityFn::Quadratic).unwrap();
        assert!((sol.utility - 1.0).abs() < 1e-12);
        assert!(sol.assignment.columns.is_empty());
    }

    #[test]
    fn three_secrets_are_private_and_well_shaped() {
        let third = 1.0 / 3.0;
        let prior = Prior::from_pairs(&[third, third, 1.0 - 2.0 * third], &[0.9, 0.5, 0.1]).unwrap();
        for u in [UtilityFn::Abs, UtilityFn::Quadratic] {
            let sol = solve_general(&prior, 2f64.ln(), &u).unwrap();
            assert!(check_ip(&sol.structure, 2f64.ln()).satisfied);
            let regions = check_regions(&sol.structure, 2f64.ln());
            assert!(regions.all_hold(), "{u}: {:?}", regions.witnesses);
            assert!(sol.structure.num_signals() <= 10);
        }
    }

    #[test]
    fn size_cap_and_diagnostics() {
        let prior = Prior::from_pairs(&[0.2; 5], &[0.9, 0.7, 0.5, 0.3, 0.1]).unwrap();
        let opts = GeneralOptions { max_secrets: 4, ..Default::default() };
        assert_eq!(
            solve_general_with(&prior, 1.0, &UtilityFn::Abs, &opts).unwrap_err(),
            Error::TooManySecrets { n: 5, cap: 4 }
        );
        let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25]).unwrap();
        let opts = GeneralOptions { diagnostics: true, ..Default::default() };
        let sol = solve_general_with(&prior, 2f64.ln(), &UtilityFn::Abs, &opts).unwrap();
        assert_eq!(sol.diagnostics.len(), 12);
        assert_eq!(sol.diagnostics[0].status, LpStatus::Infeasible);
    }
}
