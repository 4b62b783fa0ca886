//! Brute-force checks of the solvers: a lattice sweep of the binary
//! feasible region, random private structures for any number of secrets,
//! and the literal enumerate-and-filter form of the cut patterns.

mod grid;
mod naive;
mod random;

use serde::{Deserialize, Serialize};

pub use grid::binary_grid_oracle;
pub use naive::{expanded_patterns, naive_c_enumeration, ExpandedPattern};
pub use random::{random_structure, random_structure_oracle};

use crate::analysis::{blackwell_dominates, expected_utility, UtilityFn};
use crate::model::{InfoStructure, PosteriorSummary};

/// Best candidate found by an oracle, compared with the solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    /// `-inf` when no candidate was scored.
    pub best_utility: f64,
    pub best_structure: Option<InfoStructure>,
    /// Candidates generated.
    pub trials: usize,
    /// Candidates that were valid and private, hence scored.
    pub scored: usize,
    pub solver_utility: f64,
    /// The solver's posterior distribution is a mean-preserving spread of
    /// every scored candidate's.
    pub solver_dominates_all: bool,
}

impl OracleReport {
    /// No candidate beats the solver by more than `tol`.
    pub fn solver_wins(&self, tol: f64) -> bool {
        self.best_utility <= self.solver_utility + tol
    }
}

struct Tally {
    report: OracleReport,
    solver_summary: PosteriorSummary,
}

impl Tally {
    fn new(solver: &InfoStructure, u: &UtilityFn) -> Self {
        Tally {
            report: OracleReport {
                best_utility: f64::NEG_INFINITY,
                best_structure: None,
                trials: 0,
                scored: 0,
                solver_utility: expected_utility(solver, u),
                solver_dominates_all: true,
            },
            solver_summary: solver.posterior_summary(),
        }
    }

    fn score(&mut self, candidate: InfoStructure, u: &UtilityFn) {
        self.report.scored += 1;
        let value = expected_utility(&candidate, u);
        let dominates = blackwell_dominates(&self.solver_summary, &candidate.posterior_summary())
            .map(|v| v.dominates)
            .unwrap_or(false);
        self.report.solver_dominates_all &= dominates;
        if value > self.report.best_utility {
            self.report.best_utility = value;
            self.report.best_structure = Some(candidate);
        }
    }
}
