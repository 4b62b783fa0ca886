//! Utility-specific optimum for any number of secrets: enumerate cut
//! assignments (monotone patterns of wide and narrow cells), solve one
//! linear program per assignment, keep the best.

mod assignment;
mod program;
mod simplex;
mod solve;

pub use assignment::{all_columns, enumerate_assignments, CutAssignment, CutColumn};
pub use program::{assemble_lp, constant_utility, AssignmentLp};
pub use simplex::{solve_lp, LinearConstraint, LpProblem, LpSolution, LpStatus, Relation};
pub use solve::{
    program_utility, solve_general, solve_general_with, AssignmentRecord, GeneralOptions, GeneralSolution,
    DEFAULT_MAX_SECRETS,
};
