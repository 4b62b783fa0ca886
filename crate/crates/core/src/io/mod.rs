//! File formats, the sweep driver and the command-line front end.

mod cli;
mod files;
mod format;
mod sweep;

pub use cli::{
    check_slack, cmd_sample, cmd_solve, cmd_solve_general, cmd_sweep, cmd_utility, cmd_verify, execute, run, Cli,
    Command, Exit, OracleKind, TOLERANCE_ENV,
};
pub use files::{
    read_mechanism, read_prior, read_structure, write_mechanism, write_prior, write_structure, JointEntry,
    MechanismFile, PriorFile, SecretEntry, StructureFile,
};
pub use format::{to_json_string, write_json};
pub use sweep::{parse_grid, run_sweep, write_sweep_csv, SweepRow};
