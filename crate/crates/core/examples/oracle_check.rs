//! Pits the solvers against brute-force challengers: a lattice over the free
//! widths for two secrets and random private structures for three.

use ipd::analysis::UtilityFn;
use ipd::model::Prior;
use ipd::oracle::{binary_grid_oracle, random_structure_oracle};

fn main() -> ipd::Result<()> {
    let u = UtilityFn::Abs;
    let binary = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25])?;
    let grid = binary_grid_oracle(&binary, 0.5, &u, 200)?;
    println!(
        "grid: {} points, {} feasible, best {:.6}, solver {:.6}, solver wins {}",
        grid.trials,
        grid.scored,
        grid.best_utility,
        grid.solver_utility,
        grid.solver_wins(1e-9)
    );

    let three = Prior::from_pairs(&[0.2, 0.5, 0.3], &[0.85, 0.4, 0.15])?;
    let random = random_structure_oracle(&three, 1.0, &u, 5_000, 6, 7)?;
    println!(
        "random: {} structures, best {:.6}, solver {:.6}, solver wins {}",
        random.scored,
        random.best_utility,
        random.solver_utility,
        random.solver_wins(1e-9)
    );
    Ok(())
}
