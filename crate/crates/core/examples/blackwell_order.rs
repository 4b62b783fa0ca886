//! Larger budgets produce Blackwell-more-informative releases: every convex
//! utility weakly prefers them.

use ipd::analysis::{blackwell_dominates, summary_utility, UtilityFn};
use ipd::binary::solve_binary;
use ipd::model::Prior;

fn main() -> ipd::Result<()> {
    let prior = Prior::from_pairs(&[0.4, 0.6], &[0.8, 0.3])?;
    let budgets = [0.0, 0.3, 0.7, 1.5];
    let summaries: Vec<_> = budgets
        .iter()
        .map(|&e| solve_binary(&prior, e).map(|s| s.structure.posterior_summary()))
        .collect::<ipd::Result<_>>()?;

    for w in 0..budgets.len() - 1 {
        let (hi, lo) = (&summaries[w + 1], &summaries[w]);
        let v = blackwell_dominates(hi, lo)?;
        println!("ε = {:.1} vs {:.1}: dominates {}, equivalent {}", budgets[w + 1], budgets[w], v.dominates, v.equivalent);
        for u in UtilityFn::builtin() {
            println!("  {:<11}{:.5} >= {:.5}", u.label(), summary_utility(hi, &u), summary_utility(lo, &u));
        }
    }
    Ok(())
}
