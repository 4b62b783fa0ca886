//! Optimal release for three secrets by enumerating cut assignments and
//! solving one linear program per assignment.

use ipd::analysis::{check_ip, check_regions, UtilityFn};
use ipd::general::{solve_general_with, GeneralOptions, LpStatus};
use ipd::model::Prior;

fn main() -> ipd::Result<()> {
    let prior = Prior::new(
        vec!["low".into(), "mid".into(), "high".into()],
        vec![0.3, 0.3, 0.4],
        vec![0.1, 0.5, 0.9],
    )?;
    let eps = 0.8;
    let opts = GeneralOptions { diagnostics: true, ..GeneralOptions::default() };
    let sol = solve_general_with(&prior, eps, &UtilityFn::Quadratic, &opts)?;

    let optimal = sol.diagnostics.iter().filter(|r| r.status == LpStatus::Optimal).count();
    println!("{} assignments, {optimal} feasible", sol.diagnostics.len());
    println!("best assignment {}", sol.assignment);
    println!("utility {:.6}", sol.utility);

    let st = &sol.structure;
    for (t, label) in st.signals().iter().enumerate() {
        let widths: Vec<String> = (0..st.num_secrets()).map(|s| format!("{:.4}", st.widths()[s][t])).collect();
        println!("  {label:<6} [{}]  q = {:.4}", widths.join(", "), st.signal_posterior(t).unwrap_or(f64::NAN));
    }
    println!("private: {}", check_ip(st, eps).satisfied);
    println!("regions hold: {}", check_regions(st, eps).all_hold());
    Ok(())
}
