//! Draws signals from an optimal mechanism and compares empirical
//! frequencies with the kernel row.

use ipd::binary::solve_binary;
use ipd::model::{sample_signal, Prior};

fn main() -> ipd::Result<()> {
    let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25])?;
    let mech = solve_binary(&prior, std::f64::consts::LN_2)?.mechanism;
    let count = 100_000;
    for s in 0..prior.len() {
        for y in [1u8, 0] {
            let draws = sample_signal(&mech, s, y, 42, count)?;
            let mut freq = vec![0usize; mech.signals().len()];
            for t in draws {
                freq[t] += 1;
            }
            println!("{} y={y}", prior.names()[s]);
            for (t, label) in mech.signals().iter().enumerate() {
                println!("  {label}: kernel {:.4}  empirical {:.4}", mech.row(s, y)[t], freq[t] as f64 / count as f64);
            }
        }
    }
    Ok(())
}
