//! Splitting a signal and merging equal-posterior signals leave privacy and
//! every utility unchanged.

use ipd::analysis::{check_ip, expected_utility, UtilityFn};
use ipd::binary::solve_binary;
use ipd::model::{compress, split_signal, Prior};

fn main() -> ipd::Result<()> {
    let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25])?;
    let eps = std::f64::consts::LN_2;
    let st = solve_binary(&prior, eps)?.structure;
    let split = split_signal(&split_signal(&st, 0, &[0.3, 0.7])?, 2, &[0.5, 0.25, 0.25])?;
    let merged = compress(&split);

    for (name, s) in [("optimal", &st), ("split", &split), ("compressed", &merged)] {
        let utils: Vec<String> =
            UtilityFn::builtin().iter().map(|u| format!("{}={:.6}", u.label(), expected_utility(s, u))).collect();
        println!("{name:<11}{} signals, private {}, {}", s.num_signals(), check_ip(s, eps).satisfied, utils.join(" "));
    }
    Ok(())
}
