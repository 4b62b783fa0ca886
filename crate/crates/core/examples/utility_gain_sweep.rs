//! Utility gain `u(ε)/u(0)` of the optimal release over a budget sweep, for
//! each built-in utility.

use ipd::analysis::{utility_gain, UtilityFn};
use ipd::model::Prior;

fn main() -> ipd::Result<()> {
    let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25])?;
    let families = UtilityFn::builtin();
    print!("{:>6}", "eps");
    for u in &families {
        print!("{:>12}", u.label());
    }
    println!("{:>18}", "regime");
    for k in 0..=12 {
        let eps = 0.25 * k as f64;
        print!("{eps:>6.2}");
        let mut regime = "";
        for u in &families {
            let g = utility_gain(&prior, eps, u)?;
            print!("{:>12.4}", g.gain);
            regime = g.regime.label();
        }
        println!("{regime:>18}");
    }
    Ok(())
}
