//! Closed-form optimal release for two secrets, printed as a width table and
//! as the mechanism `P(T|S,Y)`.
//!
//! Run with `cargo run --example binary_mechanism -- 0.5 0.75 0.25 0.693`
//! (arguments: `P(S=s0)`, `q_0`, `q_1`, `ε`).

use ipd::binary::solve_binary;
use ipd::model::Prior;

fn main() -> ipd::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let [p, q0, q1, eps] = match args.as_slice() {
        [] => [0.5, 0.75, 0.25, std::f64::consts::LN_2],
        &[p, q0, q1, eps] => [p, q0, q1, eps],
        _ => panic!("expected four arguments: p q0 q1 eps"),
    };
    let prior = Prior::new(vec!["s0".into(), "s1".into()], vec![p, 1.0 - p], vec![q0, q1])?;
    let sol = solve_binary(&prior, eps)?;
    println!("regime {} (r1 = {:.6}, r2 = {:.6})", sol.regime.tag.label(), sol.regime.r1, sol.regime.r2);

    let st = &sol.structure;
    println!("\n{:<6}{:>12}{:>12}{:>12}", "signal", "s0", "s1", "P(Y=1|t)");
    for (t, label) in st.signals().iter().enumerate() {
        let post = st.signal_posterior(t).map_or("-".to_string(), |q| format!("{q:.6}"));
        println!("{label:<6}{:>12.6}{:>12.6}{post:>12}", st.widths()[0][t], st.widths()[1][t]);
    }

    println!("\nmechanism P(T|S,Y):");
    let mech = &sol.mechanism;
    for s in 0..prior.len() {
        for y in [1u8, 0] {
            let row: Vec<String> = mech.row(s, y).iter().map(|v| format!("{v:.4}")).collect();
            println!("  {} y={y}: [{}]", prior.names()[s], row.join(", "));
        }
    }
    Ok(())
}
