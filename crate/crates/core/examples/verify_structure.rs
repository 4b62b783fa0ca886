//! Checks inferential privacy and the region characterization on two
//! hand-written structures: full disclosure of `Y` and the optimal release.

use ipd::analysis::{check_ip, check_regions};
use ipd::binary::solve_binary;
use ipd::model::{InfoStructure, Prior};

fn report(name: &str, st: &InfoStructure, eps: f64) {
    let ip = check_ip(st, eps);
    println!("{name}: private at ε = {eps:.4}? {}  (max log ratio {:.4})", ip.satisfied, ip.max_log_ratio);
    if let (false, Some(w)) = (ip.satisfied, &ip.witness) {
        println!("  violated at signal {} between secrets {} and {}", st.signals()[w.signal], w.high, w.low);
    }
    let regions = check_regions(st, eps);
    println!(
        "  cells binary {}, columns binding {}, a/b/c regions {}/{}/{}",
        regions.cells_binary, regions.columns_binding, regions.a_upper_left, regions.b_upper_left, regions.c_lower_right
    );
}

fn main() -> ipd::Result<()> {
    let prior = Prior::from_pairs(&[0.5, 0.5], &[0.75, 0.25])?;
    let eps = std::f64::consts::LN_2;

    let full = InfoStructure::new(
        prior.clone(),
        vec!["y1".into(), "y0".into()],
        vec![vec![0.75, 0.25], vec![0.25, 0.75]],
        vec![vec![1.0, 0.0], vec![1.0, 0.0]],
    )?;
    report("full disclosure", &full, eps);
    report("optimal", &solve_binary(&prior, eps)?.structure, eps);
    Ok(())
}
