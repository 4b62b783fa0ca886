use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{OracleReport, Tally};
use crate::analysis::{check_ip, UtilityFn};
use crate::binary::solve_binary;
use crate::error::{Error, Result};
use crate::general::solve_general;
use crate::model::{InfoStructure, Prior};

/// Scores `trials` random `ε`-private structures with `2..=max_signals`
/// signals against the solver (closed form for two secrets, the program
/// otherwise).
pub fn random_structure_oracle(
    prior: &Prior,
    epsilon: f64,
    u: &UtilityFn,
    trials: usize,
    max_signals: usize,
    seed: u64,
) -> Result<OracleReport> {
    if max_signals < 2 {
        return Err(Error::InvalidStructure("max_signals must be at least 2".into()));
    }
    let solver = if prior.len() == 2 {
        solve_binary(prior, epsilon)?.structure
    } else {
        solve_general(prior, epsilon, u)?.structure
    };
    let mut tally = Tally::new(&solver, u);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        tally.report.trials += 1;
        let st = random_structure(prior, epsilon, max_signals, &mut rng);
        if let Some(st) = st.filter(|st| check_ip(st, epsilon).satisfied) {
            tally.score(st, u);
        }
    }
    Ok(tally.report)
}

/// Draws one structure satisfying `ε`-inferential privacy.
///
/// Columns are cut sequentially from the remaining row budgets. Each column
/// scales a random per-row profile in `[1, e^ε]` (often at an endpoint) by a
/// weight small enough that the leftover budget still satisfies the ratio
/// bound; the leftover becomes the last column. Yellow mass is then poured
/// into the columns in a random order until each row holds `P(Y=1|S)`.
pub fn random_structure<R: Rng>(prior: &Prior, epsilon: f64, max_signals: usize, rng: &mut R) -> Option<InfoStructure> {
    let n = prior.len();
    let e = epsilon.exp();
    let m = rng.gen_range(2..=max_signals);
    let mut remaining = vec![1.0; n];
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(m);
    for _ in 0..m - 1 {
        let profile: Vec<f64> = (0..n)
            .map(|_| match rng.gen_range(0..3) {
                0 => 1.0,
                1 => e,
                _ => rng.gen_range(1.0..=e),
            })
            .collect();
        let mut w_max = f64::INFINITY;
        for s in 0..n {
            w_max = w_max.min(remaining[s] / profile[s]);
            for t in 0..n {
                let den = e * profile[t] - profile[s];
                if den > 0.0 {
                    w_max = w_max.min((e * remaining[t] - remaining[s]) / den);
                }
            }
        }
        let w = rng.gen::<f64>() * w_max.max(0.0);
        let col: Vec<f64> = profile.iter().map(|l| w * l).collect();
        remaining.iter_mut().zip(&col).for_each(|(r, c)| *r = (*r - c).max(0.0));
        columns.push(col);
    }
    columns.push(remaining);

    let widths: Vec<Vec<f64>> = (0..n).map(|s| columns.iter().map(|c| c[s]).collect()).collect();
    let shared = rng.gen_bool(0.5);
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut cells = vec![vec![0.0; m]; n];
    for s in 0..n {
        if !shared {
            order.shuffle(rng);
        }
        let mut need = prior.cond()[s];
        for &t in &order {
            let w = widths[s][t];
            if w <= 0.0 || need <= 0.0 {
                continue;
            }
            let take = need.min(w);
            cells[s][t] = (take / w).min(1.0);
            need -= take;
        }
    }
    let labels = (1..=m).map(|t| format!("t{t}")).collect();
    InfoStructure::new(prior.clone(), labels, widths, cells).ok()
}
