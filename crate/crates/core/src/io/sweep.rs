use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::analysis::{utility_gain, UtilityFn};
use crate::error::{Error, Result};
use crate::model::Prior;

const MAX_GRID_POINTS: usize = 1_000_000;

/// One `(ε, utility family)` point of a privacy-utility sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub eps: f64,
    pub utility_family: String,
    pub u_eps: f64,
    pub u_0: f64,
    pub gain: f64,
    pub regime: String,
    pub num_signals: usize,
}

/// Parses an inclusive grid `start:stop:step`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(Error::BadGrid(format!("expected start:stop:step, got {spec:?}")));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| Error::BadGrid(format!("not a number: {s:?}")));
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || start < 0.0 || stop < start || step <= 0.0 {
        return Err(Error::BadGrid(format!("need 0 <= start <= stop and step > 0, got {spec:?}")));
    }
    let steps = ((stop - start) / step).round();
    if steps + 1.0 > MAX_GRID_POINTS as f64 {
        return Err(Error::BadGrid(format!("{spec:?} has more than {MAX_GRID_POINTS} points")));
    }
    Ok((0..=steps as usize).map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12).collect())
}

/// Optimal utility and gain over perfect privacy for every grid point and
/// family, grouped by family in the given order, then by `ε`.
pub fn run_sweep(prior: &Prior, grid: &[f64], families: &[UtilityFn]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(grid.len() * families.len());
    for u in families {
        for &eps in grid {
            let g = utility_gain(prior, eps, u)?;
            rows.push(SweepRow {
                eps,
                utility_family: u.label().to_string(),
                u_eps: g.u_eps,
                u_0: g.u_0,
                gain: g.gain,
                regime: g.regime.label().to_string(),
                num_signals: g.num_signals,
            });
        }
    }
    Ok(rows)
}

/// CSV with header `eps,utility_family,u_eps,u_0,gain,regime,num_signals`
/// and LF line endings.
pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
