use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Mechanism;
use crate::error::{Error, Result};

/// Draws `count` i.i.d. signals from `P(T|S=s, Y=y)`. Same seed, same draws.
pub fn sample_signal(mech: &Mechanism, s: usize, y: u8, seed: u64, count: usize) -> Result<Vec<usize>> {
    if s >= mech.prior().len() {
        return Err(Error::UnknownSecret(s.to_string()));
    }
    if y > 1 {
        return Err(Error::Parse(format!("state must be 0 or 1, got {y}")));
    }
    if mech.prior().joint(s, y) <= 0.0 {
        return Err(Error::ZeroMassContext { secret: s, state: y });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let dist = WeightedIndex::new(mech.row(s, y)).map_err(|e| Error::InvalidMechanism(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| dist.sample(&mut rng)).collect())
}
