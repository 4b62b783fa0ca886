//! Priors, information structures, mechanisms and the equivalent
//! transformations between structures.

mod mechanism;
mod prior;
mod sampling;
mod structure;
mod transform;

pub use mechanism::{mechanism_to_structure, structure_to_mechanism, Mechanism};
pub use prior::Prior;
pub use sampling::sample_signal;
pub use structure::{InfoStructure, PosteriorSummary};
pub use transform::{compress, equivalent_signals, merge_signals, split_signal};
