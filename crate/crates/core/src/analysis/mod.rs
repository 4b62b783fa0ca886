//! Validators and comparisons: inferential privacy, the structural shape of
//! optimal solutions, Blackwell order, utilities and privacy gains.

mod blackwell;
mod gain;
mod privacy;
mod regions;
mod utility;

pub use blackwell::{blackwell_dominates, stop_loss, BlackwellVerdict};
pub use gain::{utility_gain, UtilityGain};
pub use privacy::{check_ip, check_ip_with_slack, ip_holds_exact, IpReport, IpWitness};
pub use regions::{check_regions, check_regions_with_slack, RegionReport, RegionWitness};
pub use utility::{expected_utility, summary_utility, UtilityFn};
