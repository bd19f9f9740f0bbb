//! Length bounds, exact enumeration, Monte-Carlo estimation and the
//! statistical checks used to validate the codecs.

mod bounds;
mod exact;
mod majorant;
mod majorization;
mod montecarlo;
pub mod quadrature;
mod stats;

pub use bounds::{
    exp_tail_bound, floor_gamma_length, halfline_bound, power_tail_bound, unit_interval_bound,
    BoundKind, BoundParams,
};
pub use exact::{
    exact_expected_length_unit, expected_gamma_length_binomial, prob_nonzero,
    rectangle_contribution,
};
pub use majorant::Majorant;
pub use majorization::check_majorization;
pub use montecarlo::{
    empirical_length, empirical_length_unit_truncated, verify, LengthStats, SchemeInput,
    TrialOutcome, VerifyReport,
};
pub use stats::{
    chi_square, chi_square_integer, ks_coefficient, ks_one_sample, ks_two_sample, loglog_slope,
    ChiSquareOutcome, KsOutcome,
};

use crate::error::Result;
use crate::integer_codec::{tokens, IntegerMultiset};

/// Integer-codec length with each gamma codeword charged `⌊2 log₂ Z + 1⌋` bits.
pub fn floor_accounted_length(ms: &IntegerMultiset) -> Result<u64> {
    Ok(tokens(ms)?
        .into_iter()
        .map(|t| t.length_with(|z| floor_gamma_length(z).expect("tokens are positive")))
        .sum())
}
