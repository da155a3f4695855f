//! Conradian verification, convex series and the flip catalogue.

mod checks;
mod flip;
mod series;

pub use checks::{
    bi_invariance_check, conradian_check, conradian_check_flips, conradian_check_with,
    convexity_check, BiInvarianceReport, ConradWitness, ConradianOptions, ConradianReport,
    ConvexityReport, SecondConditionReport,
};
pub use flip::{conrad_homomorphism, enumerate_c_orderings, flip};
pub use series::{
    check_rational_series, ConvexSeries, NonAbelianEvidence, QuotientEvidence, RationalSeriesReport,
};
