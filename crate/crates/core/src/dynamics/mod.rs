//! Actions on ordered sets: affine representations of `B(1,l)`, induced
//! orderings, crossings and dynamical realizations.

mod affine;
mod crossing;
mod realization;
mod recover;

pub use affine::{
    bs_affine_rep, check_affine_relation, induced_ordering, smirnov_action, AffineAction,
    AffineMap, AffineRelationReport, InducedOrdering, InducedSign,
};
pub use crossing::{
    crossing_from_witness, detect_crossing, verify_crossing, Action, CrossingCertificate,
    CrossingMode, CrossingPoint, CrossingReport, DEFAULT_N_MAX,
};
pub use realization::{
    dynamical_realization, realization_action_check, Enumeration, RealizationEntry,
    RealizationReport, RealizationTable, RealizationViolation,
};
pub use recover::{recover_epsilon, EpsilonRecovery};
