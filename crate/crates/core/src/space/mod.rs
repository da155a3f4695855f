//! Spaces of orderings under the ball-exhaustion ultrametric.

mod metric;
mod probes;
mod tree;

pub use metric::{
    agreement_on_ball, agreement_radius, first_disagreement, thresholds, AgreementReport,
};
pub use probes::{
    conjugacy_orbit_probe, convergence_check, default_search_radius, gap_representatives,
    isolation_probe, isolation_probe_with, CandidateSet, ConvergenceReport, IsolationReport,
};
pub use tree::{cantor_tree_export, CantorTree, TreeNode};
