//! Critical path analysis for project networks whose activity durations are
//! discrete fuzzy quantities.
//!
//! The crate computes two things and compares them:
//!
//! * the extension-principle fuzzy set of critical path lengths, obtained by
//!   enumerating every configuration of crisp activity durations
//!   ([`oracle::oracle_cp_set`]), and
//! * the compositional fuzzy forward recursion over fuzzy max and fuzzy
//!   addition ([`forward::fuzzy_forward_recursion`]).
//!
//! The two do not always agree: the recursion's fuzzy max can compare
//! earliest finishes that stem from mutually exclusive duration choices and
//! thereby inflate beliefs. [`diagnostics`] quantifies the per-length
//! differences and points at the offending comparisons.
//!
//! All arithmetic is exact: beliefs and durations are scaled integers, and
//! no operation ever rounds.

pub mod decimal;
pub mod diagnostics;
pub mod file;
pub mod forward;
pub mod fuzzy;
pub mod network;
pub mod oracle;
pub mod randgen;

pub use diagnostics::{compare_cp_sets, explain_discrepancies, DiscrepancyReport};
pub use forward::{fuzzy_forward_recursion, fuzzy_forward_with_provenance, FuzzySchedule};
pub use fuzzy::{Belief, DiscreteFuzzyQuantity, Duration};
pub use network::{ActivityInput, ProjectNetwork};
pub use oracle::{enumerate_configurations, oracle_cp_set, sample_cp_set};
