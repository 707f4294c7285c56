//! Scoring-based rank aggregation.

pub mod axioms;
pub mod cli;
pub mod determination;
pub mod error;
pub mod experiments;
pub mod kemeny;
pub mod majority;
pub mod profile;
pub mod reductions;
pub mod ranking;
pub mod rules;
pub mod sampling;
pub mod scoring;

pub use error::{Error, Result};
pub use profile::Profile;
pub use ranking::{Candidate, Ranking, TieBreakOrder};
pub use rules::RuleId;
pub use scoring::ScoringSystem;
