//! Ethical planning over LTLf value bases.
//!
//! Values and desires are LTLf formulas judged on the finite history a plan
//! generates from an initial state under a deterministic action theory.
//! Plans are ranked lexicographically over priority levels of values, either
//! by set inclusion or by cardinality. On top of that the crate detects moral
//! conflicts (value sets no plan can satisfy), computes minimal contractions,
//! and searches for non-dominated plans within a bounded horizon.
//!
//! The [`cli`] module reads the `.epd` domain format and backs the `ethplan`
//! binary.

pub mod cli;
pub mod conflict;
pub mod domain;
pub mod error;
pub mod evaluation;
pub mod ltlf;
pub mod search;

pub use conflict::{Horizon, MinimalityCriterion, MoralProblem};
pub use domain::{generate_history, sat_set, successor, ActionName, ActionTheory, History, Plan, State};
pub use error::{Error, Result};
pub use evaluation::{
    explain, induce, qual_compare, quant_compare, ComparisonMode, ComparisonResult, EthicalPlanningDomain,
    MixedMotiveDomain, Relation, ValueBase,
};
pub use ltlf::{evaluate, parse_formula, Formula, Proposition};
pub use search::{LengthMode, PlanQuery};
