//! LTLf formulas: syntax, parsing, desugaring and finite-trace evaluation.

mod eval;
mod formula;
mod parser;

pub use eval::{evaluate, holds_now, truth_vector, Trace};
pub use formula::{Formula, Proposition, TOP_PROPOSITION};
pub use parser::parse_formula;
