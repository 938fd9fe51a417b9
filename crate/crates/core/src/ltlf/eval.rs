use super::formula::{Formula, Proposition};
use crate::error::{Error, Result};

/// A finite trace of valuations indexed `0..=last()`.
pub trait Trace {
    /// Index of the final position (`k` for a `k`-history).
    fn last(&self) -> usize;

    /// Whether `p` is true at position `t` (`t <= last()`).
    fn holds(&self, p: &Proposition, t: usize) -> bool;
}

/// `H, t ⊨ φ`.
///
/// Runs in `O(size(φ) * (k + 1))`: every subformula's truth value is
/// computed once for all positions, sweeping backwards through the trace.
pub fn evaluate<T: Trace + ?Sized>(formula: &Formula, trace: &T, t: usize) -> Result<bool> {
    let last = trace.last();
    if t > last {
        return Err(Error::Index { index: t, length: last });
    }
    Ok(truth_vector(formula, trace)[t])
}

/// Truth value of `formula` at every position `0..=k` of the trace.
pub fn truth_vector<T: Trace + ?Sized>(formula: &Formula, trace: &T) -> Vec<bool> {
    let last = trace.last();
    match formula {
        Formula::Atom(p) => (0..=last).map(|t| trace.holds(p, t)).collect(),
        Formula::True => vec![true; last + 1],
        Formula::False => vec![false; last + 1],
        Formula::Not(f) => {
            let mut v = truth_vector(f.as_ref(), trace);
            v.iter_mut().for_each(|b| *b = !*b);
            v
        }
        Formula::And(l, r) => {
            zip_with(truth_vector(l.as_ref(), trace), &truth_vector(r.as_ref(), trace), |a, b| a && b)
        }
        Formula::Or(l, r) => zip_with(truth_vector(l.as_ref(), trace), &truth_vector(r.as_ref(), trace), |a, b| a || b),
        Formula::Implies(l, r) => {
            zip_with(truth_vector(l.as_ref(), trace), &truth_vector(r.as_ref(), trace), |a, b| !a || b)
        }
        Formula::Next(f) => {
            let inner = truth_vector(f.as_ref(), trace);
            (0..=last).map(|t| t < last && inner[t + 1]).collect()
        }
        Formula::Until(l, r) => {
            let lhs = truth_vector(l.as_ref(), trace);
            let mut out = truth_vector(r.as_ref(), trace);
            for t in (0..last).rev() {
                out[t] = out[t] || (lhs[t] && out[t + 1]);
            }
            out
        }
        Formula::Eventually(f) => {
            let mut out = truth_vector(f.as_ref(), trace);
            for t in (0..last).rev() {
                out[t] = out[t] || out[t + 1];
            }
            out
        }
        Formula::Henceforth(f) => {
            let mut out = truth_vector(f.as_ref(), trace);
            for t in (0..last).rev() {
                out[t] = out[t] && out[t + 1];
            }
            out
        }
    }
}

fn zip_with(mut lhs: Vec<bool>, rhs: &[bool], op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    for (a, &b) in lhs.iter_mut().zip(rhs) {
        *a = op(*a, b);
    }
    lhs
}

/// Evaluate on a single valuation, i.e. at position 0 of a 0-history.
///
/// This is how effect preconditions are checked against a pre-state.
pub fn holds_now(formula: &Formula, valuation: &impl Fn(&Proposition) -> bool) -> bool {
    match formula {
        Formula::Atom(p) => valuation(p),
        Formula::True => true,
        Formula::False => false,
        Formula::Not(f) => !holds_now(f, valuation),
        Formula::And(l, r) => holds_now(l, valuation) && holds_now(r, valuation),
        Formula::Or(l, r) => holds_now(l, valuation) || holds_now(r, valuation),
        Formula::Implies(l, r) => !holds_now(l, valuation) || holds_now(r, valuation),
        Formula::Next(_) => false,
        Formula::Until(_, r) => holds_now(r, valuation),
        Formula::Eventually(f) | Formula::Henceforth(f) => holds_now(f, valuation),
    }
}
