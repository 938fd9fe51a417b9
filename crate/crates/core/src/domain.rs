//! States, actions, action theories, plans and the histories they generate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ltlf::{evaluate, holds_now, Formula, Proposition, Trace, TOP_PROPOSITION};

/// Name of the always-available no-op action.
pub const NOOP: &str = "noop";

static BOTTOM: Formula = Formula::False;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionName(Arc<str>);

impl ActionName {
    pub fn new(name: impl AsRef<str>) -> Self {
        ActionName(Arc::from(name.as_ref()))
    }

    pub fn noop() -> Self {
        ActionName::new(NOOP)
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_noop(&self) -> bool {
        &*self.0 == NOOP
    }
}

impl fmt::Debug for ActionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for ActionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ActionName {
    fn from(name: &str) -> Self {
        ActionName::new(name)
    }
}

/// The set of propositions true in a state.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(BTreeSet<Proposition>);

impl State {
    pub fn empty() -> Self {
        State::default()
    }

    pub fn contains(&self, p: &Proposition) -> bool {
        self.0.contains(p)
    }

    pub fn insert(&mut self, p: Proposition) -> bool {
        self.0.insert(p)
    }

    pub fn remove(&mut self, p: &Proposition) -> bool {
        self.0.remove(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Proposition> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<P: Into<Proposition>> FromIterator<P> for State {
    fn from_iter<I: IntoIterator<Item = P>>(iter: I) -> Self {
        State(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// A `k`-plan: `k` actions executed at steps `1..=k`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Plan(Vec<ActionName>);

impl Plan {
    pub fn new(actions: Vec<ActionName>) -> Self {
        Plan(actions)
    }

    pub fn empty() -> Self {
        Plan(Vec::new())
    }

    /// Parse comma-separated action names; blank input is the empty plan.
    pub fn parse(text: &str) -> Self {
        let text = text.trim();
        if text.is_empty() {
            return Plan::empty();
        }
        Plan(text.split(',').map(|a| ActionName::new(a.trim())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn actions(&self) -> &[ActionName] {
        &self.0
    }
}

impl<A: Into<ActionName>> FromIterator<A> for Plan {
    fn from_iter<I: IntoIterator<Item = A>>(iter: I) -> Self {
        Plan(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Debug for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Effect {
    positive: Formula,
    negative: Formula,
}

/// Positive and negative effect preconditions over a declared universe.
///
/// Unmapped `(action, proposition)` pairs read as `false`; the no-op action
/// has no effects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTheory {
    propositions: Vec<Proposition>,
    actions: Vec<ActionName>,
    effects: BTreeMap<ActionName, BTreeMap<Proposition, Effect>>,
}

impl ActionTheory {
    /// Declares the universe. `noop` is appended when not listed.
    pub fn new<P, A>(propositions: P, actions: A) -> Result<Self>
    where
        P: IntoIterator,
        P::Item: Into<Proposition>,
        A: IntoIterator,
        A::Item: Into<ActionName>,
    {
        let mut props: Vec<Proposition> = Vec::new();
        for p in propositions {
            let p = p.into();
            if !Proposition::is_valid_name(p.name()) || p.name() == TOP_PROPOSITION {
                return Err(Error::Invalid(format!("illegal proposition name `{p}`")));
            }
            if !props.contains(&p) {
                props.push(p);
            }
        }
        let mut acts: Vec<ActionName> = Vec::new();
        for a in actions {
            let a = a.into();
            if !Proposition::is_valid_name(a.name()) {
                return Err(Error::Invalid(format!("illegal action name `{a}`")));
            }
            if !acts.contains(&a) {
                acts.push(a);
            }
        }
        if !acts.iter().any(ActionName::is_noop) {
            acts.push(ActionName::noop());
        }
        Ok(ActionTheory { propositions: props, actions: acts, effects: BTreeMap::new() })
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    pub fn actions(&self) -> &[ActionName] {
        &self.actions
    }

    pub fn has_action(&self, a: &ActionName) -> bool {
        self.actions.contains(a)
    }

    pub fn has_proposition(&self, p: &Proposition) -> bool {
        self.propositions.contains(p)
    }

    /// Sets `γ⁺(action, proposition)`.
    pub fn set_positive(&mut self, action: &ActionName, proposition: &Proposition, formula: Formula) -> Result<()> {
        self.set(action, proposition, formula, true)
    }

    /// Sets `γ⁻(action, proposition)`.
    pub fn set_negative(&mut self, action: &ActionName, proposition: &Proposition, formula: Formula) -> Result<()> {
        self.set(action, proposition, formula, false)
    }

    fn set(&mut self, action: &ActionName, proposition: &Proposition, formula: Formula, positive: bool) -> Result<()> {
        if !self.has_action(action) {
            return Err(Error::UnknownAction(action.to_string()));
        }
        if !self.has_proposition(proposition) {
            return Err(Error::UndeclaredName(proposition.to_string()));
        }
        if !formula.is_propositional() {
            return Err(Error::NonPropositionalEffect {
                action: action.to_string(),
                proposition: proposition.to_string(),
                formula: formula.to_string(),
            });
        }
        if let Some(p) = formula.propositions().into_iter().find(|p| !self.has_proposition(p)) {
            return Err(Error::UndeclaredName(p.to_string()));
        }
        if action.is_noop() {
            return Err(Error::Invalid(format!("`{NOOP}` cannot have effects")));
        }
        let per_action = self.effects.entry(action.clone()).or_default();
        let effect = per_action
            .entry(proposition.clone())
            .or_insert_with(|| Effect { positive: Formula::False, negative: Formula::False });
        if positive {
            effect.positive = formula;
        } else {
            effect.negative = formula;
        }
        if effect.positive == Formula::False && effect.negative == Formula::False {
            per_action.remove(proposition);
            if per_action.is_empty() {
                self.effects.remove(action);
            }
        }
        Ok(())
    }

    /// `γ⁺(action, proposition)`; `false` when unmapped.
    pub fn positive(&self, action: &ActionName, proposition: &Proposition) -> &Formula {
        self.lookup(action, proposition).map_or(&BOTTOM, |e| &e.positive)
    }

    /// `γ⁻(action, proposition)`; `false` when unmapped.
    pub fn negative(&self, action: &ActionName, proposition: &Proposition) -> &Formula {
        self.lookup(action, proposition).map_or(&BOTTOM, |e| &e.negative)
    }

    fn lookup(&self, action: &ActionName, proposition: &Proposition) -> Option<&Effect> {
        self.effects.get(action)?.get(proposition)
    }

    /// Mapped entries as `(action, proposition, γ⁺, γ⁻)`.
    pub fn effects(&self) -> impl Iterator<Item = (&ActionName, &Proposition, &Formula, &Formula)> {
        self.effects.iter().flat_map(|(a, m)| m.iter().map(move |(p, e)| (a, p, &e.positive, &e.negative)))
    }

    /// Checks that every proposition of `state` is declared.
    pub fn check_state(&self, state: &State) -> Result<()> {
        match state.iter().find(|p| !self.has_proposition(p)) {
            Some(p) => Err(Error::UndeclaredName(p.to_string())),
            None => Ok(()),
        }
    }
}

/// A `k`-history: states at `0..=k`, actions at `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct History {
    states: Vec<State>,
    actions: Vec<ActionName>,
}

impl History {
    pub fn new(states: Vec<State>, actions: Vec<ActionName>) -> Result<Self> {
        if states.len() != actions.len() + 1 {
            return Err(Error::Invalid(format!(
                "a history with {} actions needs {} states, got {}",
                actions.len(),
                actions.len() + 1,
                states.len()
            )));
        }
        Ok(History { states, actions })
    }

    /// `k`, the number of steps.
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn actions(&self) -> &[ActionName] {
        &self.actions
    }

    pub fn state(&self, t: usize) -> Option<&State> {
        self.states.get(t)
    }

    /// Action executed at step `t` (`1..=k`).
    pub fn action(&self, t: usize) -> Option<&ActionName> {
        t.checked_sub(1).and_then(|i| self.actions.get(i))
    }
}

impl Trace for History {
    fn last(&self) -> usize {
        self.actions.len()
    }

    fn holds(&self, p: &Proposition, t: usize) -> bool {
        self.states[t].contains(p)
    }
}

/// The state reached by executing `action` in `state`.
///
/// Propositions whose positive and negative preconditions both hold keep
/// their value.
pub fn successor(state: &State, action: &ActionName, theory: &ActionTheory) -> Result<State> {
    if !theory.has_action(action) {
        return Err(Error::UnknownAction(action.to_string()));
    }
    let mut next = state.clone();
    let Some(effects) = theory.effects.get(action) else {
        return Ok(next);
    };
    let valuation = |p: &Proposition| state.contains(p);
    for (p, effect) in effects {
        let add = holds_now(&effect.positive, &valuation);
        let del = holds_now(&effect.negative, &valuation);
        match (add, del) {
            (true, false) => {
                next.insert(p.clone());
            }
            (false, true) => {
                next.remove(p);
            }
            _ => {}
        }
    }
    Ok(next)
}

/// The unique history of `plan` from `initial` under `theory`.
pub fn generate_history(plan: &Plan, initial: &State, theory: &ActionTheory) -> Result<History> {
    theory.check_state(initial)?;
    let mut states = Vec::with_capacity(plan.len() + 1);
    states.push(initial.clone());
    for action in plan.actions() {
        let next = successor(states.last().expect("nonempty"), action, theory)?;
        states.push(next);
    }
    Ok(History { states, actions: plan.actions().to_vec() })
}

/// Whether every step of `history` obeys the effect equation of `theory`.
///
/// Written against the total `positive`/`negative` lookups rather than
/// [`successor`], so it can serve as an independent check.
pub fn is_compatible(history: &History, theory: &ActionTheory) -> bool {
    if history.states.iter().any(|s| theory.check_state(s).is_err()) {
        return false;
    }
    for t in 1..=history.len() {
        let action = &history.actions[t - 1];
        if !theory.has_action(action) {
            return false;
        }
        let before = &history.states[t - 1];
        let after = &history.states[t];
        let at_pre = |f: &Formula| holds_now(f, &|p: &Proposition| before.contains(p));
        for p in theory.propositions() {
            let pos = at_pre(theory.positive(action, p));
            let neg = at_pre(theory.negative(action, p));
            let removed = !pos && neg;
            let added = pos && !neg;
            let expected = (before.contains(p) && !removed) || added;
            if after.contains(p) != expected {
                return false;
            }
        }
    }
    true
}

/// The members of `values` true at time 0 of the history `plan` generates,
/// in their original order.
pub fn sat_set(values: &[Formula], plan: &Plan, initial: &State, theory: &ActionTheory) -> Result<Vec<Formula>> {
    let history = generate_history(plan, initial, theory)?;
    Ok(satisfied_by(values, &history))
}

pub(crate) fn satisfied_by(values: &[Formula], history: &History) -> Vec<Formula> {
    values.iter().filter(|f| evaluate(f, history, 0).expect("position 0 always exists")).cloned().collect()
}
