//! Bounded-horizon plan enumeration and non-dominated plan search.
//!
//! Everything here streams plans from [`PlanEnumerator`], which holds a
//! single odometer of `K` counters. Dominance checks keep the query plan and
//! the current candidate; the non-dominated set keeps one entry per
//! mutually non-dominated Sat-profile, never the plans themselves.

use std::collections::HashSet;

use crate::conflict::Horizon;
use crate::domain::{ActionName, Plan};
use crate::error::{Error, Result};
use crate::evaluation::{profile_relation, ComparisonMode, EthicalPlanningDomain, Relation, SatProfile};

/// Which plan lengths a query ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthMode {
    /// Exactly `K` actions.
    Exact,
    /// Any length `0..=K`.
    UpTo,
}

/// Plans ordered by length, then lexicographically by action index.
#[derive(Debug, Clone)]
pub struct PlanEnumerator {
    actions: Vec<ActionName>,
    max_len: usize,
    len: usize,
    digits: Vec<usize>,
    done: bool,
}

impl PlanEnumerator {
    pub fn new(actions: &[ActionName], horizon: Horizon, lengths: LengthMode) -> Self {
        let start = match lengths {
            LengthMode::Exact => horizon.0,
            LengthMode::UpTo => 0,
        };
        PlanEnumerator {
            actions: actions.to_vec(),
            max_len: horizon.0,
            len: start,
            digits: vec![0; start],
            done: actions.is_empty() && start > 0,
        }
    }

    /// How many plans the enumeration yields.
    pub fn count(actions: usize, horizon: Horizon, lengths: LengthMode) -> u128 {
        let n = actions as u128;
        match lengths {
            LengthMode::Exact => n.pow(horizon.0 as u32),
            LengthMode::UpTo => (0..=horizon.0 as u32).map(|g| n.pow(g)).sum(),
        }
    }

    fn advance(&mut self) {
        for i in (0..self.len).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.actions.len() {
                return;
            }
            self.digits[i] = 0;
        }
        // odometer wrapped: move to the next length
        if self.len >= self.max_len || self.actions.is_empty() {
            self.done = true;
        } else {
            self.len += 1;
            self.digits = vec![0; self.len];
        }
    }
}

impl Iterator for PlanEnumerator {
    type Item = Plan;

    fn next(&mut self) -> Option<Plan> {
        if self.done {
            return None;
        }
        let plan = Plan::new(self.digits.iter().map(|&i| self.actions[i].clone()).collect());
        self.advance();
        Some(plan)
    }
}

/// Enumerate every plan over `actions` up to the horizon.
pub fn enumerate_plans(actions: &[ActionName], horizon: Horizon, lengths: LengthMode) -> PlanEnumerator {
    PlanEnumerator::new(actions, horizon, lengths)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanQuery {
    pub domain: EthicalPlanningDomain,
    pub horizon: Horizon,
    pub mode: ComparisonMode,
    pub lengths: LengthMode,
}

impl PlanQuery {
    pub fn new(domain: EthicalPlanningDomain, horizon: Horizon, mode: ComparisonMode, lengths: LengthMode) -> Self {
        PlanQuery { domain, horizon, mode, lengths }
    }

    pub fn plans(&self) -> PlanEnumerator {
        enumerate_plans(self.domain.theory.actions(), self.horizon, self.lengths)
    }
}

/// The first enumerated plan strictly better than `plan`, if any.
pub fn is_dominated(query: &PlanQuery, plan: &Plan) -> Result<Option<Plan>> {
    if plan.len() > query.horizon.0 {
        return Err(Error::Invalid(format!("plan of length {} exceeds horizon {}", plan.len(), query.horizon.0)));
    }
    let own = query.domain.profile(plan)?;
    for candidate in query.plans() {
        let other = query.domain.profile(&candidate)?;
        if profile_relation(query.mode, &own, &other).0 == Relation::SecondPreferred {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Non-dominated plans sharing one Sat-profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileClass {
    pub profile: SatProfile,
    /// First plan enumerated with this profile.
    pub representative: Plan,
    pub plan_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDominatedProfiles {
    pub classes: Vec<ProfileClass>,
    pub plans_examined: u64,
}

/// Non-dominated plans collapsed by Sat-profile, in one streaming pass.
pub fn non_dominated_profiles(query: &PlanQuery) -> Result<NonDominatedProfiles> {
    let mut frontier: Vec<ProfileClass> = Vec::new();
    let mut examined = 0u64;
    for plan in query.plans() {
        examined += 1;
        let profile = query.domain.profile(&plan)?;
        if let Some(class) = frontier.iter_mut().find(|c| c.profile == profile) {
            class.plan_count += 1;
            continue;
        }
        let beaten =
            frontier.iter().any(|c| profile_relation(query.mode, &profile, &c.profile).0 == Relation::SecondPreferred);
        if beaten {
            continue;
        }
        frontier.retain(|c| profile_relation(query.mode, &profile, &c.profile).0 != Relation::FirstPreferred);
        frontier.push(ProfileClass { profile, representative: plan, plan_count: 1 });
    }
    Ok(NonDominatedProfiles { classes: frontier, plans_examined: examined })
}

/// Every plan within the horizon that no other plan strictly beats.
pub fn non_dominated_set(query: &PlanQuery) -> Result<Vec<Plan>> {
    let frontier = non_dominated_profiles(query)?;
    let keep: HashSet<SatProfile> = frontier.classes.into_iter().map(|c| c.profile).collect();
    let mut out = Vec::new();
    for plan in query.plans() {
        if keep.contains(&query.domain.profile(&plan)?) {
            out.push(plan);
        }
    }
    Ok(out)
}
