//! Moral conflicts, contractions and their minimality.
//!
//! "For some plan length" is bounded by a [`Horizon`]: a problem is a
//! conflict here when no plan of length at most `K` satisfies every value.
//! A `false` answer is exact; a `true` answer only covers plans up to `K`.

use crate::domain::{generate_history, ActionTheory, Plan, State};
use crate::error::{Error, Result};
use crate::evaluation::{dedup, ValueBase};
use crate::ltlf::{evaluate, Formula};
use crate::search::{enumerate_plans, LengthMode, PlanEnumerator};

/// Maximum plan length considered by bounded queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Horizon(pub usize);

/// Largest universe [`is_physical_conflict`] will enumerate states over.
pub const MAX_PHYSICAL_UNIVERSE: usize = 12;

/// Largest value set enumerated subset-by-subset.
pub const MAX_SUBSET_VALUES: usize = 24;

/// A value set together with an action theory and an initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoralProblem {
    values: Vec<Formula>,
    theory: ActionTheory,
    initial: State,
}

impl MoralProblem {
    pub fn new(values: Vec<Formula>, theory: ActionTheory, initial: State) -> Result<Self> {
        theory.check_state(&initial)?;
        Ok(MoralProblem { values: dedup(values), theory, initial })
    }

    pub fn values(&self) -> &[Formula] {
        &self.values
    }

    pub fn theory(&self) -> &ActionTheory {
        &self.theory
    }

    pub fn initial(&self) -> &State {
        &self.initial
    }

    /// The same context with another value set.
    pub fn with_values(&self, values: Vec<Formula>) -> MoralProblem {
        MoralProblem { values: dedup(values), theory: self.theory.clone(), initial: self.initial.clone() }
    }

    fn plans(&self, horizon: Horizon) -> PlanEnumerator {
        enumerate_plans(self.theory.actions(), horizon, LengthMode::UpTo)
    }

    /// Which of the problem's values `plan` satisfies, by position.
    fn sat_mask(&self, plan: &Plan) -> Vec<bool> {
        let history = generate_history(plan, &self.initial, &self.theory).expect("initial state validated");
        self.values.iter().map(|f| evaluate(f, &history, 0).expect("position 0 always exists")).collect()
    }

    fn contains_all(&self, other: &[Formula]) -> bool {
        other.iter().all(|f| self.values.contains(f))
    }

    fn mask_of(&self, subset: &[Formula]) -> Vec<bool> {
        self.values.iter().map(|f| subset.contains(f)).collect()
    }

    fn from_mask(&self, mask: &[bool]) -> MoralProblem {
        let values = self.values.iter().zip(mask).filter_map(|(f, &b)| b.then(|| f.clone())).collect();
        self.with_values(values)
    }
}

fn same_context(a: &MoralProblem, b: &MoralProblem) -> Result<()> {
    if a.theory == b.theory && a.initial == b.initial {
        Ok(())
    } else {
        Err(Error::MismatchedContext)
    }
}

fn is_subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn count(mask: &[bool]) -> usize {
    mask.iter().filter(|&&b| b).count()
}

/// Distinct value masks realised by plans within the horizon, in
/// enumeration order of their first realisation.
struct Realizable {
    masks: Vec<Vec<bool>>,
}

impl Realizable {
    fn compute(problem: &MoralProblem, horizon: Horizon) -> Self {
        let mut masks: Vec<Vec<bool>> = Vec::new();
        let full = problem.values.len();
        for plan in problem.plans(horizon) {
            let mask = problem.sat_mask(&plan);
            if !masks.contains(&mask) {
                let complete = count(&mask) == full;
                masks.push(mask);
                // every subset is realised by this plan, nothing else can matter
                if complete {
                    break;
                }
            }
        }
        Realizable { masks }
    }

    fn satisfiable(&self, subset: &[bool]) -> bool {
        self.masks.iter().any(|m| is_subset(subset, m))
    }

    fn max_count(&self) -> usize {
        self.masks.iter().map(|m| count(m)).max().unwrap_or(0)
    }
}

/// A plan within the horizon satisfying every value, if one exists.
pub fn satisfying_plan(problem: &MoralProblem, horizon: Horizon) -> Option<Plan> {
    problem.plans(horizon).find(|plan| problem.sat_mask(plan).iter().all(|&b| b))
}

/// True iff no plan of length at most `K` satisfies all values.
pub fn is_conflict(problem: &MoralProblem, horizon: Horizon) -> bool {
    satisfying_plan(problem, horizon).is_none()
}

/// `M′` keeps a subset of `M`'s values and is not a conflict.
pub fn is_contraction(problem: &MoralProblem, candidate: &MoralProblem, horizon: Horizon) -> Result<bool> {
    same_context(problem, candidate)?;
    Ok(problem.contains_all(&candidate.values) && !is_conflict(candidate, horizon))
}

/// The contraction generated by `plan`: the values it satisfies.
pub fn contraction_of_plan(problem: &MoralProblem, plan: &Plan) -> Result<MoralProblem> {
    let history = generate_history(plan, &problem.initial, &problem.theory)?;
    let kept = problem
        .values
        .iter()
        .filter(|f| evaluate(f, &history, 0).expect("position 0 always exists"))
        .cloned()
        .collect();
    Ok(problem.with_values(kept))
}

/// Qual-minimality by one-element extensions: `M′` must be a contraction
/// and adding any single dropped value must create a conflict.
pub fn is_qual_minimal(problem: &MoralProblem, candidate: &MoralProblem, horizon: Horizon) -> Result<bool> {
    same_context(problem, candidate)?;
    if !problem.contains_all(&candidate.values) || is_conflict(candidate, horizon) {
        return Ok(false);
    }
    for dropped in problem.values.iter().filter(|f| !candidate.values.contains(f)) {
        let mut extended = candidate.values.clone();
        extended.push(dropped.clone());
        if !is_conflict(&candidate.with_values(extended), horizon) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Qual-minimality checked against every strict superset inside `Ω`.
pub fn is_qual_minimal_exhaustive(problem: &MoralProblem, candidate: &MoralProblem, horizon: Horizon) -> Result<bool> {
    same_context(problem, candidate)?;
    if !problem.contains_all(&candidate.values) {
        return Ok(false);
    }
    let base = problem.mask_of(&candidate.values);
    let free: Vec<usize> = (0..base.len()).filter(|&i| !base[i]).collect();
    if free.len() > MAX_SUBSET_VALUES {
        return Err(Error::Invalid(format!("{} dropped values are too many to enumerate", free.len())));
    }
    let realizable = Realizable::compute(problem, horizon);
    if !realizable.satisfiable(&base) {
        return Ok(false);
    }
    for bits in 1u64..(1u64 << free.len()) {
        let mut superset = base.clone();
        for (j, &i) in free.iter().enumerate() {
            if bits >> j & 1 == 1 {
                superset[i] = true;
            }
        }
        if realizable.satisfiable(&superset) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No satisfiable subset of `Ω` is larger than `Ω′`.
pub fn is_quant_minimal(problem: &MoralProblem, candidate: &MoralProblem, horizon: Horizon) -> Result<bool> {
    same_context(problem, candidate)?;
    if !problem.contains_all(&candidate.values) {
        return Ok(false);
    }
    let realizable = Realizable::compute(problem, horizon);
    if !realizable.satisfiable(&problem.mask_of(&candidate.values)) {
        return Ok(false);
    }
    let n = problem.values.len();
    let own = candidate.values.len();
    // sizes above the largest realised Sat-set cannot be satisfiable
    let ceiling = realizable.max_count();
    for size in (own + 1..=n.min(ceiling)).rev() {
        if combinations(n, size).any(|mask| realizable.satisfiable(&mask)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All `n`-long masks with exactly `size` bits set, lexicographically.
fn combinations(n: usize, size: usize) -> impl Iterator<Item = Vec<bool>> {
    let mut idx: Option<Vec<usize>> = if size <= n { Some((0..size).collect()) } else { None };
    std::iter::from_fn(move || {
        let current = idx.as_ref()?.clone();
        let mut mask = vec![false; n];
        current.iter().for_each(|&i| mask[i] = true);
        // next combination
        let next = idx.as_mut().expect("checked");
        let mut i = size;
        loop {
            if i == 0 {
                idx = None;
                break;
            }
            i -= 1;
            if next[i] < n - size + i {
                next[i] += 1;
                for j in i + 1..size {
                    next[j] = next[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    })
}

fn level_masks(problem: &MoralProblem, base: &ValueBase) -> Result<Vec<Vec<bool>>> {
    let union = base.union();
    if union.len() != problem.values.len() || !problem.contains_all(&union) {
        return Err(Error::BaseMismatch);
    }
    Ok(base.levels().iter().map(|level| problem.mask_of(level)).collect())
}

/// Whether `other` improves on `own` at some level with agreement above it.
fn lex_beats(levels: &[Vec<bool>], other: &[bool], own: &[bool]) -> bool {
    for level in levels {
        let restrict = |m: &[bool]| -> Vec<bool> { m.iter().zip(level).map(|(&a, &b)| a && b).collect() };
        let (o, s) = (restrict(other), restrict(own));
        if o != s {
            return is_subset(&s, &o);
        }
    }
    false
}

/// Lexicographic minimality with respect to `base`, whose union must be `Ω`.
pub fn is_lex_minimal(
    problem: &MoralProblem,
    base: &ValueBase,
    candidate: &MoralProblem,
    horizon: Horizon,
) -> Result<bool> {
    same_context(problem, candidate)?;
    let levels = level_masks(problem, base)?;
    if !problem.contains_all(&candidate.values) {
        return Ok(false);
    }
    let own = problem.mask_of(&candidate.values);
    let realizable = Realizable::compute(problem, horizon);
    if !realizable.satisfiable(&own) {
        return Ok(false);
    }
    // any satisfiable improvement extends to a realised Sat-set that also improves
    Ok(!realizable.masks.iter().any(|m| lex_beats(&levels, m, &own)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalityCriterion {
    Qual,
    Quant,
    Lex(ValueBase),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionStrategy {
    /// Pick whichever frontier is smaller: plans or subsets.
    Auto,
    /// Filter the Sat-sets realised by plans within the horizon.
    PlansFirst,
    /// Test every subset of `Ω` with the minimality checkers.
    SubsetsFirst,
}

/// Every minimal contraction of `problem` under `criterion`.
pub fn enumerate_minimal_contractions(
    problem: &MoralProblem,
    horizon: Horizon,
    criterion: &MinimalityCriterion,
    strategy: ContractionStrategy,
) -> Result<Vec<MoralProblem>> {
    let levels = match criterion {
        MinimalityCriterion::Lex(base) => Some(level_masks(problem, base)?),
        _ => None,
    };
    let n = problem.values.len();
    let strategy = match strategy {
        ContractionStrategy::Auto => {
            let plans = PlanEnumerator::count(problem.theory.actions().len(), horizon, LengthMode::UpTo);
            if n >= 127 || plans < (1u128 << n) {
                ContractionStrategy::PlansFirst
            } else {
                ContractionStrategy::SubsetsFirst
            }
        }
        s => s,
    };
    match strategy {
        ContractionStrategy::SubsetsFirst => {
            if n > MAX_SUBSET_VALUES {
                return Err(Error::Invalid(format!("{n} values are too many to enumerate subsets")));
            }
            let mut out = Vec::new();
            for bits in 0u64..(1u64 << n) {
                let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                let candidate = problem.from_mask(&mask);
                let keep = match criterion {
                    MinimalityCriterion::Qual => is_qual_minimal(problem, &candidate, horizon)?,
                    MinimalityCriterion::Quant => is_quant_minimal(problem, &candidate, horizon)?,
                    MinimalityCriterion::Lex(base) => is_lex_minimal(problem, base, &candidate, horizon)?,
                };
                if keep {
                    out.push(candidate);
                }
            }
            Ok(out)
        }
        _ => {
            let realizable = Realizable::compute(problem, horizon);
            let masks = &realizable.masks;
            let best = realizable.max_count();
            let keep = |m: &Vec<bool>| match (criterion, &levels) {
                (MinimalityCriterion::Qual, _) => !masks.iter().any(|o| o != m && is_subset(m, o)),
                (MinimalityCriterion::Quant, _) => count(m) == best,
                (MinimalityCriterion::Lex(_), Some(levels)) => !masks.iter().any(|o| lex_beats(levels, o, m)),
                (MinimalityCriterion::Lex(_), None) => unreachable!("levels computed for lex"),
            };
            Ok(masks.iter().filter(|m| keep(m)).map(|m| problem.from_mask(m)).collect())
        }
    }
}

/// A start state over the declared universe and a plan satisfying all of
/// `values`, if any exists within the horizon.
pub fn physical_witness(values: &[Formula], theory: &ActionTheory, horizon: Horizon) -> Result<Option<(State, Plan)>> {
    let universe = theory.propositions();
    if universe.len() > MAX_PHYSICAL_UNIVERSE {
        return Err(Error::UniverseTooLarge { size: universe.len(), limit: MAX_PHYSICAL_UNIVERSE });
    }
    for bits in 0u32..(1u32 << universe.len()) {
        let state: State =
            universe.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
        let problem = MoralProblem::new(values.to_vec(), theory.clone(), state.clone())?;
        if let Some(plan) = satisfying_plan(&problem, horizon) {
            return Ok(Some((state, plan)));
        }
    }
    Ok(None)
}

/// `(Ω, γ)` is a conflict from every start state over the declared universe.
pub fn is_physical_conflict(values: &[Formula], theory: &ActionTheory, horizon: Horizon) -> Result<bool> {
    Ok(physical_witness(values, theory, horizon)?.is_none())
}

/// The conflict criterion for `Ω` over an explicit finite family of theories.
pub fn is_conflict_for_all_theories(values: &[Formula], theories: &[ActionTheory], horizon: Horizon) -> Result<bool> {
    for theory in theories {
        if !is_physical_conflict(values, theory, horizon)? {
            return Ok(false);
        }
    }
    Ok(true)
}
