//! Value bases, lexicographic plan comparison and morality-degree mixing.

use std::fmt;
use std::ops::RangeInclusive;

use crate::domain::{generate_history, ActionTheory, History, Plan, State};
use crate::error::{Error, Result};
use crate::ltlf::{evaluate, Formula};

/// Priority-ordered levels of values; level 1 outranks level 2.
///
/// Each level is a set: repeated formulas inside a level are dropped while
/// declaration order is kept. The same formula may sit on several levels,
/// see [`ValueBase::duplicates`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValueBase {
    levels: Vec<Vec<Formula>>,
}

impl ValueBase {
    pub fn new(levels: Vec<Vec<Formula>>) -> Self {
        ValueBase { levels: levels.into_iter().map(dedup).collect() }
    }

    /// Number of levels, `dg`.
    pub fn degree(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<Formula>] {
        &self.levels
    }

    /// Level `k`, counted from 1.
    pub fn level(&self, k: usize) -> Option<&[Formula]> {
        k.checked_sub(1).and_then(|i| self.levels.get(i)).map(Vec::as_slice)
    }

    /// All values, first occurrence order, without repeats.
    pub fn union(&self) -> Vec<Formula> {
        dedup(self.levels.iter().flatten().cloned().collect())
    }

    /// Formulas present on more than one level. Quantitative comparison
    /// counts such formulas once per level.
    pub fn duplicates(&self) -> Vec<Formula> {
        let mut seen: Vec<&Formula> = Vec::new();
        let mut dups = Vec::new();
        for f in self.levels.iter().flatten() {
            if seen.contains(&f) {
                if !dups.contains(f) {
                    dups.push(f.clone());
                }
            } else {
                seen.push(f);
            }
        }
        dups
    }
}

pub(crate) fn dedup(formulas: Vec<Formula>) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::with_capacity(formulas.len());
    for f in formulas {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// Which value each level-position a plan satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SatProfile {
    levels: Vec<Vec<bool>>,
}

impl SatProfile {
    pub fn of_history(values: &ValueBase, history: &History) -> Self {
        let levels = values
            .levels()
            .iter()
            .map(|level| level.iter().map(|f| evaluate(f, history, 0).expect("position 0 always exists")).collect())
            .collect();
        SatProfile { levels }
    }

    pub fn levels(&self) -> &[Vec<bool>] {
        &self.levels
    }

    /// Number of satisfied values at level index `i` (0-based).
    pub fn count(&self, i: usize) -> usize {
        self.levels[i].iter().filter(|&&b| b).count()
    }

    /// Satisfied formulas of level index `i` (0-based).
    pub fn satisfied<'a>(&self, values: &'a ValueBase, i: usize) -> Vec<&'a Formula> {
        values.levels()[i].iter().zip(&self.levels[i]).filter_map(|(f, &b)| b.then_some(f)).collect()
    }
}

/// An action theory, an initial state and a value base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EthicalPlanningDomain {
    pub theory: ActionTheory,
    pub initial: State,
    pub values: ValueBase,
}

impl EthicalPlanningDomain {
    pub fn new(theory: ActionTheory, initial: State, values: ValueBase) -> Result<Self> {
        theory.check_state(&initial)?;
        Ok(EthicalPlanningDomain { theory, initial, values })
    }

    pub fn history(&self, plan: &Plan) -> Result<History> {
        generate_history(plan, &self.initial, &self.theory)
    }

    pub fn profile(&self, plan: &Plan) -> Result<SatProfile> {
        Ok(SatProfile::of_history(&self.values, &self.history(plan)?))
    }

    /// Sat-set of `plan` restricted to level `k` (1-based).
    pub fn sat_level(&self, plan: &Plan, k: usize) -> Result<Vec<Formula>> {
        let profile = self.profile(plan)?;
        Ok(profile.satisfied(&self.values, k - 1).into_iter().cloned().collect())
    }
}

/// An ethical planning domain extended with desires and a degree of morality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedMotiveDomain {
    theory: ActionTheory,
    initial: State,
    values: ValueBase,
    desires: Vec<Formula>,
    morality: usize,
    allowed_morality: Option<RangeInclusive<usize>>,
}

impl MixedMotiveDomain {
    pub fn new(
        theory: ActionTheory,
        initial: State,
        values: ValueBase,
        desires: Vec<Formula>,
        morality: usize,
        allowed_morality: Option<RangeInclusive<usize>>,
    ) -> Result<Self> {
        theory.check_state(&initial)?;
        let domain = MixedMotiveDomain { theory, initial, values, desires: dedup(desires), morality, allowed_morality };
        domain.check_morality(morality)?;
        Ok(domain)
    }

    /// The legal morality degrees: `1..=dg + 1` intersected with the allowed range.
    pub fn morality_bounds(&self) -> RangeInclusive<usize> {
        let max = self.values.degree() + 1;
        match &self.allowed_morality {
            Some(r) => (*r.start()).max(1)..=(*r.end()).min(max),
            None => 1..=max,
        }
    }

    fn check_morality(&self, morality: usize) -> Result<()> {
        let bounds = self.morality_bounds();
        if bounds.contains(&morality) {
            Ok(())
        } else {
            Err(Error::MoralityOutOfRange { morality, min: *bounds.start(), max: *bounds.end() })
        }
    }

    /// Same domain with a different degree of morality.
    pub fn with_morality(&self, morality: usize) -> Result<Self> {
        self.check_morality(morality)?;
        Ok(MixedMotiveDomain { morality, ..self.clone() })
    }

    pub fn morality(&self) -> usize {
        self.morality
    }

    pub fn allowed_morality(&self) -> Option<&RangeInclusive<usize>> {
        self.allowed_morality.as_ref()
    }

    pub fn desires(&self) -> &[Formula] {
        &self.desires
    }

    pub fn values(&self) -> &ValueBase {
        &self.values
    }

    pub fn theory(&self) -> &ActionTheory {
        &self.theory
    }

    pub fn initial(&self) -> &State {
        &self.initial
    }
}

/// The induced ethical planning domain: desires become level `μ`, levels
/// from `μ` on move down by one.
pub fn induce(mixed: &MixedMotiveDomain) -> Result<EthicalPlanningDomain> {
    mixed.check_morality(mixed.morality)?;
    let mut levels = mixed.values.levels().to_vec();
    levels.insert(mixed.morality - 1, mixed.desires.clone());
    Ok(EthicalPlanningDomain {
        theory: mixed.theory.clone(),
        initial: mixed.initial.clone(),
        values: ValueBase { levels },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparisonMode {
    /// Lexicographic set inclusion.
    Qualitative,
    /// Lexicographic cardinality.
    Quantitative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    FirstPreferred,
    SecondPreferred,
    Equivalent,
    Incomparable,
}

impl Relation {
    pub fn flip(self) -> Self {
        match self {
            Relation::FirstPreferred => Relation::SecondPreferred,
            Relation::SecondPreferred => Relation::FirstPreferred,
            other => other,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::FirstPreferred => "plan1 preferred",
            Relation::SecondPreferred => "plan2 preferred",
            Relation::Equivalent => "equivalent",
            Relation::Incomparable => "incomparable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonResult {
    pub relation: Relation,
    /// 1-based index of the first level that separates the plans.
    pub deciding_level: Option<usize>,
    /// Sat-sets of both plans restricted to the deciding level.
    pub witness: Option<(Vec<Formula>, Vec<Formula>)>,
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

/// Relation of two profiles together with the 0-based deciding level.
pub fn profile_relation(mode: ComparisonMode, first: &SatProfile, second: &SatProfile) -> (Relation, Option<usize>) {
    for (i, (a, b)) in first.levels.iter().zip(&second.levels).enumerate() {
        match mode {
            ComparisonMode::Qualitative => {
                if a == b {
                    continue;
                }
                let rel = if subset(b, a) {
                    Relation::FirstPreferred
                } else if subset(a, b) {
                    Relation::SecondPreferred
                } else {
                    Relation::Incomparable
                };
                return (rel, Some(i));
            }
            ComparisonMode::Quantitative => {
                let (ca, cb) = (first.count(i), second.count(i));
                if ca != cb {
                    let rel = if ca > cb { Relation::FirstPreferred } else { Relation::SecondPreferred };
                    return (rel, Some(i));
                }
            }
        }
    }
    (Relation::Equivalent, None)
}

fn result_from_profiles(
    values: &ValueBase,
    mode: ComparisonMode,
    first: &SatProfile,
    second: &SatProfile,
) -> ComparisonResult {
    let (relation, level) = profile_relation(mode, first, second);
    let witness = level.map(|i| {
        (
            first.satisfied(values, i).into_iter().cloned().collect(),
            second.satisfied(values, i).into_iter().cloned().collect(),
        )
    });
    ComparisonResult { relation, deciding_level: level.map(|i| i + 1), witness }
}

pub fn compare(
    domain: &EthicalPlanningDomain,
    first: &Plan,
    second: &Plan,
    mode: ComparisonMode,
) -> Result<ComparisonResult> {
    let p1 = domain.profile(first)?;
    let p2 = domain.profile(second)?;
    Ok(result_from_profiles(&domain.values, mode, &p1, &p2))
}

pub fn qual_compare(domain: &EthicalPlanningDomain, first: &Plan, second: &Plan) -> Result<ComparisonResult> {
    compare(domain, first, second, ComparisonMode::Qualitative)
}

pub fn quant_compare(domain: &EthicalPlanningDomain, first: &Plan, second: &Plan) -> Result<ComparisonResult> {
    compare(domain, first, second, ComparisonMode::Quantitative)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRow {
    pub level: usize,
    pub first: Vec<Formula>,
    pub second: Vec<Formula>,
}

/// Why one plan beats another (or why neither does).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub mode: ComparisonMode,
    pub result: ComparisonResult,
    pub rows: Vec<LevelRow>,
}

impl Explanation {
    /// Values at the deciding level that only the winning plan satisfies.
    pub fn deciding_values(&self) -> Vec<&Formula> {
        let Some((first, second)) = &self.result.witness else {
            return Vec::new();
        };
        let (win, lose) = match self.result.relation {
            Relation::FirstPreferred => (first, second),
            Relation::SecondPreferred => (second, first),
            _ => return Vec::new(),
        };
        win.iter().filter(|f| !lose.contains(f)).collect()
    }

    /// One-line verdict, e.g. `plan1 preferred (level 2: G !annoyed)`.
    pub fn headline(&self) -> String {
        match (self.result.relation, self.result.deciding_level) {
            (Relation::Equivalent, _) => format!("plans are equivalent at all {} levels", self.rows.len()),
            (Relation::Incomparable, Some(k)) => format!("plans are incomparable (level {k})"),
            (rel, Some(k)) => {
                let decisive: Vec<String> = self.deciding_values().iter().map(|f| f.to_string()).collect();
                if decisive.is_empty() {
                    format!("{rel} (level {k})")
                } else {
                    format!("{rel} (level {k}: {})", decisive.join("; "))
                }
            }
            (rel, None) => rel.to_string(),
        }
    }
}

fn set_text(formulas: &[Formula]) -> String {
    let items: Vec<String> = formulas.iter().map(|f| f.to_string()).collect();
    format!("{{{}}}", items.join("; "))
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.headline())?;
        match (self.result.relation, self.result.deciding_level) {
            (Relation::FirstPreferred | Relation::SecondPreferred, Some(k)) => {
                if k > 1 {
                    writeln!(f, "  levels 1..{} satisfied identically", k - 1)?;
                }
                let row = &self.rows[k - 1];
                writeln!(f, "  level {k}: plan1 satisfies {} ({})", set_text(&row.first), row.first.len())?;
                writeln!(f, "  level {k}: plan2 satisfies {} ({})", set_text(&row.second), row.second.len())?;
            }
            _ => {
                for row in &self.rows {
                    writeln!(
                        f,
                        "  level {}: plan1 {} | plan2 {}",
                        row.level,
                        set_text(&row.first),
                        set_text(&row.second)
                    )?;
                }
            }
        }
        Ok(())
    }
}

pub fn explain(
    domain: &EthicalPlanningDomain,
    first: &Plan,
    second: &Plan,
    mode: ComparisonMode,
) -> Result<Explanation> {
    let p1 = domain.profile(first)?;
    let p2 = domain.profile(second)?;
    let result = result_from_profiles(&domain.values, mode, &p1, &p2);
    let rows = (0..domain.values.degree())
        .map(|i| LevelRow {
            level: i + 1,
            first: p1.satisfied(&domain.values, i).into_iter().cloned().collect(),
            second: p2.satisfied(&domain.values, i).into_iter().cloned().collect(),
        })
        .collect();
    Ok(Explanation { mode, result, rows })
}
