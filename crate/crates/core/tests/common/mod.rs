//! Helpers shared by the integration test targets: an independent LTLf
//! oracle, exhaustive formula and trace enumerators, and random domains.

#![allow(dead_code)]

use ethical_planning::cli::{parse_domain_file, DomainFile};
use ethical_planning::ltlf::Trace;
use ethical_planning::{parse_formula, ActionName, ActionTheory, Formula, Proposition, State};
use rand::seq::SliceRandom;
use rand::Rng;

pub const HOSPITAL: &str = include_str!("../../fixtures/hospital.epd");
pub const HOSPITAL_SURGERY: &str = include_str!("../../fixtures/hospital_surgery.epd");

pub fn f(text: &str) -> Formula {
    parse_formula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn fs(texts: &[&str]) -> Vec<Formula> {
    texts.iter().map(|t| f(t)).collect()
}

pub fn hospital() -> DomainFile {
    parse_domain_file(HOSPITAL).unwrap()
}

pub fn hospital_surgery() -> DomainFile {
    parse_domain_file(HOSPITAL_SURGERY).unwrap()
}

pub fn state(names: &[&str]) -> State {
    names.iter().map(|&n| Proposition::new(n)).collect()
}

pub fn sorted(mut v: Vec<Formula>) -> Vec<Formula> {
    v.sort();
    v
}

/// A trace given as explicit valuations, one row per position.
#[derive(Debug, Clone)]
pub struct Rows {
    pub names: Vec<&'static str>,
    pub rows: Vec<Vec<bool>>,
}

impl Trace for Rows {
    fn last(&self) -> usize {
        self.rows.len() - 1
    }

    fn holds(&self, p: &Proposition, t: usize) -> bool {
        match self.names.iter().position(|&n| n == p.name()) {
            Some(i) => self.rows[t][i],
            None => false,
        }
    }
}

/// Every trace over `names` with `1..=max_states` positions.
pub fn all_traces(names: &[&'static str], max_states: usize) -> Vec<Rows> {
    let width = names.len();
    let mut out = Vec::new();
    for len in 1..=max_states {
        let bits = width * len;
        for code in 0u64..(1u64 << bits) {
            let rows = (0..len).map(|t| (0..width).map(|i| code >> (t * width + i) & 1 == 1).collect()).collect();
            out.push(Rows { names: names.to_vec(), rows });
        }
    }
    out
}

/// Direct reading of the satisfaction clauses, with no sharing between
/// positions. Exponential in nesting depth, which is fine for small inputs.
pub fn naive<T: Trace>(phi: &Formula, trace: &T, t: usize) -> bool {
    let k = trace.last();
    match phi {
        Formula::Atom(p) => trace.holds(p, t),
        Formula::True => true,
        Formula::False => false,
        Formula::Not(a) => !naive(a, trace, t),
        Formula::And(a, b) => naive(a, trace, t) && naive(b, trace, t),
        Formula::Or(a, b) => naive(a, trace, t) || naive(b, trace, t),
        Formula::Implies(a, b) => !naive(a, trace, t) || naive(b, trace, t),
        Formula::Next(a) => t < k && naive(a, trace, t + 1),
        Formula::Until(a, b) => (t..=k).any(|w| naive(b, trace, w) && (t..w).all(|u| naive(a, trace, u))),
        Formula::Eventually(a) => (t..=k).any(|w| naive(a, trace, w)),
        Formula::Henceforth(a) => (t..=k).all(|w| naive(a, trace, w)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grammar {
    /// Atoms, `!`, `&`, `X`, `U`.
    Core,
    /// Every constructor, including the constants and abbreviations.
    Full,
}

/// `table[n]` lists every formula of exactly `n` nodes, for `n <= max`.
pub fn formulas_by_size(atoms: &[&str], max: usize, grammar: Grammar) -> Vec<Vec<Formula>> {
    let mut table: Vec<Vec<Formula>> = vec![Vec::new(); max + 1];
    if max == 0 {
        return table;
    }
    table[1] = atoms.iter().map(|a| Formula::atom(a)).collect();
    if grammar == Grammar::Full {
        table[1].push(Formula::True);
        table[1].push(Formula::False);
    }
    for n in 2..=max {
        let mut level = Vec::new();
        for sub in &table[n - 1] {
            level.push(Formula::not(sub.clone()));
            level.push(Formula::next(sub.clone()));
            if grammar == Grammar::Full {
                level.push(Formula::eventually(sub.clone()));
                level.push(Formula::henceforth(sub.clone()));
            }
        }
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for l in &table[left] {
                for r in &table[right] {
                    level.push(Formula::and(l.clone(), r.clone()));
                    level.push(Formula::until(l.clone(), r.clone()));
                    if grammar == Grammar::Full {
                        level.push(Formula::or(l.clone(), r.clone()));
                        level.push(Formula::implies(l.clone(), r.clone()));
                    }
                }
            }
        }
        table[n] = level;
    }
    table
}

/// A random formula with roughly `budget` nodes.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], budget: usize, temporal: bool) -> Formula {
    if budget <= 1 {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(atoms.choose(rng).unwrap()),
        };
    }
    let unary = if temporal { 4 } else { 1 };
    let binary = if temporal { 4 } else { 3 };
    let pick = rng.gen_range(0..unary + binary);
    if pick < unary {
        let sub = random_formula(rng, atoms, budget - 1, temporal);
        return match pick {
            0 => Formula::not(sub),
            1 => Formula::next(sub),
            2 => Formula::eventually(sub),
            _ => Formula::henceforth(sub),
        };
    }
    let split = rng.gen_range(1..budget.max(2));
    let l = random_formula(rng, atoms, split, temporal);
    let r = random_formula(rng, atoms, budget - split, temporal);
    match pick - unary {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        2 => Formula::implies(l, r),
        _ => Formula::until(l, r),
    }
}

pub const PROP_NAMES: [&str; 5] = ["p", "q", "r", "s", "u"];
pub const ACTION_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// A random theory over the first `props` propositions and `actions`
/// actions (plus `noop`). Roughly half the effect slots stay `⊥`.
pub fn random_theory<R: Rng>(rng: &mut R, props: usize, actions: usize) -> ActionTheory {
    let ps = &PROP_NAMES[..props];
    let mut theory = ActionTheory::new(
        ps.iter().copied().map(Proposition::new),
        ACTION_NAMES[..actions].iter().copied().map(ActionName::new),
    )
    .unwrap();
    for a in &ACTION_NAMES[..actions] {
        for p in ps {
            let (a, p) = (ActionName::new(a), Proposition::new(p));
            if rng.gen_bool(0.5) {
                let budget = rng.gen_range(1..=3);
                theory.set_positive(&a, &p, random_formula(rng, ps, budget, false)).unwrap();
            }
            if rng.gen_bool(0.5) {
                let budget = rng.gen_range(1..=3);
                theory.set_negative(&a, &p, random_formula(rng, ps, budget, false)).unwrap();
            }
        }
    }
    theory
}

pub fn random_state<R: Rng>(rng: &mut R, props: usize) -> State {
    PROP_NAMES[..props].iter().filter(|_| rng.gen_bool(0.5)).map(|&n| Proposition::new(n)).collect()
}

pub fn random_values<R: Rng>(rng: &mut R, props: usize, count: usize, budget: usize) -> Vec<Formula> {
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=budget);
            random_formula(rng, &PROP_NAMES[..props], size, true)
        })
        .collect()
}

/// Split `values` into a random number of nonempty levels, order kept.
pub fn random_levels<R: Rng>(rng: &mut R, values: &[Formula]) -> Vec<Vec<Formula>> {
    let mut levels: Vec<Vec<Formula>> = vec![Vec::new()];
    for v in values {
        if !levels.last().unwrap().is_empty() && rng.gen_bool(0.5) {
            levels.push(Vec::new());
        }
        levels.last_mut().unwrap().push(v.clone());
    }
    levels
}

/// What an action does to one of the two propositions `p`, `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Behaviour {
    Inert,
    Set,
    Clear,
    Flip,
    /// Copy the other proposition's value.
    Copy,
}

pub const BEHAVIOURS: [Behaviour; 5] =
    [Behaviour::Inert, Behaviour::Set, Behaviour::Clear, Behaviour::Flip, Behaviour::Copy];

/// Effects of one action on `(p, q)`.
pub type ActionShape = (Behaviour, Behaviour);

pub fn all_shapes() -> Vec<ActionShape> {
    BEHAVIOURS.iter().flat_map(|&x| BEHAVIOURS.iter().map(move |&y| (x, y))).collect()
}

fn install(theory: &mut ActionTheory, action: &str, prop: &str, other: &str, b: Behaviour) {
    let a = ActionName::new(action);
    let p = Proposition::new(prop);
    let (pos, neg) = match b {
        Behaviour::Inert => return,
        Behaviour::Set => (Formula::True, Formula::False),
        Behaviour::Clear => (Formula::False, Formula::True),
        Behaviour::Flip => (Formula::not(Formula::atom(prop)), Formula::atom(prop)),
        Behaviour::Copy => (Formula::atom(other), Formula::not(Formula::atom(other))),
    };
    theory.set_positive(&a, &p, pos).unwrap();
    theory.set_negative(&a, &p, neg).unwrap();
}

/// Two-proposition, two-action theory with the given shapes for `a` and `b`.
pub fn shaped_theory(a: ActionShape, b: ActionShape) -> ActionTheory {
    let mut theory = ActionTheory::new(["p", "q"].map(Proposition::new), ["a", "b"].map(ActionName::new)).unwrap();
    for (name, shape) in [("a", a), ("b", b)] {
        install(&mut theory, name, "p", "q", shape.0);
        install(&mut theory, name, "q", "p", shape.1);
    }
    theory
}

/// The four start states over `{p, q}`.
pub fn pq_states() -> Vec<State> {
    vec![state(&[]), state(&["p"]), state(&["q"]), state(&["p", "q"])]
}

/// Every subset of `pool` with at most `max` elements, pool order kept.
pub fn small_subsets<T: Clone>(pool: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << pool.len()) {
        if bits.count_ones() as usize <= max {
            out.push(pool.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, x)| x.clone()).collect());
        }
    }
    out
}

/// Literal reading of the minimality definitions over explicit subsets,
/// built only from `sat_set` and plain plan enumeration.
pub mod subsets {
    use ethical_planning::search::{enumerate_plans, LengthMode};
    use ethical_planning::{sat_set, ActionTheory, Formula, Horizon, State};

    pub type Mask = u32;

    pub struct Oracle {
        pub values: Vec<Formula>,
        /// `satisfiable[m]`: some plan within the horizon satisfies subset `m`.
        pub satisfiable: Vec<bool>,
    }

    impl Oracle {
        pub fn new(values: &[Formula], theory: &ActionTheory, s0: &State, horizon: Horizon) -> Self {
            let n = values.len();
            assert!(n <= 16);
            let mut realised = vec![false; 1 << n];
            for plan in enumerate_plans(theory.actions(), horizon, LengthMode::UpTo) {
                let sat = sat_set(values, &plan, s0, theory).unwrap();
                realised[Self::mask_in(values, &sat) as usize] = true;
            }
            let satisfiable =
                (0..1u32 << n).map(|m| (0..1u32 << n).any(|r| realised[r as usize] && m & r == m)).collect();
            Oracle { values: values.to_vec(), satisfiable }
        }

        pub fn mask_in(values: &[Formula], subset: &[Formula]) -> Mask {
            values.iter().enumerate().filter(|(_, f)| subset.contains(f)).fold(0, |m, (i, _)| m | 1 << i)
        }

        pub fn mask(&self, subset: &[Formula]) -> Mask {
            Self::mask_in(&self.values, subset)
        }

        pub fn subset(&self, m: Mask) -> Vec<Formula> {
            self.values.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, f)| f.clone()).collect()
        }

        fn all(&self) -> impl Iterator<Item = Mask> + '_ {
            (0..self.satisfiable.len() as Mask).filter(|&m| self.satisfiable[m as usize])
        }

        pub fn qual_minimal(&self, m: Mask) -> bool {
            self.satisfiable[m as usize] && !self.all().any(|o| o != m && o & m == m)
        }

        pub fn quant_minimal(&self, m: Mask) -> bool {
            self.satisfiable[m as usize] && !self.all().any(|o| o.count_ones() > m.count_ones())
        }

        /// `levels` are masks over `values`, most important first.
        pub fn lex_minimal(&self, levels: &[Mask], m: Mask) -> bool {
            let beats = |o: Mask| {
                for &l in levels {
                    let (a, b) = (o & l, m & l);
                    if a != b {
                        return a & b == b;
                    }
                }
                false
            };
            self.satisfiable[m as usize] && !self.all().any(beats)
        }
    }
}
