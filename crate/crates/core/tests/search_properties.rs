mod common;

use std::collections::HashSet;

use common::*;
use ethical_planning::conflict::{contraction_of_plan, is_lex_minimal};
use ethical_planning::evaluation::{compare, induce, ComparisonMode, Relation, ValueBase};
use ethical_planning::search::{
    enumerate_plans, is_dominated, non_dominated_profiles, non_dominated_set, LengthMode, PlanEnumerator, PlanQuery,
};
use ethical_planning::{sat_set, ActionName, EthicalPlanningDomain, Horizon, MoralProblem, Plan};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const MODES: [ComparisonMode; 2] = [ComparisonMode::Qualitative, ComparisonMode::Quantitative];

fn random_query(rng: &mut StdRng) -> PlanQuery {
    let props = rng.gen_range(2..=3);
    let actions = rng.gen_range(1..=2);
    let theory = random_theory(rng, props, actions);
    let s0 = random_state(rng, props);
    let count = rng.gen_range(0..=5);
    let values = random_values(rng, props, count, 5);
    let levels = random_levels(rng, &values);
    let domain = EthicalPlanningDomain::new(theory, s0, ValueBase::new(levels)).unwrap();
    let mode = MODES[rng.gen_range(0..2)];
    let lengths = if rng.gen_bool(0.5) { LengthMode::Exact } else { LengthMode::UpTo };
    PlanQuery::new(domain, Horizon(rng.gen_range(0..=3)), mode, lengths)
}

/// Plans no other plan strictly beats, by direct pairwise comparison.
fn brute_non_dominated(q: &PlanQuery) -> Vec<Plan> {
    let plans: Vec<Plan> = q.plans().collect();
    plans
        .iter()
        .filter(|a| {
            !plans.iter().any(|b| compare(&q.domain, a, b, q.mode).unwrap().relation == Relation::SecondPreferred)
        })
        .cloned()
        .collect()
}

#[test]
fn enumeration_is_complete_ordered_and_counted() {
    let hospital = hospital().theory().unwrap();
    let plans: Vec<Plan> = enumerate_plans(hospital.actions(), Horizon(2), LengthMode::Exact).collect();
    assert_eq!(plans.len(), 16);
    for n in 1..=3 {
        let acts: Vec<ActionName> = ACTION_NAMES[..n].iter().map(|a| ActionName::new(a)).collect();
        for k in 0..=4 {
            for lengths in [LengthMode::Exact, LengthMode::UpTo] {
                let plans: Vec<Plan> = enumerate_plans(&acts, Horizon(k), lengths).collect();
                assert_eq!(plans.len() as u128, PlanEnumerator::count(n, Horizon(k), lengths));
                assert_eq!(plans.iter().collect::<HashSet<_>>().len(), plans.len());
                let key = |p: &Plan| {
                    let idx: Vec<usize> =
                        p.actions().iter().map(|a| acts.iter().position(|b| b == a).unwrap()).collect();
                    (p.len(), idx)
                };
                assert!(plans.windows(2).all(|w| key(&w[0]) < key(&w[1])));
            }
        }
    }
}

#[test]
fn dominance_witnesses_and_frontier_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(53);
    for _ in 0..250 {
        let q = random_query(&mut rng);
        let expected = brute_non_dominated(&q);
        assert!(!expected.is_empty(), "a preorder on a finite nonempty set has maximal elements");
        for plan in q.plans() {
            match is_dominated(&q, &plan).unwrap() {
                Some(w) => {
                    assert_eq!(compare(&q.domain, &plan, &w, q.mode).unwrap().relation, Relation::SecondPreferred);
                    assert!(!expected.contains(&plan));
                }
                None => assert!(expected.contains(&plan)),
            }
        }
        assert_eq!(non_dominated_set(&q).unwrap(), expected);
        let collapsed = non_dominated_profiles(&q).unwrap();
        assert_eq!(
            collapsed.plans_examined as u128,
            PlanEnumerator::count(q.domain.theory.actions().len(), q.horizon, q.lengths)
        );
        let profiles: HashSet<_> = expected.iter().map(|p| q.domain.profile(p).unwrap()).collect();
        assert_eq!(collapsed.classes.len(), profiles.len());
        assert_eq!(collapsed.classes.iter().map(|c| c.plan_count).sum::<u64>(), expected.len() as u64);
        for class in &collapsed.classes {
            assert_eq!(q.domain.profile(&class.representative).unwrap(), class.profile);
            let first = expected.iter().find(|p| q.domain.profile(p).unwrap() == class.profile).unwrap();
            assert_eq!(&class.representative, first);
        }
    }
}

#[test]
fn quant_maximal_plans_are_qual_non_dominated() {
    let mut rng = StdRng::seed_from_u64(59);
    for _ in 0..250 {
        let mut q = random_query(&mut rng);
        q.mode = ComparisonMode::Quantitative;
        let quant = brute_non_dominated(&q);
        q.mode = ComparisonMode::Qualitative;
        let qual = non_dominated_set(&q).unwrap();
        assert!(quant.iter().all(|p| qual.contains(p)));
    }
}

#[test]
fn non_dominance_corresponds_to_lex_minimal_contractions() {
    let mut rng = StdRng::seed_from_u64(61);
    for _ in 0..250 {
        let mut q = random_query(&mut rng);
        q.mode = ComparisonMode::Qualitative;
        q.lengths = LengthMode::UpTo;
        let values = &q.domain.values;
        let m = MoralProblem::new(values.union(), q.domain.theory.clone(), q.domain.initial.clone()).unwrap();
        let nd = non_dominated_set(&q).unwrap();
        for plan in q.plans() {
            let contraction = contraction_of_plan(&m, &plan).unwrap();
            let minimal = is_lex_minimal(&m, values, &contraction, q.horizon).unwrap();
            assert_eq!(nd.contains(&plan), minimal, "{plan}");
        }
    }
}

#[test]
fn hospital_queries() {
    let file = hospital();
    let domain = induce(&file.mixed(None).unwrap()).unwrap();
    let q = PlanQuery::new(domain.clone(), Horizon(2), ComparisonMode::Qualitative, LengthMode::Exact);
    let (pi1, pi2) = (Plan::parse("ask,move"), Plan::parse("horn,move"));
    assert_eq!(is_dominated(&q, &pi1).unwrap(), None);
    let w = is_dominated(&q, &pi2).unwrap().expect("pi2 is beaten");
    assert_eq!(compare(&domain, &pi2, &w, q.mode).unwrap().relation, Relation::SecondPreferred);
    assert_eq!(compare(&domain, &pi2, &pi1, q.mode).unwrap().relation, Relation::SecondPreferred);
    assert_eq!(non_dominated_set(&q).unwrap(), vec![pi1.clone()]);
    assert!(is_dominated(&q, &Plan::parse("ask,move,move")).is_err());

    // a lone desire keeps exactly the plans that reach the destination
    let single = EthicalPlanningDomain::new(
        domain.theory.clone(),
        domain.initial.clone(),
        ValueBase::new(vec![fs(&["F destination"])]),
    )
    .unwrap();
    let q = PlanQuery::new(single, Horizon(2), ComparisonMode::Qualitative, LengthMode::Exact);
    let reaching: Vec<Plan> = q
        .plans()
        .filter(|p| !sat_set(&fs(&["F destination"]), p, &domain.initial, &domain.theory).unwrap().is_empty())
        .collect();
    assert!(!reaching.is_empty());
    assert_eq!(non_dominated_set(&q).unwrap(), reaching);

    // without values every plan is non-dominated
    let empty =
        EthicalPlanningDomain::new(domain.theory.clone(), domain.initial.clone(), ValueBase::new(Vec::new())).unwrap();
    let q = PlanQuery::new(empty, Horizon(1), ComparisonMode::Qualitative, LengthMode::Exact);
    assert_eq!(non_dominated_set(&q).unwrap(), q.plans().collect::<Vec<_>>());
    for plan in q.plans() {
        assert_eq!(is_dominated(&q, &plan).unwrap(), None);
    }
}
