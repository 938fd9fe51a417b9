//! Moral conflicts and their minimal contractions under the three criteria.
//!
//! Run with `cargo run --example moral_conflicts`.

use ethical_planning::cli::parse_domain_file;
use ethical_planning::conflict::{
    enumerate_minimal_contractions, is_physical_conflict, physical_witness, satisfying_plan, ContractionStrategy,
};
use ethical_planning::{Horizon, MinimalityCriterion, MoralProblem};

fn main() -> ethical_planning::Result<()> {
    let file = parse_domain_file(include_str!("../fixtures/hospital.epd"))?;
    let base = file.ethical_domain(None)?.values;
    let problem = MoralProblem::new(base.union(), file.theory()?, file.init.clone())?;
    let k = Horizon(4);

    match satisfying_plan(&problem, k) {
        Some(plan) => println!("no conflict: {plan} satisfies everything"),
        None => println!("conflict: no plan of length <= {} satisfies all {} values", k.0, problem.values().len()),
    }

    for (name, criterion) in [
        ("qual", MinimalityCriterion::Qual),
        ("quant", MinimalityCriterion::Quant),
        ("lex", MinimalityCriterion::Lex(base.clone())),
    ] {
        let found = enumerate_minimal_contractions(&problem, k, &criterion, ContractionStrategy::Auto)?;
        println!("\n{name}-minimal contractions: {}", found.len());
        for m in found {
            let kept: Vec<String> = m.values().iter().map(ToString::to_string).collect();
            println!("  {{{}}}", kept.join("; "));
        }
    }

    // from some start state everything is satisfiable at once
    let values = problem.values();
    if let Some((s0, plan)) = physical_witness(values, problem.theory(), Horizon(2))? {
        println!("\nphysical conflict: no; from {s0} the plan {plan} satisfies every value");
    }
    println!("physical conflict: {}", is_physical_conflict(values, problem.theory(), Horizon(2))?);
    Ok(())
}
