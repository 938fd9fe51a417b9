//! Dominance witnesses and the non-dominated plan set at a bounded horizon.
//!
//! Run with `cargo run --example non_dominated_search`.

use ethical_planning::cli::parse_domain_file;
use ethical_planning::evaluation::ComparisonMode;
use ethical_planning::search::{is_dominated, non_dominated_profiles, non_dominated_set};
use ethical_planning::{Horizon, LengthMode, Plan, PlanQuery};

fn main() -> ethical_planning::Result<()> {
    let file = parse_domain_file(include_str!("../fixtures/hospital.epd"))?;
    for mu in [3, 2] {
        let domain = file.ethical_domain(Some(mu))?;
        let query = PlanQuery::new(domain, Horizon(2), ComparisonMode::Qualitative, LengthMode::Exact);
        println!("morality {mu}, exact length 2:");
        for text in ["ask,move", "horn,move", "move,move"] {
            let plan = Plan::parse(text);
            match is_dominated(&query, &plan)? {
                Some(better) => println!("  {plan} is beaten by {better}"),
                None => println!("  {plan} is non-dominated"),
            }
        }
        let all: Vec<String> = non_dominated_set(&query)?.iter().map(ToString::to_string).collect();
        println!("  non-dominated: {}", all.join(", "));
    }

    // plans of any length up to 4, one representative per Sat-profile
    let domain = file.ethical_domain(None)?;
    let query = PlanQuery::new(domain, Horizon(4), ComparisonMode::Quantitative, LengthMode::UpTo);
    let frontier = non_dominated_profiles(&query)?;
    println!("\nquantitative, lengths up to 4: {} plans examined", frontier.plans_examined);
    for class in &frontier.classes {
        println!("  {} and {} other plan(s) with the same profile", class.representative, class.plan_count - 1);
    }
    Ok(())
}
