//! Exhaustive search grows as 3^K on a three-action domain while the working
//! set stays one odometer plus the current frontier of profiles.
//!
//! Run with `cargo run --release --example worst_case_enumeration`.

use std::time::Instant;

use ethical_planning::cli::parse_domain_file;
use ethical_planning::evaluation::ComparisonMode;
use ethical_planning::search::{non_dominated_profiles, PlanEnumerator};
use ethical_planning::{Horizon, LengthMode, PlanQuery};

fn main() -> ethical_planning::Result<()> {
    let file = parse_domain_file(include_str!("../fixtures/relay.epd"))?;
    let domain = file.ethical_domain(None)?;
    let actions = domain.theory.actions().len();
    println!("{:>3} {:>10} {:>9} {:>10}", "K", "plans", "profiles", "seconds");
    for k in 0..=10 {
        let query = PlanQuery::new(domain.clone(), Horizon(k), ComparisonMode::Qualitative, LengthMode::Exact);
        let start = Instant::now();
        let frontier = non_dominated_profiles(&query)?;
        assert_eq!(frontier.plans_examined as u128, PlanEnumerator::count(actions, Horizon(k), LengthMode::Exact));
        println!(
            "{k:>3} {:>10} {:>9} {:>10.3}",
            frontier.plans_examined,
            frontier.classes.len(),
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
