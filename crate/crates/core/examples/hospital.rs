//! The blood-delivery robot: histories, Sat-sets, and how the degree of
//! morality decides between asking people to move and sounding the horn.
//!
//! Run with `cargo run --example hospital`.

use ethical_planning::cli::parse_domain_file;
use ethical_planning::evaluation::ComparisonMode;
use ethical_planning::{explain, generate_history, induce, sat_set, Plan};

fn main() -> ethical_planning::Result<()> {
    let file = parse_domain_file(include_str!("../fixtures/hospital.epd"))?;
    let mixed = file.mixed(None)?;
    let ask = Plan::parse("ask,move");
    let horn = Plan::parse("horn,move");

    for plan in [&ask, &horn] {
        let history = generate_history(plan, mixed.initial(), mixed.theory())?;
        let states: Vec<String> = history.states().iter().map(ToString::to_string).collect();
        println!("{plan}: {}", states.join(" -> "));
        let all = induce(&mixed)?.values.union();
        let kept: Vec<String> =
            sat_set(&all, plan, mixed.initial(), mixed.theory())?.iter().map(ToString::to_string).collect();
        println!("  satisfies {}", kept.join("; "));
    }

    for mu in mixed.morality_bounds().rev() {
        let domain = induce(&mixed.with_morality(mu)?)?;
        println!("\nmorality {mu}:");
        print!("{}", explain(&domain, &ask, &horn, ComparisonMode::Qualitative)?);
    }

    // an operating theatre nearby makes the horn dangerous
    let surgery = parse_domain_file(include_str!("../fixtures/hospital_surgery.epd"))?;
    let domain = surgery.ethical_domain(Some(2))?;
    println!("\nwith surgery, morality 2:");
    print!("{}", explain(&domain, &ask, &horn, ComparisonMode::Qualitative)?);
    Ok(())
}
