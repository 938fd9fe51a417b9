//! Reading, validating and re-rendering `.epd` domain files, and driving the
//! command line in-process.
//!
//! Run with `cargo run --example domain_files`.

use ethical_planning::cli::{parse_domain_file, render_domain_file, run};

const SWITCHES: &str = "\
domain {
  propositions: lamp, fan
  actions: toggle_lamp, toggle_fan
  effect+ toggle_lamp lamp: !lamp
  effect- toggle_lamp lamp: lamp
  effect+ toggle_fan fan: !fan
  effect- toggle_fan fan: fan
}
problem {
  init: none
  values[1]: G !(lamp & fan)
  desires: F lamp; F fan
}
";

fn main() {
    let file = parse_domain_file(SWITCHES).expect("valid file");
    println!("canonical form:\n{}", render_domain_file(&file));
    assert_eq!(parse_domain_file(&render_domain_file(&file)).unwrap(), file);

    // errors carry a line and column
    let broken = SWITCHES.replace("G !(lamp & fan)", "G !(lamp & fan");
    println!("broken file: {}", parse_domain_file(&broken).unwrap_err());
    let temporal = SWITCHES.replace("effect+ toggle_fan fan: !fan", "effect+ toggle_fan fan: X fan");
    println!("temporal effect: {}\n", parse_domain_file(&temporal).unwrap_err());

    let hospital = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hospital.epd");
    for args in [
        vec!["check", hospital],
        vec!["simulate", hospital, "--plan", "ask,move"],
        vec!["--json", "compare", hospital, "--plan1", "ask,move", "--plan2", "horn,move"],
    ] {
        let out = run(std::iter::once("ethplan").chain(args.iter().copied()));
        println!("$ ethplan {}  [exit {}]\n{}", args.join(" "), out.status, out.stdout);
    }
}
