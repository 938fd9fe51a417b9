//! Parse LTLf formulas, desugar them and evaluate them over a short trace.
//!
//! Run with `cargo run --example ltlf_basics`.

use ethical_planning::ltlf::{truth_vector, Trace};
use ethical_planning::{parse_formula, Proposition};

/// A trace written out by hand: the propositions true at each position.
struct Handwritten(Vec<Vec<&'static str>>);

impl Trace for Handwritten {
    fn last(&self) -> usize {
        self.0.len() - 1
    }

    fn holds(&self, p: &Proposition, t: usize) -> bool {
        self.0[t].contains(&p.name())
    }
}

fn main() -> ethical_planning::Result<()> {
    let trace = Handwritten(vec![vec!["req"], vec!["req"], vec!["busy"], vec!["ack"], vec![]]);
    println!("trace: {:?}\n", trace.0);

    for text in ["req U ack", "G (req -> F ack)", "X X busy", "F (ack & X true)", "G F ack"] {
        let f = parse_formula(text)?;
        let bits: String = truth_vector(&f, &trace).iter().map(|&b| if b { '1' } else { '.' }).collect();
        println!("{:<22} {bits}   ({})", f.to_string(), f.to_unicode());
    }

    // abbreviations rewrite into !, &, X and U
    let f = parse_formula("F ack")?;
    println!("\n{f} desugars to {}", f.desugar());

    // syntax errors report a 1-based column
    if let Err(e) = parse_formula("req U (ack") {
        println!("parse error: {e}");
    }
    Ok(())
}
