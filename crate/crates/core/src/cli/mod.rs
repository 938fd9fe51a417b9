//! Command-line front end: `check`, `simulate`, `compare`, `solve`,
//! `conflict` and `contract` over `.epd` domain files.
//!
//! [`run`] is the whole program minus process plumbing, so it can be driven
//! in-process. Exit status is 0 on success, 1 on domain errors (including an
//! invalid file under `check`) and 2 on usage errors.

mod file;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use file::{parse_domain_file, render_domain_file, DomainFile, EffectRule, Sign};

use crate::conflict::{
    enumerate_minimal_contractions, satisfying_plan, ContractionStrategy, Horizon, MinimalityCriterion, MoralProblem,
};
use crate::domain::{generate_history, Plan, State};
use crate::error::Error;
use crate::evaluation::{explain, ComparisonMode, EthicalPlanningDomain, Relation};
use crate::ltlf::{evaluate, Formula};
use crate::search::{non_dominated_profiles, non_dominated_set, LengthMode, PlanQuery};

/// Version tag of the JSON output schemas under `schemas/`.
pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Parser)]
#[command(name = "ethplan", version, about = "Compare and search plans against prioritised LTLf values")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Override the degree of morality declared in the file
    #[arg(long, global = true, value_name = "N")]
    morality: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a domain file
    Check { file: String },
    /// Print the history of a plan and which values it satisfies
    Simulate {
        file: String,
        /// Comma-separated actions
        #[arg(long, allow_hyphen_values = true)]
        plan: String,
    },
    /// Compare two plans lexicographically
    Compare {
        file: String,
        #[arg(long)]
        plan1: String,
        #[arg(long)]
        plan2: String,
        /// Compare by cardinality instead of inclusion
        #[arg(long)]
        quant: bool,
    },
    /// List non-dominated plans within the horizon
    Solve {
        file: String,
        #[command(flatten)]
        horizon: HorizonArg,
        #[arg(long)]
        quant: bool,
        /// Only plans of exactly the horizon's length
        #[arg(long)]
        exact_length: bool,
        /// One representative per Sat-profile
        #[arg(long)]
        collapse_profiles: bool,
    },
    /// Decide whether all values and desires are jointly satisfiable
    Conflict {
        file: String,
        #[command(flatten)]
        horizon: HorizonArg,
        /// Leave desires out of the value set
        #[arg(long)]
        omit_desires: bool,
    },
    /// Enumerate minimal contractions
    Contract {
        file: String,
        #[command(flatten)]
        horizon: HorizonArg,
        #[arg(long, value_enum)]
        criterion: CriterionArg,
    },
}

#[derive(Debug, Args)]
struct HorizonArg {
    /// Maximum plan length (defaults to the file's `horizon:`)
    #[arg(long, value_name = "K")]
    horizon: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CriterionArg {
    Qual,
    Quant,
    Lex,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Report {
    verdict: String,
    details: Value,
    text: String,
}

/// Run the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = e.exit_code();
            let rendered = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { status: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli) {
        Ok(report) => Outcome { status: 0, stdout: emit(&cli, name, report), stderr: String::new() },
        Err(Failure::Usage(message)) => {
            Outcome { status: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
        }
        Err(Failure::Domain(error)) => {
            let verdict = if name == "check" { "invalid" } else { "error" };
            let report = Report {
                verdict: verdict.into(),
                details: json!({ "message": error.to_string() }),
                text: format!("error: {error}\n"),
            };
            if cli.json {
                Outcome { status: 1, stdout: emit(&cli, name, report), stderr: String::new() }
            } else {
                Outcome { status: 1, stdout: String::new(), stderr: report.text }
            }
        }
    }
}

fn emit(cli: &Cli, name: &str, report: Report) -> String {
    if cli.json {
        let doc = json!({
            "command": name,
            "schema": SCHEMA_VERSION,
            "verdict": report.verdict,
            "details": report.details,
        });
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialise"))
    } else {
        report.text
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Check { .. } => "check",
        Command::Simulate { .. } => "simulate",
        Command::Compare { .. } => "compare",
        Command::Solve { .. } => "solve",
        Command::Conflict { .. } => "conflict",
        Command::Contract { .. } => "contract",
    }
}

fn load(path: &str) -> Result<DomainFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?;
    Ok(parse_domain_file(&text)?)
}

fn horizon(arg: &HorizonArg, file: &DomainFile) -> Result<Horizon, Failure> {
    arg.horizon
        .or(file.horizon)
        .map(Horizon)
        .ok_or_else(|| Failure::Usage("--horizon is required when the file declares no `horizon:`".into()))
}

fn check_plan(domain: &EthicalPlanningDomain, text: &str) -> Result<Plan, Failure> {
    let plan = Plan::parse(text);
    if let Some(a) = plan.actions().iter().find(|a| !domain.theory.has_action(a)) {
        return Err(Error::UnknownAction(a.to_string()).into());
    }
    Ok(plan)
}

fn strings(formulas: &[Formula]) -> Vec<String> {
    formulas.iter().map(ToString::to_string).collect()
}

fn plan_json(plan: &Plan) -> Value {
    json!(plan.actions().iter().map(|a| a.to_string()).collect::<Vec<_>>())
}

/// State rendered in the universe's declaration order.
fn state_names(domain: &EthicalPlanningDomain, state: &State) -> Vec<String> {
    domain.theory.propositions().iter().filter(|p| state.contains(p)).map(|p| p.to_string()).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn mode_name(mode: ComparisonMode) -> &'static str {
    match mode {
        ComparisonMode::Qualitative => "qualitative",
        ComparisonMode::Quantitative => "quantitative",
    }
}

fn mode_of(quant: bool) -> ComparisonMode {
    if quant {
        ComparisonMode::Quantitative
    } else {
        ComparisonMode::Qualitative
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Check { file } => check(file, cli.morality),
        Command::Simulate { file, plan } => simulate(file, plan, cli.morality),
        Command::Compare { file, plan1, plan2, quant } => compare(file, plan1, plan2, mode_of(*quant), cli.morality),
        Command::Solve { file, horizon: h, quant, exact_length, collapse_profiles } => {
            let file = load(file)?;
            let lengths = if *exact_length { LengthMode::Exact } else { LengthMode::UpTo };
            solve(&file, horizon(h, &file)?, mode_of(*quant), lengths, *collapse_profiles, cli.morality)
        }
        Command::Conflict { file, horizon: h, omit_desires } => {
            let file = load(file)?;
            conflict(&file, horizon(h, &file)?, *omit_desires, cli.morality)
        }
        Command::Contract { file, horizon: h, criterion } => {
            let file = load(file)?;
            contract(&file, horizon(h, &file)?, *criterion, cli.morality)
        }
    }
}

fn check(path: &str, morality: Option<usize>) -> Result<Report, Failure> {
    let file = load(path)?;
    let mixed = file.mixed(morality)?;
    let warnings: Vec<String> = crate::evaluation::induce(&mixed)?
        .values
        .duplicates()
        .iter()
        .map(|f| format!("`{f}` appears on more than one level; quantitative comparison counts it per level"))
        .collect();
    let mut text = format!(
        "ok: {} propositions, {} actions, {} effect rules, {} value levels, {} desires, morality {}\n",
        file.propositions.len(),
        file.actions.len(),
        file.effects.len(),
        file.values.len(),
        file.desires.len(),
        mixed.morality()
    );
    for w in &warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    Ok(Report {
        verdict: "valid".into(),
        details: json!({
            "propositions": file.propositions.len(),
            "actions": file.actions.len(),
            "effects": file.effects.len(),
            "value_levels": file.values.len(),
            "desires": file.desires.len(),
            "morality": mixed.morality(),
            "warnings": warnings,
        }),
        text,
    })
}

fn simulate(path: &str, plan: &str, morality: Option<usize>) -> Result<Report, Failure> {
    let domain = load(path)?.ethical_domain(morality)?;
    let plan = check_plan(&domain, plan)?;
    let history = generate_history(&plan, &domain.initial, &domain.theory)?;
    let states: Vec<Vec<String>> = history.states().iter().map(|s| state_names(&domain, s)).collect();
    let mut text = String::from("t  action      state\n");
    for (t, state) in states.iter().enumerate() {
        let action = history.action(t).map_or("-".to_string(), |a| a.to_string());
        let _ = writeln!(text, "{t:<2} {action:<11} {}", braces(state));
    }
    let path_line: Vec<String> = states.iter().map(|s| braces(s)).collect();
    let _ = writeln!(text, "{}", path_line.join(" -> "));
    let mut values = Vec::new();
    for (i, level) in domain.values.levels().iter().enumerate() {
        for f in level {
            let ok = evaluate(f, &history, 0).expect("position 0 always exists");
            let _ =
                writeln!(text, "level {}: {:<40} {}", i + 1, f.to_string(), if ok { "satisfied" } else { "violated" });
            values.push(json!({ "level": i + 1, "formula": f.to_string(), "satisfied": ok }));
        }
    }
    Ok(Report {
        verdict: "simulated".into(),
        details: json!({
            "plan": plan_json(&plan),
            "states": states,
            "values": values,
        }),
        text,
    })
}

fn relation_verdict(rel: Relation) -> &'static str {
    match rel {
        Relation::FirstPreferred => "plan1_preferred",
        Relation::SecondPreferred => "plan2_preferred",
        Relation::Equivalent => "equivalent",
        Relation::Incomparable => "incomparable",
    }
}

fn compare(
    path: &str,
    plan1: &str,
    plan2: &str,
    mode: ComparisonMode,
    morality: Option<usize>,
) -> Result<Report, Failure> {
    let domain = load(path)?.ethical_domain(morality)?;
    let first = check_plan(&domain, plan1)?;
    let second = check_plan(&domain, plan2)?;
    let explanation = explain(&domain, &first, &second, mode)?;
    let rows: Vec<Value> = explanation
        .rows
        .iter()
        .map(|r| json!({ "level": r.level, "plan1": strings(&r.first), "plan2": strings(&r.second) }))
        .collect();
    let deciding: Vec<String> = explanation.deciding_values().iter().map(|f| f.to_string()).collect();
    Ok(Report {
        verdict: relation_verdict(explanation.result.relation).into(),
        details: json!({
            "mode": mode_name(mode),
            "plan1": plan_json(&first),
            "plan2": plan_json(&second),
            "deciding_level": explanation.result.deciding_level,
            "deciding_values": deciding,
            "levels": rows,
        }),
        text: explanation.to_string(),
    })
}

fn satisfied_names(domain: &EthicalPlanningDomain, profile: &crate::evaluation::SatProfile) -> Vec<String> {
    (0..domain.values.degree()).flat_map(|i| profile.satisfied(&domain.values, i)).map(|f| f.to_string()).collect()
}

fn solve(
    file: &DomainFile,
    horizon: Horizon,
    mode: ComparisonMode,
    lengths: LengthMode,
    collapse: bool,
    morality: Option<usize>,
) -> Result<Report, Failure> {
    let domain = file.ethical_domain(morality)?;
    let query = PlanQuery::new(domain.clone(), horizon, mode, lengths);
    let length_text = match lengths {
        LengthMode::Exact => "exact length",
        LengthMode::UpTo => "lengths up to the horizon",
    };
    let mut text = String::new();
    let mut entries = Vec::new();
    let frontier = non_dominated_profiles(&query)?;
    if collapse {
        let _ = writeln!(
            text,
            "non-dominated profiles ({}, horizon {}, {}): {}",
            mode_name(mode),
            horizon.0,
            length_text,
            frontier.classes.len()
        );
        for class in &frontier.classes {
            let sat = satisfied_names(&domain, &class.profile);
            let _ = writeln!(
                text,
                "  {} [{} plan(s)] satisfies: {}",
                class.representative,
                class.plan_count,
                sat.join("; ")
            );
            entries.push(json!({
                "plan": plan_json(&class.representative),
                "plan_count": class.plan_count,
                "satisfied": sat,
            }));
        }
    } else {
        let plans = non_dominated_set(&query)?;
        let _ = writeln!(
            text,
            "non-dominated plans ({}, horizon {}, {}): {}",
            mode_name(mode),
            horizon.0,
            length_text,
            plans.len()
        );
        for plan in &plans {
            let sat = satisfied_names(&domain, &domain.profile(plan)?);
            let _ = writeln!(text, "  {plan} satisfies: {}", sat.join("; "));
            entries.push(json!({ "plan": plan_json(plan), "plan_count": 1, "satisfied": sat }));
        }
    }
    let _ = writeln!(text, "plans examined: {}", frontier.plans_examined);
    Ok(Report {
        verdict: "solved".into(),
        details: json!({
            "mode": mode_name(mode),
            "horizon": horizon.0,
            "exact_length": lengths == LengthMode::Exact,
            "collapsed": collapse,
            "plans_examined": frontier.plans_examined,
            "non_dominated": entries,
        }),
        text,
    })
}

fn union_problem(file: &DomainFile, omit_desires: bool, morality: Option<usize>) -> Result<MoralProblem, Failure> {
    let values = if omit_desires { file.value_base().union() } else { file.ethical_domain(morality)?.values.union() };
    Ok(MoralProblem::new(values, file.theory()?, file.init.clone())?)
}

fn conflict(
    file: &DomainFile,
    horizon: Horizon,
    omit_desires: bool,
    morality: Option<usize>,
) -> Result<Report, Failure> {
    if !omit_desires {
        file.mixed(morality)?;
    }
    let problem = union_problem(file, omit_desires, morality)?;
    let witness = satisfying_plan(&problem, horizon);
    let n = problem.values().len();
    let text = match &witness {
        Some(plan) => format!("no conflict: {plan} satisfies all {n} values\n"),
        None => format!("conflict: no plan of length <= {} satisfies all {n} values\n", horizon.0),
    };
    Ok(Report {
        verdict: if witness.is_some() { "no_conflict" } else { "conflict" }.into(),
        details: json!({
            "horizon": horizon.0,
            "values": strings(problem.values()),
            "witness": witness.as_ref().map(plan_json),
        }),
        text,
    })
}

fn contract(
    file: &DomainFile,
    horizon: Horizon,
    criterion: CriterionArg,
    morality: Option<usize>,
) -> Result<Report, Failure> {
    let domain = file.ethical_domain(morality)?;
    let problem = union_problem(file, false, morality)?;
    let (criterion, name) = match criterion {
        CriterionArg::Qual => (MinimalityCriterion::Qual, "qual"),
        CriterionArg::Quant => (MinimalityCriterion::Quant, "quant"),
        CriterionArg::Lex => (MinimalityCriterion::Lex(domain.values.clone()), "lex"),
    };
    let found = enumerate_minimal_contractions(&problem, horizon, &criterion, ContractionStrategy::Auto)?;
    let mut text = format!("{name}-minimal contractions (horizon {}): {}\n", horizon.0, found.len());
    let sets: Vec<Vec<String>> = found.iter().map(|m| strings(m.values())).collect();
    for set in &sets {
        let _ = writeln!(text, "  {{{}}}", set.join("; "));
    }
    Ok(Report {
        verdict: "contracted".into(),
        details: json!({
            "criterion": name,
            "horizon": horizon.0,
            "values": strings(problem.values()),
            "contractions": sets,
        }),
        text,
    })
}
