//! The `.epd` domain file: a `domain` block declaring propositions, actions
//! and conditional effects, followed by a `problem` block with the initial
//! state, value levels, desires and morality settings.
//!
//! ```text
//! domain {
//!   propositions: p, q
//!   actions: a, b
//!   effect+ a p: !q
//! }
//! problem {
//!   init: none
//!   values[1]: G !q
//!   desires: F p
//!   morality: 2
//! }
//! ```
//!
//! One declaration per line; `#` starts a comment.

use std::fmt::Write as _;

use crate::domain::{ActionName, ActionTheory, State};
use crate::error::{Error, Result};
use crate::evaluation::{induce, EthicalPlanningDomain, MixedMotiveDomain, ValueBase};
use crate::ltlf::{parse_formula, Formula, Proposition, TOP_PROPOSITION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectRule {
    pub sign: Sign,
    pub action: ActionName,
    pub proposition: Proposition,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainFile {
    pub propositions: Vec<Proposition>,
    /// Declared actions; `noop` is available whether listed or not.
    pub actions: Vec<ActionName>,
    pub effects: Vec<EffectRule>,
    pub init: State,
    /// `values[k]` is stored at index `k - 1`.
    pub values: Vec<Vec<Formula>>,
    pub desires: Vec<Formula>,
    pub morality: Option<usize>,
    pub morality_range: Option<(usize, usize)>,
    pub horizon: Option<usize>,
}

impl DomainFile {
    pub fn theory(&self) -> Result<ActionTheory> {
        let mut theory = ActionTheory::new(self.propositions.iter().cloned(), self.actions.iter().cloned())?;
        for rule in &self.effects {
            match rule.sign {
                Sign::Positive => theory.set_positive(&rule.action, &rule.proposition, rule.formula.clone())?,
                Sign::Negative => theory.set_negative(&rule.action, &rule.proposition, rule.formula.clone())?,
            }
        }
        Ok(theory)
    }

    pub fn value_base(&self) -> ValueBase {
        ValueBase::new(self.values.clone())
    }

    /// Declared morality, or `dg + 1` (desires last) when absent.
    pub fn effective_morality(&self) -> usize {
        self.morality.unwrap_or(self.values.len() + 1)
    }

    /// The mixed-motive domain, optionally at another degree of morality.
    pub fn mixed(&self, morality: Option<usize>) -> Result<MixedMotiveDomain> {
        MixedMotiveDomain::new(
            self.theory()?,
            self.init.clone(),
            self.value_base(),
            self.desires.clone(),
            morality.unwrap_or_else(|| self.effective_morality()),
            self.morality_range.map(|(lo, hi)| lo..=hi),
        )
    }

    /// The induced ethical planning domain.
    pub fn ethical_domain(&self, morality: Option<usize>) -> Result<EthicalPlanningDomain> {
        induce(&self.mixed(morality)?)
    }

    fn validate(&self) -> Result<()> {
        let declared = |p: &Proposition| self.propositions.contains(p);
        for p in self.init.iter() {
            if !declared(p) {
                return Err(Error::UndeclaredName(p.to_string()));
            }
        }
        for f in self.values.iter().flatten().chain(&self.desires) {
            if let Some(p) = f.propositions().into_iter().find(|p| !declared(p)) {
                return Err(Error::UndeclaredName(p.to_string()));
            }
        }
        for (i, rule) in self.effects.iter().enumerate() {
            let duplicate = self.effects[..i]
                .iter()
                .any(|r| r.sign == rule.sign && r.action == rule.action && r.proposition == rule.proposition);
            if duplicate {
                return Err(Error::Invalid(format!(
                    "effect{} {} {} declared twice",
                    if rule.sign == Sign::Positive { "+" } else { "-" },
                    rule.action,
                    rule.proposition
                )));
            }
        }
        if let Some((lo, hi)) = self.morality_range {
            if lo > hi || lo == 0 {
                return Err(Error::Invalid(format!("empty morality range {lo}..{hi}")));
            }
        }
        // builds the theory and checks μ against both bounds
        self.mixed(None)?;
        Ok(())
    }
}

struct Line<'a> {
    number: usize,
    /// 1-based column of `text`'s first character in the source line.
    column: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax { line: Some(self.number), position: self.column + offset, message: message.into() }
    }

    fn sub(&self, start: usize) -> Line<'a> {
        let rest = &self.text[start..];
        let trimmed = rest.trim_start();
        Line {
            number: self.number,
            column: self.column + start + (rest.len() - trimmed.len()),
            text: trimmed.trim_end(),
        }
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let code = raw.split('#').next().unwrap_or("");
            let trimmed = code.trim_start();
            let text = trimmed.trim_end();
            (!text.is_empty()).then(|| Line { number: i + 1, column: code.len() - trimmed.len() + 1, text })
        })
        .collect()
}

fn parse_ident_list(line: &Line<'_>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in line.text.split(',') {
        for word in piece.split_whitespace() {
            let at = offset + piece.find(word).unwrap_or(0);
            if !Proposition::is_valid_name(word) {
                return Err(line.error(at, format!("invalid identifier `{word}`")));
            }
            if word == TOP_PROPOSITION {
                return Err(line.error(at, format!("`{TOP_PROPOSITION}` is reserved")));
            }
            out.push(word.to_string());
        }
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn parse_formula_at(line: &Line<'_>, start: usize, text: &str) -> Result<Formula> {
    parse_formula(text).map_err(|e| match e {
        Error::Syntax { position, message, .. } => line.error(start + position - 1, message),
        other => other,
    })
}

fn parse_formula_list(line: &Line<'_>) -> Result<Vec<Formula>> {
    if line.text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in line.text.split(';') {
        let lead = piece.len() - piece.trim_start().len();
        out.push(parse_formula_at(line, offset + lead, piece.trim())?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn parse_int(line: &Line<'_>, text: &str, at: usize) -> Result<usize> {
    text.trim().parse().map_err(|_| line.error(at, format!("expected an integer, found `{}`", text.trim())))
}

/// `keyword:` prefix; returns the remainder after the colon.
fn split_key<'a>(line: &Line<'a>) -> Option<(&'a str, Line<'a>)> {
    let colon = line.text.find(':')?;
    Some((line.text[..colon].trim(), line.sub(colon + 1)))
}

enum Section {
    Domain,
    Problem,
}

fn open_block<'a>(lines: &[Line<'a>], i: &mut usize, keyword: &str) -> Result<()> {
    let Some(line) = lines.get(*i) else {
        return Err(Error::Syntax { line: None, position: 1, message: format!("missing `{keyword}` block") });
    };
    let rest = line.text.strip_prefix(keyword).map(str::trim);
    match rest {
        Some("{") => {
            *i += 1;
            Ok(())
        }
        Some("") => match lines.get(*i + 1) {
            Some(next) if next.text == "{" => {
                *i += 2;
                Ok(())
            }
            Some(next) => Err(next.error(0, "expected `{`")),
            None => Err(line.error(line.text.len(), "expected `{`")),
        },
        _ => Err(line.error(0, format!("expected `{keyword} {{`"))),
    }
}

/// Parse and validate a domain file.
pub fn parse_domain_file(text: &str) -> Result<DomainFile> {
    let lines = lines(text);
    let mut file = DomainFile {
        propositions: Vec::new(),
        actions: Vec::new(),
        effects: Vec::new(),
        init: State::empty(),
        values: Vec::new(),
        desires: Vec::new(),
        morality: None,
        morality_range: None,
        horizon: None,
    };
    let mut seen: Vec<&str> = Vec::new();
    let mut i = 0;
    for (section, keyword) in [(Section::Domain, "domain"), (Section::Problem, "problem")] {
        open_block(&lines, &mut i, keyword)?;
        loop {
            let Some(line) = lines.get(i) else {
                return Err(Error::Syntax {
                    line: None,
                    position: 1,
                    message: format!("unterminated `{keyword}` block"),
                });
            };
            i += 1;
            if line.text == "}" {
                break;
            }
            match section {
                Section::Domain => parse_domain_line(line, &mut file, &mut seen)?,
                Section::Problem => parse_problem_line(line, &mut file, &mut seen)?,
            }
        }
    }
    if let Some(extra) = lines.get(i) {
        return Err(extra.error(0, "unexpected content after the problem block"));
    }
    if !seen.contains(&"propositions") || !seen.contains(&"actions") {
        return Err(Error::Syntax {
            line: None,
            position: 1,
            message: "domain needs `propositions:` and `actions:`".into(),
        });
    }
    if !seen.contains(&"init") {
        return Err(Error::Syntax { line: None, position: 1, message: "problem needs `init:`".into() });
    }
    file.validate()?;
    Ok(file)
}

fn once<'a>(line: &Line<'_>, seen: &mut Vec<&'a str>, key: &'a str) -> Result<()> {
    if seen.contains(&key) {
        return Err(line.error(0, format!("`{key}:` declared twice")));
    }
    seen.push(key);
    Ok(())
}

fn parse_domain_line<'a>(line: &Line<'_>, file: &mut DomainFile, seen: &mut Vec<&'a str>) -> Result<()> {
    let sign = if line.text.starts_with("effect+") {
        Some(Sign::Positive)
    } else if line.text.starts_with("effect-") {
        Some(Sign::Negative)
    } else {
        None
    };
    if let Some(sign) = sign {
        let rest = line.sub("effect+".len());
        let Some(colon) = rest.text.find(':') else {
            return Err(rest.error(rest.text.len(), "expected `:` after the effect target"));
        };
        let names: Vec<&str> = rest.text[..colon].split_whitespace().collect();
        let [action, proposition] = names[..] else {
            return Err(rest.error(0, "expected `ACTION PROPOSITION:`"));
        };
        for name in [action, proposition] {
            if !Proposition::is_valid_name(name) {
                return Err(rest.error(rest.text.find(name).unwrap_or(0), format!("invalid identifier `{name}`")));
            }
        }
        let action = ActionName::new(action);
        let proposition = Proposition::new(proposition);
        if !file.actions.contains(&action) && !action.is_noop() {
            return Err(Error::UnknownAction(action.to_string()));
        }
        if !file.propositions.contains(&proposition) {
            return Err(Error::UndeclaredName(proposition.to_string()));
        }
        let body = rest.sub(colon + 1);
        let formula = parse_formula_at(&body, 0, body.text)?;
        if !formula.is_propositional() {
            return Err(Error::NonPropositionalEffect {
                action: action.to_string(),
                proposition: proposition.to_string(),
                formula: formula.to_string(),
            });
        }
        file.effects.push(EffectRule { sign, action, proposition, formula });
        return Ok(());
    }
    let Some((key, rest)) = split_key(line) else {
        return Err(line.error(0, "expected a declaration"));
    };
    match key {
        "propositions" => {
            once(line, seen, "propositions")?;
            file.propositions = parse_ident_list(&rest)?.into_iter().map(Proposition::new).collect();
        }
        "actions" => {
            once(line, seen, "actions")?;
            file.actions = parse_ident_list(&rest)?.into_iter().map(ActionName::new).collect();
        }
        other => return Err(line.error(0, format!("unknown domain declaration `{other}`"))),
    }
    Ok(())
}

fn parse_problem_line<'a>(line: &Line<'_>, file: &mut DomainFile, seen: &mut Vec<&'a str>) -> Result<()> {
    let Some((key, rest)) = split_key(line) else {
        return Err(line.error(0, "expected a declaration"));
    };
    let value_at = rest.column - line.column;
    if let Some(index) = key.strip_prefix("values[").and_then(|k| k.strip_suffix(']')) {
        let level = parse_int(line, index, "values[".len())?;
        if level == 0 {
            return Err(line.error("values[".len(), "value levels start at 1"));
        }
        if file.values.len() < level {
            file.values.resize(level, Vec::new());
        }
        file.values[level - 1].extend(parse_formula_list(&rest)?);
        return Ok(());
    }
    match key {
        "init" => {
            once(line, seen, "init")?;
            if rest.text != "none" {
                file.init = parse_ident_list(&rest)?.into_iter().map(Proposition::new).collect();
            }
        }
        "desires" => {
            once(line, seen, "desires")?;
            file.desires = parse_formula_list(&rest)?;
        }
        "morality" => {
            once(line, seen, "morality")?;
            file.morality = Some(parse_int(line, rest.text, value_at)?);
        }
        "morality-range" => {
            once(line, seen, "morality-range")?;
            let Some((lo, hi)) = rest.text.split_once("..") else {
                return Err(line.error(value_at, "expected `MIN..MAX`"));
            };
            file.morality_range = Some((parse_int(line, lo, value_at)?, parse_int(line, hi, value_at)?));
        }
        "horizon" => {
            once(line, seen, "horizon")?;
            file.horizon = Some(parse_int(line, rest.text, value_at)?);
        }
        other => return Err(line.error(0, format!("unknown problem declaration `{other}`"))),
    }
    Ok(())
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Canonical text form; [`parse_domain_file`] reads it back unchanged.
pub fn render_domain_file(file: &DomainFile) -> String {
    let mut out = String::new();
    out.push_str("domain {\n");
    let _ = writeln!(out, "  propositions: {}", join(&file.propositions, ", "));
    let _ = writeln!(out, "  actions: {}", join(&file.actions, ", "));
    for rule in &file.effects {
        let sign = match rule.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        let _ = writeln!(out, "  effect{sign} {} {}: {}", rule.action, rule.proposition, rule.formula);
    }
    out.push_str("}\nproblem {\n");
    if file.init.is_empty() {
        out.push_str("  init: none\n");
    } else {
        let init: Vec<&Proposition> = file.init.iter().collect();
        let _ = writeln!(out, "  init: {}", join(&init, ", "));
    }
    for (i, level) in file.values.iter().enumerate() {
        let _ = writeln!(out, "  values[{}]: {}", i + 1, join(level, "; "));
    }
    if !file.desires.is_empty() {
        let _ = writeln!(out, "  desires: {}", join(&file.desires, "; "));
    }
    if let Some(m) = file.morality {
        let _ = writeln!(out, "  morality: {m}");
    }
    if let Some((lo, hi)) = file.morality_range {
        let _ = writeln!(out, "  morality-range: {lo}..{hi}");
    }
    if let Some(h) = file.horizon {
        let _ = writeln!(out, "  horizon: {h}");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# two switches
domain {
  propositions: p, q
  actions: a b
  effect+ a p: !q   # conditional
  effect- b p: true
}
problem {
  init: q
  values[2]: G !p
  desires: F p; X q
  morality: 1
  horizon: 3
}
";

    #[test]
    fn parses_small_file() {
        let d = parse_domain_file(SMALL).unwrap();
        assert_eq!(d.propositions.len(), 2);
        assert_eq!(d.actions, vec![ActionName::new("a"), ActionName::new("b")]);
        assert_eq!(d.effects.len(), 2);
        assert_eq!(d.effects[0].formula, Formula::not(Formula::atom("q")));
        assert_eq!(d.values, vec![vec![], vec![parse_formula("G !p").unwrap()]]);
        assert_eq!(d.desires.len(), 2);
        assert_eq!(d.morality, Some(1));
        assert_eq!(d.horizon, Some(3));
        assert!(d.theory().unwrap().has_action(&ActionName::noop()));
        assert_eq!(parse_domain_file(&render_domain_file(&d)).unwrap(), d);
    }

    fn err(text: &str) -> Error {
        parse_domain_file(text).unwrap_err()
    }

    #[test]
    fn rejects_temporal_effects() {
        let text = SMALL.replace("effect+ a p: !q", "effect+ a p: X q");
        assert!(matches!(err(&text), Error::NonPropositionalEffect { .. }));
    }

    #[test]
    fn rejects_undeclared_names() {
        assert_eq!(err(&SMALL.replace("init: q", "init: r")), Error::UndeclaredName("r".into()));
        assert_eq!(err(&SMALL.replace("G !p", "G !r")), Error::UndeclaredName("r".into()));
        assert_eq!(err(&SMALL.replace("effect- b p", "effect- b r")), Error::UndeclaredName("r".into()));
        assert_eq!(err(&SMALL.replace("effect- b p", "effect- c p")), Error::UnknownAction("c".into()));
        assert_eq!(err(&SMALL.replace("effect+ a p: !q", "effect+ a p: !r")), Error::UndeclaredName("r".into()));
    }

    #[test]
    fn rejects_bad_morality() {
        assert!(matches!(err(&SMALL.replace("morality: 1", "morality: 4")), Error::MoralityOutOfRange { .. }));
        let ranged = SMALL.replace("horizon: 3", "morality-range: 2..3");
        assert_eq!(err(&ranged), Error::MoralityOutOfRange { morality: 1, min: 2, max: 3 });
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        match err(&SMALL.replace("G !p", "G (p")) {
            Error::Syntax { line, position, .. } => {
                assert_eq!(line, Some(10));
                assert_eq!(position, 18);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(err(&SMALL.replace("values[2]", "values[x]")), Error::Syntax { line: Some(10), .. }));
        assert!(matches!(err(&SMALL.replace("domain {", "domain (")), Error::Syntax { line: Some(2), .. }));
        assert!(matches!(err(&format!("{SMALL}extra")), Error::Syntax { line: Some(15), .. }));
        assert!(matches!(err("domain {\n propositions: p\n"), Error::Syntax { .. }));
        assert!(matches!(err(&SMALL.replace("propositions: p, q", "propositions: p, __top")), Error::Syntax { .. }));
    }

    #[test]
    fn brace_on_its_own_line() {
        let text = SMALL.replace("domain {", "domain\n{").replace("problem {", "problem\n{");
        assert_eq!(parse_domain_file(&text).unwrap(), parse_domain_file(SMALL).unwrap());
    }

    #[test]
    fn noop_effects_are_rejected() {
        let text = SMALL.replace("effect- b p: true", "effect- noop p: true");
        assert!(matches!(err(&text), Error::Invalid(_)));
    }

    #[test]
    fn empty_init_and_default_morality() {
        let text = SMALL.replace("init: q", "init: none").replace("  morality: 1\n", "");
        let d = parse_domain_file(&text).unwrap();
        assert!(d.init.is_empty());
        assert_eq!(d.effective_morality(), 3);
        assert_eq!(d.ethical_domain(None).unwrap().values.levels()[2], d.desires);
    }
}
