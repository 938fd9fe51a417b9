use std::fmt;
use std::sync::Arc;

/// Name reserved for the proposition used to encode `true` after desugaring.
pub const TOP_PROPOSITION: &str = "__top";

/// An atomic proposition. Equality, ordering and hashing go through the name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Proposition(Arc<str>);

impl Proposition {
    pub fn new(name: impl AsRef<str>) -> Self {
        Proposition(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Whether `name` is a legal identifier: nonempty, `[a-zA-Z0-9_]` only.
    pub fn is_valid_name(name: &str) -> bool {
        !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub(crate) fn top() -> Self {
        Proposition::new(TOP_PROPOSITION)
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Proposition {
    fn from(name: &str) -> Self {
        Proposition::new(name)
    }
}

/// LTLf abstract syntax.
///
/// `Or`, `Implies`, `Eventually`, `Henceforth`, `True` and `False` are
/// abbreviations; [`Formula::desugar`] rewrites them into the core
/// constructors `Atom`, `Not`, `And`, `Next` and `Until`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Proposition),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Henceforth(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl AsRef<str>) -> Self {
        Formula::Atom(Proposition::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn until(l: Formula, r: Formula) -> Self {
        Formula::Until(Box::new(l), Box::new(r))
    }

    pub fn eventually(f: Formula) -> Self {
        Formula::Eventually(Box::new(f))
    }

    pub fn henceforth(f: Formula) -> Self {
        Formula::Henceforth(Box::new(f))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 1,
            Formula::Not(f) | Formula::Next(f) | Formula::Eventually(f) | Formula::Henceforth(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Until(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// True iff the formula has no temporal operator.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_propositional() && r.is_propositional()
            }
            Formula::Next(_) | Formula::Until(..) | Formula::Eventually(_) | Formula::Henceforth(_) => false,
        }
    }

    /// True iff only `Atom`, `Not`, `And`, `Next` and `Until` occur.
    pub fn is_core(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(f) | Formula::Next(f) => f.is_core(),
            Formula::And(l, r) | Formula::Until(l, r) => l.is_core() && r.is_core(),
            _ => false,
        }
    }

    /// Propositions occurring in the formula, in first-occurrence order.
    pub fn propositions(&self) -> Vec<Proposition> {
        let mut out = Vec::new();
        self.collect_propositions(&mut out);
        out
    }

    fn collect_propositions(&self, out: &mut Vec<Proposition>) {
        match self {
            Formula::Atom(p) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            Formula::True | Formula::False => {}
            Formula::Not(f) | Formula::Next(f) | Formula::Eventually(f) | Formula::Henceforth(f) => {
                f.collect_propositions(out)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Until(l, r) => {
                l.collect_propositions(out);
                r.collect_propositions(out);
            }
        }
    }

    /// Rewrite every abbreviation into the core grammar.
    ///
    /// `true` becomes `__top | !__top` (itself desugared), `G f` becomes
    /// `!(true U !f)` and `F f` becomes `!G !f`.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Atom(p) => Formula::Atom(p.clone()),
            Formula::True => top(),
            Formula::False => Formula::not(top()),
            Formula::Not(f) => Formula::not(f.desugar()),
            Formula::And(l, r) => Formula::and(l.desugar(), r.desugar()),
            Formula::Or(l, r) => core_or(l.desugar(), r.desugar()),
            Formula::Implies(l, r) => Formula::not(Formula::and(l.desugar(), Formula::not(r.desugar()))),
            Formula::Next(f) => Formula::next(f.desugar()),
            Formula::Until(l, r) => Formula::until(l.desugar(), r.desugar()),
            Formula::Henceforth(f) => core_henceforth(f.desugar()),
            Formula::Eventually(f) => Formula::not(core_henceforth(Formula::not(f.desugar()))),
        }
    }

    /// Render with Unicode connectives (`¬ ∧ ∨ → ◇ □`).
    pub fn to_unicode(&self) -> String {
        let mut out = String::new();
        write_formula(self, &mut out, Syntax::Unicode);
        out
    }
}

fn core_or(l: Formula, r: Formula) -> Formula {
    Formula::not(Formula::and(Formula::not(l), Formula::not(r)))
}

fn top() -> Formula {
    let r = Formula::Atom(Proposition::top());
    core_or(r.clone(), Formula::not(r))
}

fn core_henceforth(f: Formula) -> Formula {
    Formula::not(Formula::until(top(), Formula::not(f)))
}

// Binding strength, loosest first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Implies,
    Or,
    And,
    Until,
    Unary,
}

#[derive(Clone, Copy)]
enum Syntax {
    Ascii,
    Unicode,
}

fn prec(f: &Formula) -> Prec {
    match f {
        Formula::Implies(..) => Prec::Implies,
        Formula::Or(..) => Prec::Or,
        Formula::And(..) => Prec::And,
        Formula::Until(..) => Prec::Until,
        _ => Prec::Unary,
    }
}

fn write_operand(f: &Formula, out: &mut String, syntax: Syntax, paren: bool) {
    if paren {
        out.push('(');
        write_formula(f, out, syntax);
        out.push(')');
    } else {
        write_formula(f, out, syntax);
    }
}

fn write_formula(f: &Formula, out: &mut String, syntax: Syntax) {
    let uni = matches!(syntax, Syntax::Unicode);
    match f {
        Formula::Atom(p) => out.push_str(p.name()),
        Formula::True => out.push_str(if uni { "⊤" } else { "true" }),
        Formula::False => out.push_str(if uni { "⊥" } else { "false" }),
        Formula::Not(g) | Formula::Next(g) | Formula::Eventually(g) | Formula::Henceforth(g) => {
            let op = match (f, uni) {
                (Formula::Not(_), false) => "!",
                (Formula::Not(_), true) => "¬",
                (Formula::Next(_), _) => "X ",
                (Formula::Eventually(_), false) => "F ",
                (Formula::Eventually(_), true) => "◇",
                (Formula::Henceforth(_), false) => "G ",
                _ => "□",
            };
            out.push_str(op);
            write_operand(g, out, syntax, prec(g) < Prec::Unary);
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            // left-associative chains
            let p = prec(f);
            let op = match (f, uni) {
                (Formula::And(..), false) => " & ",
                (Formula::And(..), true) => " ∧ ",
                (_, false) => " | ",
                _ => " ∨ ",
            };
            write_operand(l, out, syntax, prec(l) < p);
            out.push_str(op);
            write_operand(r, out, syntax, prec(r) <= p);
        }
        Formula::Until(l, r) | Formula::Implies(l, r) => {
            // right-associative
            let p = prec(f);
            let op = match (f, uni) {
                (Formula::Until(..), _) => " U ",
                (_, false) => " -> ",
                _ => " → ",
            };
            write_operand(l, out, syntax, prec(l) <= p);
            out.push_str(op);
            write_operand(r, out, syntax, prec(r) < p);
        }
    }
}

/// ASCII concrete syntax accepted by [`crate::ltlf::parse_formula`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_formula(self, &mut out, Syntax::Ascii);
        f.write_str(&out)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
