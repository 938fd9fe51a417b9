//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := implied
//! implied := ored ("->" implied)?
//! ored    := anded ("|" anded)*
//! anded   := until ("&" until)*
//! until   := unary ("U" until)?
//! unary   := ("!" | "X" | "F" | "G") unary | atom
//! atom    := "true" | "false" | IDENT | "(" formula ")"
//! ```

use super::formula::{Formula, Proposition, TOP_PROPOSITION};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Implies,
    Next,
    Eventually,
    Henceforth,
    Until,
    True,
    False,
    LParen,
    RParen,
    Ident(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Next => "`X`".into(),
            Tok::Eventually => "`F`".into(),
            Tok::Henceforth => "`G`".into(),
            Tok::Until => "`U`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line: None, position, message: message.into() }
}

/// Tokens paired with their 1-based column.
fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' => toks.push((Tok::Not, col)),
            '&' => toks.push((Tok::And, col)),
            '|' => toks.push((Tok::Or, col)),
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    toks.push((Tok::Implies, col));
                    i += 1;
                } else {
                    return Err(syntax(col, "unknown token `-` (expected `->`)"));
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "X" => Tok::Next,
                    "F" => Tok::Eventually,
                    "G" => Tok::Henceforth,
                    "U" => Tok::Until,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                toks.push((tok, col));
                continue;
            }
            other => return Err(syntax(col, format!("unknown token `{other}`"))),
        }
        i += 1;
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn implied(&mut self) -> Result<Formula> {
        let lhs = self.ored()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implied()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn ored(&mut self) -> Result<Formula> {
        let mut lhs = self.anded()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.anded()?);
        }
        Ok(lhs)
    }

    fn anded(&mut self) -> Result<Formula> {
        let mut lhs = self.until()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Until {
            self.bump();
            let rhs = self.until()?;
            return Ok(Formula::until(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Next => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::Eventually => {
                self.bump();
                Ok(Formula::eventually(self.unary()?))
            }
            Tok::Henceforth => {
                self.bump();
                Ok(Formula::henceforth(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let col = self.column();
        match self.bump() {
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Ident(name) => {
                if name == TOP_PROPOSITION {
                    return Err(syntax(col, format!("`{TOP_PROPOSITION}` is reserved")));
                }
                Ok(Formula::Atom(Proposition::new(name)))
            }
            Tok::LParen => {
                let inner = self.implied()?;
                let close = self.column();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    Tok::End => Err(syntax(close, "unbalanced parenthesis: expected `)`")),
                    other => Err(syntax(close, format!("expected `)`, found {}", other.describe()))),
                }
            }
            Tok::End => Err(syntax(col, "dangling operator: expected a formula")),
            other => Err(syntax(col, format!("expected a formula, found {}", other.describe()))),
        }
    }
}

/// Parse the ASCII formula syntax.
///
/// Errors carry the 1-based column of the offending token; the end of input
/// sits one past the last character.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let formula = parser.implied()?;
    match parser.peek() {
        Tok::End => Ok(formula),
        Tok::RParen => Err(syntax(parser.column(), "unbalanced parenthesis: unexpected `)`")),
        other => Err(syntax(parser.column(), format!("unexpected {}", other.describe()))),
    }
}
