//! Propositional-formula language: abstract syntax, parser, printer.
//!
//! Grammar (whitespace insignificant, all binary operators left-associative,
//! precedence `!` > `&` > `|` > `^`):
//!
//! ```text
//! formula := xor
//! xor     := or  ( '^' or  )*
//! or      := and ( '|' and )*
//! and     := unary ( '&' unary )*
//! unary   := '!' unary | atom | '(' formula ')'
//! atom    := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Exclusive disjunction is a first-class connective: the valuation
//! engines give it its own rule rather than desugaring it, because the
//! partial semantics can assign `P1 ^ P2` a value even when the atoms have
//! none.

use std::fmt;

/// Abstract syntax tree over named atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn parse(text: &str) -> Result<Formula, ParseError> {
        let mut p = Parser::new(text);
        let f = p.formula()?;
        p.expect_end()?;
        Ok(f)
    }

    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn xor(l: Formula, r: Formula) -> Formula {
        Formula::Xor(Box::new(l), Box::new(r))
    }

    /// Atom names in first-occurrence order, deduplicated.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Xor(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }
}

/// Canonical fully-parenthesized rendering; `parse(format(f))` returns a
/// structurally equal tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Not(x) => write!(f, "(!{x})"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
            Formula::Xor(l, r) => write!(f, "({l} ^ {r})"),
        }
    }
}

/// Syntax error with the byte offset of the offending input and the set of
/// tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: found {}, expected {}",
            self.offset,
            self.found,
            self.expected.join(" or ")
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let found = match self.peek_char() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        };
        ParseError {
            offset: self.pos,
            expected,
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek_char() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.or_level()?;
        while self.eat('^') {
            let rhs = self.or_level()?;
            lhs = Formula::xor(lhs, rhs);
        }
        Ok(lhs)
    }

    fn or_level(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and_level()?;
        while self.eat('|') {
            let rhs = self.and_level()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_level(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat('&') {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        match self.peek_char() {
            Some('!') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.formula()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.error(vec!["`)`"]));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => Ok(Formula::Atom(self.ident())),
            _ => Err(self.error(vec!["atom", "`!`", "`(`"])),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek_char() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.text[start..self.pos].to_string()
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.error(vec!["`&`", "`|`", "`^`", "end of input"]));
        }
        Ok(())
    }
}
