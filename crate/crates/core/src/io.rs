//! Text syntax for formulas and the `#`-prefixed run output.
//!
//! Input is a sequence of whitespace-separated tokens; a line whose first
//! non-blank character is `#` is a comment. Each token is one of
//!
//! - `abc`: the clause a ∨ b ∨ c; `-` negates the following variable and
//!   `&name;` is a single variable;
//! - `lhs->rhs`: one clause, the lhs literals negated plus the rhs literals;
//! - `lhs=rhs`: the two clauses of `lhs->rhs` and `rhs->lhs`;
//! - `!`: the empty clause.
//!
//! Output puts one clause per line. Every other line starts with `#`:
//! `# text` for tracing, `#T=n` for self-reported time, `#M=n` for
//! self-reported memory.

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::logic::{Clause, Formula, Literal, Var};

/// Token spelling the empty clause.
pub const EMPTY_CLAUSE_TOKEN: &str = "!";

const RESERVED: &[char] = &['-', '&', ';', '!', '=', '>', '#'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {token} `{text}`: {kind}")]
pub struct ParseError {
    /// 1-based position of the offending token in the input.
    pub token: usize,
    pub text: String,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyToken,
    UnterminatedEntity,
    EmptyEntity,
    /// A `-` not followed by a variable.
    StrayNegation,
    /// `->` or `=` with nothing on one side, or used twice.
    MalformedConnective,
    ReservedCharacter(char),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::EmptyToken => f.write_str("empty clause expression"),
            ParseErrorKind::UnterminatedEntity => f.write_str("entity is missing its `;`"),
            ParseErrorKind::EmptyEntity => f.write_str("entity has an empty name"),
            ParseErrorKind::StrayNegation => f.write_str("`-` is not followed by a variable"),
            ParseErrorKind::MalformedConnective => {
                f.write_str("`->` or `=` needs exactly one non-empty side each")
            }
            ParseErrorKind::ReservedCharacter(c) => write!(f, "`{c}` cannot be a variable"),
        }
    }
}

/// Parses every token of `src` into a formula.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut formula = Formula::new();
    for (i, token) in tokens(src).enumerate() {
        let fail = |kind| ParseError {
            token: i + 1,
            text: token.to_owned(),
            kind,
        };
        for clause in parse_token(token).map_err(fail)? {
            formula.insert(clause);
        }
    }
    Ok(formula)
}

/// Parses a concatenation of variables such as `bd` or `&x;&y;`, the way
/// variable lists are given on the command line. Negations are rejected.
pub fn parse_variables(src: &str) -> Result<Vec<Var>, ParseError> {
    let mut vars = Vec::new();
    for (i, token) in src.split_whitespace().enumerate() {
        let fail = |kind| ParseError {
            token: i + 1,
            text: token.to_owned(),
            kind,
        };
        for lit in parse_literals(token).map_err(fail)? {
            if !lit.is_positive() {
                return Err(fail(ParseErrorKind::ReservedCharacter('-')));
            }
            vars.push(lit.var());
        }
    }
    Ok(vars)
}

fn tokens(src: &str) -> impl Iterator<Item = &str> {
    src.lines()
        .filter(|line| !line.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
}

fn parse_token(token: &str) -> Result<Vec<Clause>, ParseErrorKind> {
    if token == EMPTY_CLAUSE_TOKEN {
        return Ok(vec![Clause::empty()]);
    }
    if let Some((lhs, rhs)) = split_once_checked(token, "->")? {
        let (lhs, rhs) = (parse_literals(lhs)?, parse_literals(rhs)?);
        return Ok(vec![implication(&lhs, &rhs)]);
    }
    if let Some((lhs, rhs)) = split_once_checked(token, "=")? {
        let (lhs, rhs) = (parse_literals(lhs)?, parse_literals(rhs)?);
        return Ok(vec![implication(&lhs, &rhs), implication(&rhs, &lhs)]);
    }
    let lits = parse_literals(token)?;
    if lits.is_empty() {
        return Err(ParseErrorKind::EmptyToken);
    }
    Ok(vec![Clause::new(lits)])
}

fn split_once_checked<'a>(
    token: &'a str,
    connective: &str,
) -> Result<Option<(&'a str, &'a str)>, ParseErrorKind> {
    let Some((lhs, rhs)) = token.split_once(connective) else {
        return Ok(None);
    };
    if lhs.is_empty() || rhs.is_empty() || rhs.contains("->") || rhs.contains('=') {
        return Err(ParseErrorKind::MalformedConnective);
    }
    if connective == "->" && lhs.contains('=') {
        return Err(ParseErrorKind::MalformedConnective);
    }
    Ok(Some((lhs, rhs)))
}

fn implication(lhs: &[Literal], rhs: &[Literal]) -> Clause {
    lhs.iter()
        .map(|&l| l.negate())
        .chain(rhs.iter().copied())
        .collect()
}

fn parse_literals(text: &str) -> Result<Vec<Literal>, ParseErrorKind> {
    let mut lits = Vec::new();
    let mut chars = text.chars().peekable();
    let mut positive = true;
    while let Some(c) = chars.next() {
        let var = match c {
            '-' if positive => {
                positive = false;
                continue;
            }
            '-' => return Err(ParseErrorKind::StrayNegation),
            '&' => {
                let mut name = String::new();
                loop {
                    match chars.next() {
                        Some(';') => break,
                        Some(ch) => name.push(ch),
                        None => return Err(ParseErrorKind::UnterminatedEntity),
                    }
                }
                if name.is_empty() {
                    return Err(ParseErrorKind::EmptyEntity);
                }
                Var::entity(&name)
            }
            c if RESERVED.contains(&c) || c.is_whitespace() => {
                return Err(ParseErrorKind::ReservedCharacter(c))
            }
            c => Var::from_char(c),
        };
        lits.push(Literal::new(var, positive));
        positive = true;
    }
    if !positive {
        return Err(ParseErrorKind::StrayNegation);
    }
    Ok(lits)
}

/// One clause per line in canonical order, no trailing newline.
pub fn serialize_formula(formula: &Formula) -> String {
    formula
        .clauses()
        .map(Clause::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

/// A line of run output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceLine<'a> {
    /// Free text, written after `# `. Multi-line text becomes several lines.
    Trace(&'a str),
    Time(u64),
    Memory(u64),
    Result(&'a Clause),
}

pub fn emit_trace(sink: &mut impl Write, line: TraceLine<'_>) -> io::Result<()> {
    match line {
        TraceLine::Trace(text) => {
            for part in text.split('\n') {
                writeln!(sink, "# {part}")?;
            }
            Ok(())
        }
        TraceLine::Time(n) => writeln!(sink, "#T={n}"),
        TraceLine::Memory(n) => writeln!(sink, "#M={n}"),
        TraceLine::Result(clause) => writeln!(sink, "{clause}"),
    }
}
