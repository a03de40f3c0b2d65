//! Clause file syntax.
//!
//! ```text
//! file     := (clause | comment)*
//! clause   := literal ("|" literal)* "."
//! literal  := ["~"] lident [ "(" term ("," term)* ")" ]
//! term     := uident | lident [ "(" term ("," term)* ")" ]
//! comment  := "#" to end of line
//! ```
//!
//! Identifiers starting with an uppercase letter are variables; everything
//! else (predicates, functions, constants) starts lowercase. Whitespace,
//! including newlines, is insignificant, so several clauses may share a line
//! and one clause may span several.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::clause::Clause;
use crate::subst::Substitution;
use crate::term::{sym, Atom, Literal, Sign, Symbol, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Position {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Lexical(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("{kind} {name} used with arity {now}, but earlier with arity {first}")]
    ArityMismatch { kind: SymbolKind, name: Symbol, first: usize, now: usize },
    #[error("empty clause")]
    EmptyClause,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub pos: Position,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Predicate,
    Function,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolKind::Predicate => "predicate",
            SymbolKind::Function => "function",
        })
    }
}

/// Arities of every predicate and function symbol seen so far.
///
/// Predicates and functions are separate namespaces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    arities: BTreeMap<(SymbolKind, Symbol), usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `name/arity`, failing with `(first, now)` on a conflict.
    pub fn declare(&mut self, kind: SymbolKind, name: &Symbol, arity: usize) -> Result<(), (usize, usize)> {
        match self.arities.get(&(kind, name.clone())) {
            Some(&first) if first != arity => Err((first, arity)),
            Some(_) => Ok(()),
            None => {
                self.arities.insert((kind, name.clone()), arity);
                Ok(())
            }
        }
    }

    pub fn arity(&self, kind: SymbolKind, name: &str) -> Option<usize> {
        self.arities.get(&(kind, sym(name))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolKind, &Symbol, usize)> {
        self.arities.iter().map(|((k, n), a)| (*k, n, *a))
    }

    pub fn len(&self) -> usize {
        self.arities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }

    fn observe_term(&mut self, t: &Term) -> Result<(), ParseErrorKind> {
        if let Term::App(f, args) = t {
            self.declare(SymbolKind::Function, f, args.len()).map_err(|(first, now)| {
                ParseErrorKind::ArityMismatch { kind: SymbolKind::Function, name: f.clone(), first, now }
            })?;
            args.iter().try_for_each(|a| self.observe_term(a))?;
        }
        Ok(())
    }

    /// Declares every symbol in `c`.
    pub fn observe_clause(&mut self, c: &Clause) -> Result<(), ParseErrorKind> {
        for l in c.literals() {
            let a = &l.atom;
            self.declare(SymbolKind::Predicate, &a.pred, a.arity()).map_err(|(first, now)| {
                ParseErrorKind::ArityMismatch { kind: SymbolKind::Predicate, name: a.pred.clone(), first, now }
            })?;
            a.args.iter().try_for_each(|t| self.observe_term(t))?;
        }
        Ok(())
    }
}

/// A parsed clause file.
#[derive(Clone, Debug, Default)]
pub struct ClauseFile {
    pub clauses: Vec<Clause>,
    /// Start position of each clause, parallel to `clauses`.
    pub positions: Vec<Position>,
    pub signature: Signature,
}

impl PartialEq for ClauseFile {
    /// Positions are diagnostics only and do not take part in equality.
    fn eq(&self, other: &Self) -> bool {
        self.clauses == other.clauses
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Upper(String),
    Lower(String),
    LParen,
    RParen,
    Comma,
    Bar,
    Tilde,
    Dot,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Upper(s) | Tok::Lower(s) => write!(f, "{s:?}"),
            Tok::LParen => f.write_str("\"(\""),
            Tok::RParen => f.write_str("\")\""),
            Tok::Comma => f.write_str("\",\""),
            Tok::Bar => f.write_str("\"|\""),
            Tok::Tilde => f.write_str("\"~\""),
            Tok::Dot => f.write_str("\".\""),
            Tok::Arrow => f.write_str("\"->\""),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Position)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let pos = Position { line, col };
        let bump = |line: &mut usize, col: &mut usize, c: char| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            bump(&mut line, &mut col, c);
            continue;
        }
        if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                chars.next();
                bump(&mut line, &mut col, d);
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut ident = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    ident.push(d);
                    chars.next();
                    bump(&mut line, &mut col, d);
                } else {
                    break;
                }
            }
            let tok = if c.is_ascii_uppercase() { Tok::Upper(ident) } else { Tok::Lower(ident) };
            out.push((tok, pos));
            continue;
        }
        chars.next();
        bump(&mut line, &mut col, c);
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '|' => Tok::Bar,
            '~' => Tok::Tilde,
            '.' => Tok::Dot,
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                bump(&mut line, &mut col, '>');
                Tok::Arrow
            }
            other => return Err(ParseError { pos, kind: ParseErrorKind::Lexical(other) }),
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Position { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Position)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Position {
        self.toks[self.at].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError { pos: self.pos(), kind: ParseErrorKind::Unexpected { expected, found: self.peek().to_string() } }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        if *self.peek() != Tok::LParen {
            return Ok(Vec::new());
        }
        self.next();
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.next();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "\",\" or \")\"")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Upper(name) => {
                self.next();
                Ok(Term::Var(sym(&name)))
            }
            Tok::Lower(name) => {
                self.next();
                Ok(Term::App(sym(&name), self.args()?))
            }
            _ => Err(self.error("a term")),
        }
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let sign = if *self.peek() == Tok::Tilde {
            self.next();
            Sign::Negative
        } else {
            Sign::Positive
        };
        let Tok::Lower(pred) = self.peek().clone() else {
            return Err(self.error("a predicate (lowercase identifier)"));
        };
        self.next();
        let atom = Atom { pred: sym(&pred), args: self.args()? };
        Ok(Literal { sign, atom })
    }

    /// Literals separated by `|`, without the terminating dot.
    fn clause_body(&mut self) -> Result<Clause, ParseError> {
        if matches!(self.peek(), Tok::Dot) {
            return Err(ParseError { pos: self.pos(), kind: ParseErrorKind::EmptyClause });
        }
        let mut lits = vec![self.literal()?];
        while *self.peek() == Tok::Bar {
            self.next();
            lits.push(self.literal()?);
        }
        Ok(Clause::new(lits))
    }
}

/// Parses a whole clause file, checking that every symbol keeps one arity.
pub fn parse_clause_file(text: &str) -> Result<ClauseFile, ParseError> {
    let mut p = Parser::new(text)?;
    let mut file = ClauseFile::default();
    while *p.peek() != Tok::Eof {
        let start = p.pos();
        let clause = p.clause_body()?;
        p.expect(Tok::Dot, "\"|\" or \".\"")?;
        file.signature.observe_clause(&clause).map_err(|kind| ParseError { pos: start, kind })?;
        file.clauses.push(clause);
        file.positions.push(start);
    }
    Ok(file)
}

pub fn parse_clauses(text: &str) -> Result<Vec<Clause>, ParseError> {
    parse_clause_file(text).map(|f| f.clauses)
}

/// Parses exactly one clause; the final `.` is optional.
pub fn parse_clause(text: &str) -> Result<Clause, ParseError> {
    let mut p = Parser::new(text)?;
    let start = p.pos();
    let clause = p.clause_body()?;
    if *p.peek() == Tok::Dot {
        p.next();
    }
    if *p.peek() != Tok::Eof {
        return Err(p.error("end of clause"));
    }
    Signature::new().observe_clause(&clause).map_err(|kind| ParseError { pos: start, kind })?;
    Ok(clause)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("end of term"));
    }
    Ok(t)
}

/// Parses `X->t, Y->u` (possibly empty) into a substitution.
pub fn parse_bindings(text: &str) -> Result<Substitution, ParseError> {
    let mut p = Parser::new(text)?;
    let mut bindings = Vec::new();
    while *p.peek() != Tok::Eof {
        if !bindings.is_empty() {
            p.expect(Tok::Comma, "\",\"")?;
        }
        let Tok::Upper(var) = p.peek().clone() else {
            return Err(p.error("a variable"));
        };
        p.next();
        p.expect(Tok::Arrow, "\"->\"")?;
        bindings.push((sym(&var), p.term()?));
    }
    Ok(Substitution::from_bindings(bindings))
}

/// Canonical text of a clause, terminated by a dot.
pub fn print_clause(c: &Clause) -> String {
    format!("{c}.")
}

/// One clause per line.
pub fn print_clause_file(clauses: &[Clause]) -> String {
    clauses.iter().map(|c| print_clause(c) + "\n").collect()
}
