//! Recursive-descent parser for lattice terms.
//!
//! ```text
//! term  := join
//! join  := meet { "v" meet }
//! meet  := atom { "^" atom }
//! atom  := ident | "top" | "bot" | "(" term ")"
//! ident := [a-zA-Z_][a-zA-Z0-9_]*
//! ```
//!
//! `v`, `top` and `bot` are reserved and cannot name variables.

use alloc::string::String;
use alloc::vec::Vec;

use super::{Inclusion, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Meet,
    Join,
    Top,
    Bot,
    LParen,
    RParen,
    Leq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => alloc::format!("identifier `{s}`"),
            Tok::Meet => "`^`".into(),
            Tok::Join => "`v`".into(),
            Tok::Top => "`top`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Leq => "`<=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            match ident.as_str() {
                "v" => Tok::Join,
                "top" => Tok::Top,
                "bot" => Tok::Bot,
                _ => Tok::Ident(ident),
            }
        } else {
            chars.next();
            column += 1;
            match c {
                '^' => Tok::Meet,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '<' if chars.peek() == Some(&'=') => {
                    chars.next();
                    column += 1;
                    Tok::Leq
                }
                _ => {
                    return Err(ParseError {
                        line: l,
                        column: col,
                        message: alloc::format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Lexed { tok, line: l, column: col });
    }
    out.push(Lexed { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let at = &self.toks[self.pos];
        ParseError {
            line: at.line,
            column: at.column,
            message: alloc::format!("expected {expected}, found {}", at.tok.describe()),
        }
    }

    fn join(&mut self) -> Result<Term, ParseError> {
        let mut t = self.meet()?;
        while *self.peek() == Tok::Join {
            self.bump();
            t = Term::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Meet {
            self.bump();
            t = Term::meet(t, self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(x) => Ok(Term::Var(x)),
                _ => unreachable!(),
            },
            Tok::Top => {
                self.bump();
                Ok(Term::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Term::Bot)
            }
            Tok::LParen => {
                self.bump();
                let t = self.join()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(t)
            }
            _ => Err(self.error("a variable, `top`, `bot` or `(`")),
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let t = p.join()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses `t <= s`.
pub fn parse_inclusion(src: &str) -> Result<Inclusion, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let lhs = p.join()?;
    if *p.peek() != Tok::Leq {
        return Err(p.error("`<=`"));
    }
    p.bump();
    let rhs = p.join()?;
    p.expect_eof()?;
    Ok(Inclusion { lhs, rhs })
}

impl core::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

impl core::str::FromStr for Inclusion {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_inclusion(s)
    }
}
