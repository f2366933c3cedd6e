//! Lattice terms over named variables.

mod parse;
mod whitman;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use parse::{parse_inclusion, parse_term, ParseError};
pub use whitman::free_lattice_leq;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Top,
    Bot,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::Meet(Box::new(l), Box::new(r))
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::Join(Box::new(l), Box::new(r))
    }

    /// Number of nodes of the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Top | Term::Bot => 1,
            Term::Meet(l, r) | Term::Join(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        vars([self])
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Top | Term::Bot => {}
            Term::Meet(l, r) | Term::Join(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// All subterms in preorder, the term itself first.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            if let Term::Meet(l, r) | Term::Join(l, r) = t {
                stack.push(r);
                stack.push(l);
            }
        }
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Join(..) => 0,
            Term::Meet(..) => 1,
            _ => 2,
        }
    }
}

/// Union of the variables occurring in `terms`.
pub fn vars<'a, I: IntoIterator<Item = &'a Term>>(terms: I) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for t in terms {
        t.collect_vars(&mut out);
    }
    out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Top => f.write_str("top"),
            Term::Bot => f.write_str("bot"),
            Term::Meet(l, r) | Term::Join(l, r) => {
                let (op, prec) = if let Term::Meet(..) = self { ("^", 1) } else { ("v", 0) };
                // left-associative: only the right operand needs parentheses at equal precedence
                if l.precedence() < prec {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " {op} ")?;
                if r.precedence() <= prec {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}

/// An inclusion `lhs <= rhs`, i.e. the equation `lhs v rhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    pub lhs: Term,
    pub rhs: Term,
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}
