//! A minimal lattice interface, term evaluation and the lattice-law checker.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::terms::Term;
use crate::Error;

pub trait Lattice {
    type Elem: Clone + PartialEq + core::fmt::Debug;

    fn top(&self) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

/// Value of `t` under `valuation`.
pub fn evaluate<L: Lattice>(
    lattice: &L,
    t: &Term,
    valuation: &BTreeMap<String, L::Elem>,
) -> Result<L::Elem, Error> {
    Ok(match t {
        Term::Var(x) => valuation
            .get(x)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(x.clone()))?,
        Term::Top => lattice.top(),
        Term::Bot => lattice.bottom(),
        Term::Meet(l, r) => lattice.meet(&evaluate(lattice, l, valuation)?, &evaluate(lattice, r, valuation)?),
        Term::Join(l, r) => lattice.join(&evaluate(lattice, l, valuation)?, &evaluate(lattice, r, valuation)?),
    })
}

/// The value of every subterm, shaped like the term itself.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalTree<E> {
    pub value: E,
    pub children: Vec<EvalTree<E>>,
}

impl<E> EvalTree<E> {
    /// Values in the same preorder as [`Term::subterms`].
    pub fn preorder(&self) -> Vec<&E> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(n) = stack.pop() {
            out.push(&n.value);
            for c in n.children.iter().rev() {
                stack.push(c);
            }
        }
        out
    }
}

pub fn evaluate_tree<L: Lattice>(
    lattice: &L,
    t: &Term,
    valuation: &BTreeMap<String, L::Elem>,
) -> Result<EvalTree<L::Elem>, Error> {
    Ok(match t {
        Term::Var(_) | Term::Top | Term::Bot => EvalTree {
            value: evaluate(lattice, t, valuation)?,
            children: Vec::new(),
        },
        Term::Meet(l, r) | Term::Join(l, r) => {
            let l = evaluate_tree(lattice, l, valuation)?;
            let r = evaluate_tree(lattice, r, valuation)?;
            let value = if let Term::Meet(..) = t {
                lattice.meet(&l.value, &r.value)
            } else {
                lattice.join(&l.value, &r.value)
            };
            EvalTree { value, children: alloc::vec![l, r] }
        }
    })
}

/// Violation counts for the lattice laws over a set of elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub triples: u64,
    pub associativity: u64,
    pub commutativity: u64,
    pub idempotence: u64,
    pub absorption: u64,
    /// `a <= b` disagrees with `a v b = b` or with `a ^ b = a`.
    pub order: u64,
    pub bounds: u64,
}

impl LawReport {
    pub fn violations(&self) -> u64 {
        self.associativity + self.commutativity + self.idempotence + self.absorption + self.order + self.bounds
    }

    pub fn laws(&self) -> [(&'static str, u64); 6] {
        [
            ("associativity", self.associativity),
            ("commutativity", self.commutativity),
            ("idempotence", self.idempotence),
            ("absorption", self.absorption),
            ("order", self.order),
            ("bounds", self.bounds),
        ]
    }
}

/// Checks the lattice laws on all pairs and triples of `elems`.
pub fn check_laws<L: Lattice>(lattice: &L, elems: &[L::Elem]) -> LawReport {
    let mut r = LawReport::default();
    let (top, bot) = (lattice.top(), lattice.bottom());
    for a in elems {
        if lattice.meet(a, a) != *a || lattice.join(a, a) != *a {
            r.idempotence += 1;
        }
        if !lattice.leq(&bot, a) || !lattice.leq(a, &top) {
            r.bounds += 1;
        }
        for b in elems {
            let (m, j) = (lattice.meet(a, b), lattice.join(a, b));
            if m != lattice.meet(b, a) || j != lattice.join(b, a) {
                r.commutativity += 1;
            }
            // a ^ (b v a) = a and a v (b ^ a) = a
            if lattice.meet(a, &lattice.join(b, a)) != *a || lattice.join(a, &lattice.meet(b, a)) != *a {
                r.absorption += 1;
            }
            let le = lattice.leq(a, b);
            if le != (j == *b) || le != (m == *a) {
                r.order += 1;
            }
            for c in elems {
                r.triples += 1;
                if lattice.meet(&m, c) != lattice.meet(a, &lattice.meet(b, c))
                    || lattice.join(&j, c) != lattice.join(a, &lattice.join(b, c))
                {
                    r.associativity += 1;
                }
            }
        }
    }
    r
}
