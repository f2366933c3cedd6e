//! Word problem for the free bounded lattice (Whitman's condition).
//!
//! In the free bounded lattice `top` is join-prime and `bot` is meet-prime,
//! so the usual recursive clauses extend to constants. Subproblems are
//! memoized on pairs of node indices.

use alloc::vec;
use alloc::vec::Vec;

use super::Term;

#[derive(Clone, Copy)]
enum Node<'a> {
    Var(&'a str),
    Top,
    Bot,
    Meet(usize, usize),
    Join(usize, usize),
}

fn flatten<'a>(t: &'a Term, nodes: &mut Vec<Node<'a>>) -> usize {
    let node = match t {
        Term::Var(x) => Node::Var(x),
        Term::Top => Node::Top,
        Term::Bot => Node::Bot,
        Term::Meet(l, r) => {
            let (l, r) = (flatten(l, nodes), flatten(r, nodes));
            Node::Meet(l, r)
        }
        Term::Join(l, r) => {
            let (l, r) = (flatten(l, nodes), flatten(r, nodes));
            Node::Join(l, r)
        }
    };
    nodes.push(node);
    nodes.len() - 1
}

struct Solver<'a> {
    left: Vec<Node<'a>>,
    right: Vec<Node<'a>>,
    memo: Vec<Option<bool>>,
}

impl Solver<'_> {
    fn leq(&mut self, i: usize, j: usize) -> bool {
        let key = i * self.right.len() + j;
        if let Some(b) = self.memo[key] {
            return b;
        }
        let b = self.compute(i, j);
        self.memo[key] = Some(b);
        b
    }

    fn compute(&mut self, i: usize, j: usize) -> bool {
        use Node::*;
        match (self.left[i], self.right[j]) {
            (Bot, _) | (_, Top) => true,
            (Join(a, b), _) => self.leq(a, j) && self.leq(b, j),
            (_, Meet(c, d)) => self.leq(i, c) && self.leq(i, d),
            (Var(x), Var(y)) => x == y,
            (Var(_) | Top, Join(c, d)) => self.leq(i, c) || self.leq(i, d),
            (Meet(a, b), Var(_) | Bot) => self.leq(a, j) || self.leq(b, j),
            (Meet(a, b), Join(c, d)) => {
                self.leq(a, j) || self.leq(b, j) || self.leq(i, c) || self.leq(i, d)
            }
            (Top, Var(_) | Bot) | (Var(_), Bot) => false,
        }
    }
}

/// Decides `t <= s` in the free bounded lattice over `vars(t, s)`.
pub fn free_lattice_leq(t: &Term, s: &Term) -> bool {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let i = flatten(t, &mut left);
    let j = flatten(s, &mut right);
    let memo = vec![None; left.len() * right.len()];
    let mut solver = Solver { left, right, memo };
    solver.leq(i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn leq(t: &str, s: &str) -> bool {
        free_lattice_leq(&parse_term(t).unwrap(), &parse_term(s).unwrap())
    }

    #[test]
    fn lattice_axioms_hold() {
        assert!(leq("x", "x v y"));
        assert!(leq("x ^ y", "x"));
        assert!(leq("x ^ (x v y)", "x"));
        assert!(leq("(x ^ y) v (x ^ z)", "x ^ (y v z)"));
    }

    #[test]
    fn distributivity_fails() {
        assert!(!leq("x ^ (y v z)", "(x ^ y) v (x ^ z)"));
        assert!(!leq("(x v y) ^ (x v z)", "x v (y ^ z)"));
    }

    #[test]
    fn constants() {
        assert!(leq("bot", "x"));
        assert!(leq("x", "top"));
        assert!(!leq("top", "x"));
        assert!(!leq("x", "bot"));
        assert!(!leq("top", "x v y"));
        assert!(leq("top", "x v top"));
        assert!(leq("x ^ bot", "y"));
        assert!(!leq("x ^ y", "bot"));
        assert!(leq("top ^ top", "top v x"));
        assert!(!leq("top", "bot"));
    }

    #[test]
    fn distinct_variables_incomparable() {
        assert!(!leq("x", "y"));
        assert!(!leq("x v y", "x"));
    }
}
