use alloc::vec::Vec;

use super::Valuation;
use crate::lattice::{evaluate_tree, EvalTree};
use crate::points::PointSet;
use crate::space::Space;
use crate::space_lattice::{ClosedPair, SpaceLattice};
use crate::terms::Term;
use crate::Error;

/// Which clause introduced a tableau member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// A variable leaf.
    Variable,
    /// A `top` leaf.
    Constant,
    /// The point `f` of a join node `s1 v s2`.
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauEntry {
    pub point: usize,
    pub clause: Clause,
    /// Child indices (0 = left, 1 = right) from the root to the introducing node.
    pub path: Vec<u8>,
}

/// The finite set `T(f, t)`, with provenance of the first occurrence of each member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    entries: Vec<TableauEntry>,
}

impl Tableau {
    pub fn entries(&self) -> &[TableauEntry] {
        &self.entries
    }

    /// Members in increasing order.
    pub fn points(&self) -> Vec<usize> {
        let mut pts: Vec<usize> = self.entries.iter().map(|e| e.point).collect();
        pts.sort_unstable();
        pts
    }

    pub fn point_set(&self, len: usize) -> PointSet {
        PointSet::from_indices(len, self.entries.iter().map(|e| e.point))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.entries.iter().any(|e| e.point == p)
    }

    fn add(&mut self, point: usize, clause: Clause, path: &[u8]) {
        if !self.contains(point) {
            self.entries.push(TableauEntry { point, clause, path: path.to_vec() });
        }
    }
}

/// Builds `T(f, t)` for `f ∈ ⟦t⟧_v`.
///
/// In the join clause the left operand is tried before the right one, and
/// among eligible `g` the one with the smallest distance to `f`, then the
/// least index, is chosen.
pub fn tableau(lattice: &SpaceLattice<'_>, f: usize, t: &Term, valuation: &Valuation) -> Result<Tableau, Error> {
    let tree = evaluate_tree(lattice, t, valuation)?;
    tableau_from_tree(lattice.space(), f, t, &tree)
}

pub(crate) fn tableau_from_tree(
    space: &Space,
    f: usize,
    t: &Term,
    tree: &EvalTree<ClosedPair>,
) -> Result<Tableau, Error> {
    if !tree.value.body.contains(f) {
        return Err(Error::Precondition("the point does not belong to the value of the term"));
    }
    let mut out = Tableau { entries: Vec::new() };
    let mut path = Vec::new();
    build(space, f, t, tree, &mut out, &mut path);
    Ok(out)
}

fn build(space: &Space, f: usize, t: &Term, tree: &EvalTree<ClosedPair>, out: &mut Tableau, path: &mut Vec<u8>) {
    debug_assert!(tree.value.body.contains(f));
    match t {
        Term::Var(_) => out.add(f, Clause::Variable, path),
        Term::Top => out.add(f, Clause::Constant, path),
        Term::Bot => unreachable!("bot has an empty body"),
        Term::Meet(l, r) => {
            for (i, sub) in [l, r].into_iter().enumerate() {
                path.push(i as u8);
                build(space, f, sub, &tree.children[i], out, path);
                path.pop();
            }
        }
        Term::Join(l, r) => {
            out.add(f, Clause::Join, path);
            let (left, right) = (&tree.children[0].value, &tree.children[1].value);
            let bound = left.header.union(right.header);
            let (i, g) = [left, right]
                .into_iter()
                .enumerate()
                .find_map(|(i, side)| {
                    side.body
                        .iter()
                        .filter(|&g| space.dist(f, g).is_subset(bound))
                        .min_by_key(|&g| (space.dist(f, g).len(), g))
                        .map(|g| (i, g))
                })
                .expect("a point of a join is reached from one of its operands");
            path.push(i as u8);
            build(space, g, [l, r][i], &tree.children[i], out, path);
            path.pop();
        }
    }
}
