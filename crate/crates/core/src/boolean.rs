//! Finite powerset algebras `P(A)` and their sub-Boolean-algebras.
//!
//! Attribute sets are bitmasks over a [`Universe`] whose order is fixed at
//! creation. A sub-Boolean-algebra is stored as the partition of the
//! universe into its atoms; members are exactly the unions of atoms.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// Maximum number of attributes a [`Universe`] can hold.
pub const MAX_ATTRS: usize = 64;

/// A set of attributes, one bit per attribute position of a universe.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttrSet(pub u64);

impl AttrSet {
    pub const EMPTY: AttrSet = AttrSet(0);

    /// The full set `{0, .., len - 1}`.
    pub fn full(len: usize) -> AttrSet {
        debug_assert!(len <= MAX_ATTRS);
        if len == MAX_ATTRS {
            AttrSet(u64::MAX)
        } else {
            AttrSet((1u64 << len) - 1)
        }
    }

    pub fn singleton(i: usize) -> AttrSet {
        AttrSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> AttrSet {
        it.into_iter().fold(AttrSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn with(self, i: usize) -> AttrSet {
        AttrSet(self.0 | (1u64 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: AttrSet) -> AttrSet {
        AttrSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AttrSet) -> AttrSet {
        AttrSet(self.0 & other.0)
    }

    pub fn difference(self, other: AttrSet) -> AttrSet {
        AttrSet(self.0 & !other.0)
    }

    /// Complement relative to a universe of `len` attributes.
    pub fn complement(self, len: usize) -> AttrSet {
        AttrSet::full(len).difference(self)
    }

    pub fn is_subset(self, other: AttrSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: AttrSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, in increasing numeric order starting at the empty set.
    pub fn subsets(self) -> impl Iterator<Item = AttrSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(AttrSet(cur))
        })
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The ordered set `A` of attribute names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Universe, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_ATTRS {
            return Err(Error::TooManyAttributes(names.len()));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(Universe { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn full(&self) -> AttrSet {
        AttrSet::full(self.len())
    }

    /// Attribute set from names; unknown names are an error.
    pub fn subset<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<AttrSet, Error> {
        let mut out = AttrSet::EMPTY;
        for n in names {
            let i = self
                .index_of(n)
                .ok_or_else(|| Error::UnknownName(String::from(n)))?;
            out = out.with(i);
        }
        Ok(out)
    }
}

/// A sub-Boolean-algebra of `P(A)`, presented by its atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanSubalgebra {
    universe_len: usize,
    /// Disjoint nonempty blocks covering the universe, ordered by least member.
    atoms: Vec<AttrSet>,
}

impl BooleanSubalgebra {
    /// Builds an algebra from an explicit partition; blocks must be disjoint,
    /// nonempty and cover `{0, .., universe_len - 1}`.
    pub fn from_atoms(universe_len: usize, mut atoms: Vec<AttrSet>) -> Result<Self, Error> {
        let mut seen = AttrSet::EMPTY;
        for &b in &atoms {
            if b.is_empty() || !b.is_disjoint(seen) || !b.is_subset(AttrSet::full(universe_len)) {
                return Err(Error::NotAPartition);
            }
            seen = seen.union(b);
        }
        if seen != AttrSet::full(universe_len) {
            return Err(Error::NotAPartition);
        }
        atoms.sort_by_key(|b| b.first());
        Ok(BooleanSubalgebra { universe_len, atoms })
    }

    /// The whole powerset: every attribute is an atom.
    pub fn discrete(universe_len: usize) -> Self {
        BooleanSubalgebra {
            universe_len,
            atoms: (0..universe_len).map(AttrSet::singleton).collect(),
        }
    }

    /// The least subalgebra containing every generator, by partition refinement.
    pub fn generated<I: IntoIterator<Item = AttrSet>>(universe_len: usize, generators: I) -> Self {
        let full = AttrSet::full(universe_len);
        let mut blocks: Vec<AttrSet> = if universe_len == 0 { Vec::new() } else { alloc::vec![full] };
        for gen in generators {
            let gen = gen.intersection(full);
            let mut refined = Vec::with_capacity(blocks.len() * 2);
            for b in blocks {
                let inside = b.intersection(gen);
                let outside = b.difference(gen);
                if !inside.is_empty() {
                    refined.push(inside);
                }
                if !outside.is_empty() {
                    refined.push(outside);
                }
            }
            blocks = refined;
        }
        blocks.sort_by_key(|b| b.first());
        BooleanSubalgebra { universe_len, atoms: blocks }
    }

    pub fn universe_len(&self) -> usize {
        self.universe_len
    }

    pub fn atoms(&self) -> &[AttrSet] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// `alpha` is a union of atoms.
    pub fn contains(&self, alpha: AttrSet) -> bool {
        alpha.is_subset(AttrSet::full(self.universe_len))
            && self
                .atoms
                .iter()
                .all(|&b| b.is_subset(alpha) || b.is_disjoint(alpha))
    }

    /// The set of atom indices whose union is `alpha`.
    pub fn quotient(&self, alpha: AttrSet) -> Result<AttrSet, Error> {
        if !self.contains(alpha) {
            return Err(Error::NotInAlgebra(alpha));
        }
        Ok(AttrSet::from_indices(
            self.atoms
                .iter()
                .enumerate()
                .filter(|(_, b)| b.is_subset(alpha))
                .map(|(i, _)| i),
        ))
    }

    /// The embedding `i : P(At(B)) -> P(A)`.
    pub fn embed(&self, beta: AttrSet) -> AttrSet {
        beta.iter()
            .filter(|&i| i < self.atoms.len())
            .fold(AttrSet::EMPTY, |acc, i| acc.union(self.atoms[i]))
    }

    /// Index of the atom containing attribute `a`.
    pub fn atom_of(&self, a: usize) -> Option<usize> {
        self.atoms.iter().position(|b| b.contains(a))
    }
}

/// Upper bound `2^(n(n-1)/2 + m)` on the atoms of an algebra generated by the
/// pairwise distances of `n` points and `m` headers. `None` if it overflows `u128`.
pub fn atom_count_bound(n: usize, m: usize) -> Option<u128> {
    let exp = (n as u128)
        .checked_mul(n.saturating_sub(1) as u128)?
        .checked_div(2)?
        .checked_add(m as u128)?;
    if exp >= 128 {
        None
    } else {
        Some(1u128 << exp)
    }
}
