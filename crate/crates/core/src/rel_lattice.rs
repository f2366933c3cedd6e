//! Relational lattices `R(D, A)` in table form.
//!
//! A relation is a header `α ⊆ A` with a set of rows, each row a tuple of
//! value indices listed in increasing attribute order of the header.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::boolean::AttrSet;
use crate::lattice::Lattice;
use crate::points::PointSet;
use crate::space::FunctionSpace;
use crate::space_lattice::ClosedPair;
use crate::Error;

/// The ordered set `D` of cell values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSet {
    names: Vec<String>,
}

impl ValueSet {
    pub fn new<I, S>(names: I) -> Result<ValueSet, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(ValueSet { names })
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

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }
}

pub type Row = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub header: AttrSet,
    pub rows: BTreeSet<Row>,
}

/// Restriction of `row` (over `from`) to the attributes of `to ⊆ from`.
pub fn restrict(row: &[u32], from: AttrSet, to: AttrSet) -> Row {
    from.iter()
        .zip(row)
        .filter(|(a, _)| to.contains(*a))
        .map(|(_, &v)| v)
        .collect()
}

/// Restriction of a total function on `A` to `to`.
fn restrict_total(f: &[u32], to: AttrSet) -> Row {
    to.iter().map(|a| f[a]).collect()
}

impl Relation {
    pub fn new<I: IntoIterator<Item = Row>>(header: AttrSet, rows: I) -> Result<Relation, Error> {
        let mut set = BTreeSet::new();
        for row in rows {
            if row.len() != header.len() {
                return Err(Error::RowWidth { expected: header.len(), found: row.len() });
            }
            if !set.insert(row) {
                return Err(Error::DuplicateRow);
            }
        }
        Ok(Relation { header, rows: set })
    }

    /// Does the total function `f` on `A` belong to the cylinder of this relation?
    pub fn contains_function(&self, f: &[u32]) -> bool {
        self.rows.contains(&restrict_total(f, self.header))
    }

    pub fn project(&self, to: AttrSet) -> BTreeSet<Row> {
        self.rows.iter().map(|r| restrict(r, self.header, to)).collect()
    }
}

/// `R(D, A)` for `|A| = attrs`, `|D| = vals`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelLattice {
    pub attrs: usize,
    pub vals: usize,
}

impl RelLattice {
    pub fn new(attrs: usize, vals: usize) -> Self {
        RelLattice { attrs, vals }
    }

    /// Natural join: rows on `α₁ ∪ α₂` whose restrictions lie in both tables.
    pub fn natural_join(&self, r1: &Relation, r2: &Relation) -> Relation {
        let header = r1.header.union(r2.header);
        let common = r1.header.intersection(r2.header);
        let mut by_key: BTreeMap<Row, Vec<&Row>> = BTreeMap::new();
        for row in &r2.rows {
            by_key.entry(restrict(row, r2.header, common)).or_default().push(row);
        }
        let mut rows = BTreeSet::new();
        for a in &r1.rows {
            let Some(matches) = by_key.get(&restrict(a, r1.header, common)) else {
                continue;
            };
            for b in matches {
                let mut merged = Vec::with_capacity(header.len());
                let (mut ia, mut ib) = (r1.header.iter().zip(a.iter()).peekable(), r2.header.iter().zip(b.iter()).peekable());
                for attr in header.iter() {
                    let mut v = None;
                    if ia.peek().map(|(x, _)| *x) == Some(attr) {
                        v = ia.next().map(|(_, &v)| v);
                    }
                    if ib.peek().map(|(x, _)| *x) == Some(attr) {
                        v = ib.next().map(|(_, &v)| v);
                    }
                    merged.push(v.expect("attribute of the joined header"));
                }
                rows.insert(merged);
            }
        }
        Relation { header, rows }
    }

    /// Inner union: both tables projected onto `α₁ ∩ α₂`.
    pub fn inner_union(&self, r1: &Relation, r2: &Relation) -> Relation {
        let header = r1.header.intersection(r2.header);
        let mut rows = r1.project(header);
        rows.extend(r2.project(header));
        Relation { header, rows }
    }

    /// `α₂ ⊆ α₁` and `T₁` projected onto `α₂` lies in `T₂`.
    pub fn rel_leq(&self, r1: &Relation, r2: &Relation) -> bool {
        r2.header.is_subset(r1.header) && r1.project(r2.header).is_subset(&r2.rows)
    }

    pub fn is_element(&self, r: &Relation) -> bool {
        r.header.is_subset(AttrSet::full(self.attrs))
            && r.rows
                .iter()
                .all(|row| row.len() == r.header.len() && row.iter().all(|&v| (v as usize) < self.vals))
    }

    /// Closed pair `(A \ α, cylinder of T)` over the Hamming space `D^A`.
    pub fn to_closed_pair(&self, r: &Relation, space: &FunctionSpace) -> ClosedPair {
        debug_assert_eq!((space.attrs(), space.vals()), (self.attrs, self.vals));
        let body = PointSet::from_indices(
            space.len(),
            (0..space.len()).filter(|&i| r.contains_function(space.point(i))),
        );
        ClosedPair::new(r.header.complement(self.attrs), body)
    }

    /// Inverse of [`to_closed_pair`](Self::to_closed_pair): the header is
    /// complemented and the body projected onto it.
    pub fn from_closed_pair(&self, p: &ClosedPair, space: &FunctionSpace) -> Relation {
        let header = p.header.complement(self.attrs);
        let rows = p.body.iter().map(|i| restrict_total(space.point(i), header)).collect();
        Relation { header, rows }
    }

    /// `|R(D, A)| = Σ_α 2^(|D|^|α|)`, or `None` on overflow.
    pub fn element_count(&self) -> Option<u128> {
        let mut total: u128 = 0;
        for header in AttrSet::full(self.attrs).subsets() {
            let tuples = (self.vals as u128).checked_pow(header.len() as u32)?;
            if tuples >= 127 {
                return None;
            }
            total = total.checked_add(1u128 << tuples)?;
        }
        Some(total)
    }

    /// All tuples over `header`, lexicographically.
    pub fn tuples(&self, header: AttrSet) -> Vec<Row> {
        let width = header.len();
        let count = self.vals.pow(width as u32);
        (0..count)
            .map(|mut idx| {
                let mut row = alloc::vec![0u32; width];
                for slot in row.iter_mut().rev() {
                    *slot = (idx % self.vals) as u32;
                    idx /= self.vals;
                }
                row
            })
            .collect()
    }

    /// Every relation, headers in increasing bitmask order, then row subsets in
    /// increasing bitmask order over the lexicographic tuple list.
    pub fn enumerate(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for header in AttrSet::full(self.attrs).subsets() {
            let tuples = self.tuples(header);
            assert!(tuples.len() < 32, "too many tuples to enumerate");
            for mask in 0u32..(1u32 << tuples.len()) {
                let rows = tuples
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, t)| t.clone())
                    .collect();
                out.push(Relation { header, rows });
            }
        }
        out
    }
}

impl Lattice for RelLattice {
    type Elem = Relation;

    fn top(&self) -> Relation {
        Relation {
            header: AttrSet::EMPTY,
            rows: core::iter::once(Row::new()).collect(),
        }
    }

    fn bottom(&self) -> Relation {
        Relation {
            header: AttrSet::full(self.attrs),
            rows: BTreeSet::new(),
        }
    }

    fn meet(&self, a: &Relation, b: &Relation) -> Relation {
        self.natural_join(a, b)
    }

    fn join(&self, a: &Relation, b: &Relation) -> Relation {
        self.inner_union(a, b)
    }

    fn leq(&self, a: &Relation, b: &Relation) -> bool {
        self.rel_leq(a, b)
    }
}
