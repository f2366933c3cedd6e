//! The lattice `L(X, δ)` of closed pairs `(α, Z)` of a space, where `Z` is
//! `α`-closed, ordered by componentwise inclusion.

use alloc::vec::Vec;

use crate::boolean::{AttrSet, BooleanSubalgebra};
use crate::lattice::Lattice;
use crate::points::PointSet;
use crate::space::Space;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedPair {
    pub header: AttrSet,
    pub body: PointSet,
}

impl ClosedPair {
    pub fn new(header: AttrSet, body: PointSet) -> Self {
        ClosedPair { header, body }
    }

    /// Set inclusion in `P(A ∪ X)`.
    pub fn is_subset(&self, other: &ClosedPair) -> bool {
        self.header.is_subset(other.header) && self.body.is_subset(&other.body)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpaceLattice<'a> {
    space: &'a Space,
}

impl<'a> SpaceLattice<'a> {
    pub fn new(space: &'a Space) -> Self {
        SpaceLattice { space }
    }

    pub fn space(&self) -> &'a Space {
        self.space
    }

    /// Closes `body` under `header`.
    pub fn close(&self, header: AttrSet, body: &PointSet) -> ClosedPair {
        ClosedPair::new(header, self.space.alpha_closure(header, body))
    }

    pub fn is_element(&self, p: &ClosedPair) -> bool {
        p.body.capacity() == self.space.len()
            && p.header.is_subset(AttrSet::full(self.space.attrs()))
            && self.space.is_closed(p.header, &p.body)
    }

    /// Every element, header by header. Doubly exponential; meant for small oracles.
    pub fn enumerate_elements(&self) -> Vec<ClosedPair> {
        let mut out = Vec::new();
        for header in AttrSet::full(self.space.attrs()).subsets() {
            let classes = self.space.classes(header);
            assert!(classes.len() < 32, "too many classes to enumerate");
            for mask in 0u32..(1u32 << classes.len()) {
                let body = PointSet::from_indices(
                    self.space.len(),
                    classes
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .flat_map(|(_, c)| c.iter().copied()),
                );
                out.push(ClosedPair::new(header, body));
            }
        }
        out
    }
}

impl Lattice for SpaceLattice<'_> {
    type Elem = ClosedPair;

    fn top(&self) -> ClosedPair {
        ClosedPair::new(AttrSet::full(self.space.attrs()), self.space.all_points())
    }

    fn bottom(&self) -> ClosedPair {
        ClosedPair::new(AttrSet::EMPTY, PointSet::empty(self.space.len()))
    }

    fn meet(&self, a: &ClosedPair, b: &ClosedPair) -> ClosedPair {
        ClosedPair::new(a.header.intersection(b.header), a.body.intersection(&b.body))
    }

    fn join(&self, a: &ClosedPair, b: &ClosedPair) -> ClosedPair {
        self.close(a.header.union(b.header), &a.body.union(&b.body))
    }

    fn leq(&self, a: &ClosedPair, b: &ClosedPair) -> bool {
        a.is_subset(b)
    }
}

/// Checks that `map` (indexed by points of `from`) is a space morphism into `to`.
pub fn check_morphism(from: &Space, to: &Space, map: &[usize]) -> Result<(), Error> {
    if map.len() != from.len() || map.iter().any(|&p| p >= to.len()) || from.attrs() != to.attrs() {
        return Err(Error::Space("point map does not match the spaces"));
    }
    for f in 0..from.len() {
        for g in 0..from.len() {
            if !to.dist(map[f], map[g]).is_subset(from.dist(f, g)) {
                return Err(Error::NotAMorphism { f, g });
            }
        }
    }
    Ok(())
}

/// `L(ψ)(α, Z) = (α, ψ⁻¹(Z))` for a morphism `ψ : from -> to`.
pub fn functor_inverse_image(
    from: &Space,
    to: &Space,
    map: &[usize],
    q: &ClosedPair,
) -> Result<ClosedPair, Error> {
    check_morphism(from, to, map)?;
    let body = PointSet::from_indices(from.len(), (0..from.len()).filter(|&f| q.body.contains(map[f])));
    Ok(ClosedPair::new(q.header, body))
}

/// `i_*(β, Y) = (i(β), Y)`, from the lattice of the space over the atoms of
/// `algebra` into the lattice of the same points over the full universe.
pub fn change_of_algebra_embed(algebra: &BooleanSubalgebra, p: &ClosedPair) -> ClosedPair {
    ClosedPair::new(algebra.embed(p.header), p.body.clone())
}

/// The space over `At(B)` with `δ_B(f,g) = β` iff `δ(f,g) = i(β)`.
pub fn quotient_space(space: &Space, algebra: &BooleanSubalgebra) -> Result<Space, Error> {
    if algebra.universe_len() != space.attrs() {
        return Err(Error::Space("algebra and space have different universes"));
    }
    let n = space.len();
    let mut dist = Vec::with_capacity(n * n);
    for f in 0..n {
        for g in 0..n {
            dist.push(
                algebra
                    .quotient(space.dist(f, g))
                    .map_err(|_| Error::DistanceOutsideAlgebra { f, g })?,
            );
        }
    }
    Ok(Space::new_unchecked(algebra.atom_count(), n, dist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::FunctionSpace;

    #[test]
    fn meet_example_in_hamming_lattice() {
        let h = FunctionSpace::hamming(2, 2, 16).unwrap();
        let lat = SpaceLattice::new(h.space());
        let origin = PointSet::from_indices(4, [h.index_of(&[0, 0]).unwrap()]);
        let p = lat.close(AttrSet::singleton(0), &origin);
        let q = lat.close(AttrSet::singleton(1), &origin);
        assert_eq!(lat.meet(&p, &q), ClosedPair::new(AttrSet::EMPTY, origin));
    }

    #[test]
    fn join_example_and_units() {
        let h = FunctionSpace::hamming(2, 2, 16).unwrap();
        let lat = SpaceLattice::new(h.space());
        let a = PointSet::from_indices(4, [h.index_of(&[0, 0]).unwrap()]);
        let b = PointSet::from_indices(4, [h.index_of(&[1, 1]).unwrap()]);
        let j = lat.join(&ClosedPair::new(AttrSet::EMPTY, a.clone()), &ClosedPair::new(AttrSet::EMPTY, b.clone()));
        assert_eq!(j, ClosedPair::new(AttrSet::EMPTY, a.union(&b)));
        for p in lat.enumerate_elements() {
            assert_eq!(lat.join(&p, &lat.bottom()), p);
            assert_eq!(lat.join(&p, &lat.top()), lat.top());
            assert_eq!(lat.meet(&p, &lat.top()), p);
            assert_eq!(lat.meet(&p, &lat.bottom()), lat.bottom());
            assert!(lat.is_element(&p));
        }
        assert!(lat.leq(&lat.bottom(), &ClosedPair::new(AttrSet::singleton(0), lat.close(AttrSet::singleton(0), &a).body)));
    }

    #[test]
    fn enumerate_counts_26_for_two_by_two() {
        let h = FunctionSpace::hamming(2, 2, 16).unwrap();
        assert_eq!(SpaceLattice::new(h.space()).enumerate_elements().len(), 26);
    }

    #[test]
    fn inverse_image_along_subspace_inclusion() {
        let h = FunctionSpace::hamming(2, 2, 16).unwrap();
        let sub_points = [0usize, 3];
        let sub = h.space().subspace(&sub_points);
        let lat = SpaceLattice::new(h.space());
        for q in lat.enumerate_elements() {
            let p = functor_inverse_image(&sub, h.space(), &sub_points, &q).unwrap();
            let expect: Vec<usize> = sub_points
                .iter()
                .enumerate()
                .filter(|(_, &x)| q.body.contains(x))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(p.body.iter().collect::<Vec<_>>(), expect);
            assert_eq!(p.header, q.header);
            assert!(SpaceLattice::new(&sub).is_element(&p));
        }
    }

    #[test]
    fn inverse_image_rejects_non_morphisms() {
        let h = FunctionSpace::hamming(2, 2, 16).unwrap();
        let a = AttrSet::singleton(0);
        let near = Space::new(2, 2, alloc::vec![AttrSet::EMPTY, a, a, AttrSet::EMPTY]).unwrap();
        let (p00, p10, p11) = (h.index_of(&[0, 0]).unwrap(), h.index_of(&[1, 0]).unwrap(), h.index_of(&[1, 1]).unwrap());
        assert!(check_morphism(&near, h.space(), &[p00, p10]).is_ok());
        assert_eq!(
            check_morphism(&near, h.space(), &[p00, p11]),
            Err(Error::NotAMorphism { f: 0, g: 1 })
        );
        let top = SpaceLattice::new(h.space()).top();
        assert!(functor_inverse_image(&near, h.space(), &[p00, p11], &top).is_err());
        assert_eq!(
            functor_inverse_image(&near, h.space(), &[p00, p10], &top).unwrap(),
            SpaceLattice::new(&near).top()
        );
    }
}
