use super::Valuation;
use crate::boolean::AttrSet;
use crate::lattice::Lattice;
use crate::points::PointSet;
use crate::space::Space;
use crate::space_lattice::ClosedPair;

/// The lattice `R(D,A)_T` of pairs `(α, cl_α(X ∩ T))`: joins as in the
/// ambient lattice, meets by taking the interior of the intersection.
#[derive(Clone, Debug)]
pub struct RestrictedLattice<'a> {
    space: &'a Space,
    support: PointSet,
}

impl<'a> RestrictedLattice<'a> {
    pub fn new(space: &'a Space, support: PointSet) -> Self {
        assert_eq!(support.capacity(), space.len());
        RestrictedLattice { space, support }
    }

    pub fn support(&self) -> &PointSet {
        &self.support
    }

    /// Greatest element of `R(D,A)_T` below `p`: `(α, cl_α(X ∩ T))`.
    pub fn interior(&self, p: &ClosedPair) -> ClosedPair {
        ClosedPair::new(p.header, self.space.alpha_closure(p.header, &p.body.intersection(&self.support)))
    }

    pub fn is_element(&self, p: &ClosedPair) -> bool {
        self.interior(p) == *p
    }
}

impl Lattice for RestrictedLattice<'_> {
    type Elem = ClosedPair;

    fn top(&self) -> ClosedPair {
        self.interior(&ClosedPair::new(AttrSet::full(self.space.attrs()), self.space.all_points()))
    }

    fn bottom(&self) -> ClosedPair {
        ClosedPair::new(AttrSet::EMPTY, PointSet::empty(self.space.len()))
    }

    /// `(α ∩ β, cl_{α∩β}(X ∩ Y ∩ T))` for `X`, `Y` already of the restricted form.
    fn meet(&self, a: &ClosedPair, b: &ClosedPair) -> ClosedPair {
        let header = a.header.intersection(b.header);
        let body = a.body.intersection(&b.body).intersection(&self.support);
        ClosedPair::new(header, self.space.alpha_closure(header, &body))
    }

    fn join(&self, a: &ClosedPair, b: &ClosedPair) -> ClosedPair {
        let header = a.header.union(b.header);
        ClosedPair::new(header, self.space.alpha_closure(header, &a.body.union(&b.body)))
    }

    fn leq(&self, a: &ClosedPair, b: &ClosedPair) -> bool {
        a.is_subset(b)
    }
}

/// `v_T(x) = interior(v(x))`.
pub fn restricted_valuation(lattice: &RestrictedLattice<'_>, valuation: &Valuation) -> Valuation {
    valuation
        .iter()
        .map(|(x, p)| (x.clone(), lattice.interior(p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::FunctionSpace;
    use crate::space_lattice::SpaceLattice;

    #[test]
    fn interior_and_meet_examples() {
        let h = FunctionSpace::hamming(2, 2, 16).unwrap();
        let full = SpaceLattice::new(h.space());
        let r = RestrictedLattice::new(h.space(), PointSet::from_indices(4, [0, 3]));
        assert_eq!(r.interior(&full.bottom()), full.bottom());
        let elems = full.enumerate_elements();
        for p in &elems {
            let i = r.interior(p);
            assert!(i.is_subset(p));
            assert_eq!(r.interior(&i), i);
            assert_eq!(r.meet(&i, &r.top()), i);
            for q in elems.iter().step_by(3) {
                let j = r.interior(q);
                // the explicit formula agrees with the interior of the intersection
                assert_eq!(r.meet(&i, &j), r.interior(&full.meet(&i, &j)));
                let m = r.meet(&i, &j);
                assert!(m.is_subset(&full.meet(&i, &j)));
                for f in [0usize, 3] {
                    if i.body.contains(f) && j.body.contains(f) {
                        assert!(m.body.contains(f));
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_valuation_is_pointwise() {
        let h = FunctionSpace::hamming(2, 2, 16).unwrap();
        let full = SpaceLattice::new(h.space());
        let r = RestrictedLattice::new(h.space(), PointSet::from_indices(4, [1]));
        let already = r.interior(&full.top());
        let v: Valuation = [("x".into(), already.clone()), ("y".into(), full.bottom())].into_iter().collect();
        let vt = restricted_valuation(&r, &v);
        assert_eq!(vt["x"], already);
        assert_eq!(vt["y"], full.bottom());
    }
}
