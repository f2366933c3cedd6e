//! Finite generalized ultrametric spaces over a powerset algebra `P(A)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::boolean::{AttrSet, BooleanSubalgebra, MAX_ATTRS};
use crate::points::PointSet;
use crate::Error;

/// Points `0..len` with a dense, symmetric distance table valued in subsets of
/// an attribute universe of size `attrs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    attrs: usize,
    len: usize,
    dist: Vec<AttrSet>,
}

/// A failed pairwise-completeness instance: no `h` with `dist(f,h) ⊆ alpha`
/// and `dist(h,g) ⊆ beta`, although `dist(f,g) ⊆ alpha ∪ beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MidpointViolation {
    pub f: usize,
    pub g: usize,
    pub alpha: AttrSet,
    pub beta: AttrSet,
}

impl Space {
    /// Builds a space from a row-major `len × len` distance table and checks
    /// that it is reduced, symmetric and satisfies the triangle inequality.
    pub fn new(attrs: usize, len: usize, dist: Vec<AttrSet>) -> Result<Space, Error> {
        if attrs > MAX_ATTRS {
            return Err(Error::TooManyAttributes(attrs));
        }
        if dist.len() != len * len {
            return Err(Error::Space("distance table has the wrong shape"));
        }
        let s = Space { attrs, len, dist };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(attrs: usize, len: usize, dist: Vec<AttrSet>) -> Space {
        debug_assert_eq!(dist.len(), len * len);
        Space { attrs, len, dist }
    }

    /// Checks the space axioms.
    pub fn validate(&self) -> Result<(), Error> {
        let full = AttrSet::full(self.attrs);
        for f in 0..self.len {
            if !self.dist(f, f).is_empty() {
                return Err(Error::Space("dist(f,f) must be empty"));
            }
            for g in 0..self.len {
                let d = self.dist(f, g);
                if !d.is_subset(full) {
                    return Err(Error::Space("distance outside the attribute universe"));
                }
                if d != self.dist(g, f) {
                    return Err(Error::Space("distance is not symmetric"));
                }
                if f != g && d.is_empty() {
                    return Err(Error::Space("space is not reduced"));
                }
            }
        }
        for f in 0..self.len {
            for g in 0..self.len {
                for h in 0..self.len {
                    if !self.dist(f, g).is_subset(self.dist(f, h).union(self.dist(h, g))) {
                        return Err(Error::Space("triangle inequality fails"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn attrs(&self) -> usize {
        self.attrs
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn dist(&self, f: usize, g: usize) -> AttrSet {
        self.dist[f * self.len + g]
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.len)
    }

    /// The subspace on `points` (in the given order); point `i` of the result
    /// is `points[i]` here.
    pub fn subspace(&self, points: &[usize]) -> Space {
        let n = points.len();
        let mut dist = Vec::with_capacity(n * n);
        for &f in points {
            for &g in points {
                dist.push(self.dist(f, g));
            }
        }
        Space::new_unchecked(self.attrs, n, dist)
    }

    /// `{ f | dist(f,g) ⊆ alpha for some g ∈ z }`, in one pass over candidates.
    pub fn alpha_closure(&self, alpha: AttrSet, z: &PointSet) -> PointSet {
        let mut out = z.clone();
        let members: Vec<usize> = z.iter().collect();
        if members.is_empty() {
            return out;
        }
        for f in 0..self.len {
            if out.contains(f) {
                continue;
            }
            let row = &self.dist[f * self.len..(f + 1) * self.len];
            if members.iter().any(|&g| row[g].is_subset(alpha)) {
                out.insert(f);
            }
        }
        out
    }

    pub fn is_closed(&self, alpha: AttrSet, z: &PointSet) -> bool {
        self.alpha_closure(alpha, z) == *z
    }

    /// The equivalence classes of `dist(f,g) ⊆ alpha`, each sorted, ordered by least member.
    pub fn classes(&self, alpha: AttrSet) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.len];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for f in 0..self.len {
            if class_of[f] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for (g, c) in class_of.iter_mut().enumerate().skip(f) {
                if *c == usize::MAX && self.dist(f, g).is_subset(alpha) {
                    *c = id;
                    members.push(g);
                }
            }
            classes.push(members);
        }
        classes
    }

    /// First failure of pairwise-completeness, scanning pairs `f < g` and, for
    /// each, splits `alpha ⊆ dist(f,g)`, `beta = dist(f,g) \ alpha` in
    /// increasing order of `alpha`.
    pub fn midpoint_violation(&self) -> Option<MidpointViolation> {
        for f in 0..self.len {
            for g in f + 1..self.len {
                let d = self.dist(f, g);
                for alpha in d.subsets() {
                    let beta = d.difference(alpha);
                    if self.midpoint(f, g, alpha, beta).is_none() {
                        return Some(MidpointViolation { f, g, alpha, beta });
                    }
                }
            }
        }
        None
    }

    /// Some `h` with `dist(f,h) ⊆ alpha` and `dist(h,g) ⊆ beta`.
    pub fn midpoint(&self, f: usize, g: usize, alpha: AttrSet, beta: AttrSet) -> Option<usize> {
        (0..self.len).find(|&h| self.dist(f, h).is_subset(alpha) && self.dist(h, g).is_subset(beta))
    }

    pub fn is_pairwise_complete(&self) -> bool {
        self.midpoint_violation().is_none()
    }

    /// Product decomposition `X ≅ ∏ D_a` over the atoms of `algebra`.
    ///
    /// Every distance must be a member of `algebra`. For each atom the fiber is
    /// the set of classes of "distance avoids the atom"; the decomposition
    /// succeeds when the space is pairwise-complete and the point count equals
    /// the product of the fiber sizes.
    pub fn sec_pi_decomposition(&self, algebra: &BooleanSubalgebra) -> Result<SecPi, SecPiError> {
        if algebra.universe_len() != self.attrs {
            return Err(SecPiError::AlgebraMismatch);
        }
        for f in 0..self.len {
            for g in 0..self.len {
                if !algebra.contains(self.dist(f, g)) {
                    return Err(SecPiError::DistanceOutsideAlgebra { f, g });
                }
            }
        }
        if let Some(v) = self.midpoint_violation() {
            return Err(SecPiError::NotPairwiseComplete(v));
        }
        self.product_decomposition(algebra)
    }

    /// The fiber computation of [`sec_pi_decomposition`](Self::sec_pi_decomposition)
    /// for callers that have already certified pairwise-completeness.
    pub(crate) fn product_decomposition(&self, algebra: &BooleanSubalgebra) -> Result<SecPi, SecPiError> {
        let full = AttrSet::full(self.attrs);
        let mut fibers = Vec::with_capacity(algebra.atom_count());
        let mut coords = vec![Vec::with_capacity(algebra.atom_count()); self.len];
        for &atom in algebra.atoms() {
            let classes = self.classes(full.difference(atom));
            for (ci, class) in classes.iter().enumerate() {
                for &p in class {
                    coords[p].push(ci);
                }
            }
            fibers.push(classes);
        }
        let product = fibers
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
        if product != Some(self.len) {
            return Err(SecPiError::ProductMismatch {
                points: self.len,
                sizes: fibers.iter().map(Vec::len).collect(),
            });
        }
        let index = coords.iter().enumerate().map(|(p, c)| (c.clone(), p)).collect();
        Ok(SecPi { fibers, coords, index })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SecPiError {
    #[error("algebra and space have different attribute universes")]
    AlgebraMismatch,
    #[error("dist({f},{g}) is not a member of the algebra")]
    DistanceOutsideAlgebra { f: usize, g: usize },
    #[error("not pairwise-complete: {0:?}")]
    NotPairwiseComplete(MidpointViolation),
    #[error("{points} points but fiber sizes {sizes:?}")]
    ProductMismatch { points: usize, sizes: Vec<usize> },
}

/// A space presented as a product of per-atom fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecPi {
    /// Per atom, the fiber classes (each a sorted list of points).
    pub fibers: Vec<Vec<Vec<usize>>>,
    /// Per point, its class index in every fiber.
    pub coords: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl SecPi {
    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(Vec::len).collect()
    }

    /// The point with the given class in each fiber.
    pub fn point_at(&self, coords: &[usize]) -> Option<usize> {
        self.index.get(coords).copied()
    }
}

/// The Hamming space `(D^A, δ)` with its points listed lexicographically
/// (attribute 0 most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpace {
    attrs: usize,
    vals: usize,
    points: Vec<Vec<u32>>,
    space: Space,
}

/// Default cap on `|D|^|A|` for explicit function spaces.
pub const DEFAULT_POINT_LIMIT: usize = 1 << 10;

/// `{ a | f(a) != g(a) }`.
pub fn hamming_distance(f: &[u32], g: &[u32]) -> AttrSet {
    AttrSet::from_indices(f.iter().zip(g).enumerate().filter(|(_, (x, y))| x != y).map(|(i, _)| i))
}

impl FunctionSpace {
    /// All `vals^attrs` functions, refusing more than `limit` points.
    pub fn hamming(attrs: usize, vals: usize, limit: usize) -> Result<FunctionSpace, Error> {
        if attrs > MAX_ATTRS {
            return Err(Error::TooManyAttributes(attrs));
        }
        let n = (vals as u128).checked_pow(attrs as u32).unwrap_or(u128::MAX);
        if n > limit as u128 {
            return Err(Error::SizeLimit { points: n, limit });
        }
        let n = n as usize;
        let mut points = Vec::with_capacity(n);
        for idx in 0..n {
            let mut p = vec![0u32; attrs];
            let mut rest = idx;
            for a in (0..attrs).rev() {
                p[a] = (rest % vals) as u32;
                rest /= vals;
            }
            points.push(p);
        }
        let mut dist = Vec::with_capacity(n * n);
        for f in &points {
            for g in &points {
                dist.push(hamming_distance(f, g));
            }
        }
        let space = Space::new_unchecked(attrs, n, dist);
        Ok(FunctionSpace { attrs, vals, points, space })
    }

    pub fn attrs(&self) -> usize {
        self.attrs
    }

    pub fn vals(&self) -> usize {
        self.vals
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u32] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    /// Index of a function, if it is a point of this space.
    pub fn index_of(&self, f: &[u32]) -> Option<usize> {
        if f.len() != self.attrs {
            return None;
        }
        let mut idx = 0usize;
        for &v in f {
            if v as usize >= self.vals {
                return None;
            }
            idx = idx * self.vals + v as usize;
        }
        Some(idx)
    }
}
