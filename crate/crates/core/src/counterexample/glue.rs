use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::Valuation;
use crate::boolean::{AttrSet, BooleanSubalgebra};
use crate::space::{FunctionSpace, MidpointViolation};
use crate::terms::{vars, Term};
use crate::Error;

/// Pairwise distances within `points` together with the headers of the
/// valuation on `vars(t, s)`.
pub fn generators(
    space: &FunctionSpace,
    points: &[usize],
    valuation: &Valuation,
    t: &Term,
    s: &Term,
) -> Result<BTreeSet<AttrSet>, Error> {
    let mut out = BTreeSet::new();
    for &f in points {
        for &g in points {
            out.insert(space.space().dist(f, g));
        }
    }
    for x in vars([t, s]) {
        let p = valuation.get(&x).ok_or(Error::UnboundVariable(x))?;
        out.insert(p.header);
    }
    Ok(out)
}

/// All glues of a set `T` and an algebra `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueSet {
    /// Points of the function space, increasing.
    pub points: Vec<usize>,
    pub algebra: BooleanSubalgebra,
    /// Per atom, the distinct restrictions of members of `T` to it.
    pub restrictions: Vec<Vec<Vec<u32>>>,
}

impl GlueSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, p: usize) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    /// The glue that copies `g` on the atoms in `alpha` (atom indices) and `f`
    /// on the others.
    pub fn midpoint(&self, space: &FunctionSpace, f: usize, g: usize, alpha: AttrSet) -> usize {
        let mut h = space.point(f).to_vec();
        for k in alpha.iter() {
            for a in self.algebra.atoms()[k].iter() {
                h[a] = space.point(g)[a];
            }
        }
        space.index_of(&h).expect("midpoint is a point of the function space")
    }

    /// Checks pairwise-completeness of `(G, δ_At(B))` by building each
    /// midpoint with [`midpoint`](Self::midpoint). Violations are reported in
    /// positions of `G` and sets of atom indices.
    pub fn certify_pairwise_complete(&self, space: &FunctionSpace) -> Result<(), MidpointViolation> {
        let quotient = |f: usize, g: usize| {
            self.algebra
                .quotient(space.space().dist(f, g))
                .expect("glue distances lie in the algebra")
        };
        for (i, &f) in self.points.iter().enumerate() {
            for (j, &g) in self.points.iter().enumerate().skip(i + 1) {
                let d = quotient(f, g);
                for alpha in d.subsets() {
                    let beta = d.difference(alpha);
                    let h = self.midpoint(space, f, g, alpha);
                    let ok = self.position(h).is_some()
                        && quotient(f, h).is_subset(alpha)
                        && quotient(h, g).is_subset(beta);
                    if !ok {
                        return Err(MidpointViolation { f: i, g: j, alpha, beta });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Default cap on the size of a glue set.
pub const DEFAULT_GLUE_LIMIT: usize = 1 << 10;

/// Every function that agrees, on each atom of `algebra`, with some member of
/// `tableau`. Requires all distances within `tableau` to lie in `algebra`.
pub fn glue_completion(
    space: &FunctionSpace,
    tableau: &[usize],
    algebra: &BooleanSubalgebra,
    limit: usize,
) -> Result<GlueSet, Error> {
    for &f in tableau {
        for &g in tableau {
            if !algebra.contains(space.space().dist(f, g)) {
                return Err(Error::DistanceOutsideAlgebra { f, g });
            }
        }
    }
    if tableau.is_empty() {
        return Err(Error::Precondition("empty tableau"));
    }
    let mut sorted = tableau.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let restrictions: Vec<Vec<Vec<u32>>> = algebra
        .atoms()
        .iter()
        .map(|atom| {
            let mut seen: Vec<Vec<u32>> = Vec::new();
            for &f in &sorted {
                let r: Vec<u32> = atom.iter().map(|a| space.point(f)[a]).collect();
                if !seen.contains(&r) {
                    seen.push(r);
                }
            }
            seen
        })
        .collect();

    let total = restrictions
        .iter()
        .try_fold(1usize, |acc, r| acc.checked_mul(r.len()))
        .filter(|&n| n <= limit)
        .ok_or(Error::SizeLimit {
            points: restrictions.iter().map(|r| r.len() as u128).product(),
            limit,
        })?;

    let mut points = Vec::with_capacity(total);
    let mut choice = alloc::vec![0usize; restrictions.len()];
    loop {
        let mut f = alloc::vec![0u32; space.attrs()];
        for (k, atom) in algebra.atoms().iter().enumerate() {
            for (a, &v) in atom.iter().zip(&restrictions[k][choice[k]]) {
                f[a] = v;
            }
        }
        points.push(space.index_of(&f).expect("glue is a point of the function space"));
        // odometer over the per-atom choices
        let mut k = restrictions.len();
        loop {
            if k == 0 {
                points.sort_unstable();
                return Ok(GlueSet { points, algebra: algebra.clone(), restrictions });
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < restrictions[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}
