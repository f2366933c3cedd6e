//! Shrinking a failure of `t <= s` in `R(D, A)` to a finite countermodel.
//!
//! The pipeline runs: witness, tableau `T(f,t)`, generated subalgebra `B`,
//! glue completion `G`, quotient space `(G, δ_At(B))`, product decomposition,
//! and finally a valuation in `R(E, At(B))` that is checked by replay.

mod glue;
mod restricted;
mod shrink;
mod tableau;

use alloc::collections::BTreeMap;
use alloc::string::String;

pub use glue::{generators, glue_completion, GlueSet};
pub use restricted::{restricted_valuation, RestrictedLattice};
pub use shrink::{shrink, Certificate, PipelineTrace, Shrinkage};
pub use tableau::{tableau, Clause, Tableau, TableauEntry};

use crate::lattice::{evaluate, Lattice};
use crate::space_lattice::{ClosedPair, SpaceLattice};
use crate::terms::Term;
use crate::Error;

/// Variables mapped to elements of `L(X, δ)`.
pub type Valuation = BTreeMap<String, ClosedPair>;

/// An element of `⟦t⟧ \ ⟦s⟧`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Attribute(usize),
    Point(usize),
}

/// Looks for an attribute first, then the least point, in `⟦t⟧ \ ⟦s⟧`.
pub fn find_witness(
    lattice: &SpaceLattice<'_>,
    t: &Term,
    s: &Term,
    valuation: &Valuation,
) -> Result<Option<Witness>, Error> {
    let vt = evaluate(lattice, t, valuation)?;
    let vs = evaluate(lattice, s, valuation)?;
    Ok(witness_between(&vt, &vs))
}

pub(crate) fn witness_between(vt: &ClosedPair, vs: &ClosedPair) -> Option<Witness> {
    if let Some(a) = vt.header.difference(vs.header).first() {
        return Some(Witness::Attribute(a));
    }
    vt.body.iter().find(|&p| !vs.body.contains(p)).map(Witness::Point)
}

/// Does `t <= s` hold under this valuation?
pub fn holds<L: Lattice>(lattice: &L, t: &Term, s: &Term, valuation: &BTreeMap<String, L::Elem>) -> Result<bool, Error> {
    Ok(lattice.leq(&evaluate(lattice, t, valuation)?, &evaluate(lattice, s, valuation)?))
}
