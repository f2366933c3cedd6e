//! Independent checking of certificates, and the a-priori size bounds.

use alloc::collections::BTreeSet;
use alloc::string::String;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::boolean::atom_count_bound;
use crate::counterexample::Certificate;
use crate::lattice::{evaluate, evaluate_tree};
use crate::terms::{vars, Inclusion};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub atoms: usize,
    pub values: usize,
    /// `size(t)`, bounding both `|E|` and the tableau.
    pub size_bound: usize,
    /// `2^(n(n-1)/2 + m)` for the certificate's `n` and `m = |vars(t, s)|`.
    pub atom_bound: Option<u128>,
}

/// The first check a certificate fails.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("certificate is for `{0}`")]
    InclusionMismatch(String),
    #[error("malformed certificate: {0}")]
    Malformed(&'static str),
    #[error("|E| = {values} exceeds size(t) = {bound}")]
    ValueBound { values: usize, bound: usize },
    #[error("tableau size {n} exceeds size(t) = {bound}")]
    TableauBound { n: usize, bound: usize },
    #[error("{atoms} atoms exceed the bound {bound}")]
    AtomBound { atoms: usize, bound: u128 },
    #[error("certificate has no witness")]
    MissingWitness,
    #[error("witness is not in the value of the left side")]
    WitnessNotInLhs,
    #[error("witness is in the value of the right side")]
    WitnessInRhs,
    #[error("replay entry {index} (`{term}`) does not match")]
    ReplayMismatch { index: usize, term: String },
    #[error(transparent)]
    Eval(#[from] Error),
}

/// Rebuilds `R(E, B')` from the certificate alone and re-checks the failure
/// of `inclusion` together with the size bounds.
pub fn verify(cert: &Certificate, inclusion: &Inclusion) -> Result<VerifyReport, VerifyError> {
    use alloc::string::ToString;

    if cert.inclusion != *inclusion {
        return Err(VerifyError::InclusionMismatch(cert.inclusion.to_string()));
    }
    check_structure(cert)?;
    let (t, s) = (&inclusion.lhs, &inclusion.rhs);
    let rl = cert.lattice();

    let bound = t.size();
    if cert.values.len() > bound {
        return Err(VerifyError::ValueBound { values: cert.values.len(), bound });
    }
    if cert.tableau_size > bound {
        return Err(VerifyError::TableauBound { n: cert.tableau_size, bound });
    }
    let m = vars([t, s]).len();
    let atom_bound = atom_count_bound(cert.tableau_size, m);
    if let Some(b) = atom_bound {
        if cert.attrs.len() as u128 > b {
            return Err(VerifyError::AtomBound { atoms: cert.attrs.len(), bound: b });
        }
    }

    let witness = cert.witness.as_ref().ok_or(VerifyError::MissingWitness)?;
    if witness.len() != cert.attrs.len() || witness.iter().any(|&v| v as usize >= cert.values.len()) {
        return Err(VerifyError::Malformed("witness is not a row over the certificate's attributes"));
    }
    if !evaluate(&rl, t, &cert.valuation)?.contains_function(witness) {
        return Err(VerifyError::WitnessNotInLhs);
    }
    if evaluate(&rl, s, &cert.valuation)?.contains_function(witness) {
        return Err(VerifyError::WitnessInRhs);
    }

    let mut expected = alloc::vec::Vec::new();
    for side in [t, s] {
        let tree = evaluate_tree(&rl, side, &cert.valuation)?;
        expected.extend(side.subterms().into_iter().zip(tree.preorder()).map(|(u, r)| (u.to_string(), r.clone())));
    }
    if cert.replay.len() != expected.len() {
        return Err(VerifyError::Malformed("replay has the wrong number of entries"));
    }
    for (index, (got, want)) in cert.replay.iter().zip(&expected).enumerate() {
        if got != want {
            return Err(VerifyError::ReplayMismatch { index, term: want.0.clone() });
        }
    }

    Ok(VerifyReport { atoms: cert.attrs.len(), values: cert.values.len(), size_bound: bound, atom_bound })
}

fn check_structure(cert: &Certificate) -> Result<(), VerifyError> {
    let unique = |names: &[String]| names.iter().collect::<BTreeSet<_>>().len() == names.len();
    if !unique(&cert.attrs) || !unique(&cert.values) {
        return Err(VerifyError::Malformed("duplicate attribute or value name"));
    }
    if cert.values.is_empty() {
        return Err(VerifyError::Malformed("empty value set"));
    }
    if cert.atom_blocks.len() != cert.attrs.len() || cert.fiber_sizes.len() != cert.attrs.len() {
        return Err(VerifyError::Malformed("atom data does not match the attributes"));
    }
    if cert.fiber_sizes.iter().any(|&k| k == 0 || k > cert.values.len()) {
        return Err(VerifyError::Malformed("fiber size outside 1..=|E|"));
    }
    let rl = cert.lattice();
    if !cert.valuation.values().all(|r| rl.is_element(r)) {
        return Err(VerifyError::Malformed("valuation relation outside R(E, B')"));
    }
    Ok(())
}

/// The a-priori bounds for an inclusion `t <= s`, with `k = max(size(t), size(s))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoreticalBounds {
    pub k: usize,
    /// `|E| <= size(t)`.
    pub values: BigUint,
    /// `(k² + 3k) / 2`: with `n <= k` and `m <= 2k` this dominates `n(n-1)/2 + m`.
    pub p: usize,
    /// `2^p`.
    pub atoms: BigUint,
    /// The alternative exponent `(2^{k²} + 3k) / 2`, if it fits in a `u128`.
    pub p_alternative: Option<u128>,
    /// `log2` of the bound on the size of `R(E, A')`: `2^p + k^{2^p}`, from
    /// `|R(E, A')| <= 2^{|A'|} · 2^{|E|^{|A'|}}`. `None` when `2^p` is too large
    /// to expand.
    pub lattice_log2: Option<BigUint>,
    /// The exponent `p + k^{2^p}` as it is usually stated; smaller than
    /// `lattice_log2` and not a valid bound for small `k`.
    pub lattice_log2_stated: Option<BigUint>,
}

/// Largest `2^p` for which `k^{2^p}` is expanded.
const MAX_EXPANDED_ATOMS: u32 = 1 << 12;

pub fn theoretical_bounds(inclusion: &Inclusion) -> TheoreticalBounds {
    let (t, s) = (&inclusion.lhs, &inclusion.rhs);
    let k = t.size().max(s.size());
    let p = (k * k + 3 * k) / 2;
    let atoms = BigUint::one() << p;
    let p_alternative = (k * k < 127)
        .then(|| ((1u128 << (k * k)) + 3 * k as u128) / 2);
    let (lattice_log2, lattice_log2_stated) = if p < 32 && (1u32 << p) <= MAX_EXPANDED_ATOMS {
        let power = BigUint::from(k).pow(1u32 << p);
        (Some(atoms.clone() + &power), Some(BigUint::from(p) + power))
    } else {
        (None, None)
    };
    TheoreticalBounds {
        k,
        values: BigUint::from(t.size()),
        p,
        atoms,
        p_alternative,
        lattice_log2,
        lattice_log2_stated,
    }
}

/// `2^e`, when `e` is small enough to expand.
pub fn pow2(e: &BigUint) -> Option<BigUint> {
    let small: u64 = e.try_into().ok()?;
    (small <= 1 << 20).then(|| if small.is_zero() { BigUint::one() } else { BigUint::one() << small })
}
