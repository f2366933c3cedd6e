//! Budgeted decision procedure: the free-lattice filter, a parallel search
//! for a failing valuation in small `R(D, A)`, then shrinking and checking.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rellat_core::counterexample::{find_witness, shrink, Certificate, PipelineTrace};
use rellat_core::lattice::evaluate;
use rellat_core::space::DEFAULT_POINT_LIMIT;
use rellat_core::terms::{free_lattice_leq, vars};
use rellat_core::verify::{verify, VerifyReport};
use rellat_core::{AttrSet, FunctionSpace, Inclusion, Lattice, RelLattice, Relation, SpaceLattice, Universe};

use crate::model::{default_attr_names, default_value_names, Model};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_attrs: usize,
    pub max_vals: usize,
    /// Valuations tried per `(|A|, |D|)`. `None` allows only exhaustive
    /// enumeration, of any size.
    pub max_valuations: Option<u64>,
    pub time_limit: Option<Duration>,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_attrs: 3,
            max_vals: 3,
            max_valuations: Some(100_000),
            time_limit: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Refutation {
    /// The failing valuation as found, over `default_attr_names` and `0..|D|`.
    pub model: Model,
    /// Index of the valuation within its configuration.
    pub index: u64,
    pub exhaustive: bool,
    pub certificate: Certificate,
    pub pipeline: Option<PipelineTrace>,
    pub report: VerifyReport,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// Holds in every lattice.
    Valid,
    Refuted(Box<Refutation>),
    Unknown(String),
}

/// Outcome of searching one `R(D, A)`.
#[derive(Clone, Debug)]
pub enum Search {
    Found(Box<Refutation>),
    Exhausted { tried: u64, exhaustive: bool },
    Skipped(String),
    TimedOut,
}

pub fn decide(inclusion: &Inclusion, budget: &Budget) -> Verdict {
    if free_lattice_leq(&inclusion.lhs, &inclusion.rhs) {
        return Verdict::Valid;
    }
    search(inclusion, budget)
}

/// The bounded search alone, without the free-lattice filter. It never
/// answers [`Verdict::Valid`].
pub fn search(inclusion: &Inclusion, budget: &Budget) -> Verdict {
    let start = Instant::now();
    let mut skipped = Vec::new();
    for attrs in 1..=budget.max_attrs {
        for vals in 1..=budget.max_vals {
            match search_config(inclusion, attrs, vals, budget, start) {
                Search::Found(r) => return Verdict::Refuted(r),
                Search::Exhausted { .. } => {}
                Search::Skipped(why) => skipped.push(why),
                Search::TimedOut => return Verdict::Unknown("time limit reached".into()),
            }
        }
    }
    let mut reason = format!(
        "no countermodel with |A| <= {}, |D| <= {}",
        budget.max_attrs, budget.max_vals
    );
    if !skipped.is_empty() {
        reason.push_str(&format!(" ({})", skipped.join("; ")));
    }
    Verdict::Unknown(reason)
}

/// Searches `R({0..vals}, {a, ..})` with `attrs` attributes, exhaustively
/// when `|R|^|vars|` fits the budget, otherwise over seeded random valuations.
pub fn search_config(inclusion: &Inclusion, attrs: usize, vals: usize, budget: &Budget, start: Instant) -> Search {
    let names: Vec<String> = vars([&inclusion.lhs, &inclusion.rhs]).into_iter().collect();
    let rl = RelLattice::new(attrs, vals);
    if (vals as u128).checked_pow(attrs as u32).is_none_or(|n| n > DEFAULT_POINT_LIMIT as u128) {
        return Search::Skipped(format!("|D|^|A| too large for |A| = {attrs}, |D| = {vals}"));
    }

    let exhaustive_count = rl
        .element_count()
        .and_then(|n| n.checked_pow(names.len() as u32))
        .filter(|_| names.is_empty() || (vals as u128).pow(attrs as u32) < 32);
    let fits = |n: u128| budget.max_valuations.is_none_or(|c| n <= c as u128);
    let (total, elements) = match (exhaustive_count.filter(|&n| fits(n)), budget.max_valuations) {
        (Some(n), _) => {
            let elements = if names.is_empty() { Vec::new() } else { rl.enumerate() };
            (n as u64, Some(elements))
        }
        (None, Some(cap)) => (cap, None),
        (None, None) => {
            return Search::Skipped(format!(
                "|A| = {attrs}, |D| = {vals} cannot be enumerated exhaustively"
            ))
        }
    };
    let exhaustive = elements.is_some();
    let valuation = |i: u64| -> BTreeMap<String, Relation> {
        match &elements {
            Some(elems) => {
                let mut rest = i;
                names
                    .iter()
                    .map(|x| {
                        let e = elems[(rest % elems.len() as u64) as usize].clone();
                        rest /= elems.len() as u64;
                        (x.clone(), e)
                    })
                    .collect()
            }
            None => random_valuation(&rl, &names, budget.seed, i),
        }
    };

    let timed_out = AtomicBool::new(false);
    let found = (0..total).into_par_iter().find_map_first(|i| {
        if let Some(limit) = budget.time_limit {
            if start.elapsed() > limit {
                timed_out.store(true, Ordering::Relaxed);
                return None;
            }
        }
        let v = valuation(i);
        let vt = evaluate(&rl, &inclusion.lhs, &v).expect("valuation covers the variables");
        let vs = evaluate(&rl, &inclusion.rhs, &v).expect("valuation covers the variables");
        (!rl.leq(&vt, &vs)).then_some(i)
    });

    let Some(index) = found else {
        return if timed_out.load(Ordering::Relaxed) {
            Search::TimedOut
        } else {
            Search::Exhausted { tried: total, exhaustive }
        };
    };
    let model = Model {
        attrs: default_attr_names(attrs),
        values: default_value_names(vals),
        valuation: valuation(index),
    };
    let space = FunctionSpace::hamming(attrs, vals, DEFAULT_POINT_LIMIT).expect("size checked above");
    match certify(inclusion, &model, &space) {
        Ok((certificate, pipeline, report)) => Search::Found(Box::new(Refutation {
            model,
            index,
            exhaustive,
            certificate,
            pipeline,
            report,
        })),
        Err(e) => Search::Skipped(format!("internal error while shrinking: {e}")),
    }
}

/// Finds a witness in `model`, shrinks it and verifies the certificate.
pub fn certify(
    inclusion: &Inclusion,
    model: &Model,
    space: &FunctionSpace,
) -> Result<(Certificate, Option<PipelineTrace>, VerifyReport), CertifyError> {
    let valuation = model.closed_pairs(space);
    let lattice = SpaceLattice::new(space.space());
    let witness = find_witness(&lattice, &inclusion.lhs, &inclusion.rhs, &valuation)?
        .ok_or(CertifyError::Holds)?;
    let universe = Universe::new(model.attrs.iter().cloned())?;
    let out = shrink(inclusion, &valuation, witness, space, &universe)?;
    let report = verify(&out.certificate, inclusion)?;
    Ok((out.certificate, out.pipeline, report))
}

#[derive(Debug, thiserror::Error)]
pub enum CertifyError {
    #[error("the inclusion holds under this valuation")]
    Holds,
    #[error(transparent)]
    Core(#[from] rellat_core::Error),
    #[error("certificate rejected: {0}")]
    Verify(#[from] rellat_core::verify::VerifyError),
}

/// Valuation number `index` of the seeded stream: each variable gets a
/// uniformly random header and then every tuple with probability 1/2.
pub fn random_valuation(rl: &RelLattice, names: &[String], seed: u64, index: u64) -> BTreeMap<String, Relation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((rl.attrs as u64) << 32) | rl.vals as u64);
    rng.set_word_pos((index as u128) << 40);
    let full = AttrSet::full(rl.attrs);
    names
        .iter()
        .map(|x| {
            let header = AttrSet(rng.random::<u64>() & full.0);
            let rows = rl.tuples(header).into_iter().filter(|_| rng.random_bool(0.5)).collect();
            (x.clone(), Relation { header, rows })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rellat_core::terms::parse_inclusion;

    #[test]
    fn lattice_axiom_is_valid() {
        let inc = parse_inclusion("x ^ y <= x").unwrap();
        assert!(matches!(decide(&inc, &Budget::default()), Verdict::Valid));
    }

    #[test]
    fn random_valuations_are_reproducible() {
        let rl = RelLattice::new(3, 2);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(random_valuation(&rl, &names, 7, 11), random_valuation(&rl, &names, 7, 11));
        assert_ne!(random_valuation(&rl, &names, 7, 11), random_valuation(&rl, &names, 7, 12));
        for r in random_valuation(&rl, &names, 1, 0).values() {
            assert!(rl.is_element(r));
        }
    }

    #[test]
    fn variable_free_failure() {
        let inc = parse_inclusion("top <= bot").unwrap();
        let budget = Budget { max_attrs: 1, max_vals: 1, ..Budget::default() };
        let Verdict::Refuted(r) = decide(&inc, &budget) else { panic!("expected a refutation") };
        assert_eq!(r.certificate.values.len(), 1);
    }
}
