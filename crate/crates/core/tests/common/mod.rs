#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use rellat_core::counterexample::Valuation;
use rellat_core::{AttrSet, FunctionSpace, RelLattice, Relation, Term};

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn arb_term(depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        6 => proptest::sample::select(&VARS[..]).prop_map(Term::var),
        1 => Just(Term::Top),
        1 => Just(Term::Bot),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::meet(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Term::join(l, r)),
        ]
    })
}

/// A term with at most `size` nodes, mostly variables at the leaves.
pub fn random_term<R: Rng>(rng: &mut R, vars: &[&str], size: usize) -> Term {
    if size < 3 || rng.random_bool(0.25) {
        return match rng.random_range(0..10) {
            0 => Term::Top,
            1 => Term::Bot,
            _ => Term::var(vars[rng.random_range(0..vars.len())]),
        };
    }
    let left = rng.random_range(1..=size - 2);
    let l = random_term(rng, vars, left);
    let r = random_term(rng, vars, size - 1 - l.size());
    if rng.random_bool(0.5) {
        Term::meet(l, r)
    } else {
        Term::join(l, r)
    }
}

/// Uniform header, each tuple kept with probability `density`.
pub fn random_relation<R: Rng>(rng: &mut R, rl: &RelLattice, density: f64) -> Relation {
    let header = AttrSet(rng.random::<u64>() & AttrSet::full(rl.attrs).0);
    let rows = rl.tuples(header).into_iter().filter(|_| rng.random_bool(density)).collect();
    Relation { header, rows }
}

pub fn random_table<R: Rng>(rng: &mut R, rl: &RelLattice, vars: &[&str]) -> BTreeMap<String, Relation> {
    vars.iter()
        .map(|x| {
            let density = [0.3, 0.5, 0.8][rng.random_range(0..3)];
            (x.to_string(), random_relation(rng, rl, density))
        })
        .collect()
}

pub fn to_pairs(rl: &RelLattice, fs: &FunctionSpace, table: &BTreeMap<String, Relation>) -> Valuation {
    table.iter().map(|(x, r)| (x.clone(), rl.to_closed_pair(r, fs))).collect()
}
