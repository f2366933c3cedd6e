//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rellat::decide::{search, Budget, Refutation, Verdict};
use rellat::{decide, format_certificate, parse_certificate};
use rellat_core::counterexample::{restricted_valuation, tableau, RestrictedLattice};
use rellat_core::lattice::{check_laws, evaluate, evaluate_tree};
use rellat_core::terms::{free_lattice_leq, parse_inclusion, vars};
use rellat_core::verify::{verify, VerifyError};
use rellat_core::{
    AttrSet, BooleanSubalgebra, ClosedPair, FunctionSpace, Inclusion, Lattice, PointSet, RelLattice, Relation,
    SpaceLattice, Term,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn report(n: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let pass = o.pass && elapsed <= limit;
    println!(
        "criterion {n} [{}] {name}: {} ({:.2?}, limit {:.0?})",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed,
        limit
    );
    pass
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn random_term<R: Rng>(rng: &mut R, size: usize) -> Term {
    if size < 3 || rng.random_bool(0.25) {
        return match rng.random_range(0..10) {
            0 => Term::Top,
            1 => Term::Bot,
            _ => Term::var(VARS[rng.random_range(0..VARS.len())]),
        };
    }
    let left = rng.random_range(1..=size - 2);
    let l = random_term(rng, left);
    let r = random_term(rng, size - 1 - l.size());
    if rng.random_bool(0.5) {
        Term::meet(l, r)
    } else {
        Term::join(l, r)
    }
}

fn random_relation<R: Rng>(rng: &mut R, rl: &RelLattice) -> Relation {
    let header = AttrSet(rng.random::<u64>() & AttrSet::full(rl.attrs).0);
    let density = [0.3, 0.5, 0.8][rng.random_range(0..3)];
    let rows = rl.tuples(header).into_iter().filter(|_| rng.random_bool(density)).collect();
    Relation { header, rows }
}

fn enumeration() -> Outcome {
    let rl = RelLattice::new(2, 2);
    let all = rl.enumerate();
    let mut by_header: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &all {
        *by_header.entry(r.header.len()).or_default() += 1;
    }
    let distinct: BTreeSet<&Relation> = all.iter().collect();
    // header sizes 0, 1, 2 carry 2, 4 + 4, 16 elements
    let expect = BTreeMap::from([(0, 2), (1, 8), (2, 16)]);
    let pass = all.len() == 26 && distinct.len() == 26 && by_header == expect && rl.element_count() == Some(26);
    outcome(pass, format!("{} elements, by header size {:?}", all.len(), by_header))
}

fn isomorphism() -> Outcome {
    let rl = RelLattice::new(2, 2);
    let fs = FunctionSpace::hamming(2, 2, 16).unwrap();
    let lat = SpaceLattice::new(fs.space());
    let all = rl.enumerate();
    let pairs: Vec<ClosedPair> = all.iter().map(|r| rl.to_closed_pair(r, &fs)).collect();
    let mut mismatches = 0;
    for (a, pa) in all.iter().zip(&pairs) {
        for (b, pb) in all.iter().zip(&pairs) {
            mismatches += usize::from(rl.to_closed_pair(&rl.meet(a, b), &fs) != lat.meet(pa, pb));
            mismatches += usize::from(rl.to_closed_pair(&rl.join(a, b), &fs) != lat.join(pa, pb));
            mismatches += usize::from(rl.leq(a, b) != lat.leq(pa, pb));
        }
    }
    let distinct: BTreeSet<&ClosedPair> = pairs.iter().collect();
    let onto = distinct.len() == lat.enumerate_elements().len();
    let back = all.iter().zip(&pairs).all(|(r, p)| rl.from_closed_pair(p, &fs) == *r);
    outcome(
        mismatches == 0 && onto && back,
        format!("{} pairs, {mismatches} mismatches, bijective: {}", all.len() * all.len(), onto && back),
    )
}

fn lattice_laws() -> Outcome {
    let rl = RelLattice::new(2, 2);
    let table = check_laws(&rl, &rl.enumerate());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = table.violations();
    let mut triples = table.triples;
    let spaces = 120;
    for _ in 0..spaces {
        let attrs = rng.random_range(1..=4usize);
        let vals = rng.random_range(2..=3usize);
        let fs = FunctionSpace::hamming(attrs, vals, 128).unwrap();
        let size = rng.random_range(1..=6usize.min(fs.len()));
        let mut pts: Vec<usize> = (0..fs.len()).collect();
        for i in 0..size {
            let j = rng.random_range(i..pts.len());
            pts.swap(i, j);
        }
        pts.truncate(size);
        let space = fs.space().subspace(&pts);
        let lat = SpaceLattice::new(&space);
        let mut elems = lat.enumerate_elements();
        // all elements when small, otherwise a random sample with the bounds
        if elems.len() > 40 {
            let mut sample = vec![lat.top(), lat.bottom()];
            for _ in 0..38 {
                sample.push(elems[rng.random_range(0..elems.len())].clone());
            }
            elems = sample;
        }
        let r = check_laws(&lat, &elems);
        violations += r.violations();
        triples += r.triples;
    }
    outcome(
        violations == 0,
        format!("R(2,2): {} triples; {spaces} random spaces; {triples} triples total; {violations} violations", table.triples),
    )
}

#[derive(Default)]
struct LemmaCounts {
    instances: usize,
    grounded: usize,
    size: usize,
    monotonicity: usize,
    stability: usize,
    support_keeps_f: usize,
    failure_lost: usize,
}

fn lemma_instance(seed: u64) -> Option<LemmaCounts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (attrs, vals) = (rng.random_range(1..=4usize), rng.random_range(1..=3usize));
    let rl = RelLattice::new(attrs, vals);
    let fs = FunctionSpace::hamming(attrs, vals, 128).unwrap();
    let lat = SpaceLattice::new(fs.space());
    let t = random_term(&mut rng, 7);
    let s = random_term(&mut rng, 7);
    let v: BTreeMap<String, ClosedPair> = VARS
        .iter()
        .map(|x| (x.to_string(), rl.to_closed_pair(&random_relation(&mut rng, &rl), &fs)))
        .collect();
    let vt = evaluate(&lat, &t, &v).unwrap();
    let members: Vec<usize> = vt.body.iter().collect();
    if members.is_empty() {
        return None;
    }
    let f = members[rng.random_range(0..members.len())];
    let tab = tableau(&lat, f, &t, &v).unwrap();
    let mut c = LemmaCounts { instances: 1, ..Default::default() };
    c.grounded += usize::from(!tab.contains(f));
    c.size += usize::from(tab.len() > t.size());

    let mut support: PointSet = tab.point_set(fs.len());
    for p in 0..fs.len() {
        if rng.random_bool(0.2) {
            support.insert(p);
        }
    }
    let r = RestrictedLattice::new(fs.space(), support);
    let vr = restricted_valuation(&r, &v);
    for u in [&t, &s] {
        let full = evaluate_tree(&lat, u, &v).unwrap();
        let restricted = evaluate_tree(&r, u, &vr).unwrap();
        for (a, b) in restricted.preorder().into_iter().zip(full.preorder()) {
            c.monotonicity += usize::from(!a.is_subset(b));
            c.stability += usize::from(a.header != b.header);
        }
    }
    let rt = evaluate(&r, &t, &vr).unwrap();
    c.support_keeps_f += usize::from(!rt.body.contains(f));
    if !evaluate(&lat, &s, &v).unwrap().body.contains(f) {
        let rs = evaluate(&r, &s, &vr).unwrap();
        c.failure_lost += usize::from(!(rt.body.contains(f) && !rs.body.contains(f)));
    }
    Some(c)
}

fn lemma_suite() -> Outcome {
    let results: Vec<LemmaCounts> = (0..4000u64).into_par_iter().filter_map(lemma_instance).collect();
    let mut total = LemmaCounts::default();
    for c in results {
        total.instances += c.instances;
        total.grounded += c.grounded;
        total.size += c.size;
        total.monotonicity += c.monotonicity;
        total.stability += c.stability;
        total.support_keeps_f += c.support_keeps_f;
        total.failure_lost += c.failure_lost;
    }
    let violations = total.grounded + total.size + total.monotonicity + total.stability + total.support_keeps_f + total.failure_lost;
    outcome(
        total.instances >= 1000 && violations == 0,
        format!(
            "{} instances; violations: grounded {}, size {}, monotonicity {}, header stability {}, f in restricted t {}, failure preserved {}",
            total.instances, total.grounded, total.size, total.monotonicity, total.stability, total.support_keeps_f, total.failure_lost
        ),
    )
}

const DISTRIBUTIVITY: &str = "x ^ (y v z) <= x ^ y v x ^ z";

fn end_to_end() -> (Outcome, Vec<(Inclusion, Box<Refutation>)>) {
    let inc = parse_inclusion(DISTRIBUTIVITY).unwrap();
    let budget = Budget { max_attrs: 3, max_vals: 3, max_valuations: Some(100_000), time_limit: None, seed: 0 };
    let Verdict::Refuted(r) = decide(&inc, &budget) else {
        return (outcome(false, "not refuted"), Vec::new());
    };
    let text = format_certificate(&r.certificate);
    let parsed = match parse_certificate(&text) {
        Ok(c) => c,
        Err(e) => return (outcome(false, format!("certificate does not parse: {e}")), Vec::new()),
    };
    let accepted = verify(&parsed, &inc).is_ok();
    let mut no_witness = parsed.clone();
    no_witness.witness = None;
    let witness_rejected = verify(&no_witness, &inc) == Err(VerifyError::MissingWitness);
    let mut inflated = parsed.clone();
    inflated.values.extend((inflated.values.len()..=inc.lhs.size()).map(|i| format!("e{i}")));
    let inflation_rejected = matches!(verify(&inflated, &inc), Err(VerifyError::ValueBound { .. }));
    let detail = format!(
        "refuted in |A| = {}, |D| = {}; certificate {} atoms, {} values; accepted {accepted}, \
         missing witness rejected {witness_rejected}, inflated E rejected {inflation_rejected}",
        r.model.attrs.len(),
        r.model.values.len(),
        parsed.attrs.len(),
        parsed.values.len()
    );
    let pass = accepted && witness_rejected && inflation_rejected;
    (outcome(pass, detail), vec![(inc, r)])
}

/// Further refutations feeding the shrink-run checks.
fn more_refutations() -> Vec<(Inclusion, Box<Refutation>)> {
    let budget = Budget { max_attrs: 3, max_vals: 3, max_valuations: Some(20_000), time_limit: None, seed: 1 };
    [
        "x ^ (y v x ^ z) <= x ^ y v x ^ z",
        "x v y ^ z <= (x v y) ^ (x v z)",
        "(x v y) ^ (x v z) <= x v y ^ z",
        "x <= y",
        "top <= x",
        "x ^ (y v z) <= y v x ^ z",
    ]
    .iter()
    .filter_map(|s| {
        let inc = parse_inclusion(s).unwrap();
        match decide(&inc, &budget) {
            Verdict::Refuted(r) => Some((inc, r)),
            _ => None,
        }
    })
    .collect()
}

fn shrink_runs(runs: &[(Inclusion, Box<Refutation>)]) -> Outcome {
    let mut violations = Vec::new();
    let mut with_pipeline = 0;
    for (inc, r) in runs {
        let c = &r.certificate;
        if c.values.len() > inc.lhs.size() {
            violations.push(format!("{inc}: |E| bound"));
        }
        let m = vars([&inc.lhs, &inc.rhs]).len();
        if rellat_core::boolean::atom_count_bound(c.tableau_size, m).is_none_or(|b| c.attrs.len() as u128 > b) {
            violations.push(format!("{inc}: atom bound"));
        }
        let Some(p) = &r.pipeline else { continue };
        with_pipeline += 1;
        let fs = FunctionSpace::hamming(r.model.attrs.len(), r.model.values.len(), 1024).unwrap();
        let in_b = p.glue.points.iter().all(|&f| p.glue.points.iter().all(|&g| p.algebra.contains(fs.space().dist(f, g))));
        if !in_b {
            violations.push(format!("{inc}: glue distance outside B"));
        }
        if !p.quotient.is_pairwise_complete() {
            violations.push(format!("{inc}: quotient not pairwise-complete"));
        }
        if p.glue.len() as u128 > (p.tableau.len() as u128).pow(p.algebra.atom_count() as u32) {
            violations.push(format!("{inc}: |G| bound"));
        }
        let product: usize = p.sec_pi.fiber_sizes().iter().product();
        if product != p.glue.len() {
            violations.push(format!("{inc}: fibers do not multiply to |G|"));
        }
    }
    outcome(
        violations.is_empty() && with_pipeline > 0,
        format!("{} shrink runs ({with_pipeline} from a point witness); violations: {:?}", runs.len(), violations),
    )
}

fn soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut inclusions = Vec::new();
    while inclusions.len() < 200 {
        let t = random_term(&mut rng, 9);
        let s = random_term(&mut rng, 9);
        // skip the trivial ones so the search has something to chew on
        if matches!(t, Term::Bot) || matches!(s, Term::Top) {
            continue;
        }
        if free_lattice_leq(&t, &s) {
            inclusions.push(Inclusion { lhs: t, rhs: s });
        }
    }
    let budgets = [
        Budget { max_attrs: 2, max_vals: 2, max_valuations: Some(400), time_limit: None, seed: 11 },
        Budget { max_attrs: 3, max_vals: 2, max_valuations: Some(100), time_limit: None, seed: 12 },
        Budget { max_attrs: 1, max_vals: 3, max_valuations: None, time_limit: None, seed: 13 },
    ];
    let refuted: Vec<String> = inclusions
        .par_iter()
        .flat_map_iter(|inc| {
            budgets.iter().filter(move |b| matches!(search(inc, b), Verdict::Refuted(_))).map(move |_| inc.to_string())
        })
        .collect();
    let valid_verdicts = inclusions.iter().all(|inc| matches!(decide(inc, &budgets[0]), Verdict::Valid));
    outcome(
        refuted.is_empty() && valid_verdicts,
        format!("{} Whitman-valid inclusions x {} budgets, raw search refuted {:?}", inclusions.len(), budgets.len(), refuted),
    )
}

fn hamming_products() -> Outcome {
    let mut failures = Vec::new();
    for attrs in 0..=3 {
        for vals in 1..=3 {
            let fs = FunctionSpace::hamming(attrs, vals, 64).unwrap();
            let complete = fs.space().is_pairwise_complete();
            let product = fs
                .space()
                .sec_pi_decomposition(&BooleanSubalgebra::discrete(attrs))
                .map(|d| d.fiber_sizes().iter().product::<usize>() == fs.len() && d.fiber_sizes() == vec![vals; attrs]);
            if !complete || product != Ok(true) {
                failures.push((attrs, vals));
            }
        }
    }
    outcome(failures.is_empty(), format!("16 spaces, failures {failures:?}"))
}

fn main() {
    let secs = Duration::from_secs;
    let mut results = Vec::new();
    results.push(report(1, "enumeration of R({0,1},{a,b})", secs(1), enumeration));
    results.push(report(2, "representation isomorphism", secs(5), isomorphism));
    results.push(report(3, "lattice laws", secs(30), lattice_laws));
    results.push(report(4, "tableau and restriction lemmas", secs(120), lemma_suite));

    // the distributivity run is deterministic, so criterion 5 repeats it alongside further refutations
    results.push(report(5, "glue and certificate bounds on shrink runs", secs(120), || {
        let mut runs = end_to_end().1;
        runs.extend(more_refutations());
        shrink_runs(&runs)
    }));
    results.push(report(6, "end-to-end distributivity refutation", secs(120), || end_to_end().0));
    results.push(report(7, "soundness on Whitman-valid inclusions", secs(300), soundness));
    results.push(report(8, "Hamming spaces are pairwise-complete products", secs(10), hamming_products));

    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
