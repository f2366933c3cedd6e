use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::glue::{generators, glue_completion, GlueSet, DEFAULT_GLUE_LIMIT};
use super::tableau::{tableau_from_tree, Tableau};
use super::{Valuation, Witness};
use crate::boolean::{AttrSet, BooleanSubalgebra, Universe};
use crate::lattice::{evaluate, evaluate_tree, Lattice};
use crate::points::PointSet;
use crate::rel_lattice::{RelLattice, Relation, Row};
use crate::space::{FunctionSpace, SecPi, Space};
use crate::space_lattice::{quotient_space, ClosedPair, SpaceLattice};
use crate::terms::{vars, Inclusion, Term};
use crate::Error;

/// A finite countermodel `R(E, B')` for an inclusion, in table form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub inclusion: Inclusion,
    /// Names of the attributes of `B'`, one per atom.
    pub attrs: Vec<String>,
    /// The original attributes making up each atom.
    pub atom_blocks: Vec<Vec<String>>,
    /// The value set `E`.
    pub values: Vec<String>,
    /// Number of distinct values each atom takes on the glue set.
    pub fiber_sizes: Vec<usize>,
    /// `|T(f, t)|`; zero for an attribute witness.
    pub tableau_size: usize,
    pub valuation: BTreeMap<String, Relation>,
    /// A row over all of `B'` lying in the value of the left side but not the right.
    pub witness: Option<Row>,
    /// Every subterm of the left side, then of the right side, with its value.
    pub replay: Vec<(String, Relation)>,
}

impl Certificate {
    pub fn lattice(&self) -> RelLattice {
        RelLattice::new(self.attrs.len(), self.values.len())
    }
}

/// Intermediate objects of a shrink run from a point witness.
#[derive(Clone, Debug)]
pub struct PipelineTrace {
    pub tableau: Tableau,
    pub generators: BTreeSet<AttrSet>,
    pub algebra: BooleanSubalgebra,
    pub glue: GlueSet,
    /// `(G, δ_At(B))`, point `i` being `glue.points[i]`.
    pub quotient: Space,
    pub sec_pi: SecPi,
    /// The transported valuation in `L(G, δ_At(B))`.
    pub transported: Valuation,
    /// Position of the witness in `G`.
    pub witness_position: usize,
}

#[derive(Clone, Debug)]
pub struct Shrinkage {
    pub certificate: Certificate,
    pub pipeline: Option<PipelineTrace>,
}

/// Turns a witness of the failure of `inclusion` in `L(D^A, δ)` under
/// `valuation` into a certificate over `R(E, At(B))`.
///
/// Every stage is re-checked; a failed check is reported as
/// [`Error::Consistency`].
pub fn shrink(
    inclusion: &Inclusion,
    valuation: &Valuation,
    witness: Witness,
    space: &FunctionSpace,
    universe: &Universe,
) -> Result<Shrinkage, Error> {
    if universe.len() != space.attrs() {
        return Err(Error::Precondition("universe and function space disagree"));
    }
    let (t, s) = (&inclusion.lhs, &inclusion.rhs);
    let lattice = SpaceLattice::new(space.space());
    let tree_t = evaluate_tree(&lattice, t, valuation)?;
    let vs = evaluate(&lattice, s, valuation)?;
    match witness {
        Witness::Attribute(a) => {
            if !tree_t.value.header.contains(a) || vs.header.contains(a) {
                return Err(Error::Precondition("the attribute does not witness the failure"));
            }
            attribute_certificate(inclusion, valuation, a)
        }
        Witness::Point(f) => {
            if !tree_t.value.body.contains(f) || vs.body.contains(f) {
                return Err(Error::Precondition("the point does not witness the failure"));
            }
            let tableau = tableau_from_tree(space.space(), f, t, &tree_t)?;
            point_certificate(inclusion, valuation, f, tableau, space, universe)
        }
    }
}

/// The two-element lattice `R({e0}, ∅)`: a variable is top exactly when its
/// closed-pair header contains `a`.
fn attribute_certificate(inclusion: &Inclusion, valuation: &Valuation, a: usize) -> Result<Shrinkage, Error> {
    let rl = RelLattice::new(0, 1);
    let mut table = BTreeMap::new();
    for x in vars([&inclusion.lhs, &inclusion.rhs]) {
        let p = valuation.get(&x).ok_or_else(|| Error::UnboundVariable(x.clone()))?;
        table.insert(x, if p.header.contains(a) { rl.top() } else { rl.bottom() });
    }
    let witness = Row::new();
    let replay = replay(inclusion, &rl, &table, &witness)?;
    Ok(Shrinkage {
        certificate: Certificate {
            inclusion: inclusion.clone(),
            attrs: Vec::new(),
            atom_blocks: Vec::new(),
            values: vec!["e0".to_string()],
            fiber_sizes: Vec::new(),
            tableau_size: 0,
            valuation: table,
            witness: Some(witness),
            replay,
        },
        pipeline: None,
    })
}

fn point_certificate(
    inclusion: &Inclusion,
    valuation: &Valuation,
    f: usize,
    tableau: Tableau,
    space: &FunctionSpace,
    universe: &Universe,
) -> Result<Shrinkage, Error> {
    let (t, s) = (&inclusion.lhs, &inclusion.rhs);
    let points = tableau.points();
    let gens = generators(space, &points, valuation, t, s)?;
    let algebra = BooleanSubalgebra::generated(space.attrs(), gens.iter().copied());
    let glue = glue_completion(space, &points, &algebra, DEFAULT_GLUE_LIMIT)?;
    glue.certify_pairwise_complete(space)
        .map_err(|_| Error::Consistency("glue set is not pairwise-complete"))?;
    let quotient = quotient_space(&space.space().subspace(&glue.points), &algebra)
        .map_err(|_| Error::Consistency("glue distance outside the generated algebra"))?;
    let fpos = glue.position(f).ok_or(Error::Consistency("witness missing from the glue set"))?;

    let qlat = SpaceLattice::new(&quotient);
    let mut transported = Valuation::new();
    for x in vars([t, s]) {
        let p = &valuation[&x];
        let header = algebra
            .quotient(p.header)
            .map_err(|_| Error::Consistency("valuation header outside the generated algebra"))?;
        let body = PointSet::from_indices(
            glue.len(),
            glue.points.iter().enumerate().filter(|(_, &g)| p.body.contains(g)).map(|(i, _)| i),
        );
        let q = ClosedPair::new(header, body);
        debug_assert!(qlat.is_element(&q));
        transported.insert(x, q);
    }
    let (qt, qs) = (evaluate(&qlat, t, &transported)?, evaluate(&qlat, s, &transported)?);
    if !qt.body.contains(fpos) || qs.body.contains(fpos) {
        return Err(Error::Consistency("failure does not transfer to the quotient lattice"));
    }

    let atoms = algebra.atom_count();
    let sec_pi = quotient
        .product_decomposition(&BooleanSubalgebra::discrete(atoms))
        .map_err(|_| Error::Consistency("quotient space is not a product of fibers"))?;
    let sizes = sec_pi.fiber_sizes();
    let k = sizes.iter().copied().max().unwrap_or(1).max(1);

    let table: BTreeMap<String, Relation> = transported
        .iter()
        .map(|(x, q)| (x.clone(), to_table(q, &sec_pi, &sizes, k)))
        .collect();
    let witness: Row = sec_pi.coords[fpos].iter().map(|&c| c as u32).collect();
    let rl = RelLattice::new(atoms, k);
    let replay = replay(inclusion, &rl, &table, &witness)?;

    let atom_blocks: Vec<Vec<String>> = algebra
        .atoms()
        .iter()
        .map(|b| b.iter().map(|a| universe.name(a).to_string()).collect())
        .collect();
    let certificate = Certificate {
        inclusion: inclusion.clone(),
        attrs: atom_names(&atom_blocks),
        atom_blocks,
        values: (0..k).map(|i| format!("e{i}")).collect(),
        fiber_sizes: sizes,
        tableau_size: tableau.len(),
        valuation: table,
        witness: Some(witness),
        replay,
    };
    Ok(Shrinkage {
        certificate,
        pipeline: Some(PipelineTrace {
            tableau,
            generators: gens,
            algebra,
            glue,
            quotient,
            sec_pi,
            transported,
            witness_position: fpos,
        }),
    })
}

/// The relation of `E^{B'}` corresponding to `q` along the retraction that
/// clamps each coordinate into its fiber.
fn to_table(q: &ClosedPair, sec_pi: &SecPi, sizes: &[usize], k: usize) -> Relation {
    let header = q.header.complement(sizes.len());
    let mut rows = BTreeSet::new();
    for z in q.body.iter() {
        let c = &sec_pi.coords[z];
        let mut partial: Vec<Row> = vec![Row::new()];
        for a in header.iter() {
            let last = sizes[a] - 1;
            let range = if c[a] == last { last..k } else { c[a]..c[a] + 1 };
            partial = partial
                .into_iter()
                .flat_map(|r| {
                    range.clone().map(move |v| {
                        let mut r = r.clone();
                        r.push(v as u32);
                        r
                    })
                })
                .collect();
        }
        rows.extend(partial);
    }
    Relation { header, rows }
}

fn atom_names(blocks: &[Vec<String>]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(blocks.len());
    for b in blocks {
        let base = b.join("_");
        let mut name = base.clone();
        let mut i = 1;
        while out.contains(&name) {
            name = format!("{base}_{i}");
            i += 1;
        }
        out.push(name);
    }
    out
}

/// Evaluates both sides in table form and checks the witness.
fn replay(
    inclusion: &Inclusion,
    rl: &RelLattice,
    table: &BTreeMap<String, Relation>,
    witness: &[u32],
) -> Result<Vec<(String, Relation)>, Error> {
    let (t, s) = (&inclusion.lhs, &inclusion.rhs);
    let (rt, rs) = (evaluate_tree(rl, t, table)?, evaluate_tree(rl, s, table)?);
    if !rt.value.contains_function(witness) || rs.value.contains_function(witness) {
        return Err(Error::Consistency("failure does not transfer to the finite relational lattice"));
    }
    let side = |term: &Term, tree: &crate::lattice::EvalTree<Relation>| {
        term.subterms()
            .into_iter()
            .zip(tree.preorder())
            .map(|(u, r)| (u.to_string(), r.clone()))
            .collect::<Vec<_>>()
    };
    let mut out = side(t, &rt);
    out.extend(side(s, &rs));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexample::find_witness;
    use crate::terms::parse_inclusion;

    fn distributivity_model() -> (FunctionSpace, Universe, Valuation) {
        // y v z is top, while x ^ y and x ^ z are both empty on {a,b}
        let h = FunctionSpace::hamming(2, 2, 16).unwrap();
        let u = Universe::new(["a", "b"]).unwrap();
        let rl = RelLattice::new(2, 2);
        let rel = |hdr: &[usize], rows: &[&[u32]]| {
            Relation::new(AttrSet::from_indices(hdr.iter().copied()), rows.iter().map(|r| r.to_vec())).unwrap()
        };
        let v: Valuation = [
            ("x", rel(&[0, 1], &[&[1, 1]])),
            ("y", rel(&[0], &[&[0]])),
            ("z", rel(&[1], &[&[0]])),
        ]
        .into_iter()
        .map(|(n, r)| (n.to_string(), rl.to_closed_pair(&r, &h)))
        .collect();
        (h, u, v)
    }

    #[test]
    fn distributivity_failure_shrinks_and_replays() {
        let (h, u, v) = distributivity_model();
        let inc = parse_inclusion("x ^ (y v z) <= x ^ y v x ^ z").unwrap();
        let lat = SpaceLattice::new(h.space());
        let w = find_witness(&lat, &inc.lhs, &inc.rhs, &v).unwrap().expect("fails");
        let out = shrink(&inc, &v, w, &h, &u).unwrap();
        let c = &out.certificate;
        assert!(c.values.len() <= inc.lhs.size());
        assert!(c.tableau_size <= inc.lhs.size());
        assert_eq!(c.replay.len(), inc.lhs.subterms().len() + inc.rhs.subterms().len());
        assert_eq!(c.replay[0].0, "x ^ (y v z)");
    }

    #[test]
    fn attribute_witness_gives_two_element_lattice() {
        let h = FunctionSpace::hamming(1, 2, 16).unwrap();
        let u = Universe::new(["a"]).unwrap();
        let lat = SpaceLattice::new(h.space());
        let v: Valuation = [("x".to_string(), lat.top())].into_iter().collect();
        let inc = parse_inclusion("x <= bot").unwrap();
        let out = shrink(&inc, &v, Witness::Attribute(0), &h, &u).unwrap();
        let c = &out.certificate;
        assert!(c.attrs.is_empty());
        assert_eq!(c.values, ["e0"]);
        assert_eq!(c.valuation["x"], RelLattice::new(0, 1).top());
        assert_eq!(c.witness, Some(Vec::new()));
        assert!(out.pipeline.is_none());
    }

    #[test]
    fn non_witnesses_are_rejected() {
        let (h, u, v) = distributivity_model();
        let inc = parse_inclusion("x <= x").unwrap();
        assert!(matches!(shrink(&inc, &v, Witness::Point(0), &h, &u), Err(Error::Precondition(_))));
        assert!(matches!(shrink(&inc, &v, Witness::Attribute(0), &h, &u), Err(Error::Precondition(_))));
    }

    #[test]
    fn atom_names_are_unique() {
        let b = vec![vec!["a".to_string(), "b".to_string()], vec!["a_b".to_string()]];
        assert_eq!(atom_names(&b), ["a_b", "a_b_1"]);
    }
}
