//! Certificate files.
//!
//! ```text
//! rellat certificate
//! inclusion: x ^ (y v z) <= x ^ y v x ^ z
//! attrs: a, b
//! blocks: {a} {b}
//! values: e0, e1
//! fibers: 2, 1
//! tableau: 3
//! var x : {a, b} = (e1, e0)
//! witness: (e1, e0)
//! replay: x ^ (y v z) : {a, b} = (e1, e0)
//! ```
//!
//! Lines starting with `#` carry the a-priori bounds for reference and are
//! ignored when reading.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rellat_core::counterexample::Certificate;
use rellat_core::terms::{parse_inclusion, parse_term};
use rellat_core::verify::{pow2, theoretical_bounds};
use rellat_core::boolean::atom_count_bound;

use crate::syntax::{
    content_lines, format_relation, format_row, parse_names, parse_relation, parse_row, split_list, SyntaxError,
};

const MAGIC: &str = "rellat certificate";

pub fn format_certificate(c: &Certificate) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "inclusion: {}", c.inclusion).unwrap();
    writeln!(out, "attrs: {}", c.attrs.join(", ")).unwrap();
    let blocks: Vec<String> = c.atom_blocks.iter().map(|b| format!("{{{}}}", b.join(", "))).collect();
    writeln!(out, "blocks: {}", blocks.join(" ")).unwrap();
    writeln!(out, "values: {}", c.values.join(", ")).unwrap();
    let fibers: Vec<String> = c.fiber_sizes.iter().map(usize::to_string).collect();
    writeln!(out, "fibers: {}", fibers.join(", ")).unwrap();
    writeln!(out, "tableau: {}", c.tableau_size).unwrap();
    for (x, r) in &c.valuation {
        writeln!(out, "var {x} : {}", format_relation(r, &c.attrs, &c.values)).unwrap();
    }
    match &c.witness {
        Some(w) => writeln!(out, "witness: {}", format_row(w, &c.values)).unwrap(),
        None => writeln!(out, "witness: none").unwrap(),
    }
    for (term, r) in &c.replay {
        writeln!(out, "replay: {term} : {}", format_relation(r, &c.attrs, &c.values)).unwrap();
    }
    write_bounds(&mut out, c);
    out
}

fn write_bounds(out: &mut String, c: &Certificate) {
    let inc = &c.inclusion;
    let b = theoretical_bounds(inc);
    let m = rellat_core::terms::vars([&inc.lhs, &inc.rhs]).len();
    writeln!(out, "# |E| = {} <= size(t) = {}", c.values.len(), b.values).unwrap();
    let n = c.tableau_size;
    match atom_count_bound(n, m) {
        Some(bound) => writeln!(out, "# atoms = {} <= 2^(n(n-1)/2+m) = {bound} (n = {n}, m = {m})", c.attrs.len()),
        None => writeln!(out, "# atoms = {} <= 2^(n(n-1)/2+m) (n = {n}, m = {m})", c.attrs.len()),
    }
    .unwrap();
    writeln!(out, "# k = {}: atoms <= 2^p = {} with p = (k^2+3k)/2 = {}", b.k, b.atoms, b.p).unwrap();
    match b.p_alternative {
        Some(p) => writeln!(out, "# alternative exponent (2^(k^2)+3k)/2 = {p}").unwrap(),
        None => writeln!(out, "# alternative exponent (2^(k^2)+3k)/2 overflows").unwrap(),
    }
    if let Some(e) = &b.lattice_log2 {
        match pow2(e) {
            Some(size) if e.bits() <= 16 => writeln!(out, "# |R(E, A')| <= 2^{e} = {size}").unwrap(),
            _ => writeln!(out, "# |R(E, A')| <= 2^{e}").unwrap(),
        }
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, SyntaxError> {
    let mut lines = content_lines(text).peekable();
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        Some((line, _)) => return Err(SyntaxError::new(line, format!("expected `{MAGIC}`"))),
        None => return Err(SyntaxError::new(0, "empty certificate")),
    }
    let mut field = |key: &str| -> Result<(usize, String), SyntaxError> {
        match lines.next() {
            Some((line, l)) => l
                .strip_prefix(key)
                .map(|rest| (line, rest.trim().to_string()))
                .ok_or_else(|| SyntaxError::new(line, format!("expected `{key}`"))),
            None => Err(SyntaxError::new(0, format!("missing `{key}`"))),
        }
    };
    let (line, inc) = field("inclusion:")?;
    let inclusion = parse_inclusion(&inc).map_err(|e| SyntaxError::new(line, e.to_string()))?;
    let (line, attrs) = field("attrs:")?;
    let attrs = parse_names(&attrs, line)?;
    let (line, blocks) = field("blocks:")?;
    let atom_blocks = parse_blocks(&blocks, line)?;
    let (line, values) = field("values:")?;
    let values = parse_names(&values, line)?;
    let (line, fibers) = field("fibers:")?;
    let fiber_sizes = split_list(&fibers)
        .into_iter()
        .map(|x| x.parse().map_err(|_| SyntaxError::new(line, format!("invalid fiber size `{x}`"))))
        .collect::<Result<Vec<usize>, _>>()?;
    let (line, tableau) = field("tableau:")?;
    let tableau_size = tableau
        .parse()
        .map_err(|_| SyntaxError::new(line, format!("invalid tableau size `{tableau}`")))?;

    let mut valuation = BTreeMap::new();
    let mut witness = None;
    let mut seen_witness = false;
    let mut replay = Vec::new();
    for (line, l) in lines {
        if let Some(rest) = l.strip_prefix("var ") {
            let (name, rel) = rest
                .split_once(':')
                .ok_or_else(|| SyntaxError::new(line, "expected `var NAME : RELATION`"))?;
            let r = parse_relation(rel, &attrs, &values, line)?;
            if valuation.insert(name.trim().to_string(), r).is_some() {
                return Err(SyntaxError::new(line, "variable given twice"));
            }
        } else if let Some(rest) = l.strip_prefix("witness:") {
            if seen_witness {
                return Err(SyntaxError::new(line, "witness given twice"));
            }
            seen_witness = true;
            let rest = rest.trim();
            if rest != "none" {
                witness = Some(parse_row(rest, &values, line)?);
            }
        } else if let Some(rest) = l.strip_prefix("replay:") {
            let (term, rel) = rest
                .split_once(':')
                .ok_or_else(|| SyntaxError::new(line, "expected `replay: TERM : RELATION`"))?;
            let term = parse_term(term).map_err(|e| SyntaxError::new(line, e.to_string()))?;
            replay.push((term.to_string(), parse_relation(rel, &attrs, &values, line)?));
        } else {
            return Err(SyntaxError::new(line, format!("unrecognized line `{l}`")));
        }
    }
    if !seen_witness {
        return Err(SyntaxError::new(0, "missing `witness:`"));
    }
    Ok(Certificate {
        inclusion,
        attrs,
        atom_blocks,
        values,
        fiber_sizes,
        tableau_size,
        valuation,
        witness,
        replay,
    })
}

fn parse_blocks(text: &str, line: usize) -> Result<Vec<Vec<String>>, SyntaxError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| SyntaxError::new(line, "expected `{` to open a block"))?;
        let end = body.find('}').ok_or_else(|| SyntaxError::new(line, "unclosed block"))?;
        out.push(parse_names(&body[..end], line)?);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}
