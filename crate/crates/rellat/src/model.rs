//! Model files: an attribute set, a value set and a valuation.
//!
//! ```text
//! # comments run to the end of the line
//! attrs: a, b
//! values: 0, 1
//! var x : {a, b} = (0, 1) (1, 1)
//! var y : {b} = (0)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rellat_core::counterexample::Valuation;
use rellat_core::{FunctionSpace, RelLattice, Relation, Universe, ValueSet};

use crate::syntax::{content_lines, format_relation, is_name, parse_names, parse_relation, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub attrs: Vec<String>,
    pub values: Vec<String>,
    pub valuation: BTreeMap<String, Relation>,
}

impl Model {
    pub fn lattice(&self) -> RelLattice {
        RelLattice::new(self.attrs.len(), self.values.len())
    }

    pub fn universe(&self) -> Universe {
        Universe::new(self.attrs.iter().cloned()).expect("names checked by the parser")
    }

    pub fn value_set(&self) -> ValueSet {
        ValueSet::new(self.values.iter().cloned()).expect("names checked by the parser")
    }

    /// The valuation as closed pairs over `space`, which must be `D^A`.
    pub fn closed_pairs(&self, space: &FunctionSpace) -> Valuation {
        let rl = self.lattice();
        self.valuation
            .iter()
            .map(|(x, r)| (x.clone(), rl.to_closed_pair(r, space)))
            .collect()
    }
}

fn unique(names: Vec<String>, line: usize, what: &str) -> Result<Vec<String>, SyntaxError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(SyntaxError::new(line, format!("duplicate {what} `{n}`")));
        }
    }
    Ok(names)
}

pub fn parse_model(text: &str) -> Result<Model, SyntaxError> {
    let mut attrs: Option<Vec<String>> = None;
    let mut values: Option<Vec<String>> = None;
    let mut valuation = BTreeMap::new();
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("attrs:") {
            if attrs.is_some() {
                return Err(SyntaxError::new(line, "`attrs:` given twice"));
            }
            let names = unique(parse_names(rest, line)?, line, "attribute")?;
            if names.len() > rellat_core::boolean::MAX_ATTRS {
                return Err(SyntaxError::new(line, "too many attributes"));
            }
            attrs = Some(names);
        } else if let Some(rest) = l.strip_prefix("values:") {
            if values.is_some() {
                return Err(SyntaxError::new(line, "`values:` given twice"));
            }
            values = Some(unique(parse_names(rest, line)?, line, "value")?);
        } else if let Some(rest) = l.strip_prefix("var ") {
            let (a, v) = match (&attrs, &values) {
                (Some(a), Some(v)) => (a, v),
                _ => return Err(SyntaxError::new(line, "`attrs:` and `values:` must come before variables")),
            };
            let (name, rel) = rest
                .split_once(':')
                .ok_or_else(|| SyntaxError::new(line, "expected `var NAME : RELATION`"))?;
            let name = name.trim();
            if !is_name(name) {
                return Err(SyntaxError::new(line, format!("invalid variable name `{name}`")));
            }
            let r = parse_relation(rel, a, v, line)?;
            if valuation.insert(name.to_string(), r).is_some() {
                return Err(SyntaxError::new(line, format!("variable `{name}` given twice")));
            }
        } else {
            return Err(SyntaxError::new(line, format!("unrecognized line `{l}`")));
        }
    }
    Ok(Model {
        attrs: attrs.ok_or_else(|| SyntaxError::new(0, "missing `attrs:` line"))?,
        values: values.ok_or_else(|| SyntaxError::new(0, "missing `values:` line"))?,
        valuation,
    })
}

pub fn format_model(m: &Model) -> String {
    let mut out = String::new();
    writeln!(out, "attrs: {}", m.attrs.join(", ")).unwrap();
    writeln!(out, "values: {}", m.values.join(", ")).unwrap();
    for (x, r) in &m.valuation {
        writeln!(out, "var {x} : {}", format_relation(r, &m.attrs, &m.values)).unwrap();
    }
    out
}

/// `a, b, ..., z, a1, b1, ...`.
pub fn default_attr_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            let c = (b'a' + (i % 26) as u8) as char;
            if i < 26 {
                c.to_string()
            } else {
                format!("{c}{}", i / 26)
            }
        })
        .collect()
}

/// `0, 1, ..., n - 1`.
pub fn default_value_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}
