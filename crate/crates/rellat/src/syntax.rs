//! The shared line syntax of model and certificate files.
//!
//! A relation is written `{a, b} = (0, 1) (1, 1)`: a header, then one
//! parenthesized row per tuple, values listed in the order of the header as
//! written. `{} = ()` is the top element and `{} =` the empty relation.

use std::fmt::Write as _;

use rellat_core::rel_lattice::Row;
use rellat_core::{AttrSet, Relation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        SyntaxError { line, message: message.into() }
    }
}

/// Names may not contain separators or whitespace.
pub fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '-' | '+' | '*'))
}

/// Splits a comma-separated list, dropping empty items.
pub fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

pub fn parse_names(s: &str, line: usize) -> Result<Vec<String>, SyntaxError> {
    split_list(s)
        .into_iter()
        .map(|n| {
            if is_name(n) {
                Ok(n.to_string())
            } else {
                Err(SyntaxError::new(line, format!("invalid name `{n}`")))
            }
        })
        .collect()
}

fn lookup(names: &[String], name: &str) -> Option<usize> {
    names.iter().position(|n| n == name)
}

/// Parses `{...} = (...) ...` against the given attribute and value names.
pub fn parse_relation(text: &str, attrs: &[String], values: &[String], line: usize) -> Result<Relation, SyntaxError> {
    let err = |m: String| SyntaxError::new(line, m);
    let text = text.trim();
    let rest = text
        .strip_prefix('{')
        .ok_or_else(|| err("expected `{` to open the header".into()))?;
    let close = rest.find('}').ok_or_else(|| err("unclosed header".into()))?;
    let mut order = Vec::new();
    for name in split_list(&rest[..close]) {
        let a = lookup(attrs, name).ok_or_else(|| err(format!("unknown attribute `{name}`")))?;
        if order.contains(&a) {
            return Err(err(format!("attribute `{name}` repeated in header")));
        }
        order.push(a);
    }
    let header = AttrSet::from_indices(order.iter().copied());
    // position of each written column in increasing attribute order
    let mut sorted = order.clone();
    sorted.sort_unstable();
    let slot: Vec<usize> = order.iter().map(|a| sorted.binary_search(a).unwrap()).collect();

    let mut rest = rest[close + 1..].trim_start();
    rest = rest.strip_prefix('=').ok_or_else(|| err("expected `=` after the header".into()))?;
    let mut rows = Vec::new();
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| err(format!("expected `(`, found `{rest}`")))?;
        let end = body.find(')').ok_or_else(|| err("unclosed row".into()))?;
        let items = split_list(&body[..end]);
        if items.len() != order.len() {
            return Err(err(format!("row has {} values, header has {}", items.len(), order.len())));
        }
        let mut row: Row = vec![0; order.len()];
        for (i, v) in items.into_iter().enumerate() {
            row[slot[i]] = lookup(values, v).ok_or_else(|| err(format!("unknown value `{v}`")))? as u32;
        }
        rows.push(row);
        rest = &body[end + 1..];
    }
    Relation::new(header, rows).map_err(|e| err(e.to_string()))
}

pub fn format_relation(r: &Relation, attrs: &[String], values: &[String]) -> String {
    let mut out = String::from("{");
    let header: Vec<&str> = r.header.iter().map(|a| attrs[a].as_str()).collect();
    out.push_str(&header.join(", "));
    out.push_str("} =");
    for row in &r.rows {
        let vals: Vec<&str> = row.iter().map(|&v| values[v as usize].as_str()).collect();
        write!(out, " ({})", vals.join(", ")).unwrap();
    }
    out
}

pub fn format_row(row: &[u32], values: &[String]) -> String {
    let vals: Vec<&str> = row.iter().map(|&v| values[v as usize].as_str()).collect();
    format!("({})", vals.join(", "))
}

pub fn parse_row(text: &str, values: &[String], line: usize) -> Result<Row, SyntaxError> {
    let body = text
        .trim()
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| SyntaxError::new(line, "expected a parenthesized row"))?;
    split_list(body)
        .into_iter()
        .map(|v| {
            lookup(values, v)
                .map(|i| i as u32)
                .ok_or_else(|| SyntaxError::new(line, format!("unknown value `{v}`")))
        })
        .collect()
}

/// Lines with comments and surrounding whitespace removed, numbered from 1,
/// blank lines skipped.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rows_follow_the_written_header() {
        let (a, v) = (names(&["a", "b"]), names(&["0", "1"]));
        let r = parse_relation("{b, a} = (0, 1) (1, 1)", &a, &v, 1).unwrap();
        assert_eq!(r.header, AttrSet::full(2));
        assert_eq!(r.rows.iter().cloned().collect::<Vec<_>>(), [vec![1, 0], vec![1, 1]]);
        assert_eq!(format_relation(&r, &a, &v), "{a, b} = (1, 0) (1, 1)");
    }

    #[test]
    fn units() {
        let (a, v) = (names(&["a"]), names(&["0"]));
        let top = parse_relation("{} = ()", &a, &v, 1).unwrap();
        assert_eq!(top.rows.len(), 1);
        let empty = parse_relation("{a} =", &a, &v, 1).unwrap();
        assert!(empty.rows.is_empty());
        assert_eq!(format_relation(&top, &a, &v), "{} = ()");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let (a, v) = (names(&["a"]), names(&["0"]));
        assert_eq!(parse_relation("{c} =", &a, &v, 7).unwrap_err().line, 7);
        assert!(parse_relation("{a} = (0) (0)", &a, &v, 1).is_err());
        assert!(parse_relation("{a} = (0, 0)", &a, &v, 1).is_err());
        assert!(parse_relation("{a, a} =", &a, &v, 1).is_err());
    }
}
