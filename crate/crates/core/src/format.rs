//! Line-oriented text formats.
//!
//! `.rel`:
//!
//! ```text
//! # comment
//! elements: a b c
//! a >= b
//! b >= c
//! ```
//!
//! `.strat`: one stratum per line, labels separated by whitespace; line order
//! is stratum order. Utilities: `<label> = <numerator>/<denominator>`.
//! Embedding maps: `<source-label> -> <target-label>`.
//!
//! In every format `#` starts a comment and blank lines are ignored. Line
//! numbers in errors are 1-based.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::relation::{is_valid_label, Relation};
use crate::representation::Utility;
use crate::stratification::{EmbeddingMap, Stratification};

/// Non-empty content lines with their 1-based numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        }
        .trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn check_label(line: usize, label: &str) -> Result<()> {
    if is_valid_label(label) {
        Ok(())
    } else {
        Err(Error::parse(line, format!("invalid label `{label}`")))
    }
}

/// Splits `a <sep> b` into two labels.
fn split_pair<'a>(line: usize, text: &'a str, sep: &str) -> Result<(&'a str, &'a str)> {
    let (lhs, rhs) = text
        .split_once(sep)
        .ok_or_else(|| Error::parse(line, format!("expected `<label> {sep} <label>`")))?;
    let (lhs, rhs) = (lhs.trim(), rhs.trim());
    if lhs.is_empty() || rhs.is_empty() {
        return Err(Error::parse(line, format!("expected `<label> {sep} <label>`")));
    }
    check_label(line, lhs)?;
    check_label(line, rhs)?;
    Ok((lhs, rhs))
}

pub fn parse_relation(text: &str) -> Result<Relation> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `elements:` header"))?;
    let rest = header
        .strip_prefix("elements:")
        .ok_or_else(|| Error::parse(header_line, "expected `elements: <label> ...`"))?;
    let labels: Vec<&str> = rest.split_whitespace().collect();
    for l in &labels {
        check_label(header_line, l)?;
    }
    let template = Relation::new(labels.iter().copied(), Vec::<(&str, &str)>::new())
        .map_err(|e| Error::parse(header_line, e.to_string()))?;

    let mut cells = Vec::new();
    for (line, text) in lines {
        let (x, y) = split_pair(line, text, ">=")?;
        let i = template
            .index_of(x)
            .ok_or_else(|| Error::parse(line, format!("unknown label `{x}`")))?;
        let j = template
            .index_of(y)
            .ok_or_else(|| Error::parse(line, format!("unknown label `{y}`")))?;
        cells.push((i, j));
    }
    let mut matrix = vec![false; template.len() * template.len()];
    for (i, j) in cells {
        matrix[i * template.len() + j] = true;
    }
    let n = template.len();
    Ok(template.with_cells(|i, j| matrix[i * n + j]))
}

/// Canonical form: labels in declared order, pairs sorted by
/// `(left label, right label)`.
pub fn write_relation(r: &Relation) -> String {
    let mut out = format!("elements: {}\n", r.labels().join(" "));
    let mut pairs: Vec<(&str, &str)> = r.pairs().map(|(i, j)| (r.label(i), r.label(j))).collect();
    pairs.sort_unstable();
    for (x, y) in pairs {
        let _ = writeln!(out, "{x} >= {y}");
    }
    out
}

pub fn parse_stratification(text: &str) -> Result<Stratification> {
    let mut strata = Vec::new();
    for (line, text) in content_lines(text) {
        let labels: Vec<&str> = text.split_whitespace().collect();
        for l in &labels {
            check_label(line, l)?;
        }
        strata.push(labels);
    }
    Stratification::new(strata)
}

pub fn write_stratification(s: &Stratification) -> String {
    s.strata().iter().map(|st| st.join(" ") + "\n").collect()
}

pub fn parse_utility(text: &str) -> Result<Utility> {
    let mut u = Utility::new();
    for (line, text) in content_lines(text) {
        let (label, value) = text
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "expected `<label> = <numerator>/<denominator>`"))?;
        let label = label.trim();
        check_label(line, label)?;
        let value = parse_rational(value.trim()).ok_or_else(|| Error::parse(line, format!("invalid value `{}`", value.trim())))?;
        if u.get(label).is_some() {
            return Err(Error::parse(line, format!("duplicate value for `{label}`")));
        }
        u.insert(label, value);
    }
    Ok(u)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

pub fn write_utility(u: &Utility) -> String {
    u.to_string()
}

/// Reads `<source> -> <target>` lines into an embedding map.
pub fn parse_embedding_map(text: &str, source: Relation, target: Relation) -> Result<EmbeddingMap> {
    let mut pairs = Vec::new();
    for (line, text) in content_lines(text) {
        let (x, fx) = split_pair(line, text, "->")?;
        pairs.push((x.to_string(), fx.to_string()));
    }
    EmbeddingMap::new(source, target, pairs)
}
