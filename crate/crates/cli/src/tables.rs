//! The three TSV file shapes the tool reads: knot tables
//! (`name<TAB>gauss code`), fixture tables (`name<TAB>polynomial<TAB>v<TAB>g`)
//! and mismatch allow-lists (`name<TAB>field`). UTF-8; blank lines and lines
//! whose first non-space character is `#` are skipped.

use std::collections::HashSet;
use std::fmt;

#[derive(Debug)]
pub struct KnotRow {
    pub lineno: usize,
    pub name: String,
    pub code: String,
}

pub struct FixtureRow {
    pub lineno: usize,
    pub name: String,
    pub polynomial: String,
    pub v: u64,
    pub g: u64,
}

/// One fixture disagreement: which knot, which column, and both values.
/// Only built when the two values differ.
pub struct ErrataEntry {
    pub name: String,
    pub field: &'static str,
    pub expected: String,
    pub computed: String,
}

impl fmt::Display for ErrataEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "errata: {} {}: expected {}, computed {}",
            self.name, self.field, self.expected, self.computed
        )
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim_end_matches('\r');
        let lead = line.trim_start();
        if lead.is_empty() || lead.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Each data line becomes a row or a diagnostic; the caller decides whether
/// bad lines are skipped (batch) or fatal (verify).
pub fn parse_knot_table(text: &str) -> Vec<Result<KnotRow, String>> {
    data_lines(text)
        .map(|(lineno, line)| {
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                [name, code] if !name.trim().is_empty() => Ok(KnotRow {
                    lineno,
                    name: name.trim().to_string(),
                    code: code.trim().to_string(),
                }),
                _ => Err(format!("line {lineno}: expected name<TAB>gauss code")),
            }
        })
        .collect()
}

pub fn parse_fixtures(text: &str) -> Result<Vec<FixtureRow>, String> {
    data_lines(text)
        .map(|(lineno, line)| {
            let fields: Vec<&str> = line.split('\t').collect();
            let [name, polynomial, v, g] = fields.as_slice() else {
                return Err(format!("line {lineno}: expected name<TAB>polynomial<TAB>v<TAB>g"));
            };
            let v = v.trim().parse().map_err(|_| format!("line {lineno}: bad v {v:?}"))?;
            let g = g.trim().parse().map_err(|_| format!("line {lineno}: bad g {g:?}"))?;
            Ok(FixtureRow {
                lineno,
                name: name.trim().to_string(),
                polynomial: polynomial.trim().to_string(),
                v,
                g,
            })
        })
        .collect()
}

pub fn parse_allow_list(text: &str) -> Result<HashSet<(String, String)>, String> {
    data_lines(text)
        .map(|(lineno, line)| {
            let fields: Vec<&str> = line.split('\t').collect();
            let [name, field] = fields.as_slice() else {
                return Err(format!("line {lineno}: expected name<TAB>field"));
            };
            let field = field.trim();
            if !matches!(field, "polynomial" | "v" | "g") {
                return Err(format!("line {lineno}: unknown field {field:?}"));
            }
            Ok((name.trim().to_string(), field.to_string()))
        })
        .collect()
}
