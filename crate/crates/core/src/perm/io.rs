//! Plain-text group and set files.
//!
//! Group file:
//!
//! ```text
//! degree 10
//! name psl29-10
//! order 360
//! gen (3,9,7,8)(4,10,5,6)
//! gen (1,8,2)(3,4,5)(6,10,7)
//! ```
//!
//! Set file: `degree <n>` then `set <comma-separated points>`. Blank lines
//! and lines starting with `#` are ignored in both.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, PointSet};

/// Contents of a group file before the group is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub name: Option<String>,
    pub order: Option<BigUint>,
    pub generators: Vec<Permutation>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.split_once(char::is_whitespace) {
        Some((k, v)) => (k, v.trim()),
        None => (line, ""),
    }
}

fn parse_degree(value: &str, lineno: usize) -> Result<usize> {
    let d: usize = value
        .parse()
        .map_err(|_| Error::Parse(format!("line {lineno}: bad degree {value:?}")))?;
    if d == 0 {
        return Err(Error::Parse(format!(
            "line {lineno}: degree must be positive"
        )));
    }
    Ok(d)
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut name = None;
        let mut order = None;
        let mut gens = Vec::new();
        for (lineno, line) in content_lines(text) {
            let (key, value) = split_keyword(line);
            match key {
                "degree" => {
                    if degree.is_some() {
                        return Err(Error::Parse(format!("line {lineno}: duplicate degree")));
                    }
                    degree = Some(parse_degree(value, lineno)?);
                }
                "name" => name = Some(value.to_string()),
                "order" => {
                    order =
                        Some(value.parse::<BigUint>().map_err(|_| {
                            Error::Parse(format!("line {lineno}: bad order {value:?}"))
                        })?)
                }
                "gen" => {
                    let n = degree
                        .ok_or_else(|| Error::Parse(format!("line {lineno}: gen before degree")))?;
                    let g = Permutation::parse(value, n).map_err(|e| match e {
                        Error::Parse(m) => Error::Parse(format!("line {lineno}: {m}")),
                        other => other,
                    })?;
                    gens.push(g);
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {lineno}: unknown keyword {other:?}"
                    )))
                }
            }
        }
        let degree = degree.ok_or_else(|| Error::Parse("missing degree line".into()))?;
        Ok(GroupSpec {
            degree,
            name,
            order,
            generators: gens,
        })
    }

    /// Builds the group; a declared `order` is checked against the chain.
    pub fn build(&self) -> Result<PermGroup> {
        let g = match &self.order {
            Some(order) => {
                PermGroup::with_known_order(self.degree, self.generators.clone(), order)?
            }
            None => PermGroup::new(self.degree, self.generators.clone())?,
        };
        Ok(match &self.name {
            Some(n) => g.with_label(n.clone()),
            None => g,
        })
    }

    pub fn from_group(g: &PermGroup, with_order: bool) -> Self {
        GroupSpec {
            degree: g.degree(),
            name: g.label().map(str::to_string),
            order: with_order.then(|| g.order()),
            generators: g.generators().to_vec(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "degree {}", self.degree).unwrap();
        if let Some(n) = &self.name {
            writeln!(s, "name {n}").unwrap();
        }
        if let Some(o) = &self.order {
            writeln!(s, "order {o}").unwrap();
        }
        for g in &self.generators {
            writeln!(s, "gen {}", g.to_cycle_string()).unwrap();
        }
        s
    }
}

pub fn parse_group(text: &str) -> Result<PermGroup> {
    GroupSpec::parse(text)?.build()
}

pub fn read_group(path: &Path) -> Result<PermGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_group(&text)
}

pub fn write_group(path: &Path, g: &PermGroup, with_order: bool) -> Result<()> {
    std::fs::write(path, GroupSpec::from_group(g, with_order).to_text())
        .map_err(|e| Error::io(path, e))
}

pub fn parse_set(text: &str) -> Result<PointSet> {
    let mut degree = None;
    let mut set = None;
    for (lineno, line) in content_lines(text) {
        let (key, value) = split_keyword(line);
        match key {
            "degree" => degree = Some(parse_degree(value, lineno)?),
            "set" => {
                let n = degree
                    .ok_or_else(|| Error::Parse(format!("line {lineno}: set before degree")))?;
                if set.is_some() {
                    return Err(Error::Parse(format!(
                        "line {lineno}: more than one set line"
                    )));
                }
                set = Some(PointSet::parse(value, n)?);
            }
            other => {
                return Err(Error::Parse(format!(
                    "line {lineno}: unknown keyword {other:?}"
                )))
            }
        }
    }
    set.ok_or_else(|| Error::Parse("missing set line".into()))
}

pub fn set_to_text(s: &PointSet) -> String {
    format!("degree {}\nset {}\n", s.degree(), s.to_list_string())
}

pub fn read_set(path: &Path) -> Result<PointSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_set(&text)
}

pub fn write_set(path: &Path, s: &PointSet) -> Result<()> {
    std::fs::write(path, set_to_text(s)).map_err(|e| Error::io(path, e))
}
