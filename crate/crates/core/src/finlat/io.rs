//! Text lattice files and DOT output.
//!
//! ```text
//! # the pentagon
//! lattice N5 5
//! elem 0 0
//! elem 1 a
//! cover 0 1
//! ```
//!
//! Elements without an `elem` line are labeled by their index.

use std::fmt::Write as _;

use super::{FiniteLattice, FinitePoset};
use crate::error::{Error, Result};

pub fn parse_lattice_file(text: &str) -> Result<FiniteLattice> {
    let (name, labels, covers) = parse_parts(text, "lattice")?;
    FiniteLattice::from_covers(&name, labels, &covers)
}

/// Same format with a `poset` (or `lattice`) header; the covers need only
/// generate a partial order.
pub fn parse_poset_file(text: &str) -> Result<(String, FinitePoset)> {
    let (name, labels, covers) = parse_parts(text, "poset")?;
    Ok((name, FinitePoset::from_covers(labels, &covers)?))
}

type Parts = (String, Vec<String>, Vec<(usize, usize)>);

fn parse_parts(text: &str, header_word: &str) -> Result<Parts> {
    let mut header: Option<(String, usize)> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut covers = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::Format { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        let index = |w: Option<&str>, what: &str| -> Result<usize> {
            let w = w.ok_or_else(|| err(format!("missing {what}")))?;
            w.parse().map_err(|_| err(format!("bad {what} `{w}`")))
        };
        match keyword {
            "lattice" | "poset" if keyword == "lattice" || keyword == header_word => {
                if header.is_some() {
                    return Err(err("duplicate header".into()));
                }
                let name = words.next().ok_or_else(|| err("missing lattice name".into()))?;
                let n = index(words.next(), "element count")?;
                if n == 0 {
                    return Err(err("a lattice needs at least one element".into()));
                }
                header = Some((name.to_string(), n));
                labels = vec![None; n];
            }
            "elem" | "cover" if header.is_none() => {
                return Err(err(format!("`{keyword}` before the `lattice` header")));
            }
            "elem" => {
                let e = index(words.next(), "element index")?;
                if e >= labels.len() {
                    return Err(err(format!("element {e} out of range")));
                }
                let rest: Vec<&str> = words.collect();
                if !rest.is_empty() {
                    labels[e] = Some(rest.join(" "));
                }
            }
            "cover" => {
                let lo = index(words.next(), "lower index")?;
                let hi = index(words.next(), "upper index")?;
                if lo >= labels.len() || hi >= labels.len() {
                    return Err(err(format!("cover ({lo}, {hi}) out of range")));
                }
                if words.next().is_some() {
                    return Err(err("trailing tokens".into()));
                }
                covers.push((lo, hi));
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let (name, _) =
        header.ok_or(Error::Format { line: 0, msg: format!("missing `{header_word}` header") })?;
    let labels: Vec<String> =
        labels.into_iter().enumerate().map(|(i, l)| l.unwrap_or_else(|| i.to_string())).collect();
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
        return Err(Error::Format { line: 0, msg: format!("duplicate label `{dup}`") });
    }
    Ok((name, labels, covers))
}

pub fn write_lattice_file(l: &FiniteLattice) -> String {
    let mut out = String::new();
    let name: String = l.name().chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
    writeln!(out, "lattice {name} {}", l.len()).unwrap();
    for a in l.elements() {
        writeln!(out, "elem {a} {}", l.label(a)).unwrap();
    }
    for (lo, hi) in l.covers() {
        writeln!(out, "cover {lo} {hi}").unwrap();
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram as a DOT digraph, bottom to top.
pub fn to_dot(l: &FiniteLattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", dot_escape(l.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for a in l.elements() {
        writeln!(out, "  n{a} [label=\"{}\"];", dot_escape(l.label(a))).unwrap();
    }
    for (lo, hi) in l.covers() {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finlat::{build_a, build_n5, chain};

    #[test]
    fn round_trip() {
        for l in [chain(1), build_n5(), build_a()] {
            let text = write_lattice_file(&l);
            let back = parse_lattice_file(&text).unwrap();
            assert_eq!(back.labels(), l.labels());
            assert!(l.elements().all(|a| l.elements().all(|b| l.leq(a, b) == back.leq(a, b))));
        }
    }

    #[test]
    fn parse_with_comments_and_defaults() {
        let l = parse_lattice_file("# two\nlattice C2 2\ncover 0 1 # edge\n").unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.label(1), "1");
        assert_eq!(l.top(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_lattice_file("cover 0 1"), Err(Error::Format { line: 1, .. })));
        assert!(matches!(parse_lattice_file("lattice L 2\ncover 0 5"), Err(Error::Format { line: 2, .. })));
        assert!(matches!(parse_lattice_file("lattice L 2"), Err(Error::NotALattice { .. })));
        assert!(parse_lattice_file("").is_err());
    }

    #[test]
    fn poset_files() {
        let (name, p) =
            parse_poset_file("poset V 3\nelem 0 a\nelem 1 b\nelem 2 c\ncover 0 2\ncover 1 2\n").unwrap();
        assert_eq!(name, "V");
        assert_eq!(p.len(), 3);
        assert!(p.leq(0, 2) && !p.leq(0, 1));
        assert!(parse_lattice_file("poset V 1").is_err());
        assert!(parse_poset_file("lattice C1 1").is_ok());
    }

    #[test]
    fn dot_output() {
        let dot = to_dot(&chain(2));
        assert_eq!(dot.matches("->").count(), 1);
        let n5 = to_dot(&build_n5());
        assert_eq!(n5.matches("->").count(), 5);
        assert_eq!(n5.matches("label=").count(), 5);
        let a = build_a();
        assert_eq!(to_dot(&a).matches("->").count(), a.covers().len());
    }
}
