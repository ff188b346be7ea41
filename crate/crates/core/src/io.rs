//! JSON and DOT formats for posets, lattices, sequences and subsets.
//!
//! Poset JSON:
//!
//! ```json
//! {"elements": [{"id": 0, "name": "a"}, {"id": 1, "name": "b"}],
//!  "covers": [[0, 1]]}
//! ```
//!
//! `"leq"` may be given instead of (or alongside) `"covers"`; both are read
//! as generating pairs `[lower, upper]` and closed transitively. Unknown
//! fields are ignored. A lattice file is a poset file whose order happens to
//! be a lattice.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::convergence::UpSeq;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementEntry {
    pub id: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<ElementEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<[usize; 2]>>,
}

impl PosetFile {
    pub fn from_poset(p: &FinitePoset) -> Self {
        let order = p.display_order();
        let mut pos = vec![0; p.len()];
        for (k, &id) in order.iter().enumerate() {
            pos[id] = k;
        }
        let mut covers: Vec<[usize; 2]> = p.covers().into_iter().map(|(a, b)| [a, b]).collect();
        covers.sort_by_key(|&[a, b]| (pos[a], pos[b]));
        PosetFile {
            elements: order
                .into_iter()
                .map(|id| ElementEntry {
                    id,
                    name: p.name(id).to_string(),
                })
                .collect(),
            covers: Some(covers),
            leq: None,
        }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        let n = self.elements.len();
        let mut names = vec![None; n];
        for (position, e) in self.elements.iter().enumerate() {
            if e.id >= n || names[e.id].is_some() {
                return Err(Error::NonContiguousIds {
                    position,
                    found: e.id,
                });
            }
            names[e.id] = Some(e.name.clone());
        }
        let names: Vec<String> = names.into_iter().map(|n| n.expect("filled")).collect();
        let mut pairs = Vec::new();
        for (field, list) in [("covers", &self.covers), ("leq", &self.leq)] {
            for (k, &[a, b]) in list.iter().flatten().enumerate() {
                if a >= n || b >= n {
                    return Err(Error::Input(format!(
                        "{field}[{k}]: id {} out of range for {n} elements",
                        a.max(b)
                    )));
                }
                pairs.push((a, b));
            }
        }
        FinitePoset::from_relation(names, &pairs)
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{what}: {e}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    parse_json::<PosetFile>(text, "poset")?.to_poset()
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    FiniteLattice::from_poset(parse_poset(text)?)
}

pub fn load_poset(path: &Path) -> Result<FinitePoset> {
    parse_poset(&read(path)?)
}

pub fn load_lattice(path: &Path) -> Result<FiniteLattice> {
    parse_lattice(&read(path)?)
}

/// Pretty JSON with elements in `(rank, name)` order and a trailing newline.
pub fn poset_to_json(p: &FinitePoset) -> String {
    let mut s = serde_json::to_string_pretty(&PosetFile::from_poset(p)).expect("serializable");
    s.push('\n');
    s
}

/// Hasse diagram, edges pointing upward.
pub fn poset_to_dot(p: &FinitePoset) -> String {
    let order = p.display_order();
    let mut pos = vec![0; p.len()];
    for (k, &id) in order.iter().enumerate() {
        pos[id] = k;
    }
    let mut out = String::from("digraph {\n  rankdir=BT;\n");
    for &id in &order {
        let label = serde_json::to_string(p.name(id)).expect("string");
        out.push_str(&format!("  n{id} [label={label}];\n"));
    }
    let mut covers = p.covers();
    covers.sort_by_key(|&(a, b)| (pos[a], pos[b]));
    for (a, b) in covers {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

pub fn emit_poset(p: &FinitePoset, path: &Path, format: Format) -> Result<()> {
    let text = match format {
        Format::Json => poset_to_json(p),
        Format::Dot => poset_to_dot(p),
    };
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// `{"prefix": [ids], "cycle": [ids]}`, checked against `lattice`.
#[derive(Deserialize)]
#[serde(untagged)]
enum Term {
    Id(usize),
    Name(String),
}

#[derive(Deserialize)]
struct SeqFile {
    #[serde(default)]
    prefix: Vec<Term>,
    cycle: Vec<Term>,
}

/// `{"prefix": [..], "cycle": [..]}` with terms given as ids or names.
pub fn parse_seq(text: &str, lattice: &FiniteLattice) -> Result<UpSeq> {
    let raw: SeqFile = parse_json(text, "sequence")?;
    let resolve = |terms: Vec<Term>| -> Result<Vec<usize>> {
        terms
            .into_iter()
            .map(|t| match t {
                Term::Id(id) => Ok(id),
                Term::Name(n) => lattice
                    .poset()
                    .id_of(&n)
                    .ok_or_else(|| Error::Input(format!("sequence: unknown element {n:?}"))),
            })
            .collect()
    };
    let seq = UpSeq::new(resolve(raw.prefix)?, resolve(raw.cycle)?)?;
    seq.validate(lattice)?;
    Ok(seq)
}

/// A comma-separated list of element names or ids. Names take precedence.
pub fn parse_subset(p: &FinitePoset, spec: &str) -> Result<ElementSet> {
    let mut set = ElementSet::empty();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let id = match p.id_of(token) {
            Some(id) => id,
            None => token
                .parse::<usize>()
                .ok()
                .filter(|&id| id < p.len())
                .ok_or_else(|| Error::Input(format!("subset: unknown element {token:?}")))?,
        };
        set.insert(id);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn round_trip_b3() {
        let b3 = named::boolean(3);
        let text = poset_to_json(b3.poset());
        let back = parse_lattice(&text).unwrap();
        assert_eq!(back.poset(), b3.poset());
        assert_eq!(poset_to_json(back.poset()), text);
    }

    #[test]
    fn covers_and_leq_agree() {
        let covers = r#"{"elements":[{"id":0,"name":"x"},{"id":1,"name":"y"},{"id":2,"name":"z"}],
                         "covers":[[0,1],[1,2]]}"#;
        let leq = r#"{"elements":[{"id":2,"name":"z"},{"id":0,"name":"x"},{"id":1,"name":"y"}],
                      "leq":[[0,1],[1,2],[0,2],[0,0]], "spec": "ignored"}"#;
        assert_eq!(parse_poset(covers).unwrap(), parse_poset(leq).unwrap());
    }

    #[test]
    fn diagnostics() {
        let err = parse_poset("{\"elements\": [}").unwrap_err();
        assert!(
            matches!(&err, Error::Input(m) if m.contains("line 1")),
            "{err}"
        );
        let err =
            parse_poset(r#"{"elements":[{"id":0,"name":"a"}],"covers":[[0,3]]}"#).unwrap_err();
        assert!(
            matches!(&err, Error::Input(m) if m.contains("covers[0]")),
            "{err}"
        );
        let err = parse_poset(r#"{"elements":[{"id":1,"name":"a"}]}"#).unwrap_err();
        assert_eq!(
            err,
            Error::NonContiguousIds {
                position: 0,
                found: 1
            }
        );
        let err = parse_poset(
            r#"{"elements":[{"id":0,"name":"a"},{"id":1,"name":"b"}],"covers":[[0,1],[1,0]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAntisymmetric(..)));
    }

    #[test]
    fn dot_of_b2() {
        let dot = poset_to_dot(named::boolean(2).poset());
        assert_eq!(
            dot,
            "digraph {\n  rankdir=BT;\n  n0 [label=\"∅\"];\n  n1 [label=\"a\"];\n  n2 [label=\"b\"];\n  n3 [label=\"ab\"];\n  n0 -> n1;\n  n0 -> n2;\n  n1 -> n3;\n  n2 -> n3;\n}\n"
        );
    }

    #[test]
    fn subsets_by_name_or_id() {
        let m3 = named::m3();
        assert_eq!(
            parse_subset(m3.poset(), "a, 4").unwrap(),
            ElementSet::from_ids([1, 4])
        );
        assert!(parse_subset(m3.poset(), "q").is_err());
        assert!(parse_subset(m3.poset(), "9").is_err());
    }

    #[test]
    fn sequence_json() {
        let c3 = named::chain(3);
        let s = parse_seq(r#"{"prefix":[0,2],"cycle":[1]}"#, &c3).unwrap();
        assert_eq!(s.at(5), 1);
        assert!(parse_seq(r#"{"cycle":[]}"#, &c3).is_err());
        assert!(parse_seq(r#"{"cycle":[7]}"#, &c3).is_err());
    }
}
