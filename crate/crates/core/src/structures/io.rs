//! JSON interchange and DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{FinStructure, Signature, Z5};
use crate::error::{Error, Result};

/// Wire form of a structure. Keys that do not apply are omitted on output
/// and default to empty on input. Symmetric pairs are written with `u < v`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureJson {
    pub sig: Signature,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<Z5>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r: Vec<[usize; 3]>,
}

impl From<&FinStructure> for StructureJson {
    fn from(g: &FinStructure) -> Self {
        StructureJson {
            sig: g.sig(),
            n: g.len(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().to_vec(),
            s: g.s_pairs().into_iter().map(|(u, v)| [u, v]).collect(),
            t: g.t_pairs().into_iter().map(|(u, v)| [u, v]).collect(),
            r: g.r_triples().into_iter().map(|(x, y, z)| [x, y, z]).collect(),
        }
    }
}

impl TryFrom<StructureJson> for FinStructure {
    type Error = Error;

    fn try_from(j: StructureJson) -> Result<FinStructure> {
        let foreign = |present: bool, key: &str| -> Result<()> {
            if present {
                Err(Error::Malformed(format!("key `{key}` does not apply to signature {}", j.sig)))
            } else {
                Ok(())
            }
        };
        let mut g = FinStructure::new(j.sig, j.n)?;
        match j.sig {
            Signature::Vl5Graph | Signature::PlainGraph => {
                foreign(!j.s.is_empty(), "s")?;
                foreign(!j.t.is_empty(), "t")?;
                foreign(!j.r.is_empty(), "r")?;
                if j.sig == Signature::Vl5Graph {
                    if j.labels.len() != j.n {
                        return Err(Error::Malformed(format!(
                            "expected {} labels, found {}",
                            j.n,
                            j.labels.len()
                        )));
                    }
                    for (v, &l) in j.labels.iter().enumerate() {
                        g.set_label(v, l)?;
                    }
                } else {
                    foreign(!j.labels.is_empty(), "labels")?;
                }
                for [u, v] in j.edges {
                    g.add_edge(u, v)?;
                }
            }
            Signature::StDigraph => {
                foreign(!j.edges.is_empty(), "edges")?;
                foreign(!j.labels.is_empty(), "labels")?;
                foreign(!j.r.is_empty(), "r")?;
                for [u, v] in j.s {
                    g.add_s(u, v)?;
                }
                for [u, v] in j.t {
                    g.add_t(u, v)?;
                }
            }
            Signature::Ternary => {
                foreign(!j.edges.is_empty(), "edges")?;
                foreign(!j.labels.is_empty(), "labels")?;
                foreign(!j.s.is_empty() || !j.t.is_empty(), "s/t")?;
                for [x, y, z] in j.r {
                    g.add_r(x, y, z)?;
                }
            }
        }
        Ok(g)
    }
}

impl Serialize for FinStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StructureJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = StructureJson::deserialize(d)?;
        FinStructure::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(g: &FinStructure) -> String {
    serde_json::to_string(g).expect("structure serializes")
}

pub fn from_json(text: &str) -> Result<FinStructure> {
    let j: StructureJson = serde_json::from_str(text)?;
    FinStructure::try_from(j)
}

/// DOT rendering. Labeled vertices show `index:label`; `S` arrows are blue,
/// `T` arrows red. Ternary structures have no DOT form.
pub fn to_dot(g: &FinStructure, name: &str) -> Result<String> {
    let mut out = String::new();
    match g.sig() {
        Signature::Vl5Graph | Signature::PlainGraph => {
            writeln!(out, "graph {name} {{").unwrap();
            for v in g.vertices() {
                if g.sig() == Signature::Vl5Graph {
                    writeln!(out, "  {v} [label=\"{v}:{}\"];", g.label(v)).unwrap();
                } else {
                    writeln!(out, "  {v};").unwrap();
                }
            }
            for (u, v) in g.edges() {
                writeln!(out, "  {u} -- {v};").unwrap();
            }
        }
        Signature::StDigraph => {
            writeln!(out, "digraph {name} {{").unwrap();
            for v in g.vertices() {
                writeln!(out, "  {v};").unwrap();
            }
            for (u, v) in g.s_pairs() {
                writeln!(out, "  {u} -> {v} [color=blue, label=\"S\"];").unwrap();
            }
            for (u, v) in g.t_pairs() {
                writeln!(out, "  {u} -> {v} [color=red, label=\"T\"];").unwrap();
            }
        }
        Signature::Ternary => {
            return Err(Error::SignatureMismatch {
                expected: Signature::PlainGraph,
                found: Signature::Ternary,
            })
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absent_keys_default_to_empty() {
        let g = from_json(r#"{"sig":"graph","n":3,"edges":[[0,1]]}"#).unwrap();
        assert_eq!(g, FinStructure::graph(3, &[(0, 1)]).unwrap());
        let t = from_json(r#"{"sig":"ternary","n":2}"#).unwrap();
        assert!(t.r_triples().is_empty());
    }

    #[test]
    fn symmetric_pairs_written_once() {
        let g = FinStructure::vl5(&[0, 3], &[(1, 0)]).unwrap();
        assert_eq!(to_json(&g), r#"{"sig":"vl5","n":2,"edges":[[0,1]],"labels":[0,3]}"#);
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(from_json(r#"{"sig":"graph","n":2,"edges":[[0,2]]}"#).is_err());
        assert!(from_json(r#"{"sig":"vl5","n":2,"labels":[0]}"#).is_err());
        assert!(from_json(r#"{"sig":"vl5","n":1,"labels":[7]}"#).is_err());
        assert!(from_json(r#"{"sig":"graph","n":1,"s":[[0,0]]}"#).is_err());
        assert!(from_json(r#"{"sig":"quaternary","n":1}"#).is_err());
    }

    #[test]
    fn dot_shapes() {
        let g = FinStructure::st(2, &[(0, 1)], &[(1, 0)]).unwrap();
        let dot = to_dot(&g, "g").unwrap();
        assert!(dot.starts_with("digraph g {"));
        assert!(dot.contains("0 -> 1 [color=blue"));
        assert!(dot.contains("1 -> 0 [color=red"));
        let single = to_dot(&FinStructure::graph(1, &[]).unwrap(), "t").unwrap();
        assert_eq!(single, "graph t {\n  0;\n}\n");
        assert!(to_dot(&FinStructure::ternary(1, &[]).unwrap(), "x").is_err());
    }
}
