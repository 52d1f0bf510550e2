//! Membership predicates for the five classes and the helper predicates
//! their constructions branch on.

mod cycles;
mod hereditary;
mod helpers;
mod pattern;
mod predicates;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structures::{Domain, FinStructure, Signature};

pub use cycles::{bridges, cactus_cycles, cycle_catalog, edge_on_cycle, free_cycles, Cycle, CycleCatalog, DEFAULT_CYCLE_CAP};
pub use hereditary::{hereditary_check, members_up_to};
pub use helpers::{
    components, determines, gaifman_adjacency, is_connected, is_forest, is_non_discrete, is_tame,
    undetermined_vertices,
};
pub use pattern::{ForbiddenPatterns, Predicate};
pub(crate) use helpers::components_of;
pub use predicates::{is_member, violations, Violation};

/// Cycle-length parameter of the `ga` family: distinct integers `>= 3`, at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleLengths(BTreeSet<usize>);

impl CycleLengths {
    pub fn new(lengths: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = lengths.into_iter().collect();
        if set.len() < 2 {
            return Err(Error::Parse("ga needs at least two cycle lengths".into()));
        }
        if let Some(&bad) = set.iter().find(|&&l| l < 3) {
            return Err(Error::Parse(format!("cycle length {bad} is below 3")));
        }
        Ok(CycleLengths(set))
    }

    pub fn contains(&self, len: usize) -> bool {
        self.0.contains(&len)
    }

    pub fn min(&self) -> usize {
        *self.0.iter().next().expect("nonempty")
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// The two least lengths.
    pub fn two_least(&self) -> (usize, usize) {
        let mut it = self.0.iter().copied();
        (it.next().expect("two"), it.next().expect("two"))
    }
}

/// Selects one of the five membership predicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassId {
    /// Labeled forests omitting the configurations `i -- i+1, i -- i+2`.
    K5,
    /// Two-colored directed forests with color-homogeneous in-edges.
    P,
    /// Forests with no two adjacent vertices of degree above 2.
    G,
    /// Graphs whose cycles have lengths in the set, are pairwise
    /// edge-disjoint, and carry at most two vertices of degree above 2.
    Ga(CycleLengths),
    /// Ternary structures satisfying the four order-reduct axioms.
    Pzk,
}

impl ClassId {
    pub fn ga(lengths: impl IntoIterator<Item = usize>) -> Result<Self> {
        Ok(ClassId::Ga(CycleLengths::new(lengths)?))
    }

    pub fn signature(&self) -> Signature {
        match self {
            ClassId::K5 => Signature::Vl5Graph,
            ClassId::P => Signature::StDigraph,
            ClassId::G | ClassId::Ga(_) => Signature::PlainGraph,
            ClassId::Pzk => Signature::Ternary,
        }
    }

    pub(crate) fn require_sig(&self, g: &FinStructure) -> Result<()> {
        if g.sig() == self.signature() {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                expected: self.signature(),
                found: g.sig(),
            })
        }
    }

    pub(crate) fn require_member(&self, g: &FinStructure) -> Result<()> {
        if is_member(self, g)? {
            Ok(())
        } else {
            Err(Error::NotMember {
                class: self.to_string(),
            })
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::K5 => f.write_str("k5"),
            ClassId::P => f.write_str("p"),
            ClassId::G => f.write_str("g"),
            ClassId::Pzk => f.write_str("pzk"),
            ClassId::Ga(a) => {
                let parts: Vec<String> = a.iter().map(|l| l.to_string()).collect();
                write!(f, "ga:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k5" => Ok(ClassId::K5),
            "p" => Ok(ClassId::P),
            "g" => Ok(ClassId::G),
            "pzk" => Ok(ClassId::Pzk),
            _ => {
                let rest = s
                    .strip_prefix("ga:")
                    .ok_or_else(|| Error::Parse(format!("unknown class `{s}`")))?;
                let mut lengths = Vec::new();
                for part in rest.split(',') {
                    let l: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad cycle length `{part}`")))?;
                    if lengths.contains(&l) {
                        return Err(Error::Parse(format!("cycle length {l} repeated")));
                    }
                    lengths.push(l);
                }
                ClassId::ga(lengths)
            }
        }
    }
}

impl Serialize for ClassId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ClassId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A membership predicate over one signature.
pub trait Membership: Sync {
    fn name(&self) -> String;
    fn signature(&self) -> Signature;
    fn contains(&self, g: &FinStructure) -> bool;

    /// Whether the predicate is closed under induced substructures. Search
    /// routines prune with it and rely on it for completeness.
    fn is_hereditary(&self) -> bool {
        false
    }

    /// The smallest enumeration domain that still contains every member.
    fn domain(&self) -> Domain {
        Domain::All
    }
}

impl Membership for ClassId {
    fn name(&self) -> String {
        self.to_string()
    }

    fn signature(&self) -> Signature {
        ClassId::signature(self)
    }

    fn contains(&self, g: &FinStructure) -> bool {
        is_member(self, g).unwrap_or(false)
    }

    fn is_hereditary(&self) -> bool {
        true
    }

    // Members of `p` are loop-free with at most one S/T arrow per pair, and
    // members of `pzk` satisfy axioms (1), (2) and (4), i.e. one apex per 3-set.
    fn domain(&self) -> Domain {
        Domain::Simple
    }
}

impl<M: Membership + ?Sized> Membership for &M {
    fn name(&self) -> String {
        (**self).name()
    }
    fn signature(&self) -> Signature {
        (**self).signature()
    }
    fn contains(&self, g: &FinStructure) -> bool {
        (**self).contains(g)
    }
    fn is_hereditary(&self) -> bool {
        (**self).is_hereditary()
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_ids_round_trip() {
        for s in ["k5", "p", "g", "pzk", "ga:4,5", "ga:3,4,9"] {
            assert_eq!(s.parse::<ClassId>().unwrap().to_string(), s);
        }
        assert_eq!("ga:5,4".parse::<ClassId>().unwrap().to_string(), "ga:4,5");
    }

    #[test]
    fn bad_class_ids() {
        for s in ["ga:3", "ga:2,4", "ga:", "ga:4,4", "h", "ga:x,4"] {
            assert!(s.parse::<ClassId>().is_err(), "{s}");
        }
    }
}
