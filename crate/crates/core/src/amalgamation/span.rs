use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structures::{Embedding, FinStructure};

/// Two embeddings out of a common structure: `f: Z → X`, `g: Z → Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpan")]
pub struct AmalgamSpan {
    pub z: FinStructure,
    pub x: FinStructure,
    pub y: FinStructure,
    pub f: Embedding,
    pub g: Embedding,
}

#[derive(Deserialize)]
struct RawSpan {
    z: FinStructure,
    x: FinStructure,
    y: FinStructure,
    f: Embedding,
    g: Embedding,
}

impl TryFrom<RawSpan> for AmalgamSpan {
    type Error = Error;

    fn try_from(r: RawSpan) -> Result<Self> {
        AmalgamSpan::new(r.z, r.x, r.y, r.f, r.g)
    }
}

impl AmalgamSpan {
    pub fn new(z: FinStructure, x: FinStructure, y: FinStructure, f: Embedding, g: Embedding) -> Result<Self> {
        for (name, s) in [("x", &x), ("y", &y)] {
            if s.sig() != z.sig() {
                return Err(Error::SignatureMismatch {
                    expected: z.sig(),
                    found: s.sig(),
                });
            }
            let _ = name;
        }
        if !f.is_valid(&z, &x) {
            return Err(Error::Precondition("f is not an embedding Z → X".into()));
        }
        if !g.is_valid(&z, &y) {
            return Err(Error::Precondition("g is not an embedding Z → Y".into()));
        }
        Ok(AmalgamSpan { z, x, y, f, g })
    }

    /// A span where `Z` is the prefix `0..|Z|` of both `X` and `Y`.
    pub fn over_prefix(x: FinStructure, y: FinStructure, z_len: usize) -> Result<Self> {
        let prefix: Vec<usize> = (0..z_len).collect();
        let z = x.restrict_to(&prefix)?;
        Self::new(z, x, y, Embedding::identity(z_len), Embedding::identity(z_len))
    }

    /// The same span with `X` and `Y` exchanged.
    pub fn swapped(&self) -> Self {
        AmalgamSpan {
            z: self.z.clone(),
            x: self.y.clone(),
            y: self.x.clone(),
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// The span obtained by shrinking `Z` to the listed vertices (sorted, re-indexed).
    pub fn restricted(&self, base: &[usize]) -> Result<Self> {
        let mut base = base.to_vec();
        base.sort_unstable();
        base.dedup();
        let z = self.z.restrict_to(&base)?;
        AmalgamSpan::new(z, self.x.clone(), self.y.clone(), self.f.restrict(&base), self.g.restrict(&base))
    }
}

/// Which part of `Z` the two legs must agree on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Over {
    /// `f1 ∘ f = g1 ∘ g` on all of `Z`.
    All,
    /// Agreement only on the listed vertices of `Z`.
    Base(Vec<usize>),
}

/// A structure `W` with embeddings `f1: X → W`, `g1: Y → W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamSolution {
    pub w: FinStructure,
    pub f1: Embedding,
    pub g1: Embedding,
    pub over: Over,
}

impl AmalgamSolution {
    /// Both legs are embeddings and they agree where `over` requires.
    pub fn verify(&self, span: &AmalgamSpan) -> bool {
        if !self.f1.is_valid(&span.x, &self.w) || !self.g1.is_valid(&span.y, &self.w) {
            return false;
        }
        let agree = |v: usize| self.f1.apply(span.f.apply(v)) == self.g1.apply(span.g.apply(v));
        match &self.over {
            Over::All => span.z.vertices().all(agree),
            Over::Base(b) => b.iter().all(|&v| v < span.z.len() && agree(v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_embeddings() {
        let z = FinStructure::graph(2, &[]).unwrap();
        let x = FinStructure::graph(2, &[(0, 1)]).unwrap();
        let r = AmalgamSpan::new(z.clone(), x, z.clone(), Embedding::identity(2), Embedding::identity(2));
        assert!(r.is_err());
    }

    #[test]
    fn json_round_trip_validates() {
        let x = FinStructure::graph(2, &[(0, 1)]).unwrap();
        let span = AmalgamSpan::over_prefix(x.clone(), x, 1).unwrap();
        let text = serde_json::to_string(&span).unwrap();
        let back: AmalgamSpan = serde_json::from_str(&text).unwrap();
        assert_eq!(back, span);
        let broken = text.replace("\"f\":[0]", "\"f\":[5]");
        assert!(serde_json::from_str::<AmalgamSpan>(&broken).is_err());
    }
}
