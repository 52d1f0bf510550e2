use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{FinStructure, Signature};
use crate::error::{Error, Result};

/// An injective vertex map that preserves and reflects every relation and label.
///
/// The domain and codomain structures are not stored; they travel alongside
/// the map (for example inside an `AmalgamSpan`). Use [`Embedding::is_valid`]
/// to check a map against a concrete pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding(map)
    }

    pub fn identity(n: usize) -> Self {
        Embedding((0..n).collect())
    }

    pub fn map(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &Embedding) -> Embedding {
        Embedding(self.0.iter().map(|&v| outer.0[v]).collect())
    }

    /// Restriction to the listed domain vertices, as a map from their positions.
    pub fn restrict(&self, vs: &[usize]) -> Embedding {
        Embedding(vs.iter().map(|&v| self.0[v]).collect())
    }

    /// Image set, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.0.clone();
        im.sort_unstable();
        im
    }

    /// Whether this map is an embedding `dom → cod` under induced semantics.
    pub fn is_valid(&self, dom: &FinStructure, cod: &FinStructure) -> bool {
        if dom.sig() != cod.sig() || self.0.len() != dom.len() {
            return false;
        }
        if self.0.iter().any(|&v| v >= cod.len()) {
            return false;
        }
        let mut seen = vec![false; cod.len()];
        for &v in &self.0 {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        (0..dom.len()).all(|i| consistent(dom, cod, &self.0[..=i], i))
    }

    /// Whether `dom` vertices `i < j` keep their order under the map.
    pub fn is_order_preserving(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

/// Checks every tuple of `dom` that involves vertex `i` and only vertices `<= i`,
/// where `map[k]` is the image of `k` for `k <= i`.
#[inline]
pub(crate) fn consistent(dom: &FinStructure, cod: &FinStructure, map: &[usize], i: usize) -> bool {
    let c = map[i];
    match dom.sig() {
        Signature::Vl5Graph | Signature::PlainGraph => {
            if dom.sig() == Signature::Vl5Graph && dom.label(i) != cod.label(c) {
                return false;
            }
            (0..i).all(|j| dom.has_edge(i, j) == cod.has_edge(c, map[j]))
        }
        Signature::StDigraph => {
            let (so, to) = (dom.s_out_mask(i), dom.t_out_mask(i));
            let (cso, cto) = (cod.s_out_mask(c), cod.t_out_mask(c));
            if (so >> i & 1) != (cso >> c & 1) || (to >> i & 1) != (cto >> c & 1) {
                return false;
            }
            (0..i).all(|j| {
                let mj = map[j];
                (so >> j & 1) == (cso >> mj & 1)
                    && (to >> j & 1) == (cto >> mj & 1)
                    && dom.has_s(j, i) == cod.has_s(mj, c)
                    && dom.has_t(j, i) == cod.has_t(mj, c)
            })
        }
        Signature::Ternary => {
            for p in 0..=i {
                for q in 0..=i {
                    let (mp, mq) = (map[p], map[q]);
                    if dom.has_r(i, p, q) != cod.has_r(c, mp, mq)
                        || dom.has_r(p, i, q) != cod.has_r(mp, c, mq)
                        || dom.has_r(p, q, i) != cod.has_r(mp, mq, c)
                    {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Visits every embedding `a → b` in lexicographic order of image tuples.
///
/// Backtracking assigns domain vertices in index order and tries candidate
/// images in ascending order. The visitor may stop the search early.
pub fn for_each_embedding<F>(a: &FinStructure, b: &FinStructure, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if a.sig() != b.sig() {
        return Err(Error::SignatureMismatch {
            expected: a.sig(),
            found: b.sig(),
        });
    }
    if a.len() > b.len() {
        return Ok(());
    }
    let mut map = vec![0usize; a.len()];
    let mut used = vec![false; b.len()];
    let _ = extend(a, b, &mut map, 0, &mut used, &mut visit);
    Ok(())
}

fn extend<F>(
    a: &FinStructure,
    b: &FinStructure,
    map: &mut Vec<usize>,
    i: usize,
    used: &mut [bool],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if i == a.len() {
        return visit(map);
    }
    for c in 0..b.len() {
        if used[c] {
            continue;
        }
        map[i] = c;
        if consistent(a, b, &map[..=i], i) {
            used[c] = true;
            let flow = extend(a, b, map, i + 1, used, visit);
            used[c] = false;
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Every embedding `a → b`, each exactly once, lexicographic by image tuple.
pub fn enumerate_embeddings(a: &FinStructure, b: &FinStructure) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    for_each_embedding(a, b, |m| {
        out.push(Embedding(m.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Whether `a` embeds into `b`.
pub fn embeds(a: &FinStructure, b: &FinStructure) -> Result<bool> {
    let mut found = false;
    for_each_embedding(a, b, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// The substructure on the vertex set `vs`, re-indexed order-preservingly,
/// together with its inclusion into `g`.
pub fn induced_substructure(g: &FinStructure, vs: &[usize]) -> Result<(FinStructure, Embedding)> {
    let mut sorted = vs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let sub = g.restrict_to(&sorted)?;
    Ok((sub, Embedding(sorted)))
}
