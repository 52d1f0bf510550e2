use std::fmt;

use serde::{Deserialize, Serialize};

use super::Z5;
use crate::error::{Error, Result};

/// Upper bound on universe size for the graph signatures.
pub const MAX_VERTICES: usize = 4096;

/// Upper bound on universe size for `st` and `ternary`, whose relations are
/// stored as single-word rows.
pub const MAX_DENSE_VERTICES: usize = 64;

/// The four fixed signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Signature {
    /// Symmetric irreflexive edges plus a total labeling into Z/5Z.
    #[serde(rename = "vl5")]
    Vl5Graph,
    /// Two binary relations `S` and `T`.
    #[serde(rename = "st")]
    StDigraph,
    /// Symmetric irreflexive edges.
    #[serde(rename = "graph")]
    PlainGraph,
    /// One ternary relation `R`.
    #[serde(rename = "ternary")]
    Ternary,
}

impl Signature {
    pub fn has_edges(self) -> bool {
        matches!(self, Signature::Vl5Graph | Signature::PlainGraph)
    }

    pub fn code(self) -> u8 {
        match self {
            Signature::Vl5Graph => 0,
            Signature::StDigraph => 1,
            Signature::PlainGraph => 2,
            Signature::Ternary => 3,
        }
    }

    /// Largest universe this signature supports.
    pub fn max_vertices(self) -> usize {
        if self.has_edges() {
            MAX_VERTICES
        } else {
            MAX_DENSE_VERTICES
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Vl5Graph => "vl5",
            Signature::StDigraph => "st",
            Signature::PlainGraph => "graph",
            Signature::Ternary => "ternary",
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite relational structure on the universe `{0, .., n-1}`.
///
/// Only the tables belonging to the signature are populated. Symmetric
/// relations are stored in both directions internally and exposed once per
/// unordered pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinStructure {
    sig: Signature,
    n: usize,
    // adjacency rows of `words` words each; `words == words_for(n)`
    words: usize,
    adj: Vec<u64>,
    labels: Vec<Z5>,
    s_out: Vec<u64>,
    t_out: Vec<u64>,
    // index x * n + y holds the bitmask of all z with R(x, y, z)
    r: Vec<u64>,
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Bits strictly below `v`.
#[inline]
pub(crate) fn mask_below(v: usize) -> u64 {
    if v >= 64 {
        u64::MAX
    } else {
        bit(v) - 1
    }
}

impl FinStructure {
    /// The structure with `n` vertices and no tuples; VL5 labels default to 0.
    pub fn new(sig: Signature, n: usize) -> Result<Self> {
        if n > sig.max_vertices() {
            return Err(Error::CapExceeded {
                what: "universe size",
                value: n,
                cap: sig.max_vertices(),
            });
        }
        let rows = |used: bool| if used { vec![0u64; n] } else { Vec::new() };
        let words = words_for(n);
        Ok(FinStructure {
            sig,
            n,
            words,
            adj: if sig.has_edges() { vec![0u64; n * words] } else { Vec::new() },
            labels: if sig == Signature::Vl5Graph {
                vec![Z5::default(); n]
            } else {
                Vec::new()
            },
            s_out: rows(sig == Signature::StDigraph),
            t_out: rows(sig == Signature::StDigraph),
            r: if sig == Signature::Ternary {
                vec![0u64; n * n]
            } else {
                Vec::new()
            },
        })
    }

    pub fn empty(sig: Signature) -> Self {
        Self::new(sig, 0).expect("empty structure")
    }

    /// A plain graph from an edge list.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(Signature::PlainGraph, n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// A labeled graph; the universe size is `labels.len()`.
    pub fn vl5(labels: &[u8], edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(Signature::Vl5Graph, labels.len())?;
        for (v, &l) in labels.iter().enumerate() {
            if l >= 5 {
                return Err(Error::Malformed(format!("label {l} is not in 0..5")));
            }
            g.set_label(v, Z5::new(l as i64))?;
        }
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn st(n: usize, s: &[(usize, usize)], t: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(Signature::StDigraph, n)?;
        for &(u, v) in s {
            g.add_s(u, v)?;
        }
        for &(u, v) in t {
            g.add_t(u, v)?;
        }
        Ok(g)
    }

    pub fn ternary(n: usize, triples: &[(usize, usize, usize)]) -> Result<Self> {
        let mut g = Self::new(Signature::Ternary, n)?;
        for &(x, y, z) in triples {
            g.add_r(x, y, z)?;
        }
        Ok(g)
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Bitmask of the whole universe; only for universes of at most 64 vertices.
    pub fn full_mask(&self) -> u64 {
        debug_assert!(self.n <= 64);
        mask_below(self.n)
    }

    /// Adjacency row of `v` as words.
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn set_adj(&mut self, u: usize, v: usize, on: bool) {
        let i = u * self.words + v / 64;
        if on {
            self.adj[i] |= bit(v % 64);
        } else {
            self.adj[i] &= !bit(v % 64);
        }
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                size: self.n,
            })
        }
    }

    fn require(&self, sig: Signature) -> Result<()> {
        if self.sig == sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                expected: sig,
                found: self.sig,
            })
        }
    }

    fn require_edges(&self) -> Result<()> {
        if self.sig.has_edges() {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                expected: Signature::PlainGraph,
                found: self.sig,
            })
        }
    }

    /// Appends a vertex and returns its index. The label is used only by VL5 structures.
    pub fn add_vertex(&mut self, label: Z5) -> Result<usize> {
        if self.n == self.sig.max_vertices() {
            return Err(Error::CapExceeded {
                what: "universe size",
                value: self.n + 1,
                cap: self.sig.max_vertices(),
            });
        }
        let v = self.n;
        if self.sig.has_edges() {
            let words = words_for(self.n + 1);
            if words != self.words {
                let mut adj = vec![0u64; (self.n + 1) * words];
                for u in 0..self.n {
                    adj[u * words..u * words + self.words].copy_from_slice(self.row(u));
                }
                self.adj = adj;
                self.words = words;
            } else {
                self.adj.extend(std::iter::repeat_n(0, words));
            }
        }
        match self.sig {
            Signature::Vl5Graph => self.labels.push(label),
            Signature::PlainGraph => {}
            Signature::StDigraph => {
                self.s_out.push(0);
                self.t_out.push(0);
            }
            Signature::Ternary => {
                let m = self.n + 1;
                let mut r = vec![0u64; m * m];
                for x in 0..self.n {
                    for y in 0..self.n {
                        r[x * m + y] = self.r[x * self.n + y];
                    }
                }
                self.r = r;
            }
        }
        self.n += 1;
        Ok(v)
    }

    // ---- edges ----

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.require_edges()?;
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::Malformed(format!("loop at vertex {u}")));
        }
        self.set_adj(u, v, true);
        self.set_adj(v, u, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.require_edges()?;
        self.check(u)?;
        self.check(v)?;
        self.set_adj(u, v, false);
        self.set_adj(v, u, false);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.sig.has_edges() && self.adj[u * self.words + v / 64] & bit(v % 64) != 0
    }

    /// Neighbor bitmask; zero for signatures without edges. Only for
    /// universes of at most 64 vertices.
    pub fn adj_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        if self.sig.has_edges() {
            self.adj[v * self.words]
        } else {
            0
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        if !self.sig.has_edges() {
            return 0;
        }
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row: &[u64] = if self.sig.has_edges() { self.row(v) } else { &[] };
        row.iter()
            .enumerate()
            .flat_map(|(k, &w)| Bits(w).map(move |b| k * 64 + b))
    }

    /// Edges as pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.sig.has_edges() {
            for u in 0..self.n {
                out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        if !self.sig.has_edges() {
            return 0;
        }
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    // ---- labels ----

    pub fn set_label(&mut self, v: usize, label: Z5) -> Result<()> {
        self.require(Signature::Vl5Graph)?;
        self.check(v)?;
        self.labels[v] = label;
        Ok(())
    }

    /// The label of `v`; 0 for unlabeled signatures.
    pub fn label(&self, v: usize) -> Z5 {
        if self.sig == Signature::Vl5Graph {
            self.labels[v]
        } else {
            Z5::default()
        }
    }

    pub fn labels(&self) -> &[Z5] {
        &self.labels
    }

    // ---- S / T ----

    pub fn add_s(&mut self, u: usize, v: usize) -> Result<()> {
        self.require(Signature::StDigraph)?;
        self.check(u)?;
        self.check(v)?;
        self.s_out[u] |= bit(v);
        Ok(())
    }

    pub fn add_t(&mut self, u: usize, v: usize) -> Result<()> {
        self.require(Signature::StDigraph)?;
        self.check(u)?;
        self.check(v)?;
        self.t_out[u] |= bit(v);
        Ok(())
    }

    pub fn has_s(&self, u: usize, v: usize) -> bool {
        self.sig == Signature::StDigraph && self.s_out[u] & bit(v) != 0
    }

    pub fn has_t(&self, u: usize, v: usize) -> bool {
        self.sig == Signature::StDigraph && self.t_out[u] & bit(v) != 0
    }

    pub fn s_out_mask(&self, u: usize) -> u64 {
        if self.sig == Signature::StDigraph {
            self.s_out[u]
        } else {
            0
        }
    }

    pub fn t_out_mask(&self, u: usize) -> u64 {
        if self.sig == Signature::StDigraph {
            self.t_out[u]
        } else {
            0
        }
    }

    pub fn s_in_mask(&self, v: usize) -> u64 {
        in_mask(&self.s_out, v)
    }

    pub fn t_in_mask(&self, v: usize) -> u64 {
        in_mask(&self.t_out, v)
    }

    pub fn s_pairs(&self) -> Vec<(usize, usize)> {
        pairs(&self.s_out)
    }

    pub fn t_pairs(&self) -> Vec<(usize, usize)> {
        pairs(&self.t_out)
    }

    // ---- R ----

    pub fn add_r(&mut self, x: usize, y: usize, z: usize) -> Result<()> {
        self.require(Signature::Ternary)?;
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        self.r[x * self.n + y] |= bit(z);
        Ok(())
    }

    pub fn has_r(&self, x: usize, y: usize, z: usize) -> bool {
        self.sig == Signature::Ternary && self.r[x * self.n + y] & bit(z) != 0
    }

    /// Bitmask of all `z` with `R(x, y, z)`.
    pub fn r_mask(&self, x: usize, y: usize) -> u64 {
        if self.sig == Signature::Ternary {
            self.r[x * self.n + y]
        } else {
            0
        }
    }

    pub fn r_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        if self.sig == Signature::Ternary {
            for x in 0..self.n {
                for y in 0..self.n {
                    for z in Bits(self.r[x * self.n + y]) {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }

    // ---- derived structures ----

    /// The substructure on `vs`, re-indexed in the order given.
    ///
    /// `vs` must not repeat vertices. Position `i` of the result is `vs[i]`.
    pub fn restrict_to(&self, vs: &[usize]) -> Result<FinStructure> {
        for &v in vs {
            self.check(v)?;
        }
        // position of each vertex of `self` in `vs`
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            if pos[v] != usize::MAX {
                return Err(Error::Precondition(format!("vertex {v} repeated")));
            }
            pos[v] = i;
        }
        let m = vs.len();
        let mut out = FinStructure::new(self.sig, m)?;
        if self.sig.has_edges() && (self.words > 1 || out.words > 1) {
            for (i, &v) in vs.iter().enumerate() {
                for w in self.neighbors(v) {
                    if pos[w] != usize::MAX {
                        out.set_adj(i, pos[w], true);
                    }
                }
                if self.sig == Signature::Vl5Graph {
                    out.labels[i] = self.labels[v];
                }
            }
            return Ok(out);
        }
        let remap = |mask: u64| -> u64 {
            let mut r = 0u64;
            for (i, &w) in vs.iter().enumerate() {
                if mask & bit(w) != 0 {
                    r |= bit(i);
                }
            }
            r
        };
        for (i, &v) in vs.iter().enumerate() {
            match self.sig {
                Signature::Vl5Graph => {
                    out.adj[i] = remap(self.adj[v]);
                    out.labels[i] = self.labels[v];
                }
                Signature::PlainGraph => out.adj[i] = remap(self.adj[v]),
                Signature::StDigraph => {
                    out.s_out[i] = remap(self.s_out[v]);
                    out.t_out[i] = remap(self.t_out[v]);
                }
                Signature::Ternary => {
                    for (j, &w) in vs.iter().enumerate() {
                        out.r[i * m + j] = remap(self.r[v * self.n + w]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> FinStructure {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut inv = vec![0usize; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        self.restrict_to(&inv).expect("valid permutation")
    }

    /// Disjoint union; `other`'s vertices are appended after `self`'s.
    pub fn disjoint_union(&self, other: &FinStructure) -> Result<FinStructure> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                expected: self.sig,
                found: other.sig,
            });
        }
        let mut out = self.clone();
        let offset = self.n;
        for v in other.vertices() {
            out.add_vertex(other.label(v))?;
        }
        out.copy_tuples_from(other, &(offset..offset + other.n).collect::<Vec<_>>());
        Ok(out)
    }

    /// Adds every tuple of `other`, transported along `map` (an injection into `self`).
    /// Labels are copied as well.
    pub(crate) fn copy_tuples_from(&mut self, other: &FinStructure, map: &[usize]) {
        debug_assert_eq!(self.sig, other.sig);
        if self.sig.has_edges() && (self.words > 1 || other.words > 1) {
            for v in other.vertices() {
                if self.sig == Signature::Vl5Graph {
                    self.labels[map[v]] = other.labels[v];
                }
                for w in other.neighbors(v) {
                    self.set_adj(map[v], map[w], true);
                }
            }
            return;
        }
        let transport = |mask: u64| -> u64 {
            let mut r = 0u64;
            for w in Bits(mask) {
                r |= bit(map[w]);
            }
            r
        };
        for v in other.vertices() {
            let mv = map[v];
            match self.sig {
                Signature::Vl5Graph => {
                    self.adj[mv] |= transport(other.adj[v]);
                    self.labels[mv] = other.labels[v];
                }
                Signature::PlainGraph => self.adj[mv] |= transport(other.adj[v]),
                Signature::StDigraph => {
                    self.s_out[mv] |= transport(other.s_out[v]);
                    self.t_out[mv] |= transport(other.t_out[v]);
                }
                Signature::Ternary => {
                    for w in other.vertices() {
                        let mask = transport(other.r[v * other.n + w]);
                        self.r[mv * self.n + map[w]] |= mask;
                    }
                }
            }
        }
    }

    /// Number of tuples over all relations; edges count once.
    pub fn tuple_count(&self) -> usize {
        let ones = |rows: &[u64]| rows.iter().map(|m| m.count_ones() as usize).sum::<usize>();
        self.edge_count() + ones(&self.s_out) + ones(&self.t_out) + ones(&self.r)
    }
}

fn in_mask(rows: &[u64], v: usize) -> u64 {
    let mut m = 0u64;
    for (u, &row) in rows.iter().enumerate() {
        if row & bit(v) != 0 {
            m |= bit(u);
        }
    }
    m
}

fn pairs(rows: &[u64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (u, &row) in rows.iter().enumerate() {
        for v in Bits(row) {
            out.push((u, v));
        }
    }
    out
}

/// Iterator over the set bits of a mask, ascending.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

impl fmt::Debug for FinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[n={}", self.sig, self.n)?;
        match self.sig {
            Signature::Vl5Graph => {
                let labels: Vec<u8> = self.labels.iter().map(|l| l.value()).collect();
                write!(f, " labels={labels:?} edges={:?}", self.edges())?
            }
            Signature::PlainGraph => write!(f, " edges={:?}", self.edges())?,
            Signature::StDigraph => write!(f, " s={:?} t={:?}", self.s_pairs(), self.t_pairs())?,
            Signature::Ternary => write!(f, " r={:?}", self.r_triples())?,
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_path_endpoints_are_edgeless() {
        let p = FinStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let sub = p.restrict_to(&[0, 2]).unwrap();
        assert_eq!(sub, FinStructure::graph(2, &[]).unwrap());
    }

    #[test]
    fn loops_rejected_for_graphs() {
        let mut g = FinStructure::new(Signature::PlainGraph, 2).unwrap();
        assert!(matches!(g.add_edge(1, 1), Err(Error::Malformed(_))));
        assert!(matches!(g.add_edge(0, 2), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn ternary_survives_growth() {
        let mut g = FinStructure::ternary(3, &[(0, 1, 2), (0, 2, 1)]).unwrap();
        g.add_vertex(Z5::default()).unwrap();
        g.add_r(1, 3, 2).unwrap();
        assert_eq!(g.r_triples(), vec![(0, 1, 2), (0, 2, 1), (1, 3, 2)]);
    }

    #[test]
    fn disjoint_union_offsets() {
        let a = FinStructure::st(2, &[(0, 1)], &[]).unwrap();
        let b = FinStructure::st(2, &[], &[(1, 0)]).unwrap();
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(u.s_pairs(), vec![(0, 1)]);
        assert_eq!(u.t_pairs(), vec![(3, 2)]);
    }

    #[test]
    fn graphs_grow_past_one_word() {
        let mut g = FinStructure::graph(1, &[]).unwrap();
        for v in 1..150 {
            g.add_vertex(Z5::default()).unwrap();
            g.add_edge(v - 1, v).unwrap();
        }
        assert_eq!(g.edge_count(), 149);
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert_eq!(g.degree(149), 1);
        let sub = g.restrict_to(&[63, 64, 65, 140]).unwrap();
        assert_eq!(sub, FinStructure::graph(4, &[(0, 1), (1, 2)]).unwrap());
        let mut h = FinStructure::graph(150, &[]).unwrap();
        h.copy_tuples_from(&g, &(0..150).collect::<Vec<_>>());
        assert_eq!(h, g);
        assert!(FinStructure::st(65, &[], &[]).is_err());
    }

    #[test]
    fn edges_listed_once() {
        let g = FinStructure::graph(4, &[(2, 1), (0, 3), (1, 0)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.edge_count(), 3);
    }
}
