//! Canonical labeling by color refinement plus individualization.
//!
//! Vertices start colored by local data (label, loops), the coloring is
//! refined until stable, and every remaining tie is broken by trying each
//! vertex of the first non-singleton cell in turn. Each discrete leaf gives a
//! relabeling; the lexicographically least serialization wins. The search
//! tree depends only on the isomorphism type, so the result is canonical.
//! Without automorphism pruning, highly symmetric inputs cost up to `n!`
//! leaves, which is fine at the sizes this crate works with.

use serde::Serialize;

use super::{structure::Bits, FinStructure, Signature};

/// A total serialization of the canonically relabeled structure.
///
/// Two structures of the same signature have equal forms iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonicalize(g: &FinStructure) -> CanonicalForm {
    canonical_labeling(g, 0).0
}

/// The canonically relabeled copy of `g`.
pub fn canonical_structure(g: &FinStructure) -> FinStructure {
    let (_, perm) = canonical_labeling(g, 0);
    g.permuted(&perm)
}

/// Canonical form and relabeling (`perm[v]` is the new index of `v`).
///
/// The first `fixed` vertices are individualized in index order and keep
/// their positions, which canonicalizes `g` up to isomorphism *over* that
/// prefix.
pub fn canonical_labeling(g: &FinStructure, fixed: usize) -> (CanonicalForm, Vec<usize>) {
    let n = g.len();
    let keys: Vec<(u8, usize, u8, u8)> = (0..n)
        .map(|v| {
            let (tier, idx) = if v < fixed { (0, v) } else { (1, 0) };
            let loops = (g.has_s(v, v) as u8) | (g.has_t(v, v) as u8) << 1;
            (tier, idx, g.label(v).value(), loops)
        })
        .collect();
    let mut colors = rank(&keys);
    refine(g, &mut colors);
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    search(g, colors, &mut best);
    let (bytes, perm) = best.unwrap_or_else(|| (serialize(g, &[]), Vec::new()));
    (CanonicalForm(bytes), perm)
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

fn count_colors(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

type Incidence = (u8, u32, u32, u32);

fn incidences(g: &FinStructure, colors: &[u32]) -> Vec<Vec<Incidence>> {
    let n = g.len();
    let mut inc: Vec<Vec<Incidence>> = vec![Vec::new(); n];
    match g.sig() {
        Signature::Vl5Graph | Signature::PlainGraph => {
            for v in 0..n {
                for u in g.neighbors(v) {
                    inc[v].push((0, colors[u], 0, 0));
                }
            }
        }
        Signature::StDigraph => {
            for u in 0..n {
                for v in Bits(g.s_out_mask(u)) {
                    inc[u].push((1, colors[v], 0, 0));
                    inc[v].push((2, colors[u], 0, 0));
                }
                for v in Bits(g.t_out_mask(u)) {
                    inc[u].push((3, colors[v], 0, 0));
                    inc[v].push((4, colors[u], 0, 0));
                }
            }
        }
        Signature::Ternary => {
            for x in 0..n {
                for y in 0..n {
                    for z in Bits(g.r_mask(x, y)) {
                        let item = |v: usize| {
                            let mask = (x == v) as u8 | ((y == v) as u8) << 1 | ((z == v) as u8) << 2;
                            (8 + mask, colors[x], colors[y], colors[z])
                        };
                        inc[x].push(item(x));
                        if y != x {
                            inc[y].push(item(y));
                        }
                        if z != x && z != y {
                            inc[z].push(item(z));
                        }
                    }
                }
            }
        }
    }
    for list in &mut inc {
        list.sort_unstable();
    }
    inc
}

fn refine(g: &FinStructure, colors: &mut Vec<u32>) {
    loop {
        let before = count_colors(colors);
        if before == colors.len() {
            return;
        }
        let inc = incidences(g, colors);
        let keys: Vec<(u32, &Vec<Incidence>)> =
            colors.iter().copied().zip(inc.iter()).collect();
        let next = rank(&keys);
        if count_colors(&next) == before {
            return;
        }
        *colors = next;
    }
}

fn search(g: &FinStructure, colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let n = colors.len();
    if count_colors(&colors) == n {
        let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let bytes = serialize(g, &perm);
        if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
            *best = Some((bytes, perm));
        }
        return;
    }
    let mut sizes = vec![0usize; count_colors(&colors)];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let target = sizes.iter().position(|&s| s > 1).expect("non-discrete") as u32;
    for v in (0..n).filter(|&v| colors[v] == target) {
        let keys: Vec<(u32, u8)> = (0..n)
            .map(|w| (colors[w], (colors[w] == target && w != v) as u8))
            .collect();
        let mut next = rank(&keys);
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Serializes `g` relabeled by `perm` (empty `perm` only for `n = 0`).
fn serialize(g: &FinStructure, perm: &[usize]) -> Vec<u8> {
    let n = g.len();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut out = vec![g.sig().code(), n as u8];
    let mut bits = BitWriter::default();
    match g.sig() {
        Signature::Vl5Graph | Signature::PlainGraph => {
            if g.sig() == Signature::Vl5Graph {
                out.extend(inv.iter().map(|&v| g.label(v).value()));
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    bits.push(g.has_edge(inv[i], inv[j]));
                }
            }
        }
        Signature::StDigraph => {
            for i in 0..n {
                for j in 0..n {
                    bits.push(g.has_s(inv[i], inv[j]));
                    bits.push(g.has_t(inv[i], inv[j]));
                }
            }
        }
        Signature::Ternary => {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        bits.push(g.has_r(inv[i], inv[j], inv[k]));
                    }
                }
            }
        }
    }
    out.extend(bits.finish());
    out
}

#[derive(Default)]
struct BitWriter {
    bytes: Vec<u8>,
    len: usize,
}

impl BitWriter {
    fn push(&mut self, b: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if b {
            // most significant bit first keeps byte order lexicographic in bit order
            *self.bytes.last_mut().expect("byte") |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    fn finish(self) -> Vec<u8> {
        self.bytes
    }
}
