use std::collections::BTreeMap;

use super::{canonical_labeling, CanonicalForm, FinStructure, Signature, Z5};
use crate::error::{Error, Result};
use crate::par;

/// Default cap on the size for isomorphism-class enumeration.
pub const DEFAULT_ENUM_CAP: usize = 7;

/// Largest one-point extension space we are willing to walk.
const MAX_EXTENSION_SPACE: u64 = 1 << 24;

/// Which relation tables the enumerator ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Every structure of the signature.
    All,
    /// Only "simple" tables: for `st`, no loops and at most one of
    /// `S(u,v), S(v,u), T(u,v), T(v,u)` per pair; for `ternary`, every 3-set
    /// carries exactly one apex `x` with `R(x,y,z)` and `R(x,z,y)` and nothing
    /// else holds. Identical to `All` for the graph signatures.
    Simple,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub cap: usize,
    pub domain: Domain,
    /// Discard non-members at every level. Sound only for hereditary filters.
    pub prune: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            cap: DEFAULT_ENUM_CAP,
            domain: Domain::All,
            prune: false,
        }
    }
}

/// Every structure obtained from `parent` by appending one vertex (the new
/// vertex is last), in a fixed order. Not deduplicated.
pub fn one_point_extensions(parent: &FinStructure, domain: Domain) -> Result<Vec<FinStructure>> {
    let m = parent.len();
    let space = extension_space(parent.sig(), m, domain)?;
    let mut out = Vec::with_capacity(space.total as usize);
    let mut digits = vec![0u32; space.radices.len()];
    loop {
        out.push(build_child(parent, &space, &digits)?);
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < space.radices[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

struct Space {
    radices: Vec<u32>,
    total: u64,
    // ternary slots: the tuple (or 3-set) each digit controls
    triples: Vec<(usize, usize, usize)>,
}

fn extension_space(sig: Signature, m: usize, domain: Domain) -> Result<Space> {
    let v = m;
    let mut radices = Vec::new();
    let mut triples = Vec::new();
    match (sig, domain) {
        (Signature::PlainGraph, _) => radices.extend(std::iter::repeat_n(2, m)),
        (Signature::Vl5Graph, _) => {
            radices.push(5);
            radices.extend(std::iter::repeat_n(2, m));
        }
        (Signature::StDigraph, Domain::Simple) => radices.extend(std::iter::repeat_n(5, m)),
        (Signature::StDigraph, Domain::All) => {
            radices.push(4);
            radices.extend(std::iter::repeat_n(16, m));
        }
        (Signature::Ternary, Domain::Simple) => {
            for a in 0..m {
                for b in (a + 1)..m {
                    triples.push((a, b, v));
                    radices.push(3);
                }
            }
        }
        (Signature::Ternary, Domain::All) => {
            for a in 0..=m {
                for b in 0..=m {
                    for c in 0..=m {
                        if a == v || b == v || c == v {
                            triples.push((a, b, c));
                            radices.push(2);
                        }
                    }
                }
            }
        }
    }
    let mut total: u64 = 1;
    for &r in &radices {
        total = total.saturating_mul(r as u64);
    }
    if total > MAX_EXTENSION_SPACE {
        return Err(Error::CapExceeded {
            what: "one-point extension space",
            value: total.min(usize::MAX as u64) as usize,
            cap: MAX_EXTENSION_SPACE as usize,
        });
    }
    Ok(Space {
        radices,
        total,
        triples,
    })
}

fn build_child(parent: &FinStructure, space: &Space, digits: &[u32]) -> Result<FinStructure> {
    let mut child = parent.clone();
    let sig = parent.sig();
    let m = parent.len();
    let label = if sig == Signature::Vl5Graph {
        Z5::new(digits[0] as i64)
    } else {
        Z5::default()
    };
    let v = child.add_vertex(label)?;
    match sig {
        Signature::PlainGraph | Signature::Vl5Graph => {
            let off = (sig == Signature::Vl5Graph) as usize;
            for u in 0..m {
                if digits[off + u] == 1 {
                    child.add_edge(u, v)?;
                }
            }
        }
        Signature::StDigraph => {
            if space.radices.first() == Some(&4) {
                let loops = digits[0];
                if loops & 1 != 0 {
                    child.add_s(v, v)?;
                }
                if loops & 2 != 0 {
                    child.add_t(v, v)?;
                }
                for u in 0..m {
                    let d = digits[1 + u];
                    if d & 1 != 0 {
                        child.add_s(u, v)?;
                    }
                    if d & 2 != 0 {
                        child.add_s(v, u)?;
                    }
                    if d & 4 != 0 {
                        child.add_t(u, v)?;
                    }
                    if d & 8 != 0 {
                        child.add_t(v, u)?;
                    }
                }
            } else {
                for u in 0..m {
                    match digits[u] {
                        1 => child.add_s(u, v)?,
                        2 => child.add_s(v, u)?,
                        3 => child.add_t(u, v)?,
                        4 => child.add_t(v, u)?,
                        _ => {}
                    }
                }
            }
        }
        Signature::Ternary => {
            let simple = space.radices.iter().all(|&r| r == 3);
            for (&(a, b, c), &d) in space.triples.iter().zip(digits) {
                if simple {
                    add_apex(&mut child, [a, b, c], d as usize)?;
                } else if d == 1 {
                    child.add_r(a, b, c)?;
                }
            }
        }
    }
    Ok(child)
}

/// Puts `R(x,y,z)` and `R(x,z,y)` on the 3-set with `x = set[apex]`.
pub(crate) fn add_apex(g: &mut FinStructure, set: [usize; 3], apex: usize) -> Result<()> {
    let x = set[apex];
    let others: Vec<usize> = set.iter().copied().filter(|&w| w != x).collect();
    g.add_r(x, others[0], others[1])?;
    g.add_r(x, others[1], others[0])
}

/// Levels `0..=n`: level `k` holds one canonical representative per
/// isomorphism class of structures of size `k` accepted by `filter`, sorted
/// by canonical form.
pub fn enumerate_levels<F>(sig: Signature, n: usize, filter: &F, opts: EnumOptions) -> Result<Vec<Vec<FinStructure>>>
where
    F: Fn(&FinStructure) -> bool + Sync,
{
    if n > opts.cap {
        return Err(Error::CapExceeded {
            what: "enumeration size",
            value: n,
            cap: opts.cap,
        });
    }
    let empty = FinStructure::empty(sig);
    let mut frontier = vec![empty];
    let mut levels = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            let children: Vec<Result<Vec<(CanonicalForm, FinStructure)>>> = par::map(&frontier, |p| {
                let kids = one_point_extensions(p, opts.domain)?;
                Ok(kids
                    .into_iter()
                    .filter(|c| !opts.prune || filter(c))
                    .map(|c| {
                        let (form, perm) = canonical_labeling(&c, 0);
                        (form, c.permuted(&perm))
                    })
                    .collect())
            });
            let mut classes = BTreeMap::new();
            for batch in children {
                for (form, rep) in batch? {
                    classes.entry(form).or_insert(rep);
                }
            }
            frontier = classes.into_values().collect();
        }
        let level: Vec<FinStructure> = if opts.prune {
            frontier.clone()
        } else {
            frontier.iter().filter(|s| filter(s)).cloned().collect()
        };
        levels.push(level);
    }
    Ok(levels)
}

/// One representative per isomorphism class of size exactly `n` accepted by `filter`.
pub fn enumerate_structures<F>(sig: Signature, n: usize, filter: &F, opts: EnumOptions) -> Result<Vec<FinStructure>>
where
    F: Fn(&FinStructure) -> bool + Sync,
{
    let mut levels = enumerate_levels(sig, n, filter, opts)?;
    Ok(levels.pop().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_zero_is_the_empty_structure() {
        let all = enumerate_structures(Signature::PlainGraph, 0, &|_| true, EnumOptions::default()).unwrap();
        assert_eq!(all, vec![FinStructure::empty(Signature::PlainGraph)]);
    }

    #[test]
    fn small_graph_counts() {
        // 1, 1, 2, 4, 11 graphs on 0..=4 vertices
        let levels = enumerate_levels(Signature::PlainGraph, 4, &|_| true, EnumOptions::default()).unwrap();
        let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11]);
    }

    #[test]
    fn cap_is_enforced() {
        let opts = EnumOptions {
            cap: 3,
            ..EnumOptions::default()
        };
        assert!(matches!(
            enumerate_structures(Signature::PlainGraph, 4, &|_| true, opts),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn simple_ternary_extensions_pick_one_apex() {
        let pair = FinStructure::ternary(2, &[]).unwrap();
        let kids = one_point_extensions(&pair, Domain::Simple).unwrap();
        assert_eq!(kids.len(), 3);
        for k in &kids {
            assert_eq!(k.r_triples().len(), 2);
        }
    }

    #[test]
    fn extension_space_guard() {
        let big = FinStructure::new(Signature::Ternary, 5).unwrap();
        assert!(one_point_extensions(&big, Domain::All).is_err());
    }
}
