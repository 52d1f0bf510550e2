use crate::error::{Error, Result};
use crate::structures::{FinStructure, Signature};

/// A truncation of the generic limit of `g`: a rooted tree in which every
/// original vertex above depth `depth` has `branching` children. The edge to
/// a child with even index is subdivided into two pieces, the edge to a child
/// with odd index into three.
///
/// Vertex 0 is the root; vertices are numbered in breadth-first order of
/// creation, each subdivision path before its child.
pub fn subdivided_tree(depth: usize, branching: usize) -> Result<FinStructure> {
    if branching < 2 || !branching.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "branching must be even and at least 2, got {branching}"
        )));
    }
    let cap = Signature::PlainGraph.max_vertices();
    // each original edge adds one or two subdivision vertices, alternating
    let mut total: usize = 1;
    let mut level: usize = 1;
    for _ in 0..depth {
        level = level.saturating_mul(branching);
        let per_level = level.saturating_add(level.saturating_mul(3) / 2);
        total = total.saturating_add(per_level);
        if total > cap {
            return Err(Error::CapExceeded {
                what: "subdivided tree size",
                value: total,
                cap,
            });
        }
    }
    let mut g = FinStructure::new(Signature::PlainGraph, 1)?;
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * branching);
        for &parent in &frontier {
            for child in 0..branching {
                let pieces = if child % 2 == 0 { 2 } else { 3 };
                let mut prev = parent;
                for _ in 0..pieces {
                    let v = g.add_vertex(Default::default())?;
                    g.add_edge(prev, v)?;
                    prev = v;
                }
                next.push(prev);
            }
        }
        frontier = next;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{is_member, ClassId};

    #[test]
    fn small_trees() {
        assert_eq!(subdivided_tree(0, 2).unwrap().len(), 1);
        let t = subdivided_tree(1, 2).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.edge_count(), 5);
        assert!(is_member(&ClassId::G, &t).unwrap());
    }

    #[test]
    fn bad_parameters() {
        assert!(subdivided_tree(1, 3).is_err());
        assert!(subdivided_tree(1, 0).is_err());
        assert!(matches!(subdivided_tree(9, 4), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn size_formula() {
        // originals plus one subdivision vertex per even child, two per odd
        let t = subdivided_tree(3, 4).unwrap();
        let originals = 1 + 4 + 16 + 64;
        let edges = originals - 1;
        assert_eq!(t.len(), originals + edges / 2 + edges);
    }
}
