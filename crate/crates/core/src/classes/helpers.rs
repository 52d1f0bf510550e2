use super::ClassId;
use crate::error::{Error, Result};
use crate::structures::{bit, Bits, FinStructure, Signature};

/// Neighbor lists of the Gaifman graph (`u ~ v` when `u != v` and some
/// tuple contains both), each ascending.
pub fn gaifman_adjacency(g: &FinStructure) -> Vec<Vec<usize>> {
    let n = g.len();
    match g.sig() {
        Signature::Vl5Graph | Signature::PlainGraph => (0..n).map(|v| g.neighbors(v).collect()).collect(),
        Signature::StDigraph => (0..n)
            .map(|v| Bits((g.s_out_mask(v) | g.t_out_mask(v) | g.s_in_mask(v) | g.t_in_mask(v)) & !bit(v)).collect())
            .collect(),
        Signature::Ternary => {
            let mut adj = vec![0u64; n];
            for (x, y, z) in g.r_triples() {
                let m = bit(x) | bit(y) | bit(z);
                for v in [x, y, z] {
                    adj[v] |= m & !bit(v);
                }
            }
            adj.into_iter().map(|m| Bits(m).collect()).collect()
        }
    }
}

/// Connected components of the Gaifman graph, each sorted, ordered by least vertex.
pub fn components(g: &FinStructure) -> Vec<Vec<usize>> {
    components_of(&gaifman_adjacency(g))
}

/// Components of a symmetric adjacency-list graph, each sorted, ordered by least vertex.
pub(crate) fn components_of(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &FinStructure) -> bool {
    components(g).len() <= 1
}

/// Acyclic as an undirected simple graph given by symmetric neighbor lists.
pub(crate) fn acyclic(adj: &[Vec<usize>]) -> bool {
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    edges + components_of(adj).len() == adj.len()
}

/// Whether the edge relation of a graph-signature structure is a forest.
pub fn is_forest(g: &FinStructure) -> bool {
    g.sig().has_edges() && acyclic(&gaifman_adjacency(g))
}

/// At least one tuple holds.
pub fn is_non_discrete(g: &FinStructure) -> bool {
    g.tuple_count() > 0
}

/// `k5`: `w` is adjacent to `v` and labeled `label(v)+1` or `label(v)+2`.
/// `p`: some `S` or `T` arrow runs from `w` to `v`.
pub fn determines(class: &ClassId, g: &FinStructure, w: usize, v: usize) -> Result<bool> {
    class.require_sig(g)?;
    match class {
        ClassId::K5 => {
            let l = g.label(v);
            Ok(g.has_edge(v, w) && (g.label(w) == l + 1 || g.label(w) == l + 2))
        }
        ClassId::P => Ok(g.has_s(w, v) || g.has_t(w, v)),
        _ => Err(Error::Precondition(format!("determinacy is not defined for {class}"))),
    }
}

pub(crate) fn k5_undetermined(g: &FinStructure) -> Vec<usize> {
    g.vertices()
        .filter(|&v| {
            let l = g.label(v);
            !g.neighbors(v).any(|w| g.label(w) == l + 1 || g.label(w) == l + 2)
        })
        .collect()
}

pub(crate) fn p_undetermined(g: &FinStructure) -> Vec<usize> {
    g.vertices()
        .filter(|&v| g.s_in_mask(v) | g.t_in_mask(v) == 0)
        .collect()
}

/// Vertices not determined by any vertex, ascending. Defined for members of `k5` and `p`.
pub fn undetermined_vertices(class: &ClassId, g: &FinStructure) -> Result<Vec<usize>> {
    match class {
        ClassId::K5 => {
            class.require_member(g)?;
            Ok(k5_undetermined(g))
        }
        ClassId::P => {
            class.require_member(g)?;
            Ok(p_undetermined(g))
        }
        _ => Err(Error::Precondition(format!("determinacy is not defined for {class}"))),
    }
}

pub(crate) fn tame_unchecked(g: &FinStructure) -> bool {
    g.len() > 2
        && is_connected(g)
        && g.vertices().all(|v| match g.degree(v) {
            2 => g.neighbors(v).any(|w| g.degree(w) > 2),
            1 => g.neighbors(v).all(|w| g.degree(w) == 2),
            _ => true,
        })
}

/// Connected, more than two vertices, every degree-2 vertex has a neighbor
/// of degree above 2, and the neighbor of every leaf has degree 2.
pub fn is_tame(g: &FinStructure) -> Result<bool> {
    ClassId::G.require_member(g)?;
    Ok(tame_unchecked(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k5_edge_determinacy_is_one_sided() {
        let g = FinStructure::vl5(&[0, 1], &[(0, 1)]).unwrap();
        assert!(determines(&ClassId::K5, &g, 1, 0).unwrap());
        assert!(!determines(&ClassId::K5, &g, 0, 1).unwrap());
        assert_eq!(undetermined_vertices(&ClassId::K5, &g).unwrap(), vec![1]);
    }

    #[test]
    fn single_vertex_is_undetermined() {
        let g = FinStructure::vl5(&[3], &[]).unwrap();
        assert_eq!(undetermined_vertices(&ClassId::K5, &g).unwrap(), vec![0]);
    }

    #[test]
    fn non_member_rejected() {
        let bad = FinStructure::vl5(&[0, 1, 2], &[(0, 1), (0, 2)]).unwrap();
        assert!(matches!(
            undetermined_vertices(&ClassId::K5, &bad),
            Err(Error::NotMember { .. })
        ));
        assert!(undetermined_vertices(&ClassId::G, &FinStructure::graph(1, &[]).unwrap()).is_err());
    }

    #[test]
    fn p_undetermined_is_in_degree_zero() {
        let g = FinStructure::st(3, &[(0, 1)], &[(1, 2)]).unwrap();
        assert_eq!(undetermined_vertices(&ClassId::P, &g).unwrap(), vec![0]);
    }

    #[test]
    fn tameness() {
        let p3 = FinStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_tame(&p3).unwrap());
        let spider = FinStructure::graph(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(is_tame(&spider).unwrap());
        let split = FinStructure::graph(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(!is_tame(&split).unwrap());
    }

    #[test]
    fn forest_and_components() {
        let g = FinStructure::graph(5, &[(0, 1), (3, 4)]).unwrap();
        assert!(is_forest(&g));
        assert_eq!(components(&g), vec![vec![0, 1], vec![2], vec![3, 4]]);
        let c = FinStructure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!is_forest(&c));
        assert!(is_non_discrete(&c));
        assert!(!is_non_discrete(&FinStructure::graph(2, &[]).unwrap()));
    }
}
