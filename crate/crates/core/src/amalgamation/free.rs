use super::{AmalgamSolution, AmalgamSpan, Over};
use crate::structures::{Embedding, FinStructure};

/// Glues `X` and `Y` along `Z` with no further identifications and no
/// tuples across the two sides.
///
/// `W` has `X` as its first `|X|` vertices followed by `Y ∖ g(Z)` in order.
/// Membership of `W` in any class is the caller's concern.
pub fn free_amalgam(span: &AmalgamSpan) -> AmalgamSolution {
    let pairs: Vec<(usize, usize)> = span
        .z
        .vertices()
        .map(|v| (span.f.apply(v), span.g.apply(v)))
        .collect();
    let (w, g1) = glue(&span.x, &span.y, &pairs);
    AmalgamSolution {
        w,
        f1: Embedding::identity(span.x.len()),
        g1,
        over: Over::All,
    }
}

/// `X` with `Y` glued on along the identified pairs `(x, y)`; returns `W` and
/// the map `Y → W`. The pairs must be compatible.
pub(crate) fn glue(x: &FinStructure, y: &FinStructure, pairs: &[(usize, usize)]) -> (FinStructure, Embedding) {
    let mut w = x.clone();
    let mut g1 = vec![usize::MAX; y.len()];
    for &(a, b) in pairs {
        g1[b] = a;
    }
    for v in y.vertices() {
        if g1[v] == usize::MAX {
            g1[v] = w.add_vertex(y.label(v)).expect("within vertex cap");
        }
    }
    w.copy_tuples_from(y, &g1);
    (w, Embedding::new(g1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_span() {
        let x = FinStructure::vl5(&[1, 2], &[(0, 1)]).unwrap();
        let span = AmalgamSpan::over_prefix(x.clone(), x.clone(), 2).unwrap();
        let sol = free_amalgam(&span);
        assert_eq!(sol.w, x);
        assert!(sol.verify(&span));
    }

    #[test]
    fn two_edges_at_a_vertex_make_a_path() {
        let e = FinStructure::graph(2, &[(0, 1)]).unwrap();
        let span = AmalgamSpan::over_prefix(e.clone(), e, 1).unwrap();
        let sol = free_amalgam(&span);
        assert_eq!(sol.w, FinStructure::graph(3, &[(0, 1), (0, 2)]).unwrap());
        assert!(sol.verify(&span));
    }
}
