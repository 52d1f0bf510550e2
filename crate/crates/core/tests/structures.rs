use std::collections::BTreeSet;

use proptest::prelude::*;
use wapkit::classes::ClassId;
use wapkit::structures::{
    canonicalize, enumerate_embeddings, enumerate_structures, from_json, induced_substructure, to_json, EnumOptions,
};
use wapkit::{FinStructure, Signature};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect()
}

/// Least edge mask over all relabelings: an isomorphism invariant computed
/// without the library.
fn brute_graph_class(n: usize, mask: u32) -> u32 {
    let ps = pairs(n);
    let index = |u: usize, v: usize| ps.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    permutations(n)
        .iter()
        .map(|perm| {
            ps.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(0u32, |acc, (_, &(u, v))| acc | 1 << index(perm[u], perm[v]))
        })
        .min()
        .unwrap()
}

fn graph_from_mask(n: usize, mask: u32) -> FinStructure {
    let edges: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, p)| p)
        .collect();
    FinStructure::graph(n, &edges).unwrap()
}

#[test]
fn graph_counts_match_brute_force() {
    // known: 1, 1, 2, 4, 11, 34 graphs on 0..=5 vertices
    for (n, known) in [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
        let mut brute = BTreeSet::new();
        let mut canon = BTreeSet::new();
        for mask in 0..(1u32 << pairs(n).len()) {
            brute.insert(brute_graph_class(n, mask));
            canon.insert(canonicalize(&graph_from_mask(n, mask)));
        }
        assert_eq!(brute.len(), known, "brute force at n={n}");
        assert_eq!(canon.len(), known, "canonical forms at n={n}");
        let reps = enumerate_structures(Signature::PlainGraph, n, &|_: &FinStructure| true, EnumOptions::default()).unwrap();
        assert_eq!(reps.len(), known, "enumeration at n={n}");
    }
}

#[test]
fn canonical_forms_separate_exactly_the_brute_force_classes() {
    let n = 4;
    for a in 0..(1u32 << 6) {
        for b in 0..(1u32 << 6) {
            let same = brute_graph_class(n, a) == brute_graph_class(n, b);
            let ca = canonicalize(&graph_from_mask(n, a));
            let cb = canonicalize(&graph_from_mask(n, b));
            assert_eq!(same, ca == cb, "masks {a:#b} {b:#b}");
        }
    }
}

#[test]
fn g_members_on_three_vertices() {
    // triangle-free graphs on 3 vertices: empty, one edge, path (two edges)
    let mut brute = BTreeSet::new();
    for mask in 0..8u32 {
        if mask != 0b111 {
            brute.insert(brute_graph_class(3, mask));
        }
    }
    let g = ClassId::G;
    let reps = enumerate_structures(Signature::PlainGraph, 3, &|s: &FinStructure| wapkit::classes::is_member(&g, s).unwrap(), EnumOptions::default()).unwrap();
    assert_eq!(reps.len(), brute.len());
    assert_eq!(reps.len(), 3);
}

#[test]
fn embedding_examples() {
    let two = FinStructure::graph(2, &[]).unwrap();
    let tri = FinStructure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(enumerate_embeddings(&two, &tri).unwrap().is_empty());

    let edge = FinStructure::graph(2, &[(0, 1)]).unwrap();
    let path = FinStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
    let maps: Vec<Vec<usize>> = enumerate_embeddings(&edge, &path)
        .unwrap()
        .iter()
        .map(|e| e.map().to_vec())
        .collect();
    assert_eq!(maps, vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]]);

    let l0 = FinStructure::vl5(&[0], &[]).unwrap();
    let l1 = FinStructure::vl5(&[1], &[]).unwrap();
    assert!(enumerate_embeddings(&l0, &l1).unwrap().is_empty());
}

#[test]
fn induced_substructure_examples() {
    let path = FinStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
    let (ends, e) = induced_substructure(&path, &[0, 2]).unwrap();
    assert_eq!(ends, FinStructure::graph(2, &[]).unwrap());
    assert!(e.is_valid(&ends, &path));
    let (all, _) = induced_substructure(&path, &[0, 1, 2]).unwrap();
    assert_eq!(all, path);
    assert!(induced_substructure(&path, &[3]).is_err());
}

fn arb_structure(max_n: usize) -> impl Strategy<Value = FinStructure> {
    (0..4u8, 0..=max_n).prop_flat_map(|(sig, n)| {
        let nn = n * n;
        (
            Just(sig),
            Just(n),
            prop::collection::vec(0..5u8, n),
            prop::collection::vec(any::<bool>(), nn),
            prop::collection::vec(any::<bool>(), nn),
            prop::collection::vec(prop::bool::weighted(0.15), nn * n),
        )
            .prop_map(|(sig, n, labels, bits_a, bits_b, bits_r)| {
                let edges: Vec<(usize, usize)> =
                    pairs(n).into_iter().filter(|&(u, v)| bits_a[u * n + v]).collect();
                let arcs = |bits: &[bool]| -> Vec<(usize, usize)> {
                    (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| bits[u * n + v]).collect()
                };
                match sig {
                    0 => FinStructure::graph(n, &edges).unwrap(),
                    1 => FinStructure::vl5(&labels, &edges).unwrap(),
                    2 => FinStructure::st(n, &arcs(&bits_a), &arcs(&bits_b)).unwrap(),
                    _ => {
                        let triples: Vec<(usize, usize, usize)> = (0..n * n * n)
                            .filter(|&i| bits_r[i])
                            .map(|i| (i / (n * n), (i / n) % n, i % n))
                            .collect();
                        FinStructure::ternary(n, &triples).unwrap()
                    }
                }
            })
    })
}

fn arb_permuted(max_n: usize) -> impl Strategy<Value = (FinStructure, Vec<usize>)> {
    arb_structure(max_n).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

/// Nested induced chain `A ⊆ B ⊆ C` cut from one random structure.
fn arb_chain() -> impl Strategy<Value = (FinStructure, FinStructure, FinStructure)> {
    arb_structure(5).prop_flat_map(|c| {
        let n = c.len();
        (Just(c), prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n)).prop_map(
            |(c, keep_b, keep_a)| {
                let vb: Vec<usize> = c.vertices().filter(|&v| keep_b[v]).collect();
                let b = c.restrict_to(&vb).unwrap();
                let va: Vec<usize> = b.vertices().filter(|&v| keep_a[v]).collect();
                let a = b.restrict_to(&va).unwrap();
                (a, b, c)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_permutation_invariant((g, perm) in arb_permuted(6)) {
        prop_assert_eq!(canonicalize(&g), canonicalize(&g.permuted(&perm)));
    }

    #[test]
    fn json_round_trip(g in arb_structure(5)) {
        prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn embeddings_compose((a, b, c) in arb_chain()) {
        let ab = enumerate_embeddings(&a, &b).unwrap();
        let bc = enumerate_embeddings(&b, &c).unwrap();
        let ac: BTreeSet<_> = enumerate_embeddings(&a, &c).unwrap().into_iter().collect();
        for f in &ab {
            for g in &bc {
                prop_assert!(ac.contains(&f.then(g)));
            }
        }
    }

    #[test]
    fn embeddings_reflect_structure((a, b, _c) in arb_chain()) {
        let all = enumerate_embeddings(&a, &b).unwrap();
        prop_assert!(!all.is_empty());
        for e in &all {
            prop_assert!(e.is_valid(&a, &b));
            let (img, _) = induced_substructure(&b, &e.image()).unwrap();
            prop_assert_eq!(canonicalize(&img), canonicalize(&a));
        }
        // deterministic lexicographic order
        let mut sorted = all.clone();
        sorted.sort_by(|x, y| x.map().cmp(y.map()));
        prop_assert_eq!(&sorted, &all);
        prop_assert_eq!(enumerate_embeddings(&a, &b).unwrap(), all);
    }
}
