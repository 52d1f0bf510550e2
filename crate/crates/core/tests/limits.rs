use proptest::prelude::*;
use wapkit::classes::{is_member, ClassId};
use wapkit::limits::{
    add_point_above, derived_order, generic_chain, generic_chain_with, order_of_member, r_from_order, subdivided_tree,
    swap_embedding, weak_hom_witness, ChainConfig, LinOrder,
};
use wapkit::structures::enumerate_embeddings;

fn class(i: usize) -> ClassId {
    match i {
        0 => ClassId::K5,
        1 => ClassId::P,
        2 => ClassId::G,
        3 => ClassId::ga([3, 4]).unwrap(),
        _ => ClassId::Pzk,
    }
}

#[test]
fn tree_parameters() {
    assert!(subdivided_tree(2, 3).is_err());
    assert!(subdivided_tree(2, 0).is_err());
    let t = subdivided_tree(3, 2).unwrap();
    assert_eq!(t.edge_count() + 1, t.len());
    assert!(is_member(&ClassId::G, &t).unwrap());
}

#[test]
fn swap_of_top_two_is_an_embedding() {
    for n in 2..=6 {
        let r = r_from_order(LinOrder::new(n)).unwrap();
        let e = swap_embedding(LinOrder::new(n), &(0..n).collect::<Vec<_>>()).unwrap();
        assert!(e.is_valid(&r, &r));
        assert!(!e.is_order_preserving());
        // an n-point order reduct has exactly two automorphisms from n = 2 on
        assert_eq!(enumerate_embeddings(&r, &r).unwrap().len(), 2);
    }
}

#[test]
fn order_recovery_below_the_top_pair() {
    let n = 5;
    let r = r_from_order(LinOrder::new(n)).unwrap();
    for x in 0..n {
        for y in 0..n {
            let below = x < y && x < n - 2;
            assert_eq!(derived_order(&r, x, y).unwrap(), below, "{x} {y}");
        }
    }
    assert_eq!(&order_of_member(&r).unwrap()[..n - 2], &[0, 1, 2]);
}

#[test]
fn witness_adds_one_point_on_top() {
    let (o, b) = weak_hom_witness(LinOrder::new(3), &[0, 2]).unwrap();
    assert_eq!(b, vec![0, 2, 3]);
    assert_eq!(o.n, 4);
    let (o, b) = weak_hom_witness(LinOrder::new(6), &[1, 3]).unwrap();
    assert_eq!((o.n, b), (6, vec![1, 3, 4]));
    let a = r_from_order(LinOrder::new(3)).unwrap();
    let b = add_point_above(&a).unwrap();
    assert_eq!(b, r_from_order(LinOrder::new(4)).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chains_are_nested_members(ci in 0..5usize, seed in any::<u64>(), steps in 0..40usize) {
        let c = class(ci);
        let st = generic_chain(&c, steps, 16, seed).unwrap();
        prop_assert_eq!(st.steps_run(), steps);
        prop_assert!(st.soundness_check().unwrap().passed());
        prop_assert!(st.current.len() <= 16);
        for t in 0..steps {
            prop_assert!(st.sizes[t] <= st.sizes[t + 1]);
            let snap = st.snapshot(t).unwrap();
            prop_assert!(is_member(&c, &snap).unwrap());
            prop_assert_eq!(st.snapshot(t + 1).unwrap().restrict_to(&(0..st.sizes[t]).collect::<Vec<_>>()).unwrap(), snap);
        }
    }

    #[test]
    fn chains_are_reproducible(ci in 0..5usize, seed in any::<u64>()) {
        let cfg = ChainConfig::new(20, 12, seed);
        let a = generic_chain_with(&class(ci), cfg.clone()).unwrap();
        let b = generic_chain_with(&class(ci), cfg).unwrap();
        prop_assert_eq!(a.current, b.current);
        prop_assert_eq!(a.sizes, b.sizes);
    }

    #[test]
    fn reducts_are_members(n in 0..8usize) {
        let r = r_from_order(LinOrder::new(n)).unwrap();
        prop_assert!(is_member(&ClassId::Pzk, &r).unwrap());
        prop_assert!(is_member(&ClassId::Pzk, &add_point_above(&r).unwrap()).unwrap());
    }
}
