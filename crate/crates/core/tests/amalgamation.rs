use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wapkit::amalgamation::{
    amalgam_exists, cap_counterexample, free_amalgam, random_member_span, wap_witness, AmalgamSpan, OracleConfig,
};
use wapkit::classes::{is_connected, is_member, undetermined_vertices, ClassId};
use wapkit::{Evidence, FinStructure};

fn class(i: usize) -> ClassId {
    match i {
        0 => ClassId::K5,
        1 => ClassId::P,
        2 => ClassId::G,
        3 => ClassId::ga([3, 4]).unwrap(),
        _ => ClassId::Pzk,
    }
}

fn span(ci: usize, seed: u64) -> AmalgamSpan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_member_span(&class(ci), &mut rng, 2, 2).unwrap()
}

#[test]
fn gadget_spans_are_member_spans_without_amalgam() {
    let cfg = OracleConfig::default();
    for (c, h) in [
        (ClassId::K5, FinStructure::vl5(&[0], &[]).unwrap()),
        (ClassId::P, FinStructure::st(1, &[], &[]).unwrap()),
        (ClassId::G, FinStructure::graph(2, &[(0, 1)]).unwrap()),
        (ClassId::ga([4, 5]).unwrap(), FinStructure::graph(2, &[(0, 1)]).unwrap()),
    ] {
        let s = cap_counterexample(&c, &h).unwrap();
        for part in [&s.z, &s.x, &s.y] {
            assert!(is_member(&c, part).unwrap(), "{c}");
        }
        assert!(!amalgam_exists(&s, &c, &cfg).unwrap().passed(), "{c}");
        assert!(!amalgam_exists(&s.swapped(), &c, &cfg).unwrap().passed(), "{c}");
    }
}

#[test]
fn wap_witness_nests_over_the_base() {
    let h = FinStructure::vl5(&[0, 3], &[]).unwrap();
    let w = wap_witness(&ClassId::K5, &h).unwrap();
    assert!(w.base_len <= w.intermediate_len && w.intermediate_len <= w.witness.len());
    assert_eq!(w.witness.restrict_to(&w.base()).unwrap(), h);
    let mid = w.witness.restrict_to(&w.intermediate()).unwrap();
    // the two base vertices end up connected, and every base vertex determined
    assert!(is_connected(&mid));
    assert!(is_member(&ClassId::K5, &w.witness).unwrap());
    let open = undetermined_vertices(&ClassId::K5, &w.witness).unwrap();
    assert!(w.base().iter().all(|v| !open.contains(v)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn oracle_is_symmetric(ci in 0..5usize, seed in any::<u64>()) {
        let cfg = OracleConfig::default();
        let s = span(ci, seed);
        let c = class(ci);
        let there = amalgam_exists(&s, &c, &cfg).unwrap().passed();
        let back = amalgam_exists(&s.swapped(), &c, &cfg).unwrap().passed();
        prop_assert_eq!(there, back);
    }

    #[test]
    fn positive_answers_carry_a_valid_amalgam(ci in 0..5usize, seed in any::<u64>()) {
        let c = class(ci);
        let s = span(ci, seed);
        let cert = amalgam_exists(&s, &c, &OracleConfig::default()).unwrap();
        if cert.passed() {
            match cert.witness {
                Some(Evidence::Amalgam { span: ws, solution }) => {
                    prop_assert_eq!(&ws, &s);
                    prop_assert!(solution.verify(&s));
                    prop_assert!(is_member(&c, &solution.w).unwrap());
                    prop_assert!(solution.w.len() <= s.x.len() + s.y.len() - s.z.len());
                }
                other => prop_assert!(false, "unexpected witness {:?}", other),
            }
        }
    }

    #[test]
    fn free_amalgam_is_an_amalgam(ci in 0..5usize, seed in any::<u64>()) {
        let c = class(ci);
        let s = span(ci, seed);
        let free = free_amalgam(&s);
        prop_assert!(free.verify(&s));
        prop_assert_eq!(free.w.len(), s.x.len() + s.y.len() - s.z.len());
        if is_member(&c, &free.w).unwrap() {
            prop_assert!(amalgam_exists(&s, &c, &OracleConfig::default()).unwrap().passed());
        }
    }
}
