use wapkit::claims::{claim_info, run_claim, ClaimOverrides, CATALOG};
use wapkit::Verdict;

#[test]
fn every_catalog_claim_passes_at_default_sizes() {
    let ov = ClaimOverrides::default();
    for info in CATALOG.iter() {
        let cert = run_claim(info.id, &ov).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass, "{}: {:?}", info.id, cert.counterexample);
        assert_eq!(claim_info(info.id).unwrap().summary, info.summary);
    }
}

#[test]
fn certificates_round_trip_through_json() {
    let cert = run_claim("g-not-cap", &ClaimOverrides::default()).unwrap();
    let back: wapkit::Certificate = serde_json::from_str(&cert.to_json()).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn seeds_and_sizes_are_honored() {
    let small = ClaimOverrides {
        cap_n: Some(2),
        ..Default::default()
    };
    let cert = run_claim("k5-hp", &small).unwrap();
    assert!(cert.notes.iter().any(|n| n.contains("up to size 2")));
    let a = run_claim("ga-distinct", &ClaimOverrides { seed: Some(3), ..Default::default() }).unwrap();
    let b = run_claim("ga-distinct", &ClaimOverrides { seed: Some(3), ..Default::default() }).unwrap();
    assert_eq!(a.witness, b.witness);
}
