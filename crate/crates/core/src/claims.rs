//! The fixed catalog of verifiable claims. Each id maps to one or more
//! library checks at default caps, which [`ClaimOverrides`] can change.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amalgamation::{
    certify_free_cycle_or_leaf, certify_jep, certify_key_path, certify_new_cycle, certify_not_cap, certify_tame,
    certify_undetermined, certify_wap_sample, CertifyConfig,
};
use crate::certificate::{Certificate, Clock, Evidence, Stats, Verdict};
use crate::classes::{hereditary_check, is_member, ClassId, CycleLengths};
use crate::error::{Error, Result};
use crate::limits::{functoriality_check, not_cofinal_check, pzk_age_check, uniformity_check, weak_hom_check};
use crate::structures::FinStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimInfo {
    pub id: &'static str,
    pub summary: &'static str,
}

pub const CATALOG: [ClaimInfo; 20] = [
    ClaimInfo { id: "k5-hp", summary: "k5 is closed under induced substructures" },
    ClaimInfo { id: "k5-jep", summary: "any two members of k5 embed jointly" },
    ClaimInfo { id: "k5-undetermined", summary: "every nonempty member of k5 has an undetermined vertex" },
    ClaimInfo { id: "k5-not-cap", summary: "k5 fails CAP: the gadget span over every member has no amalgam" },
    ClaimInfo { id: "k5-wap", summary: "k5 has WAP: witnesses amalgamate freely over the intermediate structure" },
    ClaimInfo { id: "p-hp", summary: "p is closed under induced substructures" },
    ClaimInfo { id: "p-not-cap", summary: "p fails CAP" },
    ClaimInfo { id: "p-wap", summary: "p has WAP" },
    ClaimInfo { id: "g-not-cap", summary: "g fails CAP over every non-discrete member" },
    ClaimInfo { id: "g-tame", summary: "every member of g extends to a tame member" },
    ClaimInfo { id: "g-wap", summary: "g has WAP" },
    ClaimInfo { id: "ga-lemma-free-cycle", summary: "every non-discrete member of a ga class has a free cycle or a leaf" },
    ClaimInfo { id: "ga-newcycle", summary: "closing an admissible cycle through an edge on no cycle stays in the class" },
    ClaimInfo { id: "ga-not-cap", summary: "ga classes fail CAP over every non-discrete member" },
    ClaimInfo { id: "ga-wap", summary: "ga classes have WAP, with the key-path property of the intermediate structure" },
    ClaimInfo { id: "ga-distinct", summary: "distinct length sets give distinct classes, separated by one cycle" },
    ClaimInfo { id: "pzk-axioms", summary: "the axioms define exactly the order reducts, and the class is hereditary" },
    ClaimInfo { id: "pzk-weak-hom", summary: "one point above A is a weak-homogeneity witness for A" },
    ClaimInfo { id: "pzk-not-cofinal", summary: "the top-two swap defeats every candidate cofinal witness" },
    ClaimInfo { id: "pzk-uniform", summary: "witnesses of size m+1 suffice for members of size m" },
];

pub fn claim_info(id: &str) -> Result<ClaimInfo> {
    CATALOG
        .iter()
        .copied()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Parse(format!("unknown claim `{id}`")))
}

/// Caps and parameters that replace a claim's defaults when set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimOverrides {
    /// Largest member size examined.
    pub cap_n: Option<usize>,
    /// Oracle cap on `|X| + |Y| - |Z|` (both the graph and ternary caps).
    pub cap_sum: Option<usize>,
    pub seed: Option<u64>,
    /// Extension depth for WAP samples.
    pub ext: Option<usize>,
    pub set_a: Option<CycleLengths>,
    pub set_b: Option<CycleLengths>,
}

impl ClaimOverrides {
    fn n(&self, default: usize) -> usize {
        self.cap_n.unwrap_or(default)
    }

    fn config(&self) -> CertifyConfig {
        let mut cfg = CertifyConfig::default();
        if let Some(s) = self.cap_sum {
            cfg.oracle.cap_sum = s;
            cfg.oracle.cap_sum_ternary = s;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        cfg
    }

    /// The `ga` classes a claim runs over: `--set-a` alone if given, else the defaults.
    fn ga_classes(&self, defaults: &[&[usize]]) -> Result<Vec<ClassId>> {
        match &self.set_a {
            Some(a) => Ok(vec![ClassId::Ga(a.clone())]),
            None => defaults.iter().map(|d| ClassId::ga(d.iter().copied())).collect(),
        }
    }
}

/// Runs the checks behind `id`.
pub fn run_claim(id: &str, ov: &ClaimOverrides) -> Result<Certificate> {
    let info = claim_info(id)?;
    let cfg = ov.config();
    let ext = ov.ext.unwrap_or(1);
    let parts: Vec<Certificate> = match info.id {
        "k5-hp" => vec![hereditary_check(&ClassId::K5, ov.n(5))?],
        "k5-jep" => vec![certify_jep(&ClassId::K5, ov.n(3))?],
        "k5-undetermined" => vec![certify_undetermined(&ClassId::K5, ov.n(5))?],
        "k5-not-cap" => vec![certify_not_cap(&ClassId::K5, ov.n(3), &cfg)?],
        "k5-wap" => vec![certify_wap_sample(&ClassId::K5, ov.n(2), ext, &cfg)?],
        "p-hp" => vec![hereditary_check(&ClassId::P, ov.n(5))?],
        "p-not-cap" => vec![certify_not_cap(&ClassId::P, ov.n(3), &cfg)?],
        "p-wap" => vec![certify_wap_sample(&ClassId::P, ov.n(2), ext, &cfg)?],
        "g-not-cap" => vec![certify_not_cap(&ClassId::G, ov.n(4), &cfg)?],
        "g-tame" => vec![certify_tame(ov.n(5))?],
        "g-wap" => vec![certify_wap_sample(&ClassId::G, ov.n(3), ext, &cfg)?],
        "ga-lemma-free-cycle" => ov
            .ga_classes(&[&[3, 4], &[4, 5]])?
            .iter()
            .map(|c| certify_free_cycle_or_leaf(c, ov.n(7)))
            .collect::<Result<_>>()?,
        "ga-newcycle" => ov
            .ga_classes(&[&[3, 4], &[4, 5]])?
            .iter()
            .map(|c| certify_new_cycle(c, ov.n(6)))
            .collect::<Result<_>>()?,
        "ga-not-cap" => ov
            .ga_classes(&[&[3, 4], &[4, 6]])?
            .iter()
            .map(|c| certify_not_cap(c, ov.n(5), &cfg))
            .collect::<Result<_>>()?,
        "ga-wap" => {
            let mut out = Vec::new();
            for c in ov.ga_classes(&[&[3, 4]])? {
                out.push(certify_wap_sample(&c, ov.n(3), ext, &cfg)?);
                out.push(certify_key_path(&c, ov.n(3), ext)?);
            }
            out
        }
        "ga-distinct" => {
            let a = ov.set_a.clone().unwrap_or(CycleLengths::new([3, 4])?);
            let b = ov.set_b.clone().unwrap_or(CycleLengths::new([4, 5])?);
            vec![ga_distinct(&a, &b)?]
        }
        "pzk-axioms" => vec![pzk_age_check(ov.n(5))?, hereditary_check(&ClassId::Pzk, ov.n(5).min(4))?],
        "pzk-weak-hom" => vec![weak_hom_check(ov.n(6))?, functoriality_check(ov.n(6))?],
        "pzk-not-cofinal" => vec![not_cofinal_check(ov.n(6))?],
        "pzk-uniform" => vec![uniformity_check(ov.n(6))?],
        _ => unreachable!("catalog ids are all handled"),
    };
    Ok(combine(info, parts))
}

/// One certificate for a claim: the first failing part, or a pass carrying
/// every part's summary and the first witness.
fn combine(info: ClaimInfo, parts: Vec<Certificate>) -> Certificate {
    let mut stats = Stats::default();
    for p in &parts {
        stats.candidates += p.stats.candidates;
        stats.max_size = stats.max_size.max(p.stats.max_size);
        stats.millis += p.stats.millis;
    }
    let claim = format!("{}: {}", info.id, info.summary);
    if let Some(bad) = parts.iter().find(|p| !p.passed()) {
        let mut out = bad.clone();
        out.notes.insert(0, format!("failing part: {}", bad.claim));
        out.claim = claim;
        out.stats = stats;
        return out;
    }
    let mut out = Certificate::pass(claim);
    out.witness = parts.iter().find_map(|p| p.witness.clone());
    for p in &parts {
        out.notes.push(format!("pass: {}", p.claim));
        out.notes.extend(p.notes.iter().cloned());
    }
    out.stats = stats;
    out
}

/// The cycle on `k` vertices.
pub fn cycle_graph(k: usize) -> Result<FinStructure> {
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    FinStructure::graph(k, &edges)
}

/// For `A != B`, the cycle whose length is the least element of the
/// symmetric difference lies in exactly one of the two classes.
pub fn ga_distinct(a: &CycleLengths, b: &CycleLengths) -> Result<Certificate> {
    let clock = Clock::start();
    let (ca, cb) = (ClassId::Ga(a.clone()), ClassId::Ga(b.clone()));
    let claim = format!("{ca} and {cb} are separated by a single cycle");
    let Some(k) = a.iter().chain(b.iter()).filter(|&l| a.contains(l) != b.contains(l)).min() else {
        return Err(Error::Precondition(format!("{ca} and {cb} have the same lengths")));
    };
    let cycle = cycle_graph(k)?;
    let (in_a, in_b) = (is_member(&ca, &cycle)?, is_member(&cb, &cycle)?);
    let ev = Evidence::Structure { structure: cycle };
    let cert = if in_a != in_b {
        let (yes, no) = if in_a { (&ca, &cb) } else { (&cb, &ca) };
        Certificate::pass(claim)
            .with_witness(ev)
            .note(format!("the {k}-cycle is in {yes} and not in {no}"))
    } else {
        Certificate::fail(claim, ev)
    };
    Ok(cert.with_stats(2, k, &clock))
}

/// Random distinct pairs of length sets drawn from `3..=max_len`.
pub fn random_length_pairs(pairs: usize, max_len: usize, seed: u64) -> Result<Vec<(CycleLengths, CycleLengths)>> {
    if max_len < 5 {
        return Err(Error::Precondition("need at least three admissible lengths to draw distinct pairs".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let set: Vec<usize> = (3..=max_len).filter(|_| rng.gen_bool(0.5)).collect();
        if set.len() >= 2 {
            return CycleLengths::new(set);
        }
    };
    let mut out = Vec::with_capacity(pairs);
    while out.len() < pairs {
        let (a, b) = (draw(&mut rng)?, draw(&mut rng)?);
        if a != b {
            out.push((a, b));
        }
    }
    Ok(out)
}

/// [`ga_distinct`] over [`random_length_pairs`].
pub fn ga_separation_sample(pairs: usize, max_len: usize, seed: u64) -> Result<Certificate> {
    let clock = Clock::start();
    let claim = format!("{pairs} random pairs of ga classes (lengths <= {max_len}) are separated by a cycle");
    let mut notes = Vec::new();
    for (a, b) in random_length_pairs(pairs, max_len, seed)? {
        let cert = ga_distinct(&a, &b)?;
        if cert.verdict == Verdict::Fail {
            return Ok(cert);
        }
        notes.extend(cert.notes);
    }
    let mut out = Certificate::pass(claim).with_stats(2 * pairs as u64, max_len, &clock);
    out.notes = notes;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_ids_are_unique_and_known() {
        let mut ids: Vec<&str> = CATALOG.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 20);
        assert!(claim_info("k5-hp").is_ok());
        assert!(matches!(claim_info("nope"), Err(Error::Parse(_))));
    }

    #[test]
    fn distinct_sets_separated_by_least_difference() {
        let a = CycleLengths::new([3, 4]).unwrap();
        let b = CycleLengths::new([4, 5]).unwrap();
        let cert = ga_distinct(&a, &b).unwrap();
        assert!(cert.passed());
        assert_eq!(
            cert.witness,
            Some(Evidence::Structure {
                structure: cycle_graph(3).unwrap()
            })
        );
        assert!(ga_distinct(&a, &a).is_err());
    }

    #[test]
    fn random_pairs_are_distinct_and_seeded() {
        let p = random_length_pairs(10, 9, 4).unwrap();
        assert_eq!(p, random_length_pairs(10, 9, 4).unwrap());
        assert!(p.iter().all(|(a, b)| a != b && a.iter().chain(b.iter()).all(|l| (3..=9).contains(&l))));
        assert!(ga_separation_sample(10, 9, 4).unwrap().passed());
    }

    #[test]
    fn small_claims_run() {
        let ov = ClaimOverrides {
            cap_n: Some(3),
            ..Default::default()
        };
        for id in ["k5-hp", "k5-undetermined", "pzk-not-cofinal", "ga-distinct"] {
            assert!(run_claim(id, &ov).unwrap().passed(), "{id}");
        }
        assert!(run_claim("zz", &ov).is_err());
    }
}
