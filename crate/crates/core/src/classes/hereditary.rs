use super::Membership;
use crate::certificate::{Certificate, Clock, Evidence};
use crate::error::Result;
use crate::par;
use crate::structures::{enumerate_levels, EnumOptions, FinStructure, DEFAULT_ENUM_CAP};

/// Members of sizes `0..=n`, one per isomorphism class, by level.
///
/// Hereditary predicates are enumerated with pruning; others by filtering
/// the full level, which is only affordable for very small `n`.
pub fn members_up_to<M: Membership>(m: &M, n: usize) -> Result<Vec<Vec<FinStructure>>> {
    let opts = EnumOptions {
        cap: DEFAULT_ENUM_CAP,
        domain: m.domain(),
        prune: m.is_hereditary(),
    };
    enumerate_levels(m.signature(), n, &|g| m.contains(g), opts)
}

/// Checks that every induced substructure of every member of size `<= n`
/// is a member.
///
/// Members are enumerated *without* pruning (pruning would presuppose the
/// property under test), over the predicate's declared domain.
pub fn hereditary_check<M: Membership>(m: &M, n: usize) -> Result<Certificate> {
    let clock = Clock::start();
    let claim = format!("{} is hereditary up to size {n}", m.name());
    let opts = EnumOptions {
        cap: DEFAULT_ENUM_CAP,
        domain: m.domain(),
        prune: false,
    };
    let levels = enumerate_levels(m.signature(), n, &|g| m.contains(g), opts)?;
    let members: Vec<FinStructure> = levels.into_iter().flatten().collect();
    let found = par::find_map_first(&members, |g| {
        let full = g.full_mask();
        (0..=full).find_map(|mask| {
            let subset: Vec<usize> = crate::structures::Bits(mask).collect();
            let sub = g.restrict_to(&subset).expect("subset in range");
            (!m.contains(&sub)).then(|| (g.clone(), subset))
        })
    });
    let checks: u64 = members.iter().map(|g| 1u64 << g.len()).sum();
    let cert = match found {
        Some((structure, subset)) => Certificate::fail(claim, Evidence::Substructure { structure, subset }),
        None => Certificate::pass(claim).note(format!(
            "exhausted {} members of size <= {n} and all of their vertex subsets",
            members.len()
        )),
    };
    Ok(cert.with_stats(checks, n, &clock))
}
