//! Bounded certification of JEP, the failure of CAP and WAP, plus the
//! auxiliary lemmas those arguments rest on.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    adjoin_path, amalgam_exists, cap_counterexample, free_amalgam, slow_amalgam_exists_in, slow_bound,
    tame_extension, wap_amalgam_exists_with_hint, wap_witness, AmalgamSpan, OracleConfig,
};
use crate::certificate::{Certificate, Clock, Evidence};
use crate::classes::{
    bridges, components_of, free_cycles, gaifman_adjacency, is_non_discrete, is_tame, members_up_to,
    undetermined_vertices, ClassId, Membership,
};
use crate::error::{Error, Result};
use crate::par;
use crate::structures::{canonical_labeling, one_point_extensions, Embedding, FinStructure};

/// Knobs shared by the certification routines.
#[derive(Clone, Copy, Debug)]
pub struct CertifyConfig {
    pub oracle: OracleConfig,
    /// Fraction of negative oracle answers replayed by the slow path.
    pub replay_fraction: f64,
    /// Largest candidate size the slow path may be asked to enumerate.
    pub replay_max_w: usize,
    pub seed: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            oracle: OracleConfig::default(),
            replay_fraction: 0.1,
            replay_max_w: 9,
            seed: 0,
        }
    }
}

fn flatten(levels: Vec<Vec<FinStructure>>) -> Vec<FinStructure> {
    levels.into_iter().flatten().collect()
}

/// Member extensions of `g` by at most `ext` vertices, one per isomorphism
/// type over `g` (which stays the prefix `0..|g|`), `g` itself first.
pub fn extensions_over<M: Membership>(m: &M, g: &FinStructure, ext: usize) -> Result<Vec<FinStructure>> {
    let fixed = g.len();
    let mut out = vec![g.clone()];
    let mut frontier = vec![g.clone()];
    for _ in 0..ext {
        let kids: Vec<Result<Vec<_>>> = par::map(&frontier, |p| {
            Ok(one_point_extensions(p, m.domain())?
                .into_iter()
                .filter(|c| m.contains(c))
                .map(|c| {
                    let (form, perm) = canonical_labeling(&c, fixed);
                    (form, c.permuted(&perm))
                })
                .collect())
        });
        let mut classes = BTreeMap::new();
        for batch in kids {
            for (form, rep) in batch? {
                classes.entry(form).or_insert(rep);
            }
        }
        frontier = classes.into_values().collect();
        out.extend(frontier.iter().cloned());
    }
    Ok(out)
}

/// Every pair of members of size at most `n` embeds jointly, via disjoint union.
pub fn certify_jep(c: &ClassId, n: usize) -> Result<Certificate> {
    let clock = Clock::start();
    let all = flatten(members_up_to(c, n)?);
    let pairs: Vec<(usize, usize)> = (0..all.len()).flat_map(|i| (i..all.len()).map(move |j| (i, j))).collect();
    let bad = par::find_map_first(&pairs, |&(i, j)| {
        let u = all[i].disjoint_union(&all[j]).ok()?;
        (!c.contains(&u)).then_some((i, j))
    });
    let claim = format!("{c} has JEP up to size {n}");
    Ok(match bad {
        None => Certificate::pass(claim)
            .note("joint embedding by disjoint union")
            .with_stats(pairs.len() as u64, 2 * n, &clock),
        Some((i, j)) => Certificate::fail(
            claim,
            Evidence::Pair {
                left: all[i].clone(),
                right: all[j].clone(),
            },
        )
        .with_stats(pairs.len() as u64, 2 * n, &clock),
    })
}

/// Members of size at most `n` that the gadget construction applies to.
pub fn cap_eligible(c: &ClassId, n: usize) -> Result<Vec<FinStructure>> {
    let all = flatten(members_up_to(c, n)?);
    Ok(all
        .into_iter()
        .filter(|h| {
            !h.is_empty()
                && match c {
                    ClassId::G | ClassId::Ga(_) => is_non_discrete(h),
                    _ => true,
                }
        })
        .collect())
}

/// For every eligible member `H` of size at most `n`, the gadget span over
/// `H` has no amalgam. A seeded sample of the negative answers is replayed
/// by the slow path.
pub fn certify_not_cap(c: &ClassId, n: usize, cfg: &CertifyConfig) -> Result<Certificate> {
    if *c == ClassId::Pzk {
        return Err(Error::Precondition("pzk is handled by the order-reduct checks".into()));
    }
    let clock = Clock::start();
    let claim = format!("{c} fails CAP over every eligible member up to size {n}");
    let bases = cap_eligible(c, n)?;
    let spans: Vec<AmalgamSpan> = bases.iter().map(|h| cap_counterexample(c, h)).collect::<Result<_>>()?;
    let certs: Vec<Result<Certificate>> = spans.iter().map(|s| amalgam_exists(s, c, &cfg.oracle)).collect();
    let mut candidates = 0;
    let mut slowest = 0;
    let mut max_size = 0;
    for (span, cert) in spans.iter().zip(certs) {
        let cert = cert?;
        candidates += cert.stats.candidates;
        slowest = slowest.max(cert.stats.millis);
        max_size = max_size.max(cert.stats.max_size);
        if cert.passed() {
            return Ok(Certificate::fail(claim, Evidence::Span(span.clone()))
                .note("the gadget span has an amalgam")
                .with_stats(candidates, max_size, &clock));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sampled: Vec<&AmalgamSpan> = spans.iter().filter(|_| rng.gen_bool(cfg.replay_fraction)).collect();
    let (replay, skipped): (Vec<&AmalgamSpan>, Vec<&AmalgamSpan>) =
        sampled.into_iter().partition(|s| slow_bound(s, &all_of(s)) <= cfg.replay_max_w);
    if let Some(top) = replay.iter().map(|s| slow_bound(s, &all_of(s))).max() {
        let levels = members_up_to(c, top)?;
        let disagree = par::find_map_first(&replay, |s| slow_amalgam_exists_in(s, &all_of(s), &levels).then_some(*s));
        if let Some(s) = disagree {
            return Ok(Certificate::fail(claim, Evidence::Span(s.clone()))
                .note("the slow path found an amalgam the oracle missed")
                .with_stats(candidates, max_size, &clock));
        }
    }
    Ok(Certificate::pass(claim)
        .note(format!("{} gadget spans searched exhaustively, none amalgamates", spans.len()))
        .note(format!(
            "slow path replayed {} sampled spans and skipped {} above size {}",
            replay.len(),
            skipped.len(),
            cfg.replay_max_w
        ))
        .note(format!("slowest single search: {slowest} ms"))
        .with_stats(candidates, max_size, &clock))
}

fn all_of(s: &AmalgamSpan) -> Vec<usize> {
    s.z.vertices().collect()
}

/// For every member `H` of size at most `n`: build the witness `G ⊇ H`, take
/// every pair of member extensions of `G` by at most `ext` vertices, and
/// check that the free amalgam over the intermediate structure is a member
/// (so the pair amalgamates over `H`).
pub fn certify_wap_sample(c: &ClassId, n: usize, ext: usize, cfg: &CertifyConfig) -> Result<Certificate> {
    let clock = Clock::start();
    let claim = format!("{c} has WAP witnesses over members up to size {n} (extensions by {ext})");
    let mut candidates = 0u64;
    let mut max_size = 0;
    for h in flatten(members_up_to(c, n)?) {
        let ww = wap_witness(c, &h)?;
        let exts = extensions_over(c, &ww.witness, ext)?;
        let pairs: Vec<(usize, usize)> = (0..exts.len()).flat_map(|i| (i..exts.len()).map(move |j| (i, j))).collect();
        max_size = max_size.max(2 * (ww.witness.len() + ext) - ww.intermediate_len);
        candidates += pairs.len() as u64;
        let bad = par::find_map_first(&pairs, |&(i, j)| {
            let span = AmalgamSpan::over_prefix(exts[i].clone(), exts[j].clone(), ww.witness.len()).ok()?;
            let mid = span.restricted(&ww.intermediate()).ok()?;
            let free = free_amalgam(&mid);
            if !c.contains(&free.w) {
                return Some(Evidence::Span(span));
            }
            match wap_amalgam_exists_with_hint(&ww.base(), &ww.intermediate(), &span, c, &cfg.oracle) {
                Ok(cert) if cert.passed() => None,
                _ => Some(Evidence::Span(span)),
            }
        });
        if let Some(ev) = bad {
            return Ok(Certificate::fail(claim, ev).with_stats(candidates, max_size, &clock));
        }
    }
    Ok(Certificate::pass(claim)
        .note("every checked pair amalgamates freely over the intermediate structure")
        .note("bounded check: only extensions up to the stated size were examined")
        .with_stats(candidates, max_size, &clock))
}

/// No path in `x` leaves the prefix `0..h_len` at one vertex and re-enters
/// it at another, i.e. every component outside the prefix touches at most one
/// prefix vertex.
pub fn key_path_holds(x: &FinStructure, h_len: usize) -> bool {
    let adj = gaifman_adjacency(x);
    let outside: Vec<Vec<usize>> = adj
        .iter()
        .enumerate()
        .map(|(v, ns)| if v < h_len { Vec::new() } else { ns.iter().copied().filter(|&w| w >= h_len).collect() })
        .collect();
    components_of(&outside).iter().filter(|comp| comp[0] >= h_len).all(|comp| {
        let mut touch: Vec<usize> = comp.iter().flat_map(|&v| adj[v].iter().copied().filter(|&w| w < h_len)).collect();
        touch.sort_unstable();
        touch.dedup();
        touch.len() <= 1
    })
}

/// The key-path property of the `ga` intermediate structures: for every
/// member `G` of size at most `n`, every member extension of the
/// intermediate `H` by at most `ext` vertices keeps paths between
/// `H`-vertices inside `H`.
pub fn certify_key_path(c: &ClassId, n: usize, ext: usize) -> Result<Certificate> {
    if !matches!(c, ClassId::Ga(_)) {
        return Err(Error::Precondition("the key-path property concerns ga classes".into()));
    }
    let clock = Clock::start();
    let claim = format!("key-path property for {c} over members up to size {n} (extensions by {ext})");
    let mut candidates = 0u64;
    let mut max_size = 0;
    for g in flatten(members_up_to(c, n)?) {
        let ww = wap_witness(c, &g)?;
        let h = ww.witness.restrict_to(&ww.intermediate())?;
        let exts = extensions_over(c, &h, ext)?;
        candidates += exts.len() as u64;
        max_size = max_size.max(h.len() + ext);
        if let Some(x) = exts.iter().find(|x| !key_path_holds(x, h.len())) {
            return Ok(Certificate::fail(
                claim,
                Evidence::Substructure {
                    structure: x.clone(),
                    subset: (0..h.len()).collect(),
                },
            )
            .with_stats(candidates, max_size, &clock));
        }
    }
    Ok(Certificate::pass(claim).with_stats(candidates, max_size, &clock))
}

fn exhaustive<F>(claim: String, c: &ClassId, n: usize, bad: F) -> Result<Certificate>
where
    F: Fn(&FinStructure) -> Result<bool> + Sync + Send,
{
    let clock = Clock::start();
    let all = flatten(members_up_to(c, n)?);
    let hit = par::find_map_first(&all, |g| match bad(g) {
        Ok(false) => None,
        Ok(true) => Some(Ok(g.clone())),
        Err(e) => Some(Err(e)),
    });
    let cert = match hit {
        None => Certificate::pass(claim).note(format!("exhausted {} members", all.len())),
        Some(Ok(g)) => Certificate::fail(claim, Evidence::Structure { structure: g }),
        Some(Err(e)) => return Err(e),
    };
    Ok(cert.with_stats(all.len() as u64, n, &clock))
}

/// Every nonempty member of size at most `n` has an undetermined vertex.
pub fn certify_undetermined(c: &ClassId, n: usize) -> Result<Certificate> {
    exhaustive(format!("nonempty members of {c} up to size {n} have an undetermined vertex"), c, n, |g| {
        Ok(!g.is_empty() && undetermined_vertices(c, g)?.is_empty())
    })
}

/// Every member of `g` up to size `n` has a tame member extension containing it.
pub fn certify_tame(n: usize) -> Result<Certificate> {
    exhaustive(format!("members of g up to size {n} extend to tame members"), &ClassId::G, n, |g| {
        let t = tame_extension(g)?;
        let inclusion = Embedding::identity(g.len());
        Ok(!(is_tame(&t)? && inclusion.is_valid(g, &t)))
    })
}

/// Every non-discrete member up to size `n` has a free cycle or a leaf.
pub fn certify_free_cycle_or_leaf(c: &ClassId, n: usize) -> Result<Certificate> {
    exhaustive(format!("non-discrete members of {c} up to size {n} have a free cycle or a leaf"), c, n, |g| {
        if !is_non_discrete(g) {
            return Ok(false);
        }
        let leaf = g.vertices().any(|v| g.degree(v) == 1);
        Ok(!leaf && free_cycles(c, g)?.is_empty())
    })
}

/// Closing a cycle of any admissible length through an edge on no cycle
/// stays in the class, for every member up to size `n` and every such edge.
pub fn certify_new_cycle(c: &ClassId, n: usize) -> Result<Certificate> {
    let ClassId::Ga(a) = c else {
        return Err(Error::Precondition("path adjoining concerns ga classes".into()));
    };
    exhaustive(format!("adjoining a cycle through an edge on no cycle stays in {c} up to size {n}"), c, n, |g| {
        for (v, w) in bridges(g) {
            for len in a.iter() {
                if !c.contains(&adjoin_path(g, v, w, len - 1)?) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    })
}

/// A random span of members: `Z` with at most `z_max` vertices, `X` and `Y`
/// each adding between 0 and `ext_max` vertices to it, grown one vertex at a
/// time through member one-point extensions.
pub fn random_member_span<M: Membership, R: Rng>(m: &M, rng: &mut R, z_max: usize, ext_max: usize) -> Result<AmalgamSpan> {
    let grow = |g: &FinStructure, k: usize, rng: &mut R| -> Result<FinStructure> {
        let mut g = g.clone();
        for _ in 0..k {
            let kids: Vec<FinStructure> = one_point_extensions(&g, m.domain())?
                .into_iter()
                .filter(|c| m.contains(c))
                .collect();
            g = kids
                .choose(rng)
                .cloned()
                .ok_or_else(|| Error::Precondition("no member extension".into()))?;
        }
        Ok(g)
    };
    let empty = FinStructure::empty(m.signature());
    let z = grow(&empty, rng.gen_range(0..=z_max), rng)?;
    let kx = rng.gen_range(0..=ext_max);
    let ky = rng.gen_range(0..=ext_max);
    let x = grow(&z, kx, rng)?;
    let y = grow(&z, ky, rng)?;
    AmalgamSpan::over_prefix(x, y, z.len())
}
