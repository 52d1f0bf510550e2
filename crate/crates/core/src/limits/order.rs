//! The ternary reduct of a finite linear order.
//!
//! `R(x,y,z)` holds iff `x < y`, `x < z` and `y != z`, so every 3-set carries
//! its least element as the apex and nothing else holds. Finite initial
//! segments `0 < 1 < .. < n-1` stand in for the rationals; every check below
//! only ever quantifies over finite tuples.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Clock, Evidence};
use crate::classes::{is_member, members_up_to, ClassId};
use crate::error::{Error, Result};
use crate::structures::{
    add_apex, canonicalize, enumerate_levels, for_each_embedding, Bits, Domain, EnumOptions, Embedding, FinStructure,
    Signature, DEFAULT_ENUM_CAP,
};

/// Largest order size the bounded order-reduct checks accept.
pub const ORDER_CHECK_CAP: usize = 6;

/// Largest size for the exhaustive age comparison.
pub const AGE_CHECK_CAP: usize = 5;

/// The order `0 < 1 < .. < n-1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinOrder {
    pub n: usize,
}

impl LinOrder {
    pub fn new(n: usize) -> Self {
        LinOrder { n }
    }
}

fn require_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}

/// The ternary structure on `0..n` whose 3-sets each have their minimum as apex.
pub fn r_from_order(o: LinOrder) -> Result<FinStructure> {
    let mut g = FinStructure::new(Signature::Ternary, o.n)?;
    for x in 0..o.n {
        for y in (x + 1)..o.n {
            for z in (y + 1)..o.n {
                add_apex(&mut g, [x, y, z], 0)?;
            }
        }
    }
    Ok(g)
}

/// `x < y` as defined inside a member: some `z` has `R(x,y,z)`.
///
/// Order recovery needs a third point, so on members with fewer than three
/// vertices the relation is empty.
pub fn derived_order(g: &FinStructure, x: usize, y: usize) -> Result<bool> {
    ClassId::Pzk.require_member(g)?;
    for v in [x, y] {
        if v >= g.len() {
            return Err(Error::VertexOutOfRange { vertex: v, size: g.len() });
        }
    }
    Ok(g.r_mask(x, y) != 0)
}

/// The vertices of a member listed from least to greatest under the derived
/// order. The derived order never separates the two greatest points (the
/// swap of the two is an automorphism), so those keep index order, as do
/// members with at most two vertices.
pub fn order_of_member(g: &FinStructure) -> Result<Vec<usize>> {
    ClassId::Pzk.require_member(g)?;
    let mut vs: Vec<usize> = g.vertices().collect();
    if g.len() >= 3 {
        // the rank of v is the number of vertices below it
        vs.sort_by_key(|&v| g.vertices().filter(|&u| g.r_mask(u, v) != 0).count());
    }
    Ok(vs)
}

/// Puts one new point above every element of `a`: `B = A ∪ {max A + 1}`.
///
/// Returns the order, extended by one when `a` reaches the top, and `B` sorted.
pub fn weak_hom_witness(o: LinOrder, a: &[usize]) -> Result<(LinOrder, Vec<usize>)> {
    let set = order_subset(o, a)?;
    let top = *set.last().ok_or_else(|| Error::Precondition("A must be nonempty".into()))?;
    let b = top + 1;
    let mut out = set;
    out.push(b);
    Ok((LinOrder::new(o.n.max(b + 1)), out))
}

/// The induced ternary structure on `b` (sorted), which is the domain of
/// [`swap_embedding`].
pub fn order_substructure(o: LinOrder, b: &[usize]) -> Result<FinStructure> {
    let set = order_subset(o, b)?;
    r_from_order(o)?.restrict_to(&set)
}

/// The map from the induced structure on `b` (listed ascending) into
/// `r_from_order(o)` that fixes everything except the two greatest elements
/// of `b`, which it exchanges.
pub fn swap_embedding(o: LinOrder, b: &[usize]) -> Result<Embedding> {
    let set = order_subset(o, b)?;
    let k = set.len();
    if k < 2 {
        return Err(Error::Precondition(format!("B needs at least two elements, got {k}")));
    }
    let mut map = set;
    map.swap(k - 2, k - 1);
    Ok(Embedding::new(map))
}

fn order_subset(o: LinOrder, a: &[usize]) -> Result<Vec<usize>> {
    let set: BTreeSet<usize> = a.iter().copied().collect();
    if set.len() != a.len() {
        return Err(Error::Precondition("vertex set has repeated elements".into()));
    }
    if let Some(&v) = set.iter().find(|&&v| v >= o.n) {
        return Err(Error::VertexOutOfRange { vertex: v, size: o.n });
    }
    Ok(set.into_iter().collect())
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1u64 << n)).map(|m| Bits(m).collect())
}

/// Calls `visit` with every embedding of `dom` into `r_from_order(k)` for
/// `k` in `sizes`, stopping at the first `Break`.
fn each_embedding_into_orders<F>(dom: &FinStructure, sizes: std::ops::RangeInclusive<usize>, mut visit: F) -> Result<Option<(FinStructure, Embedding)>>
where
    F: FnMut(&[usize]) -> bool,
{
    for k in sizes {
        let cod = r_from_order(LinOrder::new(k))?;
        let mut bad = None;
        for_each_embedding(dom, &cod, |map| {
            if visit(map) {
                ControlFlow::Continue(())
            } else {
                bad = Some(Embedding::new(map.to_vec()));
                ControlFlow::Break(())
            }
        })?;
        if let Some(e) = bad {
            return Ok(Some((cod, e)));
        }
    }
    Ok(None)
}

/// For every order of size `n <= n_max` and every nonempty `A`, every
/// embedding of the witness `B = A ∪ {b}` into an order of size between
/// `|o'|` and `n_max + 1` is order-preserving on `A`.
pub fn weak_hom_check(n_max: usize) -> Result<Certificate> {
    require_cap("order size", n_max, ORDER_CHECK_CAP)?;
    let clock = Clock::start();
    let claim = format!("the one-point-above witness controls A, orders up to {n_max}");
    let mut checked = 0u64;
    for n in 1..=n_max {
        let o = LinOrder::new(n);
        for a in subsets(n) {
            let (o2, b) = weak_hom_witness(o, &a)?;
            let dom = order_substructure(o2, &b)?;
            let alen = a.len();
            let bad = each_embedding_into_orders(&dom, o2.n..=n_max + 1, |map| {
                checked += 1;
                map[..alen].windows(2).all(|w| w[0] < w[1])
            })?;
            if let Some((cod, map)) = bad {
                return Ok(Certificate::fail(claim, Evidence::Embedding { dom, cod, map })
                    .with_stats(checked, n_max + 1, &clock));
            }
        }
    }
    Ok(Certificate::pass(claim)
        .note(format!("{checked} embeddings checked"))
        .with_stats(checked, n_max + 1, &clock))
}

/// Both directions between order maps and embeddings of the reducts, for
/// `k <= m <= n_max`: every increasing injection `0..k -> 0..m` is an
/// embedding, and every embedding is increasing once the two greatest
/// points of the domain are put in order.
pub fn functoriality_check(n_max: usize) -> Result<Certificate> {
    require_cap("order size", n_max, ORDER_CHECK_CAP)?;
    let clock = Clock::start();
    let claim = format!("order maps and reduct embeddings correspond, orders up to {n_max}");
    let mut checked = 0u64;
    for k in 0..=n_max {
        let dom = r_from_order(LinOrder::new(k))?;
        for m in k..=n_max {
            let cod = r_from_order(LinOrder::new(m))?;
            // increasing injections are the k-subsets of 0..m
            for image in subsets(m).filter(|s| s.len() == k) {
                checked += 1;
                let e = Embedding::new(image);
                if !e.is_valid(&dom, &cod) {
                    return Ok(Certificate::fail(claim, Evidence::Embedding { dom, cod, map: e })
                        .with_stats(checked, m, &clock));
                }
            }
            let mut bad = None;
            for_each_embedding(&dom, &cod, |map| {
                checked += 1;
                let mut sorted_top = map.to_vec();
                if k >= 2 && sorted_top[k - 2] > sorted_top[k - 1] {
                    sorted_top.swap(k - 2, k - 1);
                }
                if sorted_top.windows(2).all(|w| w[0] < w[1]) {
                    ControlFlow::Continue(())
                } else {
                    bad = Some(Embedding::new(map.to_vec()));
                    ControlFlow::Break(())
                }
            })?;
            if let Some(map) = bad {
                return Ok(Certificate::fail(claim, Evidence::Embedding { dom, cod, map })
                    .with_stats(checked, m, &clock));
            }
        }
    }
    Ok(Certificate::pass(claim)
        .note(format!("{checked} maps checked"))
        .with_stats(checked, n_max, &clock))
}

/// For every `B` with at least two elements in an order of size `<= n_max`,
/// the swap of its two greatest elements is an embedding and not increasing.
pub fn not_cofinal_check(n_max: usize) -> Result<Certificate> {
    require_cap("order size", n_max, ORDER_CHECK_CAP)?;
    let clock = Clock::start();
    let claim = format!("the top-two swap is a non-increasing embedding, orders up to {n_max}");
    let mut checked = 0u64;
    let mut witness = None;
    for n in 2..=n_max {
        let o = LinOrder::new(n);
        let cod = r_from_order(o)?;
        for b in subsets(n).filter(|s| s.len() >= 2) {
            checked += 1;
            let dom = order_substructure(o, &b)?;
            let map = swap_embedding(o, &b)?;
            if !map.is_valid(&dom, &cod) || map.is_order_preserving() {
                return Ok(Certificate::fail(claim, Evidence::Embedding { dom, cod, map })
                    .with_stats(checked, n, &clock));
            }
            if n == n_max && b.len() == n {
                witness = Some(Evidence::Embedding {
                    dom,
                    cod: cod.clone(),
                    map,
                });
            }
        }
    }
    let mut cert = Certificate::pass(claim)
        .note(format!("{checked} sets B checked"))
        .with_stats(checked, n_max, &clock);
    cert.witness = witness;
    Ok(cert)
}

/// A member `a` with one point added above everything, the order on `a`
/// taken from [`order_of_member`].
pub fn add_point_above(a: &FinStructure) -> Result<FinStructure> {
    let order = order_of_member(a)?;
    let mut rank = vec![0usize; a.len()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut b = a.clone();
    let top = b.add_vertex(Default::default())?;
    for x in a.vertices() {
        for y in (x + 1)..a.len() {
            let apex = if rank[x] < rank[y] { 0 } else { 1 };
            add_apex(&mut b, [x, y, top], apex)?;
        }
    }
    Ok(b)
}

/// For every member `A` of size `m <= n_max`, the witness of size `m + 1`
/// from [`add_point_above`] forces every embedding into an order of size up
/// to `n_max + 1` to be increasing on `A`. Also confirms that for
/// `2 <= m <= n_max` a witness of size `m` (A itself) does not.
pub fn uniformity_check(n_max: usize) -> Result<Certificate> {
    require_cap("order size", n_max, ORDER_CHECK_CAP)?;
    let clock = Clock::start();
    let claim = format!("witnesses of size m+1 suffice for members up to size {n_max}");
    let levels = members_up_to(&ClassId::Pzk, n_max)?;
    let mut checked = 0u64;
    for a in levels.iter().flatten().filter(|a| !a.is_empty()) {
        let m = a.len();
        let order = order_of_member(a)?;
        let b = add_point_above(a)?;
        if !is_member(&ClassId::Pzk, &b)? {
            return Ok(Certificate::fail(claim, Evidence::Pair { left: a.clone(), right: b })
                .with_stats(checked, m + 1, &clock));
        }
        let bad = each_embedding_into_orders(&b, m + 1..=n_max + 1, |map| {
            checked += 1;
            order.windows(2).all(|w| map[w[0]] < map[w[1]])
        })?;
        if let Some((cod, map)) = bad {
            return Ok(Certificate::fail(claim, Evidence::Embedding { dom: b, cod, map })
                .with_stats(checked, n_max + 1, &clock));
        }
    }
    // tightness: A itself admits the top-two swap
    for m in 2..=n_max {
        let o = LinOrder::new(m);
        let all: Vec<usize> = (0..m).collect();
        let (dom, cod) = (order_substructure(o, &all)?, r_from_order(o)?);
        let map = swap_embedding(o, &all)?;
        checked += 1;
        if !map.is_valid(&dom, &cod) || map.is_order_preserving() {
            return Ok(Certificate::fail(
                format!("{claim} (size-m witness unexpectedly suffices at m = {m})"),
                Evidence::Embedding { dom, cod, map },
            )
            .with_stats(checked, m, &clock));
        }
    }
    Ok(Certificate::pass(claim)
        .note(format!("{checked} embeddings checked"))
        .note(if n_max >= 2 {
            format!("a witness of size m fails for every m in 2..={n_max}, so m+1 is tight there")
        } else {
            "no size in range where a size-m witness could fail".to_string()
        })
        .with_stats(checked, n_max + 1, &clock))
}

/// The members of size `<= n_max` are exactly the order reducts, up to
/// isomorphism: every reduct satisfies the axioms and every member is
/// isomorphic to the reduct of its size.
///
/// Members come from the one-apex-per-3-set domain; a second enumeration
/// over all ternary tables up to size 3 confirms that domain loses nothing.
pub fn pzk_age_check(n_max: usize) -> Result<Certificate> {
    require_cap("age check size", n_max, AGE_CHECK_CAP)?;
    let clock = Clock::start();
    let claim = format!("pzk members coincide with order reducts up to size {n_max}");
    let levels = members_up_to(&ClassId::Pzk, n_max)?;
    let mut checked = 0u64;
    for (k, level) in levels.iter().enumerate() {
        let r = r_from_order(LinOrder::new(k))?;
        checked += 1 + level.len() as u64;
        if !is_member(&ClassId::Pzk, &r)? {
            return Ok(Certificate::fail(claim, Evidence::Structure { structure: r }).with_stats(checked, k, &clock));
        }
        let form = canonicalize(&r);
        if let Some(odd) = level.iter().find(|g| canonicalize(g) != form) {
            return Ok(Certificate::fail(claim, Evidence::Pair { left: odd.clone(), right: r })
                .with_stats(checked, k, &clock));
        }
        if level.len() != 1 {
            return Ok(Certificate::fail(
                format!("{claim} (size {k} has {} classes)", level.len()),
                Evidence::Structure { structure: r },
            )
            .with_stats(checked, k, &clock));
        }
    }
    let cross = n_max.min(3);
    let opts = EnumOptions {
        cap: DEFAULT_ENUM_CAP,
        domain: Domain::All,
        prune: true,
    };
    let all_tables = enumerate_levels(Signature::Ternary, cross, &|g| is_member(&ClassId::Pzk, g).unwrap_or(false), opts)?;
    for (k, level) in all_tables.iter().enumerate() {
        checked += level.len() as u64;
        if level.len() != levels[k].len() {
            return Ok(Certificate::fail(
                format!("{claim} (unrestricted tables disagree at size {k})"),
                Evidence::Structure {
                    structure: level.first().cloned().unwrap_or_else(|| FinStructure::empty(Signature::Ternary)),
                },
            )
            .with_stats(checked, k, &clock));
        }
    }
    Ok(Certificate::pass(claim)
        .note(format!("unrestricted ternary tables cross-checked up to size {cross}"))
        .with_stats(checked, n_max, &clock))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_reducts() {
        for n in 0..3 {
            assert!(r_from_order(LinOrder::new(n)).unwrap().r_triples().is_empty());
        }
        let mut t = r_from_order(LinOrder::new(3)).unwrap().r_triples();
        t.sort();
        assert_eq!(t, vec![(0, 1, 2), (0, 2, 1)]);
    }

    #[test]
    fn derived_order_needs_three_points() {
        let g3 = r_from_order(LinOrder::new(3)).unwrap();
        assert!(derived_order(&g3, 0, 1).unwrap());
        assert!(!derived_order(&g3, 1, 0).unwrap());
        assert!(!derived_order(&g3, 2, 2).unwrap());
        let g2 = r_from_order(LinOrder::new(2)).unwrap();
        assert!(!derived_order(&g2, 0, 1).unwrap());
        let bad = FinStructure::ternary(3, &[(0, 1, 2)]).unwrap();
        assert!(derived_order(&bad, 0, 1).is_err());
    }

    #[test]
    fn witness_and_swap_examples() {
        assert_eq!(weak_hom_witness(LinOrder::new(3), &[0, 1]).unwrap(), (LinOrder::new(3), vec![0, 1, 2]));
        assert_eq!(weak_hom_witness(LinOrder::new(3), &[2]).unwrap(), (LinOrder::new(4), vec![2, 3]));
        assert!(weak_hom_witness(LinOrder::new(3), &[]).is_err());
        assert_eq!(swap_embedding(LinOrder::new(2), &[0, 1]).unwrap().map(), &[1, 0]);
        let o = LinOrder::new(4);
        let e = swap_embedding(o, &[0, 1, 2]).unwrap();
        assert_eq!(e.map(), &[0, 2, 1]);
        assert!(e.is_valid(&order_substructure(o, &[0, 1, 2]).unwrap(), &r_from_order(o).unwrap()));
        assert!(swap_embedding(o, &[1]).is_err());
    }

    #[test]
    fn member_order_is_recovered() {
        let g = r_from_order(LinOrder::new(4)).unwrap().permuted(&[2, 0, 3, 1]);
        let order = order_of_member(&g).unwrap();
        for w in order[..3].windows(2) {
            assert!(derived_order(&g, w[0], w[1]).unwrap());
        }
        // the top two are incomparable both ways
        assert!(!derived_order(&g, order[2], order[3]).unwrap());
        assert!(!derived_order(&g, order[3], order[2]).unwrap());
    }

    #[test]
    fn negated_order_formula_below_the_top_pair() {
        let n = 6;
        let g = r_from_order(LinOrder::new(n)).unwrap();
        for x in 0..n {
            for y in 0..n {
                let lt = derived_order(&g, x, y).unwrap();
                let not_lt = x == y || derived_order(&g, y, x).unwrap();
                assert_eq!(!lt, not_lt || (x.min(y) >= n - 2), "{x} {y}");
            }
        }
    }

    #[test]
    fn bounded_checks_pass() {
        for n in [2, 4] {
            assert!(uniformity_check(n).unwrap().passed());
        }
        assert!(weak_hom_check(4).unwrap().passed());
        assert!(not_cofinal_check(4).unwrap().passed());
        assert!(functoriality_check(4).unwrap().passed());
        assert!(pzk_age_check(4).unwrap().passed());
        assert!(uniformity_check(7).is_err());
    }
}
