//! Independent amalgam check by brute force: enumerate every member `W` up
//! to the size bound and every pair of embeddings into it.

use std::ops::ControlFlow;

use super::AmalgamSpan;
use crate::classes::{members_up_to, Membership};
use crate::error::{Error, Result};
use crate::structures::{enumerate_embeddings, for_each_embedding, FinStructure};

/// Whether some member `W` of size at most `|X| + |Y| - |base|` admits
/// embeddings of `X` and `Y` agreeing on `base ⊆ Z`. Refuses bounds above `max_w`.
pub fn slow_amalgam_exists<M: Membership>(span: &AmalgamSpan, base: &[usize], m: &M, max_w: usize) -> Result<bool> {
    let hi = slow_bound(span, base);
    if hi > max_w {
        return Err(Error::CapExceeded {
            what: "slow-path candidate size",
            value: hi,
            cap: max_w,
        });
    }
    let levels = members_up_to(m, hi)?;
    Ok(slow_amalgam_exists_in(span, base, &levels))
}

/// Largest candidate size the slow path must consider.
pub fn slow_bound(span: &AmalgamSpan, base: &[usize]) -> usize {
    let mut b = base.to_vec();
    b.sort_unstable();
    b.dedup();
    span.x.len() + span.y.len() - b.len()
}

/// As [`slow_amalgam_exists`] over precomputed member levels (level `k`
/// holds the members of size `k`); levels past the bound are ignored.
pub fn slow_amalgam_exists_in(span: &AmalgamSpan, base: &[usize], levels: &[Vec<FinStructure>]) -> bool {
    let lo = span.x.len().max(span.y.len());
    let hi = slow_bound(span, base);
    let pins: Vec<(usize, usize)> = base.iter().map(|&v| (span.f.apply(v), span.g.apply(v))).collect();
    for level in levels.iter().take(hi + 1).skip(lo) {
        for w in level {
            let Ok(g_maps) = enumerate_embeddings(&span.y, w) else {
                continue;
            };
            if g_maps.is_empty() {
                continue;
            }
            let mut found = false;
            let _ = for_each_embedding(&span.x, w, |f1| {
                let hit = g_maps
                    .iter()
                    .any(|g1| pins.iter().all(|&(a, b)| f1[a] == g1.apply(b)));
                if hit {
                    found = true;
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if found {
                return true;
            }
        }
    }
    false
}
