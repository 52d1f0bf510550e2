//! Witness constructions for the weak amalgamation property.
//!
//! Every construction only appends vertices, so the input `H` is the prefix
//! `0..|H|` of the output and the intermediate structure (the one the free
//! amalgam is taken over) is a longer prefix.

use serde::{Deserialize, Serialize};

use crate::classes::{bridges, components, free_cycles, is_tame, undetermined_vertices, ClassId, CycleLengths};
use crate::error::{Error, Result};
use crate::structures::{FinStructure, Z5};

/// A witness `G ⊇ H` together with the sizes of the two nested prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WapWitness {
    pub witness: FinStructure,
    /// `H` is `witness` restricted to `0..base_len`.
    pub base_len: usize,
    /// The intermediate structure is `witness` restricted to `0..intermediate_len`.
    pub intermediate_len: usize,
}

impl WapWitness {
    pub fn base(&self) -> Vec<usize> {
        (0..self.base_len).collect()
    }

    pub fn intermediate(&self) -> Vec<usize> {
        (0..self.intermediate_len).collect()
    }
}

/// Builds the class-specific witness over `h`.
pub fn wap_witness(c: &ClassId, h: &FinStructure) -> Result<WapWitness> {
    c.require_member(h)?;
    let (intermediate, witness) = match c {
        ClassId::K5 => {
            let mid = k5_connect(h)?;
            let w = k5_determine(&mid)?;
            (mid, w)
        }
        ClassId::P => {
            let mid = p_connect(h)?;
            let w = p_determine(&mid)?;
            (mid, w)
        }
        ClassId::G => {
            let mid = tame_extension(h)?;
            let w = pad_leaves(&mid)?;
            (mid, w)
        }
        ClassId::Ga(a) => {
            let mid = ga_saturate(a, &ga_connect(c, h)?)?;
            let w = ga_kill_free_cycles(c, &mid)?;
            (mid, w)
        }
        ClassId::Pzk => {
            return Err(Error::Precondition("no witness construction for pzk".into()));
        }
    };
    debug_assert!(c.require_member(&intermediate).is_ok());
    c.require_member(&witness)
        .map_err(|_| Error::Precondition(format!("witness construction for {c} left the class")))?;
    Ok(WapWitness {
        base_len: h.len(),
        intermediate_len: intermediate.len(),
        witness,
    })
}

fn add_pendant(g: &mut FinStructure, v: usize, label: Z5) -> Result<usize> {
    let u = g.add_vertex(label)?;
    g.add_edge(u, v)?;
    Ok(u)
}

/// Least label for a new vertex adjacent to `touched` that determines none
/// of them and does not itself see both of its forbidden labels.
pub(crate) fn safe_label(g: &FinStructure, touched: &[usize]) -> Result<Z5> {
    Z5::ALL
        .into_iter()
        .find(|&l| {
            let determines = touched.iter().any(|&r| l == g.label(r) + 1 || l == g.label(r) + 2);
            let at_risk = touched.iter().any(|&r| g.label(r) == l + 1) && touched.iter().any(|&r| g.label(r) == l + 2);
            !determines && !at_risk
        })
        .ok_or_else(|| Error::Precondition(format!("no safe label next to {touched:?}")))
}

fn k5_connect(h: &FinStructure) -> Result<FinStructure> {
    let mut g = h.clone();
    let comps = components(h);
    for comp in comps.iter().skip(1) {
        let ends = [comps[0][0], comp[0]];
        let l = safe_label(&g, &ends)?;
        let u = g.add_vertex(l)?;
        for r in ends {
            g.add_edge(u, r)?;
        }
    }
    Ok(g)
}

fn k5_determine(h: &FinStructure) -> Result<FinStructure> {
    let mut g = h.clone();
    for v in undetermined_vertices(&ClassId::K5, h)? {
        let l = g.label(v);
        let (a, b) = (l + 1, l + 2);
        add_pendant(&mut g, v, a.min(b))?;
    }
    Ok(g)
}

fn p_connect(h: &FinStructure) -> Result<FinStructure> {
    let mut g = h.clone();
    let comps = components(h);
    if comps.len() > 1 {
        let u = g.add_vertex(Z5::default())?;
        for comp in &comps {
            // arrows into the new vertex, all S, leave old in-edges untouched
            g.add_s(comp[0], u)?;
        }
    }
    Ok(g)
}

fn p_determine(h: &FinStructure) -> Result<FinStructure> {
    let mut g = h.clone();
    for v in undetermined_vertices(&ClassId::P, h)? {
        let w = g.add_vertex(Z5::default())?;
        g.add_s(w, v)?;
    }
    Ok(g)
}

/// Extends a member of `g` to a tame one: connect, then give every
/// degree-2 vertex without a high-degree neighbor a pendant, then give
/// every leaf hanging off a high-degree vertex a pendant.
pub fn tame_extension(h: &FinStructure) -> Result<FinStructure> {
    ClassId::G.require_member(h)?;
    let mut g = h.clone();
    if g.is_empty() {
        g.add_vertex(Z5::default())?;
    }
    while !(g.len() > 2 && components(&g).len() == 1) {
        let ends: Vec<usize> = components(&g)
            .iter()
            .map(|c| *c.iter().find(|&&v| g.degree(v) <= 1).expect("forest components have a leaf"))
            .collect();
        let u = g.add_vertex(Z5::default())?;
        for r in ends {
            g.add_edge(u, r)?;
        }
    }
    while let Some(v) = g
        .vertices()
        .find(|&v| g.degree(v) == 2 && g.neighbors(v).all(|w| g.degree(w) <= 2))
    {
        add_pendant(&mut g, v, Z5::default())?;
    }
    while let Some(v) = g
        .vertices()
        .find(|&v| g.degree(v) == 1 && g.neighbors(v).any(|w| g.degree(w) != 2))
    {
        add_pendant(&mut g, v, Z5::default())?;
    }
    debug_assert!(is_tame(&g).unwrap_or(false));
    Ok(g)
}

fn pad_leaves(h: &FinStructure) -> Result<FinStructure> {
    let mut g = h.clone();
    let leaves: Vec<usize> = h.vertices().filter(|&v| h.degree(v) == 1).collect();
    for u in leaves {
        add_pendant(&mut g, u, Z5::default())?;
        add_pendant(&mut g, u, Z5::default())?;
    }
    Ok(g)
}

fn ga_connect(c: &ClassId, h: &FinStructure) -> Result<FinStructure> {
    let mut g = h.clone();
    if g.is_empty() {
        g.add_vertex(Z5::default())?;
    }
    let comps = components(&g);
    if comps.len() == 1 && g.edge_count() > 0 {
        return Ok(g);
    }
    let free = free_cycles(c, &g)?;
    let mut ends = Vec::with_capacity(comps.len());
    for comp in &comps {
        let pick = comp.iter().copied().find(|&v| g.degree(v) <= 1).or_else(|| {
            comp.iter()
                .copied()
                .find(|&v| g.degree(v) == 2 && free.iter().any(|cy| cy.vertices().contains(&v)))
        });
        ends.push(pick.ok_or_else(|| Error::Precondition("component without a leaf or free cycle".into()))?);
    }
    let u = g.add_vertex(Z5::default())?;
    for r in ends {
        g.add_edge(u, r)?;
    }
    Ok(g)
}

/// `g` with a new path of `len` edges from `v` to `w`.
pub fn adjoin_path(g: &FinStructure, v: usize, w: usize, len: usize) -> Result<FinStructure> {
    if len < 2 {
        return Err(Error::Precondition(format!("path length {len} is below 2")));
    }
    let mut out = g.clone();
    let mut prev = v;
    for _ in 1..len {
        let u = out.add_vertex(Z5::default())?;
        out.add_edge(prev, u)?;
        prev = u;
    }
    out.add_edge(prev, w)?;
    Ok(out)
}

fn ga_saturate(a: &CycleLengths, h: &FinStructure) -> Result<FinStructure> {
    let mut g = h.clone();
    while let Some(&(v, w)) = bridges(&g).first() {
        g = adjoin_path(&g, v, w, a.min() - 1)?;
    }
    Ok(g)
}

fn ga_kill_free_cycles(c: &ClassId, h: &FinStructure) -> Result<FinStructure> {
    let mut g = h.clone();
    for cycle in free_cycles(c, h)? {
        let low: Vec<usize> = cycle.vertices().iter().copied().filter(|&v| h.degree(v) == 2).collect();
        let count = if cycle.high_degree(h).is_empty() { 2 } else { 1 };
        for &v in low.iter().take(count) {
            add_pendant(&mut g, v, Z5::default())?;
        }
    }
    Ok(g)
}
