//! Pairs of one-sided extensions that cannot be amalgamated over their base.

use super::{adjoin_path, AmalgamSpan};
use crate::classes::{free_cycles, is_non_discrete, undetermined_vertices, ClassId};
use crate::error::{Error, Result};
use crate::structures::{FinStructure, Z5};

/// A span `X ← H → Y` of member extensions with no amalgam over `H`.
///
/// * `k5`: at the lowest undetermined vertex `v` (label `i`), `X` adds a
///   neighbor labeled `i+1` and `Y` one labeled `i+2`.
/// * `p`: at the lowest undetermined vertex, `X` adds an incoming `S` arrow
///   and `Y` an incoming `T` arrow.
/// * `g`: at the lowest leaf `v`, `X` attaches `v - c` with two leaves on
///   `c`, and `Y` attaches `v - a - b` with two leaves on `b`.
/// * `ga`: at the lowest leaf `v` with neighbor `w`, `X` and `Y` close
///   cycles through the edge `vw` of the two least admissible lengths.
///   Without leaves, on the first free cycle pick `a` (its high-degree
///   vertex if any, else its least vertex) and the next two vertices `b < c`;
///   `X` hangs pendants on `a` and `b`, `Y` on `c`.
pub fn cap_counterexample(c: &ClassId, h: &FinStructure) -> Result<AmalgamSpan> {
    c.require_member(h)?;
    if h.is_empty() {
        return Err(Error::Precondition("the base must be nonempty".into()));
    }
    let (x, y) = match c {
        ClassId::K5 => {
            let v = undetermined_vertices(c, h)?[0];
            let i = h.label(v);
            (with_pendant(h, v, i + 1)?, with_pendant(h, v, i + 2)?)
        }
        ClassId::P => {
            let v = undetermined_vertices(c, h)?[0];
            let mut x = h.clone();
            let u = x.add_vertex(Z5::default())?;
            x.add_s(u, v)?;
            let mut y = h.clone();
            let u = y.add_vertex(Z5::default())?;
            y.add_t(u, v)?;
            (x, y)
        }
        ClassId::G => {
            require_non_discrete(h)?;
            let v = h
                .vertices()
                .find(|&v| h.degree(v) == 1)
                .ok_or_else(|| Error::Precondition("no leaf".into()))?;
            let mut x = h.clone();
            let cc = add_path_from(&mut x, v, 1)?;
            with_leaves(&mut x, cc, 2)?;
            let mut y = h.clone();
            let b = add_path_from(&mut y, v, 2)?;
            with_leaves(&mut y, b, 2)?;
            (x, y)
        }
        ClassId::Ga(a) => {
            require_non_discrete(h)?;
            if let Some(v) = h.vertices().find(|&v| h.degree(v) == 1) {
                let w = h.neighbors(v).next().expect("leaf has a neighbor");
                let (n, m) = a.two_least();
                (adjoin_path(h, v, w, n - 1)?, adjoin_path(h, v, w, m - 1)?)
            } else {
                let cycle = free_cycles(c, h)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Precondition("no leaf and no free cycle".into()))?;
                let a0 = cycle
                    .high_degree(h)
                    .first()
                    .copied()
                    .unwrap_or(cycle.vertices()[0]);
                let mut rest: Vec<usize> = cycle.vertices().iter().copied().filter(|&u| u != a0).collect();
                rest.sort_unstable();
                let (b, cc) = (rest[0], rest[1]);
                let mut x = with_pendant(h, a0, Z5::default())?;
                let u = x.add_vertex(Z5::default())?;
                x.add_edge(u, b)?;
                (x, with_pendant(h, cc, Z5::default())?)
            }
        }
        ClassId::Pzk => {
            return Err(Error::Precondition("no gadget for pzk".into()));
        }
    };
    debug_assert!(c.require_member(&x).is_ok() && c.require_member(&y).is_ok());
    AmalgamSpan::over_prefix(x, y, h.len())
}

fn require_non_discrete(h: &FinStructure) -> Result<()> {
    if is_non_discrete(h) {
        Ok(())
    } else {
        Err(Error::Precondition("the base must have an edge".into()))
    }
}

fn with_pendant(h: &FinStructure, v: usize, label: Z5) -> Result<FinStructure> {
    let mut g = h.clone();
    let u = g.add_vertex(label)?;
    g.add_edge(u, v)?;
    Ok(g)
}

/// Appends a path of `len` new vertices starting next to `v`; returns its far end.
fn add_path_from(g: &mut FinStructure, v: usize, len: usize) -> Result<usize> {
    let mut prev = v;
    for _ in 0..len {
        let u = g.add_vertex(Z5::default())?;
        g.add_edge(prev, u)?;
        prev = u;
    }
    Ok(prev)
}

fn with_leaves(g: &mut FinStructure, v: usize, count: usize) -> Result<()> {
    for _ in 0..count {
        let u = g.add_vertex(Z5::default())?;
        g.add_edge(u, v)?;
    }
    Ok(())
}
