use serde::{Deserialize, Serialize};

use super::ClassId;
use crate::error::{Error, Result};
use crate::structures::{bit, FinStructure, Signature};

/// Default size cap for exhaustive simple-cycle enumeration.
pub const DEFAULT_CYCLE_CAP: usize = 10;

/// A simple cycle as a cyclic vertex sequence, normalized to start at its
/// least vertex and to run towards the smaller of that vertex's two cycle neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Normalizes any rotation or reflection of a cyclic sequence.
    pub fn from_sequence(seq: &[usize]) -> Cycle {
        let k = seq.len();
        let start = (0..k).min_by_key(|&i| seq[i]).unwrap_or(0);
        let fwd: Vec<usize> = (0..k).map(|i| seq[(start + i) % k]).collect();
        let bwd: Vec<usize> = (0..k).map(|i| seq[(start + k - i) % k]).collect();
        Cycle(if k < 3 || fwd[1] < bwd[1] { fwd } else { bwd })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cycle edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.0.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.0[i], self.0[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges().contains(&e)
    }

    /// Vertices of the cycle with degree above 2 in `g`.
    pub fn high_degree(&self, g: &FinStructure) -> Vec<usize> {
        self.0.iter().copied().filter(|&v| g.degree(v) > 2).collect()
    }
}

/// All simple cycles of a graph, each listed once up to rotation and reflection.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCatalog {
    pub cycles: Vec<Cycle>,
}

impl CycleCatalog {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

fn require_graph(g: &FinStructure) -> Result<()> {
    if g.sig().has_edges() {
        Ok(())
    } else {
        Err(Error::SignatureMismatch {
            expected: Signature::PlainGraph,
            found: g.sig(),
        })
    }
}

/// Exhaustive DFS enumeration of simple cycles, sorted.
///
/// A cycle is found from its least vertex `s`, exploring only vertices above
/// `s`, and kept in the one direction whose second vertex is smaller than its last.
pub fn cycle_catalog(g: &FinStructure, cap: usize) -> Result<CycleCatalog> {
    require_graph(g)?;
    if g.len() > cap {
        return Err(Error::CapExceeded {
            what: "cycle enumeration size",
            value: g.len(),
            cap,
        });
    }
    fn walk(g: &FinStructure, s: usize, path: &mut Vec<usize>, on_path: u64, out: &mut Vec<Cycle>) {
        let v = *path.last().expect("nonempty path");
        for w in g.neighbors(v) {
            if w == s {
                if path.len() >= 3 && path[1] < path[path.len() - 1] {
                    out.push(Cycle(path.clone()));
                }
            } else if w > s && on_path & bit(w) == 0 {
                path.push(w);
                walk(g, s, path, on_path | bit(w), out);
                path.pop();
            }
        }
    }
    let mut cycles = Vec::new();
    for s in g.vertices() {
        let mut path = vec![s];
        walk(g, s, &mut path, bit(s), &mut cycles);
    }
    cycles.sort();
    Ok(CycleCatalog { cycles })
}

pub(crate) struct Block {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Biconnected components (Tarjan), each with its edge list.
pub(crate) fn blocks(g: &FinStructure) -> Vec<Block> {
    struct State<'a> {
        g: &'a FinStructure,
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Block>,
    }
    fn dfs(st: &mut State, u: usize, parent: usize) {
        st.disc[u] = st.timer;
        st.low[u] = st.timer;
        st.timer += 1;
        for v in st.g.neighbors(u) {
            if st.disc[v] == usize::MAX {
                st.stack.push((u, v));
                dfs(st, v, u);
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    let mut edges = Vec::new();
                    let mut vertices = Vec::new();
                    while let Some((a, b)) = st.stack.pop() {
                        edges.push((a.min(b), a.max(b)));
                        vertices.extend([a, b]);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    vertices.sort_unstable();
                    vertices.dedup();
                    st.out.push(Block {
                        vertex_count: vertices.len(),
                        edges,
                    });
                }
            } else if v != parent && st.disc[v] < st.disc[u] {
                st.stack.push((u, v));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }
    let n = g.len();
    let mut st = State {
        g,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for s in 0..n {
        if st.disc[s] == usize::MAX {
            dfs(&mut st, s, usize::MAX);
        }
    }
    st.out
}

fn block_cycle(b: &Block) -> Cycle {
    let mut adj = std::collections::BTreeMap::<usize, Vec<usize>>::new();
    for &(u, v) in &b.edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let start = *adj.keys().next().expect("vertex");
    let mut seq = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        seq.push(cur);
        let next = adj[&cur].iter().copied().find(|&w| w != prev).expect("cycle");
        prev = cur;
        cur = next;
    }
    Cycle::from_sequence(&seq)
}

/// If no two cycles share an edge (every block is a single edge or a cycle),
/// the cycles of the graph, sorted; otherwise `None`.
pub fn cactus_cycles(g: &FinStructure) -> Option<Vec<Cycle>> {
    if !g.sig().has_edges() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    for b in blocks(g) {
        let k = b.vertex_count;
        match b.edges.len() {
            1 => {}
            e if e == k => out.push(block_cycle(&b)),
            _ => return None,
        }
    }
    out.sort();
    Some(out)
}

/// Edges lying on no cycle, as `(u, v)` with `u < v`, sorted.
pub fn bridges(g: &FinStructure) -> Vec<(usize, usize)> {
    if !g.sig().has_edges() {
        return Vec::new();
    }
    let mut out: Vec<(usize, usize)> = blocks(g)
        .into_iter()
        .filter(|b| b.edges.len() == 1)
        .map(|b| b.edges[0])
        .collect();
    out.sort_unstable();
    out
}

pub fn edge_on_cycle(g: &FinStructure, u: usize, v: usize) -> bool {
    g.has_edge(u, v) && !bridges(g).contains(&(u.min(v), u.max(v)))
}

/// Cycles with at most one vertex of degree above 2. Defined on members of a `ga` class.
pub fn free_cycles(class: &ClassId, g: &FinStructure) -> Result<Vec<Cycle>> {
    if !matches!(class, ClassId::Ga(_)) {
        return Err(Error::Precondition(format!("free cycles are defined for ga classes, not {class}")));
    }
    class.require_member(g)?;
    Ok(cactus_cycles(g)
        .expect("members are cacti")
        .into_iter()
        .filter(|c| c.high_degree(g).len() <= 1)
        .collect())
}
