//! A greedy chain of members approximating a generic limit.
//!
//! Each vertex added to `current` enqueues obligations: for every vertex set
//! `A` of at most `max_base` current vertices containing the new vertex, and
//! every one-point member extension type of the substructure on `A`, some
//! vertex outside `A` must extend `A` with that type. A step pops the oldest
//! obligation. If some vertex already realizes it nothing happens; otherwise
//! one new vertex is attached with exactly the prescribed relations to `A`.
//! For `k5`, `p`, `g` and the `ga` family, attaching with no other tuples is
//! the best choice, since members stay members when tuples are removed. For
//! `pzk` the new point is inserted into the order of `current` just above
//! its predecessor in `A`.
//!
//! For `k5` and `p`, steps that realize nothing instead determine the oldest
//! undetermined vertex with a one-vertex pendant. Realizations are admitted
//! only while `size + undetermined <= 2 (cap - reserve_horizon)` afterwards.
//! With at most one vertex added per step this keeps
//! `size + undetermined <= cap` at step `reserve_horizon`, which leaves room
//! to determine every vertex present at that step.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::amalgamation::extensions_over;
use crate::certificate::{Certificate, Clock, Evidence};
use crate::classes::{is_member, undetermined_vertices, ClassId};
use crate::error::{Error, Result};
use crate::par;
use crate::structures::{add_apex, canonical_labeling, CanonicalForm, FinStructure, Z5};

use super::order::order_of_member;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub steps: usize,
    pub size_cap: usize,
    pub seed: u64,
    /// Largest substructure an obligation is stated over.
    pub max_base: usize,
    /// `k5`/`p` only: vertices present at this step are guaranteed to end
    /// determined, given enough further steps.
    pub reserve_horizon: usize,
}

impl ChainConfig {
    pub fn new(steps: usize, size_cap: usize, seed: u64) -> Self {
        ChainConfig {
            steps,
            size_cap,
            seed,
            max_base: 2,
            reserve_horizon: 25,
        }
    }
}

/// Some vertex outside `base` must extend it with the type of `extension`,
/// whose first `base.len()` vertices correspond to `base` in order and whose
/// last vertex is the new one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obligation {
    pub base: Vec<usize>,
    pub extension: FinStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum Action {
    /// A new vertex realizes the obligation.
    Realized { obligation: Obligation, vertex: usize },
    AlreadyRealized { obligation: Obligation, by: usize },
    /// Not admitted by the size cap or the reserve rule.
    SkippedCap { obligation: Obligation },
    /// No vertex attached to `current` in the shape described above realizes
    /// it inside the class.
    Unrealizable { obligation: Obligation },
    /// A pendant `vertex` now determines `target`.
    Determined { target: usize, vertex: usize },
    Idle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub step: usize,
    pub actions: Vec<Action>,
    /// Size of `current` after the step.
    pub size: usize,
}

/// A chain under construction. Vertices are only ever appended, so the
/// structure after step `t` is the prefix of `current` of size `sizes[t]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainState {
    pub class: ClassId,
    pub config: ChainConfig,
    pub current: FinStructure,
    pub task_queue: VecDeque<Obligation>,
    pub log: Vec<LogEntry>,
    /// `sizes[t]` is the size after `t` steps; `sizes[0] = 0`.
    pub sizes: Vec<usize>,
    #[serde(skip)]
    rng: Option<ChaCha8Rng>,
    #[serde(skip)]
    seen: BTreeSet<(Vec<usize>, CanonicalForm)>,
}

/// Runs [`ChainState::step`] `steps` times from the empty member.
pub fn generic_chain(c: &ClassId, steps: usize, size_cap: usize, seed: u64) -> Result<ChainState> {
    generic_chain_with(c, ChainConfig::new(steps, size_cap, seed))
}

pub fn generic_chain_with(c: &ClassId, config: ChainConfig) -> Result<ChainState> {
    let mut st = ChainState::new(c, config)?;
    for _ in 0..st.config.steps {
        st.step()?;
    }
    Ok(st)
}

fn determinacy_class(c: &ClassId) -> bool {
    matches!(c, ClassId::K5 | ClassId::P)
}

impl ChainState {
    pub fn new(c: &ClassId, config: ChainConfig) -> Result<Self> {
        let cap = c.signature().max_vertices();
        if config.size_cap > cap {
            return Err(Error::CapExceeded {
                what: "chain size cap",
                value: config.size_cap,
                cap,
            });
        }
        let mut st = ChainState {
            class: c.clone(),
            current: FinStructure::empty(c.signature()),
            task_queue: VecDeque::new(),
            log: Vec::new(),
            sizes: vec![0],
            rng: Some(ChaCha8Rng::seed_from_u64(config.seed)),
            seen: BTreeSet::new(),
            config,
        };
        st.enqueue_for(None)?;
        Ok(st)
    }

    /// The structure after `t` steps.
    pub fn snapshot(&self, t: usize) -> Result<FinStructure> {
        let size = *self.sizes.get(t).ok_or(Error::Precondition(format!(
            "step {t} not reached ({} steps run)",
            self.sizes.len() - 1
        )))?;
        let prefix: Vec<usize> = (0..size).collect();
        self.current.restrict_to(&prefix)
    }

    pub fn steps_run(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn step(&mut self) -> Result<()> {
        let step = self.steps_run();
        let mut actions = Vec::new();
        let mut grew = false;
        if let Some(ob) = self.task_queue.pop_front() {
            if let Some(by) = self.realized_by(&ob)? {
                actions.push(Action::AlreadyRealized { obligation: ob, by });
            } else {
                match self.realize(&ob)? {
                    None => actions.push(Action::Unrealizable { obligation: ob }),
                    Some(next) if !self.admits(&next)? => actions.push(Action::SkippedCap { obligation: ob }),
                    Some(next) => {
                        let vertex = self.current.len();
                        self.current = next;
                        grew = true;
                        actions.push(Action::Realized { obligation: ob, vertex });
                    }
                }
            }
        }
        if !grew && determinacy_class(&self.class) && self.current.len() < self.config.size_cap {
            if let Some((target, next)) = self.determine_oldest()? {
                let vertex = self.current.len();
                self.current = next;
                grew = true;
                actions.push(Action::Determined { target, vertex });
            }
        }
        if actions.is_empty() {
            actions.push(Action::Idle);
        }
        if grew {
            debug_assert!(is_member(&self.class, &self.current)?);
            self.enqueue_for(Some(self.current.len() - 1))?;
        }
        self.sizes.push(self.current.len());
        self.log.push(LogEntry {
            step,
            actions,
            size: self.current.len(),
        });
        Ok(())
    }

    fn admits(&self, next: &FinStructure) -> Result<bool> {
        let cap = self.config.size_cap;
        if next.len() > cap {
            return Ok(false);
        }
        if !determinacy_class(&self.class) {
            return Ok(true);
        }
        let limit = 2 * cap.saturating_sub(self.config.reserve_horizon);
        Ok(next.len() + undetermined_vertices(&self.class, next)?.len() <= limit)
    }

    /// Enqueues the obligations over every base containing `v` (or the empty
    /// base when `v` is `None`), shuffled by the seed within the batch.
    fn enqueue_for(&mut self, v: Option<usize>) -> Result<()> {
        let bases: Vec<Vec<usize>> = match v {
            None => vec![Vec::new()],
            Some(v) => {
                let mut out = vec![vec![v]];
                let mut frontier = vec![vec![v]];
                for _ in 1..self.config.max_base {
                    let mut next = Vec::new();
                    for b in &frontier {
                        let lo = b.iter().filter(|&&u| u != v).max().map_or(0, |&u| u + 1);
                        for u in lo..v {
                            let mut nb = b.clone();
                            nb.push(u);
                            nb.sort_unstable();
                            next.push(nb);
                        }
                    }
                    out.extend(next.iter().cloned());
                    frontier = next;
                }
                out
            }
        };
        let current = &self.current;
        let class = &self.class;
        let batches: Vec<Result<Vec<(Vec<usize>, CanonicalForm, FinStructure)>>> = par::map(&bases, |base| {
            let sub = current.restrict_to(base)?;
            let exts = extensions_over(class, &sub, 1)?;
            Ok(exts
                .into_iter()
                .skip(1)
                .map(|e| {
                    let (form, _) = canonical_labeling(&e, base.len());
                    (base.clone(), form, e)
                })
                .collect())
        });
        let mut fresh = Vec::new();
        for batch in batches {
            for (base, form, extension) in batch? {
                if self.seen.insert((base.clone(), form)) {
                    fresh.push(Obligation { base, extension });
                }
            }
        }
        if let Some(rng) = self.rng.as_mut() {
            fresh.shuffle(rng);
        }
        self.task_queue.extend(fresh);
        Ok(())
    }

    fn realized_by(&self, ob: &Obligation) -> Result<Option<usize>> {
        let mut vs = ob.base.clone();
        vs.push(0);
        for w in self.current.vertices().filter(|w| !ob.base.contains(w)) {
            *vs.last_mut().expect("nonempty") = w;
            if self.current.restrict_to(&vs)? == ob.extension {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// `current` plus one vertex realizing `ob`, if the result is a member.
    fn realize(&self, ob: &Obligation) -> Result<Option<FinStructure>> {
        let ext = &ob.extension;
        let k = ob.base.len();
        let mut map = ob.base.clone();
        let next = if matches!(self.class, ClassId::Pzk) {
            let Some((next, w)) = self.insert_point(ob)? else {
                return Ok(None);
            };
            map.push(w);
            next
        } else {
            let mut next = self.current.clone();
            let w = next.add_vertex(ext.label(k))?;
            map.push(w);
            next.copy_tuples_from(ext, &map);
            next
        };
        let ok = is_member(&self.class, &next)? && next.restrict_to(&map)? == *ext;
        Ok(ok.then_some(next))
    }

    /// Inserts a point into the order of `current` at a position matching
    /// the extension type, returning the new structure (still indexed in
    /// creation order) and the new vertex.
    fn insert_point(&self, ob: &Obligation) -> Result<Option<(FinStructure, usize)>> {
        let order = order_of_member(&self.current)?;
        let mut rank = vec![0usize; self.current.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let k = ob.base.len();
        // rank of the new point among the base, read off the extension
        let below = if k + 1 >= 3 {
            let ext_order = order_of_member(&ob.extension)?;
            ext_order.iter().position(|&v| v == k).expect("new vertex listed")
        } else {
            k
        };
        let mut base_by_rank = ob.base.clone();
        base_by_rank.sort_by_key(|&v| rank[v]);
        let pos = if below == 0 {
            0
        } else {
            rank[base_by_rank[below - 1]] + 1
        };
        let mut next = self.current.clone();
        let w = next.add_vertex(Z5::default())?;
        let mut new_rank = rank.iter().map(|&r| if r >= pos { r + 1 } else { r }).collect::<Vec<_>>();
        new_rank.push(pos);
        for x in self.current.vertices() {
            for y in (x + 1)..self.current.len() {
                let set = [x, y, w];
                let apex = (0..3).min_by_key(|&i| new_rank[set[i]]).expect("three");
                add_apex(&mut next, set, apex)?;
            }
        }
        Ok(Some((next, w)))
    }

    /// A pendant determining the oldest undetermined vertex.
    fn determine_oldest(&self) -> Result<Option<(usize, FinStructure)>> {
        let Some(&target) = undetermined_vertices(&self.class, &self.current)?.first() else {
            return Ok(None);
        };
        let candidates: Vec<FinStructure> = match self.class {
            ClassId::K5 => {
                let l = self.current.label(target).value() as i64;
                [1, 2]
                    .into_iter()
                    .map(|d| {
                        let mut next = self.current.clone();
                        let w = next.add_vertex(Z5::new(l + d))?;
                        next.add_edge(target, w)?;
                        Ok(next)
                    })
                    .collect::<Result<_>>()?
            }
            _ => {
                let mut next = self.current.clone();
                let w = next.add_vertex(Z5::default())?;
                next.add_s(w, target)?;
                vec![next]
            }
        };
        for next in candidates {
            if is_member(&self.class, &next)? {
                return Ok(Some((target, next)));
            }
        }
        Ok(None)
    }

    /// Vertices present after step `t` that are undetermined in `current`.
    pub fn undetermined_from_step(&self, t: usize) -> Result<Vec<usize>> {
        let size = *self
            .sizes
            .get(t)
            .ok_or(Error::Precondition(format!("step {t} not reached")))?;
        Ok(undetermined_vertices(&self.class, &self.current)?
            .into_iter()
            .filter(|&v| v < size)
            .collect())
    }

    /// Every step's structure is a member.
    pub fn soundness_check(&self) -> Result<Certificate> {
        let clock = Clock::start();
        let claim = format!("every {} chain state is a member", self.class);
        let steps: Vec<usize> = (0..self.sizes.len()).collect();
        let bad = par::find_map_first(&steps, |&t| match self.snapshot(t) {
            Ok(g) if is_member(&self.class, &g).unwrap_or(false) => None,
            Ok(g) => Some(Ok(g)),
            Err(e) => Some(Err(e)),
        });
        match bad {
            Some(g) => Ok(Certificate::fail(claim, Evidence::Structure { structure: g? })),
            None => Ok(Certificate::pass(claim)),
        }
        .map(|c| c.with_stats(steps.len() as u64, self.current.len(), &clock))
    }
}

/// Every induced substructure of `g` on at most `k` vertices is a member.
pub fn age_spot_check(c: &ClassId, g: &FinStructure, k: usize) -> Result<Certificate> {
    let clock = Clock::start();
    let claim = format!("induced substructures of size <= {k} are members of {c}");
    let n = g.len();
    let bad = par::find_map_first_index(n + 1, |first| {
        // subsets whose least element is `first`; `first == n` is the empty set
        let mut stack: Vec<Vec<usize>> = vec![if first == n { Vec::new() } else { vec![first] }];
        while let Some(s) = stack.pop() {
            match g.restrict_to(&s) {
                Ok(sub) if is_member(c, &sub).unwrap_or(false) => {}
                _ => return Some(s),
            }
            if s.len() < k && first < n {
                let lo = s.last().map_or(first + 1, |&x| x + 1);
                for v in lo..n {
                    let mut t = s.clone();
                    t.push(v);
                    stack.push(t);
                }
            }
        }
        None
    });
    let checked: u64 = (0..=k.min(n)).map(|i| binomial(n, i)).sum();
    Ok(match bad {
        Some(subset) => Certificate::fail(
            claim,
            Evidence::Substructure {
                structure: g.clone(),
                subset,
            },
        ),
        None => Certificate::pass(claim),
    }
    .with_stats(checked, k.min(n), &clock))
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
