//! Backtracking search for ℓ-offset Hamilton cycles.
//!
//! Vertex 0 is anchored in the first group, which may have either size. The
//! first two groups come from splitting an edge through vertex 0; each further
//! group is the remainder of an edge that contains the previous group and
//! otherwise only unused vertices. Reflections are removed by requiring
//! `min(G_1) < min(G_{m-1})`, so every cycle is reached exactly once.

use std::ops::ControlFlow;

use super::{check_cycle_params, OffsetCycleCertificate, OffsetError};
use crate::combinatorics::Combinations;
use crate::hypergraph::{Hypergraph, Vertex};

/// Upper bound on search nodes (group placements).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    nodes: u64,
}

impl SearchBudget {
    pub fn new(nodes: u64) -> Result<Self, OffsetError> {
        if nodes == 0 {
            return Err(OffsetError::EmptyBudget);
        }
        Ok(Self { nodes })
    }

    pub fn unlimited() -> Self {
        Self { nodes: u64::MAX }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(OffsetCycleCertificate),
    /// The whole search space was exhausted without a cycle.
    NoCycle,
    BudgetExceeded,
}

struct Search<'a> {
    h: &'a Hypergraph,
    m: usize,
    used: Vec<bool>,
    groups: Vec<Vec<Vertex>>,
    nodes: u64,
    budget: u64,
}

enum Stop {
    Budget,
    Visitor,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> ControlFlow<Stop> {
        self.nodes += 1;
        if self.nodes > self.budget {
            ControlFlow::Break(Stop::Budget)
        } else {
            ControlFlow::Continue(())
        }
    }

    fn run<F>(&mut self, l: usize, visit: &mut F) -> ControlFlow<Stop>
    where
        F: FnMut(&OffsetCycleCertificate) -> ControlFlow<()>,
    {
        let k = self.h.k();
        let first_sizes: &[usize] = if 2 * l == k { &[l] } else { &[l, k - l] };
        for &first in first_sizes {
            for &eid in self.h.incident(0) {
                let edge = self.h.edge(eid).to_vec();
                let others: Vec<Vertex> = edge.iter().copied().filter(|&v| v != 0).collect();
                for pick in Combinations::new(k - 1, first - 1) {
                    let mut g0 = vec![0];
                    g0.extend(pick.iter().map(|&i| others[i]));
                    let g1: Vec<Vertex> =
                        edge.iter().copied().filter(|v| !g0.contains(v)).collect();
                    self.tick()?;
                    self.place(&g0);
                    self.place(&g1);
                    let r = self.extend(visit);
                    self.unplace();
                    self.unplace();
                    r?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn place(&mut self, g: &[Vertex]) {
        for &v in g {
            self.used[v] = true;
        }
        self.groups.push(g.to_vec());
    }

    fn unplace(&mut self) {
        if let Some(g) = self.groups.pop() {
            for v in g {
                self.used[v] = false;
            }
        }
    }

    fn extend<F>(&mut self, visit: &mut F) -> ControlFlow<Stop>
    where
        F: FnMut(&OffsetCycleCertificate) -> ControlFlow<()>,
    {
        let depth = self.groups.len();
        let last = self.groups[depth - 1].clone();
        let closing = depth + 1 == self.m;
        let pivot = *last
            .iter()
            .min_by_key(|&&v| self.h.degree(v))
            .expect("groups are nonempty");
        let mut next = Vec::with_capacity(self.h.k());
        for &eid in self.h.incident(pivot) {
            let edge = self.h.edge(eid);
            next.clear();
            let mut ok = true;
            let mut shared = 0;
            for &v in edge {
                if last.contains(&v) {
                    shared += 1;
                } else if self.used[v] {
                    ok = false;
                    break;
                } else {
                    next.push(v);
                }
            }
            if !ok || shared != last.len() {
                continue;
            }
            if closing {
                if next[0] <= self.groups[1][0] {
                    continue;
                }
                let mut back: Vec<Vertex> = next.iter().chain(&self.groups[0]).copied().collect();
                back.sort_unstable();
                if self.h.edge_id_sorted(&back).is_none() {
                    continue;
                }
            }
            self.tick()?;
            let g = next.clone();
            self.place(&g);
            let r = if closing {
                let cert = OffsetCycleCertificate::new(self.groups.clone());
                match visit(&cert) {
                    ControlFlow::Continue(()) => ControlFlow::Continue(()),
                    ControlFlow::Break(()) => ControlFlow::Break(Stop::Visitor),
                }
            } else {
                self.extend(visit)
            };
            self.unplace();
            r?;
        }
        ControlFlow::Continue(())
    }
}

/// Runs the search, calling `visit` on every cycle found until it breaks.
/// Returns `Ok(false)` if the node budget ran out first.
pub fn enumerate_offset_cycles<F>(
    h: &Hypergraph,
    l: usize,
    budget: SearchBudget,
    mut visit: F,
) -> Result<bool, OffsetError>
where
    F: FnMut(&OffsetCycleCertificate) -> ControlFlow<()>,
{
    check_cycle_params(h.n(), h.k(), l)?;
    // every vertex lies in two cycle edges
    if (0..h.n()).any(|v| h.degree(v) < 2) {
        return Ok(true);
    }
    let mut search = Search {
        h,
        m: 2 * h.n() / h.k(),
        used: vec![false; h.n()],
        groups: Vec::new(),
        nodes: 0,
        budget: budget.nodes(),
    };
    match search.run(l, &mut visit) {
        ControlFlow::Break(Stop::Budget) => Ok(false),
        _ => Ok(true),
    }
}

/// First ℓ-offset Hamilton cycle of `h`, a proof that none exists, or
/// [`SearchOutcome::BudgetExceeded`].
pub fn find_offset_cycle(
    h: &Hypergraph,
    l: usize,
    budget: SearchBudget,
) -> Result<SearchOutcome, OffsetError> {
    let mut found = None;
    let complete = enumerate_offset_cycles(h, l, budget, |c| {
        found = Some(c.clone());
        ControlFlow::Break(())
    })?;
    Ok(match (found, complete) {
        (Some(c), _) => SearchOutcome::Found(c),
        (None, true) => SearchOutcome::NoCycle,
        (None, false) => SearchOutcome::BudgetExceeded,
    })
}
