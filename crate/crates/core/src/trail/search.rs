//! Shortest 1-offset trails by iterative deepening.
//!
//! The search state is the current singleton plus the set of used edges. Walk
//! distances in the domino graph (s -> t whenever a domino (s, B, t) exists)
//! ignore edge reuse, so they are admissible lower bounds on the remaining
//! number of dominoes and prune each depth-limited pass. The domino graph is
//! symmetric, so one breadth-first pass from the target serves every source.

use rustc_hash::FxHashMap;

use super::{TrailCertificate, TrailError};
use crate::domino::{DominoIndex, DominoRef};
use crate::hypergraph::{Hypergraph, Vertex};

const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrailSearch {
    Found(TrailCertificate),
    /// No trail with at most the bound's number of dominoes. `exhausted` is
    /// set when the search proved that no trail of any length exists.
    NotFound {
        exhausted: bool,
    },
}

/// Reusable trail search over one hypergraph; caches target distances.
pub struct TrailSearcher<'a> {
    h: &'a Hypergraph,
    index: DominoIndex,
    distances: FxHashMap<Vertex, Vec<usize>>,
}

impl<'a> TrailSearcher<'a> {
    pub fn new(h: &'a Hypergraph) -> Self {
        Self::with_index(h, DominoIndex::new(h))
    }

    pub fn with_index(h: &'a Hypergraph, index: DominoIndex) -> Self {
        Self {
            h,
            index,
            distances: FxHashMap::default(),
        }
    }

    pub fn hypergraph(&self) -> &'a Hypergraph {
        self.h
    }

    pub fn index(&self) -> &DominoIndex {
        &self.index
    }

    fn check(&self, u: Vertex, v: Vertex) -> Result<(), TrailError> {
        if u == v {
            return Err(TrailError::SameEndpoints(u));
        }
        for x in [u, v] {
            if x >= self.h.n() {
                return Err(TrailError::VertexOutOfRange {
                    vertex: x,
                    n: self.h.n(),
                });
            }
        }
        Ok(())
    }

    /// Domino-graph distances to `v`.
    pub fn distances_to(&mut self, v: Vertex) -> &[usize] {
        let index = &self.index;
        self.distances.entry(v).or_insert_with(|| {
            let mut dist = vec![UNREACHABLE; index.vertex_count()];
            dist[v] = 0;
            let mut queue = std::collections::VecDeque::from([v]);
            while let Some(x) = queue.pop_front() {
                for d in index.from(x) {
                    if dist[d.end] == UNREACHABLE {
                        dist[d.end] = dist[x] + 1;
                        queue.push_back(d.end);
                    }
                }
            }
            dist
        })
    }

    /// Some domino `(u, B, v)` or `(v, B, u)`.
    pub fn length2(&self, u: Vertex, v: Vertex) -> Result<Option<TrailCertificate>, TrailError> {
        self.check(u, v)?;
        Ok(self
            .index
            .from(u)
            .find(|d| d.end == v)
            .map(|d| TrailCertificate::new(vec![self.index.to_owned(d)])))
    }

    /// Shortest uv-trail with at most `max_dominoes` dominoes.
    pub fn find(
        &mut self,
        u: Vertex,
        v: Vertex,
        max_dominoes: usize,
    ) -> Result<TrailSearch, TrailError> {
        self.check(u, v)?;
        if max_dominoes == 0 {
            return Err(TrailError::ZeroBound);
        }
        self.distances_to(v);
        let dist = &self.distances[&v];
        let lower = dist[u];
        if lower == UNREACHABLE {
            return Ok(TrailSearch::NotFound { exhausted: true });
        }
        let mut dfs = Dfs {
            index: &self.index,
            dist,
            target: v,
            used: vec![false; self.h.edge_count()],
            path: Vec::new(),
            cutoff: false,
        };
        // edges are distinct, so no trail is longer than this
        let longest = self.h.edge_count() / 2;
        for limit in lower..=max_dominoes.min(longest) {
            dfs.cutoff = false;
            if dfs.go(u, limit) {
                let dominoes = dfs.path.iter().map(|&d| self.index.to_owned(d)).collect();
                return Ok(TrailSearch::Found(TrailCertificate::new(dominoes)));
            }
            if !dfs.cutoff {
                return Ok(TrailSearch::NotFound { exhausted: true });
            }
        }
        Ok(TrailSearch::NotFound {
            exhausted: max_dominoes >= longest,
        })
    }
}

struct Dfs<'s> {
    index: &'s DominoIndex,
    dist: &'s [usize],
    target: Vertex,
    used: Vec<bool>,
    path: Vec<DominoRef>,
    cutoff: bool,
}

impl Dfs<'_> {
    fn go(&mut self, at: Vertex, limit: usize) -> bool {
        let depth = self.path.len();
        for d in self.index.from(at) {
            if self.used[d.first_edge] || self.used[d.second_edge] {
                continue;
            }
            let rest = self.dist[d.end];
            if rest == UNREACHABLE {
                continue;
            }
            if depth + 1 + rest > limit {
                self.cutoff = true;
                continue;
            }
            self.path.push(d);
            if d.end == self.target {
                return true;
            }
            self.used[d.first_edge] = true;
            self.used[d.second_edge] = true;
            if self.go(d.end, limit) {
                return true;
            }
            self.used[d.first_edge] = false;
            self.used[d.second_edge] = false;
            self.path.pop();
        }
        false
    }
}

/// Shortest 1-offset uv-trail in `h` with at most `max_dominoes` dominoes.
pub fn find_trail(
    h: &Hypergraph,
    u: Vertex,
    v: Vertex,
    max_dominoes: usize,
) -> Result<TrailSearch, TrailError> {
    TrailSearcher::new(h).find(u, v, max_dominoes)
}

/// Whether `u` and `v` are joined by a trail of two edges.
pub fn has_length2_trail(h: &Hypergraph, u: Vertex, v: Vertex) -> Result<bool, TrailError> {
    if u == v {
        return Err(TrailError::SameEndpoints(u));
    }
    for x in [u, v] {
        if x >= h.n() {
            return Err(TrailError::VertexOutOfRange {
                vertex: x,
                n: h.n(),
            });
        }
    }
    // B ∪ {u} and B ∪ {v} both edges, with B avoiding u and v
    for &eid in h.incident(u) {
        let edge = h.edge(eid);
        if edge.contains(&v) {
            continue;
        }
        let mut other: Vec<Vertex> = edge.iter().copied().filter(|&x| x != u).collect();
        other.push(v);
        other.sort_unstable();
        if h.edge_id_sorted(&other).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::super::{tests::shared_block_trail, verify_trail, TrailMode};
    use super::*;
    use crate::domino::Domino;

    #[test]
    fn complete_gives_single_domino() {
        let h = Hypergraph::complete(5, 3).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u == v {
                    continue;
                }
                let TrailSearch::Found(t) = find_trail(&h, u, v, 5).unwrap() else {
                    panic!()
                };
                assert_eq!(t.len(), 1);
                assert_eq!(
                    verify_trail(&h, &t, u, v, TrailMode::Positional),
                    Ok(Ok(()))
                );
                assert!(has_length2_trail(&h, u, v).unwrap());
            }
        }
    }

    #[test]
    fn two_edges() {
        let h = Hypergraph::new(4, 3, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(
            find_trail(&h, 0, 3, 4).unwrap(),
            TrailSearch::Found(TrailCertificate::new(vec![Domino::new(0, vec![1, 2], 3)]))
        );
        for bound in 1..6 {
            assert_eq!(
                find_trail(&h, 0, 1, bound).unwrap(),
                TrailSearch::NotFound { exhausted: true }
            );
        }
    }

    #[test]
    fn shared_block_trail_needs_two_dominoes() {
        let (h, cert) = shared_block_trail();
        assert_eq!(
            find_trail(&h, 0, 6, 1).unwrap(),
            TrailSearch::NotFound { exhausted: false }
        );
        let TrailSearch::Found(t) = find_trail(&h, 0, 6, 3).unwrap() else {
            panic!()
        };
        assert_eq!(t, cert);
        assert!(!has_length2_trail(&h, 0, 6).unwrap());
    }

    #[test]
    fn unreachable_target_is_exhausted() {
        // blocks {1,2}: 0,3; {2,3}: 1,4; {3,4}: 2,5 -> domino graph 0-3, 1-4, 2-5
        let h = Hypergraph::new(
            6,
            3,
            &[vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]],
        )
        .unwrap();
        assert_eq!(
            find_trail(&h, 0, 5, 6).unwrap(),
            TrailSearch::NotFound { exhausted: true }
        );
        assert!(matches!(find_trail(&h, 1, 4, 6).unwrap(), TrailSearch::Found(t) if t.len() == 1));
    }

    #[test]
    fn edge_reuse_is_refused() {
        // the only block is {1,2}, joining 0 and 3; vertex 4 is isolated
        let h = Hypergraph::new(5, 3, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(
            find_trail(&h, 3, 0, 1).unwrap(),
            TrailSearch::Found(TrailCertificate::new(vec![Domino::new(3, vec![1, 2], 0)]))
        );
        let mut s = TrailSearcher::new(&h);
        assert_eq!(s.distances_to(3)[0], 1);
        assert!(matches!(
            s.find(0, 4, 5).unwrap(),
            TrailSearch::NotFound { exhausted: true }
        ));
    }

    #[test]
    fn errors() {
        let h = Hypergraph::complete(5, 3).unwrap();
        assert_eq!(find_trail(&h, 1, 1, 3), Err(TrailError::SameEndpoints(1)));
        assert_eq!(find_trail(&h, 1, 2, 0), Err(TrailError::ZeroBound));
        assert!(matches!(
            find_trail(&h, 1, 9, 2),
            Err(TrailError::VertexOutOfRange { .. })
        ));
        assert_eq!(
            has_length2_trail(&h, 2, 2),
            Err(TrailError::SameEndpoints(2))
        );
    }

    #[test]
    fn single_edge_has_no_short_trails() {
        let h = Hypergraph::new(5, 3, &[vec![0, 1, 2]]).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert!(!has_length2_trail(&h, u, v).unwrap());
                }
            }
        }
    }
}
