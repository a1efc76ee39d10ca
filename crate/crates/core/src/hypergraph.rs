//! k-uniform hypergraphs on vertices `0..n`.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::combinatorics::{BinomialTable, Combinations};
use crate::rng::SplitMix64;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 3, got {0}")]
    UniformityTooSmall(usize),
    #[error("need at least k = {k} vertices, got n = {n}")]
    TooFewVertices { n: usize, k: usize },
    #[error("C({n}, {k}) does not fit in 64 bits")]
    TooLarge { n: usize, k: usize },
    #[error("edge {index}: expected {expected} vertices, found {found}")]
    WrongEdgeSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {index}: vertex {vertex} out of range 0..{n}")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },
    #[error("edge {index}: vertex {vertex} repeated")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("edge {index} duplicates edge {first}")]
    DuplicateEdge { index: usize, first: usize },
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An immutable k-uniform hypergraph.
///
/// Edges are kept as sorted vertex lists in lexicographic order; an edge id is
/// the position in that order. Membership goes through a hash of the edge's
/// colex rank, so [`contains`](Self::contains) is O(k).
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    verts: Vec<Vertex>,
    index: FxHashMap<u64, usize>,
    incidence: Vec<Vec<usize>>,
    binom: BinomialTable,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.verts == other.verts
    }
}

impl Eq for Hypergraph {}

fn check_shape(n: usize, k: usize) -> Result<BinomialTable, HypergraphError> {
    if k < 3 {
        return Err(HypergraphError::UniformityTooSmall(k));
    }
    if n < k {
        return Err(HypergraphError::TooFewVertices { n, k });
    }
    BinomialTable::new(n, k).ok_or(HypergraphError::TooLarge { n, k })
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary vertex lists.
    ///
    /// Each list is sorted; a list that canonicalizes to an earlier one is a
    /// [`HypergraphError::DuplicateEdge`], never merged.
    pub fn new(n: usize, k: usize, edges: &[Vec<Vertex>]) -> Result<Self, HypergraphError> {
        let binom = check_shape(n, k)?;
        let mut keyed: Vec<(Vec<Vertex>, usize)> = Vec::with_capacity(edges.len());
        for (index, edge) in edges.iter().enumerate() {
            if edge.len() != k {
                return Err(HypergraphError::WrongEdgeSize {
                    index,
                    expected: k,
                    found: edge.len(),
                });
            }
            let mut sorted = edge.clone();
            sorted.sort_unstable();
            for (i, &v) in sorted.iter().enumerate() {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange {
                        index,
                        vertex: v,
                        n,
                    });
                }
                if i > 0 && sorted[i - 1] == v {
                    return Err(HypergraphError::RepeatedVertex { index, vertex: v });
                }
            }
            keyed.push((sorted, index));
        }
        keyed.sort();
        for pair in keyed.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(HypergraphError::DuplicateEdge {
                    index: pair[1].1.max(pair[0].1),
                    first: pair[1].1.min(pair[0].1),
                });
            }
        }
        let verts = keyed.into_iter().flat_map(|(e, _)| e).collect();
        Ok(Self::assemble(n, k, verts, binom))
    }

    /// Every k-subset of `0..n`.
    pub fn complete(n: usize, k: usize) -> Result<Self, HypergraphError> {
        let binom = check_shape(n, k)?;
        let verts = Combinations::new(n, k).flatten().collect();
        Ok(Self::assemble(n, k, verts, binom))
    }

    /// The random hypergraph H(n, p, k): each of the `C(n, k)` edges is kept
    /// independently with probability `p`.
    ///
    /// Kept ranks are visited by geometric skipping. Starting from rank `-1`,
    /// the next kept rank is `floor(ln U / ln(1 - p)) + 1` further on, with `U`
    /// drawn by [`SplitMix64::next_open01`] from a generator seeded with
    /// `seed`; each rank is decoded through the combinatorial number system.
    /// `p = 1` uses skip length 1 and consumes no randomness.
    pub fn sample(n: usize, k: usize, p: f64, seed: u64) -> Result<Self, HypergraphError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(HypergraphError::InvalidProbability(p));
        }
        let binom = check_shape(n, k)?;
        let total = binom.total();
        let mut verts = Vec::new();
        if p > 0.0 {
            let mut rng = SplitMix64::new(seed);
            let log_q = (-p).ln_1p();
            let mut rank: u64 = 0;
            let mut first = true;
            let mut buf = vec![0; k];
            loop {
                let skip = if p >= 1.0 {
                    1
                } else {
                    let s = (rng.next_open01().ln() / log_q).floor();
                    if s >= total as f64 {
                        break;
                    }
                    s as u64 + 1
                };
                let next = if first {
                    skip - 1
                } else {
                    rank.saturating_add(skip)
                };
                first = false;
                if next >= total {
                    break;
                }
                rank = next;
                binom.unrank(rank, &mut buf);
                verts.extend_from_slice(&buf);
            }
        }
        Ok(Self::from_unsorted_unique(n, k, verts, binom))
    }

    fn from_unsorted_unique(n: usize, k: usize, verts: Vec<Vertex>, binom: BinomialTable) -> Self {
        let mut edges: Vec<&[Vertex]> = verts.chunks_exact(k).collect();
        edges.sort_unstable();
        let sorted = edges.concat();
        Self::assemble(n, k, sorted, binom)
    }

    fn assemble(n: usize, k: usize, verts: Vec<Vertex>, binom: BinomialTable) -> Self {
        let m = verts.len() / k;
        let mut index = FxHashMap::with_capacity_and_hasher(m, Default::default());
        let mut incidence = vec![Vec::new(); n];
        for (id, edge) in verts.chunks_exact(k).enumerate() {
            index.insert(binom.rank(edge), id);
            for &v in edge {
                incidence[v].push(id);
            }
        }
        Self {
            n,
            k,
            verts,
            index,
            incidence,
            binom,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.verts.len() / self.k
    }

    /// Sorted vertices of edge `id`.
    #[inline]
    pub fn edge(&self, id: usize) -> &[Vertex] {
        &self.verts[id * self.k..(id + 1) * self.k]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.verts.chunks_exact(self.k)
    }

    /// Ids of the edges containing `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    /// Id of the edge with exactly these (sorted, distinct, in-range) vertices.
    #[inline]
    pub fn edge_id_sorted(&self, sorted: &[Vertex]) -> Option<usize> {
        if sorted.len() != self.k || sorted.iter().any(|&v| v >= self.n) {
            return None;
        }
        self.index.get(&self.binom.rank(sorted)).copied()
    }

    /// Id of the edge formed by `vertices` in any order.
    pub fn edge_id(&self, vertices: &[Vertex]) -> Option<usize> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        self.edge_id_sorted(&sorted)
    }

    pub fn contains(&self, vertices: &[Vertex]) -> bool {
        self.edge_id(vertices).is_some()
    }

    /// Canonical text form: `n k` header, then one sorted edge per line in
    /// lexicographic order, LF terminated.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the text form. Blank lines and lines starting with `#` are
    /// skipped; errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self, HypergraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(HypergraphError::Parse {
            line: 1,
            message: "missing \"n k\" header".into(),
        })?;
        let fields = parse_numbers(header, hline)?;
        let [n, k] = fields[..] else {
            return Err(HypergraphError::Parse {
                line: hline,
                message: format!("header must be \"n k\", found {} fields", fields.len()),
            });
        };
        check_shape(n, k).map_err(|e| HypergraphError::Parse {
            line: hline,
            message: e.to_string(),
        })?;
        let mut edges = Vec::new();
        let mut line_of = Vec::new();
        for (line, body) in lines {
            let edge = parse_numbers(body, line)?;
            if edge.len() != k {
                return Err(HypergraphError::Parse {
                    line,
                    message: format!("expected {k} vertices, found {}", edge.len()),
                });
            }
            edges.push(edge);
            line_of.push(line);
        }
        Self::new(n, k, &edges).map_err(|e| {
            let index = match e {
                HypergraphError::WrongEdgeSize { index, .. }
                | HypergraphError::VertexOutOfRange { index, .. }
                | HypergraphError::RepeatedVertex { index, .. }
                | HypergraphError::DuplicateEdge { index, .. } => index,
                other => return other,
            };
            HypergraphError::Parse {
                line: line_of[index],
                message: e.to_string(),
            }
        })
    }
}

fn parse_numbers(body: &str, line: usize) -> Result<Vec<usize>, HypergraphError> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| HypergraphError::Parse {
                line,
                message: format!("not a vertex id: {tok:?}"),
            })
        })
        .collect()
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.k)?;
        for edge in self.edges() {
            write_vertices(f, edge)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Hypergraph {
    type Err = HypergraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

pub(crate) fn write_vertices(f: &mut impl fmt::Write, vs: &[Vertex]) -> fmt::Result {
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_small() {
        let h = Hypergraph::new(4, 3, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.contains(&[2, 1, 0]));
        assert!(!h.contains(&[1, 2, 3]));
    }

    #[test]
    fn duplicate_after_canonicalization() {
        let err = Hypergraph::new(4, 3, &[vec![0, 1, 2], vec![2, 1, 0]]).unwrap_err();
        assert_eq!(err, HypergraphError::DuplicateEdge { index: 1, first: 0 });
    }

    #[test]
    fn out_of_range_vertex() {
        let err = Hypergraph::new(4, 3, &[vec![0, 1, 4]]).unwrap_err();
        assert!(matches!(
            err,
            HypergraphError::VertexOutOfRange { vertex: 4, .. }
        ));
    }

    #[test]
    fn wrong_size_and_repeats() {
        assert!(matches!(
            Hypergraph::new(4, 3, &[vec![0, 1]]),
            Err(HypergraphError::WrongEdgeSize { index: 0, .. })
        ));
        assert!(matches!(
            Hypergraph::new(4, 3, &[vec![0, 1, 1]]),
            Err(HypergraphError::RepeatedVertex { vertex: 1, .. })
        ));
        assert!(matches!(
            Hypergraph::new(4, 2, &[]),
            Err(HypergraphError::UniformityTooSmall(2))
        ));
        assert!(matches!(
            Hypergraph::new(2, 3, &[]),
            Err(HypergraphError::TooFewVertices { .. })
        ));
    }

    #[test]
    fn complete_counts() {
        assert_eq!(Hypergraph::complete(6, 3).unwrap().edge_count(), 20);
        assert_eq!(Hypergraph::complete(5, 5).unwrap().edge_count(), 1);
        assert_eq!(Hypergraph::complete(15, 5).unwrap().edge_count(), 3003);
    }

    #[test]
    fn sample_extremes() {
        assert_eq!(Hypergraph::sample(10, 3, 0.0, 5).unwrap().edge_count(), 0);
        assert_eq!(Hypergraph::sample(10, 3, 1.0, 5).unwrap().edge_count(), 120);
        assert!(matches!(
            Hypergraph::sample(10, 3, 1.5, 5),
            Err(HypergraphError::InvalidProbability(_))
        ));
        assert!(Hypergraph::sample(10, 3, f64::NAN, 5).is_err());
    }

    #[test]
    fn sample_one_is_complete() {
        for seed in [0, 1, 99] {
            assert_eq!(
                Hypergraph::sample(9, 4, 1.0, seed).unwrap(),
                Hypergraph::complete(9, 4).unwrap()
            );
        }
    }

    #[test]
    fn sample_is_deterministic() {
        let a = Hypergraph::sample(20, 3, 0.3, 42).unwrap();
        let b = Hypergraph::sample(20, 3, 0.3, 42).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_ne!(a, Hypergraph::sample(20, 3, 0.3, 43).unwrap());
    }

    #[test]
    fn sample_mean_edge_count() {
        // Binomial(1140, 0.5): mean 570, sd sqrt(285); mean of 100 draws has sd sqrt(2.85).
        let total: usize = (0..100)
            .map(|s| Hypergraph::sample(20, 3, 0.5, s).unwrap().edge_count())
            .sum();
        let mean = total as f64 / 100.0;
        assert!((mean - 570.0).abs() < 4.0 * (1140.0f64 * 0.25).sqrt());
        assert!((mean - 570.0).abs() < 4.0 * (2.85f64).sqrt());
    }

    #[test]
    fn parse_and_serialize() {
        let h = Hypergraph::parse("4 3\n0 1 2\n0 1 3\n").unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.to_text(), "4 3\n0 1 2\n0 1 3\n");
        let messy = Hypergraph::parse("# comment\n4 3\n\n3 1 0\n# x\n2 1 0\n").unwrap();
        assert_eq!(messy, h);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(
            Hypergraph::parse("4 3\n0 1\n").unwrap_err(),
            HypergraphError::Parse {
                line: 2,
                message: "expected 3 vertices, found 2".into()
            }
        );
        assert!(matches!(
            Hypergraph::parse("4\n"),
            Err(HypergraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Hypergraph::parse("4 3\n0 1 2\n# c\n0 x 2\n"),
            Err(HypergraphError::Parse { line: 4, .. })
        ));
        assert!(matches!(
            Hypergraph::parse("4 3\n0 1 2\n2 0 1\n"),
            Err(HypergraphError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            Hypergraph::parse(""),
            Err(HypergraphError::Parse { .. })
        ));
    }
}
