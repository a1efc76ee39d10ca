//! ℓ-offset Hamilton cycles.
//!
//! A cycle is stored as its cyclic sequence of vertex groups `G_0, ..., G_{m-1}`
//! with `m = 2n/k`, sizes alternating between ℓ and k-ℓ, and edges
//! `G_i ∪ G_{i+1}` (indices mod m). Consecutive edges then meet in alternately
//! ℓ and k-ℓ vertices, and the even- and odd-indexed edges form two perfect
//! matchings.

mod count;
mod search;
mod threshold;

use std::fmt;

use thiserror::Error;

pub use count::{
    brute_force_cycle_count, expected_cycle_count_exact, gamma_count, ln_expected_cycle_count,
    BRUTE_FORCE_LIMIT,
};
pub use num_rational::BigRational;
pub use search::{enumerate_offset_cycles, find_offset_cycle, SearchBudget, SearchOutcome};
pub use threshold::{offset_threshold, Threshold, ThresholdMode, Validity};

use crate::hypergraph::{write_vertices, Hypergraph, HypergraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OffsetError {
    #[error("uniformity k = {0} must be at least 3")]
    UniformityTooSmall(usize),
    #[error("k = {k} does not divide n = {n}")]
    NotDivisible { n: usize, k: usize },
    #[error("ℓ = {l} outside 1..={max}")]
    OverlapOutOfRange { l: usize, max: usize },
    #[error("n = {n} < 2k = {}: fewer than four groups", 2 * k)]
    Degenerate { n: usize, k: usize },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("mode {mode} needs ℓ = 1, got ℓ = {l}")]
    ModeNeedsUnitOverlap { mode: ThresholdMode, l: usize },
    #[error("brute force over {n}! * {k} configurations exceeds the limit of {limit}")]
    TooLargeForBruteForce { n: usize, k: usize, limit: u64 },
    #[error("budget must be positive")]
    EmptyBudget,
}

/// Checks `k >= 3` and `1 <= l <= k/2`.
pub(crate) fn check_overlap(k: usize, l: usize) -> Result<(), OffsetError> {
    if k < 3 {
        return Err(OffsetError::UniformityTooSmall(k));
    }
    if l == 0 || 2 * l > k {
        return Err(OffsetError::OverlapOutOfRange { l, max: k / 2 });
    }
    Ok(())
}

/// Full parameter check for cycles on `n` vertices.
pub(crate) fn check_cycle_params(n: usize, k: usize, l: usize) -> Result<(), OffsetError> {
    check_overlap(k, l)?;
    if !n.is_multiple_of(k) {
        return Err(OffsetError::NotDivisible { n, k });
    }
    if n < 2 * k {
        return Err(OffsetError::Degenerate { n, k });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OffsetCycleCertificate {
    pub groups: Vec<Vec<Vertex>>,
}

impl OffsetCycleCertificate {
    pub fn new(groups: Vec<Vec<Vertex>>) -> Self {
        Self { groups }
    }

    /// The cycle's edges `G_i ∪ G_{i+1}` in order, each sorted.
    pub fn edges(&self) -> Vec<Vec<Vertex>> {
        let m = self.groups.len();
        (0..m)
            .map(|i| {
                let mut e: Vec<Vertex> = self.groups[i]
                    .iter()
                    .chain(&self.groups[(i + 1) % m])
                    .copied()
                    .collect();
                e.sort_unstable();
                e
            })
            .collect()
    }

    /// Sorted list of sorted edges; equal for certificates describing the same
    /// edge set.
    pub fn canonical_edge_set(&self) -> Vec<Vec<Vertex>> {
        let mut edges = self.edges();
        edges.sort();
        edges
    }

    /// Applies a vertex relabelling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Self {
        Self {
            groups: self
                .groups
                .iter()
                .map(|g| g.iter().map(|&v| perm[v]).collect())
                .collect(),
        }
    }

    /// Text form: one group per line, starting with the group holding vertex 0.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let start = self.groups.iter().position(|g| g.contains(&0)).unwrap_or(0);
        let m = self.groups.len();
        for i in 0..m {
            let mut g = self.groups[(start + i) % m].clone();
            g.sort_unstable();
            write_vertices(&mut out, &g).expect("string write");
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, HypergraphError> {
        let mut groups = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let group = line
                .split_whitespace()
                .map(|t| t.parse::<Vertex>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| HypergraphError::Parse {
                    line: i + 1,
                    message: format!("malformed group {line:?}"),
                })?;
            groups.push(group);
        }
        Ok(Self { groups })
    }
}

impl fmt::Display for OffsetCycleCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Why a certificate fails against a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("expected {expected} groups, found {found}")]
    GroupCount { expected: usize, found: usize },
    #[error("group {position} has size {found}, expected {expected}")]
    GroupSize {
        position: usize,
        expected: usize,
        found: usize,
    },
    #[error("not a partition: {0}")]
    NotAPartition(PartitionDefect),
    #[error("missing edge at position {position}")]
    MissingEdge { position: usize },
    #[error("edges {first} and {second} intersect in {found} vertices, expected {expected}")]
    Intersection {
        first: usize,
        second: usize,
        expected: usize,
        found: usize,
    },
    #[error("edges {first} and {second} coincide")]
    RepeatedEdge { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionDefect {
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("vertex {0} appears twice")]
    Repeated(Vertex),
    #[error("vertex {0} not covered")]
    Uncovered(Vertex),
}

/// Checks a group-sequence certificate against `h`.
///
/// Returns `Ok(Err(_))` for a certificate that does not hold and `Err(_)` for
/// invalid parameters. Only consecutive-group conditions are checked.
pub fn verify_offset_cycle(
    h: &Hypergraph,
    cert: &OffsetCycleCertificate,
    l: usize,
) -> Result<Result<(), Violation>, OffsetError> {
    let (n, k) = (h.n(), h.k());
    check_cycle_params(n, k, l)?;
    let m = 2 * n / k;
    if cert.groups.len() != m {
        return Ok(Err(Violation::GroupCount {
            expected: m,
            found: cert.groups.len(),
        }));
    }
    let first = cert.groups[0].len();
    let sizes = if first == k - l {
        [k - l, l]
    } else {
        [l, k - l]
    };
    for (position, g) in cert.groups.iter().enumerate() {
        if g.len() != sizes[position % 2] {
            return Ok(Err(Violation::GroupSize {
                position,
                expected: sizes[position % 2],
                found: g.len(),
            }));
        }
    }
    let mut seen = vec![false; n];
    for &v in cert.groups.iter().flatten() {
        if v >= n {
            return Ok(Err(Violation::NotAPartition(PartitionDefect::OutOfRange(
                v,
            ))));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Ok(Err(Violation::NotAPartition(PartitionDefect::Repeated(v))));
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Ok(Err(Violation::NotAPartition(PartitionDefect::Uncovered(v))));
    }
    for (position, edge) in cert.edges().iter().enumerate() {
        if h.edge_id_sorted(edge).is_none() {
            return Ok(Err(Violation::MissingEdge { position }));
        }
    }
    Ok(Ok(()))
}

/// Checks an explicit edge sequence against the literal definition: `2n/k`
/// distinct edges of `h` covering every vertex, consecutive intersections
/// alternating between ℓ and k-ℓ (in either phase) and non-consecutive edges
/// disjoint.
pub fn verify_offset_edge_sequence(
    h: &Hypergraph,
    edges: &[Vec<Vertex>],
    l: usize,
) -> Result<Result<(), Violation>, OffsetError> {
    let (n, k) = (h.n(), h.k());
    check_cycle_params(n, k, l)?;
    let m = 2 * n / k;
    if edges.len() != m {
        return Ok(Err(Violation::GroupCount {
            expected: m,
            found: edges.len(),
        }));
    }
    for (position, e) in edges.iter().enumerate() {
        if !h.contains(e) {
            return Ok(Err(Violation::MissingEdge { position }));
        }
    }
    let meet = |a: &[Vertex], b: &[Vertex]| a.iter().filter(|v| b.contains(v)).count();
    let phase = meet(&edges[0], &edges[1]);
    let sizes = if phase == k - l {
        [k - l, l]
    } else {
        [l, k - l]
    };
    for i in 0..m {
        for j in i + 1..m {
            let found = meet(&edges[i], &edges[j]);
            if found == k {
                return Ok(Err(Violation::RepeatedEdge {
                    first: i,
                    second: j,
                }));
            }
            let expected = if j == i + 1 {
                sizes[i % 2]
            } else if i == 0 && j == m - 1 {
                sizes[(m - 1) % 2]
            } else {
                0
            };
            if found != expected {
                return Ok(Err(Violation::Intersection {
                    first: i,
                    second: j,
                    expected,
                    found,
                }));
            }
        }
    }
    let mut seen = vec![false; n];
    for &v in edges.iter().flatten() {
        if v < n {
            seen[v] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Ok(Err(Violation::NotAPartition(PartitionDefect::Uncovered(v))));
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn five_uniform_cycle() -> (Hypergraph, OffsetCycleCertificate) {
        let cert = OffsetCycleCertificate::new(vec![
            vec![0, 1],
            vec![2, 3, 4],
            vec![5, 6],
            vec![7, 8, 9],
            vec![10, 11],
            vec![12, 13, 14],
        ]);
        let h = Hypergraph::new(15, 5, &cert.edges()).unwrap();
        (h, cert)
    }

    #[test]
    fn five_uniform_cycle_verifies() {
        let (h, cert) = five_uniform_cycle();
        assert_eq!(h.edge_count(), 6);
        assert_eq!(verify_offset_cycle(&h, &cert, 2), Ok(Ok(())));
        assert_eq!(
            verify_offset_edge_sequence(&h, &cert.edges(), 2),
            Ok(Ok(()))
        );
    }

    #[test]
    fn missing_edge_named() {
        let (_, cert) = five_uniform_cycle();
        let mut edges = cert.edges();
        edges.remove(3);
        let h = Hypergraph::new(15, 5, &edges).unwrap();
        assert_eq!(
            verify_offset_cycle(&h, &cert, 2),
            Ok(Err(Violation::MissingEdge { position: 3 }))
        );
    }

    #[test]
    fn partition_defects() {
        let (h, cert) = five_uniform_cycle();
        let mut short = cert.clone();
        short.groups[5] = vec![12, 13, 13];
        assert_eq!(
            verify_offset_cycle(&h, &short, 2),
            Ok(Err(Violation::NotAPartition(PartitionDefect::Repeated(13))))
        );
        let mut wrong = cert.clone();
        wrong.groups[5] = vec![12, 13];
        assert!(matches!(
            verify_offset_cycle(&h, &wrong, 2),
            Ok(Err(Violation::GroupSize { position: 5, .. }))
        ));
        let mut outside = cert;
        outside.groups[5] = vec![12, 13, 15];
        assert_eq!(
            verify_offset_cycle(&h, &outside, 2),
            Ok(Err(Violation::NotAPartition(PartitionDefect::OutOfRange(
                15
            ))))
        );
    }

    #[test]
    fn partition_on_n_minus_one_vertices() {
        // 14 listed vertices for n = 15: the last group is short and vertex 14
        // is missing.
        let (h, cert) = five_uniform_cycle();
        let mut c = cert;
        c.groups[5].pop();
        let verdict = verify_offset_cycle(&h, &c, 2).unwrap();
        assert!(verdict.is_err());
    }

    #[test]
    fn uncovered_vertex_is_not_a_partition() {
        // Same sizes, one vertex swapped for a duplicate elsewhere is caught
        // as Repeated; a group that skips a vertex entirely is Uncovered.
        let h = Hypergraph::complete(6, 3).unwrap();
        let cert = OffsetCycleCertificate::new(vec![vec![0], vec![1, 2], vec![3], vec![4, 0]]);
        assert_eq!(
            verify_offset_cycle(&h, &cert, 1),
            Ok(Err(Violation::NotAPartition(PartitionDefect::Repeated(0))))
        );
    }

    #[test]
    fn parameter_errors_are_distinct() {
        let (h, cert) = five_uniform_cycle();
        assert!(matches!(
            verify_offset_cycle(&h, &cert, 3),
            Err(OffsetError::OverlapOutOfRange { .. })
        ));
        let h2 = Hypergraph::complete(7, 3).unwrap();
        assert!(matches!(
            verify_offset_cycle(&h2, &cert, 1),
            Err(OffsetError::NotDivisible { .. })
        ));
        let h3 = Hypergraph::complete(3, 3).unwrap();
        assert!(matches!(
            verify_offset_cycle(&h3, &cert, 1),
            Err(OffsetError::Degenerate { .. })
        ));
    }

    #[test]
    fn rotation_into_large_group_accepted() {
        let (h, cert) = five_uniform_cycle();
        let mut rotated = cert.groups.clone();
        rotated.rotate_left(1);
        assert_eq!(
            verify_offset_cycle(&h, &OffsetCycleCertificate::new(rotated), 2),
            Ok(Ok(()))
        );
    }

    #[test]
    fn text_round_trip() {
        let (_, cert) = five_uniform_cycle();
        let text = cert.to_text();
        assert!(text.starts_with("0 1\n2 3 4\n"));
        assert_eq!(OffsetCycleCertificate::parse(&text).unwrap(), cert);
        assert!(OffsetCycleCertificate::parse("0 1\nx\n").is_err());
    }
}
