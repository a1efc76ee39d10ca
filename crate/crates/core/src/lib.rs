//! Offset Hamilton cycles, 1-offset trails and group edge weightings in
//! random k-uniform hypergraphs.
//!
//! - [`hypergraph`]: storage, the random model H(n, p, k), text format.
//! - [`offset`]: ℓ-offset Hamilton cycles: verification, exact search,
//!   cycle counts and thresholds.
//! - [`trail`]: dominoes, 1-offset trails and 𝒯-connectivity.
//! - [`abelian`], [`weighting`]: finite abelian groups and edge weightings
//!   inducing prescribed vertex colorings.
//! - [`harness`]: seeded Monte Carlo sweeps, CSV and SVG output.

pub mod abelian;
pub mod combinatorics;
pub mod domino;
pub mod harness;
pub mod hypergraph;
pub mod offset;
pub mod rng;
pub mod trail;
pub mod weighting;

pub use abelian::{AbelianGroup, GroupElement, GroupError};
pub use domino::{Domino, DominoIndex};
pub use hypergraph::{Hypergraph, HypergraphError, Vertex};
pub use offset::{OffsetCycleCertificate, OffsetError};
pub use trail::{TrailCertificate, TrailError};
pub use weighting::{EdgeWeighting, GroupColoring, WeightingError};
