//! Combinatorics of 3-fold flop braiding, computed exactly.
//!
//! Given one or more marked ADE Dynkin diagrams (one per singular point of a
//! flopping contraction), this crate builds the simplicial hyperplane
//! arrangement controlling how the flops braid, enumerates its chambers with
//! exact rational witnesses, derives the integer wall-crossing involutions
//! and explores the chamber atlas, extracts the codimension-two relations of
//! the Deligne groupoid and checks representations of it, and verifies braid
//! word identities in B3 through an exact Laurent-matrix oracle.
//!
//! Modules, bottom up:
//!
//! - [`linalg`]: exact integer/rational kernels (normalization, rank,
//!   nullspaces, strict feasibility with rational witnesses).
//! - [`rootsys`]: ADE diagrams and positive root enumeration by reflection
//!   closure.
//! - [`contraction`]: the input format, marked diagrams per point.
//! - [`arrangement`]: root restriction, products, chambers, adjacency,
//!   simpliciality, codimension-two walls, and the lattice count oracle.
//! - [`tracking`]: wall-crossing involutions, geometric exchange data, the
//!   breadth-first chamber atlas, braid lengths, two-curve reports.
//! - [`groupoid`]: the oriented chamber graph, minimal positive paths,
//!   codimension-two relation pairs, representation checks, vertex-group
//!   presentations.
//! - [`braid`]: B3 words and the reduced Laurent-matrix equality oracle.
//! - [`scan`]: exhaustive verification sweeps over all small marked diagrams.
//!
//! All computation is exact (integers, big rationals); nothing here uses
//! floating point or randomness, so every artifact is byte-reproducible.
//! With the default `parallel` feature the sweeps and chamber splits fan out
//! through rayon; disabling it gives a sequential build with identical
//! output.

pub mod arrangement;
pub mod braid;
pub mod contraction;
pub mod groupoid;
pub mod linalg;
mod par;
pub mod rootsys;
pub mod scan;
pub mod tracking;

pub use arrangement::{build_arrangement, Arrangement, Chamber, Functional, Sign};
pub use contraction::{parse_spec, ContractionPoint, ContractionSpec};
pub use rootsys::{DynkinDiagram, Family, Root};
pub use tracking::{explore, ChamberAtlas, ExchangeData};

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("spec error at point {point}, field {field:?}: {message}")]
    Spec {
        point: usize,
        field: String,
        message: String,
    },
    #[error("invalid spec document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("arrangement error: {0}")]
    Arrangement(String),
    #[error("degenerate arrangement: functionals span rank {rank} in dimension {dim}")]
    Degenerate { dim: usize, rank: usize },
    #[error("tracking error: {0}")]
    Tracking(String),
    #[error("groupoid error: {0}")]
    Groupoid(String),
    #[error("braid error: {0}")]
    Braid(String),
}
