//! Double slicing band systems for odd pretzel knots `P(±a, ..., ±a)`.
//!
//! The crate builds the outer and central band sets for a sign sequence,
//! certifies the two-band-set slicing criterion combinatorially, checks
//! the path property of the auxiliary graph, cross-checks every component
//! count against a literal band-surgery simulator, and explores the
//! even-length link case.
//!
//! ```
//! use pretzel_slice::{certify, SignSeq};
//!
//! let seq: SignSeq = "++--+".parse().unwrap();
//! let cert = certify(&seq).unwrap();
//! assert!(cert.verdict.is_certified());
//! assert_eq!(cert.stage_components_ab, [3, 2, 1]);
//! ```

pub mod certify;
pub mod cli;
pub mod crosscheck;
pub mod diagram;
pub mod error;
pub mod graph;
pub mod links;
pub mod pairing;
pub mod partition;
pub mod sequence;

pub use certify::{certify, certify_with, CertifyOptions, SliceCertificate, Verdict};
pub use diagram::{Layer, Site, Slot, SpliceDiagram};
pub use error::{Error, Result};
pub use graph::{AuxGraph, PathVerdict};
pub use pairing::{
    feet_placement, pair_balanced, pair_iterative, BandFeet, BandMatching, Direction, Pair,
};
pub use partition::Partition;
pub use sequence::{enumerate_balanced, Mode, Sign, SignSeq, Symmetry};
