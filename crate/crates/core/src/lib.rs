//! Entropy bookkeeping for multipartite quantum systems via weighted
//! EPR-pair graphs.
//!
//! A graph assigns a nonnegative rational weight `n_ij` to each unordered
//! party pair and `N_i` to each party-environment link.  The entropy of a
//! party subset is the total weight crossing the subset's cut, so every
//! graph induces an entropy vector over all nonempty subsets.  On top of
//! that representation this crate provides:
//!
//! - [`graph`]: the graph type, cut entropies, and the unit generator
//!   graphs spanning the cone of representable vectors;
//! - [`inequality`]: linear entropy inequalities (subadditivity, triangle,
//!   strong subadditivity, monogamy of mutual information, user-supplied
//!   forms), evaluated exactly and certified on the cone by evaluation on
//!   its generators;
//! - [`membership`]: an exact decision procedure for whether a given
//!   entropy vector is representable by a graph, returning the unique
//!   decomposition or a concrete refutation witness;
//! - [`oracle`]: a brute-force state-vector simulator (partial traces,
//!   von Neumann entropies, the EPR distribution protocol) used as ground
//!   truth against the graph model.
//!
//! All model-side arithmetic is exact rational; only the oracle produces
//! floating-point values, which [`membership::decide_approx`] can snap back
//! to rationals.

pub mod error;
pub mod graph;
pub mod inequality;
pub mod linalg;
pub mod membership;
pub mod oracle;
pub mod party;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod vector;

pub(crate) mod lines;

pub use error::{Error, Result};
pub use graph::{generator_graphs, generators, EprGraph, Generator};
pub use inequality::{builtin_family, certify, span_constraints, BuiltinFamily, Certificate, Inequality, Sense};
pub use membership::{decide, decide_approx, ApproxDecision, Membership, SnapOptions};
pub use party::PartySet;
pub use rational::Rational;
pub use vector::{EntropyVector, FloatEntropyVector};
