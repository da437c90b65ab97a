//! Resolution combinatorics of 3-dimensional toric idealistic clusters.
//!
//! Blowing up a toric constellation of infinitely near points in `C^3` gives
//! an embedded resolution for every surface that is general with respect to
//! an idealistic cluster supported on it.  All invariants of that resolution
//! are determined by the labeled tree and the multiplicities alone, and this
//! crate computes them exactly:
//!
//! * [`constellation`] — labeled trees, cones and valuation vectors, the
//!   proximity relations, numerical data `(nu_j, N_j)`, the linear proximity
//!   inequalities, Rees flags and recognisers for the Euclidean chain
//!   families, plus a seeded generator of random idealistic clusters;
//! * [`strata`] — Euler characteristics `chi(E_I)` of the strata of the
//!   resolution, the `D - R + T` decomposition, and the sign classification
//!   of `chi(E_i)` by structural pattern matching;
//! * [`ratzeta`] — exact univariate rational functions over `Q` with
//!   factored denominators, the local topological zeta function and its
//!   twists, and pole extraction;
//! * [`monodromy`] — the characteristic polynomial of monodromy in factored
//!   cyclotomic form, eigenvalue order queries, and mechanical checks of the
//!   monodromy and holomorphy conjectures;
//! * [`monomial`] — the associated complete monomial ideal, its Newton
//!   polyhedron and Rees-facet correspondence, completeness checking, and
//!   emission of a general element;
//! * [`cli`] — the cluster file format, command dispatch and JSON reports;
//! * [`verify`] — the invariant suites run by `selftest` and the acceptance
//!   tests;
//! * [`fixtures`] — small worked clusters used throughout the tests and
//!   examples.
//!
//! No floating point is used anywhere; every rational quantity is exact.
//!
//! The `examples/` directory demonstrates each capability end to end; the
//! thin `clusterzeta` binary exposes the same operations on cluster files.

pub mod cli;
pub mod constellation;
pub mod error;
pub mod fixtures;
pub mod monodromy;
pub mod monomial;
pub mod ratzeta;
pub mod strata;
pub mod verify;

pub use constellation::{
    derive_proximity, numerical_data, random_idealistic_cluster, recognize_bi_euclidean,
    recognize_euclidean, rees_flags, Analysis, Cluster, Constellation, Label,
};
pub use error::{Error, Result};
