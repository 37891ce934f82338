//! Exact-arithmetic engine for counting rational contact (Legendrian) curves
//! in projective 3-space.
//!
//! The counts are computed by torus localization: every invariant is a sum,
//! over isomorphism classes of weighted colored trees, of an exact rational
//! contribution built from equivariant weight data. No floating point is used
//! anywhere; results are exact rationals with an integrality flag.
//!
//! Module map:
//!
//! - [`exactmath`]: arbitrary-precision rationals and homogeneous binary forms
//! - [`graphs`]: enumeration and canonicalization of weighted colored trees
//! - [`localization`]: per-tree equivariant factors and contributions
//! - [`invariants`]: orchestration, specialization sampling, caching, reporting
//! - [`legendrian`]: contact-condition verification for explicit curves
//! - [`configs`]: reducible-configuration counts and irreducible estimates

pub mod configs;
pub mod exactmath;
pub mod graphs;
pub mod invariants;
pub mod legendrian;
pub mod localization;

pub use exactmath::{binomial, factorial, ExactError, HomogPoly2, P1Point, Rational};
pub use graphs::{
    a_gamma, automorphism_order, canonical_form, enumerate_fixed_graphs, GraphClass, GraphError,
    WeightedColoredTree,
};
pub use invariants::{
    compute, sample_specialization, InvariantError, InvariantKind, InvariantRequest,
    InvariantResult,
};
pub use localization::{
    contact_class, edge_factor, graph_contribution, incidence_class, vertex_factor, ClassSelector,
    LocalizationError, TorusSpec,
};
