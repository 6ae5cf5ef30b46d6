//! Exact enumeration of semistar, fractional star, (semi)star and star
//! operations on a semilocal Prüfer domain, given its spectral tree with
//! `ω` labels on every node and `ε` labels on the maximal ones.
//!
//! The layers, bottom up:
//!
//! * [`poset`]: finite posets, order-preserving maps and order polynomials;
//! * [`poly`]: exact multivariate polynomials and grid interpolation;
//! * [`spectrum`]: the labeled tree, its skeleton and the supports;
//! * [`engine`]: the flagged posets and the four counts;
//! * [`oracle`]: slow reference enumerations used for cross-checking.

pub mod bounds;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod poset;
pub mod spectrum;

pub use bounds::{Bounds, HARD_MAX_BRANCHES};
pub use engine::{
    count_fstar, count_semistar, count_smstar, count_star, fstar_poset, fstar_product_poset,
    height2_counts, semistar_polynomial, semistar_poset, smstar_polynomial, tildhom_count,
    CountReport, FlaggedPoset, SemistarElement, SemistarPoset, Symbol,
};
pub use error::{Error, Result, ValidationReport};
pub use poly::{binomial_order_poly, interpolate, interpolate_on, InterpVar, MultiPoly, Rational};
pub use poset::{
    count_hom, enum_hom, hom_polynomial, is_isomorphic, HasseDiagram, OrderMap, Poset,
};
pub use spectrum::{
    derive_omega, enumerate_supports, PrimeFlag, RawNode, RawTree, Skeleton, SpectrumTree,
    Support, Violation,
};
