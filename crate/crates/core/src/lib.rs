//! Exact residue summation over torus fixpoints, with two geometry packs:
//! twisted cubics in projective space ([`cubics`]) and Hilbert schemes of
//! points in the plane ([`planepoints`]).
//!
//! All arithmetic is exact. A residue sum that fails to be an integer is
//! reported as [`Error::NonIntegralResult`].

pub mod cubics;
pub mod error;
pub mod localize;
pub mod planepoints;
pub mod poly;
pub mod repring;

pub use error::{Error, Result};
pub use localize::{
    default_weight_vector, integrate, integrate_par, validate_weights, weight_vector_with_seed, with_weight_retry,
    FixpointContribution, LocalizationResult,
};
pub use poly::{BivariatePolynomial, Polynomial};
pub use repring::{Character, VirtualRep, WeightMultiset, WeightVector};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
