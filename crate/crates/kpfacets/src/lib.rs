//! Exact tools for faces of 0/1 knapsack polytopes.
//!
//! Given nonnegative integer item weights `a` and a capacity `b`, the
//! knapsack polytope is the convex hull of the 0/1 vectors with
//! `a . x <= b`. This crate decides, with arbitrary-precision arithmetic
//! throughout, whether a nonnegative inequality `alpha . x <= beta` is valid
//! over that polytope, whether it defines a facet, and what the dimension of
//! the face it cuts out is. Facet answers come with a certificate of
//! affinely independent tight points; invalid answers come with a violated
//! feasible point.
//!
//! The recognizer ([`recognizer`]) runs in time polynomial for any fixed
//! number of distinct positive coefficient values by searching *basic*
//! knapsack solutions only. The brute-force [`oracle`] enumerates the whole
//! point set and exists to cross-check the recognizer on small instances.
//! [`reductions`] builds the instance families that tie subset-sum style
//! problems to face recognition, and [`linalg`] supplies the exact rank and
//! convex-combination primitives both engines share.

pub mod error;
pub mod knapsack;
pub mod linalg;
pub mod oracle;
pub mod recognizer;
pub mod reductions;

pub use error::{Error, Result};
pub use knapsack::{Inequality, KnapsackInstance, NormalizedProblem, Profile};
