//! Exact verification engine for the mirabolic Hecke algebra R_n.
//!
//! Two independent models are built and cross-validated:
//!
//! * seminormal representations of the cyclotomic algebra H_n(1,0) and its
//!   quotient R_n over the rational function field Q(q), with all identities
//!   checked in exact arithmetic;
//! * a convolution oracle on triples (flag, flag, vector) over small finite
//!   fields, with orbits labeled by pairs (w, beta) and integer structure
//!   constants counted directly.
//!
//! On top of these sit the Jucys-Murphy/center machinery, a truncated Fock
//! model of the branching operators, and an exact linear solver that searches
//! for cellular-basis expansion certificates at small rank.

pub mod cellular;
pub mod combinatorics;
pub mod context;
pub mod convolution;
pub mod fock;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod seminormal;
pub mod suites;
pub mod wordalg;
