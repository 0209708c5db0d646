//! Exact computation, bounding and certification of Motzkin densities.
//!
//! A *missing-difference problem* asks for the largest density of a set `A`
//! in an abelian group whose difference set `A - A` avoids a prescribed finite
//! set `D`. Every such problem over a compact abelian group reduces to one over
//! a finitely generated quotient `Z^r / Λ` with `D` the image of the standard
//! basis, and that is the form handled here.
//!
//! The crate is organized bottom-up:
//!
//! * [`lattice`]: integer matrices, Smith normal form, lattices and duals.
//! * [`group`]: quotient groups `Z^r / Λ`, canonical coordinates, Cayley graphs.
//! * [`density`]: exact solvers (finite groups, rank 1, corank 1) and bounds.
//! * [`circle`]: circle-group machinery: kappa values, interval constructions,
//!   cosine-polynomial linear programs and Sturm certification.
//! * [`report`]: exact-rational density reports with method provenance.
//! * [`solve`]: solver selection for density, bounds and constructions.

pub mod circle;
pub mod density;
pub mod error;
pub mod group;
pub mod lattice;
pub mod options;
pub mod par;
pub mod report;
pub mod solve;

pub use error::{Error, Result};
pub use options::SolverOptions;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
