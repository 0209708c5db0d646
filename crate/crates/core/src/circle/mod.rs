//! Bounds specific to the circle group `T = R/Z` and its cyclic quotients.

mod cosine;
mod delsarte;
mod intervals;
mod kappa;
mod lp;
mod parity;
mod poly;
pub mod simplex;

pub use cosine::{sturm_certify, Certificate, CosinePolynomial};
pub use delsarte::{
    certified_bound, delsarte_for_support, delsarte_upper_bound, fejer_bound, fejer_polynomial, DelsarteBound,
};
pub use intervals::{interval_construction, IntervalSet};
pub use kappa::{dist_to_integer, kappa_dual_lower, kappa_rational, KappaCertificate, KappaWitness};
pub use lp::{cosine_lp, LpCandidate, COSINE_BITS};
pub use parity::{half_parity, half_parity_check, half_parity_report, HalfParity};
pub use poly::{Polynomial, SturmSequence};
