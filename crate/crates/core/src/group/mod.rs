//! Quotient groups `Z^r / Λ`, missing-difference problems and Cayley graphs.

mod cayley;
mod problem;
mod quotient;

pub use cayley::{folner_box, folner_box_size, induced_cayley_graph, project_all, CayleyGraph, FolnerBox};
pub use problem::{
    basis_images, problem_from_corank1, problem_from_integer_vectors, problem_from_rational_circle,
    quotient_of, realize_as_compact_group, DifferenceProblem, Source,
};
pub use quotient::{GroupElement, QuotientGroup};
