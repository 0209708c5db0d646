//! Exact densities and two-sided bounds for difference-avoiding sets.

mod domain;
mod finite;
mod greedy;
mod karp;
mod mis;
mod periodic;
mod rank1;
mod tiling;
mod window;

pub use domain::parallelepiped_points;
pub use finite::{best_with_periods, density_finite_group, small_period_search};
pub use greedy::{greedy_parity_construction, GreedyOutcome, MAX_GREEDY_CELL};
pub use karp::{max_mean_cycle, max_mean_cycle_with, Digraph, Edge, MeanCycle};
pub use mis::{max_independent_set, max_independent_set_adjacency, IndependentSet};
pub use periodic::{verify_avoiding, PeriodicSet};
pub use rank1::{
    rank1_construction, rank1_construction_general, rank1_density, rank1_generator, rank1_problem, rank1_report,
    rank1_tile,
};
pub use tiling::{
    check_tiling_complement, folner_sequence, folner_upper_bound, integer_tiling_complement, tile_upper_bound,
    TileBound, MAX_TILING_DIAMETER,
};
pub use window::{corank1_density, corank1_exact, Corank1Solution, WindowStateGraph};
