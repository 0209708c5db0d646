use num_bigint::BigInt;
use num_rational::BigRational;

use crate::par::Strategy;

/// Solver caps and tuning knobs shared by every producer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOptions {
    /// Largest finite vertex set any enumeration may materialize.
    pub enumeration_cap: u64,
    /// Largest graph handed to the exact independent-set solver.
    pub mis_cap: usize,
    /// Largest `|G| * (R - 1)` accepted by the window-state solver.
    pub state_bits: u32,
    /// Largest number of reachable window states.
    pub max_states: usize,
    /// Largest Følner radius tried by the box upper bound.
    pub max_folner: u32,
    /// Cosine LP grid size per unit of the largest support element.
    pub grid_factor: u32,
    /// Explicit cosine LP grid size; overrides `grid_factor` when set.
    pub grid: Option<u32>,
    /// Strict positivity margin enforced at grid points of the cosine LP.
    pub lp_margin: BigRational,
    /// Shrink attempts before a cosine LP candidate is given up on.
    pub shrink_attempts: usize,
    /// `‖coeffs‖_∞` bound for dual lattice enumeration.
    pub dual_radius: u32,
    /// Rounds of grid halving in the dual shift search.
    pub dual_refinement: u32,
    pub strategy: Strategy,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            enumeration_cap: 1_000_000,
            mis_cap: 64,
            state_bits: 24,
            max_states: 1 << 20,
            max_folner: 32,
            grid_factor: 512,
            grid: None,
            lp_margin: BigRational::new(BigInt::from(1), BigInt::from(1_000_000)),
            shrink_attempts: 12,
            dual_radius: 5,
            dual_refinement: 3,
            strategy: Strategy::default(),
        }
    }
}

impl SolverOptions {
    pub fn grid_for(&self, max_support: u64) -> u32 {
        self.grid
            .unwrap_or_else(|| self.grid_factor.saturating_mul(max_support.max(1) as u32))
    }
}
