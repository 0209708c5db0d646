use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::cosine::CosinePolynomial;
use super::simplex::{solve, StandardLp};
use crate::error::{Error, Result};

/// Cosine values enter the LP rounded to this many fractional bits.
pub const COSINE_BITS: u32 = 32;

/// Uncertified maximizer of `C(0)` under grid positivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpCandidate {
    pub polynomial: CosinePolynomial,
    pub grid: u32,
    pub iterations: usize,
}

impl LpCandidate {
    pub fn value_at_zero(&self) -> BigRational {
        self.polynomial.value_at_zero()
    }
}

/// Maximizes `Σ c_k` subject to `1 + Σ c_k cos(2πk t_i) ≥ margin` at
/// `t_i = i / (2·grid)`, `i = 0..=grid` (the constraint is even in `t`).
///
/// Solved through its dual `min (1 - margin)·Σ y_i` subject to
/// `Σ_i y_i (-cos 2πk t_i) = 1`, `y ≥ 0`, whose basis is only `|K|` wide; the
/// coefficients are read off as the simplex multipliers.
pub fn cosine_lp(support: &[u64], grid: u32, margin: &BigRational) -> Result<LpCandidate> {
    let mut ks = support.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let Some(&max) = ks.last() else {
        return Err(Error::InvalidInput("empty cosine support".into()));
    };
    if ks[0] == 0 {
        return Err(Error::InvalidInput("cosine frequencies must be positive".into()));
    }
    if u64::from(grid) < 4 * max {
        return Err(Error::InvalidInput(format!("grid size {grid} is below 4·max(support) = {}", 4 * max)));
    }
    let scale = (1u64 << COSINE_BITS) as f64;
    let period = 2 * u64::from(grid);
    let columns: Vec<Vec<i64>> = (0..=u64::from(grid))
        .map(|i| {
            ks.iter()
                .map(|&k| {
                    let r = (k * i) % period;
                    let angle = std::f64::consts::PI * r as f64 / f64::from(grid);
                    (-angle.cos() * scale).round() as i64
                })
                .collect()
        })
        .collect();
    let cost = BigRational::one() - margin;
    let lp = StandardLp {
        rows: ks.len(),
        costs: vec![cost; columns.len()],
        columns,
        scale: BigInt::from(1u64 << COSINE_BITS),
        rhs: vec![BigRational::one(); ks.len()],
    };
    let sol = solve(&lp)?;
    let polynomial = CosinePolynomial::new(ks.into_iter().zip(sol.duals).collect())?;
    Ok(LpCandidate {
        polynomial,
        grid,
        iterations: sol.iterations,
    })
}
