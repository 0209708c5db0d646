//! Exact revised simplex for `min c·y` subject to `A y = b`, `y ≥ 0`.
//!
//! The constraint matrix is stored as integer columns over one common
//! denominator, which keeps pricing in integer arithmetic even when the basis
//! inverse carries large rationals. Pricing is Dantzig's rule, switching to
//! Bland's rule after a run of degenerate pivots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `A = columns / scale` (each column has `rows` entries), costs `c`, rhs `b`.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub rows: usize,
    pub columns: Vec<Vec<i64>>,
    pub scale: BigInt,
    pub costs: Vec<BigRational>,
    pub rhs: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub objective: BigRational,
    /// Basic variables with their values; every other variable is zero.
    pub basic: Vec<(usize, BigRational)>,
    /// Simplex multipliers `π = c_B B^{-1}`, an optimal solution of the dual
    /// `max b·π` subject to `Aᵀπ ≤ c`.
    pub duals: Vec<BigRational>,
    pub iterations: usize,
}

const DEGENERATE_RUN: usize = 50;
const MAX_ITERATIONS: usize = 100_000;

struct Tableau<'a> {
    lp: &'a StandardLp,
    /// row sign flips making `b ≥ 0`
    flip: Vec<bool>,
    basis: Vec<usize>,
    binv: Vec<Vec<BigRational>>,
    x: Vec<BigRational>,
    iterations: usize,
}

impl<'a> Tableau<'a> {
    fn n(&self) -> usize {
        self.lp.columns.len()
    }

    /// Column `j` as rationals, artificials being unit vectors after all real columns.
    fn column(&self, j: usize) -> Vec<BigRational> {
        let m = self.lp.rows;
        if j >= self.n() {
            let mut e = vec![BigRational::zero(); m];
            e[j - self.n()] = BigRational::one();
            return e;
        }
        self.lp.columns[j]
            .iter()
            .zip(&self.flip)
            .map(|(&a, &f)| {
                let v = BigRational::new(BigInt::from(a), self.lp.scale.clone());
                if f {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    fn duals(&self, cost: &dyn Fn(usize) -> BigRational) -> Vec<BigRational> {
        let m = self.lp.rows;
        let cb: Vec<BigRational> = self.basis.iter().map(|&j| cost(j)).collect();
        (0..m)
            .map(|i| {
                cb.iter()
                    .zip(&self.binv)
                    .fold(BigRational::zero(), |acc, (c, row)| acc + c * &row[i])
            })
            .collect()
    }

    /// Most negative (or first negative under Bland) reduced cost over the
    /// allowed columns, computed in integers over a common denominator.
    fn price(&self, cost: &dyn Fn(usize) -> BigRational, allow_artificial: bool, bland: bool) -> Option<usize> {
        let pi = self.duals(cost);
        let den = pi.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let pint: Vec<BigInt> = pi
            .iter()
            .zip(&self.flip)
            .map(|(p, &f)| {
                let v = p.numer() * (&den / p.denom());
                if f {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let common = &den * &self.lp.scale;
        let mut best: Option<(usize, BigRational)> = None;
        let total = self.n() + if allow_artificial { self.lp.rows } else { 0 };
        for j in 0..total {
            if self.basis.contains(&j) {
                continue;
            }
            let d = if j < self.n() {
                let dot: BigInt = self.lp.columns[j].iter().zip(&pint).map(|(&a, p)| p * a).sum();
                cost(j) - BigRational::new(dot, common.clone())
            } else {
                cost(j) - &pi[j - self.n()]
            };
            if d.is_negative() {
                if bland {
                    return Some(j);
                }
                if best.as_ref().is_none_or(|(_, b)| &d < b) {
                    best = Some((j, d));
                }
            }
        }
        best.map(|(j, _)| j)
    }

    fn pivot(&mut self, entering: usize) -> Result<bool> {
        let a = self.column(entering);
        let u: Vec<BigRational> = self
            .binv
            .iter()
            .map(|row| row.iter().zip(&a).fold(BigRational::zero(), |acc, (r, x)| acc + r * x))
            .collect();
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_positive() {
                continue;
            }
            let ratio = &self.x[i] / ui;
            let better = match &leave {
                None => true,
                Some((l, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, theta)) = leave else {
            return Err(Error::Unbounded);
        };
        let degenerate = theta.is_zero();
        for (i, ui) in u.iter().enumerate() {
            if i != r {
                self.x[i] = &self.x[i] - &theta * ui;
            }
        }
        self.x[r] = theta;
        let pivot_row: Vec<BigRational> = self.binv[r].iter().map(|v| v / &u[r]).collect();
        for (i, ui) in u.iter().enumerate() {
            if i == r || ui.is_zero() {
                continue;
            }
            for (v, p) in self.binv[i].iter_mut().zip(&pivot_row) {
                *v = &*v - ui * p;
            }
        }
        self.binv[r] = pivot_row;
        self.basis[r] = entering;
        self.iterations += 1;
        if self.iterations > MAX_ITERATIONS {
            return Err(Error::InvalidInput("simplex iteration limit reached".into()));
        }
        Ok(degenerate)
    }

    fn run(&mut self, cost: &dyn Fn(usize) -> BigRational, allow_artificial: bool) -> Result<()> {
        let mut run = 0;
        loop {
            let Some(j) = self.price(cost, allow_artificial, run >= DEGENERATE_RUN) else {
                return Ok(());
            };
            if self.pivot(j)? {
                run += 1;
            } else {
                run = 0;
            }
        }
    }
}

pub fn solve(lp: &StandardLp) -> Result<LpSolution> {
    let m = lp.rows;
    let n = lp.columns.len();
    if lp.rhs.len() != m || lp.costs.len() != n || lp.columns.iter().any(|c| c.len() != m) {
        return Err(Error::DimensionMismatch("linear program shape".into()));
    }
    let flip: Vec<bool> = lp.rhs.iter().map(|b| b.is_negative()).collect();
    let x: Vec<BigRational> = lp.rhs.iter().map(|b| b.abs()).collect();
    let binv = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut t = Tableau {
        lp,
        flip,
        basis: (n..n + m).collect(),
        binv,
        x,
        iterations: 0,
    };

    let phase1 = |j: usize| if j >= n { BigRational::one() } else { BigRational::zero() };
    t.run(&phase1, true)?;
    let infeasibility = t
        .basis
        .iter()
        .zip(&t.x)
        .filter(|(&j, _)| j >= n)
        .fold(BigRational::zero(), |acc, (_, v)| acc + v);
    if infeasibility.is_positive() {
        return Err(Error::Infeasible);
    }
    // drive zero-level artificials out where a real column can replace them
    for r in 0..m {
        if t.basis[r] < n {
            continue;
        }
        let replacement = (0..n).filter(|j| !t.basis.contains(j)).find(|&j| {
            let a = t.column(j);
            !t.binv[r].iter().zip(&a).fold(BigRational::zero(), |acc, (b, x)| acc + b * x).is_zero()
        });
        if let Some(j) = replacement {
            pivot_at(&mut t, r, j);
        }
    }

    let phase2 = |j: usize| if j >= n { BigRational::zero() } else { lp.costs[j].clone() };
    t.run(&phase2, false)?;
    let duals: Vec<BigRational> = t
        .duals(&phase2)
        .into_iter()
        .zip(&t.flip)
        .map(|(p, &f)| if f { -p } else { p })
        .collect();
    let objective = t
        .basis
        .iter()
        .zip(&t.x)
        .fold(BigRational::zero(), |acc, (&j, v)| acc + phase2(j) * v);
    Ok(LpSolution {
        objective,
        basic: t.basis.iter().copied().zip(t.x.iter().cloned()).filter(|(j, _)| *j < n).collect(),
        duals,
        iterations: t.iterations,
    })
}

/// Pivot on a specific row (used to remove degenerate artificials).
fn pivot_at(t: &mut Tableau<'_>, r: usize, entering: usize) {
    let a = t.column(entering);
    let u: Vec<BigRational> = t
        .binv
        .iter()
        .map(|row| row.iter().zip(&a).fold(BigRational::zero(), |acc, (b, x)| acc + b * x))
        .collect();
    let pivot_row: Vec<BigRational> = t.binv[r].iter().map(|v| v / &u[r]).collect();
    for (i, ui) in u.iter().enumerate() {
        if i == r || ui.is_zero() {
            continue;
        }
        for (v, p) in t.binv[i].iter_mut().zip(&pivot_row) {
            *v = &*v - ui * p;
        }
        // x[r] is zero, so the basic values do not move
    }
    t.binv[r] = pivot_row;
    t.basis[r] = entering;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_program() {
        // min -x1 - x2  s.t.  x1 + 2x2 + s1 = 4,  3x1 + x2 + s2 = 6
        let lp = StandardLp {
            rows: 2,
            columns: vec![vec![1, 3], vec![2, 1], vec![1, 0], vec![0, 1]],
            scale: BigInt::one(),
            costs: vec![q(-1, 1), q(-1, 1), q(0, 1), q(0, 1)],
            rhs: vec![q(4, 1), q(6, 1)],
        };
        let s = solve(&lp).unwrap();
        assert_eq!(s.objective, q(-14, 5));
        // dual: max 4π1 + 6π2, Aᵀπ ≤ c
        let dual_obj = &s.duals[0] * q(4, 1) + &s.duals[1] * q(6, 1);
        assert_eq!(dual_obj, s.objective);
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x1 - x2 = -1 with the costs pushing x2 up forever
        let lp = StandardLp {
            rows: 1,
            columns: vec![vec![1], vec![-1]],
            scale: BigInt::one(),
            costs: vec![q(0, 1), q(-1, 1)],
            rhs: vec![q(-1, 1)],
        };
        assert_eq!(solve(&lp), Err(Error::Unbounded));
        let lp = StandardLp {
            rows: 1,
            columns: vec![vec![1], vec![1]],
            scale: BigInt::one(),
            costs: vec![q(1, 1), q(1, 1)],
            rhs: vec![q(-1, 1)],
        };
        assert_eq!(solve(&lp), Err(Error::Infeasible));
    }

    #[test]
    fn scaled_columns() {
        // min y1 + y2  s.t.  y1/2 + y2/4 = 1
        let lp = StandardLp {
            rows: 1,
            columns: vec![vec![2], vec![1]],
            scale: BigInt::from(4),
            costs: vec![q(1, 1), q(1, 1)],
            rhs: vec![q(1, 1)],
        };
        let s = solve(&lp).unwrap();
        assert_eq!(s.objective, q(2, 1));
        assert_eq!(s.duals, vec![q(2, 1)]);
    }
}
