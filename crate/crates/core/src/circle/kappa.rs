use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{kernel_lattice, rational_dot, Lattice};

/// Largest number of dual lattice points or shift grid points examined.
const SEARCH_BUDGET: u64 = 20_000;
const SHIFT_RESOLUTION: i64 = 12;
const FAREY_ORDER: i64 = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KappaCertificate {
    /// `β = n·α` in the finite cyclic closure of order `order`.
    CyclicMultiple { n: BigInt, order: BigInt },
    /// `β = v + w` with `v` a dual lattice point (coefficients in the dual
    /// basis) and `w` = `shift` times the integer kernel basis, which spans the
    /// real orthogonal complement of the lattice.
    DualPoint { coefficients: Vec<i64>, shift: Vec<BigRational> },
    /// A closed-form point, checked against the lattice congruences.
    Seed(&'static str),
}

impl fmt::Display for KappaCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaCertificate::CyclicMultiple { n, order } => write!(f, "N = {n} in the cyclic closure of order {order}"),
            KappaCertificate::DualPoint { coefficients, shift } => {
                let c: Vec<String> = coefficients.iter().map(|x| x.to_string()).collect();
                let s: Vec<String> = shift.iter().map(|x| x.to_string()).collect();
                write!(f, "dual point ({}) plus kernel shift ({})", c.join(","), s.join(","))
            }
            KappaCertificate::Seed(name) => write!(f, "{name}"),
        }
    }
}

/// A point `β` of the closure together with `min_i ‖β_i‖`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaWitness {
    pub beta: Vec<BigRational>,
    pub value: BigRational,
    /// True when `β` is exact (always the case here: search points are rational).
    pub exact: bool,
    pub certificate: KappaCertificate,
}

/// `‖x‖`: distance to the nearest integer.
pub fn dist_to_integer(x: &BigRational) -> BigRational {
    let f = x - x.floor();
    let g = BigRational::one() - &f;
    f.min(g)
}

fn min_dist(beta: &[BigRational]) -> BigRational {
    beta.iter().map(dist_to_integer).min().unwrap_or_else(|| BigRational::new(1.into(), 2.into()))
}

fn dist_f64(x: f64) -> f64 {
    let f = x - x.floor();
    f.min(1.0 - f)
}

/// `max_{N ∈ [0, q)} min_i ‖N a_i / q_i‖` with `q = lcm(q_i)`; ties keep the smallest `N`.
pub fn kappa_rational(fractions: &[BigRational], cap: u64) -> Result<KappaWitness> {
    if fractions.is_empty() {
        return Err(Error::InvalidInput("empty difference set".into()));
    }
    let q = fractions.iter().fold(BigInt::one(), |acc, f| acc.lcm(f.denom()));
    let order = q.to_u64().filter(|&v| v <= cap).ok_or_else(|| Error::cap("cyclic closure order", &q, cap))?;
    let nums: Vec<u64> = fractions
        .iter()
        .map(|f| {
            let r = f - f.floor();
            (r.numer() * (&q / r.denom())).to_u64().expect("residue below the order")
        })
        .collect();
    let mut best = (0u64, 0u64);
    for n in 0..order {
        let v = nums
            .iter()
            .map(|&a| {
                let r = (u128::from(n) * u128::from(a) % u128::from(order)) as u64;
                r.min(order - r)
            })
            .min()
            .unwrap_or(0);
        if v > best.1 {
            best = (n, v);
        }
    }
    let n = BigInt::from(best.0);
    let beta: Vec<BigRational> = fractions
        .iter()
        .map(|f| {
            let x = f * BigRational::from_integer(n.clone());
            &x - x.floor()
        })
        .collect();
    Ok(KappaWitness {
        value: min_dist(&beta),
        beta,
        exact: true,
        certificate: KappaCertificate::CyclicMultiple { n, order: q },
    })
}

/// A sound lower bound for kappa of the relation lattice `Λ`.
///
/// Candidates `β` satisfy `n·β ∈ Z` for every `n ∈ Λ`: dual lattice points
/// with coefficients up to `search_radius`, each shifted along the orthogonal
/// complement of `span Λ` on a grid refined `refinement` times (all small
/// fractions when the complement is a line), plus a few closed-form points.
/// The best candidate is evaluated exactly.
pub fn kappa_dual_lower(l: &Lattice, search_radius: u32, refinement: u32) -> Result<KappaWitness> {
    let r = l.ambient_dim();
    let d = l.rank();
    let half = BigRational::new(1.into(), 2.into());
    let rows = l.basis_rows();
    let satisfies = |beta: &[BigRational]| rows.iter().all(|n| rational_dot(beta, n).is_integer());

    let mut best: Option<KappaWitness> = None;
    let mut offer = |w: KappaWitness| {
        if best.as_ref().is_none_or(|b| w.value > b.value) {
            best = Some(w);
        }
    };

    let halves = vec![half.clone(); r];
    if satisfies(&halves) {
        offer(KappaWitness {
            value: min_dist(&halves),
            beta: halves,
            exact: true,
            certificate: KappaCertificate::Seed("all coordinates 1/2"),
        });
    }
    if d == 1 {
        let m = &rows[0];
        let k: BigInt = m.iter().map(|x| x.abs()).sum();
        let kk = k.to_u64().unwrap_or(0).min(SEARCH_BUDGET);
        for j in 1..kk {
            let mu = BigRational::new(BigInt::from(j), k.clone());
            let beta: Vec<BigRational> = m
                .iter()
                .map(|x| {
                    if x.is_zero() {
                        half.clone()
                    } else if x.is_negative() {
                        -mu.clone()
                    } else {
                        mu.clone()
                    }
                })
                .collect();
            if satisfies(&beta) {
                offer(KappaWitness {
                    value: min_dist(&beta),
                    beta,
                    exact: true,
                    certificate: KappaCertificate::Seed("signed diagonal j/k·sgn(m)"),
                });
            }
        }
    }
    if d == 0 {
        return best.ok_or_else(|| Error::InvalidInput("empty ambient space".into()));
    }

    let dual = l.dual_basis()?;
    let dual_f: Vec<Vec<f64>> = dual
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect())
        .collect();
    let kernel = kernel_lattice(l.basis()).basis_rows();
    let kernel_f: Vec<Vec<f64>> = kernel
        .iter()
        .map(|row| row.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect())
        .collect();
    let f = kernel.len();

    let mut radius = i64::from(search_radius);
    while radius > 0 && ((2 * radius + 1) as u64).saturating_pow(d as u32) > SEARCH_BUDGET {
        radius -= 1;
    }
    let mut resolution = SHIFT_RESOLUTION;
    while resolution > 1 && (resolution as u64).saturating_pow(f as u32) > SEARCH_BUDGET {
        resolution -= 1;
    }

    let score = |coeffs: &[i64], mu: &[f64]| -> f64 {
        (0..r)
            .map(|i| {
                let v: f64 = coeffs.iter().zip(&dual_f).map(|(&a, row)| a as f64 * row[i]).sum::<f64>()
                    + mu.iter().zip(&kernel_f).map(|(m, row)| m * row[i]).sum::<f64>();
                dist_f64(v)
            })
            .fold(f64::INFINITY, f64::min)
    };

    // one free direction: every fraction with denominator up to FAREY_ORDER
    let shifts: Vec<(Vec<i64>, i64)> = if f == 1 {
        (1..=FAREY_ORDER)
            .flat_map(|den| (0..den).filter(move |&j| j.gcd(&den) == 1).map(move |j| (vec![j], den)))
            .collect()
    } else {
        cube_nonneg(f, resolution).map(|cell| (cell, resolution)).collect()
    };
    while radius > 0 && ((2 * radius + 1) as u64).saturating_pow(d as u32) * shifts.len() as u64 > 100 * SEARCH_BUDGET {
        radius -= 1;
    }
    // (score, dual coefficients, shift numerators, their common denominator)
    let mut incumbent: Option<(f64, Vec<i64>, Vec<i64>, i64)> = None;
    for coeffs in cube(d, radius) {
        for (cell, den) in &shifts {
            let mu: Vec<f64> = cell.iter().map(|&c| c as f64 / *den as f64).collect();
            let s = score(&coeffs, &mu);
            if incumbent.as_ref().is_none_or(|b| s > b.0 + 1e-12) {
                incumbent = Some((s, coeffs.clone(), cell.clone(), *den));
            }
        }
    }
    if let Some((mut s, coeffs, mut num, mut den)) = incumbent {
        for _ in 0..refinement {
            num.iter_mut().for_each(|x| *x *= 2);
            den *= 2;
            let base = num.clone();
            for delta in cube(f, 1) {
                let cand: Vec<i64> = base.iter().zip(&delta).map(|(b, dl)| b + dl).collect();
                let mu: Vec<f64> = cand.iter().map(|&c| c as f64 / den as f64).collect();
                let v = score(&coeffs, &mu);
                if v > s + 1e-12 {
                    s = v;
                    num = cand;
                }
            }
        }
        let shift: Vec<BigRational> = num.iter().map(|&x| BigRational::new(x.into(), den.into())).collect();
        let mut beta = vec![BigRational::zero(); r];
        for (a, row) in coeffs.iter().zip(dual.to_rows()) {
            for (b, x) in beta.iter_mut().zip(row) {
                *b += x * BigRational::from_integer((*a).into());
            }
        }
        for (m, row) in shift.iter().zip(&kernel) {
            for (b, x) in beta.iter_mut().zip(row) {
                *b += m * BigRational::from_integer(x.clone());
            }
        }
        debug_assert!(satisfies(&beta));
        let beta: Vec<BigRational> = beta.iter().map(|x| x - x.floor()).collect();
        offer(KappaWitness {
            value: min_dist(&beta),
            beta,
            exact: true,
            certificate: KappaCertificate::DualPoint {
                coefficients: coeffs,
                shift,
            },
        });
    }
    best.ok_or_else(|| Error::InvalidInput("no kappa candidate".into()))
}

/// All integer vectors in `[-radius, radius]^dim`, lexicographically.
fn cube(dim: usize, radius: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = 2 * radius + 1;
    let total = (side as u64).pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0i64; dim];
        for x in v.iter_mut().rev() {
            *x = (idx % side as u64) as i64 - radius;
            idx /= side as u64;
        }
        v
    })
}

/// All integer vectors in `[0, side)^dim`.
fn cube_nonneg(dim: usize, side: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = (side as u64).pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0i64; dim];
        for x in v.iter_mut().rev() {
            *x = (idx % side as u64) as i64;
            idx /= side as u64;
        }
        v
    })
}
