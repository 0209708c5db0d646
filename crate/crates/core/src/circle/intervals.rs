use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_INTERVALS: u64 = 2_000;

/// Pairwise disjoint half-open arcs `[start, start + length)` of `T = R/Z`,
/// with `start ∈ [0, 1)`; an arc may wrap past 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    arcs: Vec<(BigRational, BigRational)>,
}

impl IntervalSet {
    pub fn new(arcs: Vec<(BigRational, BigRational)>) -> Result<Self> {
        let mut norm: Vec<(BigRational, BigRational)> = Vec::with_capacity(arcs.len());
        for (start, len) in arcs {
            if !len.is_positive() {
                return Err(Error::InvalidInput("arc lengths must be positive".into()));
            }
            norm.push((&start - start.floor(), len));
        }
        norm.sort();
        let s = IntervalSet { arcs: norm };
        if s.measure() > BigRational::one() || !s.is_disjoint() {
            return Err(Error::InvalidInput("arcs overlap".into()));
        }
        Ok(s)
    }

    /// `(start, end)` pairs with `end = start + length`, possibly above 1.
    pub fn arcs(&self) -> impl Iterator<Item = (BigRational, BigRational)> + '_ {
        self.arcs.iter().map(|(s, l)| (s.clone(), s + l))
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn measure(&self) -> BigRational {
        self.arcs.iter().fold(BigRational::zero(), |acc, (_, l)| acc + l)
    }

    fn is_disjoint(&self) -> bool {
        let n = self.arcs.len();
        (0..n).all(|i| {
            let (s, l) = &self.arcs[i];
            let (next, _) = &self.arcs[(i + 1) % n];
            // successor start, lifted above s (the last arc wraps to the first)
            let next = if i + 1 == n { next + BigRational::one() } else { next.clone() };
            n == 1 || s + l <= next
        })
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let x = x - x.floor();
        self.arcs.iter().any(|(s, l)| {
            let e = s + l;
            (s <= &x && x < e) || (x.clone() + BigRational::one() >= *s && x.clone() + BigRational::one() < e)
        })
    }

    /// Whether some `d_j` lies in `A - A` (mod 1). For arcs `I`, `J` the
    /// differences fill the open interval `(l_I - u_J, u_I - l_J)`.
    pub fn meets_differences(&self, ds: &[BigRational]) -> Option<BigRational> {
        for (li, ui) in self.arcs() {
            for (lj, uj) in self.arcs() {
                let lo = &li - &uj;
                let hi = &ui - &lj;
                for d in ds {
                    // an integer m with lo < d + m < hi
                    let m = (&lo - d).floor() + BigRational::one();
                    if d + &m < hi {
                        return Some(d.clone());
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs().map(|(s, e)| format!("[{s}, {e})")).collect();
        write!(f, "{} mod 1", parts.join(" ∪ "))
    }
}

/// `{x : n·x mod 1 ∈ [-b/2, b/2)}`: `|n|` arcs of length `b/|n|`, total measure
/// `b`, checked to avoid every difference.
pub fn interval_construction(fractions: &[BigRational], n: &BigInt, target_b: &BigRational) -> Result<IntervalSet> {
    if n.is_zero() {
        return Err(Error::InvalidInput("n must be nonzero".into()));
    }
    if !target_b.is_positive() || target_b > &BigRational::one() {
        return Err(Error::InvalidInput("b must lie in (0, 1]".into()));
    }
    let count = n.abs().to_u64().filter(|&c| c <= MAX_INTERVALS).ok_or_else(|| Error::cap("interval count |n|", n, MAX_INTERVALS))?;
    let nn = BigRational::from_integer(n.abs());
    let half = target_b / BigRational::from_integer(2.into());
    let arcs = (0..count)
        .map(|j| {
            let start = (BigRational::from_integer(j.into()) - &half) / &nn;
            (start, target_b / &nn)
        })
        .collect();
    let set = IntervalSet::new(arcs)?;
    if let Some(d) = set.meets_differences(fractions) {
        return Err(Error::NotAvoiding(format!("{d} is a difference of {set}")));
    }
    Ok(set)
}
