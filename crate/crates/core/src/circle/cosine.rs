use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{Polynomial, SturmSequence};
use crate::error::{Error, Result};

/// `C(t) = 1 + Σ_{k ∈ K} c_k cos(2πkt)` with exact rational `c_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosinePolynomial {
    support: Vec<u64>,
    coefficients: Vec<BigRational>,
}

impl CosinePolynomial {
    /// Terms are sorted by frequency; frequencies must be positive and distinct.
    pub fn new(terms: Vec<(u64, BigRational)>) -> Result<Self> {
        let mut terms = terms;
        terms.sort_by_key(|t| t.0);
        if terms.iter().any(|t| t.0 == 0) {
            return Err(Error::InvalidInput("cosine frequencies must be positive".into()));
        }
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("repeated cosine frequency".into()));
        }
        let (support, coefficients) = terms.into_iter().unzip();
        Ok(CosinePolynomial { support, coefficients })
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.support.iter().copied().zip(&self.coefficients)
    }

    /// `C(0) = 1 + Σ c_k`.
    pub fn value_at_zero(&self) -> BigRational {
        self.coefficients.iter().fold(BigRational::one(), |acc, c| acc + c)
    }

    /// `1 + s·Σ c_k cos(2πkt)`.
    pub fn scaled(&self, s: &BigRational) -> CosinePolynomial {
        CosinePolynomial {
            support: self.support.clone(),
            coefficients: self.coefficients.iter().map(|c| c * s).collect(),
        }
    }

    /// The polynomial `P` with `C(t) = P(cos 2πt)`.
    pub fn in_cosine_variable(&self) -> Polynomial {
        let max = self.support.last().copied().unwrap_or(0) as usize;
        let t = Polynomial::chebyshev_up_to(max);
        self.terms()
            .fold(Polynomial::constant(BigRational::one()), |acc, (k, c)| acc.add(&t[k as usize].scale(c)))
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        1.0 + self
            .terms()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * (std::f64::consts::TAU * k as f64 * t).cos())
            .sum::<f64>()
    }

    /// Exact nonnegativity decision on the whole circle.
    pub fn sturm_certify(&self) -> Certificate {
        sturm_certify(self)
    }
}

impl fmt::Display for CosinePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (k, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}·cos(2π·{k}t)", c.abs())?;
        }
        Ok(())
    }
}

/// Result of the exact positivity check of a cosine polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `P(x) ≥ 0` on `[-1, 1]`: no root of odd multiplicity inside and a
    /// positive sample value.
    Nonnegative {
        polynomial: Polynomial,
        distinct_roots: usize,
        odd_roots: usize,
        sample_x: BigRational,
        sample_value: BigRational,
    },
    /// `P < 0` on the closed rational interval `[x_lo, x_hi]`, which contains
    /// no root of `P`.
    Negative {
        polynomial: Polynomial,
        x_lo: BigRational,
        x_hi: BigRational,
        sample_x: BigRational,
        sample_value: BigRational,
    },
}

impl Certificate {
    pub fn is_nonnegative(&self) -> bool {
        matches!(self, Certificate::Nonnegative { .. })
    }

    /// The `t ∈ [0, 1)` range corresponding to a negative `x`-interval
    /// (decimal, advisory), as `(lo, hi)`; it wraps through `1/2` when the
    /// interval touches `x = -1`.
    pub fn negative_t_range(&self) -> Option<(f64, f64)> {
        let Certificate::Negative { x_lo, x_hi, .. } = self else {
            return None;
        };
        let acos = |x: &BigRational| x.to_f64().unwrap_or(0.0).clamp(-1.0, 1.0).acos() / std::f64::consts::TAU;
        let (t_lo, t_hi) = (acos(x_hi), acos(x_lo));
        if x_lo <= &-BigRational::one() {
            Some((t_lo, 1.0 - t_lo))
        } else if x_hi >= &BigRational::one() {
            Some((-t_hi, t_hi))
        } else {
            Some((t_lo, t_hi))
        }
    }
}

fn sample_points() -> impl Iterator<Item = BigRational> {
    // 0, ±1/2, ±1/3, ±2/3, ±1/4, … : finitely many can be roots
    (2i64..).flat_map(|d| {
        (0..d).flat_map(move |n| {
            let v = BigRational::new(n.into(), d.into());
            if n == 0 {
                vec![v]
            } else {
                vec![v.clone(), -v]
            }
        })
    })
}

/// Runs the exact positivity check for `C(t) = P(cos 2πt)` on `x ∈ [-1, 1]`.
pub fn sturm_certify(c: &CosinePolynomial) -> Certificate {
    let p = c.in_cosine_variable();
    let one = BigRational::one();
    let minus_one = -BigRational::one();
    if p.is_zero() {
        return Certificate::Nonnegative {
            polynomial: p,
            distinct_roots: 0,
            odd_roots: 0,
            sample_x: BigRational::zero(),
            sample_value: BigRational::zero(),
        };
    }
    let sf = p.square_free_part();
    let odd = p.odd_multiplicity_part();
    let sf_seq = sf.sturm_sequence();
    let odd_seq = odd.sturm_sequence();
    let distinct_roots = sf_seq.count_roots(&minus_one, &one) + usize::from(sf.eval(&minus_one).is_zero());
    let odd_inside = odd_seq.count_roots(&minus_one, &one) - usize::from(odd.eval(&one).is_zero());

    if odd_inside == 0 {
        let (x, v) = sample_points()
            .map(|x| {
                let v = p.eval(&x);
                (x, v)
            })
            .find(|(_, v)| !v.is_zero())
            .expect("a nonzero polynomial has finitely many roots");
        if v.is_positive() {
            return Certificate::Nonnegative {
                polynomial: p,
                distinct_roots,
                odd_roots: 0,
                sample_x: x,
                sample_value: v,
            };
        }
        return negative_around(p, &sf_seq, x);
    }

    // Isolate the roots of the square-free part and take an interval whose
    // single root has odd multiplicity: P has opposite signs at its ends.
    let mut stack = vec![(minus_one.clone(), one.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = sf_seq.count_roots(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && odd_seq.count_roots(&a, &b) == 1 && !(b == one && odd.eval(&one).is_zero()) {
            let (pa, pb) = (p.eval(&a), p.eval(&b));
            let x = if pa.is_negative() {
                a
            } else if pb.is_negative() {
                b
            } else {
                // `a` itself is a root (only possible at x = -1); move inward
                let m = split_point(&sf, &a, &b);
                stack.push((m.clone(), b));
                stack.push((a, m));
                continue;
            };
            return negative_around(p, &sf_seq, x);
        }
        if n == 1 {
            continue;
        }
        let m = split_point(&sf, &a, &b);
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    unreachable!("an odd-multiplicity root inside (-1, 1) forces a sign change")
}

/// A point strictly inside `(a, b)` that is not a root of `sf`.
fn split_point(sf: &Polynomial, a: &BigRational, b: &BigRational) -> BigRational {
    (2i64..)
        .map(|k| a + (b - a) / BigRational::from_integer(k.into()))
        .find(|m| !sf.eval(m).is_zero())
        .expect("finitely many roots")
}

/// Shrinks a neighbourhood of `x` (where `P(x) < 0`) inside `[-1, 1]` until
/// it contains no root.
fn negative_around(p: Polynomial, sf_seq: &SturmSequence, x: BigRational) -> Certificate {
    let one = BigRational::one();
    let mut delta = BigRational::one();
    loop {
        let lo = (&x - &delta).max(-one.clone());
        let hi = (&x + &delta).min(one.clone());
        let vlo = p.eval(&lo);
        let vhi = p.eval(&hi);
        if vlo.is_negative() && vhi.is_negative() && sf_seq.count_roots(&lo, &hi) == 0 {
            let sample_value = p.eval(&x);
            return Certificate::Negative {
                polynomial: p,
                x_lo: lo,
                x_hi: hi,
                sample_x: x,
                sample_value,
            };
        }
        delta /= BigRational::from_integer(BigInt::from(2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn cos_poly(terms: &[(u64, i64, i64)]) -> CosinePolynomial {
        CosinePolynomial::new(terms.iter().map(|&(k, n, d)| (k, q(n, d))).collect()).unwrap()
    }

    #[test]
    fn published_triple_is_nonnegative() {
        let c = cos_poly(&[(1, 1553, 6048), (3, 209, 252), (8, 9, 28)]);
        assert_eq!(c.value_at_zero(), q(14561, 6048));
        assert!(c.sturm_certify().is_nonnegative());
    }

    #[test]
    fn one_plus_cos_has_a_double_root() {
        let cert = cos_poly(&[(1, 1, 1)]).sturm_certify();
        match cert {
            Certificate::Nonnegative { distinct_roots, .. } => assert_eq!(distinct_roots, 1),
            other => panic!("expected nonnegative, got {other:?}"),
        }
    }

    #[test]
    fn two_cos_goes_negative_near_half() {
        let cert = cos_poly(&[(1, 2, 1)]).sturm_certify();
        let Certificate::Negative { sample_value, .. } = &cert else {
            panic!("expected a negative certificate");
        };
        assert!(sample_value.is_negative());
        let (lo, hi) = cert.negative_t_range().unwrap();
        assert!(lo < 0.49 && hi > 0.51);
    }

    #[test]
    fn fejer_kernels_are_nonnegative() {
        for n in 1..=6u64 {
            let terms = (1..=n).map(|k| (k, q(2 * (n + 1 - k) as i64, (n + 1) as i64))).collect();
            let c = CosinePolynomial::new(terms).unwrap();
            assert_eq!(c.value_at_zero(), q(n as i64 + 1, 1));
            assert!(c.sturm_certify().is_nonnegative(), "N = {n}");
        }
    }

    #[test]
    fn slight_overshoot_is_caught() {
        // 1 + (1 + 1/1000) cos: negative near t = 1/2
        let c = cos_poly(&[(1, 1001, 1000)]);
        assert!(!c.sturm_certify().is_nonnegative());
    }

    #[test]
    fn rejects_bad_supports() {
        assert!(CosinePolynomial::new(vec![(0, q(1, 1))]).is_err());
        assert!(CosinePolynomial::new(vec![(2, q(1, 1)), (2, q(1, 2))]).is_err());
    }
}
