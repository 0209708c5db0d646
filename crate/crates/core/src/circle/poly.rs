use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        Polynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") / &lead;
            if !c.is_zero() {
                for (i, b) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * b;
                }
            }
            quot[k] = c;
            rem.pop();
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(BigRational::one() / self.leading()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's decomposition `p = c · Π a_i^i` with monic, square-free and
    /// pairwise coprime `a_i`; entry `i - 1` holds `a_i`.
    pub fn square_free_factors(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let dp = self.derivative();
        let mut c = self.gcd(&dp);
        let mut w = self.div_rem(&c).0.monic();
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            out.push(w.div_rem(&y).0.monic());
            c = c.div_rem(&y).0;
            w = y;
        }
        out
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn square_free_part(&self) -> Polynomial {
        self.square_free_factors()
            .iter()
            .fold(Polynomial::constant(BigRational::one()), |acc, f| acc.mul(f))
    }

    /// Product of the factors of odd multiplicity: exactly the sign changes.
    pub fn odd_multiplicity_part(&self) -> Polynomial {
        self.square_free_factors()
            .iter()
            .step_by(2)
            .fold(Polynomial::constant(BigRational::one()), |acc, f| acc.mul(f))
    }

    pub fn sturm_sequence(&self) -> SturmSequence {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return SturmSequence { seq };
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().expect("nonempty").div_rem(&next).1;
            seq.push(next);
            next = r.scale(&-BigRational::one());
        }
        SturmSequence { seq }
    }

    /// `T_0, …, T_n` from `T_{k+1} = 2x T_k - T_{k-1}`.
    pub fn chebyshev_up_to(n: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::constant(BigRational::one())];
        if n >= 1 {
            out.push(Polynomial::x());
        }
        let two_x = Polynomial::x().scale(&BigRational::from_integer(2.into()));
        while out.len() <= n {
            let k = out.len();
            out.push(two_x.mul(&out[k - 1]).sub(&out[k - 2]));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}·x")?,
                _ if a.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{a}·x^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmSequence {
    seq: Vec<Polynomial>,
}

impl SturmSequence {
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Sign changes at `x`, zeros dropped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let signs: Vec<bool> = self
            .seq
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(a, b]` of the square-free generator.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn chebyshev_values() {
        let t = Polynomial::chebyshev_up_to(8);
        assert_eq!(t[2], poly(&[-1, 0, 2]));
        assert_eq!(t[3], poly(&[0, -3, 0, 4]));
        // T_k(cos θ) = cos kθ; at θ = π/3, cos θ = 1/2
        assert_eq!(t[3].eval(&q(1, 2)), q(-1, 1));
        assert_eq!(t[8].eval(&q(1, 1)), q(1, 1));
    }

    #[test]
    fn division_roundtrip() {
        let a = poly(&[1, 2, 3, 4, 5]);
        let b = poly(&[-1, 0, 2]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn yun_decomposition() {
        // (x - 1)^2 (x + 2)^3 x
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]).mul(&poly(&[2, 1])).mul(&poly(&[2, 1]))).mul(&poly(&[0, 1]));
        let f = p.square_free_factors();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], poly(&[0, 1]));
        assert_eq!(f[1], poly(&[-1, 1]));
        assert_eq!(f[2], poly(&[2, 1]));
        assert_eq!(p.odd_multiplicity_part(), poly(&[0, 1]).mul(&poly(&[2, 1])));
    }

    #[test]
    fn sturm_counts() {
        // (x - 1/2)(x + 1/2)(x - 3)
        let p = poly(&[-1, 2]).mul(&poly(&[1, 2])).mul(&poly(&[-3, 1]));
        let s = p.sturm_sequence();
        assert_eq!(s.count_roots(&q(-1, 1), &q(1, 1)), 2);
        assert_eq!(s.count_roots(&q(-1, 1), &q(4, 1)), 3);
        assert_eq!(s.count_roots(&q(-1, 2), &q(1, 1)), 1);
    }
}
