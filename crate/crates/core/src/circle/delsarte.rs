use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::cosine::{Certificate, CosinePolynomial};
use super::lp::cosine_lp;
use crate::error::{Error, Result};
use crate::group::DifferenceProblem;
use crate::options::SolverOptions;

/// A certified upper bound `1/C(0)` from a nonnegative cosine polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelsarteBound {
    pub bound: BigRational,
    pub polynomial: CosinePolynomial,
    pub certificate: Certificate,
    /// `None` when the polynomial is the closed-form Fejér kernel.
    pub grid: Option<u32>,
    /// Candidate objective `C(0)` before shrinking, when an LP was solved.
    pub lp_value: Option<BigRational>,
    /// Factor applied to the LP coefficients to reach certified positivity.
    pub shrink: BigRational,
}

/// `c_k = 2(1 - k/(n+1))` for `k = 1..=n`; `C(0) = n + 1`.
pub fn fejer_polynomial(n: u64) -> CosinePolynomial {
    let terms = (1..=n)
        .map(|k| (k, BigRational::new(BigInt::from(2 * (n + 1 - k)), BigInt::from(n + 1))))
        .collect();
    CosinePolynomial::new(terms).expect("distinct positive frequencies")
}

/// `1/(n+1)`, the bound for `{x, 2x, …, nx}`, and its extremal kernel.
pub fn fejer_bound(n: u64) -> Result<(BigRational, CosinePolynomial)> {
    if n == 0 {
        return Err(Error::InvalidInput("Fejér order must be positive".into()));
    }
    let c = fejer_polynomial(n);
    Ok((certified_bound(&c)?, c))
}

/// `1/C(0)`, but only after the exact positivity check succeeds.
pub fn certified_bound(c: &CosinePolynomial) -> Result<BigRational> {
    if !c.sturm_certify().is_nonnegative() {
        return Err(Error::CertificationFailed { attempts: 1 });
    }
    let v = c.value_at_zero();
    if !v.is_positive() {
        return Err(Error::InvalidInput("C(0) must be positive".into()));
    }
    Ok(BigRational::one() / v)
}

/// Delsarte bound for the support `K`: the Fejér kernel when `K = {1..n}`,
/// otherwise the grid LP candidate shrunk by `s_j = 1 - 10^-6·4^j` until it
/// certifies.
pub fn delsarte_for_support(support: &[u64], opts: &SolverOptions) -> Result<DelsarteBound> {
    let mut ks = support.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let n = ks.len() as u64;
    if n > 0 && ks.iter().copied().eq(1..=n) {
        let polynomial = fejer_polynomial(n);
        let certificate = polynomial.sturm_certify();
        if certificate.is_nonnegative() {
            return Ok(DelsarteBound {
                bound: BigRational::one() / polynomial.value_at_zero(),
                polynomial,
                certificate,
                grid: None,
                lp_value: None,
                shrink: BigRational::one(),
            });
        }
    }
    let max = *ks.last().ok_or_else(|| Error::InvalidInput("empty cosine support".into()))?;
    let grid = opts.grid_for(max);
    let candidate = cosine_lp(&ks, grid, &opts.lp_margin)?;
    let unit = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    let mut step = unit;
    for _ in 0..opts.shrink_attempts {
        let s = BigRational::one() - &step;
        if !s.is_positive() {
            break;
        }
        let polynomial = candidate.polynomial.scaled(&s);
        let certificate = polynomial.sturm_certify();
        if certificate.is_nonnegative() {
            return Ok(DelsarteBound {
                bound: BigRational::one() / polynomial.value_at_zero(),
                polynomial,
                certificate,
                grid: Some(grid),
                lp_value: Some(candidate.value_at_zero()),
                shrink: s,
            });
        }
        step *= BigRational::from_integer(BigInt::from(4));
    }
    Err(Error::CertificationFailed {
        attempts: opts.shrink_attempts,
    })
}

/// Applies to problems `{k_1 x, …, k_r x}` in `Z` or a cyclic group.
pub fn delsarte_upper_bound(p: &DifferenceProblem, opts: &SolverOptions) -> Result<DelsarteBound> {
    let ks = p.cyclic_multipliers().ok_or_else(|| {
        Error::NoConstructionApplicable(format!("{} is not cyclic", p.group.describe()))
    })?;
    delsarte_for_support(&ks, opts)
}
