use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::QuotientGroup;
use crate::lattice::{Lattice, RationalMatrix};

/// Integer points of the half-open parallelepiped `{Σ λ_i b_i : λ ∈ [0,1)^r}`
/// spanned by `r` independent rows, one per coset of the lattice they span.
///
/// Points come out sorted.
pub fn parallelepiped_points(rows: &[Vec<BigInt>], cap: u64) -> Result<Vec<Vec<BigInt>>> {
    let r = rows.first().map_or(0, Vec::len);
    if rows.len() != r {
        return Err(Error::DimensionMismatch(format!("{} rows in dimension {r}", rows.len())));
    }
    let lattice = Lattice::new(r, rows.to_vec())?;
    let q = QuotientGroup::of(&lattice);
    let classes = q.elements(cap)?;
    let b = RationalMatrix::from_int(lattice.basis());
    let inv = b.inverse()?;
    let mut out: Vec<Vec<BigInt>> = classes
        .iter()
        .map(|c| {
            let x = q.lift(c);
            // λ = x·B^{-1}; subtract floor(λ)·B
            let lambda: Vec<BigRational> = (0..r)
                .map(|j| {
                    (0..r).fold(BigRational::zero(), |acc, i| {
                        acc + BigRational::from_integer(x[i].clone()) * &inv.row(i)[j]
                    })
                })
                .collect();
            let mut y = x.clone();
            for (l, row) in lambda.iter().zip(lattice.basis_rows()) {
                let f = l.floor().to_integer();
                for (yi, bi) in y.iter_mut().zip(&row) {
                    *yi -= &f * bi;
                }
            }
            y
        })
        .collect();
    out.sort();
    Ok(out)
}
