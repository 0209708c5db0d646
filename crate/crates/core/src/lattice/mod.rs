//! Integer lattices and the exact linear algebra behind them.

mod matrix;
mod smith;

pub use matrix::{dot, IntMatrix, RationalMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A sublattice of `Z^r` given by linearly independent basis rows.
///
/// The rank-0 lattice `{0}` is an ordinary value with an empty basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// Fails with [`Error::DependentRows`] unless the rows are independent over Q.
    pub fn new(ambient_dim: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let basis = IntMatrix::from_rows(ambient_dim, &rows)?;
        Self::from_basis(ambient_dim, basis)
    }

    pub fn from_basis(ambient_dim: usize, basis: IntMatrix) -> Result<Self> {
        if basis.cols() != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} columns in ambient dimension {ambient_dim}",
                basis.cols()
            )));
        }
        if basis.rank() != basis.rows() {
            return Err(Error::DependentRows);
        }
        Ok(Lattice { ambient_dim, basis })
    }

    pub fn from_i64(ambient_dim: usize, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(ambient_dim, rows)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: IntMatrix::zeros(0, ambient_dim),
        }
    }

    /// The lattice spanned by an arbitrary (possibly dependent) generating set.
    pub fn from_generators(ambient_dim: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        if generators.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = IntMatrix::from_rows(ambient_dim, generators)?;
        let snf = smith_normal_form(&m);
        // Z^n · M = Z^n · S · V, whose nonzero part is spanned by α_i · V_i.
        let rows = snf
            .invariant_factors
            .iter()
            .enumerate()
            .map(|(i, a)| snf.v.row(i).iter().map(|x| x * a).collect())
            .collect();
        Self::new(ambient_dim, rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        self.basis.to_rows()
    }

    pub fn smith(&self) -> SmithDecomposition {
        smith_normal_form(&self.basis)
    }

    /// True iff every invariant factor of the basis equals 1.
    pub fn is_primitive(&self) -> bool {
        self.smith().invariant_factors.iter().all(|a| a.is_one())
    }

    /// Product of the invariant factors: `[span_Q(Λ) ∩ Z^r : Λ]`.
    pub fn saturation_index(&self) -> BigInt {
        self.smith().invariant_factors.iter().product()
    }

    /// A primitive basis of `span_Q(Λ) ∩ Z^r`, obtained by setting every
    /// invariant factor to 1.
    pub fn primitive_basis_of_span(&self) -> Lattice {
        let snf = self.smith();
        let d = self.rank();
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = vec![BigInt::zero(); self.ambient_dim];
            for k in 0..d {
                let c = &snf.u[(i, k)];
                if c.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(snf.v.row(k)) {
                    *x += c * y;
                }
            }
            rows.push(row);
        }
        Lattice::new(self.ambient_dim, rows).expect("unimodular image of independent rows")
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let d = self.rank();
        if d == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let snf = self.smith();
        // v = x · U · S · V  <=>  v · V^{-1} = (x · U) · S
        let y = snf.v_inv.left_apply(v);
        if y[d..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut z = Vec::with_capacity(d);
        for (yi, a) in y.iter().zip(&snf.invariant_factors) {
            let (q, r) = yi.div_rem(a);
            if !r.is_zero() {
                return None;
            }
            z.push(q);
        }
        Some(snf.u_inv.left_apply(&z))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Equal as sets, decided by mutual basis membership.
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rank() == other.rank()
            && (0..self.rank()).all(|i| other.contains(self.basis.row(i)))
            && (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    /// `Λ* = {v ∈ span_R(Λ) : v · x ∈ Z for all x ∈ Λ}` as rows `(B Bᵀ)^{-1} B`.
    pub fn dual_basis(&self) -> Result<RationalMatrix> {
        if self.rank() == 0 {
            return Err(Error::InvalidInput("dual of the zero lattice".into()));
        }
        let b = RationalMatrix::from_int(&self.basis);
        let gram = b.mul(&b.transpose())?;
        gram.inverse()?.mul(&b)
    }

    /// A rank `r - d` lattice `S` with `span_Q(S) ⊕ span_Q(Λ) = Q^r`: the
    /// trailing rows of the Smith transform `V`.
    pub fn complement(&self) -> Lattice {
        let snf = self.smith();
        let rows = (self.rank()..self.ambient_dim).map(|i| snf.v.row_vec(i)).collect();
        Lattice::new(self.ambient_dim, rows).expect("rows of a unimodular matrix")
    }
}

/// `{n ∈ Z^r : b · n = 0}` for a `k × r` matrix `b`; always primitive.
pub fn kernel_lattice(b: &IntMatrix) -> Lattice {
    let snf = smith_normal_form(b);
    let r = b.cols();
    // b n = 0  <=>  S V n = 0  <=>  (V n)_i = 0 for i < rank
    let rows = (snf.rank()..r).map(|j| snf.v_inv.column(j)).collect();
    Lattice::new(r, rows).expect("columns of a unimodular matrix")
}

/// Dual basis of `l`; see [`Lattice::dual_basis`].
pub fn dual_lattice_basis(l: &Lattice) -> Result<RationalMatrix> {
    l.dual_basis()
}

pub fn rational_dot(a: &[BigRational], b: &[BigInt]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * BigRational::from_integer(y.clone()))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_and_dependence() {
        assert_eq!(Lattice::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap().rank(), 2);
        assert_eq!(Lattice::from_i64(2, &[&[2, 4]]).unwrap().rank(), 1);
        assert_eq!(
            Lattice::from_i64(2, &[&[1, 2], &[2, 4]]),
            Err(Error::DependentRows)
        );
    }

    #[test]
    fn primitivity() {
        assert!(Lattice::from_i64(3, &[&[1, 0, 0]]).unwrap().is_primitive());
        assert!(!Lattice::from_i64(2, &[&[2, 4]]).unwrap().is_primitive());
        assert!(Lattice::from_i64(2, &[&[2, 3]]).unwrap().is_primitive());
    }

    #[test]
    fn saturation() {
        let idx = |rows: &[&[i64]]| Lattice::from_i64(2, rows).unwrap().saturation_index();
        assert_eq!(idx(&[&[1, 0]]), BigInt::from(1));
        assert_eq!(idx(&[&[2, 4]]), BigInt::from(2));
        assert_eq!(idx(&[&[2, 0], &[0, 3]]), BigInt::from(6));
    }

    #[test]
    fn primitive_span() {
        let p = Lattice::from_i64(2, &[&[2, 4]]).unwrap().primitive_basis_of_span();
        let row = p.basis().row_vec(0);
        assert!(row == v(&[1, 2]) || row == v(&[-1, -2]));

        let e = Lattice::from_i64(3, &[&[1, 0, 0]]).unwrap();
        assert!(e.primitive_basis_of_span().same_lattice(&e));

        let p = Lattice::from_i64(2, &[&[1, 0], &[0, 2]]).unwrap().primitive_basis_of_span();
        assert!(p.same_lattice(&Lattice::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap()));
    }

    #[test]
    fn kernels() {
        let k = kernel_lattice(&IntMatrix::from_i64_rows(&[&[1, 2]]));
        let row = k.basis().row_vec(0);
        assert!(row == v(&[2, -1]) || row == v(&[-2, 1]));
        let k = kernel_lattice(&IntMatrix::from_i64_rows(&[&[1, 1]]));
        let row = k.basis().row_vec(0);
        assert!(row == v(&[1, -1]) || row == v(&[-1, 1]));
        assert_eq!(kernel_lattice(&IntMatrix::identity(2)).rank(), 0);
    }

    #[test]
    fn duals() {
        let d = Lattice::from_i64(1, &[&[2]]).unwrap().dual_basis().unwrap();
        assert_eq!(d.row(0), &[q(1, 2)]);
        let d = Lattice::from_i64(2, &[&[1, 2]]).unwrap().dual_basis().unwrap();
        assert_eq!(d.row(0), &[q(1, 5), q(2, 5)]);
        let d = Lattice::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap().dual_basis().unwrap();
        assert_eq!(d, RationalMatrix::from_int(&IntMatrix::identity(2)));
        assert!(Lattice::zero(2).dual_basis().is_err());
    }

    #[test]
    fn membership_and_generators() {
        let l = Lattice::from_i64(2, &[&[2, 0], &[1, 3]]).unwrap();
        assert!(l.contains(&v(&[3, 3])));
        assert!(l.contains(&v(&[0, 6])));
        assert!(!l.contains(&v(&[1, 0])));
        let g = Lattice::from_generators(2, &[v(&[2, 0]), v(&[1, 3]), v(&[3, 3])]).unwrap();
        assert!(g.same_lattice(&l));
        assert_eq!(Lattice::from_generators(2, &[]).unwrap().rank(), 0);
    }

    #[test]
    fn complement_is_complementary() {
        let l = Lattice::from_i64(3, &[&[1, 3, 8]]).unwrap();
        let s = l.complement();
        assert_eq!(s.rank(), 2);
        let mut rows = l.basis_rows();
        rows.extend(s.basis_rows());
        assert_eq!(IntMatrix::from_rows(3, &rows).unwrap().rank(), 3);
    }
}
