use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `input = u · s · v` with `u`, `v` unimodular and `s` in Smith normal form.
///
/// The inverses of both transforms are tracked alongside, so downstream code
/// never has to invert an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Positive diagonal entries of `s`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

struct Reduction {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

// Every elementary operation keeps `input = u · a · v` and the inverse pair in sync.
impl Reduction {
    fn row_add(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        self.u.add_col_multiple(src, dst, &-f);
        self.u_inv.add_row_multiple(dst, src, f);
    }

    fn col_add(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        self.v.add_row_multiple(src, dst, &-f);
        self.v_inv.add_col_multiple(dst, src, f);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_cols(i, j);
        self.u_inv.swap_rows(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_rows(i, j);
        self.v_inv.swap_cols(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_col(i);
        self.u_inv.negate_row(i);
    }

    /// Smallest nonzero |entry| in the trailing block, ties in row-major order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form by repeated gcd pivoting with explicit transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reduction {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut factors = Vec::new();

    'diag: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = r.pivot(t) else {
                break 'diag;
            };
            r.row_swap(t, pi);
            r.col_swap(t, pj);

            let mut residue = false;
            for i in t + 1..rows {
                if r.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &r.a[(i, t)] / &r.a[(t, t)];
                r.row_add(i, t, &-q);
                residue |= !r.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if r.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &r.a[(t, j)] / &r.a[(t, t)];
                r.col_add(j, t, &-q);
                residue |= !r.a[(t, j)].is_zero();
            }
            if residue {
                continue;
            }

            // Divisibility chain: fold any offending row into the pivot row.
            let p = r.a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(&r.a[(i, j)] % &p).is_zero())
            });
            match offender {
                Some(i) => r.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.row_negate(t);
        }
        factors.push(r.a[(t, t)].clone());
    }

    SmithDecomposition {
        u: r.u,
        u_inv: r.u_inv,
        s: r.a,
        v: r.v,
        v_inv: r.v_inv,
        invariant_factors: factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let d = smith_normal_form(m);
        assert_eq!(&d.u.mul(&d.s).unwrap().mul(&d.v).unwrap(), m);
        assert_eq!(d.u.mul(&d.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        assert_eq!(d.v.mul(&d.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j || i >= d.rank() {
                    assert!(d.s[(i, j)].is_zero(), "stray entry at ({i},{j})");
                }
            }
        }
        for w in d.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        d
    }

    fn factors(m: &IntMatrix) -> Vec<i64> {
        check(m)
            .invariant_factors
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn identity_is_fixed() {
        let d = check(&IntMatrix::identity(2));
        assert_eq!(d.s, IntMatrix::identity(2));
        assert_eq!(factors(&IntMatrix::identity(2)), vec![1, 1]);
    }

    #[test]
    fn single_row_gcd() {
        assert_eq!(factors(&IntMatrix::from_i64_rows(&[&[2, 4]])), vec![2]);
        assert_eq!(factors(&IntMatrix::from_i64_rows(&[&[6, 10, 15]])), vec![1]);
    }

    #[test]
    fn determinantal_divisors() {
        // d1 = gcd of entries = 1, d1*d2 = |det| = 2
        assert_eq!(factors(&IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]])), vec![1, 2]);
        // diag(2,3) has d1 = 1, d2 = 6
        assert_eq!(factors(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(factors(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 4]])), vec![2, 4]);
    }

    #[test]
    fn rank_deficient_and_empty() {
        assert_eq!(factors(&IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])), vec![1]);
        assert!(factors(&IntMatrix::zeros(2, 3)).is_empty());
        let d = check(&IntMatrix::zeros(0, 3));
        assert_eq!(d.v, IntMatrix::identity(3));
    }

    #[test]
    fn deterministic() {
        let m = IntMatrix::from_i64_rows(&[&[4, -6, 2], &[3, 9, -12], &[0, 5, 7]]);
        assert_eq!(smith_normal_form(&m), smith_normal_form(&m));
    }
}
