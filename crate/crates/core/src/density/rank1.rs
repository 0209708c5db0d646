//! Lattices `Λ = Z·m` of rank one: the value `⌊k/2⌋/k` with `k = ‖m‖₁`,
//! the tile `C_S` and an explicit periodic optimum.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::periodic::{verify_avoiding, PeriodicSet};
use super::tiling::tile_upper_bound;
use crate::error::{Error, Result};
use crate::group::{basis_images, project_all, quotient_of, DifferenceProblem, GroupElement};
use crate::lattice::Lattice;
use crate::options::SolverOptions;
use crate::report::{BoundEntry, DensityReport, Method, Witness};

fn l1(m: &[BigInt]) -> BigInt {
    m.iter().map(Signed::abs).sum()
}

pub fn rank1_density(m: &[BigInt]) -> Result<BigRational> {
    let k = l1(m);
    if k.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(BigRational::new(&k / BigInt::from(2), k))
}

/// The missing-difference problem `B_Λ` in `Z^r / Z·m`.
pub fn rank1_problem(m: &[BigInt]) -> Result<DifferenceProblem> {
    if m.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    basis_images(&quotient_of(&Lattice::new(m.len(), vec![m.to_vec()])?))
}

/// Geometry of `Λ ⊕ S` for `S = ⊕ Z(e_{j+1} - e_j)` over the nonzero
/// coordinates, extended by `e_i` on the zero ones. All vectors are in the
/// original coordinates, signs included.
///
/// `C_S` is any set holding one point of each coordinate sum `0..k`: such a
/// set tiles `Z^r` with complement `Λ ⊕ S`, since `S` is exactly the integer
/// part of `u^⊥`.
struct Rank1Layout {
    k: u64,
    /// `x_j`, the point of `C_S` with coordinate sum `j` (after sign flips);
    /// consecutive points differ by a unit vector, so `C_S` induces a `k`-cycle
    points: Vec<Vec<BigInt>>,
    /// generators of `S` along the nonzero coordinates
    s: Vec<Vec<BigInt>>,
    sign: Vec<i64>,
    nonzero: Vec<usize>,
    zero: Vec<usize>,
}

const MAX_RANK1_K: u64 = 1 << 20;

impl Rank1Layout {
    fn new(m: &[BigInt]) -> Result<Self> {
        let r = m.len();
        let k = l1(m);
        if k.is_zero() {
            return Err(Error::ZeroVector);
        }
        let k = k.to_u64().filter(|&k| k <= MAX_RANK1_K).ok_or_else(|| Error::cap("‖m‖₁", &k, MAX_RANK1_K))?;
        let sign: Vec<i64> = m.iter().map(|x| if x.is_negative() { -1 } else { 1 }).collect();
        let nonzero: Vec<usize> = (0..r).filter(|&i| !m[i].is_zero()).collect();
        let zero: Vec<usize> = (0..r).filter(|&i| m[i].is_zero()).collect();
        let abs: Vec<u64> = nonzero.iter().map(|&i| m[i].abs().to_u64().expect("bounded by k")).collect();

        // a monotone lattice path 0 → |m| of k unit steps, always advancing the
        // coordinate furthest behind the line through |m| (smallest index on ties)
        let mut points = Vec::with_capacity(k as usize);
        let mut x = vec![0u64; abs.len()];
        for j in 0..k {
            points.push(
                (0..r)
                    .map(|i| match nonzero.iter().position(|&n| n == i) {
                        Some(t) => BigInt::from(sign[i] * x[t] as i64),
                        None => BigInt::zero(),
                    })
                    .collect(),
            );
            let next = (0..abs.len())
                .filter(|&t| x[t] < abs[t])
                .max_by_key(|&t| ((j + 1) as i128 * abs[t] as i128 - k as i128 * x[t] as i128, std::cmp::Reverse(t)));
            if let Some(t) = next {
                x[t] += 1;
            }
        }
        let s = nonzero
            .windows(2)
            .map(|w| {
                let mut v = vec![BigInt::zero(); r];
                v[w[0]] = BigInt::from(-sign[w[0]]);
                v[w[1]] = BigInt::from(sign[w[1]]);
                v
            })
            .collect();
        Ok(Rank1Layout {
            k,
            points,
            s,
            sign,
            nonzero,
            zero,
        })
    }

    fn unit(&self, i: usize, scale: i64) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.sign.len()];
        v[i] = BigInt::from(scale);
        v
    }

    /// Periods of the construction: `S`, and `e_i + e_{j₀}` (signed) for each
    /// zero coordinate `i`, which shifts a copy of the nonzero-part set along
    /// `e_i` by one step of `e_{j₀}`.
    fn construction_periods(&self) -> Vec<Vec<BigInt>> {
        let j0 = self.nonzero[0];
        let mut out = self.s.clone();
        for &i in &self.zero {
            let mut v = self.unit(i, 1);
            v[j0] = BigInt::from(self.sign[j0]);
            out.push(v);
        }
        out
    }

    /// Periods of the tiling complement of `C_S`: `S` and every `e_i` on the
    /// zero coordinates.
    fn tile_periods(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.s.clone();
        out.extend(self.zero.iter().map(|&i| self.unit(i, 1)));
        out
    }

    /// `{x_j : j even, j ≠ k - 1}`; for even `k` this is every even `j`.
    fn cell(&self) -> Vec<Vec<BigInt>> {
        self.points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j % 2 == 0 && (self.k.is_multiple_of(2) || j as u64 != self.k - 1))
            .map(|(_, x)| x.clone())
            .collect()
    }
}

/// `C_S` as group elements, ordered by coordinate sum.
pub fn rank1_tile(m: &[BigInt]) -> Result<Vec<GroupElement>> {
    let layout = Rank1Layout::new(m)?;
    let g = quotient_of(&Lattice::new(m.len(), vec![m.to_vec()])?);
    Ok(project_all(&g, &layout.points))
}

/// The periodic set `P + S` with `P = {x ∈ C_S : u·x even, u·x ≠ k - 1}`, of
/// density `⌊k/2⌋/k`.
pub fn rank1_construction(m: &[BigInt]) -> Result<PeriodicSet> {
    if m.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidInput("every entry must be positive; use rank1_construction_general".into()));
    }
    rank1_construction_general(m)
}

/// As [`rank1_construction`], for any nonzero `m`: negative entries are
/// handled by reflecting coordinates, zero entries by extra periods.
pub fn rank1_construction_general(m: &[BigInt]) -> Result<PeriodicSet> {
    let layout = Rank1Layout::new(m)?;
    let p = rank1_problem(m)?;
    let g = &p.group;
    let s = PeriodicSet::new(
        g.clone(),
        project_all(g, &layout.construction_periods()),
        project_all(g, &layout.cell()),
    )?;
    if !verify_avoiding(&s, &p) {
        return Err(Error::NotAvoiding(format!("rank-1 construction {s}")));
    }
    Ok(s)
}

/// Exact report: the construction below, `C_S` with its verified tiling above.
pub fn rank1_report(m: &[BigInt], opts: &SolverOptions) -> Result<DensityReport> {
    let value = rank1_density(m)?;
    let layout = Rank1Layout::new(m)?;
    let p = rank1_problem(m)?;
    let g = &p.group;
    let witness = rank1_construction_general(m)?;
    let mut entries = vec![
        BoundEntry::lower(witness.density(), Method::Rank1Construction).with_witness(Witness::Periodic(witness.clone())),
    ];
    let mut notes = Vec::new();
    if layout.points.len() <= opts.mis_cap {
        let tile = project_all(g, &layout.points);
        let complement = PeriodicSet::new(g.clone(), project_all(g, &layout.tile_periods()), vec![g.zero()])?;
        let bound = tile_upper_bound(&p, &tile, Some(&complement), opts)?;
        let entry = BoundEntry::upper(
            bound.value.clone(),
            Method::Tile {
                name: format!("C_S ({} points)", tile.len()),
                verified: bound.verified,
            },
        );
        if bound.value != value {
            notes.push(format!("rank-1 mismatch: formula {value}, tile {}", bound.value));
        }
        entries.push(if bound.verified { entry } else { entry.untrusted() });
    } else {
        notes.push(format!("tile C_S has {} points, above the independent-set cap", layout.points.len()));
    }
    if witness.density() != value {
        notes.push(format!("rank-1 mismatch: formula {value}, construction {}", witness.density()));
    }
    entries.push(BoundEntry::upper(value, Method::Rank1Formula));
    DensityReport::from_entries(entries, notes)
}

/// Whether the problem is `B_Λ` for a rank-one `Λ`; returns the generator.
pub fn rank1_generator(p: &DifferenceProblem) -> Option<Vec<BigInt>> {
    let l = p.group.lattice();
    if l.rank() != 1 {
        return None;
    }
    let expected = basis_images(&p.group).ok()?;
    (expected.differences == p.differences).then(|| l.basis_rows().remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::window::corank1_exact;
    use crate::group::induced_cayley_graph;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn formula_values() {
        assert_eq!(rank1_density(&v(&[1, 2])).unwrap(), q(1, 3));
        assert_eq!(rank1_density(&v(&[1, 1])).unwrap(), q(1, 2));
        assert_eq!(rank1_density(&v(&[3, -1, 1])).unwrap(), q(2, 5));
        assert_eq!(rank1_density(&v(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn constructions() {
        let s = rank1_construction(&v(&[1, 2])).unwrap();
        assert_eq!(s.cell().len(), 1);
        assert_eq!(s.density(), q(1, 3));
        let s = rank1_construction(&v(&[1, 1])).unwrap();
        assert_eq!(s.density(), q(1, 2));
        let s = rank1_construction(&v(&[2, 3])).unwrap();
        assert_eq!(s.cell().len(), 2);
        assert_eq!(s.density(), q(2, 5));
        assert!(rank1_construction(&v(&[2, -3])).is_err());
    }

    #[test]
    fn signs_and_zero_coordinates() {
        for m in [&[3, -1, 1][..], &[0, 1, 2], &[2, 0, -3], &[0, -4, 0, 1], &[-2, -2]] {
            let m = v(m);
            let r = rank1_report(&m, &SolverOptions::default()).unwrap();
            assert_eq!(r.exact, Some(rank1_density(&m).unwrap()), "{m:?}");
            assert!(r.notes.is_empty(), "{:?}", r.notes);
            assert!(matches!(r.upper.method, Method::Tile { verified: true, .. }));
        }
    }

    #[test]
    fn tile_is_an_odd_cycle() {
        let m = v(&[2, 1, 2]);
        let p = rank1_problem(&m).unwrap();
        let g = induced_cayley_graph(&p, rank1_tile(&m).unwrap()).unwrap();
        assert_eq!(g.len(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn two_coordinates_match_corank_one() {
        for m in [[1, 2], [2, 3], [1, 4], [3, 4], [2, 2]] {
            let m = v(&m);
            let p = rank1_problem(&m).unwrap();
            let s = corank1_exact(&p, &SolverOptions::default()).unwrap();
            assert_eq!(s.density, rank1_density(&m).unwrap(), "{m:?}");
        }
    }

    #[test]
    fn recognizes_generators() {
        let m = v(&[1, 2]);
        assert_eq!(rank1_generator(&rank1_problem(&m).unwrap()).map(|g| l1(&g)), Some(BigInt::from(3)));
    }
}
