use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, Lattice};

/// Canonical representative of an element of `Z_{α_1} ⊕ … ⊕ Z_{α_t} ⊕ Z^f`.
///
/// Torsion residues always lie in `[0, α_i)`; free coordinates are unrestricted.
/// The derived ordering (torsion first, then free, lexicographically) is the
/// canonical element order used throughout.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(torsion: Vec<BigInt>, free: Vec<BigInt>) -> Self {
        GroupElement { torsion, free }
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(Zero::is_zero) && self.free.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.torsion.iter().chain(&self.free).map(|x| x.to_string()).collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

/// The group `Z^r / Λ` in the canonical form `Z_{α_1} ⊕ … ⊕ Z_{α_t} ⊕ Z^{r-d}`.
///
/// Coordinates come from the Smith decomposition `L = U S V` of the basis:
/// `x ↦ x V^{-1}` sends `Λ` onto `α_1 Z ⊕ … ⊕ α_d Z ⊕ 0`. Trivial factors are
/// dropped. Each torsion coordinate may additionally be relabelled by a unit,
/// which is how rational-circle problems keep their natural residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGroup {
    lattice: Lattice,
    factors: Vec<BigInt>,
    slots: Vec<usize>,
    free_rank: usize,
    to_canonical: IntMatrix,
    from_canonical: IntMatrix,
    units: Vec<BigInt>,
    unit_inverses: Vec<BigInt>,
}

impl QuotientGroup {
    pub fn of(lattice: &Lattice) -> Self {
        let snf = lattice.smith();
        let d = lattice.rank();
        let (mut factors, mut slots) = (Vec::new(), Vec::new());
        for (i, a) in snf.invariant_factors.iter().enumerate() {
            if !a.is_one() {
                factors.push(a.clone());
                slots.push(i);
            }
        }
        let t = factors.len();
        QuotientGroup {
            lattice: lattice.clone(),
            factors,
            slots,
            free_rank: lattice.ambient_dim() - d,
            to_canonical: snf.v_inv,
            from_canonical: snf.v,
            units: vec![BigInt::one(); t],
            unit_inverses: vec![BigInt::one(); t],
        }
    }

    /// `Z_{a_1} ⊕ … ⊕ Z_{a_t} ⊕ Z^free` presented as `Z^{t+free} / ⊕ a_i Z`.
    pub fn product(moduli: &[BigInt], free_rank: usize) -> Result<Self> {
        let r = moduli.len() + free_rank;
        let mut rows = Vec::new();
        for (i, a) in moduli.iter().enumerate() {
            if !a.is_positive() {
                return Err(Error::InvalidInput(format!("cyclic factor {a} must be positive")));
            }
            let mut row = vec![BigInt::zero(); r];
            row[i] = a.clone();
            rows.push(row);
        }
        Ok(Self::of(&Lattice::new(r, rows)?))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.ambient_dim()
    }

    /// Nontrivial invariant factors `α_i > 1`.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// `Some(|G|)` for finite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn coordinate_transform(&self) -> &IntMatrix {
        &self.to_canonical
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(
            vec![BigInt::zero(); self.factors.len()],
            vec![BigInt::zero(); self.free_rank],
        )
    }

    /// Canonical coordinates of the class of `x ∈ Z^r`.
    pub fn canonical(&self, x: &[BigInt]) -> GroupElement {
        assert_eq!(x.len(), self.ambient_dim(), "ambient vector of wrong length");
        let y = self.to_canonical.left_apply(x);
        let d = self.lattice.rank();
        let torsion = self
            .slots
            .iter()
            .zip(&self.factors)
            .zip(&self.units)
            .map(|((&s, a), u)| (&y[s] * u).mod_floor(a))
            .collect();
        GroupElement::new(torsion, y[d..].to_vec())
    }

    pub fn canonical_i64(&self, x: &[i64]) -> GroupElement {
        let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.canonical(&x)
    }

    /// A representative in `Z^r` of a canonical element.
    pub fn lift(&self, g: &GroupElement) -> Vec<BigInt> {
        let r = self.ambient_dim();
        let d = self.lattice.rank();
        let mut y = vec![BigInt::zero(); r];
        for (((&s, a), ui), t) in self.slots.iter().zip(&self.factors).zip(&self.unit_inverses).zip(&g.torsion) {
            y[s] = (t * ui).mod_floor(a);
        }
        for (k, f) in g.free.iter().enumerate() {
            y[d + k] = f.clone();
        }
        self.from_canonical.left_apply(&y)
    }

    /// Reduces an element with arbitrary torsion integers to canonical form.
    pub fn normalize(&self, mut g: GroupElement) -> GroupElement {
        for (t, a) in g.torsion.iter_mut().zip(&self.factors) {
            *t = t.mod_floor(a);
        }
        g
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.factors)
                .map(|((x, y), m)| (x + y).mod_floor(m))
                .collect(),
            a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.torsion.iter().zip(&self.factors).map(|(x, m)| (-x).mod_floor(m)).collect(),
            a.free.iter().map(|x| -x).collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        GroupElement::new(
            a.torsion.iter().zip(&self.factors).map(|(x, m)| (x * k).mod_floor(m)).collect(),
            a.free.iter().map(|x| x * k).collect(),
        )
    }

    /// Whether `g` is a valid canonical element of this group.
    pub fn is_canonical(&self, g: &GroupElement) -> bool {
        g.torsion.len() == self.factors.len()
            && g.free.len() == self.free_rank
            && g.torsion.iter().zip(&self.factors).all(|(t, a)| !t.is_negative() && t < a)
    }

    /// Enumerates a finite group in canonical order.
    pub fn elements(&self, cap: u64) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::InvalidInput("cannot enumerate an infinite group".into()));
        }
        let n = self.torsion_order();
        if n > BigInt::from(cap) {
            return Err(Error::cap("finite group enumeration", &n, cap));
        }
        Ok(self.torsion_elements())
    }

    /// All torsion residues in lexicographic order (caller checks size).
    pub(crate) fn torsion_elements(&self) -> Vec<GroupElement> {
        let moduli: Vec<u64> = self.factors.iter().map(|a| a.to_u64().expect("capped")).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u64; moduli.len()];
        loop {
            out.push(GroupElement::new(
                cur.iter().map(|&c| BigInt::from(c)).collect(),
                vec![BigInt::zero(); self.free_rank],
            ));
            let mut i = moduli.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < moduli[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Multiplies torsion coordinate `index` by the unit `u` (mod `α_index`).
    pub fn relabel_torsion(&mut self, index: usize, u: &BigInt) -> Result<()> {
        let a = &self.factors[index];
        let ext = u.extended_gcd(a);
        if !ext.gcd.is_one() {
            return Err(Error::InvalidInput(format!("{u} is not a unit modulo {a}")));
        }
        let new_unit = (&self.units[index] * u).mod_floor(a);
        let new_inv = (&self.unit_inverses[index] * ext.x).mod_floor(a);
        self.units[index] = new_unit;
        self.unit_inverses[index] = new_inv;
        Ok(())
    }

    /// e.g. `Z_2 ⊕ Z_6 ⊕ Z^1`
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.factors.iter().map(|a| format!("Z_{a}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn trivial_lattice_is_free() {
        let g = QuotientGroup::of(&Lattice::zero(2));
        assert_eq!(g.free_rank(), 2);
        assert!(g.invariant_factors().is_empty());
    }

    #[test]
    fn primitive_rank_one_drops_unit_factor() {
        let g = QuotientGroup::of(&Lattice::from_i64(2, &[&[1, 2]]).unwrap());
        assert_eq!(g.free_rank(), 1);
        assert!(g.invariant_factors().is_empty());
        let g = QuotientGroup::of(&Lattice::from_i64(2, &[&[2, 2]]).unwrap());
        assert_eq!(g.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(g.describe(), "Z_2 ⊕ Z^1");
    }

    #[test]
    fn roundtrip_modulo_lattice() {
        let l = Lattice::from_i64(3, &[&[2, 4, 6], &[1, -1, 3]]).unwrap();
        let g = QuotientGroup::of(&l);
        for x in [[1, 2, 3], [-5, 7, 0], [0, 0, 1], [9, -9, 4]] {
            let x = big(&x);
            let c = g.canonical(&x);
            assert!(g.is_canonical(&c));
            let back = g.lift(&c);
            let diff: Vec<BigInt> = x.iter().zip(&back).map(|(a, b)| a - b).collect();
            assert!(l.contains(&diff));
        }
    }

    #[test]
    fn homomorphism() {
        let l = Lattice::from_i64(2, &[&[2, 4]]).unwrap();
        let g = QuotientGroup::of(&l);
        let a = g.canonical_i64(&[1, 5]);
        let b = g.canonical_i64(&[-3, 2]);
        assert_eq!(g.add(&a, &b), g.canonical_i64(&[-2, 7]));
        assert!(g.add(&a, &g.neg(&a)).is_zero());
        assert!(g.canonical_i64(&[2, 4]).is_zero());
    }

    #[test]
    fn relabel_keeps_homomorphism() {
        let l = Lattice::from_i64(1, &[&[13]]).unwrap();
        let mut g = QuotientGroup::of(&l);
        g.relabel_torsion(0, &BigInt::from(5)).unwrap();
        let x = g.canonical_i64(&[3]);
        assert_eq!(x.torsion, big(&[2]));
        let back = g.lift(&x);
        assert_eq!(g.canonical(&back), x);
        assert!(g.relabel_torsion(0, &BigInt::from(13)).is_err());
    }

    #[test]
    fn enumerate_finite() {
        let g = QuotientGroup::product(&big(&[2, 3]), 0).unwrap();
        assert_eq!(g.invariant_factors(), &[BigInt::from(6)]);
        assert_eq!(g.elements(100).unwrap().len(), 6);
        assert!(g.elements(5).is_err());
    }
}
