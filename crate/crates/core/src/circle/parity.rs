use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::density::{tile_upper_bound, verify_avoiding, PeriodicSet, TileBound};
use crate::error::{Error, Result};
use crate::group::{DifferenceProblem, GroupElement, QuotientGroup};
use crate::lattice::Lattice;
use crate::options::SolverOptions;
use crate::report::{BoundEntry, DensityReport, Method, Witness};

fn is_odd_sum(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |acc, x| acc + x).is_odd()
}

/// Whether every basis row of `Λ` has even coordinate sum, i.e. `Λ ⊆ V₀`.
pub fn half_parity_check(l: &Lattice) -> bool {
    l.basis_rows().iter().all(|row| !is_odd_sum(row))
}

/// `V₀ = {x : Σ x_i even}` as generators: `2e_1` and `e_{i+1} - e_i`.
fn even_sublattice_generators(r: usize) -> Vec<Vec<BigInt>> {
    let mut gens = Vec::with_capacity(r);
    let mut first = vec![BigInt::zero(); r];
    first[0] = BigInt::from(2);
    gens.push(first);
    for i in 0..r.saturating_sub(1) {
        let mut s = vec![BigInt::zero(); r];
        s[i] = -BigInt::one();
        s[i + 1] = BigInt::one();
        gens.push(s);
    }
    gens
}

/// Two-sided certificate `1/2 ≤ Md ≤ 1/2` from the parity homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfParity {
    /// `V₀ / Λ`, avoiding because every difference has odd parity.
    pub even_class: PeriodicSet,
    /// `{0, d}` for the first difference; `V₀/Λ` tiles with it exactly.
    pub tile: Vec<GroupElement>,
    pub upper: TileBound,
}

/// Applies when `Λ ⊆ V₀` (so parity is defined on the quotient) and every
/// difference lifts to an odd vector. `None` otherwise.
pub fn half_parity(p: &DifferenceProblem, opts: &SolverOptions) -> Result<Option<HalfParity>> {
    let g: &QuotientGroup = &p.group;
    if g.ambient_dim() == 0 || !half_parity_check(g.lattice()) {
        return Ok(None);
    }
    if !p.differences.iter().all(|d| is_odd_sum(&g.lift(d))) {
        return Ok(None);
    }
    let Some(first) = p.differences.first() else {
        return Ok(None);
    };
    let periods: Vec<GroupElement> = even_sublattice_generators(g.ambient_dim())
        .iter()
        .map(|v| g.canonical(v))
        .collect();
    let even_class = PeriodicSet::new(g.clone(), periods, vec![g.zero()])?;
    if !verify_avoiding(&even_class, p) {
        return Err(Error::NotAvoiding(format!("parity class {even_class}")));
    }
    let tile = vec![g.zero(), first.clone()];
    let upper = tile_upper_bound(p, &tile, Some(&even_class), opts)?;
    Ok(Some(HalfParity {
        even_class,
        tile,
        upper,
    }))
}

/// The half-parity bounds as a report; `None` when the criterion fails.
pub fn half_parity_report(p: &DifferenceProblem, opts: &SolverOptions) -> Result<Option<DensityReport>> {
    let Some(h) = half_parity(p, opts)? else {
        return Ok(None);
    };
    let name = format!("{{0, {}}}", h.tile[1]);
    let mut upper = BoundEntry::upper(
        h.upper.value.clone(),
        Method::Tile {
            name,
            verified: h.upper.verified,
        },
    );
    if !h.upper.verified {
        upper = upper.untrusted();
    }
    let lower = BoundEntry::lower(h.even_class.density(), Method::HalfParity).with_witness(Witness::Periodic(h.even_class));
    DensityReport::from_entries(vec![lower, upper], vec![]).map(Some)
}
