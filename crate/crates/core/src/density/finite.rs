use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::mis::max_independent_set_adjacency;
use super::periodic::{verify_avoiding, PeriodicSet};
use crate::error::{Error, Result};
use crate::group::{induced_cayley_graph, DifferenceProblem, GroupElement};
use crate::options::SolverOptions;
use crate::report::{BoundEntry, DensityReport, Method, Witness};

/// `α(Cay(G, ±D)) / |G|` for a finite quotient, with the maximum independent
/// set as a witness.
pub fn density_finite_group(p: &DifferenceProblem, opts: &SolverOptions) -> Result<DensityReport> {
    let g = &p.group;
    if !g.is_finite() {
        return Err(Error::InvalidInput(format!("{} is not finite", g.describe())));
    }
    let elements = g.elements(opts.mis_cap as u64)?;
    let graph = induced_cayley_graph(p, elements)?;
    let best = max_independent_set_adjacency(&graph.adjacency, opts.mis_cap)?;
    let cell: Vec<GroupElement> = best.vertices.iter().map(|&v| graph.vertices[v].clone()).collect();
    let witness = PeriodicSet::finite(g.clone(), cell)?;
    debug_assert!(verify_avoiding(&witness, p));
    let value = witness.density();
    DensityReport::from_entries(
        vec![
            BoundEntry::lower(value.clone(), Method::FiniteIndependence).with_witness(Witness::Periodic(witness)),
            BoundEntry::upper(value, Method::FiniteIndependence),
        ],
        vec![],
    )
}

/// Best set invariant under `t·Z^f` on the free part, over every `t` whose
/// finite quotient stays within the independent-set cap.
///
/// Every such set is a verified periodic lower bound; `None` when every
/// candidate period is killed by a difference.
pub fn small_period_search(p: &DifferenceProblem, opts: &SolverOptions) -> Result<Option<(u64, PeriodicSet)>> {
    let g = &p.group;
    let f = g.free_rank();
    let torsion = g.torsion_order().to_u64().unwrap_or(u64::MAX);
    let mut best: Option<(u64, PeriodicSet)> = None;
    for t in 1u64.. {
        let size = (t as u128).pow(f as u32) * u128::from(torsion);
        if size > opts.mis_cap as u128 || (f == 0 && t > 1) {
            break;
        }
        let periods: Vec<GroupElement> = (0..f)
            .map(|j| {
                let mut e = g.zero();
                e.free[j] = BigInt::from(t);
                e
            })
            .collect();
        if let Some(s) = best_with_periods(p, periods, opts)? {
            if best.as_ref().is_none_or(|(_, b)| s.density() > b.density()) {
                best = Some((t, s));
            }
        }
    }
    Ok(best)
}

/// Maximum avoiding set among those invariant under the given periods.
pub fn best_with_periods(
    p: &DifferenceProblem,
    periods: Vec<GroupElement>,
    opts: &SolverOptions,
) -> Result<Option<PeriodicSet>> {
    let g = &p.group;
    let empty = PeriodicSet::new(g.clone(), periods.clone(), vec![])?;
    let red = empty.reduction().clone();
    let classes = red.elements(opts.mis_cap as u64)?;
    let index: HashMap<&GroupElement, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let ds: Vec<GroupElement> = p.differences.iter().map(|d| empty.project(d)).collect();
    if ds.iter().any(GroupElement::is_zero) {
        return Ok(None);
    }
    let adjacency: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut nbrs: Vec<usize> = ds
                .iter()
                .flat_map(|d| [red.add(c, d), red.sub(c, d)])
                .map(|x| index[&x])
                .collect();
            nbrs.sort_unstable();
            nbrs.dedup();
            nbrs
        })
        .collect();
    let mis = max_independent_set_adjacency(&adjacency, opts.mis_cap)?;
    let cell = mis
        .vertices
        .iter()
        .map(|&v| g.canonical(&red.lift(&classes[v])))
        .collect();
    let s = PeriodicSet::new(g.clone(), periods, cell)?;
    if !verify_avoiding(&s, p) {
        return Err(Error::NotAvoiding(format!("small-period set {s}")));
    }
    Ok(Some(s))
}

pub(crate) fn ratio(a: usize, b: &BigInt) -> BigRational {
    if b.is_zero() {
        return BigRational::one();
    }
    BigRational::new(BigInt::from(a), b.clone())
}
