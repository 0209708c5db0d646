use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::finite::ratio;
use super::mis::max_independent_set_adjacency;
use super::periodic::PeriodicSet;
use crate::error::{Error, Result};
use crate::group::{folner_box, induced_cayley_graph, DifferenceProblem, GroupElement, QuotientGroup};
use crate::lattice::Lattice;
use crate::options::SolverOptions;

/// `φ(F)/|F|` for a finite vertex set: the best avoiding fraction of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileBound {
    pub value: BigRational,
    /// True only when a supplied complement was checked to tile exactly.
    pub verified: bool,
    pub independent: Vec<GroupElement>,
}

fn avoiding_fraction(p: &DifferenceProblem, vertices: Vec<GroupElement>, opts: &SolverOptions) -> Result<TileBound> {
    let n = vertices.len();
    let graph = induced_cayley_graph(p, vertices)?;
    let best = max_independent_set_adjacency(&graph.adjacency, opts.mis_cap)?;
    Ok(TileBound {
        value: ratio(best.size, &BigInt::from(n)),
        verified: false,
        independent: best.vertices.iter().map(|&v| graph.vertices[v].clone()).collect(),
    })
}

/// `α(G[F_N]) / |F_N|` over the box `F_N`, which always tiles the group.
pub fn folner_upper_bound(p: &DifferenceProblem, n: u32, opts: &SolverOptions) -> Result<BigRational> {
    let size = crate::group::folner_box_size(&p.group, n);
    if size > BigInt::from(opts.mis_cap) {
        return Err(Error::cap("Følner box for the independent-set solver", size, opts.mis_cap));
    }
    let b = folner_box(&p.group, n, opts.enumeration_cap)?;
    Ok(avoiding_fraction(p, b.elements, opts)?.value)
}

/// `(N, |F_N|, bound)` for every radius within the caps, in increasing `N`.
pub fn folner_sequence(p: &DifferenceProblem, opts: &SolverOptions) -> Result<Vec<(u32, usize, BigRational)>> {
    let mut out = Vec::new();
    for n in 0..=opts.max_folner {
        let size = crate::group::folner_box_size(&p.group, n);
        if size > BigInt::from(opts.mis_cap) {
            break;
        }
        let len = usize::try_from(&size).expect("capped");
        out.push((n, len, folner_upper_bound(p, n, opts)?));
        if p.group.is_finite() {
            break;
        }
    }
    Ok(out)
}

/// `φ(tile)/|tile|`; the tiling is checked when a complement is supplied.
pub fn tile_upper_bound(
    p: &DifferenceProblem,
    tile: &[GroupElement],
    complement: Option<&PeriodicSet>,
    opts: &SolverOptions,
) -> Result<TileBound> {
    let mut bound = avoiding_fraction(p, tile.to_vec(), opts)?;
    if let Some(c) = complement {
        bound.verified = c.group() == &p.group && check_tiling_complement(tile, c, opts.enumeration_cap)?;
    }
    Ok(bound)
}

/// Whether `f + c` covers the group exactly once, counted on one period cell.
pub fn check_tiling_complement(f: &[GroupElement], c: &PeriodicSet, cap: u64) -> Result<bool> {
    let red = c.reduction();
    let classes = red.elements(cap)?;
    if (f.len() * c.cell().len()) as u128 != classes.len() as u128 {
        return Ok(false);
    }
    let mut count: HashMap<GroupElement, usize> = HashMap::with_capacity(classes.len());
    for x in f {
        let px = c.project(x);
        for y in c.cell() {
            let e = count.entry(red.add(&px, &c.project(y))).or_insert(0);
            *e += 1;
            if *e > 1 {
                return Ok(false);
            }
        }
    }
    Ok(classes.iter().all(|q| count.get(q) == Some(&1)))
}

/// Largest diameter for which [`integer_tiling_complement`] runs its search.
pub const MAX_TILING_DIAMETER: u32 = 12;

/// A periodic tiling complement of a finite `F ⊂ Z`, or `None` if `F` does
/// not tile `Z`.
///
/// Every tiling of `Z` by a finite set is periodic with period at most
/// `2^diam(F)`, so searching exact covers of `Z_t` for the multiples `t` of
/// `|F|` up to that bound decides tileability.
pub fn integer_tiling_complement(f: &[i64]) -> Result<Option<PeriodicSet>> {
    let Some(&min) = f.iter().min() else {
        return Err(Error::InvalidInput("empty tile".into()));
    };
    let mut shifted: Vec<u64> = f.iter().map(|&x| (x - min) as u64).collect();
    shifted.sort_unstable();
    shifted.dedup();
    let diam = *shifted.last().expect("nonempty") as u32;
    if diam > MAX_TILING_DIAMETER {
        return Err(Error::cap("tile diameter", diam, MAX_TILING_DIAMETER));
    }
    let k = shifted.len() as u64;
    let z = QuotientGroup::of(&Lattice::zero(1));
    let elem = |x: i64| GroupElement::new(vec![], vec![BigInt::from(x)]);
    let mut t = k;
    while t <= 1u64 << diam {
        if let Some(cs) = exact_cover(&shifted, t) {
            // convert the complement of the shifted tile back to the original
            let cell = cs.into_iter().map(|c| elem(c as i64 - min)).collect();
            return Ok(Some(PeriodicSet::new(z, vec![elem(t as i64)], cell)?));
        }
        t += k;
    }
    Ok(None)
}

fn exact_cover(f: &[u64], t: u64) -> Option<Vec<u64>> {
    let t_us = t as usize;
    let mut residues: Vec<usize> = f.iter().map(|&x| (x % t) as usize).collect();
    residues.sort_unstable();
    residues.dedup();
    if residues.len() != f.len() {
        return None;
    }
    let mut covered = vec![false; t_us];
    let mut chosen = Vec::new();
    cover_from(f, t_us, &mut covered, &mut chosen).then_some(chosen)
}

fn cover_from(f: &[u64], t: usize, covered: &mut [bool], chosen: &mut Vec<u64>) -> bool {
    let Some(u) = covered.iter().position(|&c| !c) else {
        return true;
    };
    for &x in f {
        let c = (u + t - (x as usize % t)) % t;
        let cells: Vec<usize> = f.iter().map(|&y| (c + y as usize) % t).collect();
        if cells.iter().any(|&i| covered[i]) {
            continue;
        }
        for &i in &cells {
            covered[i] = true;
        }
        chosen.push(c as u64);
        if cover_from(f, t, covered, chosen) {
            return true;
        }
        chosen.pop();
        for &i in &cells {
            covered[i] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::problem_from_integer_vectors;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z() -> QuotientGroup {
        QuotientGroup::of(&Lattice::zero(1))
    }

    fn e(x: i64) -> GroupElement {
        GroupElement::new(vec![], vec![x.into()])
    }

    fn integers(ds: &[i64]) -> DifferenceProblem {
        let vs: Vec<Vec<BigInt>> = ds.iter().map(|&d| vec![d.into()]).collect();
        problem_from_integer_vectors(&vs).unwrap()
    }

    #[test]
    fn path_of_five() {
        assert_eq!(folner_upper_bound(&integers(&[1]), 2, &SolverOptions::default()).unwrap(), q(3, 5));
    }

    #[test]
    fn singleton_tile() {
        let p = integers(&[1, 3, 8]);
        let b = tile_upper_bound(&p, &[p.group.zero()], None, &SolverOptions::default()).unwrap();
        assert_eq!(b.value, q(1, 1));
        assert!(!b.verified);
    }

    #[test]
    fn tiling_checks() {
        let c = PeriodicSet::new(z(), vec![e(3)], vec![e(0)]).unwrap();
        assert!(check_tiling_complement(&[e(0), e(1), e(2)], &c, 1000).unwrap());
        let gap = PeriodicSet::new(z(), vec![e(6)], vec![e(3)]).unwrap();
        assert!(!check_tiling_complement(&[e(0), e(1), e(2)], &gap, 1000).unwrap());
        let c = PeriodicSet::new(z(), vec![e(4)], vec![e(0), e(1)]).unwrap();
        assert!(check_tiling_complement(&[e(0), e(2)], &c, 1000).unwrap());
    }

    #[test]
    fn integer_tiles() {
        for f in [&[0, 1, 2][..], &[0, 2], &[0, 1, 4, 5], &[-1, 1]] {
            let c = integer_tiling_complement(f).unwrap().expect("tiles");
            let fs: Vec<GroupElement> = f.iter().map(|&x| e(x)).collect();
            assert!(check_tiling_complement(&fs, &c, 1000).unwrap());
        }
        assert!(integer_tiling_complement(&[0, 1, 3]).unwrap().is_none());
        assert!(integer_tiling_complement(&[0, 1, 2, 4]).unwrap().is_none());
    }

    #[test]
    fn finite_folner_sequence_stops_at_the_group() {
        let fs: Vec<BigRational> = [1, 3, 4].iter().map(|&a| q(a, 13)).collect();
        let p = crate::group::problem_from_rational_circle(&fs).unwrap();
        let seq = folner_sequence(&p, &SolverOptions::default()).unwrap();
        assert_eq!(seq, vec![(0, 13, q(3, 13))]);
    }
}
