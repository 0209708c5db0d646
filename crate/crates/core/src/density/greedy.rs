//! Parity classes cut down to avoiding sets by greedy vertex removal.
//!
//! Starting from `V_i ∩ W_S`, where `W_S = C_S + S` is a fundamental domain
//! for `Λ`, vertices are deleted until no two remaining ones differ by a
//! listed difference. Nothing here is claimed optimal.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::domain::parallelepiped_points;
use super::periodic::{verify_avoiding, PeriodicSet};
use crate::error::{Error, Result};
use crate::group::{project_all, DifferenceProblem, GroupElement};
use crate::lattice::Lattice;
use crate::options::SolverOptions;

/// Largest `C_S` the greedy rule is run on.
pub const MAX_GREEDY_CELL: u64 = 1 << 12;

fn parity(v: &[BigInt]) -> usize {
    usize::from(v.iter().fold(BigInt::zero(), |acc, x| acc + x).is_odd())
}

/// The outcome for one parity class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub parity: usize,
    pub set: PeriodicSet,
    /// Vertices of `V_i ∩ D` before removal, `D` the period cell.
    pub initial: usize,
    pub removed: usize,
}

/// Runs the greedy rule on both parity classes and keeps the denser result
/// (parity 0 on ties).
///
/// `s` must be complementary to `Λ`. The periods are `S₀ = S ∩ V₀`, so the
/// parity of a point is constant on its `S₀`-orbit; the cell is `C_S`, or
/// `C_S ∪ (C_S + b)` for an odd `b ∈ S` when `S ⊄ V₀`. Residual edges are
/// removed by deleting a vertex of largest remaining degree, smallest index
/// first.
pub fn greedy_parity_construction(p: &DifferenceProblem, s: &Lattice, opts: &SolverOptions) -> Result<GreedyOutcome> {
    let g = &p.group;
    let lambda = g.lattice();
    let r = g.ambient_dim();
    if s.ambient_dim() != r || s.rank() + lambda.rank() != r {
        return Err(Error::InvalidInput(format!(
            "S of rank {} is not complementary to a rank {} lattice in Z^{r}",
            s.rank(),
            lambda.rank()
        )));
    }
    let s_rows = s.basis_rows();
    let mut rows = lambda.basis_rows();
    rows.extend(s_rows.iter().cloned());
    let c_s = parallelepiped_points(&rows, opts.enumeration_cap.min(MAX_GREEDY_CELL))?;

    // S₀ = S ∩ V₀ from a basis with at most one odd vector
    let odd: Vec<&Vec<BigInt>> = s_rows.iter().filter(|v| parity(v) == 1).collect();
    let mut periods: Vec<Vec<BigInt>> = s_rows.iter().filter(|v| parity(v) == 0).cloned().collect();
    let mut domain = c_s.clone();
    if let Some(&b) = odd.first() {
        periods.push(b.iter().map(|x| x * 2).collect());
        for o in &odd[1..] {
            periods.push(o.iter().zip(b).map(|(x, y)| x - y).collect());
        }
        domain.extend(c_s.iter().map(|c| c.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>()));
    }
    let periods = project_all(g, &periods);

    let mut best: Option<GreedyOutcome> = None;
    for i in 0..2 {
        let start: Vec<Vec<BigInt>> = domain.iter().filter(|x| parity(x) == i).cloned().collect();
        let outcome = greedy_class(p, &periods, &start, i)?;
        if best.as_ref().is_none_or(|b| outcome.set.density() > b.set.density()) {
            best = Some(outcome);
        }
    }
    Ok(best.expect("two parity classes"))
}

fn greedy_class(p: &DifferenceProblem, periods: &[GroupElement], start: &[Vec<BigInt>], i: usize) -> Result<GreedyOutcome> {
    let g = &p.group;
    let cell = project_all(g, start);
    let full = PeriodicSet::new(g.clone(), periods.to_vec(), cell.clone())?;
    let red = full.reduction();
    let keys: Vec<GroupElement> = cell.iter().map(|c| full.project(c)).collect();
    let index: HashMap<&GroupElement, usize> = keys.iter().enumerate().map(|(j, k)| (k, j)).collect();
    let ds: Vec<GroupElement> = p.differences.iter().map(|d| full.project(d)).collect();
    let n = keys.len();
    let mut adjacency: Vec<Vec<usize>> = keys
        .iter()
        .map(|k| {
            let mut nbrs: Vec<usize> = ds
                .iter()
                .flat_map(|d| [red.add(k, d), red.sub(k, d)])
                .filter_map(|x| index.get(&x).copied())
                .collect();
            // a self-loop means the vertex conflicts with its own translate
            nbrs.sort_unstable();
            nbrs.dedup();
            nbrs
        })
        .collect();
    let mut alive = vec![true; n];
    let mut removed = 0;
    loop {
        let degree = |v: usize, adj: &Vec<Vec<usize>>, alive: &[bool]| adj[v].iter().filter(|&&w| alive[w]).count();
        let pick = (0..n)
            .filter(|&v| alive[v])
            .map(|v| (degree(v, &adjacency, &alive), v))
            .filter(|&(d, _)| d > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((_, v)) = pick else { break };
        alive[v] = false;
        removed += 1;
        adjacency[v].clear();
    }
    let kept: Vec<GroupElement> = cell.into_iter().zip(&alive).filter(|(_, &a)| a).map(|(c, _)| c).collect();
    let set = PeriodicSet::new(g.clone(), periods.to_vec(), kept)?;
    if !verify_avoiding(&set, p) {
        return Err(Error::NotAvoiding(format!("greedy parity set {set}")));
    }
    Ok(GreedyOutcome {
        parity: i,
        set,
        initial: n,
        removed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::rank1::rank1_problem;
    use num_rational::BigRational;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn diagonal_s(r: usize) -> Lattice {
        let rows = (0..r - 1)
            .map(|i| {
                let mut s = vec![BigInt::zero(); r];
                s[i] = BigInt::from(-1);
                s[i + 1] = BigInt::from(1);
                s
            })
            .collect();
        Lattice::new(r, rows).unwrap()
    }

    #[test]
    fn rank_one_examples() {
        let opts = SolverOptions::default();
        for (m, want) in [(&[1, 2][..], q(1, 3)), (&[2, 3], q(2, 5)), (&[1, 1], q(1, 2)), (&[1, 2, 2], q(2, 5))] {
            let p = rank1_problem(&v(m)).unwrap();
            let out = greedy_parity_construction(&p, &diagonal_s(m.len()), &opts).unwrap();
            assert_eq!(out.set.density(), want, "{m:?}");
        }
    }

    #[test]
    fn even_lattice_needs_no_removal() {
        let p = rank1_problem(&v(&[1, 1])).unwrap();
        let out = greedy_parity_construction(&p, &diagonal_s(2), &SolverOptions::default()).unwrap();
        assert_eq!(out.removed, 0);
        assert_eq!(out.set.density(), q(1, 2));
    }

    #[test]
    fn odd_complement_doubles_the_cell() {
        let p = rank1_problem(&v(&[1, 2])).unwrap();
        let s = Lattice::from_i64(2, &[&[1, 0]]).unwrap();
        let out = greedy_parity_construction(&p, &s, &SolverOptions::default()).unwrap();
        assert!(out.set.density() <= q(1, 3));
        assert!(out.set.density() > q(0, 1));
    }

    #[test]
    fn non_complementary_s_is_rejected() {
        let p = rank1_problem(&v(&[1, 2])).unwrap();
        let s = Lattice::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert!(greedy_parity_construction(&p, &s, &SolverOptions::default()).is_err());
    }
}
