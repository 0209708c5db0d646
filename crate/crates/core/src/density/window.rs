use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::finite::small_period_search;
use super::karp::max_mean_cycle_int;
use super::periodic::{verify_avoiding, PeriodicSet};
use super::tiling::folner_sequence;
use crate::error::{Error, Result};
use crate::group::{DifferenceProblem, GroupElement};
use crate::options::SolverOptions;
use crate::par;
use crate::report::{BoundEntry, DensityReport, Method, Witness};

/// Transition cap for the window-state graph.
const MAX_TRANSITIONS: usize = 1 << 24;

/// Finite transition system whose cycles are the periodic avoiding sets of
/// `G × Z`.
///
/// A state is the last `width` fibers `A ∩ (G × {z})`, oldest in the low bits,
/// `|G|` bits per fiber. States are numbered in increasing encoding order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowStateGraph {
    pub group_order: usize,
    pub width: usize,
    pub states: Vec<u64>,
    /// `(from, to, new fiber)`
    pub transitions: Vec<(usize, usize, u64)>,
}

/// Differences of `G × Z` as `(index of g, h)` with `h ≥ 0`.
struct Layout {
    order: usize,
    moduli: Vec<u64>,
    shifts: Vec<(Vec<usize>, usize)>,
}

impl Layout {
    fn new(p: &DifferenceProblem) -> Result<Self> {
        let g = &p.group;
        if g.free_rank() != 1 {
            return Err(Error::InvalidInput(format!("{} is not of the form G × Z", g.describe())));
        }
        let moduli: Vec<u64> = g
            .invariant_factors()
            .iter()
            .map(|a| a.to_u64().filter(|&a| a <= 64))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::cap("finite component order", g.torsion_order(), 64))?;
        let order: u64 = moduli.iter().product();
        if order > 64 {
            return Err(Error::cap("finite component order", order, 64));
        }
        let order = order as usize;
        let mut shifts = Vec::new();
        for d in &p.differences {
            let d = if d.free[0].is_negative() { g.neg(d) } else { d.clone() };
            let h = d.free[0]
                .to_usize()
                .ok_or_else(|| Error::cap("window width", &d.free[0], u32::MAX))?;
            let gi = index_of(&moduli, &d.torsion);
            let table = (0..order).map(|a| add_index(&moduli, a, gi)).collect();
            shifts.push((table, h));
        }
        Ok(Layout { order, moduli, shifts })
    }

    fn width(&self) -> usize {
        self.shifts.iter().map(|&(_, h)| h).max().unwrap_or(0)
    }

    fn shift(&self, mask: u64, table: &[usize]) -> u64 {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let a = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << table[a];
        }
        out
    }

    fn element(&self, index: usize, z: usize) -> GroupElement {
        let mut digits = vec![BigInt::zero(); self.moduli.len()];
        let mut rest = index as u64;
        for (d, &m) in digits.iter_mut().zip(&self.moduli).rev() {
            *d = BigInt::from(rest % m);
            rest /= m;
        }
        GroupElement::new(digits, vec![BigInt::from(z)])
    }
}

/// Mixed-radix index, first factor most significant (canonical order).
fn index_of(moduli: &[u64], t: &[BigInt]) -> usize {
    t.iter()
        .zip(moduli)
        .fold(0u64, |acc, (x, &m)| acc * m + x.to_u64().expect("canonical residue")) as usize
}

fn add_index(moduli: &[u64], a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a as u64, b as u64);
    let mut out = 0u64;
    let mut place = 1u64;
    for &m in moduli.iter().rev() {
        out += ((a % m + b % m) % m) * place;
        place *= m;
        a /= m;
        b /= m;
    }
    out as usize
}

impl WindowStateGraph {
    pub fn build(p: &DifferenceProblem, opts: &SolverOptions) -> Result<Self> {
        let layout = Layout::new(p)?;
        Self::from_layout(&layout, opts)
    }

    fn from_layout(layout: &Layout, opts: &SolverOptions) -> Result<Self> {
        let n = layout.order;
        let width = layout.width();
        let bits = n * width;
        let cap = opts.state_bits.min(64) as usize;
        if bits > cap {
            return Err(Error::cap("window state bits |G|·(R-1)", bits, cap));
        }
        if n > 32 {
            return Err(Error::cap("fiber size |G|", n, 32));
        }
        let flat: Vec<&Vec<usize>> = layout.shifts.iter().filter(|s| s.1 == 0).map(|s| &s.0).collect();
        let fibers = independent_fibers(n, &flat, opts.max_states.max(1 << 16))?;
        let fiber_mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let successors = |s: u64| -> Vec<(u64, u64)> {
            let mut forbidden = 0u64;
            for (table, h) in &layout.shifts {
                if *h >= 1 {
                    let old = (s >> ((width - h) * n)) & fiber_mask;
                    forbidden |= layout.shift(old, table);
                }
            }
            fibers
                .iter()
                .filter(|&&f| f & forbidden == 0)
                .map(|&f| (if width == 0 { 0 } else { (s >> n) | (f << ((width - 1) * n)) }, f))
                .collect()
        };

        let mut index: HashMap<u64, usize> = HashMap::from([(0, 0)]);
        let mut order = vec![0u64];
        let mut edges: Vec<(usize, u64, u64)> = Vec::new();
        let mut frontier = vec![0u64];
        while !frontier.is_empty() {
            let expanded = par::map_slice(opts.strategy, &frontier, |&s| successors(s));
            let mut next = Vec::new();
            for (&s, succ) in frontier.iter().zip(expanded) {
                let from = index[&s];
                for (t, f) in succ {
                    if let Entry::Vacant(slot) = index.entry(t) {
                        if order.len() >= opts.max_states {
                            return Err(Error::cap("window states", order.len() + 1, opts.max_states));
                        }
                        slot.insert(order.len());
                        order.push(t);
                        next.push(t);
                    }
                    edges.push((from, t, f));
                    if edges.len() > MAX_TRANSITIONS {
                        return Err(Error::cap("window transitions", edges.len(), MAX_TRANSITIONS));
                    }
                }
            }
            frontier = next;
        }

        let mut states = order.clone();
        states.sort_unstable();
        let rank: HashMap<u64, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut transitions: Vec<(usize, usize, u64)> = edges
            .into_iter()
            .map(|(from, t, f)| (rank[&order[from]], rank[&t], f))
            .collect();
        transitions.sort_unstable();
        Ok(WindowStateGraph {
            group_order: n,
            width,
            states,
            transitions,
        })
    }
}

/// All subsets of `G` avoiding the differences with zero `Z`-component, in
/// increasing mask order.
fn independent_fibers(n: usize, flat: &[&Vec<usize>], cap: usize) -> Result<Vec<u64>> {
    let mut conflict = vec![0u64; n];
    for table in flat {
        for a in 0..n {
            conflict[a] |= 1 << table[a];
            conflict[table[a]] |= 1 << a;
        }
    }
    let mut out = Vec::new();
    fn grow(i: usize, n: usize, mask: u64, conflict: &[u64], out: &mut Vec<u64>, cap: usize) -> bool {
        if i == n {
            out.push(mask);
            return out.len() <= cap;
        }
        if !grow(i + 1, n, mask, conflict, out, cap) {
            return false;
        }
        if conflict[i] & (mask | 1 << i) == 0 {
            return grow(i + 1, n, mask | 1 << i, conflict, out, cap);
        }
        true
    }
    if !grow(0, n, 0, &conflict, &mut out, cap) {
        return Err(Error::cap("independent fibers", out.len(), cap));
    }
    out.sort_unstable();
    Ok(out)
}

/// The exact optimum of a `G × Z` problem and the periodic set realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corank1Solution {
    pub density: BigRational,
    pub witness: PeriodicSet,
    pub states: usize,
    pub period: usize,
}

/// Maximum mean cycle of the window-state graph, divided by `|G|`.
pub fn corank1_exact(p: &DifferenceProblem, opts: &SolverOptions) -> Result<Corank1Solution> {
    let layout = Layout::new(p)?;
    let graph = WindowStateGraph::from_layout(&layout, opts)?;
    let edges: Vec<(usize, usize, i64)> = graph
        .transitions
        .iter()
        .map(|&(u, v, f)| (u, v, i64::from(f.count_ones())))
        .collect();
    let states = graph.states.len();
    let work = states as u128 * edges.len() as u128;
    if work > 1 << 36 {
        return Err(Error::cap("mean-cycle work states·transitions", work, 1u128 << 36));
    }
    let cycle = max_mean_cycle_int(states, &edges, opts.strategy)?;
    let density = BigRational::new(
        BigInt::from(cycle.numer),
        BigInt::from(cycle.denom) * BigInt::from(layout.order),
    );
    let period = cycle.edges.len();
    let mut cell = Vec::new();
    for (z, &e) in cycle.edges.iter().enumerate() {
        let mut f = graph.transitions[e].2;
        while f != 0 {
            let a = f.trailing_zeros() as usize;
            f &= f - 1;
            cell.push(layout.element(a, z));
        }
    }
    cell.sort();
    let mut step = p.group.zero();
    step.free[0] = BigInt::from(period);
    let witness = PeriodicSet::new(p.group.clone(), vec![step], cell)?;
    if !verify_avoiding(&witness, p) || witness.density() != density {
        return Err(Error::NotAvoiding(format!("mean-cycle witness {witness}")));
    }
    Ok(Corank1Solution {
        density,
        witness,
        states,
        period,
    })
}

/// Exact report when the window graph fits; otherwise the best Følner upper
/// bound and the best small-period set, with the cap recorded as a note.
pub fn corank1_density(p: &DifferenceProblem, opts: &SolverOptions) -> Result<DensityReport> {
    match corank1_exact(p, opts) {
        Ok(s) => {
            let method = Method::WindowMeanCycle {
                states: s.states,
                period: s.period,
            };
            DensityReport::from_entries(
                vec![
                    BoundEntry::lower(s.density.clone(), method.clone()).with_witness(Witness::Periodic(s.witness)),
                    BoundEntry::upper(s.density, method),
                ],
                vec![],
            )
        }
        Err(e @ Error::CapExceeded { .. }) => {
            let mut entries = Vec::new();
            for (radius, size, value) in folner_sequence(p, opts)? {
                entries.push(BoundEntry::upper(value, Method::FolnerBox { radius, size }));
            }
            if let Some((t, s)) = small_period_search(p, opts)? {
                entries.push(
                    BoundEntry::lower(s.density(), Method::SmallPeriodSearch { period: t })
                        .with_witness(Witness::Periodic(s)),
                );
            }
            DensityReport::from_entries(entries, vec![format!("window-state solver skipped: {e}")])
        }
        Err(e) => Err(e),
    }
}
