use crate::error::{Error, Result};
use crate::group::CayleyGraph;

/// A maximum independent set: its size and the chosen vertices (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSet {
    pub size: usize,
    pub vertices: Vec<usize>,
}

pub fn max_independent_set(g: &CayleyGraph, cap: usize) -> Result<IndependentSet> {
    max_independent_set_adjacency(&g.adjacency, cap)
}

/// Exact independence number of a graph given by adjacency lists.
///
/// Branch and bound over maximum cliques of the complement, bounded by a
/// greedy colouring. The witness is the lexicographically smallest maximum
/// independent set.
pub fn max_independent_set_adjacency(adjacency: &[Vec<usize>], cap: usize) -> Result<IndependentSet> {
    let n = adjacency.len();
    if n > cap.min(64) {
        return Err(Error::cap("independent-set graph", n, cap.min(64)));
    }
    if n == 0 {
        return Ok(IndependentSet { size: 0, vertices: vec![] });
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut complement = vec![0u64; n];
    for (v, nbrs) in adjacency.iter().enumerate() {
        let mut mask = 0u64;
        for &w in nbrs {
            if w != v {
                mask |= 1 << w;
            }
        }
        complement[v] = full & !mask & !(1 << v);
    }
    let mut search = Search {
        complement: &complement,
        best: 0,
        best_set: 0,
        stop_at: u32::MAX,
    };
    search.expand(0, full);
    let alpha = search.best;

    // fix vertices in index order whenever a maximum set still extends them
    let (mut chosen, mut allowed) = (0u64, full);
    for v in 0..n {
        if allowed & (1 << v) == 0 {
            continue;
        }
        let need = alpha - chosen.count_ones() - 1;
        let later = allowed & complement[v] & !low_mask(v + 1);
        if need == 0 || has_clique(&complement, later, need) {
            chosen |= 1 << v;
            allowed &= complement[v];
            if need == 0 {
                break;
            }
        } else {
            allowed &= !(1 << v);
        }
    }
    Ok(IndependentSet {
        size: alpha as usize,
        vertices: bits(chosen).collect(),
    })
}

/// Bits `0..k`.
fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn has_clique(complement: &[u64], candidates: u64, k: u32) -> bool {
    if candidates.count_ones() < k {
        return false;
    }
    let mut search = Search {
        complement,
        best: k - 1,
        best_set: 0,
        stop_at: k,
    };
    search.expand(0, candidates);
    search.best >= k
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

struct Search<'a> {
    complement: &'a [u64],
    best: u32,
    best_set: u64,
    stop_at: u32,
}

impl Search<'_> {
    fn expand(&mut self, chosen: u64, mut candidates: u64) {
        let order = self.colour(candidates);
        let size = chosen.count_ones();
        for &(v, colour) in order.iter().rev() {
            if size + colour <= self.best {
                return;
            }
            let next = chosen | (1 << v);
            let rest = candidates & self.complement[v];
            if rest == 0 {
                if size + 1 > self.best {
                    self.best = size + 1;
                    self.best_set = next;
                }
            } else {
                self.expand(next, rest);
            }
            if self.best >= self.stop_at {
                return;
            }
            candidates &= !(1 << v);
        }
    }

    /// Sequential colouring of the complement restricted to `p`; each colour
    /// class is an independent set there, so `colour` bounds any clique.
    fn colour(&self, p: u64) -> Vec<(usize, u32)> {
        let mut order = Vec::with_capacity(p.count_ones() as usize);
        let mut uncoloured = p;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut available = uncoloured;
            while available != 0 {
                let v = available.trailing_zeros() as usize;
                available &= !(1 << v) & !self.complement[v];
                uncoloured &= !(1 << v);
                order.push((v, colour));
            }
        }
        order
    }
}
