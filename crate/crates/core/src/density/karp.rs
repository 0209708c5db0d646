use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::par::{self, Strategy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: BigRational,
}

/// A weighted directed graph on vertices `0..n`; parallel edges and loops allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
}

impl Digraph {
    pub fn new(vertex_count: usize) -> Self {
        Digraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, weight: BigRational) {
        assert!(from < self.vertex_count && to < self.vertex_count, "edge endpoint out of range");
        self.edges.push(Edge { from, to, weight });
    }
}

/// A cycle of maximum mean weight. `edges[i]` leads from `vertices[i]` to
/// `vertices[i + 1]` (cyclically); the cycle starts at its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanCycle {
    pub mean: BigRational,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

pub fn max_mean_cycle(g: &Digraph) -> Result<MeanCycle> {
    max_mean_cycle_with(g, Strategy::default())
}

pub fn max_mean_cycle_with(g: &Digraph, strategy: Strategy) -> Result<MeanCycle> {
    let scale = g.edges.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.weight.denom()));
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let w = e.weight.numer() * (&scale / e.weight.denom());
            w.to_i64()
                .map(|w| (e.from, e.to, w))
                .ok_or_else(|| Error::InvalidInput("edge weight too large for the mean-cycle solver".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = max_mean_cycle_int(g.vertex_count, &edges, strategy)?;
    Ok(MeanCycle {
        mean: BigRational::new(BigInt::from(c.numer), BigInt::from(c.denom) * scale),
        vertices: c.vertices,
        edges: c.edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntMeanCycle {
    pub numer: i128,
    pub denom: i128,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

const NEG: i128 = i128::MIN / 4;

/// Incoming edges grouped by target: `(source, weight, edge index)`.
fn incoming(n: usize, edges: &[(usize, usize, i64)]) -> Vec<Vec<(usize, i64, usize)>> {
    let mut inc = vec![Vec::new(); n];
    for (i, &(u, v, w)) in edges.iter().enumerate() {
        inc[v].push((u, w, i));
    }
    inc
}

fn step(strategy: Strategy, inc: &[Vec<(usize, i64, usize)>], prev: &[i128], cur: &mut [i128]) {
    par::fill_indexed(strategy, cur, |v| {
        inc[v]
            .iter()
            .filter(|&&(u, _, _)| prev[u] > NEG)
            .map(|&(u, w, _)| prev[u] + i128::from(w))
            .max()
            .unwrap_or(NEG)
    });
}

/// Karp's recurrence from a virtual source joined to every vertex.
///
/// `D_k(v)` is the heaviest walk of exactly `k` edges ending at `v`. The first
/// pass keeps only `D_n`; the second recomputes `D_k` to take
/// `min_k (D_n(v) - D_k(v)) / (n - k)`, so memory stays linear.
pub(crate) fn max_mean_cycle_int(n: usize, edges: &[(usize, usize, i64)], strategy: Strategy) -> Result<IntMeanCycle> {
    if n == 0 || edges.is_empty() {
        return Err(Error::Acyclic);
    }
    let inc = incoming(n, edges);
    let mut prev = vec![0i128; n];
    let mut cur = vec![NEG; n];
    for _ in 0..n {
        step(strategy, &inc, &prev, &mut cur);
        std::mem::swap(&mut prev, &mut cur);
    }
    let dn = prev.clone();
    if dn.iter().all(|&x| x <= NEG) {
        return Err(Error::Acyclic);
    }

    // best[v] = min_k (D_n(v) - D_k(v)) / (n - k) as (numerator, denominator)
    let mut best: Vec<Option<(i128, i128)>> = vec![None; n];
    let mut dk = vec![0i128; n];
    let mut next = vec![NEG; n];
    for k in 0..n {
        let len = (n - k) as i128;
        for v in 0..n {
            if dn[v] <= NEG || dk[v] <= NEG {
                continue;
            }
            let cand = (dn[v] - dk[v], len);
            if best[v].is_none_or(|b| cand.0 * b.1 < b.0 * cand.1) {
                best[v] = Some(cand);
            }
        }
        step(strategy, &inc, &dk, &mut next);
        std::mem::swap(&mut dk, &mut next);
    }
    let (p, q) = best
        .iter()
        .flatten()
        .copied()
        .reduce(|a, b| if b.0 * a.1 > a.0 * b.1 { b } else { a })
        .ok_or(Error::Acyclic)?;
    let g = p.gcd(&q);
    let (p, q) = (p / g, q / g);
    let (vertices, cycle_edges) = tight_cycle(n, edges, &inc, p, q, strategy);
    Ok(IntMeanCycle {
        numer: p,
        denom: q,
        vertices,
        edges: cycle_edges,
    })
}

/// With weights `q·w - p` no cycle is positive and the optimal cycles weigh
/// zero. Longest-walk potentials from the virtual source make every edge of
/// such a cycle tight, so any cycle of tight edges is optimal.
fn tight_cycle(
    n: usize,
    edges: &[(usize, usize, i64)],
    inc: &[Vec<(usize, i64, usize)>],
    p: i128,
    q: i128,
    strategy: Strategy,
) -> (Vec<usize>, Vec<usize>) {
    let reweight = |w: i64| q * i128::from(w) - p;
    let mut pot = vec![0i128; n];
    let mut next = vec![0i128; n];
    for _ in 0..=n {
        par::fill_indexed(strategy, &mut next, |v| {
            inc[v]
                .iter()
                .map(|&(u, w, _)| pot[u] + reweight(w))
                .fold(pot[v], i128::max)
        });
        if next == pot {
            break;
        }
        std::mem::swap(&mut pot, &mut next);
    }

    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v, w)) in edges.iter().enumerate() {
        if pot[v] == pot[u] + reweight(w) {
            out[u].push((v, i));
        }
    }
    for list in &mut out {
        list.sort_unstable();
    }

    // 0 = unvisited, 1 = on the stack, 2 = finished
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut via: Vec<usize> = Vec::new();
        state[root] = 1;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 == out[v].len() {
                state[v] = 2;
                stack.pop();
                via.pop();
                continue;
            }
            let (w, e) = out[v][top.1];
            top.1 += 1;
            match state[w] {
                0 => {
                    state[w] = 1;
                    stack.push((w, 0));
                    via.push(e);
                }
                1 => {
                    let start = stack.iter().position(|&(x, _)| x == w).expect("vertex on stack");
                    let vertices: Vec<usize> = stack[start..].iter().map(|&(x, _)| x).collect();
                    let mut cyc: Vec<usize> = via[start..].to_vec();
                    cyc.push(e);
                    return rotate_to_min(vertices, cyc);
                }
                _ => {}
            }
        }
    }
    unreachable!("an optimal cycle is always tight")
}

fn rotate_to_min(mut vertices: Vec<usize>, mut edges: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let k = vertices
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    vertices.rotate_left(k);
    edges.rotate_left(k);
    (vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> Digraph {
        let mut g = Digraph::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, q(w, 1));
        }
        g
    }

    #[test]
    fn self_loop() {
        let c = max_mean_cycle(&graph(1, &[(0, 0, 3)])).unwrap();
        assert_eq!(c.mean, q(3, 1));
        assert_eq!(c.vertices, vec![0]);
    }

    #[test]
    fn two_cycles_tie_and_strict() {
        let tie = graph(4, &[(0, 1, 1), (1, 0, 1), (2, 3, 2), (3, 2, 0)]);
        let c = max_mean_cycle(&tie).unwrap();
        assert_eq!(c.mean, q(1, 1));
        assert_eq!(c.vertices, vec![0, 1]);
        let strict = graph(4, &[(0, 1, 1), (1, 0, 1), (2, 3, 3), (3, 2, 0)]);
        let c = max_mean_cycle(&strict).unwrap();
        assert_eq!(c.mean, q(3, 2));
        assert_eq!(c.vertices, vec![2, 3]);
    }

    #[test]
    fn triangle_average() {
        let c = max_mean_cycle(&graph(3, &[(0, 1, 1), (1, 2, 2), (2, 0, 3)])).unwrap();
        assert_eq!(c.mean, q(2, 1));
        assert_eq!(c.edges, vec![0, 1, 2]);
    }

    #[test]
    fn acyclic_is_an_error() {
        assert_eq!(max_mean_cycle(&graph(3, &[(0, 1, 1), (1, 2, 1)])), Err(Error::Acyclic));
        assert_eq!(max_mean_cycle(&Digraph::new(2)), Err(Error::Acyclic));
    }

    #[test]
    fn rational_weights() {
        let mut g = Digraph::new(2);
        g.add_edge(0, 1, q(1, 2));
        g.add_edge(1, 0, q(1, 3));
        g.add_edge(1, 1, q(1, 4));
        let c = max_mean_cycle(&g).unwrap();
        assert_eq!(c.mean, q(5, 12));
    }

    #[test]
    fn strategies_agree() {
        let edges: Vec<(usize, usize, i64)> =
            (0..40).flat_map(|i| [(i, (i * 7 + 3) % 40, (i % 5) as i64), (i, (i + 1) % 40, 1)]).collect();
        let g = graph(40, &edges);
        assert_eq!(
            max_mean_cycle_with(&g, Strategy::Sequential).unwrap(),
            max_mean_cycle_with(&g, Strategy::Parallel).unwrap()
        );
    }
}
