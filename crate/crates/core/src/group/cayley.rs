use std::collections::HashMap;

use num_bigint::BigInt;

use super::problem::DifferenceProblem;
use super::quotient::{GroupElement, QuotientGroup};
use crate::error::{Error, Result};

/// `F_N`: the whole torsion part times `[-N, N]^{free rank}`. Tiles the group.
#[derive(Clone, Debug)]
pub struct FolnerBox {
    pub radius: u32,
    pub elements: Vec<GroupElement>,
}

impl FolnerBox {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `|F_N| = Π α_i · (2N+1)^f`.
pub fn folner_box_size(g: &QuotientGroup, n: u32) -> BigInt {
    g.torsion_order() * BigInt::from(2 * u64::from(n) + 1).pow(g.free_rank() as u32)
}

pub fn folner_box(g: &QuotientGroup, n: u32, cap: u64) -> Result<FolnerBox> {
    let size = folner_box_size(g, n);
    if size > BigInt::from(cap) {
        return Err(Error::cap("Følner box", size, cap));
    }
    let torsion = g.torsion_elements();
    let f = g.free_rank();
    let side = 2 * i64::from(n) + 1;
    let mut elements = Vec::with_capacity(usize::try_from(&size).unwrap_or(0));
    for t in &torsion {
        let mut cur = vec![-i64::from(n); f];
        loop {
            elements.push(GroupElement::new(
                t.torsion.clone(),
                cur.iter().map(|&x| BigInt::from(x)).collect(),
            ));
            let mut i = f;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < side - i64::from(n) {
                    break false;
                }
                cur[i] = -i64::from(n);
            };
            if done {
                break;
            }
        }
    }
    Ok(FolnerBox { radius: n, elements })
}

/// The subgraph of `Cay(group, ±D)` induced on a finite vertex list.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub vertices: Vec<GroupElement>,
    /// Sorted neighbor indices per vertex.
    pub adjacency: Vec<Vec<usize>>,
}

impl CayleyGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !self.has_edge(a, b)))
    }
}

/// Edge `{x, y}` iff `x - y` or `y - x` is a difference; duplicate vertices are
/// rejected since they would be adjacent to nothing but themselves.
pub fn induced_cayley_graph(p: &DifferenceProblem, vertices: Vec<GroupElement>) -> Result<CayleyGraph> {
    let mut index = HashMap::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            return Err(Error::InvalidInput(format!("vertex {v} listed twice")));
        }
    }
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (i, v) in vertices.iter().enumerate() {
        for d in &p.differences {
            for w in [p.group.add(v, d), p.group.sub(v, d)] {
                if let Some(&j) = index.get(&w) {
                    if j != i {
                        adjacency[i].push(j);
                    }
                }
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
        adj.dedup();
    }
    debug_assert!(adjacency.iter().enumerate().all(|(i, a)| a.iter().all(|&j| adjacency[j].contains(&i))));
    Ok(CayleyGraph { vertices, adjacency })
}

/// Canonical images of ambient vectors, e.g. a tile `C_S ⊂ Z^r`.
pub fn project_all(g: &QuotientGroup, xs: &[Vec<BigInt>]) -> Vec<GroupElement> {
    xs.iter().map(|x| g.canonical(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{basis_images, problem_from_rational_circle};
    use crate::lattice::Lattice;
    use num_rational::BigRational;

    #[test]
    fn box_sizes() {
        let z = QuotientGroup::of(&Lattice::zero(1));
        let b = folner_box(&z, 2, 100).unwrap();
        let vals: Vec<i64> = b.elements.iter().map(|e| i64::try_from(&e.free[0]).unwrap()).collect();
        assert_eq!(vals, vec![-2, -1, 0, 1, 2]);

        let z13 = QuotientGroup::product(&[BigInt::from(13)], 0).unwrap();
        assert_eq!(folner_box(&z13, 7, 100).unwrap().len(), 13);

        let z2z = QuotientGroup::product(&[BigInt::from(2)], 1).unwrap();
        assert_eq!(folner_box(&z2z, 1, 100).unwrap().len(), 6);
        assert_eq!(folner_box_size(&z2z, 1), BigInt::from(6));
        assert!(folner_box(&z2z, 10, 20).is_err());
    }

    #[test]
    fn circulant_is_six_regular() {
        let q = |n: i64| BigRational::new(n.into(), 13.into());
        let p = problem_from_rational_circle(&[q(1), q(3), q(4)]).unwrap();
        let verts = p.group.elements(100).unwrap();
        let g = induced_cayley_graph(&p, verts).unwrap();
        assert_eq!(g.len(), 13);
        assert!(g.degrees().iter().all(|&d| d == 6));
    }

    #[test]
    fn single_vertex_edgeless() {
        let p = basis_images(&QuotientGroup::of(&Lattice::zero(2))).unwrap();
        let g = induced_cayley_graph(&p, vec![p.group.zero()]).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rank_one_tile_is_triangle() {
        let l = Lattice::from_i64(2, &[&[1, 2]]).unwrap();
        let p = basis_images(&QuotientGroup::of(&l)).unwrap();
        let big = |xs: [i64; 2]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let tile = project_all(&p.group, &[big([0, 0]), big([1, 0]), big([1, 1])]);
        let g = induced_cayley_graph(&p, tile).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.degrees().iter().all(|&d| d == 2));
    }
}
