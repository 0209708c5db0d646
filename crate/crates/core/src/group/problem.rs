use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quotient::{GroupElement, QuotientGroup};
use crate::error::{Error, Result};
use crate::lattice::{kernel_lattice, IntMatrix, Lattice};

/// Where a difference problem came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Finitely many rationals on the circle group `T`.
    RationalCircle(Vec<BigRational>),
    /// Integer vectors spanning a subgroup of `Z^k`.
    IntegerVectors { dim: usize, vectors: Vec<Vec<BigInt>> },
    /// A lattice `Λ ⊆ Z^r` with the missing differences `B_Λ`.
    ExplicitLattice,
    /// A user-supplied difference set in `G × Z`.
    Corank1Direct,
}

impl Source {
    pub fn tag(&self) -> &'static str {
        match self {
            Source::RationalCircle(_) => "rational-circle",
            Source::IntegerVectors { .. } => "integer-vectors",
            Source::ExplicitLattice => "explicit-lattice",
            Source::Corank1Direct => "corank1-direct",
        }
    }
}

/// A group together with the finite set of forbidden differences.
///
/// Differences are stored up to sign (`t` and `-t` impose the same
/// constraint). The kept representative is the one whose first nonzero free
/// coordinate is positive, or for torsion elements the lexicographically
/// smaller residue vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceProblem {
    pub group: QuotientGroup,
    pub differences: Vec<GroupElement>,
    pub source: Source,
}

fn sign_representative(group: &QuotientGroup, d: GroupElement) -> GroupElement {
    let neg = group.neg(&d);
    let keep = match d.free.iter().find(|x| !x.is_zero()) {
        Some(first) => first.is_positive(),
        None => d.torsion <= neg.torsion,
    };
    if keep {
        d
    } else {
        neg
    }
}

impl DifferenceProblem {
    pub fn new(group: QuotientGroup, differences: Vec<GroupElement>, source: Source) -> Result<Self> {
        let mut kept: Vec<GroupElement> = Vec::with_capacity(differences.len());
        for (index, d) in differences.into_iter().enumerate() {
            if !group.is_canonical(&d) {
                return Err(Error::InvalidInput(format!("difference #{index} is not a canonical element")));
            }
            if d.is_zero() {
                return Err(Error::IdentityDifference { index });
            }
            let d = sign_representative(&group, d);
            if !kept.contains(&d) {
                kept.push(d);
            }
        }
        Ok(DifferenceProblem {
            group,
            differences: kept,
            source,
        })
    }

    /// Whether `x - y` or `y - x` is a listed difference.
    pub fn is_difference(&self, x: &GroupElement, y: &GroupElement) -> bool {
        let d = self.group.sub(x, y);
        !d.is_zero() && self.differences.contains(&sign_representative(&self.group, d))
    }

    /// The multipliers `k_i` when the problem is `{k_1 x, …, k_r x}` in a cyclic
    /// group (`Z` or `Z_q`), as used by cosine-polynomial bounds.
    pub fn cyclic_multipliers(&self) -> Option<Vec<u64>> {
        let g = &self.group;
        let cyclic =
            (g.free_rank() == 1 && g.invariant_factors().is_empty()) || (g.free_rank() == 0 && g.invariant_factors().len() == 1);
        if !cyclic {
            return None;
        }
        let mut ks: Vec<u64> = self
            .differences
            .iter()
            .map(|d| {
                let v = d.free.first().or(d.torsion.first()).expect("cyclic element");
                u64::try_from(v.abs()).ok()
            })
            .collect::<Option<_>>()?;
        ks.sort_unstable();
        ks.dedup();
        Some(ks)
    }
}

impl DifferenceProblem {
    /// `{n ∈ Z^s : Σ n_j d_j = 0}` for the listed differences `d_1, …, d_s`,
    /// so that `⟨D⟩ ≅ Z^s / Λ` with `D` the basis images.
    pub fn relation_lattice(&self) -> Result<Lattice> {
        let g = &self.group;
        let s = self.differences.len();
        let rel = g.lattice().basis_rows();
        let r = g.ambient_dim();
        let mut m = IntMatrix::zeros(r, s + rel.len());
        for (j, d) in self.differences.iter().enumerate() {
            for (i, x) in g.lift(d).into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        for (j, row) in rel.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                m[(i, s + j)] = x.clone();
            }
        }
        let gens: Vec<Vec<BigInt>> = kernel_lattice(&m)
            .basis_rows()
            .into_iter()
            .map(|mut v| {
                v.truncate(s);
                v
            })
            .collect();
        Lattice::from_generators(s, &gens)
    }
}

impl fmt::Display for DifferenceProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.differences.iter().map(|d| d.to_string()).collect();
        write!(f, "{} with differences {{{}}}", self.group.describe(), ds.join(", "))
    }
}

/// `Z^r / Λ` in canonical form.
pub fn quotient_of(l: &Lattice) -> QuotientGroup {
    QuotientGroup::of(l)
}

/// The missing-difference set `B_Λ`: canonical images of `e_1, …, e_r`.
pub fn basis_images(g: &QuotientGroup) -> Result<DifferenceProblem> {
    basis_images_with_source(g.clone(), Source::ExplicitLattice)
}

fn basis_images_with_source(g: QuotientGroup, source: Source) -> Result<DifferenceProblem> {
    let r = g.ambient_dim();
    let images = (0..r)
        .map(|i| {
            let mut e = vec![BigInt::zero(); r];
            e[i] = BigInt::one();
            g.canonical(&e)
        })
        .collect();
    DifferenceProblem::new(g, images, source)
}

/// `D = {a_1/q_1, …}` on the circle: `Λ = {n : Σ n_i a_i/q_i ∈ Z}`.
///
/// The quotient is cyclic of order `lcm(q_i)`, and its coordinate is relabelled
/// so that `e_i` maps to the numerator of `a_i/q_i` over the common denominator.
pub fn problem_from_rational_circle(fractions: &[BigRational]) -> Result<DifferenceProblem> {
    if fractions.is_empty() {
        return Err(Error::InvalidInput("empty difference set".into()));
    }
    let reduced: Vec<BigRational> = fractions.iter().map(|f| f - f.floor()).collect();
    if let Some(index) = reduced.iter().position(Zero::is_zero) {
        return Err(Error::IdentityDifference { index });
    }
    let q = reduced.iter().fold(BigInt::one(), |acc, f| acc.lcm(f.denom()));
    let c: Vec<BigInt> = reduced.iter().map(|f| f.numer() * (&q / f.denom())).collect();
    let r = c.len();

    // n ∈ Λ  <=>  Σ c_i n_i + t q = 0 for some t: project the kernel of [c | q].
    let mut row = c.clone();
    row.push(q.clone());
    let k = kernel_lattice(&IntMatrix::from_rows(r + 1, &[row])?);
    let gens: Vec<Vec<BigInt>> = k.basis_rows().into_iter().map(|mut v| {
        v.pop();
        v
    }).collect();
    let lattice = Lattice::from_generators(r, &gens)?;
    let mut group = QuotientGroup::of(&lattice);
    debug_assert_eq!(group.invariant_factors(), std::slice::from_ref(&q));

    if group.invariant_factors().len() == 1 {
        // natural = u · raw for the unit u = natural(raw^{-1}(1))
        let one = GroupElement::new(vec![BigInt::one()], vec![]);
        let x = group.lift(&one);
        let u = crate::lattice::dot(&x, &c).mod_floor(&q);
        group.relabel_torsion(0, &u)?;
    }
    basis_images_with_source(group, Source::RationalCircle(reduced))
}

/// `D ⊂ Z^k`: `Λ = {n ∈ Z^r : Σ n_i d_i = 0}`, so `Z^r / Λ ≅ ⟨D⟩`.
///
/// When `D` generates a proper subgroup of `Z^k` the quotient is automatically
/// the subgroup it generates, re-expressed in a basis of that subgroup.
pub fn problem_from_integer_vectors(vectors: &[Vec<BigInt>]) -> Result<DifferenceProblem> {
    let Some(first) = vectors.first() else {
        return Err(Error::InvalidInput("empty difference set".into()));
    };
    let k = first.len();
    if vectors.iter().any(|v| v.len() != k) {
        return Err(Error::DimensionMismatch("difference vectors of unequal length".into()));
    }
    let r = vectors.len();
    let mut columns = IntMatrix::zeros(k, r);
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            columns[(i, j)] = x.clone();
        }
    }
    let lattice = kernel_lattice(&columns);
    basis_images_with_source(
        QuotientGroup::of(&lattice),
        Source::IntegerVectors {
            dim: k,
            vectors: vectors.to_vec(),
        },
    )
}

/// `E ⊂ G × Z` given directly: `G = ⊕ Z_{moduli}`, each difference as
/// `(g_1, …, g_t, h)`.
pub fn problem_from_corank1(moduli: &[BigInt], differences: &[Vec<BigInt>]) -> Result<DifferenceProblem> {
    let group = QuotientGroup::product(moduli, 1)?;
    let r = moduli.len() + 1;
    let elems = differences
        .iter()
        .map(|d| {
            if d.len() != r {
                return Err(Error::DimensionMismatch(format!(
                    "corank-1 difference needs {r} coordinates, got {}",
                    d.len()
                )));
            }
            Ok(group.canonical(d))
        })
        .collect::<Result<Vec<_>>>()?;
    DifferenceProblem::new(group, elems, Source::Corank1Direct)
}

/// Describes a compact group `G = G_0 × T` and `D ⊂ G` whose relation lattice is `Λ`.
pub fn realize_as_compact_group(l: &Lattice) -> String {
    let g = QuotientGroup::of(l);
    let snf = l.smith();
    let d = l.rank();
    let r = l.ambient_dim();
    let torsion: Vec<String> = g.invariant_factors().iter().map(|a| format!("Z_{a}")).collect();
    let g0 = if torsion.is_empty() {
        "trivial".to_string()
    } else {
        torsion.join(" × ")
    };
    let mut out = String::new();
    out.push_str(&format!("G = G_0 × T with G_0 = {g0}\n"));
    out.push_str(&format!(
        "D = {{t_1, …, t_{r}}} with (t_i) = (V^-1)^T (t'_i), V = {}\n",
        snf.v
    ));
    for (i, a) in snf.invariant_factors.iter().enumerate() {
        if a.is_one() {
            out.push_str(&format!("  t'_{} = 0 (trivial factor)\n", i + 1));
        } else {
            out.push_str(&format!("  t'_{} = generator 1 of Z_{a}\n", i + 1));
        }
    }
    for j in 0..r - d {
        out.push_str(&format!("  t'_{} = β_{} in T\n", d + j + 1, j + 1));
    }
    if r > d {
        let betas: Vec<String> = (1..=r - d).map(|j| format!("β_{j}")).collect();
        out.push_str(&format!(
            "  where 1, {} are any reals linearly independent over Q ({} rationally independent irrationals)\n",
            betas.join(", "),
            r - d
        ));
    } else {
        out.push_str("  no circle parameters: D is finite data in G_0\n");
    }
    out
}
