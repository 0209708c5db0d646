use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::group::{DifferenceProblem, GroupElement, QuotientGroup};
use crate::lattice::Lattice;

/// `A = cell + H` for a subgroup `H` of finite index, generated by `periods`.
///
/// Membership and avoidance are decided in the finite quotient
/// `Q' = Z^r / (Λ + lift(H))`, where `A` is the image of the cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSet {
    group: QuotientGroup,
    periods: Vec<GroupElement>,
    cell: Vec<GroupElement>,
    reduction: QuotientGroup,
    keys: HashSet<GroupElement>,
}

impl PeriodicSet {
    pub fn new(group: QuotientGroup, periods: Vec<GroupElement>, cell: Vec<GroupElement>) -> Result<Self> {
        let r = group.ambient_dim();
        for g in periods.iter().chain(&cell) {
            if !group.is_canonical(g) {
                return Err(Error::InvalidInput(format!("{g} is not a canonical element of {}", group.describe())));
            }
        }
        let mut gens = group.lattice().basis_rows();
        gens.extend(periods.iter().map(|g| group.lift(g)));
        let full = Lattice::from_generators(r, &gens)?;
        if full.rank() != r {
            return Err(Error::InvalidInput("the period subgroup must have finite index".into()));
        }
        let reduction = QuotientGroup::of(&full);
        let mut keys = HashSet::with_capacity(cell.len());
        for c in &cell {
            if !keys.insert(reduction.canonical(&group.lift(c))) {
                return Err(Error::InvalidInput(format!("cell element {c} repeats a period class")));
            }
        }
        Ok(PeriodicSet {
            group,
            periods,
            cell,
            reduction,
            keys,
        })
    }

    /// A subset of a finite group, periodic under the whole group.
    pub fn finite(group: QuotientGroup, cell: Vec<GroupElement>) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InvalidInput("a period-free set needs a finite group".into()));
        }
        Self::new(group, Vec::new(), cell)
    }

    pub fn group(&self) -> &QuotientGroup {
        &self.group
    }

    pub fn periods(&self) -> &[GroupElement] {
        &self.periods
    }

    pub fn cell(&self) -> &[GroupElement] {
        &self.cell
    }

    /// The finite quotient in which the set is one union of classes.
    pub fn reduction(&self) -> &QuotientGroup {
        &self.reduction
    }

    /// Index of the period subgroup.
    pub fn period_index(&self) -> BigInt {
        self.reduction.torsion_order()
    }

    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::from(self.cell.len()), self.period_index())
    }

    pub fn project(&self, g: &GroupElement) -> GroupElement {
        self.reduction.canonical(&self.group.lift(g))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.keys.contains(&self.project(g))
    }
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell: Vec<String> = self.cell.iter().map(|c| c.to_string()).collect();
        let periods: Vec<String> = self.periods.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "cell {{{}}} + <{}> in {} (index {})",
            cell.join(", "),
            periods.join(", "),
            self.group.describe(),
            self.period_index()
        )
    }
}

/// Whether no two points of the periodized set differ by a listed difference.
///
/// Checking `c + d` for every cell class `c` and difference `d` covers all
/// pairs, since `H` acts trivially on the quotient.
pub fn verify_avoiding(s: &PeriodicSet, p: &DifferenceProblem) -> bool {
    if s.group != p.group {
        return false;
    }
    let red = &s.reduction;
    let ds: Vec<GroupElement> = p.differences.iter().map(|d| s.project(d)).collect();
    s.keys.iter().all(|c| ds.iter().all(|d| !s.keys.contains(&red.add(c, d))))
}
