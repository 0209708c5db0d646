//! Two-sided density reports with the method behind every bound.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::circle::{CosinePolynomial, IntervalSet, KappaWitness};
use crate::density::PeriodicSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    /// The empty set, or the whole group.
    Trivial,
    FiniteIndependence,
    FolnerBox { radius: u32, size: usize },
    Tile { name: String, verified: bool },
    Rank1Formula,
    Rank1Construction,
    WindowMeanCycle { states: usize, period: usize },
    SmallPeriodSearch { period: u64 },
    HalfParity,
    KappaCyclic,
    KappaDual,
    IntervalConstruction { n: BigInt },
    Delsarte { grid: u32 },
    Fejer { n: u64 },
    GreedyParity,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Trivial => write!(f, "trivial bound"),
            Method::FiniteIndependence => write!(f, "independence number of the full Cayley graph"),
            Method::FolnerBox { radius, size } => {
                write!(f, "Følner box F_{radius} ({size} elements), alpha/|F_N|")
            }
            Method::Tile { name, verified: true } => write!(f, "tile {name}, tiling verified"),
            Method::Tile { name, verified: false } => write!(f, "tile {name}, tiling assumed"),
            Method::Rank1Formula => write!(f, "rank-1 formula floor(k/2)/k"),
            Method::Rank1Construction => write!(f, "rank-1 periodic construction"),
            Method::WindowMeanCycle { states, period } => {
                write!(f, "window-state maximum mean cycle ({states} states, period {period})")
            }
            Method::SmallPeriodSearch { period } => write!(f, "best set with period {period} in every free direction"),
            Method::HalfParity => write!(f, "half-parity criterion"),
            Method::KappaCyclic => write!(f, "kappa over the finite cyclic closure"),
            Method::KappaDual => write!(f, "kappa lower bound from dual lattice search"),
            Method::IntervalConstruction { n } => write!(f, "interval construction with n = {n}"),
            Method::Delsarte { grid } => write!(f, "Delsarte cosine LP, grid {grid}, Sturm-certified"),
            Method::Fejer { n } => write!(f, "Fejér kernel of order {n}"),
            Method::GreedyParity => write!(f, "greedy parity construction (heuristic)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Periodic(PeriodicSet),
    Intervals(IntervalSet),
    Kappa(KappaWitness),
    Cosine(CosinePolynomial),
}

/// One bound and where it came from. Untrusted upper bounds are listed but
/// never selected as the reported upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub side: Side,
    pub value: BigRational,
    pub method: Method,
    pub trusted: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl BoundEntry {
    pub fn lower(value: BigRational, method: Method) -> Self {
        BoundEntry {
            side: Side::Lower,
            value,
            method,
            trusted: true,
            witness: None,
            note: None,
        }
    }

    pub fn upper(value: BigRational, method: Method) -> Self {
        BoundEntry {
            side: Side::Upper,
            ..Self::lower(value, method)
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn untrusted(mut self) -> Self {
        self.trusted = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub lower: BoundEntry,
    pub upper: BoundEntry,
    pub exact: Option<BigRational>,
    /// Every bound produced, in production order.
    pub entries: Vec<BoundEntry>,
    pub notes: Vec<String>,
}

impl DensityReport {
    /// Selects the largest lower bound and the smallest trusted upper bound
    /// (earliest entry on ties).
    pub fn from_entries(entries: Vec<BoundEntry>, notes: Vec<String>) -> Result<Self> {
        let mut lower = BoundEntry::lower(BigRational::zero(), Method::Trivial);
        let mut upper = BoundEntry::upper(BigRational::one(), Method::Trivial);
        for e in &entries {
            match e.side {
                Side::Lower if e.trusted && e.value > lower.value => lower = e.clone(),
                Side::Upper if e.trusted && e.value < upper.value => upper = e.clone(),
                _ => {}
            }
        }
        if lower.value > upper.value {
            return Err(Error::InvalidInput(format!(
                "inconsistent bounds: {} ({}) above {} ({})",
                lower.value, lower.method, upper.value, upper.method
            )));
        }
        let exact = (lower.value == upper.value).then(|| lower.value.clone());
        Ok(DensityReport {
            lower,
            upper,
            exact,
            entries,
            notes,
        })
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// The first periodic witness attached to the selected lower bound.
    pub fn periodic_witness(&self) -> Option<&PeriodicSet> {
        match &self.lower.witness {
            Some(Witness::Periodic(s)) => Some(s),
            _ => None,
        }
    }

    pub fn merge(self, other: DensityReport) -> Result<Self> {
        let mut entries = self.entries;
        entries.extend(other.entries);
        let mut notes = self.notes;
        notes.extend(other.notes);
        Self::from_entries(entries, notes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn picks_best_trusted_bounds() {
        let r = DensityReport::from_entries(
            vec![
                BoundEntry::lower(q(1, 4), Method::KappaCyclic),
                BoundEntry::lower(q(1, 3), Method::Rank1Construction),
                BoundEntry::upper(q(1, 5), Method::Tile { name: "C".into(), verified: false }).untrusted(),
                BoundEntry::upper(q(1, 2), Method::HalfParity),
                BoundEntry::upper(q(1, 3), Method::Rank1Formula),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(r.lower.method, Method::Rank1Construction);
        assert_eq!(r.upper.method, Method::Rank1Formula);
        assert_eq!(r.exact, Some(q(1, 3)));
    }

    #[test]
    fn inconsistent_bounds_are_rejected() {
        let r = DensityReport::from_entries(
            vec![
                BoundEntry::lower(q(1, 2), Method::HalfParity),
                BoundEntry::upper(q(1, 3), Method::Rank1Formula),
            ],
            vec![],
        );
        assert!(r.is_err());
    }

    #[test]
    fn defaults_are_trivial() {
        let r = DensityReport::from_entries(vec![], vec![]).unwrap();
        assert_eq!(r.lower.value, q(0, 1));
        assert_eq!(r.upper.value, q(1, 1));
        assert!(!r.is_exact());
    }
}
