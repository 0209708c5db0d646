//! Solver selection: exact values where a complete method applies, and every
//! applicable bound producer otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::circle::{
    delsarte_upper_bound, half_parity, half_parity_report, interval_construction, kappa_dual_lower, kappa_rational,
    KappaCertificate,
};
use crate::density::{
    corank1_density, corank1_exact, density_finite_group, folner_sequence, greedy_parity_construction, rank1_construction_general,
    rank1_generator, rank1_report, small_period_search, verify_avoiding, PeriodicSet,
};
use crate::error::{Error, Result};
use crate::group::{DifferenceProblem, Source};
use crate::options::SolverOptions;
use crate::report::{BoundEntry, DensityReport, Method, Witness};

#[derive(Default)]
struct Collector {
    entries: Vec<BoundEntry>,
    notes: Vec<String>,
}

impl Collector {
    fn report(&mut self, name: &str, r: Result<Option<DensityReport>>) {
        match r {
            Ok(Some(rep)) => {
                self.entries.extend(rep.entries);
                self.notes.extend(rep.notes);
            }
            Ok(None) => {}
            Err(e) => self.notes.push(format!("{name} skipped: {e}")),
        }
    }

    fn entries(&mut self, name: &str, r: Result<Vec<BoundEntry>>) {
        match r {
            Ok(es) => self.entries.extend(es),
            Err(e) => self.notes.push(format!("{name} skipped: {e}")),
        }
    }

    fn finish(self) -> Result<DensityReport> {
        DensityReport::from_entries(self.entries, self.notes)
    }
}

type Attempt<'a> = (&'static str, &'a dyn Fn() -> Result<Option<DensityReport>>);

fn circle_fractions(p: &DifferenceProblem) -> Option<&[BigRational]> {
    match &p.source {
        Source::RationalCircle(f) => Some(f),
        _ => None,
    }
}

/// The exact value when rank 1, finite, corank 1 or half-parity applies,
/// tried in that order; otherwise [`bounds`].
///
/// A producer that hits a cap is skipped and the next one is tried.
pub fn density(p: &DifferenceProblem, opts: &SolverOptions) -> Result<DensityReport> {
    let mut skipped = Vec::new();
    let attempts: [Attempt; 4] = [
        ("rank-1 solver", &|| rank1_generator(p).map(|m| rank1_report(&m, opts)).transpose()),
        ("finite solver", &|| p.group.is_finite().then(|| density_finite_group(p, opts)).transpose()),
        ("window-state solver", &|| (p.group.free_rank() == 1).then(|| corank1_density(p, opts)).transpose()),
        ("half-parity", &|| half_parity_report(p, opts)),
    ];
    for (name, attempt) in attempts {
        match attempt() {
            Ok(Some(r)) if r.is_exact() => return Ok(r),
            Ok(_) => {}
            Err(e @ (Error::CapExceeded { .. } | Error::NoConstructionApplicable(_))) => {
                skipped.push(format!("{name} skipped: {e}"));
            }
            Err(e) => return Err(e),
        }
    }
    let mut r = bounds(p, opts)?;
    if r.is_exact() {
        return Ok(r);
    }
    skipped.append(&mut r.notes);
    r.notes = skipped;
    r.notes.dedup();
    Ok(r)
}

/// Every applicable producer, each entry tagged with its method. Producers
/// that fail leave a note instead of an entry.
pub fn bounds(p: &DifferenceProblem, opts: &SolverOptions) -> Result<DensityReport> {
    let g = &p.group;
    let mut c = Collector::default();

    if g.is_finite() {
        c.report("finite solver", density_finite_group(p, opts).map(Some));
    }
    if let Some(m) = rank1_generator(p) {
        c.report("rank-1 solver", rank1_report(&m, opts).map(Some));
    }
    if g.free_rank() == 1 {
        c.report("window-state solver", corank1_density(p, opts).map(Some));
    }
    c.report("half-parity", half_parity_report(p, opts));

    c.entries(
        "Følner bound",
        folner_sequence(p, opts).map(|seq| {
            seq.into_iter()
                .map(|(radius, size, value)| BoundEntry::upper(value, Method::FolnerBox { radius, size }))
                .collect()
        }),
    );
    if g.free_rank() > 0 {
        c.entries(
            "small-period search",
            small_period_search(p, opts).map(|best| {
                best.into_iter()
                    .map(|(t, s)| {
                        BoundEntry::lower(s.density(), Method::SmallPeriodSearch { period: t })
                            .with_witness(Witness::Periodic(s))
                    })
                    .collect()
            }),
        );
    }

    if let Some(fractions) = circle_fractions(p) {
        c.entries("kappa", circle_entries(fractions, opts));
    } else {
        c.entries(
            "kappa",
            p.relation_lattice()
                .and_then(|l| kappa_dual_lower(&l, opts.dual_radius, opts.dual_refinement))
                .map(|w| vec![BoundEntry::lower(w.value.clone(), Method::KappaDual).with_witness(Witness::Kappa(w))]),
        );
    }

    if p.cyclic_multipliers().is_some() {
        c.entries(
            "Delsarte bound",
            delsarte_upper_bound(p, opts).map(|d| {
                let method = match d.grid {
                    None => Method::Fejer {
                        n: d.polynomial.support().len() as u64,
                    },
                    Some(grid) => Method::Delsarte { grid },
                };
                let mut e = BoundEntry::upper(d.bound, method).with_witness(Witness::Cosine(d.polynomial));
                if let Some(v) = d.lp_value {
                    e = e.with_note(format!("LP value C(0) = {v}, shrink factor {}", d.shrink));
                }
                vec![e]
            }),
        );
    }

    if g.lattice().rank() > 0 && g.free_rank() > 0 {
        c.entries(
            "greedy parity construction",
            greedy_parity_construction(p, &g.lattice().complement(), opts).map(|o| {
                let note = format!("parity {}, {} of {} cell points removed", o.parity, o.removed, o.initial);
                vec![BoundEntry::lower(o.set.density(), Method::GreedyParity)
                    .with_witness(Witness::Periodic(o.set))
                    .with_note(note)]
            }),
        );
    }
    c.finish()
}

fn circle_entries(fractions: &[BigRational], opts: &SolverOptions) -> Result<Vec<BoundEntry>> {
    let w = kappa_rational(fractions, opts.enumeration_cap)?;
    let mut out = vec![BoundEntry::lower(w.value.clone(), Method::KappaCyclic).with_witness(Witness::Kappa(w.clone()))];
    if let KappaCertificate::CyclicMultiple { n, .. } = &w.certificate {
        if !n.is_zero() && !w.value.is_zero() {
            if let Ok(set) = interval_construction(fractions, n, &w.value) {
                out.push(
                    BoundEntry::lower(set.measure(), Method::IntervalConstruction { n: n.clone() })
                        .with_witness(Witness::Intervals(set)),
                );
            }
        }
    }
    Ok(out)
}

/// An explicit avoiding set with its exact density and verification stamp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub method: Method,
    pub witness: Witness,
    pub density: BigRational,
    pub verified: bool,
}

fn periodic(p: &DifferenceProblem, s: PeriodicSet, method: Method) -> Construction {
    Construction {
        method,
        density: s.density(),
        verified: verify_avoiding(&s, p),
        witness: Witness::Periodic(s),
    }
}

/// The first applicable construction: rank 1, circle intervals from the
/// kappa multiplier, the finite optimum, the corank-1 cycle, the parity
/// class.
pub fn construct(p: &DifferenceProblem, opts: &SolverOptions) -> Result<Construction> {
    let g = &p.group;
    if let Some(m) = rank1_generator(p) {
        return Ok(periodic(p, rank1_construction_general(&m)?, Method::Rank1Construction));
    }
    if let Some(fractions) = circle_fractions(p) {
        let w = kappa_rational(fractions, opts.enumeration_cap)?;
        if let KappaCertificate::CyclicMultiple { n, .. } = &w.certificate {
            if !n.is_zero() && !w.value.is_zero() {
                let set = interval_construction(fractions, n, &w.value)?;
                return Ok(Construction {
                    method: Method::IntervalConstruction { n: n.clone() },
                    density: set.measure(),
                    verified: set.meets_differences(fractions).is_none(),
                    witness: Witness::Intervals(set),
                });
            }
        }
    }
    if g.is_finite() {
        let r = density_finite_group(p, opts)?;
        if let Some(s) = r.periodic_witness() {
            return Ok(periodic(p, s.clone(), Method::FiniteIndependence));
        }
    }
    if g.free_rank() == 1 {
        let s = corank1_exact(p, opts)?;
        let method = Method::WindowMeanCycle {
            states: s.states,
            period: s.period,
        };
        return Ok(periodic(p, s.witness, method));
    }
    if let Some(h) = half_parity(p, opts)? {
        return Ok(periodic(p, h.even_class, Method::HalfParity));
    }
    Err(Error::NoConstructionApplicable(format!(
        "{} (lattice rank {}, free rank {})",
        g.describe(),
        g.lattice().rank(),
        g.free_rank()
    )))
}

/// The problem `{a_1, …, a_s}` in `Z`.
pub fn integer_problem(multipliers: &[i64]) -> Result<DifferenceProblem> {
    let vs: Vec<Vec<BigInt>> = multipliers.iter().map(|&d| vec![BigInt::from(d)]).collect();
    crate::group::problem_from_integer_vectors(&vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{basis_images, problem_from_rational_circle, quotient_of};
    use crate::lattice::Lattice;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn thirteen_density_and_bounds() {
        let opts = SolverOptions::default();
        let p = problem_from_rational_circle(&[q(1, 13), q(3, 13), q(4, 13)]).unwrap();
        let d = density(&p, &opts).unwrap();
        assert_eq!(d.exact, Some(q(3, 13)));
        let b = bounds(&p, &opts).unwrap();
        let kappa = b.entries.iter().find(|e| e.method == Method::KappaCyclic).unwrap();
        assert_eq!(kappa.value, q(2, 13));
        assert!(b.entries.iter().any(|e| matches!(e.method, Method::FolnerBox { .. }) && e.value == q(3, 13)));
    }

    #[test]
    fn thirteen_intervals() {
        let p = problem_from_rational_circle(&[q(1, 13), q(3, 13), q(4, 13)]).unwrap();
        let c = construct(&p, &SolverOptions::default()).unwrap();
        assert!(c.verified);
        assert_eq!(c.density, q(2, 13));
        let Witness::Intervals(set) = c.witness else { panic!("intervals expected") };
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn rank_one_construction() {
        let l = Lattice::from_i64(2, &[&[2, 3]]).unwrap();
        let p = basis_images(&quotient_of(&l)).unwrap();
        let c = construct(&p, &SolverOptions::default()).unwrap();
        assert!(c.verified);
        assert_eq!(c.density, q(2, 5));
        assert_eq!(density(&p, &SolverOptions::default()).unwrap().exact, Some(q(2, 5)));
    }

    #[test]
    fn middle_rank_has_no_construction() {
        let l = Lattice::from_i64(5, &[&[1, 2, 0, 0, 0], &[0, 0, 1, 2, 0]]).unwrap();
        let p = basis_images(&quotient_of(&l)).unwrap();
        assert!(matches!(
            construct(&p, &SolverOptions::default()),
            Err(Error::NoConstructionApplicable(_))
        ));
        let r = density(&p, &SolverOptions::default()).unwrap();
        assert!(r.lower.value > q(0, 1));
        assert!(r.lower.value <= r.upper.value);
    }

    #[test]
    fn free_rank_zero_lattice_is_half() {
        let p = basis_images(&quotient_of(&Lattice::zero(3))).unwrap();
        assert_eq!(density(&p, &SolverOptions::default()).unwrap().exact, Some(q(1, 2)));
    }

    #[test]
    fn one_three_eight() {
        let p = integer_problem(&[1, 3, 8]).unwrap();
        assert_eq!(density(&p, &SolverOptions::default()).unwrap().exact, Some(q(4, 11)));
    }

    #[test]
    fn one_three_eight_bounds() {
        let p = integer_problem(&[1, 3, 8]).unwrap();
        let b = bounds(&p, &SolverOptions::default()).unwrap();
        assert_eq!(b.exact, Some(q(4, 11)));
        let delsarte = b.entries.iter().find(|e| matches!(e.method, Method::Delsarte { .. })).unwrap();
        assert!(delsarte.value > q(4, 11) && delsarte.value < q(6048, 14561));
        assert!(b.entries.iter().any(|e| e.method == Method::KappaDual));
    }
}
