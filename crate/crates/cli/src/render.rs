//! Plain-text and key-value rendering. Every rational is printed exactly,
//! followed by a six-place decimal that is only advisory.

use std::fmt::Write as _;

use motzkin::circle::{Certificate, CosinePolynomial, IntervalSet, KappaWitness};
use motzkin::density::PeriodicSet;
use motzkin::report::{BoundEntry, DensityReport, Side, Witness};
use motzkin::solve::Construction;
use motzkin::{BigInt, BigRational};
use num_traits::Signed;

use crate::parse::ProblemFile;

/// `a/b` rounded half away from zero to six decimal places.
pub fn decimal(q: &BigRational) -> String {
    let scale = BigInt::from(1_000_000);
    let num = q.numer().abs() * &scale * 2 + q.denom();
    let micro: BigInt = num / (q.denom() * 2);
    let (int, frac) = (&micro / &scale, &micro % &scale);
    let sign = if q.is_negative() && micro > BigInt::from(0) { "-" } else { "" };
    format!("{sign}{int}.{frac:0>6}")
}

/// `a/b (≈ d)`; integers keep the `/1`.
pub fn rational(q: &BigRational) -> String {
    format!("{}/{} (≈ {})", q.numer(), q.denom(), decimal(q))
}

pub fn exact_fraction(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn side(s: Side) -> &'static str {
    match s {
        Side::Lower => "lower",
        Side::Upper => "upper",
    }
}

fn periodic(out: &mut String, indent: &str, s: &PeriodicSet) {
    let cell: Vec<String> = s.cell().iter().map(ToString::to_string).collect();
    let periods: Vec<String> = s.periods().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "{indent}group: {}", s.group().describe());
    let _ = writeln!(out, "{indent}cell ({} elements): {{{}}}", cell.len(), cell.join(", "));
    let _ = writeln!(out, "{indent}periods: <{}> (index {})", periods.join(", "), s.period_index());
    let _ = writeln!(out, "{indent}density: {}", rational(&s.density()));
}

fn intervals(out: &mut String, indent: &str, set: &IntervalSet) {
    let _ = writeln!(out, "{indent}intervals ({}):", set.len());
    for (s, e) in set.arcs() {
        let _ = writeln!(out, "{indent}  [{}, {}) length {}", exact_fraction(&s), exact_fraction(&e), exact_fraction(&(&e - &s)));
    }
    let _ = writeln!(out, "{indent}measure: {}", rational(&set.measure()));
}

fn kappa(out: &mut String, indent: &str, w: &KappaWitness) {
    let beta: Vec<String> = w.beta.iter().map(exact_fraction).collect();
    let _ = writeln!(out, "{indent}beta: ({})", beta.join(", "));
    let _ = writeln!(out, "{indent}min distance to Z: {}", rational(&w.value));
    let _ = writeln!(out, "{indent}certificate: {}", w.certificate);
}

fn cosine(out: &mut String, indent: &str, c: &CosinePolynomial) {
    let _ = writeln!(out, "{indent}C(t) = {c}");
    let _ = writeln!(out, "{indent}C(0) = {}", rational(&c.value_at_zero()));
}

fn witness(out: &mut String, indent: &str, w: &Witness) {
    match w {
        Witness::Periodic(s) => periodic(out, indent, s),
        Witness::Intervals(set) => intervals(out, indent, set),
        Witness::Kappa(k) => kappa(out, indent, k),
        Witness::Cosine(c) => cosine(out, indent, c),
    }
}

fn entry_line(e: &BoundEntry) -> String {
    let mut line = format!("{} {}  [{}]", side(e.side), rational(&e.value), e.method);
    if !e.trusted {
        line.push_str(" (not trusted)");
    }
    line
}

/// The lines naming the command and the input as written. Everything after
/// them depends only on the canonical problem and the options, which is the
/// part the cache stores.
pub fn header(command: &str, file: &ProblemFile) -> String {
    format!("command: {command}\nkind: {}\nproblem: {}\n", file.kind, file.problem)
}

pub fn header_kv(command: &str, file: &ProblemFile) -> String {
    format!("command={command}\nkind={}\nproblem={}\n", file.kind, file.problem)
}

/// The text report below the header. Contains no timing or other
/// run-dependent data.
pub fn report(command: &str, r: &DensityReport) -> String {
    let mut out = String::new();
    let status = if r.is_exact() { "EXACT" } else { "NOT-EXACT" };
    let _ = writeln!(out, "status: {status}");
    if let Some(x) = &r.exact {
        let _ = writeln!(out, "density: {}", rational(x));
    }
    let _ = writeln!(out, "lower: {}  [{}]", rational(&r.lower.value), r.lower.method);
    let _ = writeln!(out, "upper: {}  [{}]", rational(&r.upper.value), r.upper.method);
    if let Some(w) = &r.lower.witness {
        let _ = writeln!(out, "lower witness:");
        witness(&mut out, "  ", w);
    }
    let _ = writeln!(out, "bounds ({}):", r.entries.len());
    for e in &r.entries {
        let _ = writeln!(out, "  {}", entry_line(e));
        if let Some(n) = &e.note {
            let _ = writeln!(out, "    note: {n}");
        }
        if command == "bounds" {
            if let Some(w) = &e.witness {
                witness(&mut out, "    ", w);
            }
        }
    }
    if !r.notes.is_empty() {
        let _ = writeln!(out, "notes:");
        for n in &r.notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
    out
}

/// The same fields as [`report`], one `key=value` per line.
pub fn report_kv(r: &DensityReport) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: &str| {
        let _ = writeln!(out, "{k}={}", v.replace('\n', " "));
    };
    kv("status", if r.is_exact() { "EXACT" } else { "NOT-EXACT" });
    kv("exact", &r.exact.as_ref().map_or("-".to_string(), exact_fraction));
    kv("lower", &exact_fraction(&r.lower.value));
    kv("lower.method", &r.lower.method.to_string());
    kv("upper", &exact_fraction(&r.upper.value));
    kv("upper.method", &r.upper.method.to_string());
    for (i, e) in r.entries.iter().enumerate() {
        kv(&format!("entry.{i}.side"), side(e.side));
        kv(&format!("entry.{i}.value"), &exact_fraction(&e.value));
        kv(&format!("entry.{i}.method"), &e.method.to_string());
        kv(&format!("entry.{i}.trusted"), if e.trusted { "true" } else { "false" });
        if let Some(n) = &e.note {
            kv(&format!("entry.{i}.note"), n);
        }
    }
    for (i, n) in r.notes.iter().enumerate() {
        kv(&format!("note.{i}"), n);
    }
    out
}

pub fn construction(c: &Construction) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "construction: {}", c.method);
    witness(&mut out, "", &c.witness);
    if !matches!(c.witness, Witness::Periodic(_)) {
        let _ = writeln!(out, "density: {}", rational(&c.density));
    }
    let _ = writeln!(out, "verification: {}", if c.verified { "VERIFIED" } else { "FAILED" });
    out
}

pub fn certificate(c: &CosinePolynomial, cert: &Certificate) -> String {
    let mut out = String::new();
    let ks: Vec<String> = c.support().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "polynomial: C(t) = {c}");
    let _ = writeln!(out, "support: {{{}}}", ks.join(", "));
    let c0 = c.value_at_zero();
    let _ = writeln!(out, "C(0): {}", rational(&c0));
    match cert {
        Certificate::Nonnegative {
            polynomial,
            distinct_roots,
            odd_roots,
            sample_x,
            sample_value,
        } => {
            let _ = writeln!(out, "status: NONNEGATIVE");
            let _ = writeln!(out, "P(x) with x = cos 2πt: {polynomial}");
            let _ = writeln!(out, "distinct roots in [-1, 1]: {distinct_roots}");
            let _ = writeln!(out, "roots of odd multiplicity in (-1, 1): {odd_roots}");
            let _ = writeln!(out, "sign sample: P({}) = {}", exact_fraction(sample_x), exact_fraction(sample_value));
            if c0.is_positive() {
                let bound = BigRational::from_integer(1.into()) / &c0;
                let _ = writeln!(out, "bound: {}", rational(&bound));
            }
        }
        Certificate::Negative {
            polynomial,
            x_lo,
            x_hi,
            sample_x,
            sample_value,
        } => {
            let (lo, hi) = cert.negative_t_range().unwrap_or((0.0, 0.0));
            let _ = writeln!(out, "status: NEGATIVE at t ∈ ({lo:.4}, {hi:.4})");
            let _ = writeln!(out, "P(x) with x = cos 2πt: {polynomial}");
            let _ = writeln!(out, "P < 0 on x ∈ [{}, {}]", exact_fraction(x_lo), exact_fraction(x_hi));
            let _ = writeln!(out, "sign sample: P({}) = {}", exact_fraction(sample_x), exact_fraction(sample_value));
        }
    }
    out
}
