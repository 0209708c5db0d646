//! Problem files: one `key = value` per line, `#` starts a comment.
//!
//! ```text
//! kind = rational-circle
//! differences = 1/13, 3/13, 4/13
//! ```
//!
//! | kind              | fields                                              |
//! |-------------------|-----------------------------------------------------|
//! | `rational-circle` | `differences`: fractions `a/b`                      |
//! | `integer-vectors` | `dim`, `differences`: vectors `(a,b,…)`             |
//! | `explicit-lattice`| `dim`, `lattice`: generator vectors (may be empty)  |
//! | `corank1-direct`  | `moduli` (may be empty), `differences`: `(g…, h)`   |
//!
//! Solver options may appear in any file: `max-folner`, `state-bits`,
//! `grid`, `dual-radius`, `dual-refinement`, `mis-cap`, `max-states`,
//! `shrink-attempts`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use motzkin::group::{
    basis_images, problem_from_corank1, problem_from_integer_vectors, problem_from_rational_circle, quotient_of,
    DifferenceProblem,
};
use motzkin::circle::{fejer_polynomial, CosinePolynomial};
use motzkin::lattice::Lattice;
use motzkin::{BigInt, BigRational, SolverOptions};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    RationalCircle,
    IntegerVectors,
    ExplicitLattice,
    Corank1Direct,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::RationalCircle => "rational-circle",
            Kind::IntegerVectors => "integer-vectors",
            Kind::ExplicitLattice => "explicit-lattice",
            Kind::Corank1Direct => "corank1-direct",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [Kind::RationalCircle, Kind::IntegerVectors, Kind::ExplicitLattice, Kind::Corank1Direct]
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown kind `{s}`"))
    }
}

/// Solver settings given in a file or on the command line; unset fields keep
/// the defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OptionOverrides {
    pub max_folner: Option<u32>,
    pub state_bits: Option<u32>,
    pub grid: Option<u32>,
    pub dual_radius: Option<u32>,
    pub dual_refinement: Option<u32>,
    pub mis_cap: Option<usize>,
    pub max_states: Option<usize>,
    pub shrink_attempts: Option<usize>,
}

impl OptionOverrides {
    pub fn apply(&self, opts: &mut SolverOptions) {
        if let Some(v) = self.max_folner {
            opts.max_folner = v;
        }
        if let Some(v) = self.state_bits {
            opts.state_bits = v;
        }
        if let Some(v) = self.grid {
            opts.grid = Some(v);
        }
        if let Some(v) = self.dual_radius {
            opts.dual_radius = v;
        }
        if let Some(v) = self.dual_refinement {
            opts.dual_refinement = v;
        }
        if let Some(v) = self.mis_cap {
            opts.mis_cap = v;
        }
        if let Some(v) = self.max_states {
            opts.max_states = v;
        }
        if let Some(v) = self.shrink_attempts {
            opts.shrink_attempts = v;
        }
    }

    fn set(&mut self, key: &str, value: u64) -> bool {
        let small = |v: u64| u32::try_from(v).unwrap_or(u32::MAX);
        let size = |v: u64| usize::try_from(v).unwrap_or(usize::MAX);
        match key {
            "max-folner" => self.max_folner = Some(small(value)),
            "state-bits" => self.state_bits = Some(small(value)),
            "grid" => self.grid = Some(small(value)),
            "dual-radius" => self.dual_radius = Some(small(value)),
            "dual-refinement" => self.dual_refinement = Some(small(value)),
            "mis-cap" => self.mis_cap = Some(size(value)),
            "max-states" => self.max_states = Some(size(value)),
            "shrink-attempts" => self.shrink_attempts = Some(size(value)),
            _ => return false,
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub kind: Kind,
    pub problem: DifferenceProblem,
    pub options: OptionOverrides,
    /// Non-fatal remarks, such as fractions reduced to lowest terms.
    pub warnings: Vec<String>,
}

struct Field<'a> {
    line: usize,
    /// 1-based column where the value starts.
    column: usize,
    value: &'a str,
}

/// A list item with its 1-based column.
struct Item<'a> {
    column: usize,
    text: &'a str,
}

fn split_items<'a>(f: &Field<'a>) -> Result<Vec<Item<'a>>, ParseError> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = f.value.as_bytes();
    let push = |from: usize, to: usize, items: &mut Vec<Item<'a>>| -> Result<(), ParseError> {
        let raw = &f.value[from..to];
        let text = raw.trim();
        let lead = raw.len() - raw.trim_start().len();
        if text.is_empty() {
            return Err(ParseError::at(f.line, f.column + from, "empty list item"));
        }
        items.push(Item {
            column: f.column + from + lead,
            text,
        });
        Ok(())
    };
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ParseError::at(f.line, f.column + i, "unbalanced `)`"));
                }
            }
            b',' if depth == 0 => {
                push(start, i, &mut items)?;
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(ParseError::at(f.line, f.column + f.value.len(), "unclosed `(`"));
    }
    if !f.value.trim().is_empty() {
        push(start, f.value.len(), &mut items)?;
    }
    Ok(items)
}

fn integer(text: &str, line: usize, column: usize) -> Result<BigInt, ParseError> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::at(line, column, format!("malformed integer `{text}`")));
    }
    text.parse().map_err(|_| ParseError::at(line, column, format!("malformed integer `{text}`")))
}

/// `a/b` or `a`; the flag says whether it was given in lowest terms.
fn fraction(item: &Item, line: usize) -> Result<(BigRational, bool), ParseError> {
    let Some((a, b)) = item.text.split_once('/') else {
        return Ok((BigRational::from_integer(integer(item.text, line, item.column)?), true));
    };
    let n = integer(a.trim(), line, item.column)?;
    let d = integer(b.trim(), line, item.column + a.len() + 1)?;
    if d.is_zero() {
        return Err(ParseError::at(line, item.column, format!("zero denominator in `{}`", item.text)));
    }
    let q = BigRational::new(n.clone(), d.clone());
    let reduced = q.numer() == &n && q.denom() == &d;
    Ok((q, reduced))
}

fn vector(item: &Item, line: usize) -> Result<Vec<BigInt>, ParseError> {
    let inner = item
        .text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| ParseError::at(line, item.column, format!("expected a vector `(a,b,…)`, found `{}`", item.text)))?;
    let mut out = Vec::new();
    let mut offset = 1;
    for part in inner.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push(integer(part.trim(), line, item.column + offset + lead)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

fn unsigned(f: &Field) -> Result<u64, ParseError> {
    let v = integer(f.value.trim(), f.line, f.column)?;
    u64::try_from(&v).map_err(|_| ParseError::at(f.line, f.column, format!("expected a nonnegative integer, found `{v}`")))
}

const KNOWN: [&str; 5] = ["kind", "differences", "dim", "lattice", "moduli"];

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut fields: HashMap<String, Field> = HashMap::new();
    let mut options = OptionOverrides::default();
    let mut lines = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        lines = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(ParseError::at(line, col, "expected `key = value`"));
        };
        let key = content[..eq].trim();
        let value = &content[eq + 1..];
        let lead = value.len() - value.trim_start().len();
        let field = Field {
            line,
            column: eq + 2 + lead,
            value: value.trim(),
        };
        let key_col = content.len() - content.trim_start().len() + 1;
        if key.is_empty() {
            return Err(ParseError::at(line, key_col, "missing key before `=`"));
        }
        if !KNOWN.contains(&key) {
            let mut probe = OptionOverrides::default();
            if !probe.set(key, 0) {
                return Err(ParseError::at(line, key_col, format!("unknown key `{key}`")));
            }
            options.set(key, unsigned(&field)?);
            continue;
        }
        if let Some(prev) = fields.get(key) {
            return Err(ParseError::at(line, key_col, format!("`{key}` already given on line {}", prev.line)));
        }
        fields.insert(key.to_string(), field);
    }
    let end = lines + 1;
    let missing = |name: &str| ParseError::at(end, 1, format!("missing field `{name}`"));
    let kind_field = fields.get("kind").ok_or_else(|| missing("kind"))?;
    let kind: Kind = kind_field
        .value
        .parse()
        .map_err(|m: String| ParseError::at(kind_field.line, kind_field.column, m))?;
    let allowed: &[&str] = match kind {
        Kind::RationalCircle => &["kind", "differences"],
        Kind::IntegerVectors => &["kind", "differences", "dim"],
        Kind::ExplicitLattice => &["kind", "lattice", "dim"],
        Kind::Corank1Direct => &["kind", "differences", "moduli"],
    };
    let mut unexpected: Vec<&Field> = fields
        .iter()
        .filter(|(k, _)| !allowed.contains(&k.as_str()))
        .map(|(_, f)| f)
        .collect();
    unexpected.sort_by_key(|f| f.line);
    if let Some(f) = unexpected.first() {
        return Err(ParseError::at(f.line, 1, format!("field not used by kind `{kind}`")));
    }
    let mut warnings = Vec::new();
    let problem = match kind {
        Kind::RationalCircle => {
            let f = fields.get("differences").ok_or_else(|| missing("differences"))?;
            let items = nonempty(f)?;
            let mut fractions = Vec::with_capacity(items.len());
            for item in &items {
                let (q, reduced) = fraction(item, f.line)?;
                if !reduced {
                    warnings.push(format!("line {}, column {}: `{}` normalized to {q}", f.line, item.column, item.text));
                }
                if q.is_integer() {
                    return Err(ParseError::at(f.line, item.column, format!("zero difference `{}` (an integer is 0 mod 1)", item.text)));
                }
                fractions.push(q);
            }
            problem_from_rational_circle(&fractions).map_err(|e| solver_error(e, f, &items))?
        }
        Kind::IntegerVectors => {
            let f = fields.get("differences").ok_or_else(|| missing("differences"))?;
            let items = nonempty(f)?;
            let dim = fields.get("dim").map(unsigned).transpose()?;
            let mut vs = Vec::with_capacity(items.len());
            for item in &items {
                let v = if dim == Some(1) && !item.text.starts_with('(') {
                    vec![integer(item.text, f.line, item.column)?]
                } else {
                    vector(item, f.line)?
                };
                let want = dim.unwrap_or_else(|| vs.first().map_or(v.len(), |w: &Vec<BigInt>| w.len()) as u64);
                if v.len() as u64 != want {
                    return Err(ParseError::at(f.line, item.column, format!("expected {want} coordinates, found {}", v.len())));
                }
                if v.iter().all(Zero::is_zero) {
                    return Err(ParseError::at(f.line, item.column, "zero difference"));
                }
                vs.push(v);
            }
            problem_from_integer_vectors(&vs).map_err(|e| solver_error(e, f, &items))?
        }
        Kind::ExplicitLattice => {
            let d = fields.get("dim").ok_or_else(|| missing("dim"))?;
            let dim = unsigned(d)? as usize;
            if dim == 0 {
                return Err(ParseError::at(d.line, d.column, "dimension must be positive"));
            }
            let f = fields.get("lattice").ok_or_else(|| missing("lattice"))?;
            let items = split_items(f)?;
            let mut rows = Vec::with_capacity(items.len());
            for item in &items {
                let v = vector(item, f.line)?;
                if v.len() != dim {
                    return Err(ParseError::at(f.line, item.column, format!("expected {dim} coordinates, found {}", v.len())));
                }
                rows.push(v);
            }
            let lattice = Lattice::from_generators(dim, &rows).map_err(|e| ParseError::at(f.line, f.column, e.to_string()))?;
            basis_images(&quotient_of(&lattice)).map_err(|e| match e {
                motzkin::Error::IdentityDifference { index } => ParseError::at(
                    f.line,
                    f.column,
                    format!("e_{} lies in the lattice, so its image is the zero difference", index + 1),
                ),
                e => ParseError::at(f.line, f.column, e.to_string()),
            })?
        }
        Kind::Corank1Direct => {
            let moduli = match fields.get("moduli") {
                Some(m) => {
                    let mut out = Vec::new();
                    for item in split_items(m)? {
                        let a = integer(item.text, m.line, item.column)?;
                        if !a.is_positive() {
                            return Err(ParseError::at(m.line, item.column, "moduli must be positive"));
                        }
                        out.push(a);
                    }
                    out
                }
                None => Vec::new(),
            };
            let f = fields.get("differences").ok_or_else(|| missing("differences"))?;
            let items = nonempty(f)?;
            let mut vs = Vec::with_capacity(items.len());
            for item in &items {
                let v = vector(item, f.line)?;
                if v.len() != moduli.len() + 1 {
                    return Err(ParseError::at(
                        f.line,
                        item.column,
                        format!("expected {} coordinates (one per modulus, then Z), found {}", moduli.len() + 1, v.len()),
                    ));
                }
                vs.push(v);
            }
            if moduli.iter().any(|m: &BigInt| m.is_one()) {
                warnings.push("moduli equal to 1 contribute a trivial factor".into());
            }
            problem_from_corank1(&moduli, &vs).map_err(|e| solver_error(e, f, &items))?
        }
    };
    Ok(ProblemFile {
        kind,
        problem,
        options,
        warnings,
    })
}

fn nonempty<'a>(f: &Field<'a>) -> Result<Vec<Item<'a>>, ParseError> {
    let items = split_items(f)?;
    if items.is_empty() {
        return Err(ParseError::at(f.line, f.column, "at least one difference is required"));
    }
    Ok(items)
}

fn solver_error(e: motzkin::Error, f: &Field, items: &[Item]) -> ParseError {
    match e {
        motzkin::Error::IdentityDifference { index } => {
            let column = items.get(index).map_or(f.column, |i| i.column);
            ParseError::at(f.line, column, "zero difference")
        }
        e => ParseError::at(f.line, f.column, e.to_string()),
    }
}

/// Polynomial files for `certify`: `terms = k:c, …`, or `support` with a
/// matching `coefficients` list, or `fejer = N`. The constant term is 1.
pub fn parse_polynomial(text: &str) -> Result<CosinePolynomial, ParseError> {
    let mut fields: HashMap<String, Field> = HashMap::new();
    let mut lines = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        lines = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let key_col = content.len() - content.trim_start().len() + 1;
        let Some(eq) = content.find('=') else {
            return Err(ParseError::at(line, key_col, "expected `key = value`"));
        };
        let key = content[..eq].trim();
        if !["terms", "support", "coefficients", "fejer"].contains(&key) {
            return Err(ParseError::at(line, key_col, format!("unknown key `{key}`")));
        }
        let value = &content[eq + 1..];
        let lead = value.len() - value.trim_start().len();
        let field = Field {
            line,
            column: eq + 2 + lead,
            value: value.trim(),
        };
        if let Some(prev) = fields.get(key) {
            return Err(ParseError::at(line, key_col, format!("`{key}` already given on line {}", prev.line)));
        }
        fields.insert(key.to_string(), field);
    }
    let end = lines + 1;
    let given: Vec<&str> = ["terms", "support", "fejer"].into_iter().filter(|k| fields.contains_key(*k)).collect();
    if given.len() != 1 {
        return Err(ParseError::at(end, 1, "give exactly one of `terms`, `support` or `fejer`"));
    }
    let at_field = |f: &Field, e: motzkin::Error| ParseError::at(f.line, f.column, e.to_string());
    if let Some(f) = fields.get("fejer") {
        let n = unsigned(f)?;
        if n == 0 {
            return Err(ParseError::at(f.line, f.column, "Fejér order must be positive"));
        }
        return Ok(fejer_polynomial(n));
    }
    let mut terms = Vec::new();
    if let Some(f) = fields.get("terms") {
        for item in split_items(f)? {
            let (k, c) = item
                .text
                .split_once(':')
                .ok_or_else(|| ParseError::at(f.line, item.column, format!("expected `k:c`, found `{}`", item.text)))?;
            let k = frequency(k.trim(), f.line, item.column)?;
            let c_item = Item {
                column: item.column + item.text.find(':').unwrap_or(0) + 1 + (c.len() - c.trim_start().len()),
                text: c.trim(),
            };
            terms.push((k, fraction(&c_item, f.line)?.0));
        }
    } else {
        let s = &fields["support"];
        let c = fields.get("coefficients").ok_or_else(|| ParseError::at(end, 1, "missing field `coefficients`"))?;
        let ks = split_items(s)?;
        let cs = split_items(c)?;
        if ks.len() != cs.len() {
            return Err(ParseError::at(c.line, c.column, format!("{} coefficients for {} frequencies", cs.len(), ks.len())));
        }
        for (k, x) in ks.iter().zip(&cs) {
            terms.push((frequency(k.text, s.line, k.column)?, fraction(x, c.line)?.0));
        }
    }
    let f = fields.get("terms").or_else(|| fields.get("support")).expect("one of them is present");
    CosinePolynomial::new(terms).map_err(|e| at_field(f, e))
}

fn frequency(text: &str, line: usize, column: usize) -> Result<u64, ParseError> {
    let k = integer(text, line, column)?;
    match u64::try_from(&k) {
        Ok(k) if k > 0 => Ok(k),
        _ => Err(ParseError::at(line, column, format!("frequency must be a positive integer, found `{text}`"))),
    }
}
