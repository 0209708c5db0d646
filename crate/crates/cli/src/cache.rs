//! Append-only result cache, one tab-separated record per line:
//!
//! ```text
//! fingerprint  command  context  version  timestamp  lower  upper  exact  methods  body
//! ```
//!
//! `context` pins the solver options (and, where it matters, the input kind);
//! `body` is the rendered report with `\`, tab and newline escaped.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use motzkin::group::DifferenceProblem;
use motzkin::BigRational;
use sha2::{Digest, Sha256};

const FIELDS: usize = 10;
pub const CACHE_FILE: &str = "results.tsv";

/// SHA-256 of the canonical quotient form: invariant factors, free rank and
/// the sorted canonical differences.
pub fn fingerprint(p: &DifferenceProblem) -> String {
    let factors: Vec<String> = p.group.invariant_factors().iter().map(ToString::to_string).collect();
    let mut ds: Vec<_> = p.differences.clone();
    ds.sort();
    let ds: Vec<String> = ds.iter().map(ToString::to_string).collect();
    let canonical = format!(
        "factors={};free={};differences={}",
        factors.join(","),
        p.group.free_rank(),
        ds.join(";")
    );
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub fingerprint: String,
    pub command: String,
    pub context: String,
    pub version: String,
    pub timestamp: u64,
    pub lower: BigRational,
    pub upper: BigRational,
    pub exact: Option<BigRational>,
    pub methods: Vec<String>,
    pub body: String,
}

impl Record {
    pub fn new(
        fingerprint: String,
        command: &str,
        context: String,
        (lower, upper, exact): (BigRational, BigRational, Option<BigRational>),
        methods: Vec<String>,
        body: String,
    ) -> Self {
        Record {
            fingerprint,
            command: command.to_string(),
            context,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            lower,
            upper,
            exact,
            methods,
            body,
        }
    }

    fn to_line(&self) -> String {
        let exact = self.exact.as_ref().map_or("-".to_string(), ToString::to_string);
        let methods: Vec<String> = self.methods.iter().map(|m| escape(&m.replace(';', ","))).collect();
        [
            self.fingerprint.clone(),
            escape(&self.command),
            escape(&self.context),
            escape(&self.version),
            self.timestamp.to_string(),
            self.lower.to_string(),
            self.upper.to_string(),
            exact,
            methods.join(";"),
            escape(&self.body),
        ]
        .join("\t")
    }

    fn from_line(line: &str) -> Result<Self, String> {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != FIELDS {
            return Err(format!("{} fields instead of {FIELDS}", f.len()));
        }
        if f[0].len() != 64 || !f[0].bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err("malformed fingerprint".into());
        }
        let rational = |s: &str| s.parse::<BigRational>().map_err(|_| format!("malformed rational `{s}`"));
        let exact = if f[7] == "-" { None } else { Some(rational(f[7])?) };
        Ok(Record {
            fingerprint: f[0].to_string(),
            command: unescape(f[1])?,
            context: unescape(f[2])?,
            version: unescape(f[3])?,
            timestamp: f[4].parse().map_err(|_| "malformed timestamp".to_string())?,
            lower: rational(f[5])?,
            upper: rational(f[6])?,
            exact,
            methods: if f[8].is_empty() {
                Vec::new()
            } else {
                f[8].split(';').map(unescape).collect::<Result<_, _>>()?
            },
            body: unescape(f[9])?,
        })
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Result<String, String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            other => return Err(format!("bad escape `\\{}`", other.map_or(String::new(), String::from))),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(CACHE_FILE)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Newest record with this key, plus one warning per unreadable line.
    /// A missing cache file is an empty cache.
    pub fn lookup(&self, fingerprint: &str, command: &str, context: &str) -> io::Result<(Option<Record>, Vec<String>)> {
        let text = match fs::read_to_string(self.path()) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((None, Vec::new())),
            Err(e) => return Err(e),
        };
        let mut warnings = Vec::new();
        let mut found = None;
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            match Record::from_line(line) {
                Ok(r) => {
                    if r.fingerprint == fingerprint && r.command == command && r.context == context {
                        found = Some(r);
                    }
                }
                Err(why) => warnings.push(format!("{}:{}: skipped corrupted cache line ({why})", self.path().display(), i + 1)),
            }
        }
        Ok((found, warnings))
    }

    pub fn store(&self, record: &Record) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut f = OpenOptions::new().create(true).append(true).open(self.path())?;
        let mut line = record.to_line();
        line.push('\n');
        f.write_all(line.as_bytes())
    }
}
