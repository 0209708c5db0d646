use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use motzkin::circle::CosinePolynomial;
use motzkin::report::DensityReport;
use motzkin::SolverOptions;

use crate::cache::{fingerprint, Cache, Record};
use crate::parse::{parse_polynomial, parse_problem, OptionOverrides, ParseError, ProblemFile};
use crate::render;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Solver(#[from] motzkin::Error),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    KeyValue,
}

/// What a command prints: `body` to stdout, each of `messages` as one line
/// on stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub messages: Vec<String>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_problem(path: &Path) -> Result<ProblemFile, CliError> {
    parse_problem(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_polynomial(path: &Path) -> Result<CosinePolynomial, CliError> {
    parse_polynomial(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// `$XDG_CACHE_HOME/motzkin`, else `$HOME/.cache/motzkin`.
pub fn default_cache_dir() -> Option<PathBuf> {
    let nonempty = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    nonempty("XDG_CACHE_HOME")
        .or_else(|| nonempty("HOME").map(|h| h.join(".cache")))
        .map(|d| d.join("motzkin"))
}

/// Every field that can change a result, in a fixed order.
pub fn options_digest(opts: &SolverOptions) -> String {
    format!(
        "enumeration-cap={} mis-cap={} state-bits={} max-states={} max-folner={} grid-factor={} grid={} lp-margin={} shrink-attempts={} dual-radius={} dual-refinement={}",
        opts.enumeration_cap,
        opts.mis_cap,
        opts.state_bits,
        opts.max_states,
        opts.max_folner,
        opts.grid_factor,
        opts.grid.map_or("auto".to_string(), |g| g.to_string()),
        opts.lp_margin,
        opts.shrink_attempts,
        opts.dual_radius,
        opts.dual_refinement,
    )
}

/// Command-line settings shared by every command of one invocation.
#[derive(Debug, Default)]
pub struct Session {
    /// Applied after the file's own options, so the command line wins.
    pub flags: OptionOverrides,
    pub cache: Option<Cache>,
    pub format: Format,
    store_lock: Mutex<()>,
}

impl Session {
    pub fn new(flags: OptionOverrides, cache: Option<Cache>, format: Format) -> Self {
        Session {
            flags,
            cache,
            format,
            store_lock: Mutex::new(()),
        }
    }

    pub fn options(&self, file: &ProblemFile) -> SolverOptions {
        let mut opts = SolverOptions::default();
        file.options.apply(&mut opts);
        self.flags.apply(&mut opts);
        opts
    }

    fn format_tag(&self) -> &'static str {
        match self.format {
            Format::Text => "text",
            Format::KeyValue => "kv",
        }
    }

    fn render_report(&self, command: &str, r: &DensityReport) -> String {
        match self.format {
            Format::Text => render::report(command, r),
            Format::KeyValue => render::report_kv(r),
        }
    }

    fn header(&self, command: &str, file: &ProblemFile) -> String {
        match self.format {
            Format::Text => render::header(command, file),
            Format::KeyValue => render::header_kv(command, file),
        }
    }

    fn lookup(&self, fp: &str, command: &str, contexts: &[String], warnings: &mut Vec<String>) -> Option<String> {
        let cache = self.cache.as_ref()?;
        for context in contexts {
            match cache.lookup(fp, command, context) {
                Ok((hit, ws)) => {
                    warnings.extend(ws.into_iter().map(|w| format!("warning: {w}")));
                    if let Some(r) = hit {
                        warnings.push(format!("note: cache hit for {command} {} (stored by version {})", &fp[..12], r.version));
                        return Some(r.body);
                    }
                }
                Err(e) => {
                    warnings.push(format!("warning: cache unavailable, continuing without it: {e}"));
                    return None;
                }
            }
        }
        None
    }

    fn store(&self, record: Record, warnings: &mut Vec<String>) {
        let Some(cache) = &self.cache else { return };
        let _guard = self.store_lock.lock().unwrap_or_else(|p| p.into_inner());
        if let Err(e) = cache.store(&record) {
            warnings.push(format!("warning: could not write the cache in {}: {e}", cache.dir().display()));
        }
    }

    fn prologue(file: &ProblemFile) -> Vec<String> {
        file.warnings.iter().map(|w| format!("warning: {w}")).collect()
    }

    /// Exact results do not depend on how the problem was presented, so they
    /// are shared across input kinds; bounds-only results are not.
    pub fn density(&self, file: &ProblemFile) -> Result<Output, CliError> {
        let opts = self.options(file);
        let mut warnings = Self::prologue(file);
        let fp = fingerprint(&file.problem);
        let shared = format!("{} format={}", options_digest(&opts), self.format_tag());
        let by_kind = format!("{shared} kind={}", file.kind);
        let header = self.header("density", file);
        if let Some(body) = self.lookup(&fp, "density", &[shared.clone(), by_kind.clone()], &mut warnings) {
            return Ok(Output {
                body: header + &body,
                messages: warnings,
            });
        }
        let r = motzkin::solve::density(&file.problem, &opts)?;
        let body = self.render_report("density", &r);
        let context = if r.is_exact() { shared } else { by_kind };
        self.store(record(fp, "density", context, &r, body.clone()), &mut warnings);
        Ok(Output {
            body: header + &body,
            messages: warnings,
        })
    }

    pub fn bounds(&self, file: &ProblemFile) -> Result<Output, CliError> {
        let opts = self.options(file);
        let mut warnings = Self::prologue(file);
        let fp = fingerprint(&file.problem);
        let context = format!("{} format={} kind={}", options_digest(&opts), self.format_tag(), file.kind);
        let header = self.header("bounds", file);
        if let Some(body) = self.lookup(&fp, "bounds", std::slice::from_ref(&context), &mut warnings) {
            return Ok(Output {
                body: header + &body,
                messages: warnings,
            });
        }
        let r = motzkin::solve::bounds(&file.problem, &opts)?;
        let body = self.render_report("bounds", &r);
        self.store(record(fp, "bounds", context, &r, body.clone()), &mut warnings);
        Ok(Output {
            body: header + &body,
            messages: warnings,
        })
    }

    pub fn construct(&self, file: &ProblemFile) -> Result<Output, CliError> {
        let opts = self.options(file);
        let mut warnings = Self::prologue(file);
        let fp = fingerprint(&file.problem);
        let context = format!("{} kind={}", options_digest(&opts), file.kind);
        let header = render::header("construct", file);
        if let Some(body) = self.lookup(&fp, "construct", std::slice::from_ref(&context), &mut warnings) {
            return Ok(Output {
                body: header + &body,
                messages: warnings,
            });
        }
        let c = motzkin::solve::construct(&file.problem, &opts)?;
        let body = render::construction(&c);
        let d = c.density.clone();
        let rec = Record::new(fp, "construct", context, (d.clone(), d.clone(), Some(d)), vec![c.method.to_string()], body.clone());
        self.store(rec, &mut warnings);
        Ok(Output {
            body: header + &body,
            messages: warnings,
        })
    }

    pub fn certify(&self, c: &CosinePolynomial) -> Output {
        Output {
            body: render::certificate(c, &c.sturm_certify()),
            messages: Vec::new(),
        }
    }

    /// `density` for each file, in input order. The second value is false if
    /// any file failed; its error is reported in place of its body.
    pub fn batch(&self, paths: &[PathBuf]) -> (Output, bool) {
        let one = |path: &PathBuf| -> (String, Vec<String>, bool) {
            let title = format!("== {} ==\n", path.display());
            match load_problem(path).and_then(|f| self.density(&f)) {
                Ok(out) => {
                    let ws = out.messages.into_iter().map(|w| format!("{}: {w}", path.display())).collect();
                    (title + &out.body, ws, true)
                }
                Err(e) => (format!("{title}error: {e}\n"), Vec::new(), false),
            }
        };
        #[cfg(feature = "parallel")]
        let results: Vec<_> = {
            use rayon::prelude::*;
            paths.par_iter().map(one).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let results: Vec<_> = paths.iter().map(one).collect();
        let mut out = Output::default();
        let mut ok = true;
        for (body, ws, good) in results {
            out.body.push_str(&body);
            out.messages.extend(ws);
            ok &= good;
        }
        (out, ok)
    }
}

fn record(fp: String, command: &str, context: String, r: &DensityReport, body: String) -> Record {
    let mut methods: Vec<String> = r.entries.iter().map(|e| e.method.to_string()).collect();
    methods.dedup();
    Record::new(
        fp,
        command,
        context,
        (r.lower.value.clone(), r.upper.value.clone(), r.exact.clone()),
        methods,
        body,
    )
}
