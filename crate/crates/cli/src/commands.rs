//! Subcommand bodies. Each returns the text for stdout plus diagnostics, so
//! `main` owns all process I/O.

use std::fmt::Write as _;
use std::path::Path;

use khdetect::hfk::{classify, HfkError};
use khdetect::khovanov::{format_delta_support, khovanov_homology, BigradedDimensions, KhError};
use khdetect::pd::{parse_pd, PlanarDiagram};
use rayon::prelude::*;
use thiserror::Error;

use crate::cache::{Lookup, ResultCache};
use crate::table::{parse_table, KnotTableEntry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<KhError> for CliError {
    fn from(e: KhError) -> Self {
        match e {
            KhError::ChainCondition { .. } => CliError::Invariant(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub code: i32,
}

fn diagram(pd: &str, max_crossings: usize) -> Result<PlanarDiagram, CliError> {
    let d = parse_pd(pd).map_err(|e| CliError::Input(e.to_string()))?;
    if d.crossing_count() > max_crossings {
        return Err(CliError::Input(format!(
            "diagram has {} crossings, above the limit of {max_crossings} (raise --max-crossings)",
            d.crossing_count()
        )));
    }
    Ok(d)
}

pub fn compute(pd: &str, reduced: bool, max_crossings: usize) -> Result<Output, CliError> {
    let d = diagram(pd, max_crossings)?;
    let kh = khovanov_homology(&d, reduced)?;
    let mut s = String::new();
    let theory = if reduced { "reduced" } else { "unreduced" };
    writeln!(s, "# {theory} Khovanov homology over Q, {} crossings", d.crossing_count()).unwrap();
    writeln!(s, "q\th\tdim").unwrap();
    for ((q, h), n) in kh.entries() {
        writeln!(s, "{q}\t{h}\t{n}").unwrap();
    }
    let delta = kh.delta_support();
    writeln!(s, "total\t{}", kh.total_dim()).unwrap();
    writeln!(s, "delta\t{}", format_delta_support(&delta)).unwrap();
    writeln!(s, "thin\t{}", if delta.len() <= 1 { "yes" } else { "no" }).unwrap();
    writeln!(s, "euler\t{}", kh.graded_euler_char()).unwrap();
    Ok(Output { stdout: s, ..Default::default() })
}

pub fn mirror(pd: &str) -> Result<Output, CliError> {
    let d = parse_pd(pd).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Output { stdout: format!("{}\n", d.mirror().to_pd_string()), ..Default::default() })
}

pub fn classify_cmd(dim: i64, genus_bound: i64, out: Option<&Path>) -> Result<Output, CliError> {
    let report = classify(dim, genus_bound).map_err(|e| match e {
        HfkError::InvalidDimension(_) | HfkError::GenusBound(_) => CliError::Input(e.to_string()),
        _ => CliError::Invariant(e.to_string()),
    })?;
    let json = report.to_json_pretty() + "\n";
    match out {
        None => Ok(Output { stdout: json, ..Default::default() }),
        Some(path) => {
            std::fs::write(path, json).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let line = format!(
                "{}: {} accepted, {} rejected\n",
                path.display(),
                report.accepted.len(),
                report.rejected.len()
            );
            Ok(Output { stdout: line, ..Default::default() })
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub dim: u64,
    pub thin_only: bool,
    pub verify_cache: bool,
    pub cache: Option<ResultCache>,
    pub max_crossings: usize,
}

/// Result for one table entry before it is printed.
#[derive(Debug)]
struct Scanned {
    row: Option<String>,
    store: Option<(String, BigradedDimensions)>,
    divergence: Option<String>,
    error: Option<CliError>,
}

fn error_row(name: &str, e: &CliError) -> String {
    format!("{name}\t-\t-\terror\t{e}")
}

/// Homology, a pending cache write, and a divergence message.
type Resolved = (BigradedDimensions, Option<(String, BigradedDimensions)>, Option<String>);

fn homology_for(entry: &KnotTableEntry, opts: &ScanOptions) -> Result<Resolved, CliError> {
    let d = diagram(&entry.pd, opts.max_crossings)?;
    let canon = d.to_pd_string();
    let Some(cache) = &opts.cache else {
        return Ok((khovanov_homology(&d, true)?, None, None));
    };
    match cache.load(&canon, true) {
        Lookup::Hit(h) if !opts.verify_cache => Ok((h, None, None)),
        Lookup::Hit(h) => {
            let fresh = khovanov_homology(&d, true)?;
            if fresh == h {
                Ok((fresh, None, None))
            } else {
                let msg = format!("{}: cached homology differs from recomputation", entry.name);
                Ok((fresh.clone(), Some((canon, fresh)), Some(msg)))
            }
        }
        Lookup::Corrupt => {
            let fresh = khovanov_homology(&d, true)?;
            let msg = opts.verify_cache.then(|| format!("{}: cache entry is unreadable", entry.name));
            Ok((fresh.clone(), Some((canon, fresh)), msg))
        }
        Lookup::Miss => {
            let fresh = khovanov_homology(&d, true)?;
            Ok((fresh.clone(), Some((canon, fresh)), None))
        }
    }
}

fn scan_entry(entry: &KnotTableEntry, opts: &ScanOptions) -> Scanned {
    let (kh, store, divergence) = match homology_for(entry, opts) {
        Ok(x) => x,
        Err(e) => return Scanned { row: Some(error_row(&entry.name, &e)), store: None, divergence: None, error: Some(e) },
    };
    let delta = kh.delta_support();
    let expected = match entry.expected_dims() {
        None => "-",
        Some(Ok(e)) if e == kh => "ok",
        Some(Ok(_)) => "MISMATCH",
        Some(Err(_)) => "bad-expected",
    };
    let matched = if kh.is_thin_candidate(opts.dim) { "yes" } else { "no" };
    let row = (!opts.thin_only || delta.len() == 1).then(|| {
        format!("{}\t{}\t{}\t{matched}\t{expected}", entry.name, kh.total_dim(), format_delta_support(&delta))
    });
    Scanned { row, store, divergence, error: None }
}

pub const SCAN_HEADER: &str = "name\tdim\tdelta\tmatch\texpected";

/// Rows follow table order. Exit code 3 on any cache divergence or chain
/// failure, 2 if some entry was invalid, else 0.
pub fn scan(path: &Path, opts: &ScanOptions) -> Result<Output, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let entries = parse_table(&text).map_err(CliError::Input)?;
    let scanned: Vec<Scanned> = entries.par_iter().map(|e| scan_entry(e, opts)).collect();

    let mut out = Output::default();
    out.stdout.push_str(SCAN_HEADER);
    out.stdout.push('\n');
    for s in &scanned {
        if let Some(row) = &s.row {
            out.stdout.push_str(row);
            out.stdout.push('\n');
        }
        if let Some(msg) = &s.divergence {
            out.stderr.push(format!("cache divergence: {msg}"));
            out.code = EXIT_INVARIANT;
        }
        if let Some(e) = &s.error {
            out.code = out.code.max(e.exit_code());
        }
    }
    if let Some(cache) = &opts.cache {
        for (pd, h) in scanned.iter().filter_map(|s| s.store.as_ref()) {
            if let Err(e) = cache.store(pd, true, h) {
                out.stderr.push(format!("cache write failed in {}: {e}", cache.dir().display()));
            }
        }
    }
    Ok(out)
}
