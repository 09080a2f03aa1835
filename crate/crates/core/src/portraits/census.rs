//! Height-bounded parameter sweeps with an append-only JSONL cache.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Instant;

use num_integer::Integer as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{classify_class, portrait, FieldDesc, PortraitOptions, NOVEL};
use crate::arith::{fmt_rational, rational_height, Rational};
use crate::error::{Error, Result};
use crate::moduli::{family_map, FamilyId};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub family: FamilyId,
    pub height_bound: u64,
    pub portrait: PortraitOptions,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    pub cache: Option<PathBuf>,
}

impl CensusOptions {
    pub fn new(family: FamilyId, height_bound: u64) -> Self {
        CensusOptions { family, height_bound, portrait: PortraitOptions::default(), jobs: None, cache: None }
    }

    /// Hash of everything a record depends on; the height bound is left out
    /// so a wider sweep can reuse a narrower one's cache.
    pub fn options_hash(&self) -> String {
        let key = serde_json::json!({
            "version": CACHE_VERSION,
            "family": self.family.tag(),
            "n_max": self.portrait.n_max,
            "vertex_cap": self.portrait.vertex_cap,
        });
        hex::encode(Sha256::digest(key.to_string().as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub c: String,
    /// Catalog name, `"novel"`, or `"error"`.
    pub class: String,
    pub vertices: usize,
    pub seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheHeader {
    version: u32,
    family: String,
    options_hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub family: FamilyId,
    pub height_bound: u64,
    pub n_max: usize,
    pub parameters: usize,
    pub computed: usize,
    pub reused: usize,
    /// Class name to parameters, in enumeration order.
    pub classes: BTreeMap<String, Vec<String>>,
    /// Certificates of portraits outside the catalog.
    pub novel: BTreeMap<String, Vec<String>>,
    pub failures: Vec<(String, String)>,
    pub assumptions: Vec<String>,
}

/// Admissible `c = a/b` with `max(|a|, b) ≤ bound`, by height then value.
pub fn census_parameters(family: FamilyId, bound: u64) -> Vec<Rational> {
    let h = bound as i64;
    let mut out = Vec::new();
    for b in 1..=h {
        for a in -h..=h {
            if a.gcd(&b) == 1 {
                let c = Rational::new(a.into(), b.into());
                if family.admits(&c) {
                    out.push(c);
                }
            }
        }
    }
    out.sort_by(|x, y| rational_height(x).cmp(&rational_height(y)).then_with(|| x.cmp(y)));
    out
}

fn compute(family: FamilyId, c: &Rational, opts: PortraitOptions) -> CensusRecord {
    let start = Instant::now();
    let result = family_map(family, c).and_then(|phi| portrait(&phi, &FieldDesc::Rational, opts));
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(g) => {
            let class = g.class();
            let name = classify_class(&class).map_or(NOVEL, |e| e.name);
            CensusRecord {
                c: fmt_rational(c),
                class: name.into(),
                vertices: g.vertices.len(),
                seconds,
                certificate: Some(class.certificate),
                error: None,
            }
        }
        Err(e) => CensusRecord {
            c: fmt_rational(c),
            class: "error".into(),
            vertices: 0,
            seconds,
            certificate: None,
            error: Some(e.to_string()),
        },
    }
}

/// Reads cached records, creating the file with a header when absent.
fn open_cache(path: &PathBuf, header: &CacheHeader) -> Result<(File, Vec<CensusRecord>)> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut file = OpenOptions::new().read(true).append(true).create(true).open(path)?;
    let mut records = Vec::new();
    let mut lines = BufReader::new(&file).lines();
    match lines.next() {
        None => {
            writeln!(file, "{}", serde_json::to_string(header)?)?;
            return Ok((file, records));
        }
        Some(first) => {
            let found: CacheHeader = serde_json::from_str(&first?)
                .map_err(|e| Error::Other(format!("{}: unreadable cache header: {e}", path.display())))?;
            if found.options_hash != header.options_hash || found.family != header.family {
                return Err(Error::Other(format!(
                    "{}: cache was written for {} with options {}, not {} with {}",
                    path.display(),
                    found.family,
                    found.options_hash,
                    header.family,
                    header.options_hash
                )));
            }
        }
    }
    for line in lines {
        // a torn final line from an interrupted run is dropped
        if let Ok(r) = serde_json::from_str::<CensusRecord>(&line?) {
            records.push(r);
        }
    }
    // terminate a torn line so the next append starts cleanly
    let len = file.metadata()?.len();
    if len > 0 {
        let mut last = [0u8; 1];
        let mut reader = File::open(path)?;
        reader.seek(SeekFrom::Start(len - 1))?;
        reader.read_exact(&mut last)?;
        if last[0] != b'\n' {
            writeln!(file)?;
        }
    }
    Ok((file, records))
}

pub fn census(opts: &CensusOptions) -> Result<CensusReport> {
    if opts.height_bound == 0 {
        return Err(Error::Precondition("height bound must be at least 1".into()));
    }
    let params = census_parameters(opts.family, opts.height_bound);
    let header =
        CacheHeader { version: CACHE_VERSION, family: opts.family.tag().into(), options_hash: opts.options_hash() };
    let (mut file, cached) = match &opts.cache {
        Some(p) => {
            let (f, r) = open_cache(p, &header)?;
            (Some(f), r)
        }
        None => (None, Vec::new()),
    };
    let mut by_c: BTreeMap<String, CensusRecord> = cached.into_iter().map(|r| (r.c.clone(), r)).collect();
    let todo: Vec<&Rational> = params.iter().filter(|c| !by_c.contains_key(&fmt_rational(c))).collect();
    let reused = params.len() - todo.len();
    let computed = todo.len();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::Other(format!("worker pool: {e}")))?;
    let (tx, rx) = mpsc::channel::<CensusRecord>();
    let (family, popts) = (opts.family, opts.portrait);
    let write_result = std::thread::scope(|s| -> Result<()> {
        s.spawn(|| {
            pool.install(|| {
                todo.par_iter().for_each_with(tx, |tx, c| {
                    let _ = tx.send(compute(family, c, popts));
                })
            })
        });
        // the single writer
        let mut err = None;
        for rec in rx {
            if let (Some(f), None) = (file.as_mut(), &err) {
                let line = serde_json::to_string(&rec)? + "\n";
                if let Err(e) = f.write_all(line.as_bytes()).and_then(|_| f.flush()) {
                    err = Some(e);
                }
            }
            by_c.insert(rec.c.clone(), rec);
        }
        err.map_or(Ok(()), |e| Err(e.into()))
    });
    write_result?;

    let mut classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut novel: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut seen = HashSet::new();
    for c in &params {
        let key = fmt_rational(c);
        if !seen.insert(key.clone()) {
            continue;
        }
        let rec = &by_c[&key];
        match rec.class.as_str() {
            "error" => failures.push((key.clone(), rec.error.clone().unwrap_or_default())),
            NOVEL => novel.entry(rec.certificate.clone().unwrap_or_default()).or_default().push(key.clone()),
            _ => {}
        }
        classes.entry(rec.class.clone()).or_default().push(key);
    }
    let n_max = opts.portrait.n_max;
    Ok(CensusReport {
        family: opts.family,
        height_bound: opts.height_bound,
        n_max,
        parameters: params.len(),
        computed,
        reused,
        classes,
        novel,
        failures,
        assumptions: vec![
            format!("portraits assume no rational periodic point of period greater than {n_max}"),
            "the five-class list also rests on the unproven count of rational points on Y1(2,2); \
             a census can corroborate it but not decide it"
                .into(),
        ],
    })
}
