//! Command-line front end.

mod parse;

pub use parse::{parse_expr, parse_map, parse_rational_map, Expr, ParsedMap};

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::{Display, Write as _};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::{fmt_rational, parse_rational, Rational};
use crate::curves::{build_named_curve, curve_dump, fiber_product, CurveFamily, DEFAULT_DUMP};
use crate::dynamics::RationalMap;
use crate::error::{Error, Result};
use crate::fsutil::write_atomic;
use crate::moduli::{
    classify_psi_portrait, coordinates, curve_equation_cached, family_map, intersect_symmetry, period2_parameter,
    symmetry_value, verify_critical_cycle, FamilyId, Period2Source,
};
use crate::portraits::{
    census, census_parameters, classify_class, portrait, to_dot, to_json, CensusOptions, FieldDesc, PortraitOptions,
    NOVEL,
};
use crate::ring::Field;

pub const ENV_CACHE: &str = "CRITCYCLE_CACHE";
pub const ENV_JOBS: &str = "CRITCYCLE_JOBS";

#[derive(Debug, Parser)]
#[command(name = "critcycle", version, about = "Quadratic rational maps with a periodic critical point")]
pub struct Cli {
    /// Report failures as one JSON object on stderr.
    #[arg(long, global = true)]
    pub json_errors: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Map expression in `x`, optionally `t` and the parameter `c`.
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long)]
    pub family: Option<FamilyId>,
    /// Rational parameter, bound to `c` in `--map` expressions.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub c: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct JsonOut {
    /// Write the JSON result to this path (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The moduli-space curve F_n in (r, s).
    CurveEq {
        #[arg(short, long)]
        n: usize,
        /// Directory holding cached curve equations.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Fixed-point multiplier coordinates (sigma1, sigma2).
    Coords {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Dynatomic polynomial Phi_n, or Phi_{m,n} with --m.
    Dynatomic {
        #[command(flatten)]
        map: MapArgs,
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        m: Option<usize>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Trace polynomial T_n of the n-cycles.
    TracePoly {
        #[command(flatten)]
        map: MapArgs,
        #[arg(short, long)]
        n: usize,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Product of the multipliers of the n-cycles.
    UInvariant {
        #[command(flatten)]
        map: MapArgs,
        #[arg(short, long)]
        n: usize,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Rational preperiodic portrait.
    Portrait {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = PortraitOptions::default().n_max)]
        max_period: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Portrait of psi_c over the field of its critical points.
    ClassifyPsi {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        c: Rational,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Portrait census over parameters of bounded height.
    Sweep {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = PortraitOptions::default().n_max)]
        max_period: usize,
        #[arg(long, env = ENV_JOBS)]
        jobs: Option<usize>,
        #[arg(long, env = ENV_CACHE)]
        cache: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Dynamical modular curve models over a family.
    ModularCurve {
        #[arg(long, default_value = "period4")]
        family: FamilyId,
        /// Curve names such as `Y1(4)`, `Y1(2,2)`, `Ytau(3)` or `Y(1,A)`.
        #[arg(long = "curve")]
        curves: Vec<String>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Common rational fibers of two modular curves.
    FiberProduct {
        #[arg(long, default_value = "period4")]
        family: FamilyId,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long, default_value_t = 50)]
        height: u64,
        /// Report the fibers over one parameter instead of searching.
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        t: Option<Rational>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Points of F_n = 0 on the symmetry locus.
    IntersectSymmetry {
        #[arg(short, long)]
        n: usize,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Recompute the critical points of a family member and check its cycle.
    VerifyFamily {
        #[arg(long)]
        family: FamilyId,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        c: Rational,
        #[command(flatten)]
        out: JsonOut,
    },
    /// psi_c parameter from a rational (from-q) or quadratic (from-p) input.
    Period2Param {
        #[arg(long)]
        kind: Period2Source,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        value: Rational,
        #[command(flatten)]
        out: JsonOut,
    },
}

struct Report {
    text: String,
    json: Value,
}

fn emit(report: Report, out: &JsonOut) -> Result<()> {
    match out.json.as_deref() {
        Some(p) if p == Path::new("-") => println!("{}", serde_json::to_string_pretty(&report.json)?),
        Some(p) => {
            write_atomic(p, (serde_json::to_string_pretty(&report.json)? + "\n").as_bytes())?;
            print!("{}", report.text);
        }
        None => print!("{}", report.text),
    }
    Ok(())
}

impl MapArgs {
    fn resolve(&self) -> Result<ParsedMap> {
        match (&self.map, self.family) {
            (Some(text), None) => {
                let mut env = BTreeMap::new();
                if let Some(c) = &self.c {
                    env.insert("c".to_string(), c.clone());
                }
                parse_map(text, &env)
            }
            (None, Some(fam)) => Ok(match &self.c {
                Some(c) => ParsedMap::Rational(family_map(fam, c)?),
                None => ParsedMap::Family(fam.symbolic()),
            }),
            (Some(_), Some(_)) => Err(Error::Precondition("give either --map or --family, not both".into())),
            (None, None) => Err(Error::Precondition("a map is required: use --map or --family".into())),
        }
    }

    fn rational(&self) -> Result<RationalMap<Rational>> {
        match self.resolve()? {
            ParsedMap::Rational(m) => Ok(m),
            ParsedMap::Family(_) => Err(Error::Precondition("this command needs a map over Q; pass --c".into())),
        }
    }

    fn source(&self) -> (Option<String>, Option<String>) {
        let fam = self.family.map(|f| f.tag().to_string());
        (fam, self.c.as_ref().map(fmt_rational))
    }
}

fn dynatomic_report<F: Field + Display>(phi: &RationalMap<F>, n: usize, m: Option<usize>) -> Result<Report> {
    let d = match m {
        Some(m) => phi.generalized_dynatomic(m, n)?,
        None => phi.dynatomic(n)?,
    };
    let poly = d.poly.to_string();
    Ok(Report {
        text: format!("{poly}\n"),
        json: json!({ "map": phi.to_string(), "kind": d.kind, "m": d.m, "n": d.n, "degree": d.poly.deg(), "polynomial": poly }),
    })
}

fn trace_report<F: Field + Display>(phi: &RationalMap<F>, n: usize) -> Result<Report> {
    let t = phi.trace_polynomial(n)?;
    let poly = t.poly.to_string();
    Ok(Report { text: format!("{poly}\n"), json: json!({ "map": phi.to_string(), "n": n, "polynomial": poly }) })
}

fn u_report<F: Field + Display>(phi: &RationalMap<F>, n: usize) -> Result<Report> {
    let u = phi.u_invariant(n)?.to_string();
    Ok(Report { text: format!("{u}\n"), json: json!({ "map": phi.to_string(), "n": n, "u": u }) })
}

fn sweep_csv(classes: &BTreeMap<String, Vec<String>>) -> String {
    let mut s = String::from("c,class\n");
    for (class, params) in classes {
        for c in params {
            let _ = writeln!(s, "{c},{class}");
        }
    }
    s
}

pub fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::CurveEq { n, cache, out } => {
            let f = curve_equation_cached(n, cache.as_deref())?;
            let text = format!("{}\n", f.display());
            let mut json = f.to_json();
            json["display"] = json!(f.display());
            emit(Report { text, json }, &out)
        }
        Command::Coords { map, out } => {
            let phi = map.rational()?;
            let co = coordinates(&phi)?;
            let (r, s) = co.pair();
            let sym = symmetry_value(&r, &s);
            let text = format!("(r, s) = {co}\nS(r, s) = {}\n", fmt_rational(&sym));
            let mut json = co.to_json();
            json["map"] = json!(phi.to_string());
            json["symmetry_value"] = json!(fmt_rational(&sym));
            emit(Report { text, json }, &out)
        }
        Command::Dynatomic { map, n, m, out } => {
            let r = match map.resolve()? {
                ParsedMap::Rational(phi) => dynatomic_report(&phi, n, m)?,
                ParsedMap::Family(phi) => dynatomic_report(&phi, n, m)?,
            };
            emit(r, &out)
        }
        Command::TracePoly { map, n, out } => {
            let r = match map.resolve()? {
                ParsedMap::Rational(phi) => trace_report(&phi, n)?,
                ParsedMap::Family(phi) => trace_report(&phi, n)?,
            };
            emit(r, &out)
        }
        Command::UInvariant { map, n, out } => {
            let r = match map.resolve()? {
                ParsedMap::Rational(phi) => u_report(&phi, n)?,
                ParsedMap::Family(phi) => u_report(&phi, n)?,
            };
            emit(r, &out)
        }
        Command::Portrait { map, max_period, dot, out } => {
            let phi = map.rational()?;
            let opts = PortraitOptions { n_max: max_period, ..PortraitOptions::default() };
            let mut g = portrait(&phi, &FieldDesc::Rational, opts)?;
            if let (Some(f), Some(c)) = map.source() {
                g = g.with_source(&f, &c);
            }
            if let Some(p) = &dot {
                write_atomic(p, to_dot(&g).as_bytes())?;
            }
            let class = g.class();
            let name = classify_class(&class).map_or(NOVEL, |e| e.name);
            let text = format!(
                "class {name}\nvertices {}\ncycle lengths {:?}\n",
                g.vertices.len(),
                class.cycle_lengths
            );
            emit(Report { text, json: to_json(&g) }, &out)
        }
        Command::ClassifyPsi { c, out } => {
            let r = classify_psi_portrait(&c)?;
            let text = format!("{} over {} ({} vertices)\n", r.class, r.field, r.vertices.len());
            emit(Report { text, json: serde_json::to_value(&r)? }, &out)
        }
        Command::Sweep { family, height, max_period, jobs, cache, csv, out } => {
            let mut opts = CensusOptions::new(family, height);
            opts.portrait.n_max = max_period;
            opts.jobs = jobs;
            opts.cache = cache;
            let rep = census(&opts)?;
            if let Some(p) = &csv {
                write_atomic(p, sweep_csv(&rep.classes).as_bytes())?;
            }
            let mut text = format!(
                "{} parameters ({} computed, {} reused)\n",
                rep.parameters, rep.computed, rep.reused
            );
            for (class, params) in &rep.classes {
                let shown: Vec<&str> = params.iter().take(5).map(String::as_str).collect();
                let more = if params.len() > 5 { ", ..." } else { "" };
                let _ = writeln!(text, "{class}: {} [{}{more}]", params.len(), shown.join(", "));
            }
            emit(Report { text, json: serde_json::to_value(&rep)? }, &out)
        }
        Command::ModularCurve { family, curves, out } => {
            let fam = CurveFamily::from_family(family)?;
            let names: Vec<&str> =
                if curves.is_empty() { DEFAULT_DUMP.to_vec() } else { curves.iter().map(String::as_str).collect() };
            if let [one] = names.as_slice() {
                let c = build_named_curve(&fam, one)?;
                let text = format!("{}: {}\n", c.tag, c.to_json()["polynomial"].as_str().unwrap_or_default());
                return emit(Report { text, json: c.to_json() }, &out);
            }
            let doc = curve_dump(&fam, &names);
            let mut text = String::new();
            for c in doc["curves"].as_array().into_iter().flatten() {
                match c.get("error") {
                    Some(e) => writeln!(text, "{}: error: {}", c["tag"], e),
                    None => writeln!(text, "{}: {}", c["tag"].as_str().unwrap_or_default(), c["polynomial"].as_str().unwrap_or_default()),
                }
                .ok();
            }
            emit(Report { text, json: doc }, &out)
        }
        Command::FiberProduct { family, first, second, height, t, out } => {
            let fam = CurveFamily::from_family(family)?;
            let fp = fiber_product(&build_named_curve(&fam, &first)?, &build_named_curve(&fam, &second)?)?;
            let fmt_all = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>();
            let mut json = fp.to_json();
            let text = match t {
                Some(t) => {
                    let (a, b) = fp.fibers(&t);
                    json["t"] = json!(fmt_rational(&t));
                    json["fibers"] = json!([fmt_all(&a), fmt_all(&b)]);
                    json["excluded"] = json!(fp.excludes(&t));
                    format!("t = {}: {:?} x {:?}\n", fmt_rational(&t), fmt_all(&a), fmt_all(&b))
                }
                None => {
                    let hits: Vec<String> = census_parameters(family, height)
                        .iter()
                        .filter(|t| !fp.excludes(t) && fp.has_common_fiber(t))
                        .map(fmt_rational)
                        .collect();
                    json["height"] = json!(height);
                    json["common_fibers"] = json!(hits);
                    format!("common rational fibers with height <= {height}: [{}]\n", hits.join(", "))
                }
            };
            emit(Report { text, json }, &out)
        }
        Command::IntersectSymmetry { n, out } => {
            let r = intersect_symmetry(n)?;
            let mut text = format!("X_{n}: {} points, residue degrees {:?}\n", r.point_count, r.degrees());
            for c in &r.components {
                let _ = writeln!(text, "  degree {} x{}: {}", c.degree, c.points, c.s_poly.as_deref().unwrap_or(&c.r_poly));
            }
            emit(Report { text, json: serde_json::to_value(&r)? }, &out)
        }
        Command::VerifyFamily { family, c, out } => {
            let r = verify_critical_cycle(family, &c)?;
            let text = format!("{} at c = {}: critical cycle verified\n", family, fmt_rational(&c));
            emit(Report { text, json: serde_json::to_value(&r)? }, &out)
        }
        Command::Period2Param { kind, value, out } => {
            let p = period2_parameter(kind, &value)?;
            let text = format!("c = {}\n", fmt_rational(&p.c));
            emit(Report { text, json: p.to_json() }, &out)
        }
    }
}

fn report_error(kind: &str, message: &str, json_errors: bool) {
    if json_errors {
        eprintln!("{}", json!({ "error": { "kind": kind, "message": message } }));
    } else {
        eprintln!("error: {message}");
    }
}

/// Parses `args` and runs one subcommand, returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_errors = args.iter().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return 0;
        }
        Err(e) if json_errors => {
            report_error("usage", e.to_string().trim(), true);
            return 2;
        }
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            report_error(e.kind(), &e.to_string(), cli.json_errors);
            1
        }
    }
}
