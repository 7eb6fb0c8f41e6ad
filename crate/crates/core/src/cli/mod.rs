//! Command-line driver. [`run`] parses argv, writes the report to `out`,
//! diagnostics to `err`, and returns the process exit code:
//! 0 success, 1 a check failed, 2 usage or input error, 3 budget exhausted.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::hall::{parse_record, DiskCache, HallAlgebra, HallElem};
use crate::ihall::{IHall, IHallElem};
use crate::iqg::{root_vector_word, Braid, Drinfeld, Evaluator, KNorm, OmegaOrder};
use crate::named::{c_hat, h0m, theta_hat};
use crate::quiver::Quiver;
use crate::suites::{run_suite, CheckResult, NormChoice, Status, SuiteConfig, SuiteReport, SUITE_IDS};
use crate::wpl::{point_census, Weights};

/// Conventions pinned at build time; `verify --golden <path> --bless` rewrites a copy.
pub const GOLDEN_CONVENTIONS: &str = include_str!("../../golden/conventions.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ihall", version, about = "Exact iHall algebra computations and verification suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AlgebraKind {
    Hall,
    Ihall,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum NamedKind {
    H0m,
    Theta,
    C,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// `cn:<n>`, `star:<p1,p2,..>:<in|out>`, `qj:<n>:<j>` or `arrows:<n>:<s>t,..>`; repeatable
    #[arg(long = "quiver")]
    quivers: Vec<String>,
    /// Field order; repeatable
    #[arg(long = "q")]
    qs: Vec<u32>,
    #[arg(long)]
    lmax: Option<i64>,
    #[arg(long)]
    mmax: Option<usize>,
    /// Largest enumeration (number of field tuples) a single step may perform
    #[arg(long)]
    budget: Option<u128>,
    /// signed, plain or both
    #[arg(long = "k-norm")]
    k_norm: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    report: ReportFormat,
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run a verification suite
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Weight sequence `p=2,3`; repeatable
        #[arg(long = "weights")]
        weights: Vec<String>,
        #[arg(long = "strict-experimental")]
        strict_experimental: bool,
        /// Golden conventions file (defaults to the built-in copy)
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Rewrite the golden file from this run instead of comparing
        #[arg(long, requires = "golden")]
        bless: bool,
        /// Evaluate every iHall basis product both ways
        #[arg(long = "cross-check")]
        cross_check: bool,
    },
    /// Multiply two elements
    Product {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value = "hall")]
        algebra: AlgebraKind,
    },
    /// Evaluate the root vector `B_{j,l}` as a braid word and in the iHall algebra
    Rootvec {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        j: usize,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
    /// Build a distinguished element
    Named {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        name: NamedKind,
        #[arg(long)]
        m: usize,
    },
    /// Closed points of the projective line by degree
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        dmax: u64,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Inspect or maintain a structure-constant cache directory
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        #[arg(long = "cache-dir")]
        cache_dir: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CacheAction {
    Stats,
    Gc,
    Verify,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::SearchTooLarge { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn config(c: &Common) -> Result<SuiteConfig> {
    Ok(SuiteConfig {
        quivers: c.quivers.iter().map(|s| Quiver::parse(s)).collect::<Result<_>>()?,
        qs: c.qs.clone(),
        weights: Vec::new(),
        lmax: c.lmax,
        mmax: c.mmax,
        budget: c.budget,
        k_norm: c.k_norm.as_deref().map(NormChoice::parse).transpose()?,
        seed: c.seed,
        cache_dir: c.cache_dir.clone(),
        cross_check: false,
    })
}

/// The single `(quiver, q)` ambient named on the command line.
fn single_ihall(c: &Common) -> Result<Arc<IHall>> {
    let cfg = config(c)?;
    let [qv] = cfg.quivers.as_slice() else {
        return Err(Error::InvalidArgument("exactly one --quiver is required".into()));
    };
    let [q] = cfg.qs.as_slice() else {
        return Err(Error::InvalidArgument("exactly one --q is required".into()));
    };
    cfg.ihall(cfg.ambient(qv.clone(), *q)?)
}

/// A bare class label such as `1:1+0:1` is read as that basis element.
pub fn parse_element(ih: &Arc<IHall>, s: &str) -> Result<IHallElem> {
    let t = s.trim();
    if t.starts_with('(') || t == "0" {
        ih.parse(t)
    } else {
        Ok(ih.basis(ih.amb().parse_class(t)?))
    }
}

fn to_hall(hall: &Arc<HallAlgebra>, x: &IHallElem) -> Result<HallElem> {
    let mut out = HallElem::zero(hall.clone());
    for ((m, a), c) in &x.terms {
        if a.iter().any(|&e| e != 0) {
            return Err(Error::InvalidArgument("torus factors are not allowed with --algebra hall".into()));
        }
        out.add_term(*m, c.clone());
    }
    Ok(out)
}

fn emit_value(out: &mut dyn Write, fmt: ReportFormat, fields: &[(&str, String)]) -> Result<()> {
    match fmt {
        ReportFormat::Text => {
            for (k, v) in fields {
                writeln!(out, "{k}: {v}")?;
            }
        }
        ReportFormat::Json => {
            let m: BTreeMap<&str, &String> = fields.iter().map(|(k, v)| (*k, v)).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&m).expect("strings serialize"))?;
        }
    }
    Ok(())
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Verify { suite, common, weights, strict_experimental, golden, bless, cross_check } => {
            let mut cfg = config(&common)?;
            cfg.weights = weights.iter().map(|s| Weights::parse(s)).collect::<Result<_>>()?;
            cfg.cross_check = cross_check;
            verify(&suite, &cfg, common.report, strict_experimental, golden.as_deref(), bless, out, err)
        }
        Cmd::Product { common, a, b, algebra } => {
            let ih = single_ihall(&common)?;
            let (x, y) = (parse_element(&ih, &a)?, parse_element(&ih, &b)?);
            let prod = match algebra {
                AlgebraKind::Ihall => ih.product(&x, &y)?.to_string(),
                AlgebraKind::Hall => ih.hall.twisted_product(&to_hall(&ih.hall, &x)?, &to_hall(&ih.hall, &y)?)?.to_string(),
            };
            ih.hall.flush()?;
            emit_value(out, common.report, &[("product", prod)])?;
            Ok(EXIT_OK)
        }
        Cmd::Rootvec { common, j, l } => {
            let ih = single_ihall(&common)?;
            let norm = match common.k_norm.as_deref() {
                Some(s) => KNorm::parse(s)?,
                None => KNorm::Plain,
            };
            let n = ih.n();
            let cartan = if ih.amb().quiver.is_cyclic() { ih.amb().quiver.cartan() } else { Quiver::cyclic(n)?.cartan() };
            let br = Braid::new(cartan);
            let word = root_vector_word(&br, j, l, OmegaOrder::SigmaOuter, &ih.q())?;
            let value = Evaluator::new(ih.clone(), norm)?.eval(&word)?;
            ih.hall.flush()?;
            emit_value(out, common.report, &[("word", word.to_string()), ("value", value.to_string())])?;
            Ok(EXIT_OK)
        }
        Cmd::Named { common, name, m } => {
            let ih = single_ihall(&common)?;
            let x = match name {
                NamedKind::H0m => h0m(&ih, m)?,
                NamedKind::C => c_hat(&ih, m)?,
                NamedKind::Theta => {
                    let d = Drinfeld::new(Arc::new(Evaluator::new(ih.clone(), KNorm::Plain)?), OmegaOrder::SigmaOuter)?;
                    theta_hat(&d, m)?
                }
            };
            ih.hall.flush()?;
            emit_value(out, common.report, &[("element", x.to_string())])?;
            Ok(EXIT_OK)
        }
        Cmd::Census { q, dmax, report } => {
            let mut m = BTreeMap::new();
            for d in 1..=dmax {
                m.insert(d.to_string(), point_census(q, d)?);
            }
            match report {
                ReportFormat::Json => writeln!(out, "{}", serde_json::to_string(&m).expect("census serializes"))?,
                ReportFormat::Text => {
                    for d in 1..=dmax {
                        writeln!(out, "degree {d}: {}", m[&d.to_string()])?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Cache { action, cache_dir, report } => cache(action, &cache_dir, report, out, err),
    }
}

/// Compares the report's pinned conventions with the golden file, or rewrites it.
fn golden_checks(r: &mut SuiteReport, golden: Option<&Path>, bless: bool) -> Result<()> {
    let text = match golden {
        Some(p) if p.exists() => fs::read_to_string(p)?,
        Some(_) => "{}".to_string(),
        None => GOLDEN_CONVENTIONS.to_string(),
    };
    let mut pinned: BTreeMap<String, String> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("golden file: {e}")))?;
    if bless {
        let path = golden.expect("clap requires --golden with --bless");
        for (k, v) in &r.conventions {
            pinned.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&pinned).expect("strings serialize");
        s.push('\n');
        fs::write(path, s)?;
        return Ok(());
    }
    let tracked: Vec<(String, String)> =
        r.conventions.iter().filter(|(k, _)| pinned.contains_key(*k)).map(|(k, v)| (k.clone(), v.clone())).collect();
    for (k, v) in tracked {
        let want = &pinned[&k];
        let c = r.record("golden", &format!("{k}={want}"), Ok(*want == v))?;
        if *want != v {
            c.residual = Some(format!("observed {k}={v}"));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    cfg: &SuiteConfig,
    fmt: ReportFormat,
    strict: bool,
    golden: Option<&Path>,
    bless: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    if !SUITE_IDS.contains(&suite) {
        return Err(Error::InvalidArgument(format!("unknown suite {suite:?}; expected one of {}", SUITE_IDS.join(", "))));
    }
    let t0 = Instant::now();
    let mut r = run_suite(suite, cfg)?;
    golden_checks(&mut r, golden, bless)?;
    match fmt {
        ReportFormat::Json => writeln!(out, "{}", r.to_json())?,
        ReportFormat::Text => write!(out, "{}", r.to_text())?,
    }
    // timings stay out of the report so that it is reproducible byte for byte
    writeln!(err, "{suite}: {:.2}s", t0.elapsed().as_secs_f64())?;
    let outcome = r.outcome(strict);
    if let Some(CheckResult { id, context, status, .. }) = r.first_failure(strict) {
        let what = if *status == Status::SkippedBudget { "budget exhausted at" } else { "failed" };
        writeln!(err, "{what}: {id} {context}")?;
    }
    Ok(outcome.code())
}

fn cache_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "hall"))
        .collect();
    v.sort();
    Ok(v)
}

/// `(quiver, q)` of a cache file, read from its first record.
fn cache_ambient(path: &Path) -> Result<Option<(String, u32)>> {
    let text = fs::read_to_string(path)?;
    let Some(line) = text.lines().skip(1).find(|l| !l.trim().is_empty()) else {
        return Ok(None);
    };
    let (q, quiver, ..) =
        parse_record(line).ok_or_else(|| Error::CorruptCache(format!("{}: unparseable record", path.display())))?;
    Ok(Some((quiver, q)))
}

fn cache(action: CacheAction, dir: &Path, fmt: ReportFormat, out: &mut dyn Write, _err: &mut dyn Write) -> Result<i32> {
    let mut r = SuiteReport::new(&format!("cache-{action:?}").to_lowercase());
    r.param("cache-dir", dir.display());
    for path in cache_files(dir)? {
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let Some((quiver, q)) = cache_ambient(&path)? else {
            r.record("empty", &name, Ok(true))?;
            continue;
        };
        let mut disk = DiskCache::open(dir, &quiver, q)?;
        match action {
            CacheAction::Stats => {
                let s = disk.stats();
                r.stat(&format!("{name}:entries"), s.entries as u64);
                r.stat(&format!("{name}:terms"), s.terms as u64);
            }
            CacheAction::Gc => {
                disk.gc()?;
                r.stat(&format!("{name}:entries"), disk.stats().entries as u64);
            }
            CacheAction::Verify => {
                // recompute every stored product without the cache
                let cfg = SuiteConfig::default();
                let hall = HallAlgebra::new(cfg.ambient(Quiver::parse(&quiver)?, q)?);
                let amb = hall.amb.clone();
                let entries: Vec<_> = disk.entries().map(|((a, b), v)| (a.clone(), b.clone(), v.clone())).collect();
                for (a, b, v) in entries {
                    let res = (|| -> Result<bool> {
                        let fresh = hall.untwisted(amb.parse_class(&a)?, amb.parse_class(&b)?)?;
                        let mut got: Vec<(String, _)> = fresh.iter().map(|(l, c)| (amb.label(*l), c.clone())).collect();
                        let mut want = v.clone();
                        got.sort();
                        want.sort();
                        Ok(got == want)
                    })();
                    r.record("cache-entry", &format!("{name} A={a} B={b}"), res)?;
                }
            }
        }
    }
    match fmt {
        ReportFormat::Json => writeln!(out, "{}", r.to_json())?,
        ReportFormat::Text => write!(out, "{}", r.to_text())?,
    }
    Ok(r.outcome(false).code())
}
