//! Verification suites. Each suite takes a [`SuiteConfig`], runs its checks
//! (one worker per ambient), and returns a [`SuiteReport`].

mod algebra;
mod named;
mod oracle;
mod report;
mod tube;

pub use report::{CheckResult, Outcome, Status, SuiteReport, Verdict, REPORT_SCHEMA};

use std::path::PathBuf;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hall::HallAlgebra;
use crate::ihall::IHall;
use crate::iqg::KNorm;
use crate::quiver::{Ambient, Quiver, DEFAULT_BUDGET};
use crate::wpl::Weights;

pub const SUITE_IDS: [&str; 9] =
    ["serre", "drinfeld", "relS0", "theta-central", "c-central-experimental", "gln", "torsion", "lattice", "oracle"];

/// Which K-normalizations to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormChoice {
    One(KNorm),
    Both,
}

impl NormChoice {
    pub fn parse(s: &str) -> Result<NormChoice> {
        if s == "both" {
            Ok(NormChoice::Both)
        } else {
            Ok(NormChoice::One(KNorm::parse(s)?))
        }
    }

    fn list(self) -> Vec<KNorm> {
        match self {
            NormChoice::One(k) => vec![k],
            NormChoice::Both => vec![KNorm::Signed, KNorm::Plain],
        }
    }
}

/// Overrides for a suite's defaults; `None` or empty means "use the default".
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub quivers: Vec<Quiver>,
    pub qs: Vec<u32>,
    pub weights: Vec<Weights>,
    pub lmax: Option<i64>,
    pub mmax: Option<usize>,
    pub budget: Option<u128>,
    pub k_norm: Option<NormChoice>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    /// Evaluate every new iHall basis product through both closed formulas.
    pub cross_check: bool,
}

impl SuiteConfig {
    fn quivers_or(&self, default: &[&str]) -> Result<Vec<Quiver>> {
        if self.quivers.is_empty() {
            default.iter().map(|s| Quiver::parse(s)).collect()
        } else {
            Ok(self.quivers.clone())
        }
    }

    fn qs_or(&self, default: &[u32]) -> Vec<u32> {
        if self.qs.is_empty() {
            default.to_vec()
        } else {
            self.qs.clone()
        }
    }

    fn weights_or(&self, default: &[&[usize]]) -> Result<Vec<Weights>> {
        if self.weights.is_empty() {
            default.iter().map(|p| Weights::new(p.to_vec())).collect()
        } else {
            Ok(self.weights.clone())
        }
    }

    fn norms_or(&self, default: NormChoice) -> Vec<KNorm> {
        self.k_norm.unwrap_or(default).list()
    }

    pub fn ambient(&self, quiver: Quiver, q: u32) -> Result<Arc<Ambient>> {
        let amb = Ambient::new(quiver, q)?;
        let cap = amb.dims_cap;
        Ok(amb.with_limits(cap, self.budget.unwrap_or(DEFAULT_BUDGET)))
    }

    pub fn ihall(&self, amb: Arc<Ambient>) -> Result<Arc<IHall>> {
        let hall = match &self.cache_dir {
            Some(dir) => HallAlgebra::with_cache_dir(amb, dir)?,
            None => HallAlgebra::new(amb),
        };
        Ok(if self.cross_check { IHall::with_cross_check(hall) } else { IHall::new(hall) })
    }

    fn ihall_of(&self, quiver: Quiver, q: u32) -> Result<Arc<IHall>> {
        self.ihall(self.ambient(quiver, q)?)
    }
}

/// Adds the Hall-formula cross-check counts of `ih` to `r` and flushes its cache.
fn finish_ihall(r: &mut SuiteReport, ih: &IHall, ctx: &str) -> Result<()> {
    let s = ih.cross_check_stats();
    if s.checked > 0 {
        r.stat("hallmult-checked", s.checked);
        r.stat("hallmult-mismatched", s.mismatched);
        r.record("hallmult1=hallmult2", ctx, Ok(s.mismatched == 0))?;
    }
    ih.hall.flush()
}

/// Runs `f` on every job in its own thread and merges the reports in job order.
fn par_jobs<J: Send + Sync>(suite: &str, jobs: &[J], f: impl Fn(&J) -> Result<SuiteReport> + Sync) -> Result<SuiteReport> {
    let results: Vec<Result<SuiteReport>> = std::thread::scope(|s| {
        let hs: Vec<_> = jobs.iter().map(|j| s.spawn(|| f(j))).collect();
        hs.into_iter().map(|h| h.join().unwrap_or_else(|_| Err(Error::InvalidArgument("worker panicked".into())))).collect()
    });
    let mut out = SuiteReport::new(suite);
    for r in results {
        out.merge(r?);
    }
    Ok(out)
}

pub fn run_suite(id: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = match id {
        "serre" => algebra::serre_suite(cfg),
        "drinfeld" => algebra::drinfeld_suite(cfg),
        "relS0" => algebra::rel_s0_suite(cfg),
        "theta-central" => named::theta_central_suite(cfg),
        "c-central-experimental" => named::c_central_suite(cfg),
        "gln" => named::gln_suite(cfg),
        "torsion" => tube::torsion_suite(cfg),
        "lattice" => tube::lattice_suite(cfg),
        "oracle" => oracle::oracle_suite(cfg),
        _ => Err(Error::InvalidArgument(format!("unknown suite {id:?}; expected one of {}", SUITE_IDS.join(", ")))),
    }?;
    r.suite = id.into();
    r.param("seed", cfg.seed);
    if let Some(b) = cfg.budget {
        r.param("budget", b);
    }
    Ok(r)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
