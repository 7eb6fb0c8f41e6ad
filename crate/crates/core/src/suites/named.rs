use std::sync::Arc;

use super::algebra::{ORDER, WINNER};
use super::{finish_ihall, join, par_jobs, SuiteConfig, SuiteReport};
use crate::coeff::rat;
use crate::error::Result;
use crate::ihall::IHallElem;
use crate::iqg::{Drinfeld, Evaluator};
use crate::named::{c_hat, h0m, theta_hat};
use crate::quiver::Quiver;

fn jobs(cfg: &SuiteConfig, quivers: &[&str], qs: &[u32]) -> Result<(Vec<Quiver>, Vec<u32>, Vec<(Quiver, u32)>)> {
    let quivers = cfg.quivers_or(quivers)?;
    let qs = cfg.qs_or(qs);
    let jobs = quivers.iter().flat_map(|qv| qs.iter().map(move |&q| (qv.clone(), q))).collect();
    Ok((quivers, qs, jobs))
}

fn drinfeld(cfg: &SuiteConfig, qv: &Quiver, q: u32) -> Result<Drinfeld> {
    let ih = cfg.ihall_of(qv.clone(), q)?;
    Drinfeld::new(Arc::new(Evaluator::new(ih, WINNER)?), ORDER)
}

fn params(r: &mut SuiteReport, quivers: &[Quiver], qs: &[u32], mmax: usize) {
    r.param("quivers", join(&quivers.iter().map(|q| q.spec()).collect::<Vec<_>>()));
    r.param("q", join(&qs));
    r.param("mmax", mmax);
    r.convention("k-norm", WINNER.name());
    r.convention("braid-order", super::algebra::order_name(ORDER));
}

pub fn theta_central_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (quivers, qs, jobs) = jobs(cfg, &["cn:2", "cn:3"], &[2, 3])?;
    let mmax = cfg.mmax.unwrap_or(2);
    let mut r = par_jobs("theta-central", &jobs, |(qv, q)| {
        let mut r = SuiteReport::new("theta-central");
        let d = drinfeld(cfg, qv, *q)?;
        let ctx = format!("quiver={} q={q}", qv.spec());
        for m in 1..=mmax {
            let th = theta_hat(&d, m);
            let deg = th.as_ref().map(|t| t.grade() == Some(vec![m as i64; d.n()]));
            r.record("theta-degree", &format!("{ctx} m={m}"), deg.map_err(Clone::clone))?;
            for i in 0..d.n() {
                let res = th.as_ref().map_err(Clone::clone).and_then(|t| d.comm(t, &d.ev().b(i), 0));
                r.record("theta-central", &format!("{ctx} m={m} i={i}"), res)?;
            }
        }
        finish_ihall(&mut r, d.ih(), &ctx)?;
        Ok(r)
    })?;
    params(&mut r, &quivers, &qs, mmax);
    Ok(r)
}

pub fn c_central_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (quivers, qs, jobs) = jobs(cfg, &["cn:2", "cn:3"], &[2])?;
    let mmax = cfg.mmax.unwrap_or(1);
    let mut r = par_jobs("c-central-experimental", &jobs, |(qv, q)| {
        let mut r = SuiteReport::new("c-central-experimental");
        let ih = cfg.ihall_of(qv.clone(), *q)?;
        let ctx = format!("quiver={} q={q}", qv.spec());
        for m in 1..=mmax {
            let c = c_hat(&ih, m);
            for i in 0..ih.n() {
                let res = c.as_ref().map_err(Clone::clone).and_then(|c| ih.commutator_v(c, &ih.simple(i)?, 0));
                r.record("c-central", &format!("{ctx} m={m} i={i}"), res)?.experimental = true;
            }
        }
        finish_ihall(&mut r, &ih, &ctx)?;
        Ok(r)
    })?;
    params(&mut r, &quivers, &qs, mmax);
    r.convention("c-socle", "multiplicity-free");
    Ok(r)
}

/// `[H_{0,m}, B_{j,l}]` minus its predicted value.
fn h0_b(d: &Drinfeld, h0: &IHallElem, m: usize, j: usize, l: i64) -> Result<IHallElem> {
    let lhs = d.comm(h0, &d.b(j, l)?, 0)?;
    if j != 1 {
        return Ok(lhs);
    }
    let mi = m as i64;
    let coef = d.qint(mi).scale(&rat(1, mi));
    let rhs = d.mul(&d.b(1, l - mi)?, &d.c(m as i32)?)?.sub(&d.b(1, l + mi)?).scale(&coef);
    Ok(lhs.sub(&rhs))
}

pub fn gln_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (quivers, qs, jobs) = jobs(cfg, &["cn:3", "cn:4"], &[2])?;
    let mmax = cfg.mmax.unwrap_or(2);
    let lmax = cfg.lmax.unwrap_or(1);
    let mut r = par_jobs("gln", &jobs, |(qv, q)| {
        let mut r = SuiteReport::new("gln");
        let d = drinfeld(cfg, qv, *q)?;
        let ih = d.ih().clone();
        let ctx = format!("quiver={} q={q}", qv.spec());
        let h0: Vec<Result<IHallElem>> = (1..=mmax).map(|m| h0m(&ih, m)).collect();
        for m in 1..=mmax {
            let x = h0[m - 1].clone();
            let deg = x.as_ref().map(|t| t.grade() == Some(vec![m as i64; d.n()]));
            r.record("h0-degree", &format!("{ctx} m={m}"), deg.map_err(Clone::clone))?;
            for rr in 1..=mmax {
                let res = x.clone().and_then(|a| d.comm(&a, h0[rr - 1].as_ref().map_err(Clone::clone)?, 0));
                r.record("[H0m,H0r]", &format!("{ctx} m={m} r={rr}"), res)?;
                for i in 1..d.n() {
                    let res = x.clone().and_then(|a| d.comm(&a, &d.h(i, rr)?, 0));
                    r.record("[H0m,Hir]", &format!("{ctx} m={m} i={i} r={rr}"), res)?;
                }
            }
            for j in 1..d.n() {
                for l in -lmax..=lmax {
                    let res = x.clone().and_then(|a| h0_b(&d, &a, m, j, l));
                    r.record("[H0m,Bjl]", &format!("{ctx} m={m} j={j} l={l}"), res)?;
                }
            }
        }
        finish_ihall(&mut r, &ih, &ctx)?;
        Ok(r)
    })?;
    params(&mut r, &quivers, &qs, mmax);
    r.param("lmax", lmax);
    r.convention("orientation", "i->i-1");
    Ok(r)
}
