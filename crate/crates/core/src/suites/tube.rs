use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{ORDER, WINNER};
use super::{join, par_jobs, SuiteConfig, SuiteReport};
use crate::error::Result;
use crate::hall::HallAlgebra;
use crate::iqg::{Drinfeld, Evaluator};
use crate::named::segment_multisets_dims;
use crate::quiver::{Quiver, Segment};
use crate::wpl::{cartan_pairing, k0_class, point_census, points_dividing, Point, RootClass, Sheaf, Torsion, Weights};

fn census_checks(r: &mut SuiteReport, qs: &[u32], mmax: u64) -> Result<()> {
    for &q in qs {
        for m in 1..=mmax {
            let mut s = 0u64;
            for d in (1..=m).filter(|d| m % d == 0) {
                s += d * point_census(q as u64, d)?;
            }
            r.record("census", &format!("q={q} m={m}"), Ok(s == (q as u64).pow(m as u32) + 1))?;
        }
    }
    Ok(())
}

pub fn torsion_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let weights = cfg.weights_or(&[&[2, 3]])?;
    let qs = cfg.qs_or(&[2, 3]);
    let mmax = cfg.mmax.unwrap_or(2);
    let mut r = SuiteReport::new("torsion");
    census_checks(&mut r, &[2, 3, 4, 5], 6)?;
    let jobs: Vec<(Weights, u32)> = weights.iter().flat_map(|w| qs.iter().map(move |&q| (w.clone(), q))).collect();
    r.merge(par_jobs("torsion", &jobs, |(w, q)| {
        let mut r = SuiteReport::new("torsion");
        let t = Torsion::new(w.clone(), *q)?;
        let ctx = format!("p={} q={q}", join(&w.p));
        for m in 1..=mmax {
            let res = t.hstar(m).and_then(|a| Ok(a.sub(&t.hstar_by_points(m)?)));
            r.record("hstar=sum-hx", &format!("{ctx} m={m}"), res)?;
        }
        // distinct points, every admissible degree pair
        let pts = points_dividing(w, *q, (1..=mmax as u32).product())?;
        for (a, &x) in pts.iter().enumerate() {
            for &y in &pts[a + 1..] {
                for m in (1..=mmax).filter(|m| m % x.degree() as usize == 0) {
                    for rr in (1..=mmax).filter(|rr| rr % y.degree() as usize == 0) {
                        let res = t.hxm(x, m).and_then(|hx| t.commutator(&hx, &t.hxm(y, rr)?));
                        r.record("[Hx,Hy]", &format!("{ctx} x={x} m={m} y={y} r={rr}"), res)?;
                    }
                }
            }
        }
        // H_{*,m} against the loop generators H_{[i,j],r} of each tube
        for (i, &p) in w.p.iter().enumerate() {
            let tube = t.tube(Point::Exc(i))?;
            let d = Drinfeld::new(Arc::new(Evaluator::new(tube.clone(), WINNER)?), ORDER)?;
            for j in 1..p {
                for rr in 1..=mmax {
                    let hij = d.h(j, rr).and_then(|h| t.embed(Point::Exc(i), &h));
                    for m in 1..=mmax {
                        let res = hij.clone().and_then(|h| t.commutator(&t.hstar(m)?, &h));
                        r.record("[Hstar,Hij]", &format!("{ctx} m={m} i={i} j={j} r={rr}"), res)?;
                    }
                }
            }
            // products inside one tube agree with the tube's own algebra
            let s0 = tube.simple(0)?;
            let s1 = tube.simple(1)?;
            let res = tube.product(&s0, &s1).and_then(|xy| {
                let lhs = t.product(&t.embed(Point::Exc(i), &s0)?, &t.embed(Point::Exc(i), &s1)?)?;
                Ok(lhs.sub(&t.embed(Point::Exc(i), &xy)?))
            });
            r.record("tube-embedding", &format!("{ctx} i={i}"), res)?;
        }
        Ok(r)
    })?);
    r.param("weights", weights.iter().map(|w| join(&w.p)).collect::<Vec<_>>().join(";"));
    r.param("q", join(&qs));
    r.param("mmax", mmax);
    Ok(r)
}

fn random_segments(rng: &mut ChaCha8Rng, p: usize, max_dim: usize) -> Vec<Segment> {
    let total = rng.gen_range(1..=max_dim);
    let mut dims = vec![0; p];
    for _ in 0..total {
        dims[rng.gen_range(0..p)] += 1;
    }
    let all = segment_multisets_dims(p, &dims);
    all[rng.gen_range(0..all.len())].clone()
}

pub fn lattice_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let weights = cfg.weights_or(&[&[2, 3], &[2, 2, 2]])?;
    let mut r = SuiteReport::new("lattice");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for w in &weights {
        let ctx = format!("p={}", join(&w.p));
        let basis = |k: usize| {
            let mut b = RootClass::zero(w);
            b.0[k] = 1;
            b
        };
        let delta = RootClass::delta(w, 1);
        for (i, &p) in w.p.iter().enumerate() {
            let mut sum = RootClass::zero(w);
            for j in 0..p {
                let c = k0_class(w, Sheaf::S(i, j))?;
                let expect = if j == 0 {
                    (1..p).fold(delta.clone(), |a, jj| a.add(&basis(w.branch_index(i, jj)).scale(-1)))
                } else {
                    basis(w.branch_index(i, j))
                };
                r.record("table:S_ij", &format!("{ctx} i={i} j={j}"), Ok(c == expect))?;
                sum = sum.add(&c);
            }
            r.record("sum-S_ij=delta", &format!("{ctx} i={i}"), Ok(sum == delta))?;
            let c = k0_class(w, Sheaf::S0Len(i, p - 1))?;
            r.record("table:S_i0^(p-1)", &format!("{ctx} i={i}"), Ok(c == delta.add(&basis(w.branch_index(i, 1)).scale(-1))))?;
            for k in 1..=3 {
                r.record("table:S_i0^(rp)", &format!("{ctx} i={i} r={k}"), Ok(k0_class(w, Sheaf::S0Len(i, k * p))? == delta.scale(k as i64)))?;
            }
        }
        for l in -2..=2 {
            r.record("table:O(lc)", &format!("{ctx} l={l}"), Ok(k0_class(w, Sheaf::Line(l))? == basis(0).add(&delta.scale(l))))?;
        }
        let iso = (0..w.rank()).all(|k| cartan_pairing(w, &delta, &basis(k)) == 0 && cartan_pairing(w, &basis(k), &delta) == 0);
        r.record("delta-isotropic", &ctx, Ok(iso))?;
        // symmetric Euler form inside each tube against the Cartan pairing
        let tubes = w
            .p
            .iter()
            .map(|&p| Ok(HallAlgebra::new(cfg.ambient(Quiver::cyclic(p)?, 2)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut agree = 0;
        let pairs = 60;
        for _ in 0..pairs {
            let i = rng.gen_range(0..w.t());
            let h = &tubes[i];
            let (sa, sb) = (random_segments(&mut rng, w.p[i], 4), random_segments(&mut rng, w.p[i], 4));
            let (a, b) = (h.amb.class_of_segments(&sa)?, h.amb.class_of_segments(&sb)?);
            let sym = (h.hom_dim(a, b) as i64 - h.ext_dim(a, b) as i64) + (h.hom_dim(b, a) as i64 - h.ext_dim(b, a) as i64);
            let dims = |c| h.amb.dims(c).iter().map(|&x| x as i64).collect::<Vec<_>>();
            let (ca, cb) = (RootClass::of_tube_dims(w, i, &dims(a)), RootClass::of_tube_dims(w, i, &dims(b)));
            if cartan_pairing(w, &ca, &cb) == sym {
                agree += 1;
            }
        }
        r.record("cartan=sym-euler", &format!("{ctx} pairs={pairs} q=2"), Ok(agree == pairs))?;
    }
    r.param("weights", weights.iter().map(|w| join(&w.p)).collect::<Vec<_>>().join(";"));
    Ok(r)
}
