use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{finish_ihall, join, SuiteConfig, SuiteReport};
use crate::error::Result;
use crate::finfield::Mat;
use crate::ihall::{IHall, IHallElem};
use crate::named::segment_multisets_dims;
use crate::quiver::{ext1_dim, hom_dim, ClassId, Quiver, Rep, Segment};

fn random_dims(rng: &mut ChaCha8Rng, n: usize, total: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for _ in 0..total {
        d[rng.gen_range(0..n)] += 1;
    }
    d
}

fn random_class(rng: &mut ChaCha8Rng, ih: &IHall, total: usize) -> Result<ClassId> {
    let dims = random_dims(rng, ih.n(), total);
    let all = segment_multisets_dims(ih.n(), &dims);
    let segs: &[Segment] = &all[rng.gen_range(0..all.len())];
    ih.amb().class_of_segments(segs)
}

fn random_rep(rng: &mut ChaCha8Rng, quiver: &Quiver, field: &std::sync::Arc<crate::finfield::Field>, total: usize) -> Result<Rep> {
    let dims = random_dims(rng, quiver.n, total);
    let maps = quiver
        .arrows
        .iter()
        .map(|&(s, t)| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for a in 0..dims[t] {
                for b in 0..dims[s] {
                    m.set(a, b, rng.gen_range(0..field.q) as _);
                }
            }
            m
        })
        .collect();
    Rep::new(std::sync::Arc::new(quiver.clone()), field.clone(), dims, maps, 10)
}

/// Riedtmann-Peng: the Ext-count and submodule-count routes to the Hall numbers
/// agree on every middle term of the given dimension, including the zeros.
fn riedtmann_peng(r: &mut SuiteReport, ih: &IHall, rng: &mut ChaCha8Rng, triples: usize, ctx: &str) -> Result<()> {
    let hall = &ih.hall;
    let amb = ih.amb();
    let mut done = 0;
    let mut agree = 0;
    while done < triples {
        let total = rng.gen_range(2..=5);
        let dm = rng.gen_range(1..total);
        let (m, n) = (random_class(rng, ih, dm)?, random_class(rng, ih, total - dm)?);
        let dims: Vec<usize> = amb.dims(m).iter().zip(amb.dims(n)).map(|(a, b)| a + b).collect();
        for segs in segment_multisets_dims(ih.n(), &dims) {
            let l = amb.class_of_segments(&segs)?;
            if hall.hall_coeff(m, n, l)? == hall.hall_coeff_f(m, n, l)? {
                agree += 1;
            }
            done += 1;
        }
    }
    r.record("riedtmann-peng", &format!("{ctx} triples={done}"), Ok(agree == done))?;
    Ok(())
}

fn associativity(r: &mut SuiteReport, ih: &std::sync::Arc<IHall>, rng: &mut ChaCha8Rng, triples: usize, ctx: &str) -> Result<()> {
    let mut agree = 0;
    for _ in 0..triples {
        let pick = |rng: &mut ChaCha8Rng| -> Result<IHallElem> {
            let total = rng.gen_range(1..=2);
            let c = random_class(rng, ih, total)?;
            let torus = (0..ih.n()).map(|_| rng.gen_range(-1..=1)).collect();
            Ok(IHallElem::basis(ih.clone(), c, torus))
        };
        let (x, y, z) = (pick(rng)?, pick(rng)?, pick(rng)?);
        let lhs = ih.product(&ih.product(&x, &y)?, &z)?;
        let rhs = ih.product(&x, &ih.product(&y, &z)?)?;
        if lhs == rhs {
            agree += 1;
        }
    }
    r.record("associativity", &format!("{ctx} triples={triples}"), Ok(agree == triples))?;
    Ok(())
}

/// `dim Hom - dim Ext^1 = <dim A, dim B>` on random pairs, including acyclic quivers.
fn euler(r: &mut SuiteReport, cfg: &SuiteConfig, rng: &mut ChaCha8Rng, pairs: usize) -> Result<()> {
    let quivers = [Quiver::parse("qj:3:1")?, Quiver::parse("star:2,2,2:in")?, Quiver::parse("qj:2:1")?];
    let mut agree = 0;
    for k in 0..pairs {
        let qv = &quivers[k % quivers.len()];
        let amb = cfg.ambient(qv.clone(), if k % 2 == 0 { 2 } else { 3 })?;
        let (a, b) = (random_rep(rng, qv, &amb.field, 3)?, random_rep(rng, qv, &amb.field, 3)?);
        if hom_dim(&a, &b) as i64 - ext1_dim(&a, &b) as i64 == qv.euler_form(&a.dims, &b.dims) {
            agree += 1;
        }
    }
    r.record("euler-form", &format!("quivers=qj:3:1,star:2,2,2:in,qj:2:1 pairs={pairs}"), Ok(agree == pairs))?;
    Ok(())
}

pub fn oracle_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let quivers = cfg.quivers_or(&["cn:2", "cn:3"])?;
    let qs = cfg.qs_or(&[2, 3]);
    let mut r = SuiteReport::new("oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cc = cfg.clone();
    cc.cross_check = true;
    for qv in quivers.iter().filter(|q| q.is_cyclic()) {
        for &q in &qs {
            let ih = cc.ihall_of(qv.clone(), q)?;
            let ctx = format!("quiver={} q={q}", qv.spec());
            riedtmann_peng(&mut r, &ih, &mut rng, 100, &ctx)?;
            associativity(&mut r, &ih, &mut rng, 50, &ctx)?;
            finish_ihall(&mut r, &ih, &ctx)?;
        }
    }
    euler(&mut r, cfg, &mut rng, 240)?;
    r.param("quivers", join(&quivers.iter().map(|q| q.spec()).collect::<Vec<_>>()));
    r.param("q", join(&qs));
    Ok(r)
}
