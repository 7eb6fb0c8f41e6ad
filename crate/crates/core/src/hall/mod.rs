//! Hall numbers and the twisted Ringel-Hall product.

mod cache;
mod elem;

pub use cache::{parse_record, render_record, CacheStats, DiskCache, CACHE_VERSION};
pub use elem::HallElem;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::coeff::{rat_int, v_power, QSqrt, Rat};
use crate::error::Result;
use crate::finfield::Mat;
use crate::quiver::{Ambient, ClassId, ExtSpace};

/// Untwisted structure constants `[M] <> [N] = sum_L |Ext^1(M,N)_L| / |Hom(M,N)| [L]`.
pub type Structure = Arc<Vec<(ClassId, Rat)>>;

pub struct HallAlgebra {
    pub amb: Arc<Ambient>,
    ext_counts: Mutex<HashMap<(ClassId, ClassId), Arc<Vec<(ClassId, u128)>>>>,
    products: Mutex<HashMap<(ClassId, ClassId), Structure>>,
    disk: Option<Mutex<DiskCache>>,
}

impl HallAlgebra {
    pub fn new(amb: Arc<Ambient>) -> Arc<HallAlgebra> {
        Arc::new(HallAlgebra { amb, ext_counts: Mutex::default(), products: Mutex::default(), disk: None })
    }

    /// Backs the structure constants by an on-disk cache (cyclic quivers only,
    /// where class labels are canonical across runs).
    pub fn with_cache_dir(amb: Arc<Ambient>, dir: &Path) -> Result<Arc<HallAlgebra>> {
        let disk = if amb.quiver.is_cyclic() { Some(Mutex::new(DiskCache::open(dir, &amb.quiver.spec(), amb.q)?)) } else { None };
        Ok(Arc::new(HallAlgebra { amb, ext_counts: Mutex::default(), products: Mutex::default(), disk }))
    }

    pub fn q(&self) -> u32 {
        self.amb.q
    }

    /// `|Ext^1(M, N)_L|` for every middle term `L`, by enumerating extension classes.
    pub fn ext_counts(&self, m: ClassId, n: ClassId) -> Result<Arc<Vec<(ClassId, u128)>>> {
        if let Some(r) = self.ext_counts.lock().unwrap().get(&(m, n)) {
            return Ok(r.clone());
        }
        let amb = &self.amb;
        let rm = amb.rep_of(m);
        let rn = amb.rep_of(n);
        let es = ExtSpace::new(&rm, &rn);
        let size = (amb.q as u128).checked_pow(es.dim as u32).unwrap_or(u128::MAX);
        if size > amb.budget {
            return Err(crate::Error::SearchTooLarge { size, budget: amb.budget });
        }
        let template: Vec<Mat> = amb.quiver.arrows.iter().map(|&(s, t)| Mat::zeros(rn.dims[t], rm.dims[s])).collect();
        let mut counts: BTreeMap<ClassId, u128> = BTreeMap::new();
        let mut err = None;
        es.for_each(&amb.field, &template, |eta| {
            if err.is_some() {
                return;
            }
            let mid = ExtSpace::middle(&rn, &rm, eta);
            match amb.classify(&mid) {
                Ok(c) => *counts.entry(c).or_default() += 1,
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let r = Arc::new(counts.into_iter().collect::<Vec<_>>());
        self.ext_counts.lock().unwrap().insert((m, n), r.clone());
        Ok(r)
    }

    pub fn hom_dim(&self, m: ClassId, n: ClassId) -> usize {
        crate::quiver::hom_dim(&self.amb.rep_of(m), &self.amb.rep_of(n))
    }

    pub fn ext_dim(&self, m: ClassId, n: ClassId) -> usize {
        crate::quiver::ext1_dim(&self.amb.rep_of(m), &self.amb.rep_of(n))
    }

    /// `[M] <> [N]` without the Euler-form twist.
    pub fn untwisted(&self, m: ClassId, n: ClassId) -> Result<Structure> {
        if let Some(r) = self.products.lock().unwrap().get(&(m, n)) {
            return Ok(r.clone());
        }
        if let Some(d) = &self.disk {
            let mut d = d.lock().unwrap();
            if let Some(v) = d.get(&self.amb.label(m), &self.amb.label(n)) {
                let parsed: Vec<(ClassId, Rat)> =
                    v.iter().map(|(l, c)| Ok((self.amb.parse_class(l)?, c.clone()))).collect::<Result<_>>()?;
                let r = Arc::new(parsed);
                self.products.lock().unwrap().insert((m, n), r.clone());
                return Ok(r);
            }
        }
        let hom = num_traits::pow(rat_int(self.q() as i64), self.hom_dim(m, n));
        let counts = self.ext_counts(m, n)?;
        let r: Vec<(ClassId, Rat)> = counts.iter().map(|&(l, c)| (l, Rat::from_integer(c.into()) / &hom)).collect();
        let r = Arc::new(r);
        if let Some(d) = &self.disk {
            let labelled: Vec<(String, Rat)> = r.iter().map(|(l, c)| (self.amb.label(*l), c.clone())).collect();
            d.lock().unwrap().put(&self.amb.label(m), &self.amb.label(n), labelled)?;
        }
        self.products.lock().unwrap().insert((m, n), r.clone());
        Ok(r)
    }

    /// `|Ext^1(M,N)_L| / |Hom(M,N)|`.
    pub fn hall_coeff(&self, m: ClassId, n: ClassId, l: ClassId) -> Result<Rat> {
        if !self.graded(m, n, l) {
            return Ok(Rat::zero());
        }
        Ok(self.untwisted(m, n)?.iter().find(|(x, _)| *x == l).map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero))
    }

    /// The same number through submodule counting: `F^L_{M,N} |Aut M| |Aut N| / |Aut L|`.
    pub fn hall_coeff_f(&self, m: ClassId, n: ClassId, l: ClassId) -> Result<Rat> {
        if !self.graded(m, n, l) {
            return Ok(Rat::zero());
        }
        let amb = &self.amb;
        let f = amb.f_count(m, n, l)?;
        if f == 0 {
            return Ok(Rat::zero());
        }
        let num = f * amb.aut_order(m)? * amb.aut_order(n)?;
        Ok(Rat::new(num.into(), amb.aut_order(l)?.into()))
    }

    fn graded(&self, m: ClassId, n: ClassId, l: ClassId) -> bool {
        let (dm, dn, dl) = (self.amb.dims(m), self.amb.dims(n), self.amb.dims(l));
        dm.iter().zip(&dn).zip(&dl).all(|((a, b), c)| a + b == *c)
    }

    pub fn euler(&self, m: ClassId, n: ClassId) -> i64 {
        self.amb.quiver.euler_form(&self.amb.dims(m), &self.amb.dims(n))
    }

    pub fn basis(self: &Arc<Self>, c: ClassId) -> HallElem {
        HallElem::basis(self.clone(), c)
    }

    /// `[M] * [N] = v^{<M,N>} [M] <> [N]`.
    pub fn twisted_basis(&self, m: ClassId, n: ClassId) -> Result<Vec<(ClassId, QSqrt)>> {
        let tw = v_power(self.euler(m, n), self.q());
        Ok(self.untwisted(m, n)?.iter().map(|(l, c)| (*l, tw.scale(c))).collect())
    }

    pub fn twisted_product(self: &Arc<Self>, x: &HallElem, y: &HallElem) -> Result<HallElem> {
        let mut out = HallElem::zero(self.clone());
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let cc = ca * cb;
                for (l, c) in self.twisted_basis(*a, *b)? {
                    out.add_term(l, &cc * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn cache_stats(&self) -> Option<CacheStats> {
        self.disk.as_ref().map(|d| d.lock().unwrap().stats())
    }

    pub fn flush(&self) -> Result<()> {
        if let Some(d) = &self.disk {
            d.lock().unwrap().flush()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::quiver::Quiver;

    fn hall(n: usize, q: u32) -> Arc<HallAlgebra> {
        HallAlgebra::new(Ambient::new(Quiver::cyclic(n).unwrap(), q).unwrap())
    }

    #[test]
    fn coefficient_examples() {
        let h = hall(2, 2);
        let a = &h.amb;
        let s0 = a.parse_class("0:1").unwrap();
        let s1 = a.parse_class("1:1").unwrap();
        let l = a.parse_class("1:2").unwrap();
        let ss = a.parse_class("1:1+1:1").unwrap();
        assert_eq!(h.hall_coeff(s1, s0, l).unwrap(), rat(1, 1));
        assert_eq!(h.hall_coeff_f(s1, s0, l).unwrap(), rat(1, 1));
        assert_eq!(h.hall_coeff(s1, s1, ss).unwrap(), rat(1, 2));
        assert_eq!(h.hall_coeff_f(s1, s1, ss).unwrap(), rat(1, 2));
        assert_eq!(h.hall_coeff(s1, s1, l).unwrap(), rat(0, 1));
    }

    #[test]
    fn twisted_s1_s0() {
        for q in [2u32, 3] {
            let h = hall(2, q);
            let a = &h.amb;
            let s0 = h.basis(a.parse_class("0:1").unwrap());
            let s1 = h.basis(a.parse_class("1:1").unwrap());
            let p = h.twisted_product(&s1, &s0).unwrap();
            let vinv = v_power(-1, q);
            let mut want = HallElem::zero(h.clone());
            want.add_term(a.parse_class("0:1+1:1").unwrap(), vinv.clone());
            want.add_term(a.parse_class("1:2").unwrap(), vinv.scale(&rat_int(q as i64 - 1)));
            assert_eq!(p, want);
        }
    }
}
