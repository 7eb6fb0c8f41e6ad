//! The iHall algebra on the basis `[M] * [K_alpha]`.

mod elem;

pub use elem::{IHallElem, Key};

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::coeff::{rat_int, v_power, QSqrt, Rat};
use crate::error::{Error, Result};
use crate::hall::HallAlgebra;
use crate::quiver::{Ambient, ClassId};

/// `[A] * [B]` on basis classes: `(M, alpha, c)` meaning `c [M] * [K_alpha]`.
pub type BasisProduct = Arc<Vec<(ClassId, Vec<i64>, QSqrt)>>;

type Census = Arc<Vec<((ClassId, ClassId), u128)>>;

pub struct IHall {
    pub hall: Arc<HallAlgebra>,
    census: Mutex<HashMap<(ClassId, ClassId), Census>>,
    products: Mutex<HashMap<(ClassId, ClassId), BasisProduct>>,
    cross_check: bool,
    checks: AtomicU64,
    mismatches: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CrossCheckStats {
    pub checked: u64,
    pub mismatched: u64,
}

impl IHall {
    pub fn new(hall: Arc<HallAlgebra>) -> Arc<IHall> {
        Self::build(hall, false)
    }

    /// Every new basis product is also evaluated through the Hom-normalised
    /// formula and compared; see [`IHall::cross_check_stats`].
    pub fn with_cross_check(hall: Arc<HallAlgebra>) -> Arc<IHall> {
        Self::build(hall, true)
    }

    fn build(hall: Arc<HallAlgebra>, cross_check: bool) -> Arc<IHall> {
        Arc::new(IHall {
            hall,
            census: Mutex::default(),
            products: Mutex::default(),
            cross_check,
            checks: AtomicU64::new(0),
            mismatches: AtomicU64::new(0),
        })
    }

    pub fn from_ambient(amb: Arc<Ambient>) -> Arc<IHall> {
        Self::new(HallAlgebra::new(amb))
    }

    pub fn amb(&self) -> &Arc<Ambient> {
        &self.hall.amb
    }

    pub fn q(&self) -> u32 {
        self.hall.q()
    }

    pub fn n(&self) -> usize {
        self.hall.amb.quiver.n
    }

    pub fn cross_check_stats(&self) -> CrossCheckStats {
        CrossCheckStats { checked: self.checks.load(Ordering::Relaxed), mismatched: self.mismatches.load(Ordering::Relaxed) }
    }

    fn census(&self, a: ClassId, b: ClassId) -> Result<Census> {
        if let Some(c) = self.census.lock().unwrap().get(&(a, b)) {
            return Ok(c.clone());
        }
        let m: BTreeMap<(ClassId, ClassId), u128> = self.amb().hom_fiber_census(a, b)?;
        let c = Arc::new(m.into_iter().collect::<Vec<_>>());
        self.census.lock().unwrap().insert((a, b), c.clone());
        Ok(c)
    }

    fn minus_dims(&self, a: ClassId, n: ClassId) -> Vec<i64> {
        let da = self.amb().dims(a);
        let dn = self.amb().dims(n);
        da.iter().zip(&dn).map(|(x, y)| *x as i64 - *y as i64).collect()
    }

    /// `[A] * [B] = sum v^{-<A,B>} |Ext^1(N,L)_M| / |Ext^1(N,L)| * #{f : ker f ~ N, coker f ~ L} [M] * [K_{A-N}]`.
    pub fn basis_product(&self, a: ClassId, b: ClassId) -> Result<BasisProduct> {
        if let Some(p) = self.products.lock().unwrap().get(&(a, b)) {
            return Ok(p.clone());
        }
        let q = self.q();
        let tw = v_power(-self.hall.euler(a, b), q);
        let mut acc: BTreeMap<(ClassId, Vec<i64>), Rat> = BTreeMap::new();
        for &((n, l), cnt) in self.census(a, b)?.iter() {
            // |Ext^1(N,L)_M| / |Ext^1(N,L)| = q^{<N,L>} |Ext^1(N,L)_M| / |Hom(N,L)|, the latter cacheable
            let scale = qpow(q, self.hall.euler(n, l));
            let untw = self.hall.untwisted(n, l)?;
            let alpha = self.minus_dims(a, n);
            for (m, g) in untw.iter() {
                let c = &scale * g * Rat::from_integer(cnt.into());
                *acc.entry((*m, alpha.clone())).or_insert_with(|| rat_int(0)) += c;
            }
            if self.cross_check {
                self.check_hallmult1(n, l, &untw, &scale)?;
            }
        }
        let out: Vec<(ClassId, Vec<i64>, QSqrt)> = acc
            .into_iter()
            .filter(|(_, c)| *c != rat_int(0))
            .map(|((m, al), c)| (m, al, tw.scale(&c)))
            .collect();
        let out = Arc::new(out);
        self.products.lock().unwrap().insert((a, b), out.clone());
        Ok(out)
    }

    /// Recomputes `|Ext^1(N,L)_M| / |Ext^1(N,L)|` by enumerating extensions.
    fn check_hallmult1(&self, n: ClassId, l: ClassId, untw: &[(ClassId, Rat)], scale: &Rat) -> Result<()> {
        let ext = self.hall.ext_counts(n, l)?;
        let total: u128 = ext.iter().map(|(_, c)| c).sum();
        for &(m, e) in ext.iter() {
            let via2 = Rat::new(e.into(), total.into());
            let g = untw.iter().find(|(x, _)| *x == m).map(|(_, c)| c.clone()).unwrap_or_else(|| rat_int(0));
            self.checks.fetch_add(1, Ordering::Relaxed);
            if scale * g != via2 {
                self.mismatches.fetch_add(1, Ordering::Relaxed);
            }
        }
        if untw.len() != ext.len() {
            self.mismatches.fetch_add(1, Ordering::Relaxed);
        }
        Ok(())
    }

    /// The same product through `q^{<N,L>} |Ext^1(N,L)_M| / |Hom(N,L)|`.
    pub fn basis_product_alt(&self, a: ClassId, b: ClassId) -> Result<BasisProduct> {
        let q = self.q();
        let tw = v_power(-self.hall.euler(a, b), q);
        let mut acc: BTreeMap<(ClassId, Vec<i64>), QSqrt> = BTreeMap::new();
        for &((n, l), cnt) in self.census(a, b)?.iter() {
            let scale = v_power(2 * self.hall.euler(n, l), q);
            let alpha = self.minus_dims(a, n);
            for (m, g) in self.hall.untwisted(n, l)?.iter() {
                let c = scale.scale(&(g * Rat::from_integer(cnt.into())));
                let slot = acc.entry((*m, alpha.clone())).or_insert_with(|| QSqrt::zero(q));
                *slot += &c;
            }
        }
        Ok(Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((m, al), c)| (m, al, &tw * &c)).collect()))
    }

    pub fn unit(self: &Arc<Self>) -> IHallElem {
        IHallElem::basis(self.clone(), 0, vec![0; self.n()])
    }

    pub fn basis(self: &Arc<Self>, m: ClassId) -> IHallElem {
        IHallElem::basis(self.clone(), m, vec![0; self.n()])
    }

    pub fn torus(self: &Arc<Self>, alpha: &[i64]) -> IHallElem {
        IHallElem::basis(self.clone(), 0, alpha.to_vec())
    }

    pub fn simple(self: &Arc<Self>, i: usize) -> Result<IHallElem> {
        Ok(self.basis(self.amb().simple_class(i)?))
    }

    pub fn product(self: &Arc<Self>, x: &IHallElem, y: &IHallElem) -> Result<IHallElem> {
        self.product_with(x, y, false)
    }

    pub fn product_alt(self: &Arc<Self>, x: &IHallElem, y: &IHallElem) -> Result<IHallElem> {
        self.product_with(x, y, true)
    }

    fn product_with(self: &Arc<Self>, x: &IHallElem, y: &IHallElem, alt: bool) -> Result<IHallElem> {
        self.same(x)?;
        self.same(y)?;
        let mut out = IHallElem::zero(self.clone());
        for ((a, al), ca) in &x.terms {
            for ((b, be), cb) in &y.terms {
                let cc = ca * cb;
                let shift: Vec<i64> = al.iter().zip(be).map(|(p, r)| p + r).collect();
                if *a == 0 || *b == 0 {
                    out.add_term(if *a == 0 { *b } else { *a }, shift, cc);
                    continue;
                }
                let p = if alt { self.basis_product_alt(*a, *b)? } else { self.basis_product(*a, *b)? };
                for (m, g, c) in p.iter() {
                    let tot: Vec<i64> = g.iter().zip(&shift).map(|(p, r)| p + r).collect();
                    out.add_term(*m, tot, &cc * c);
                }
            }
        }
        Ok(out)
    }

    fn same(&self, x: &IHallElem) -> Result<()> {
        if !std::ptr::eq(Arc::as_ptr(&x.alg), self) {
            return Err(Error::InvalidArgument("elements from different iHall algebras".into()));
        }
        Ok(())
    }

    /// `x y - v^a y x`.
    pub fn commutator_v(self: &Arc<Self>, x: &IHallElem, y: &IHallElem, a: i64) -> Result<IHallElem> {
        let xy = self.product(x, y)?;
        let yx = self.product(y, x)?;
        Ok(xy.sub(&yx.scale(&v_power(a, self.q()))))
    }

    /// Left multiplication of every term of `x` by the class `s`, cached per term.
    pub fn left_mul_class(self: &Arc<Self>, s: ClassId, x: &IHallElem) -> Result<IHallElem> {
        let mut out = IHallElem::zero(self.clone());
        for ((b, be), cb) in &x.terms {
            if *b == 0 {
                out.add_term(s, be.clone(), cb.clone());
                continue;
            }
            for (m, g, c) in self.basis_product(s, *b)?.iter() {
                let tot: Vec<i64> = g.iter().zip(be).map(|(p, r)| p + r).collect();
                out.add_term(*m, tot, cb * c);
            }
        }
        Ok(out)
    }

    /// Canonical element rendering parser, inverse to `Display` on [`IHallElem`].
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<IHallElem> {
        elem::parse(self, s)
    }
}

/// `q^e` for any integer `e`.
fn qpow(q: u32, e: i64) -> Rat {
    let b = rat_int(q as i64);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b, (-e) as usize).recip()
    }
}

#[cfg(test)]
mod tests;
