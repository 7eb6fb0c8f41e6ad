use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::lattice::{point_census, points_dividing, Point, RootClass, Weights};
use crate::coeff::{qbracket, rat, v_power, QSqrt, Rat};
use crate::error::{Error, Result};
use crate::ihall::{IHall, IHallElem};
use crate::named::{n_factor, partitions};
use crate::quiver::{Ambient, ClassId, Quiver, Segment};

/// One torsion basis element: a nonzero class in each listed tube and a torus class.
pub type TorsionKey = (Vec<(Point, ClassId)>, RootClass);

/// The iHall algebra of torsion sheaves on a weighted projective line over `F_q`.
///
/// The tube at the exceptional point `i` is `rep^nil(C_{p_i})` over `F_q`
/// with vertex `j` standing for `S_{ij}`; an ordinary point of degree `d` is
/// the Jordan quiver over `F_{q^d}`. Tubes are Hom- and Ext-orthogonal, so
/// products factor tube by tube.
pub struct Torsion {
    pub w: Weights,
    pub q: u32,
    exc: Vec<Arc<IHall>>,
    ord: Mutex<HashMap<u32, Arc<IHall>>>,
}

#[derive(Clone)]
pub struct TorsionElem {
    pub alg: Arc<Torsion>,
    pub terms: BTreeMap<TorsionKey, QSqrt>,
}

impl Torsion {
    pub fn new(w: Weights, q: u32) -> Result<Arc<Torsion>> {
        w.check_field(q)?;
        let exc = w
            .p
            .iter()
            .map(|&p| Ok(IHall::from_ambient(Ambient::new(Quiver::cyclic(p)?, q)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(Torsion { w, q, exc, ord: Mutex::default() }))
    }

    /// The algebra of the tube at `x`.
    pub fn tube(&self, x: Point) -> Result<Arc<IHall>> {
        match x {
            Point::Exc(i) => {
                self.exc.get(i).cloned().ok_or_else(|| Error::InvalidArgument(format!("no exceptional point {i}")))
            }
            Point::Ord { d, k } => {
                let mut avail = point_census(self.q as u64, d as u64)?;
                if d == 1 {
                    avail -= self.w.t() as u64;
                }
                if k as u64 >= avail {
                    return Err(Error::InvalidArgument(format!("point {x} does not exist: {avail} ordinary points of degree {d}")));
                }
                let mut ord = self.ord.lock().expect("tube lock");
                if let Some(t) = ord.get(&d) {
                    return Ok(t.clone());
                }
                let qd = self.q.checked_pow(d).filter(|&x| x <= 255).ok_or(Error::UnsupportedFieldOrder(u32::MAX))?;
                let t = IHall::from_ambient(Ambient::new(Quiver::jordan(), qd)?);
                ord.insert(d, t.clone());
                Ok(t)
            }
        }
    }

    /// Class in the root lattice of a torus exponent of the tube at `x`.
    fn torus_class(&self, x: Point, alpha: &[i64]) -> RootClass {
        match x {
            Point::Exc(i) => RootClass::of_tube_dims(&self.w, i, alpha),
            Point::Ord { d, .. } => RootClass::delta(&self.w, alpha[0] * d as i64),
        }
    }

    pub fn unit(self: &Arc<Self>) -> TorsionElem {
        self.torus(&RootClass::zero(&self.w))
    }

    pub fn torus(self: &Arc<Self>, r: &RootClass) -> TorsionElem {
        let mut e = TorsionElem::zero(self.clone());
        e.add_term(Vec::new(), r.clone(), QSqrt::one(self.q));
        e
    }

    /// Image of the tube element `x` at the point `at`.
    pub fn embed(self: &Arc<Self>, at: Point, x: &IHallElem) -> Result<TorsionElem> {
        let t = self.tube(at)?;
        if !Arc::ptr_eq(&t, &x.alg) {
            return Err(Error::InvalidArgument(format!("element does not live in the tube at {at}")));
        }
        let mut out = TorsionElem::zero(self.clone());
        for ((m, alpha), c) in &x.terms {
            let cls = if *m == 0 { Vec::new() } else { vec![(at, *m)] };
            out.add_term(cls, self.torus_class(at, alpha), self.convert(at, c)?);
        }
        Ok(out)
    }

    /// Tube coefficients are rational at ordinary points (the Jordan Euler
    /// form vanishes), so they carry over to `Q(v)` at `v^2 = q`.
    fn convert(&self, at: Point, c: &QSqrt) -> Result<QSqrt> {
        match at {
            Point::Exc(_) => Ok(c.clone()),
            Point::Ord { .. } if c.is_rational() => Ok(QSqrt::from_rat(c.a.clone(), self.q)),
            Point::Ord { .. } => Err(Error::InvalidArgument(format!("irrational coefficient {c} in an ordinary tube"))),
        }
    }

    pub fn product(self: &Arc<Self>, x: &TorsionElem, y: &TorsionElem) -> Result<TorsionElem> {
        let mut out = TorsionElem::zero(self.clone());
        for ((xa, xr), xc) in &x.terms {
            for ((ya, yr), yc) in &y.terms {
                // partial products: (classes so far, torus so far, coefficient)
                let mut parts: Vec<(Vec<(Point, ClassId)>, RootClass, QSqrt)> = vec![(Vec::new(), xr.add(yr), xc * yc)];
                let mut pts: Vec<Point> = xa.iter().chain(ya).map(|(p, _)| *p).collect();
                pts.sort();
                pts.dedup();
                for p in pts {
                    let a = xa.iter().find(|(x, _)| *x == p).map_or(0, |(_, c)| *c);
                    let b = ya.iter().find(|(x, _)| *x == p).map_or(0, |(_, c)| *c);
                    let t = self.tube(p)?;
                    let prod = t.basis_product(a, b)?;
                    let mut next = Vec::with_capacity(parts.len() * prod.len());
                    for (cls, r, c) in &parts {
                        for (m, alpha, k) in prod.iter() {
                            let mut cls = cls.clone();
                            if *m != 0 {
                                cls.push((p, *m));
                            }
                            next.push((cls, r.add(&self.torus_class(p, alpha)), c * &self.convert(p, k)?));
                        }
                    }
                    parts = next;
                }
                for (cls, r, c) in parts {
                    out.add_term(cls, r, c);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(self: &Arc<Self>, x: &TorsionElem, y: &TorsionElem) -> Result<TorsionElem> {
        Ok(self.product(x, y)?.sub(&self.product(y, x)?))
    }

    /// `d_x ([m]/m) sum_{|lambda| = m/d_x} n_x(l(lambda) - 1) [S_x^{(lambda)}] / |Aut S_x^{(lambda)}|`.
    pub fn partition_part(self: &Arc<Self>, x: Point, m: usize) -> Result<TorsionElem> {
        let d = x.degree() as usize;
        if m == 0 || m % d != 0 {
            return Err(Error::InvalidArgument(format!("H_{{x,m}} needs d_x | m and m >= 1, got d={d} m={m}")));
        }
        let t = self.tube(x)?;
        let amb = t.amb();
        let len = match x {
            Point::Exc(i) => self.w.p[i],
            Point::Ord { .. } => 1,
        };
        let q = self.q;
        let mi = m as i64;
        let lead = qbracket(mi, 1, q).scale(&rat(d as i64, mi));
        let mut out = TorsionElem::zero(self.clone());
        for lam in partitions(m / d) {
            let segs: Vec<Segment> = lam.iter().map(|&p| (0, p * len)).collect();
            let cls = amb.class_of_segments(&segs)?;
            let aut = amb.aut_order(cls)?;
            let c = &(&lead * &n_factor(lam.len() - 1, d as u32, q)) * &QSqrt::from_rat(Rat::new(1.into(), aut.into()), q);
            out.add_term(vec![(x, cls)], RootClass::zero(&self.w), c);
        }
        Ok(out)
    }

    /// The point element `H_{x,m}`.
    pub fn hxm(self: &Arc<Self>, x: Point, m: usize) -> Result<TorsionElem> {
        let mut out = self.partition_part(x, m)?;
        let d = x.degree() as usize;
        if (m / d) % 2 == 0 {
            let mi = m as i64;
            let c = &qbracket(mi / 2, 1, self.q).scale(&rat(d as i64, mi)) * &v_power(-mi / 2, self.q);
            out = out.sub(&self.torus(&RootClass::delta(&self.w, mi / 2)).scale(&c));
        }
        Ok(out)
    }

    /// `H_{*,m}` by the global formula: the partition parts over every point
    /// with `d_x | m`, with a single `delta_{m even} ([m]/m) [K_{(m/2) delta}]`.
    pub fn hstar(self: &Arc<Self>, m: usize) -> Result<TorsionElem> {
        let mut out = TorsionElem::zero(self.clone());
        for x in points_dividing(&self.w, self.q, m as u32)? {
            out = out.add(&self.partition_part(x, m)?);
        }
        if m % 2 == 0 {
            let mi = m as i64;
            let c = qbracket(mi, 1, self.q).scale(&rat(1, mi));
            out = out.sub(&self.torus(&RootClass::delta(&self.w, mi / 2)).scale(&c));
        }
        Ok(out)
    }

    /// `sum_{x, d_x | m} H_{x,m}`.
    pub fn hstar_by_points(self: &Arc<Self>, m: usize) -> Result<TorsionElem> {
        let mut out = TorsionElem::zero(self.clone());
        for x in points_dividing(&self.w, self.q, m as u32)? {
            out = out.add(&self.hxm(x, m)?);
        }
        Ok(out)
    }
}

impl TorsionElem {
    pub fn zero(alg: Arc<Torsion>) -> TorsionElem {
        TorsionElem { alg, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, mut cls: Vec<(Point, ClassId)>, r: RootClass, c: QSqrt) {
        if c.is_zero() {
            return;
        }
        cls.sort();
        let key = (cls, r);
        let slot = self.terms.entry(key.clone()).or_insert_with(|| QSqrt::zero(c.q));
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &QSqrt) -> TorsionElem {
        let mut out = TorsionElem::zero(self.alg.clone());
        for ((cls, r), c) in &self.terms {
            out.add_term(cls.clone(), r.clone(), c * s);
        }
        out
    }

    pub fn add(&self, o: &TorsionElem) -> TorsionElem {
        let mut out = self.clone();
        for ((cls, r), c) in &o.terms {
            out.add_term(cls.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &TorsionElem) -> TorsionElem {
        self.add(&o.scale(&QSqrt::from_int(-1, self.alg.q)))
    }
}

impl PartialEq for TorsionElem {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &o.alg) && self.terms == o.terms
    }
}

impl fmt::Display for TorsionElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((cls, r), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) *")?;
            for (p, m) in cls {
                let label = self.alg.tube(*p).map(|t| t.amb().label(*m)).unwrap_or_else(|_| "?".into());
                write!(f, " {p}[{label}]")?;
            }
            let r: Vec<String> = r.0.iter().map(|x| x.to_string()).collect();
            write!(f, " K[{}]", r.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TorsionElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: Vec<usize>, q: u32) -> Arc<Torsion> {
        Torsion::new(Weights::new(p).unwrap(), q).unwrap()
    }

    #[test]
    fn exceptional_h1() {
        let t = alg(vec![2, 3], 2);
        let h = t.hxm(Point::Exc(0), 1).unwrap();
        assert_eq!(h.to_string(), "(1) * exc:0[0:2] K[0,0,0,0,0]");
    }

    #[test]
    fn distinct_points_commute() {
        let t = alg(vec![2, 3], 2);
        let x = t.hxm(Point::Exc(1), 1).unwrap();
        let y = t.hxm(Point::Ord { d: 2, k: 0 }, 2).unwrap();
        assert!(t.commutator(&x, &y).unwrap().is_zero());
        assert!(!t.product(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn ordinary_tube_over_extension_field() {
        let t = alg(vec![2, 3], 3);
        // one degree-2 point's tube is the Jordan quiver over F_9
        assert_eq!(t.tube(Point::Ord { d: 2, k: 2 }).unwrap().q(), 9);
        assert!(t.tube(Point::Ord { d: 2, k: 3 }).is_err());
        assert!(t.tube(Point::Ord { d: 1, k: 2 }).is_err());
    }
}
