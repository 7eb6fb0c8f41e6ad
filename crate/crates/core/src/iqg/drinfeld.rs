use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::braid::OmegaOrder;
use super::eval::Evaluator;
use super::roots::RootVectors;
use crate::coeff::{qbracket, rat, series_convert, v_power, QSqrt, Rat, SeriesKind, SeriesOps};
use crate::error::{Error, Result};
use crate::ihall::{IHall, IHallElem};

/// [`SeriesOps`] over an iHall algebra.
pub struct IHallOps(pub Arc<IHall>);

impl SeriesOps<IHallElem> for IHallOps {
    fn add(&self, a: &IHallElem, b: &IHallElem) -> IHallElem {
        a.add(b)
    }
    fn sub(&self, a: &IHallElem, b: &IHallElem) -> IHallElem {
        a.sub(b)
    }
    fn mul(&self, a: &IHallElem, b: &IHallElem) -> Result<IHallElem> {
        self.0.product(a, b)
    }
    fn scale_rat(&self, a: &IHallElem, r: &Rat) -> IHallElem {
        a.scale_rat(r)
    }
    fn scale_c(&self, a: &IHallElem) -> IHallElem {
        let q = self.0.q();
        a.scale(&(&QSqrt::v(q) - &v_power(-1, q)))
    }
    fn is_zero(&self, a: &IHallElem) -> bool {
        a.is_zero()
    }
}

/// The images of the Drinfeld generators `B_{j,l}`, `Theta_{j,m}`, `H_{j,m}`,
/// `K_j`, `C` in `iH(kC_n)`, for `1 <= j < n`.
///
/// `B_{j,l}` comes from the braid chain for `|l| <= braid_max`; beyond that the
/// `i = j`, `m = 1` instance of the `[H, B]` relation is used as a recursion.
/// `Theta_{j,m}` is solved from the `(k, l) = (0, m - 1)` instance of the
/// `B_{j,k} B_{j,l}` relation.
pub struct Drinfeld {
    pub rv: RootVectors,
    pub braid_max: u64,
    bs: Mutex<HashMap<(usize, i64), IHallElem>>,
    thetas: Mutex<HashMap<(usize, i64), IHallElem>>,
}

impl Drinfeld {
    pub fn new(ev: Arc<Evaluator>, order: OmegaOrder) -> Result<Drinfeld> {
        if !ev.ih.amb().quiver.is_cyclic() || ev.n() < 2 {
            return Err(Error::InvalidArgument("Drinfeld generators need a cyclic quiver with n >= 2".into()));
        }
        Ok(Drinfeld { rv: RootVectors::new(ev, order)?, braid_max: 2, bs: Mutex::default(), thetas: Mutex::default() })
    }

    pub fn with_braid_max(mut self, m: u64) -> Drinfeld {
        self.braid_max = m;
        self
    }

    pub fn ev(&self) -> &Arc<Evaluator> {
        &self.rv.ev
    }

    pub fn ih(&self) -> &Arc<IHall> {
        &self.rv.ev.ih
    }

    pub fn q(&self) -> u32 {
        self.rv.ev.q()
    }

    pub fn n(&self) -> usize {
        self.rv.ev.n()
    }

    /// `v^k`.
    pub fn v(&self, k: i64) -> QSqrt {
        v_power(k, self.q())
    }

    /// `[k]` at `v = sqrt(q)`.
    pub fn qint(&self, k: i64) -> QSqrt {
        qbracket(k, 1, self.q())
    }

    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        self.rv.braid().cartan[i][j]
    }

    /// Image of `K_i^e`.
    pub fn k(&self, i: usize, e: i32) -> Result<IHallElem> {
        let mut a = vec![0; self.n()];
        a[i] = e;
        self.rv.ev.torus(&a, 0)
    }

    /// Image of `C^e`.
    pub fn c(&self, e: i32) -> Result<IHallElem> {
        self.rv.ev.torus(&vec![0; self.n()], e)
    }

    pub fn mul(&self, x: &IHallElem, y: &IHallElem) -> Result<IHallElem> {
        self.ih().product(x, y)
    }

    pub fn mul3(&self, x: &IHallElem, y: &IHallElem, z: &IHallElem) -> Result<IHallElem> {
        self.mul(&self.mul(x, y)?, z)
    }

    /// `[x, y]_{v^a}`.
    pub fn comm(&self, x: &IHallElem, y: &IHallElem, a: i64) -> Result<IHallElem> {
        self.ih().commutator_v(x, y, a)
    }

    fn check_vertex(&self, j: usize) -> Result<()> {
        if j == 0 || j >= self.n() {
            return Err(Error::InvalidArgument(format!("Drinfeld generators need 1 <= j < n, got j={j}")));
        }
        Ok(())
    }

    /// `B_{j,l}` straight from the braid chain, whatever `l` is.
    pub fn b_braid(&self, j: usize, l: i64) -> Result<IHallElem> {
        self.rv.b(j, l)
    }

    pub fn b(&self, j: usize, l: i64) -> Result<IHallElem> {
        self.check_vertex(j)?;
        if let Some(x) = self.bs.lock().expect("cache lock").get(&(j, l)) {
            return Ok(x.clone());
        }
        let x = if l.unsigned_abs() <= self.braid_max {
            self.rv.b(j, l)?
        } else {
            let h1 = self.theta(j, 1)?;
            let half = self.qint(2).inv()?;
            if l > 0 {
                // B_{l} = [2]^{-1} [H_1, B_{l-1}] + B_{l-2} C
                let t = self.comm(&h1, &self.b(j, l - 1)?, 0)?.scale(&half);
                t.add(&self.mul(&self.b(j, l - 2)?, &self.c(1)?)?)
            } else {
                // B_{l} = (B_{l+2} - [2]^{-1} [H_1, B_{l+1}]) C^{-1}
                let t = self.comm(&h1, &self.b(j, l + 1)?, 0)?.scale(&half);
                self.mul(&self.b(j, l + 2)?.sub(&t), &self.c(-1)?)?
            }
        };
        self.bs.lock().expect("cache lock").insert((j, l), x.clone());
        Ok(x)
    }

    /// `Theta_{j,m}`, including the conventions `Theta_0 = 1/(v - v^{-1})` and
    /// `Theta_m = 0` for `m < 0`.
    pub fn theta(&self, j: usize, m: i64) -> Result<IHallElem> {
        self.check_vertex(j)?;
        let ih = self.ih();
        if m < 0 {
            return Ok(IHallElem::zero(ih.clone()));
        }
        if m == 0 {
            return Ok(ih.unit().scale(&(&self.v(1) - &self.v(-1)).inv()?));
        }
        if let Some(x) = self.thetas.lock().expect("cache lock").get(&(j, m)) {
            return Ok(x.clone());
        }
        let lhs = {
            let a = self.comm(&self.b(j, 0)?, &self.b(j, m)?, -2)?;
            let b = self.comm(&self.b(j, 1)?, &self.b(j, m - 1)?, 2)?;
            a.sub(&b.scale(&self.v(-2)))
        };
        let base = self.mul(&lhs, &self.k(j, -1)?)?.scale(&self.v(2));
        let x = match m {
            1 => base.scale_rat(&rat(1, 2)),
            2 => base.sub(&self.c(1)?.scale(&self.v(-1))),
            _ => base.add(&self.mul(&self.theta(j, m - 2)?, &self.c(1)?)?.scale(&self.v(-2))),
        };
        self.thetas.lock().expect("cache lock").insert((j, m), x.clone());
        Ok(x)
    }

    /// `H_{j,1}, ..., H_{j,m}`.
    pub fn h_series(&self, j: usize, m: usize) -> Result<Vec<IHallElem>> {
        let th = (1..=m as i64).map(|r| self.theta(j, r)).collect::<Result<Vec<_>>>()?;
        series_convert(SeriesKind::Theta, &th, &IHallOps(self.ih().clone()), false)
    }

    pub fn h(&self, j: usize, m: usize) -> Result<IHallElem> {
        if m == 0 {
            return Err(Error::InvalidArgument("H_{j,m} needs m >= 1".into()));
        }
        Ok(self.h_series(j, m)?.pop().expect("m >= 1"))
    }
}

/// Image of `x` under the rotation `S_i -> S_{i+s}` of `C_n`.
pub fn rotate(x: &IHallElem, s: i64) -> Result<IHallElem> {
    let amb = x.alg.amb();
    let n = amb.quiver.n;
    if !amb.quiver.is_cyclic() {
        return Err(Error::InvalidArgument("rotation needs a cyclic quiver".into()));
    }
    let sh = |i: usize| (i as i64 + s).rem_euclid(n as i64) as usize;
    let mut out = IHallElem::zero(x.alg.clone());
    for ((m, alpha), c) in &x.terms {
        let segs = amb.info(*m).segs.clone().expect("cyclic classes carry segments");
        let rs: Vec<_> = segs.iter().map(|&(i, a)| (sh(i), a)).collect();
        let mut beta = vec![0; n];
        for (i, &e) in alpha.iter().enumerate() {
            beta[sh(i)] = e;
        }
        out.add_term(amb.class_of_segments(&rs)?, beta, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iqg::eval::KNorm;
    use crate::quiver::{Ambient, Quiver};

    fn dr(n: usize, q: u32) -> Drinfeld {
        let amb = Ambient::new(Quiver::cyclic(n).unwrap(), q).unwrap();
        let ev = Arc::new(Evaluator::new(IHall::from_ambient(amb), KNorm::Signed).unwrap());
        Drinfeld::new(ev, OmegaOrder::SigmaOuter).unwrap()
    }

    #[test]
    fn theta_zero_and_negative() {
        let d = dr(2, 2);
        let t0 = d.theta(1, 0).unwrap();
        // 1/(v - v^{-1}) = v at q = 2
        assert_eq!(t0, d.ih().unit().scale(&QSqrt::v(2)));
        assert!(d.theta(1, -1).unwrap().is_zero());
        assert_eq!(d.h(1, 1).unwrap(), d.theta(1, 1).unwrap());
    }

    #[test]
    fn rotation_is_an_automorphism() {
        let d = dr(3, 2);
        let ih = d.ih();
        let x = ih.parse("(1) * [0:2] K[1,0,0] + (-1/2 + 1*v) * [1:1] K[0,0,-1]").unwrap();
        let y = ih.parse("(1) * [2:1] K[0,0,0]").unwrap();
        let lhs = rotate(&ih.product(&x, &y).unwrap(), 1).unwrap();
        let rhs = ih.product(&rotate(&x, 1).unwrap(), &rotate(&y, 1).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rotate(&rotate(&x, 1).unwrap(), 2).unwrap(), x);
    }
}
