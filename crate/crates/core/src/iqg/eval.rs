use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::expr::NcExpr;
use crate::coeff::{rat, LaurentV, QSqrt};
use crate::error::{Error, Result};
use crate::ihall::{IHall, IHallElem};
use crate::quiver::ClassId;

/// Scalar attached to the image of `K_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KNorm {
    /// `K_i -> -q^{-1} [K_i]`.
    Signed,
    /// `K_i -> [K_i]`.
    Plain,
}

impl KNorm {
    pub fn name(self) -> &'static str {
        match self {
            KNorm::Signed => "signed",
            KNorm::Plain => "plain",
        }
    }

    pub fn parse(s: &str) -> Result<KNorm> {
        match s {
            "signed" => Ok(KNorm::Signed),
            "plain" => Ok(KNorm::Plain),
            _ => Err(Error::Parse(format!("normalization {s:?}"))),
        }
    }
}

/// The algebra map `B_i -> -1/(q-1) [S_i]`, `K_i -> kappa [K_i]`,
/// `C -> prod_i kappa [K_i]`.
pub struct Evaluator {
    pub ih: Arc<IHall>,
    pub norm: KNorm,
    simples: Vec<ClassId>,
    beta: QSqrt,
    kappa: QSqrt,
}

impl Evaluator {
    pub fn new(ih: Arc<IHall>, norm: KNorm) -> Result<Evaluator> {
        let q = ih.q();
        let n = ih.n();
        let simples = (0..n).map(|i| ih.amb().simple_class(i)).collect::<Result<Vec<_>>>()?;
        let beta = QSqrt::from_rat(rat(-1, q as i64 - 1), q);
        let kappa = match norm {
            KNorm::Signed => QSqrt::from_rat(rat(-1, q as i64), q),
            KNorm::Plain => QSqrt::one(q),
        };
        Ok(Evaluator { ih, norm, simples, beta, kappa })
    }

    pub fn q(&self) -> u32 {
        self.ih.q()
    }

    pub fn n(&self) -> usize {
        self.ih.n()
    }

    /// `-1/(q-1)`.
    pub fn beta(&self) -> &QSqrt {
        &self.beta
    }

    /// Image of `K^alpha C^c`.
    pub fn torus(&self, alpha: &[i32], c: i32) -> Result<IHallElem> {
        let (s, v) = self.torus_parts(alpha, c)?;
        Ok(self.ih.torus(&v).scale(&s))
    }

    fn torus_parts(&self, alpha: &[i32], c: i32) -> Result<(QSqrt, Vec<i64>)> {
        let n = self.n();
        let tot: i64 = alpha.iter().map(|&e| e as i64).sum::<i64>() + n as i64 * c as i64;
        let s = self.kappa.pow(tot)?;
        Ok((s, alpha.iter().map(|&e| (e + c) as i64).collect()))
    }

    pub fn b(&self, i: usize) -> IHallElem {
        self.ih.basis(self.simples[i]).scale(&self.beta)
    }

    pub fn eval_laurent(&self, x: &NcExpr<LaurentV>) -> Result<IHallElem> {
        self.eval(&x.at_q(self.q())?)
    }

    pub fn eval(&self, x: &NcExpr<QSqrt>) -> Result<IHallElem> {
        if x.n != self.n() || x.ctx != self.q() {
            return Err(Error::InvalidArgument(format!(
                "expression over {} vertices at q={} evaluated in an algebra with {} vertices at q={}",
                x.n,
                x.ctx,
                self.n(),
                self.q()
            )));
        }
        // group by reversed B-part so suffix products are shared
        let mut groups: BTreeMap<Vec<u8>, Vec<(&[i32], i32, &QSqrt)>> = BTreeMap::new();
        for (w, c) in &x.terms {
            let mut r = w.b.clone();
            r.reverse();
            groups.entry(r).or_default().push((&w.k, w.c, c));
        }
        let mut out = IHallElem::zero(self.ih.clone());
        let mut stack: Vec<IHallElem> = vec![self.ih.unit()];
        let mut prev: Vec<u8> = Vec::new();
        for (r, tori) in &groups {
            let common = prev.iter().zip(r).take_while(|(a, b)| a == b).count();
            stack.truncate(common + 1);
            for &i in &r[common..] {
                let top = stack.last().expect("nonempty");
                let next = self.ih.left_mul_class(self.simples[i as usize], top)?;
                stack.push(next);
            }
            prev.clone_from(r);
            let prod = stack.last().expect("nonempty");
            if prod.is_zero() {
                continue;
            }
            let bpow = self.beta.pow(r.len() as i64)?;
            let mut acc: BTreeMap<Vec<i64>, QSqrt> = BTreeMap::new();
            for (k, c, coef) in tori {
                let (s, v) = self.torus_parts(k, *c)?;
                let e = acc.entry(v).or_insert_with(|| QSqrt::zero(self.q()));
                *e += &(&(*coef * &s) * &bpow);
            }
            for (v, s) in acc {
                if !s.is_zero() {
                    out.add_assign(&prod.scale(&s).shift_torus(&v));
                }
            }
        }
        Ok(out)
    }
}

impl Evaluator {
    /// Image of `x` under the map sending `B_i -> images[i]` and `K^alpha C^c`
    /// to the image of `K^{kmap(alpha)} C^c`.
    pub fn eval_with(&self, x: &NcExpr<QSqrt>, images: &[IHallElem], kmap: &[Vec<i32>]) -> Result<IHallElem> {
        let n = self.n();
        let mut groups: BTreeMap<Vec<u8>, Vec<(Vec<i32>, i32, &QSqrt)>> = BTreeMap::new();
        for (w, c) in &x.terms {
            let mut r = w.b.clone();
            r.reverse();
            let mut k = vec![0; n];
            for (i, &e) in w.k.iter().enumerate() {
                for (o, &m) in k.iter_mut().zip(&kmap[i]) {
                    *o += e * m;
                }
            }
            groups.entry(r).or_default().push((k, w.c, c));
        }
        let mut out = IHallElem::zero(self.ih.clone());
        let mut stack: Vec<IHallElem> = vec![self.ih.unit()];
        let mut prev: Vec<u8> = Vec::new();
        for (r, tori) in &groups {
            let common = prev.iter().zip(r).take_while(|(a, b)| a == b).count();
            stack.truncate(common + 1);
            for &i in &r[common..] {
                let next = self.ih.product(&images[i as usize], stack.last().expect("nonempty"))?;
                stack.push(next);
            }
            prev.clone_from(r);
            let prod = stack.last().expect("nonempty");
            if prod.is_zero() {
                continue;
            }
            let mut acc: BTreeMap<Vec<i64>, QSqrt> = BTreeMap::new();
            for (k, c, coef) in tori {
                let (s, v) = self.torus_parts(k, *c)?;
                let e = acc.entry(v).or_insert_with(|| QSqrt::zero(self.q()));
                *e += &(*coef * &s);
            }
            for (v, s) in acc {
                if !s.is_zero() {
                    out.add_assign(&prod.scale(&s).shift_torus(&v));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Ambient, Quiver};

    fn ev(n: usize, q: u32, norm: KNorm) -> Evaluator {
        let amb = Ambient::new(Quiver::cyclic(n).unwrap(), q).unwrap();
        Evaluator::new(IHall::from_ambient(amb), norm).unwrap()
    }

    #[test]
    fn generators() {
        let e = ev(2, 2, KNorm::Signed);
        let b1 = e.eval(&NcExpr::b(2, 1, &2)).unwrap();
        assert_eq!(b1.to_string(), "(-1) * [1:1] K[0,0]");
        let kk = NcExpr::<QSqrt>::k(2, 1, 1, &2).mul(&NcExpr::k(2, 1, -1, &2));
        assert_eq!(e.eval(&kk).unwrap(), e.ih.unit());
        let c = e.eval(&NcExpr::c_pow(2, 1, &2)).unwrap();
        assert_eq!(c, e.ih.torus(&[1, 1]).scale(&QSqrt::from_rat(rat(1, 4), 2)));
        let p = ev(3, 3, KNorm::Plain);
        assert_eq!(p.eval(&NcExpr::c_pow(3, -1, &3)).unwrap(), p.ih.torus(&[-1, -1, -1]));
    }

    #[test]
    fn commutator_matches_direct_products() {
        let e = ev(2, 2, KNorm::Signed);
        let x = NcExpr::<QSqrt>::b(2, 0, &2).commutator_v(&NcExpr::b(2, 1, &2), -2);
        let lhs = e.eval(&x).unwrap();
        let rhs = e.ih.commutator_v(&e.b(0), &e.b(1), -2).unwrap();
        assert_eq!(lhs, rhs);
    }
}
