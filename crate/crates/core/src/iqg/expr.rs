use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{qbracket, v_power, LaurentV, QSqrt, Rat};
use crate::error::Result;

/// Coefficient ring for [`NcExpr`]: rational functions of `v`, or their
/// values at `v = sqrt q`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    type Ctx: Clone + PartialEq + fmt::Debug;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_rat(r: Rat, ctx: &Self::Ctx) -> Self;
    fn v_pow(k: i64, ctx: &Self::Ctx) -> Self;
    /// `[n]_{v^m}`.
    fn bracket(n: i64, m: i64, ctx: &Self::Ctx) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
}

impl Coeff for LaurentV {
    type Ctx = ();
    fn zero(_: &()) -> Self {
        LaurentV::zero()
    }
    fn from_rat(r: Rat, _: &()) -> Self {
        LaurentV::from_rat(r)
    }
    fn v_pow(k: i64, _: &()) -> Self {
        LaurentV::v_pow(k)
    }
    fn bracket(n: i64, m: i64, _: &()) -> Self {
        LaurentV::qbracket(n, m)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        LaurentV::is_zero(self)
    }
    fn inv(&self) -> Result<Self> {
        LaurentV::inv(self)
    }
}

impl Coeff for QSqrt {
    type Ctx = u32;
    fn zero(q: &u32) -> Self {
        QSqrt::zero(*q)
    }
    fn from_rat(r: Rat, q: &u32) -> Self {
        QSqrt::from_rat(r, *q)
    }
    fn v_pow(k: i64, q: &u32) -> Self {
        v_power(k, *q)
    }
    fn bracket(n: i64, m: i64, q: &u32) -> Self {
        qbracket(n, m, *q)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        QSqrt::is_zero(self)
    }
    fn inv(&self) -> Result<Self> {
        QSqrt::inv(self)
    }
}

/// A monomial `B_{b_1} ... B_{b_L} K^k C^c`; the `K` and `C` factors are
/// central and kept on the right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word {
    pub b: Vec<u8>,
    pub k: Vec<i32>,
    pub c: i32,
}

impl Word {
    pub fn unit(n: usize) -> Word {
        Word { b: Vec::new(), k: vec![0; n], c: 0 }
    }

    fn mul(&self, o: &Word) -> Word {
        let mut b = self.b.clone();
        b.extend_from_slice(&o.b);
        Word { b, k: self.k.iter().zip(&o.k).map(|(x, y)| x + y).collect(), c: self.c + o.c }
    }

    fn render(&self) -> String {
        let mut parts: Vec<String> = self.b.iter().map(|i| format!("B{i}")).collect();
        for (i, &e) in self.k.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("K{i}")),
                _ => parts.push(format!("K{i}^{e}")),
            }
        }
        match self.c {
            0 => {}
            1 => parts.push("C".into()),
            e => parts.push(format!("C^{e}")),
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Element of the free algebra on `B_i` tensored with Laurent polynomials in
/// the central `K_i`, `C`. No relations among the `B_i` are applied.
#[derive(Clone, PartialEq)]
pub struct NcExpr<F: Coeff = LaurentV> {
    pub n: usize,
    pub ctx: F::Ctx,
    pub terms: BTreeMap<Word, F>,
}

impl<F: Coeff> NcExpr<F> {
    pub fn zero(n: usize, ctx: &F::Ctx) -> Self {
        NcExpr { n, ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: F, ctx: &F::Ctx) -> Self {
        let mut e = Self::zero(n, ctx);
        e.add_term(Word::unit(n), c);
        e
    }

    pub fn one(n: usize, ctx: &F::Ctx) -> Self {
        Self::scalar(n, F::from_rat(Rat::from_integer(1.into()), ctx), ctx)
    }

    pub fn b(n: usize, i: usize, ctx: &F::Ctx) -> Self {
        let mut w = Word::unit(n);
        w.b.push(i as u8);
        let mut e = Self::zero(n, ctx);
        e.add_term(w, F::from_rat(Rat::from_integer(1.into()), ctx));
        e
    }

    /// `K^alpha C^c`.
    pub fn torus(n: usize, alpha: &[i32], c: i32, ctx: &F::Ctx) -> Self {
        let mut w = Word::unit(n);
        w.k.copy_from_slice(alpha);
        w.c = c;
        let mut e = Self::zero(n, ctx);
        e.add_term(w, F::from_rat(Rat::from_integer(1.into()), ctx));
        e
    }

    pub fn k(n: usize, i: usize, e: i32, ctx: &F::Ctx) -> Self {
        let mut alpha = vec![0; n];
        alpha[i] = e;
        Self::torus(n, &alpha, 0, ctx)
    }

    pub fn c_pow(n: usize, e: i32, ctx: &F::Ctx) -> Self {
        Self::torus(n, &vec![0; n], e, ctx)
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
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

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.n, &self.ctx);
        }
        self.map(|c| c.mul(s))
    }

    fn map(&self, f: impl Fn(&F) -> F) -> Self {
        let mut r = Self::zero(self.n, &self.ctx);
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.n, &self.ctx);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.mul(w2), c1.mul(c2));
            }
        }
        r
    }

    /// `x y - v^a y x`.
    pub fn commutator_v(&self, y: &Self, a: i64) -> Self {
        self.mul(y).sub(&y.mul(self).scale(&F::v_pow(a, &self.ctx)))
    }

    /// Multiply every word by `K^alpha C^c`.
    pub fn shift_torus(&self, alpha: &[i32], c: i32) -> Self {
        let mut r = Self::zero(self.n, &self.ctx);
        for (w, x) in &self.terms {
            let mut w = w.clone();
            for (a, b) in w.k.iter_mut().zip(alpha) {
                *a += b;
            }
            w.c += c;
            r.add_term(w, x.clone());
        }
        r
    }

    /// The anti-automorphism reversing every `B`-word.
    pub fn reversed(&self) -> Self {
        let mut r = Self::zero(self.n, &self.ctx);
        for (w, c) in &self.terms {
            let mut w = w.clone();
            w.b.reverse();
            r.add_term(w, c.clone());
        }
        r
    }

    /// Relabel vertices `i -> i + s mod n`.
    pub fn rotate(&self, s: i64) -> Self {
        let n = self.n as i64;
        let sh = |i: usize| ((i as i64 + s).rem_euclid(n)) as usize;
        let mut r = Self::zero(self.n, &self.ctx);
        for (w, c) in &self.terms {
            let b = w.b.iter().map(|&i| sh(i as usize) as u8).collect();
            let mut k = vec![0; self.n];
            for (i, &e) in w.k.iter().enumerate() {
                k[sh(i)] = e;
            }
            r.add_term(Word { b, k, c: w.c }, c.clone());
        }
        r
    }

    pub fn max_b_len(&self) -> usize {
        self.terms.keys().map(|w| w.b.len()).max().unwrap_or(0)
    }

    /// Change of coefficient ring, e.g. evaluation of `LaurentV` at `v = sqrt q`.
    pub fn convert<G: Coeff>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Result<G>) -> Result<NcExpr<G>> {
        let mut r = NcExpr::<G>::zero(self.n, ctx);
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c)?);
        }
        Ok(r)
    }
}

impl NcExpr<LaurentV> {
    pub fn at_q(&self, q: u32) -> Result<NcExpr<QSqrt>> {
        self.convert(&q, |c| c.eval(q))
    }
}

impl<F: Coeff> fmt::Display for NcExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}) {}", w.render())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Coeff> fmt::Debug for NcExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = NcExpr<LaurentV>;

    #[test]
    fn k_cancels_and_distributes() {
        let b1 = E::b(3, 1, &());
        let x = b1.mul(&E::k(3, 1, 1, &())).mul(&E::k(3, 1, -1, &()));
        assert_eq!(x, b1);
        let lhs = E::b(3, 1, &()).add(&E::b(3, 2, &())).mul(&E::b(3, 0, &()));
        let rhs = E::b(3, 1, &()).mul(&E::b(3, 0, &())).add(&E::b(3, 2, &()).mul(&E::b(3, 0, &())));
        assert_eq!(lhs, rhs);
        let two = LaurentV::qint(2);
        let s = lhs.scale(&two);
        assert!(s.terms.values().all(|c| *c == two));
    }

    #[test]
    fn reversal_and_rotation() {
        let x = E::b(3, 0, &()).mul(&E::b(3, 1, &())).mul(&E::k(3, 2, 1, &()));
        let r = x.reversed();
        assert_eq!(r, E::b(3, 1, &()).mul(&E::b(3, 0, &())).mul(&E::k(3, 2, 1, &())));
        assert_eq!(x.rotate(1), E::b(3, 1, &()).mul(&E::b(3, 2, &())).mul(&E::k(3, 0, 1, &())));
        assert_eq!(x.rotate(3), x);
    }
}
