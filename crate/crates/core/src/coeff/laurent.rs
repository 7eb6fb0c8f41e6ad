use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::{rat_int, v_power, QSqrt, Rat};
use crate::error::{Error, Result};

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
struct Poly(Vec<Rat>);

impl Poly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn constant(c: Rat) -> Self {
        Poly(vec![c]).trim()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("nonzero poly")
    }

    fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = o.0.get(i).cloned().unwrap_or_else(Rat::zero);
            out.push(a + b);
        }
        Poly(out).trim()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c.clone()).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trim()
    }

    fn scale(&self, c: &Rat) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect()).trim()
    }

    fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let mut r = self.clone();
        if r.0.len() < d.0.len() {
            return (Poly::default(), r);
        }
        let mut quo = vec![Rat::zero(); r.0.len() - d.0.len() + 1];
        let dl = d.lead().clone();
        while !r.is_zero() && r.0.len() >= d.0.len() {
            let shift = r.0.len() - d.0.len();
            let c = r.lead() / &dl;
            for (i, b) in d.0.iter().enumerate() {
                r.0[i + shift] -= &c * b;
            }
            quo[shift] = c;
            r = r.trim();
        }
        (Poly(quo).trim(), r)
    }

    fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().clone();
        a.scale(&l.recip())
    }

    /// Number of leading zero coefficients removed, and the stripped poly.
    fn strip_low(&self) -> (i64, Poly) {
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (k as i64, Poly(self.0[k..].to_vec()))
    }

    fn eval(&self, q: u32) -> QSqrt {
        let mut acc = QSqrt::zero(q);
        let v = QSqrt::v(q);
        for c in self.0.iter().rev() {
            acc = &(&acc * &v) + &QSqrt::from_rat(c.clone(), q);
        }
        acc
    }
}

/// Rational function in `v` with rational coefficients, kept as
/// `v^shift * num(v) / den(v)` with `num(0) != 0`, `den(0) = 1` and coprime parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentV {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl LaurentV {
    pub fn zero() -> Self {
        LaurentV { shift: 0, num: Poly::default(), den: Poly::constant(Rat::one()) }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentV { shift: 0, num: Poly::constant(c), den: Poly::constant(Rat::one()) }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        LaurentV { shift: k, num: Poly::constant(Rat::one()), den: Poly::constant(Rat::one()) }
    }

    /// Sum of `c_k v^k` given as `(k, c_k)` pairs.
    pub fn from_terms(terms: &[(i64, Rat)]) -> Self {
        let mut acc = Self::zero();
        for (k, c) in terms {
            acc = acc + LaurentV::v_pow(*k).scale(c);
        }
        acc
    }

    /// `[n]_{v^m}`.
    pub fn qbracket(n: i64, m: i64) -> Self {
        assert!(m != 0, "qbracket needs m != 0");
        let mut acc = Self::zero();
        let a = n.abs();
        let mut k = a - 1;
        while k >= -(a - 1) && a > 0 {
            acc = acc + Self::v_pow(m * k);
            k -= 2;
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }

    /// `[n]_v`.
    pub fn qint(n: i64) -> Self {
        Self::qbracket(n, 1)
    }

    /// Gaussian binomial `[n choose r]_v`.
    pub fn qbinom(n: i64, r: i64) -> Self {
        if r < 0 || r > n {
            return Self::zero();
        }
        let mut acc = Self::one();
        for i in 0..r {
            acc = acc * Self::qint(n - i);
            acc = acc.try_div(&Self::qint(i + 1)).expect("nonzero bracket");
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent_poly(&self) -> bool {
        self.den.is_one()
    }

    fn normalize(shift: i64, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (ks, num) = num.strip_low();
        let (kd, den) = den.strip_low();
        let mut shift = shift + ks - kd;
        let (mut num, mut den) = (num, den);
        if !den.is_one() {
            let g = num.gcd(&den);
            if g.deg() > 0 {
                num = num.divrem(&g).0;
                den = den.divrem(&g).0;
            }
            let (ks, n2) = num.strip_low();
            let (kd, d2) = den.strip_low();
            shift += ks - kd;
            num = n2;
            den = d2;
        }
        let c = den.0[0].clone();
        if !c.is_one() {
            let ci = c.recip();
            num = num.scale(&ci);
            den = den.scale(&ci);
        }
        LaurentV { shift, num, den }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentV { shift: self.shift, num: self.num.scale(c), den: self.den.clone() }
    }

    fn aligned(&self, o: &Self) -> (i64, Poly, Poly) {
        // bring both to a common shift, returning (shift, self_num_shifted, other_num_shifted)
        let s = self.shift.min(o.shift);
        let pad = |p: &Poly, k: i64| -> Poly {
            let mut v = vec![Rat::zero(); k as usize];
            v.extend(p.0.iter().cloned());
            Poly(v).trim()
        };
        (s, pad(&self.num, self.shift - s), pad(&o.num, o.shift - s))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        Ok(Self::normalize(self.shift - o.shift, self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().try_div(self)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }

    /// Value at `v = sqrt(q)`.
    pub fn eval(&self, q: u32) -> Result<QSqrt> {
        let n = self.num.eval(q);
        let d = self.den.eval(q);
        let vs = v_power(self.shift, q);
        n.try_mul(&vs)?.try_div(&d)
    }

    /// Coefficients of a Laurent polynomial as `(exponent, coeff)` pairs.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, Rat)>> {
        if !self.is_laurent_poly() {
            return None;
        }
        Some(
            self.num
                .0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.shift + i as i64, c.clone()))
                .collect(),
        )
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let e = p.expr()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }
}

fn fmt_poly(p: &Poly, shift: i64) -> String {
    let mut out = String::new();
    for (i, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let k = shift + i as i64;
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let cs = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
        match k {
            0 => out.push_str(&cs),
            _ => {
                if !a.is_one() {
                    out.push_str(&cs);
                    out.push('*');
                }
                if k == 1 {
                    out.push('v');
                } else {
                    out.push_str(&format!("v^{k}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.den.is_one() {
            return write!(f, "{}", fmt_poly(&self.num, self.shift));
        }
        let (ns, ds) = if self.shift >= 0 { (self.shift, 0) } else { (0, -self.shift) };
        write!(f, "({})/({})", fmt_poly(&self.num, ns), fmt_poly(&self.den, ds))
    }
}

impl fmt::Debug for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for LaurentV {
    type Output = LaurentV;
    fn add(self, o: LaurentV) -> LaurentV {
        &self + &o
    }
}

impl Add for &LaurentV {
    type Output = LaurentV;
    fn add(self, o: &LaurentV) -> LaurentV {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let (s, a, b) = self.aligned(o);
            let den = self.den.clone();
            return LaurentV::normalize(s, a.add(&b), den);
        }
        let (s, a, b) = self.aligned(o);
        LaurentV::normalize(s, a.mul(&o.den).add(&b.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl Sub for LaurentV {
    type Output = LaurentV;
    fn sub(self, o: LaurentV) -> LaurentV {
        &self + &(-o)
    }
}

impl Sub for &LaurentV {
    type Output = LaurentV;
    fn sub(self, o: &LaurentV) -> LaurentV {
        self + &(-o)
    }
}

impl Mul for LaurentV {
    type Output = LaurentV;
    fn mul(self, o: LaurentV) -> LaurentV {
        &self * &o
    }
}

impl Mul for &LaurentV {
    type Output = LaurentV;
    fn mul(self, o: &LaurentV) -> LaurentV {
        if self.is_zero() || o.is_zero() {
            return LaurentV::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return LaurentV { shift: self.shift + o.shift, num: self.num.mul(&o.num), den: self.den.clone() };
        }
        LaurentV::normalize(self.shift + o.shift, self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for LaurentV {
    type Output = LaurentV;
    fn neg(self) -> LaurentV {
        -&self
    }
}

impl Neg for &LaurentV {
    type Output = LaurentV;
    fn neg(self) -> LaurentV {
        LaurentV { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.i, String::from_utf8_lossy(self.s)))
    }

    fn expr(&mut self) -> Result<LaurentV> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentV> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.i += 1;
                    let d = self.unary()?;
                    acc = acc.try_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentV> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let neg = if self.s.get(self.i) == Some(&b'-') {
            self.i += 1;
            true
        } else {
            false
        };
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if st == self.i {
            return Err(self.err("expected integer"));
        }
        let n: i64 = std::str::from_utf8(&self.s[st..self.i]).unwrap().parse().map_err(|_| self.err("bad integer"))?;
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<LaurentV> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let e = if self.peek() == Some(b'(') {
                self.i += 1;
                let e = self.int()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected )"));
                }
                self.i += 1;
                e
            } else {
                self.int()?
            };
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentV> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected )"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(b'v') => {
                self.i += 1;
                Ok(LaurentV::v_pow(1))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(LaurentV::from_int(n))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::scalar::rat;

    #[test]
    fn canonical_render() {
        let x = LaurentV::v_pow(1) - LaurentV::v_pow(-1);
        assert_eq!(x.to_string(), "v - v^-1");
        let y = x.inv().unwrap();
        assert_eq!(y.to_string(), "(-v)/(-v^2 + 1)");
        let z = LaurentV::parse("(v^2 - 1)/(v)").unwrap();
        assert_eq!(z, x);
        assert!(z.is_laurent_poly());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["v^3 - 1/2*v + 2", "(v^2 + 1)/(v^2 - 1)", "-v^-2", "0"] {
            let x = LaurentV::parse(s).unwrap();
            assert_eq!(LaurentV::parse(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn bracket_and_binomial() {
        assert_eq!(LaurentV::qbinom(3, 1), LaurentV::qint(3));
        let b42 = LaurentV::qbinom(4, 2);
        assert_eq!(b42.to_string(), "v^4 + v^2 + 2 + v^-2 + v^-4");
        assert_eq!(LaurentV::qbracket(3, 2).eval(2).unwrap(), QSqrt::from_rat(rat(21, 4), 2));
    }

    #[test]
    fn eval_fraction() {
        let x = LaurentV::parse("1/(v - v^-1)").unwrap();
        let val = x.eval(2).unwrap();
        // sqrt2 / (2 - 1)
        assert_eq!(val, QSqrt::new(rat(0, 1), rat(1, 1), 2));
    }
}
