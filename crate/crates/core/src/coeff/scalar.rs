use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `a + b*v` with `v^2 = q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt {
    pub a: Rat,
    pub b: Rat,
    pub q: u32,
}

impl QSqrt {
    pub fn new(a: Rat, b: Rat, q: u32) -> Self {
        QSqrt { a, b, q }
    }

    pub fn zero(q: u32) -> Self {
        QSqrt { a: Rat::zero(), b: Rat::zero(), q }
    }

    pub fn one(q: u32) -> Self {
        Self::from_rat(Rat::one(), q)
    }

    pub fn from_rat(a: Rat, q: u32) -> Self {
        QSqrt { a, b: Rat::zero(), q }
    }

    pub fn from_int(n: i64, q: u32) -> Self {
        Self::from_rat(rat_int(n), q)
    }

    pub fn v(q: u32) -> Self {
        QSqrt { a: Rat::zero(), b: Rat::one(), q }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.q != o.q {
            return Err(Error::MismatchedQ(self.q, o.q));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(QSqrt { a: &self.a + &o.a, b: &self.b + &o.b, q: self.q })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(QSqrt { a: &self.a - &o.a, b: &self.b - &o.b, q: self.q })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        if self.b.is_zero() && o.b.is_zero() {
            return QSqrt { a: &self.a * &o.a, b: Rat::zero(), q: self.q };
        }
        let qr = rat_int(self.q as i64);
        QSqrt {
            a: &self.a * &o.a + qr * (&self.b * &o.b),
            b: &self.a * &o.b + &self.b * &o.a,
            q: self.q,
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QSqrt { a: &self.a * r, b: &self.b * r, q: self.q }
    }

    /// `a^2 - q b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat_int(self.q as i64) * (&self.b * &self.b)
    }

    pub fn conj(&self) -> Self {
        QSqrt { a: self.a.clone(), b: -self.b.clone(), q: self.q }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let ni = n.recip();
        Ok(QSqrt { a: &self.a * &ni, b: -(&self.b * &ni), q: self.q })
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_unchecked(&o.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = QSqrt::one(self.q);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            b = b.mul_unchecked(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn parse(s: &str, q: u32) -> Result<Self> {
        let l = crate::coeff::LaurentV::parse(s)?;
        l.eval(q)
    }
}

/// `v^n` at `v = sqrt(q)`.
pub fn v_power(n: i64, q: u32) -> QSqrt {
    let half = n.div_euclid(2);
    let odd = n.rem_euclid(2) == 1;
    let qr = rat_int(q as i64);
    let scale = if half >= 0 {
        num_traits::pow(qr, half as usize)
    } else {
        num_traits::pow(qr, (-half) as usize).recip()
    };
    if odd {
        QSqrt { a: Rat::zero(), b: scale, q }
    } else {
        QSqrt { a: scale, b: Rat::zero(), q }
    }
}

/// Quantum integer `[n]_{v^m} = (v^{mn} - v^{-mn}) / (v^m - v^{-m})` at `v = sqrt(q)`.
pub fn qbracket(n: i64, m: i64, q: u32) -> QSqrt {
    assert!(m != 0, "qbracket needs m != 0");
    if n == 0 {
        return QSqrt::zero(q);
    }
    let sign = if n < 0 { -1 } else { 1 };
    let n = n.abs();
    // [n]_{x} = x^{n-1} + x^{n-3} + ... + x^{1-n} with x = v^m
    let mut acc = QSqrt::zero(q);
    let mut k = n - 1;
    while k >= -(n - 1) {
        acc = acc + v_power(m * k, q);
        k -= 2;
    }
    if sign < 0 {
        -acc
    } else {
        acc
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bpart = |b: &Rat| -> String {
            if b.is_one() {
                "v".to_string()
            } else {
                format!("{}*v", fmt_rat(b))
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&self.a)),
            (true, false) => {
                if self.b.is_negative() {
                    write!(f, "-{}", bpart(&-self.b.clone()))
                } else {
                    write!(f, "{}", bpart(&self.b))
                }
            }
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}", fmt_rat(&self.a), bpart(&-self.b.clone()))
                } else {
                    write!(f, "{} + {}", fmt_rat(&self.a), bpart(&self.b))
                }
            }
        }
    }
}

impl fmt::Debug for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (q={})", self, self.q)
    }
}

// Operators assume a shared q; mixing fields through them is a programming error.
impl Add for QSqrt {
    type Output = QSqrt;
    fn add(self, o: QSqrt) -> QSqrt {
        self.try_add(&o).expect("QSqrt add")
    }
}

impl<'a> Add<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn add(self, o: &QSqrt) -> QSqrt {
        self.try_add(o).expect("QSqrt add")
    }
}

impl AddAssign<&QSqrt> for QSqrt {
    fn add_assign(&mut self, o: &QSqrt) {
        assert_eq!(self.q, o.q, "QSqrt add");
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl Sub for QSqrt {
    type Output = QSqrt;
    fn sub(self, o: QSqrt) -> QSqrt {
        self.try_sub(&o).expect("QSqrt sub")
    }
}

impl<'a> Sub<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn sub(self, o: &QSqrt) -> QSqrt {
        self.try_sub(o).expect("QSqrt sub")
    }
}

impl Mul for QSqrt {
    type Output = QSqrt;
    fn mul(self, o: QSqrt) -> QSqrt {
        self.try_mul(&o).expect("QSqrt mul")
    }
}

impl<'a> Mul<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn mul(self, o: &QSqrt) -> QSqrt {
        self.try_mul(o).expect("QSqrt mul")
    }
}

impl Neg for QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        QSqrt { a: -self.a, b: -self.b, q: self.q }
    }
}

impl Neg for &QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        QSqrt { a: -self.a.clone(), b: -self.b.clone(), q: self.q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_half_plus_half_v() {
        let x = QSqrt::new(rat(1, 2), rat(1, 2), 2);
        let y = x.inv().unwrap();
        assert_eq!(y.to_string(), "-2 + 2*v");
        assert_eq!(&x * &y, QSqrt::one(2));
    }

    #[test]
    fn mismatched_q() {
        let x = QSqrt::one(2);
        let y = QSqrt::one(3);
        assert_eq!(x.try_add(&y), Err(Error::MismatchedQ(2, 3)));
    }

    #[test]
    fn norm_zero_not_invertible() {
        let x = QSqrt::new(rat_int(2), rat_int(1), 4);
        assert!(matches!(x.inv(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn bracket_values() {
        assert_eq!(qbracket(3, 2, 2), QSqrt::from_rat(rat(21, 4), 2));
        assert_eq!(qbracket(2, 1, 3), QSqrt::new(rat_int(0), rat(4, 3), 3));
        assert_eq!(qbracket(-2, 1, 3), -qbracket(2, 1, 3));
        assert_eq!(v_power(-3, 2), QSqrt::new(rat_int(0), rat(1, 4), 2));
    }

    #[test]
    fn render() {
        assert_eq!(QSqrt::new(rat(-1, 2), rat(1, 2), 2).to_string(), "-1/2 + 1/2*v");
        assert_eq!(QSqrt::new(rat(3, 1), rat(-1, 1), 2).to_string(), "3 - v");
        assert_eq!(QSqrt::zero(5).to_string(), "0");
    }
}
