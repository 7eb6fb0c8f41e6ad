use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Element of `F_q`, encoded as the base-`p` digits of its coefficient vector
/// in the polynomial basis `1, x, ..., x^{k-1}`.
pub type Elem = u8;

/// Moduli for the small non-prime orders, coefficients low to high.
const MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[1, 0, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 1, 1]),
    (27, &[1, 2, 0, 1]),
];

pub struct Field {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (modulus {:?})", self.q, self.modulus)
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

// Polynomials over F_p as coefficient vectors, low to high.
fn ptrim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pinv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|x| (a * x) % p == 1).expect("unit mod p")
}

fn pmod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = ptrim(a.to_vec());
    let m = ptrim(m.to_vec());
    let lc_inv = pinv_mod(*m.last().unwrap(), p);
    while r.len() >= m.len() && !r.is_empty() {
        let shift = r.len() - m.len();
        let c = (r.last().unwrap() * lc_inv) % p;
        for (i, &b) in m.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p * p - (c * b) % p) % p;
        }
        r = ptrim(r);
    }
    r
}

/// Trial factorisation: `f` (degree `d`) is irreducible iff no monic
/// polynomial of degree `1..=d/2` divides it.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = ptrim(f.to_vec());
    let d = f.len() - 1;
    for e in 1..=d / 2 {
        let count = (p as u64).pow(e as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(e + 1);
            let mut t = idx;
            for _ in 0..e {
                g.push((t % p as u64) as u32);
                t /= p as u64;
            }
            g.push(1);
            if pmod(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn find_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for idx in 0..count {
        let mut g = Vec::with_capacity(k as usize + 1);
        let mut t = idx;
        for _ in 0..k {
            g.push((t % p as u64) as u32);
            t /= p as u64;
        }
        g.push(1);
        if g[0] != 0 && is_irreducible(&g, p) {
            return g;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(q: u32) -> Result<Arc<Field>> {
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedFieldOrder(q))?;
        if q > 255 {
            return Err(Error::UnsupportedFieldOrder(q));
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            MODULI.iter().find(|(qq, _)| *qq == q).map(|(_, m)| m.to_vec()).unwrap_or_else(|| find_modulus(p, k))
        };
        let decode = |e: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut t = e;
            for _ in 0..k {
                v.push(t % p);
                t /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 {
            let mut e = 0;
            for (i, c) in v.iter().enumerate().take(k as usize) {
                e += c * p.pow(i as u32);
            }
            e
        };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let va = decode(a);
            for b in 0..q {
                let vb = decode(b);
                let s: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s) as Elem;
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in va.iter().enumerate() {
                    for (j, y) in vb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if k == 1 { ptrim(prod) } else { pmod(&prod, &modulus, p) };
                mul[(a * q + b) as usize] = encode(&r) as Elem;
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (0..n).find(|&b| mul[a * n + b] == 1).unwrap() as Elem;
            }
        }
        Ok(Arc::new(Field { p, k, q, modulus, add, mul, neg, inv }))
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::NotInvertible("0 in F_q".into()));
        }
        Ok(self.inv[a as usize])
    }

    #[inline]
    pub(crate) fn inv_nz(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let mut acc = 1;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_moduli_are_irreducible() {
        for (q, m) in MODULI {
            let (p, k) = prime_power(*q).unwrap();
            assert_eq!(m.len() as u32, k + 1);
            assert!(is_irreducible(m, p), "modulus for {q}");
        }
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
        assert!(Field::new(6).is_err());
        assert!(matches!(Field::new(1), Err(Error::UnsupportedFieldOrder(1))));
    }

    #[test]
    fn f4_modulus() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x = 2, x^2 = x + 1 = 3
        assert_eq!(f.mul(2, 2), 3);
    }
}
