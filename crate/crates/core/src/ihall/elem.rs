use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{QSqrt, Rat};
use crate::error::{Error, Result};
use crate::quiver::{render_dims_i, ClassId};

use super::IHall;

/// `(class of M, alpha)` for the basis element `[M] * [K_alpha]`.
pub type Key = (ClassId, Vec<i64>);

#[derive(Clone)]
pub struct IHallElem {
    pub alg: Arc<IHall>,
    pub terms: BTreeMap<Key, QSqrt>,
}

impl IHallElem {
    pub fn zero(alg: Arc<IHall>) -> IHallElem {
        IHallElem { alg, terms: BTreeMap::new() }
    }

    pub fn basis(alg: Arc<IHall>, m: ClassId, alpha: Vec<i64>) -> IHallElem {
        let one = QSqrt::one(alg.q());
        let mut e = IHallElem::zero(alg);
        e.terms.insert((m, alpha), one);
        e
    }

    pub fn add_term(&mut self, m: ClassId, alpha: Vec<i64>, c: QSqrt) {
        if c.is_zero() {
            return;
        }
        let key = (m, alpha);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
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

    pub fn scale(&self, s: &QSqrt) -> IHallElem {
        let mut out = IHallElem::zero(self.alg.clone());
        if s.is_zero() {
            return out;
        }
        for ((m, a), c) in &self.terms {
            out.terms.insert((*m, a.clone()), c * s);
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> IHallElem {
        self.scale(&QSqrt::from_rat(r.clone(), self.alg.q()))
    }

    pub fn add(&self, o: &IHallElem) -> IHallElem {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &IHallElem) {
        for ((m, a), c) in &o.terms {
            self.add_term(*m, a.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &IHallElem) -> IHallElem {
        let mut out = self.clone();
        for ((m, a), c) in &o.terms {
            out.add_term(*m, a.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> IHallElem {
        self.scale(&QSqrt::from_int(-1, self.alg.q()))
    }

    /// Multiplication by the central element `[K_beta]`.
    pub fn shift_torus(&self, beta: &[i64]) -> IHallElem {
        let mut out = IHallElem::zero(self.alg.clone());
        for ((m, a), c) in &self.terms {
            let na: Vec<i64> = a.iter().zip(beta).map(|(x, y)| x + y).collect();
            out.terms.insert((*m, na), c.clone());
        }
        out
    }

    /// Degree `M + 2 alpha`, for which the iHall product is homogeneous.
    pub fn grade_of(&self, key: &Key) -> Vec<i64> {
        let d = self.alg.amb().dims(key.0);
        d.iter().zip(&key.1).map(|(x, a)| *x as i64 + 2 * a).collect()
    }

    /// Common grade of all terms, or `None` for an inhomogeneous element.
    pub fn grade(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|k| self.grade_of(k));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    /// Terms whose module class is maximal for the componentwise order.
    /// With `unique`, several incomparable maximal classes are an error.
    pub fn leading_part(&self, unique: bool) -> Result<IHallElem> {
        let amb = self.alg.amb().clone();
        let dims: Vec<(Key, Vec<usize>)> = self.terms.keys().map(|k| (k.clone(), amb.dims(k.0))).collect();
        let below = |a: &[usize], b: &[usize]| a != b && a.iter().zip(b).all(|(x, y)| x <= y);
        let maximal: Vec<&Vec<usize>> = {
            let mut v: Vec<&Vec<usize>> = Vec::new();
            for (_, d) in &dims {
                if !dims.iter().any(|(_, e)| below(d, e)) && !v.contains(&d) {
                    v.push(d);
                }
            }
            v
        };
        if unique && maximal.len() > 1 {
            return Err(Error::AmbiguousLeadingTerm(render_dims_i(&to_i(maximal[0])), render_dims_i(&to_i(maximal[1]))));
        }
        let mut out = IHallElem::zero(self.alg.clone());
        for (k, d) in &dims {
            if maximal.contains(&d) {
                out.terms.insert(k.clone(), self.terms[k].clone());
            }
        }
        Ok(out)
    }

    pub fn coeff(&self, m: ClassId, alpha: &[i64]) -> QSqrt {
        self.terms.get(&(m, alpha.to_vec())).cloned().unwrap_or_else(|| QSqrt::zero(self.alg.q()))
    }
}

fn to_i(d: &[usize]) -> Vec<i64> {
    d.iter().map(|&x| x as i64).collect()
}

impl PartialEq for IHallElem {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl fmt::Display for IHallElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let amb = self.alg.amb();
        let mut rows: Vec<(String, &Vec<i64>, &QSqrt)> = self.terms.iter().map(|((m, a), c)| (amb.label(*m), a, c)).collect();
        rows.sort_by(|x, y| (&x.0, x.1).cmp(&(&y.0, y.1)));
        let parts: Vec<String> = rows.iter().map(|(l, a, c)| format!("({c}) * [{l}] K{}", render_dims_i(a))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for IHallElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(super) fn parse(alg: &Arc<IHall>, s: &str) -> Result<IHallElem> {
    let mut out = IHallElem::zero(alg.clone());
    let b = s.trim().as_bytes();
    if b == b"0" {
        return Ok(out);
    }
    let err = |pos: usize, what: &str| Error::Parse(format!("at {pos}: {what}"));
    let mut i = 0;
    let expect = |i: &mut usize, lit: &str| -> Result<()> {
        if b[*i..].starts_with(lit.as_bytes()) {
            *i += lit.len();
            Ok(())
        } else {
            Err(err(*i, &format!("expected {lit:?}")))
        }
    };
    loop {
        expect(&mut i, "(")?;
        let mut depth = 1;
        let start = i;
        while i < b.len() && depth > 0 {
            match b[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
            i += 1;
        }
        if depth != 0 {
            return Err(err(start, "unbalanced parenthesis"));
        }
        let c = QSqrt::parse(&s.trim()[start..i - 1], alg.q()).map_err(|_| err(start, "bad scalar"))?;
        expect(&mut i, " * [")?;
        let cs = i;
        while i < b.len() && b[i] != b']' {
            i += 1;
        }
        let class = alg.amb().parse_class(&s.trim()[cs..i]).map_err(|_| err(cs, "unknown class"))?;
        expect(&mut i, "] K[")?;
        let as_ = i;
        while i < b.len() && b[i] != b']' {
            i += 1;
        }
        let alpha: Vec<i64> = s.trim()[as_..i]
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.trim().parse::<i64>().map_err(|_| err(as_, "bad torus exponent")))
            .collect::<Result<_>>()?;
        if alpha.len() != alg.n() {
            return Err(err(as_, "torus exponent has the wrong length"));
        }
        expect(&mut i, "]")?;
        out.add_term(class, alpha, c);
        if i == b.len() {
            return Ok(out);
        }
        expect(&mut i, " + ")?;
    }
}
