use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::QSqrt;
use crate::quiver::ClassId;

use super::HallAlgebra;

/// Finite combination of iso-classes with coefficients in `Q(sqrt q)`.
#[derive(Clone)]
pub struct HallElem {
    pub alg: Arc<HallAlgebra>,
    pub terms: BTreeMap<ClassId, QSqrt>,
}

impl HallElem {
    pub fn zero(alg: Arc<HallAlgebra>) -> HallElem {
        HallElem { alg, terms: BTreeMap::new() }
    }

    pub fn basis(alg: Arc<HallAlgebra>, c: ClassId) -> HallElem {
        let q = alg.q();
        let mut e = HallElem::zero(alg);
        e.terms.insert(c, QSqrt::one(q));
        e
    }

    pub fn add_term(&mut self, c: ClassId, x: QSqrt) {
        if x.is_zero() {
            return;
        }
        let slot = self.terms.entry(c).or_insert_with(|| QSqrt::zero(x.q));
        *slot += &x;
        if slot.is_zero() {
            self.terms.remove(&c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &QSqrt) -> HallElem {
        let mut out = HallElem::zero(self.alg.clone());
        for (c, x) in &self.terms {
            out.add_term(*c, x * s);
        }
        out
    }

    pub fn add(&self, o: &HallElem) -> HallElem {
        let mut out = self.clone();
        for (c, x) in &o.terms {
            out.add_term(*c, x.clone());
        }
        out
    }

    pub fn sub(&self, o: &HallElem) -> HallElem {
        let mut out = self.clone();
        for (c, x) in &o.terms {
            out.add_term(*c, -x);
        }
        out
    }
}

impl PartialEq for HallElem {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl fmt::Display for HallElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let amb = &self.alg.amb;
        let mut rows: Vec<(String, &QSqrt)> = self.terms.iter().map(|(c, x)| (amb.label(*c), x)).collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let parts: Vec<String> = rows.iter().map(|(l, x)| format!("({x}) * [{l}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HallElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
