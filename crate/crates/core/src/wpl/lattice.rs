use serde::Serialize;

use crate::error::{Error, Result};

/// Weight data `p_1, ..., p_t` of a weighted projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Weights {
    pub p: Vec<usize>,
}

impl Weights {
    pub fn new(p: Vec<usize>) -> Result<Weights> {
        if p.is_empty() || p.iter().any(|&x| x < 2) {
            return Err(Error::InvalidArgument(format!("weights must be >= 2, got {p:?}")));
        }
        Ok(Weights { p })
    }

    /// Rejects `t > q` or `t < 2`: the `t` exceptional points are rational
    /// points of `P^1(F_q)`.
    pub fn check_field(&self, q: u32) -> Result<()> {
        if self.t() < 2 || self.t() > q as usize {
            return Err(Error::InvalidArgument(format!("need 2 <= t <= q, got t={} q={q}", self.t())));
        }
        Ok(())
    }

    /// Parses `p=2,3,5`.
    pub fn parse(s: &str) -> Result<Weights> {
        let body = s.strip_prefix("p=").ok_or_else(|| Error::Parse(format!("weight spec {s:?} must start with p=")))?;
        let p = body
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("weight {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Weights::new(p)
    }

    pub fn t(&self) -> usize {
        self.p.len()
    }

    /// Number of root-lattice coordinates: `alpha_star`, the `alpha_{ij}`, `delta`.
    pub fn rank(&self) -> usize {
        2 + self.p.iter().map(|p| p - 1).sum::<usize>()
    }

    /// Coordinate of `alpha_{ij}`, `1 <= j < p_i`.
    pub fn branch_index(&self, i: usize, j: usize) -> usize {
        1 + self.p[..i].iter().map(|p| p - 1).sum::<usize>() + j - 1
    }

    pub fn delta_index(&self) -> usize {
        self.rank() - 1
    }
}

/// `sum l_i x_i + l c` in `L(p)`, normal form `0 <= l_i < p_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LpElement {
    pub l: Vec<i64>,
    pub c: i64,
}

pub fn lp_normal_form(p: &[usize], l: &[i64], c: i64) -> Result<LpElement> {
    if l.len() != p.len() {
        return Err(Error::DimensionMismatch(format!("{} x-coefficients for {} weights", l.len(), p.len())));
    }
    let mut c = c;
    let mut out = Vec::with_capacity(p.len());
    for (&li, &pi) in l.iter().zip(p) {
        let pi = pi as i64;
        c += li.div_euclid(pi);
        out.push(li.rem_euclid(pi));
    }
    Ok(LpElement { l: out, c })
}

/// A class in `Z alpha_star + sum Z alpha_{ij} + Z delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootClass(pub Vec<i64>);

impl RootClass {
    pub fn zero(w: &Weights) -> RootClass {
        RootClass(vec![0; w.rank()])
    }

    pub fn delta(w: &Weights, k: i64) -> RootClass {
        let mut r = RootClass::zero(w);
        r.0[w.delta_index()] = k;
        r
    }

    pub fn add(&self, o: &RootClass) -> RootClass {
        RootClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> RootClass {
        RootClass(self.0.iter().map(|a| a * k).collect())
    }

    /// Class of a tube-`i` module with dimension vector `d` over `C_{p_i}`,
    /// vertex `j` standing for `S_{ij}`.
    pub fn of_tube_dims(w: &Weights, i: usize, d: &[i64]) -> RootClass {
        let mut r = RootClass::delta(w, d[0]);
        for j in 1..w.p[i] {
            r.0[w.branch_index(i, j)] = d[j] - d[0];
        }
        r
    }
}

/// The sheaves whose classes the lattice table lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheaf {
    /// `S_{ij}`, `0 <= j < p_i`.
    S(usize, usize),
    /// `S_{i,0}^{(r)}`: top `S_{i,0}`, length `r`.
    S0Len(usize, usize),
    /// `O(l c)`.
    Line(i64),
}

pub fn k0_class(w: &Weights, s: Sheaf) -> Result<RootClass> {
    let tube = |i: usize| -> Result<usize> {
        w.p.get(i).copied().ok_or_else(|| Error::InvalidArgument(format!("no tube {i} for weights {:?}", w.p)))
    };
    match s {
        Sheaf::S(i, j) => {
            let p = tube(i)?;
            if j >= p {
                return Err(Error::InvalidArgument(format!("S_{{{i},{j}}} with p_{i} = {p}")));
            }
            let mut d = vec![0; p];
            d[j] = 1;
            Ok(RootClass::of_tube_dims(w, i, &d))
        }
        Sheaf::S0Len(i, r) => {
            let p = tube(i)?;
            // composition factors S_{i,0}, S_{i,p-1}, S_{i,p-2}, ...
            let mut d = vec![0; p];
            for t in 0..r {
                d[(p - t % p) % p] += 1;
            }
            Ok(RootClass::of_tube_dims(w, i, &d))
        }
        Sheaf::Line(l) => {
            let mut r = RootClass::delta(w, l);
            r.0[0] = 1;
            Ok(r)
        }
    }
}

/// Cartan form of the star graph, `delta` in the radical.
pub fn cartan_pairing(w: &Weights, a: &RootClass, b: &RootClass) -> i64 {
    let (x, y) = (&a.0, &b.0);
    let mut s = 2 * x[0] * y[0];
    for (i, &p) in w.p.iter().enumerate() {
        for j in 1..p {
            let u = w.branch_index(i, j);
            s += 2 * x[u] * y[u];
            let prev = if j == 1 { 0 } else { u - 1 };
            s -= x[prev] * y[u] + x[u] * y[prev];
        }
    }
    s
}

fn mobius(mut n: u64) -> i64 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Number of closed points of degree `d` on `P^1` over `F_q`.
pub fn point_census(q: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument("point degree must be >= 1".into()));
    }
    // d N_d = sum_{e | d} mu(d/e) (q^e + 1)
    let mut s: i128 = 0;
    for e in (1..=d).filter(|e| d % e == 0) {
        s += mobius(d / e) as i128 * (q as i128).pow(e as u32) + mobius(d / e) as i128;
    }
    Ok((s / d as i128) as u64)
}

/// Closed points of `P^1`, the first `t` rational points being exceptional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Point {
    Exc(usize),
    Ord { d: u32, k: u32 },
}

impl Point {
    pub fn degree(&self) -> u32 {
        match self {
            Point::Exc(_) => 1,
            Point::Ord { d, .. } => *d,
        }
    }

    pub fn parse(s: &str) -> Result<Point> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| x.parse::<u32>().map_err(|_| Error::Parse(format!("point id {s:?}")));
        match parts.as_slice() {
            ["exc", i] => Ok(Point::Exc(num(i)? as usize)),
            ["ord", d, k] if num(d)? >= 1 => Ok(Point::Ord { d: num(d)?, k: num(k)? }),
            _ => Err(Error::Parse(format!("point id {s:?}, expected exc:i or ord:d:k"))),
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Exc(i) => write!(f, "exc:{i}"),
            Point::Ord { d, k } => write!(f, "ord:{d}:{k}"),
        }
    }
}

/// Every point of degree dividing `m`.
pub fn points_dividing(w: &Weights, q: u32, m: u32) -> Result<Vec<Point>> {
    w.check_field(q)?;
    let mut out: Vec<Point> = (0..w.t()).map(Point::Exc).collect();
    for d in (1..=m).filter(|d| m % d == 0) {
        let mut cnt = point_census(q as u64, d as u64)?;
        if d == 1 {
            cnt -= w.t() as u64;
        }
        out.extend((0..cnt as u32).map(|k| Point::Ord { d, k }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms() {
        let p = [2, 3];
        assert_eq!(lp_normal_form(&p, &[2, 0], 0).unwrap(), LpElement { l: vec![0, 0], c: 1 });
        assert_eq!(lp_normal_form(&p, &[0, 4], 0).unwrap(), LpElement { l: vec![0, 1], c: 1 });
        assert_eq!(lp_normal_form(&p, &[-1, 0], 0).unwrap(), LpElement { l: vec![1, 0], c: -1 });
    }

    #[test]
    fn census_small() {
        let c: Vec<u64> = (1..=3).map(|d| point_census(2, d).unwrap()).collect();
        assert_eq!(c, vec![3, 1, 2]);
        assert_eq!(point_census(3, 2).unwrap(), 3);
    }

    #[test]
    fn table_rows() {
        let w = Weights::new(vec![2, 3]).unwrap();
        let a = |i, j| {
            let mut r = RootClass::zero(&w);
            r.0[w.branch_index(i, j)] = 1;
            r
        };
        assert_eq!(k0_class(&w, Sheaf::S(1, 2)).unwrap(), a(1, 2));
        let s10 = RootClass::delta(&w, 1).add(&a(1, 1).scale(-1)).add(&a(1, 2).scale(-1));
        assert_eq!(k0_class(&w, Sheaf::S(1, 0)).unwrap(), s10);
        assert_eq!(k0_class(&w, Sheaf::S0Len(1, 2)).unwrap(), RootClass::delta(&w, 1).add(&a(1, 1).scale(-1)));
        assert_eq!(k0_class(&w, Sheaf::S0Len(0, 4)).unwrap(), RootClass::delta(&w, 2));
        assert_eq!(cartan_pairing(&w, &k0_class(&w, Sheaf::Line(0)).unwrap(), &a(0, 1)), -1);
    }

    #[test]
    fn weight_hypothesis() {
        let w = Weights::parse("p=2,2,2").unwrap();
        assert!(w.check_field(2).is_err());
        assert!(w.check_field(3).is_ok());
        assert!(Weights::parse("p=2,1").is_err());
        assert_eq!(Point::parse("ord:2:0").unwrap(), Point::Ord { d: 2, k: 0 });
        assert!(Point::parse("ord:0:1").is_err());
    }
}
