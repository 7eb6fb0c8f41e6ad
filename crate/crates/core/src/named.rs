//! Distinguished elements of `iH(kC_n)`: `H_{0,m}`, `theta_m`, `c_m`.

use std::sync::Arc;

use crate::coeff::{qbracket, rat, v_power, QSqrt, Rat};
use crate::error::{Error, Result};
use crate::ihall::{IHall, IHallElem};
use crate::iqg::Drinfeld;
use crate::quiver::Segment;

/// Partitions of `m` with weakly decreasing parts.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=m.min(max)).rev() {
            cur.push(p);
            go(m - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// `prod_{i=1}^{l} (1 - v^{2 i d})`.
pub fn n_factor(l: usize, d: u32, q: u32) -> QSqrt {
    let mut acc = QSqrt::one(q);
    for i in 1..=l as i64 {
        acc = &acc * &(&QSqrt::one(q) - &v_power(2 * i * d as i64, q));
    }
    acc
}

/// `([m]/m) sum_{|lambda| = m} n(l(lambda) - 1) [M_lambda]/|Aut M_lambda|
///  - delta_{m even} v^{-m/2} ([m/2]/m) [K_{(m/2) delta}]`
/// where `M_lambda = (+)_i` of the segments `seg(lambda_i)`.
pub fn h_tube(ih: &Arc<IHall>, m: usize, seg: &dyn Fn(usize) -> Segment, delta: &[i64]) -> Result<IHallElem> {
    if m == 0 {
        return Err(Error::InvalidArgument("H_{x,m} needs m >= 1".into()));
    }
    let q = ih.q();
    let amb = ih.amb();
    let mi = m as i64;
    let lead = qbracket(mi, 1, q).scale(&rat(1, mi));
    let mut out = IHallElem::zero(ih.clone());
    for lam in partitions(m) {
        let segs: Vec<Segment> = lam.iter().map(|&p| seg(p)).collect();
        let cls = amb.class_of_segments(&segs)?;
        let aut = amb.aut_order(cls)?;
        let c = &(&lead * &n_factor(lam.len() - 1, 1, q)) * &QSqrt::from_rat(Rat::new(1.into(), aut.into()), q);
        out.add_term(cls, vec![0; delta.len()], c);
    }
    if m % 2 == 0 {
        let c = &qbracket(mi / 2, 1, q).scale(&rat(1, mi)) * &v_power(-mi / 2, q);
        let k: Vec<i64> = delta.iter().map(|d| d * mi / 2).collect();
        out = out.sub(&ih.torus(&k).scale(&c));
    }
    Ok(out)
}

/// `H_{0,m}` in `iH(kC_n)`: partition modules `(+)_i S_0^{(lambda_i n)}`.
pub fn h0m(ih: &Arc<IHall>, m: usize) -> Result<IHallElem> {
    let n = ih.n();
    if !ih.amb().quiver.is_cyclic() {
        return Err(Error::InvalidArgument("H_{0,m} needs a cyclic quiver".into()));
    }
    h_tube(ih, m, &|p| (0, p * n), &vec![1; n])
}

/// `H_{i,m}` for every `0 <= i < n`, with `H_{0,m}` from [`h0m`].
pub fn h_all(d: &Drinfeld, m: usize) -> Result<Vec<IHallElem>> {
    let mut out = vec![h0m(d.ih(), m)?];
    for i in 1..d.n() {
        out.push(d.h(i, m)?);
    }
    Ok(out)
}

/// `theta_m = sum_{i=0}^{n-1} [n-i]_{v^m} H_{i,m}`.
pub fn theta_hat(d: &Drinfeld, m: usize) -> Result<IHallElem> {
    let n = d.n() as i64;
    let mut out = IHallElem::zero(d.ih().clone());
    for (i, h) in h_all(d, m)?.iter().enumerate() {
        out = out.add(&h.scale(&qbracket(n - i as i64, m as i64, d.q())));
    }
    Ok(out)
}

/// Every multiset of segments of `C_n` with dimension vector `m delta`.
pub fn segment_multisets(n: usize, m: usize) -> Vec<Vec<Segment>> {
    segment_multisets_dims(n, &vec![m; n])
}

/// Every multiset of segments of `C_n` with dimension vector `dims`, i.e.
/// every isoclass of that dimension.
pub fn segment_multisets_dims(n: usize, dims: &[usize]) -> Vec<Vec<Segment>> {
    let total: usize = dims.iter().sum();
    let segs: Vec<Segment> = (0..n).flat_map(|i| (1..=total).map(move |a| (i, a))).collect();
    // segment (i, a) has composition factors S_i, S_{i-1}, ..., S_{i-a+1}
    let covers = |(i, a): Segment| -> Vec<usize> { (0..a).map(|t| (i + n * a - t) % n).collect() };
    fn go(
        segs: &[Segment],
        covers: &dyn Fn(Segment) -> Vec<usize>,
        start: usize,
        need: &mut [i64],
        cur: &mut Vec<Segment>,
        out: &mut Vec<Vec<Segment>>,
    ) {
        if need.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for (k, &s) in segs.iter().enumerate().skip(start) {
            let cv = covers(s);
            for &v in &cv {
                need[v] -= 1;
            }
            if need.iter().all(|&x| x >= 0) {
                cur.push(s);
                go(segs, covers, k, need, cur, out);
                cur.pop();
            }
            for &v in &cv {
                need[v] += 1;
            }
        }
    }
    let mut need: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
    let mut out = Vec::new();
    go(&segs, &covers, 0, &mut need, &mut Vec::new(), &mut out);
    out
}

/// Socle vertex of the segment `(i, a)`.
pub fn socle_vertex(n: usize, (i, a): Segment) -> usize {
    (i + n * a + 1 - a) % n
}

/// `c_m = (-1)^m q^{-nm} sum_M (-1)^{dim End M} [M]` over classes `M` of
/// dimension `m delta` whose socle is multiplicity free.
pub fn c_hat(ih: &Arc<IHall>, m: usize) -> Result<IHallElem> {
    let n = ih.n();
    let q = ih.q();
    if !ih.amb().quiver.is_cyclic() {
        return Err(Error::InvalidArgument("c_m needs a cyclic quiver".into()));
    }
    if m == 0 {
        return Ok(ih.unit());
    }
    let amb = ih.amb();
    let scale = QSqrt::from_rat(Rat::new(if m % 2 == 0 { 1.into() } else { (-1).into() }, (q as i64).pow((n * m) as u32).into()), q);
    let mut out = IHallElem::zero(ih.clone());
    for segs in segment_multisets(n, m) {
        let mut socles: Vec<usize> = segs.iter().map(|&s| socle_vertex(n, s)).collect();
        socles.sort_unstable();
        if socles.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let cls = amb.class_of_segments(&segs)?;
        let end = ih.hall.hom_dim(cls, cls);
        let c = if end % 2 == 0 { scale.clone() } else { -scale.clone() };
        out.add_term(cls, vec![0; n], c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Ambient, Quiver};

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..8).map(|m| partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn multisets_of_delta() {
        // dimension (1,1) in C_2: 0:2, 1:2, 0:1+1:1
        assert_eq!(segment_multisets(2, 1).len(), 3);
        for segs in segment_multisets(3, 2) {
            let mut d = [0; 3];
            for &(i, a) in &segs {
                for t in 0..a {
                    d[(i + 3 * a - t) % 3] += 1;
                }
            }
            assert_eq!(d, [2, 2, 2]);
        }
    }

    #[test]
    fn h01_in_c2() {
        let ih = IHall::from_ambient(Ambient::new(Quiver::cyclic(2).unwrap(), 2).unwrap());
        let h = h0m(&ih, 1).unwrap();
        // End of the length-2 uniserial is k, so |Aut| = 1
        assert_eq!(h.to_string(), "(1) * [0:2] K[0,0]");
        assert_eq!(h.grade(), Some(vec![1, 1]));
    }
}
