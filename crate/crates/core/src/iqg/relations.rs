//! Residuals `LHS - RHS` of the defining relations, evaluated in iHall algebras.

use super::drinfeld::{rotate, Drinfeld};
use super::eval::Evaluator;
use super::expr::NcExpr;
use crate::coeff::{qbracket, rat, v_power, QSqrt};
use crate::error::{Error, Result};
use crate::ihall::IHallElem;

/// Relation ids accepted by [`check`].
pub const RELATION_IDS: [&str; 11] = ["s1", "s2", "s3", "idr1b", "idr2", "idr3a", "idr3b", "idr4", "idr5", "bbs0", "bs0bs1b"];

#[derive(Clone, Debug)]
pub struct Residual {
    pub relation: &'static str,
    pub params: String,
    pub value: IHallElem,
}

impl Residual {
    pub fn pass(&self) -> bool {
        self.value.is_zero()
    }
}

fn res(relation: &'static str, params: String, value: IHallElem) -> Result<Residual> {
    Ok(Residual { relation, params, value })
}

/// Serre relations `s1`/`s2`/`s3` for the pair `(i, j)`; the relation is
/// chosen by `c_ij`.
pub fn serre(ev: &Evaluator, i: usize, j: usize) -> Result<Residual> {
    let n = ev.n();
    let q = ev.q();
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidArgument(format!("Serre relation needs distinct vertices, got {i}, {j}")));
    }
    let c = ev.ih.amb().quiver.cartan()[i][j];
    let b = |k: usize| NcExpr::<QSqrt>::b(n, k, &q);
    let (bi, bj) = (b(i), b(j));
    let bij = bi.mul(&bj);
    let bji = bj.mul(&bi);
    let (id, x) = match c {
        0 => ("s1", bij.sub(&bji)),
        -1 => {
            let lhs = bi.mul(&bij).sub(&bi.mul(&bji).scale(&qbracket(2, 1, q))).add(&bji.mul(&bi));
            let rhs = bj.mul(&NcExpr::k(n, i, 1, &q)).scale(&v_power(-1, q)).neg();
            ("s2", lhs.sub(&rhs))
        }
        -2 => {
            let mut lhs = NcExpr::zero(n, &q);
            for r in 0..4 {
                let mut w = NcExpr::one(n, &q);
                for _ in 0..3 - r {
                    w = w.mul(&bi);
                }
                w = w.mul(&bj);
                for _ in 0..r {
                    w = w.mul(&bi);
                }
                // [3 choose r] = 1, [3], [3], 1
                let coef = if r == 1 || r == 2 { qbracket(3, 1, q) } else { QSqrt::one(q) };
                let coef = if r % 2 == 1 { -coef } else { coef };
                lhs = lhs.add(&w.scale(&coef));
            }
            let two = qbracket(2, 1, q);
            let s = &(&two * &two) * &v_power(-1, q);
            let rhs = bij.sub(&bji).mul(&NcExpr::k(n, i, 1, &q)).scale(&s).neg();
            ("s3", lhs.sub(&rhs))
        }
        c => return Err(Error::UnsupportedCartanEntry(c)),
    };
    res(id, format!("i={i} j={j}"), ev.eval(&x)?)
}

/// `[H_{i,m}, H_{j,r}]`.
pub fn idr1b(d: &Drinfeld, i: usize, m: usize, j: usize, r: usize) -> Result<Residual> {
    let x = d.comm(&d.h(i, m)?, &d.h(j, r)?, 0)?;
    res("idr1b", format!("i={i} m={m} j={j} r={r}"), x)
}

/// `[H_{i,m}, B_{j,l}] - [m c_ij]/m (B_{j,l+m} - B_{j,l-m} C^m)`.
pub fn idr2(d: &Drinfeld, i: usize, m: usize, j: usize, l: i64) -> Result<Residual> {
    let lhs = d.comm(&d.h(i, m)?, &d.b(j, l)?, 0)?;
    let mi = m as i64;
    let coef = qbracket(mi * d.cartan(i, j) as i64, 1, d.q()).scale(&rat(1, mi));
    let rhs = d.b(j, l + mi)?.sub(&d.mul(&d.b(j, l - mi)?, &d.c(m as i32)?)?).scale(&coef);
    res("idr2", format!("i={i} m={m} j={j} l={l}"), lhs.sub(&rhs))
}

/// `[B_{i,k}, B_{j,l+1}]_{v^{-c}} - v^{-c} [B_{i,k+1}, B_{j,l}]_{v^c}` for `i != j`.
pub fn idr3a(d: &Drinfeld, i: usize, k: i64, j: usize, l: i64) -> Result<Residual> {
    if i == j {
        return Err(Error::InvalidArgument("idr3a needs i != j".into()));
    }
    let c = d.cartan(i, j) as i64;
    let a = d.comm(&d.b(i, k)?, &d.b(j, l + 1)?, -c)?;
    let b = d.comm(&d.b(i, k + 1)?, &d.b(j, l)?, c)?;
    res("idr3a", format!("i={i} k={k} j={j} l={l}"), a.sub(&b.scale(&d.v(-c))))
}

/// The `B_{i,k} B_{i,l}` relation with its four `Theta` terms.
pub fn idr3b(d: &Drinfeld, i: usize, k: i64, l: i64) -> Result<Residual> {
    let a = d.comm(&d.b(i, k)?, &d.b(i, l + 1)?, -2)?;
    let b = d.comm(&d.b(i, k + 1)?, &d.b(i, l)?, 2)?;
    let lhs = a.sub(&b.scale(&d.v(-2)));
    let ki = d.k(i, 1)?;
    let term = |m: i64, cpow: i64, vexp: i64| -> Result<IHallElem> {
        let t = d.theta(i, m)?;
        if t.is_zero() {
            return Ok(t);
        }
        Ok(d.mul3(&t, &d.c(cpow as i32)?, &ki)?.scale(&d.v(vexp)))
    };
    let rhs = term(l - k + 1, k, -2)?
        .sub(&term(l - k - 1, k + 1, -4)?)
        .add(&term(k - l + 1, l, -2)?)
        .sub(&term(k - l - 1, l + 1, -4)?);
    res("idr3b", format!("i={i} k={k} l={l}"), lhs.sub(&rhs))
}

/// `[B_{i,k}, B_{j,l}]` for `c_ij = 0`.
pub fn idr4(d: &Drinfeld, i: usize, k: i64, j: usize, l: i64) -> Result<Residual> {
    if d.cartan(i, j) != 0 {
        return Err(Error::InvalidArgument(format!("idr4 needs c_ij = 0, got {}", d.cartan(i, j))));
    }
    res("idr4", format!("i={i} k={k} j={j} l={l}"), d.comm(&d.b(i, k)?, &d.b(j, l)?, 0)?)
}

fn s_term(d: &Drinfeld, i: usize, j: usize, k1: i64, k2: i64, l: i64) -> Result<IHallElem> {
    let (b1, b2, bj) = (d.b(i, k1)?, d.b(i, k2)?, d.b(j, l)?);
    let t1 = d.mul3(&b1, &b2, &bj)?;
    let t2 = d.mul3(&b1, &bj, &b2)?.scale(&d.qint(2));
    let t3 = d.mul3(&bj, &b1, &b2)?;
    Ok(t1.sub(&t2).add(&t3))
}

fn r_term(d: &Drinfeld, i: usize, j: usize, k1: i64, k2: i64, l: i64) -> Result<IHallElem> {
    let two = d.qint(2);
    let dk = k2 - k1;
    let mut inner = IHallElem::zero(d.ih().clone());
    let bl = d.b(j, l)?;
    let mut p = 0;
    while dk - 2 * p - 1 >= 0 {
        let t = d.comm(&d.theta(i, dk - 2 * p - 1)?, &d.b(j, l - 1)?, -2)?;
        let t = d.mul(&t, &d.c(p as i32 + 1)?)?.scale(&(&d.v(2 * p) * &two));
        inner = inner.sub(&t);
        p += 1;
    }
    let mut p = 1;
    while dk - 2 * p >= 0 {
        let t = d.comm(&bl, &d.theta(i, dk - 2 * p)?, -2)?;
        let t = d.mul(&t, &d.c(p as i32)?)?.scale(&(&d.v(2 * p - 1) * &two));
        inner = inner.sub(&t);
        p += 1;
    }
    inner = inner.sub(&d.comm(&bl, &d.theta(i, dk)?, -2)?);
    d.mul3(&d.k(i, 1)?, &d.c(k1 as i32)?, &inner)
}

/// `SS(k1,k2|l; i,j) - RR(k1,k2|l; i,j)` for `c_ij = -1`.
pub fn idr5(d: &Drinfeld, i: usize, j: usize, k1: i64, k2: i64, l: i64) -> Result<Residual> {
    if d.cartan(i, j) != -1 {
        return Err(Error::InvalidArgument(format!("idr5 needs c_ij = -1, got {}", d.cartan(i, j))));
    }
    let mut s = s_term(d, i, j, k1, k2, l)?;
    let mut r = r_term(d, i, j, k1, k2, l)?;
    if k1 != k2 {
        s = s.add(&s_term(d, i, j, k2, k1, l)?);
        r = r.add(&r_term(d, i, j, k2, k1, l)?);
    }
    res("idr5", format!("i={i} j={j} k1={k1} k2={k2} l={l}"), s.sub(&r))
}

/// The star-graph elements inside `iH(kC_n)`, `n >= 4`: affine node `0`,
/// star `1`, one branch `2, ..., n-1` (so `p = n - 1`), `theta = alpha_2 + ... +
/// alpha_{n-1}`. Results are reported after rotating by `-1`, which moves the
/// star to vertex `0` and the branch to `1, ..., n-2`.
pub struct StarFrame<'a> {
    pub d: &'a Drinfeld,
}

impl StarFrame<'_> {
    pub const SHIFT: i64 = -1;

    pub fn new(d: &Drinfeld) -> Result<StarFrame<'_>> {
        if d.n() < 4 {
            return Err(Error::InvalidArgument("the star frame needs n >= 4".into()));
        }
        Ok(StarFrame { d })
    }

    fn c_k_theta_inv(&self) -> Result<IHallElem> {
        let n = self.d.n();
        let mut alpha = vec![0; n];
        for a in alpha.iter_mut().skip(2) {
            *a = -1;
        }
        self.d.ev().torus(&alpha, 1)
    }

    /// `[x_1, ..., x_r]_{v^a}`, nested to the left.
    fn nested(&self, xs: &[IHallElem], a: i64) -> Result<IHallElem> {
        let mut acc = xs[0].clone();
        for x in &xs[1..] {
            acc = self.d.comm(&acc, x, a)?;
        }
        Ok(acc)
    }

    /// `B_{[i,0]} = [B_{[i,1],-1}, B_{[i,2]}, ..., B_{[i,p-1]}]_v C K_theta^{-1}`.
    pub fn b_s0(&self) -> Result<IHallElem> {
        let d = self.d;
        let mut xs = vec![d.b(2, -1)?];
        for j in 3..d.n() {
            xs.push(d.b(j, 0)?);
        }
        d.mul(&self.nested(&xs, 1)?, &self.c_k_theta_inv()?)
    }

    /// `[B_{[i,0]}, B_{star,l}]_v + [B_{star,l-1}, B_{[i,1]}, ..., B_{[i,p-1]}]_v C K_theta^{-1}`.
    pub fn bbs0(&self, l: i64) -> Result<Residual> {
        let d = self.d;
        let lhs = d.comm(&self.b_s0()?, &d.b(1, l)?, 1)?;
        let mut xs = vec![d.b(1, l - 1)?];
        for j in 2..d.n() {
            xs.push(d.b(j, 0)?);
        }
        let rhs = d.mul(&self.nested(&xs, 1)?, &self.c_k_theta_inv()?)?.neg();
        res("bbs0", format!("star=0 l={l}"), rotate(&lhs.sub(&rhs), Self::SHIFT)?)
    }

    /// `[B_{[i,0]}, [B_{[i,1]}, B_{star,l}]_{v^{-1}}]`.
    pub fn bs0bs1b(&self, l: i64) -> Result<Residual> {
        let d = self.d;
        let inner = d.comm(&d.b(2, 0)?, &d.b(1, l)?, -1)?;
        res("bs0bs1b", format!("star=0 l={l}"), rotate(&d.comm(&self.b_s0()?, &inner, 0)?, Self::SHIFT)?)
    }

}

/// The `B_{[i,0]}` word for a branch `1, ..., p-1` attached to the affine
/// node `0` of `C_n`: `[B_{1,-1}, B_2, ..., B_{p-1}]_v C K_theta^{-1}`.
pub fn bs0_word(d: &Drinfeld, p: usize) -> Result<IHallElem> {
    let n = d.n();
    if p < 2 || p > n {
        return Err(Error::InvalidArgument(format!("branch length p={p} needs 2 <= p <= n={n}")));
    }
    let mut acc = d.b(1, -1)?;
    for j in 2..p {
        acc = d.comm(&acc, &d.b(j, 0)?, 1)?;
    }
    let mut alpha = vec![0; n];
    for a in &mut alpha[1..p] {
        *a = -1;
    }
    d.mul(&acc, &d.ev().torus(&alpha, 1)?)
}

/// `bs0_word - sign/(q-1) [S]` with `S` the uniserial of class `delta - theta`
/// (top `S_0`, length `n - p + 1`).
pub fn bs0_eval(d: &Drinfeld, p: usize, sign: i64) -> Result<Residual> {
    let x = bs0_word(d, p)?;
    let cls = d.ih().amb().class_of_segments(&[(0, d.n() - p + 1)])?;
    let expect = d.ih().basis(cls).scale(&QSqrt::from_rat(rat(sign, d.q() as i64 - 1), d.q()));
    res("bs0_eval", format!("p={p} sign={sign}"), x.sub(&expect))
}

/// Dispatches a relation id with integer parameters `p`, as used by the CLI.
pub fn check(ev: &Evaluator, d: Option<&Drinfeld>, rel: &str, p: &[i64]) -> Result<Residual> {
    let need = |k: usize| -> Result<()> {
        if p.len() != k {
            return Err(Error::InvalidArgument(format!("{rel} takes {k} parameters, got {}", p.len())));
        }
        Ok(())
    };
    let u = |x: i64| -> Result<usize> { usize::try_from(x).map_err(|_| Error::InvalidArgument(format!("negative index {x}"))) };
    if matches!(rel, "s1" | "s2" | "s3") {
        need(2)?;
        let r = serre(ev, u(p[0])?, u(p[1])?)?;
        if r.relation != rel {
            return Err(Error::InvalidArgument(format!("vertices {} {} give {}, not {rel}", p[0], p[1], r.relation)));
        }
        return Ok(r);
    }
    let d = d.ok_or_else(|| Error::InvalidArgument(format!("{rel} needs a cyclic quiver")))?;
    match rel {
        "idr1b" => {
            need(4)?;
            idr1b(d, u(p[0])?, u(p[1])?, u(p[2])?, u(p[3])?)
        }
        "idr2" => {
            need(4)?;
            idr2(d, u(p[0])?, u(p[1])?, u(p[2])?, p[3])
        }
        "idr3a" => {
            need(4)?;
            idr3a(d, u(p[0])?, p[1], u(p[2])?, p[3])
        }
        "idr3b" => {
            need(3)?;
            idr3b(d, u(p[0])?, p[1], p[2])
        }
        "idr4" => {
            need(4)?;
            idr4(d, u(p[0])?, p[1], u(p[2])?, p[3])
        }
        "idr5" => {
            need(5)?;
            idr5(d, u(p[0])?, u(p[1])?, p[2], p[3], p[4])
        }
        "bbs0" => {
            need(1)?;
            StarFrame::new(d)?.bbs0(p[0])
        }
        "bs0bs1b" => {
            need(1)?;
            StarFrame::new(d)?.bs0bs1b(p[0])
        }
        _ => Err(Error::InvalidArgument(format!("unknown relation {rel:?}"))),
    }
}
