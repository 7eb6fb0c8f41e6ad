use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finfield::{solve_linear, Elem, Field, Mat};

use super::quiver::Quiver;

pub const DEFAULT_DIMS_CAP: usize = 10;

/// A morphism of representations: one matrix per vertex.
pub type Morphism = Vec<Mat>;

/// Finite-dimensional representation: for an arrow `s -> t` the matrix has
/// shape `dims[t] x dims[s]` and acts on column vectors.
#[derive(Clone)]
pub struct Rep {
    pub quiver: Arc<Quiver>,
    pub field: Arc<Field>,
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl std::fmt::Debug for Rep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rep(dims={:?}, maps={:?})", self.dims, self.maps)
    }
}

pub fn check_cap(dims: &[usize], cap: usize) -> Result<()> {
    let total: usize = dims.iter().sum();
    if total > cap {
        return Err(Error::DimsCapExceeded { cap, total });
    }
    Ok(())
}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, field: Arc<Field>, dims: Vec<usize>, maps: Vec<Mat>, cap: usize) -> Result<Rep> {
        if dims.len() != quiver.n || maps.len() != quiver.arrows.len() {
            return Err(Error::DimensionMismatch("vertex or arrow count".into()));
        }
        check_cap(&dims, cap)?;
        for (m, &(s, t)) in maps.iter().zip(&quiver.arrows) {
            if m.rows != dims[t] || m.cols != dims[s] {
                return Err(Error::DimensionMismatch(format!("arrow {s}->{t} matrix {}x{}", m.rows, m.cols)));
            }
        }
        let r = Rep { quiver, field, dims, maps };
        if r.quiver.has_oriented_cycle() && !r.is_nilpotent() {
            return Err(Error::InvalidArgument("representation is not nilpotent".into()));
        }
        Ok(r)
    }

    pub fn zero(quiver: Arc<Quiver>, field: Arc<Field>) -> Rep {
        let dims = vec![0; quiver.n];
        let maps = quiver.arrows.iter().map(|_| Mat::zeros(0, 0)).collect();
        Rep { quiver, field, dims, maps }
    }

    pub fn simple(quiver: Arc<Quiver>, field: Arc<Field>, i: usize) -> Rep {
        let mut dims = vec![0; quiver.n];
        dims[i] = 1;
        let maps = quiver.arrows.iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
        Rep { quiver, field, dims, maps }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Every path of length `total_dim` acts as zero.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.total_dim();
        if n == 0 || !self.quiver.has_oriented_cycle() {
            return true;
        }
        if self.quiver.is_cyclic() {
            // one arrow leaves each vertex, so paths are determined by start and length
            return (0..self.quiver.n).all(|i| self.cyclic_path(i, n).is_zero());
        }
        let mut layer: Vec<(usize, Mat)> = (0..self.quiver.n).map(|i| (i, Mat::identity(self.dims[i]))).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for (end, p) in &layer {
                for (m, &(s, t)) in self.maps.iter().zip(&self.quiver.arrows) {
                    if s == *end {
                        let np = m.mul_unchecked(&self.field, p);
                        if !np.is_zero() {
                            next.push((t, np));
                        }
                    }
                }
            }
            layer = next;
        }
        layer.is_empty()
    }

    pub fn direct_sum(&self, o: &Rep) -> Rep {
        let dims: Vec<usize> = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&o.maps)
            .zip(&self.quiver.arrows)
            .map(|((a, b), &(s, t))| {
                let mut m = Mat::zeros(dims[t], dims[s]);
                for r in 0..a.rows {
                    for c in 0..a.cols {
                        m.set(r, c, a.get(r, c));
                    }
                }
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        m.set(a.rows + r, a.cols + c, b.get(r, c));
                    }
                }
                m
            })
            .collect();
        Rep { quiver: self.quiver.clone(), field: self.field.clone(), dims, maps }
    }

    pub fn is_morphism_to(&self, o: &Rep, f: &Morphism) -> bool {
        let fl = &self.field;
        self.maps.iter().zip(&o.maps).zip(&self.quiver.arrows).all(|((a, b), &(s, t))| {
            f[t].mul_unchecked(fl, a) == b.mul_unchecked(fl, &f[s])
        })
    }

    /// Path map of the cyclic quiver: the composite of `len` arrows starting at `i`.
    pub fn cyclic_path(&self, i: usize, len: usize) -> Mat {
        let n = self.quiver.n;
        let mut cur = i;
        let mut p = Mat::identity(self.dims[i]);
        for _ in 0..len {
            // arrow index `cur` is cur -> cur-1
            p = self.maps[cur].mul_unchecked(&self.field, &p);
            cur = (cur + n - 1) % n;
        }
        p
    }
}

pub fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        off.push(acc);
        acc += d;
    }
    off
}

/// Segment `(i, a)`: uniserial with top `S_i` and composition factors
/// `S_i, S_{i-1}, ..., S_{i-a+1}` read downwards along the arrows.
pub type Segment = (usize, usize);

pub fn rep_from_segments(quiver: Arc<Quiver>, field: Arc<Field>, segs: &[Segment], cap: usize) -> Result<Rep> {
    if !quiver.is_cyclic() {
        return Err(Error::InvalidArgument("segments need a cyclic quiver".into()));
    }
    let n = quiver.n;
    let mut dims = vec![0usize; n];
    // (segment, position) -> index within its vertex space
    let mut pos: Vec<Vec<usize>> = Vec::new();
    for &(top, len) in segs {
        if top >= n || len == 0 {
            return Err(Error::InvalidArgument(format!("bad segment ({top},{len})")));
        }
        let mut v = Vec::with_capacity(len);
        for p in 0..len {
            let vert = (top + n * len - p) % n;
            v.push(dims[vert]);
            dims[vert] += 1;
        }
        pos.push(v);
    }
    check_cap(&dims, cap)?;
    let mut maps: Vec<Mat> = quiver.arrows.iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
    for (k, &(top, len)) in segs.iter().enumerate() {
        for p in 0..len.saturating_sub(1) {
            let vert = (top + n * len - p) % n;
            maps[vert].set(pos[k][p + 1], pos[k][p], 1);
        }
    }
    Ok(Rep { quiver, field, dims, maps })
}

/// Matrix of `f -> (f_t A_a - B_a f_s)_a` from `sum_i Hom(A_i, B_i)` to
/// `sum_a Hom(A_s, B_t)`: its kernel is `Hom(A, B)` and its cokernel `Ext^1(A, B)`.
pub fn hom_ext_matrix(a: &Rep, b: &Rep) -> (Mat, Vec<usize>, Vec<usize>) {
    let fl = &a.field;
    let q = &a.quiver;
    let var_off = {
        let sizes: Vec<usize> = (0..q.n).map(|i| a.dims[i] * b.dims[i]).collect();
        offsets(&sizes)
    };
    let nvars: usize = (0..q.n).map(|i| a.dims[i] * b.dims[i]).sum();
    let eq_sizes: Vec<usize> = q.arrows.iter().map(|&(s, t)| b.dims[t] * a.dims[s]).collect();
    let eq_off = offsets(&eq_sizes);
    let neqs: usize = eq_sizes.iter().sum();
    let mut m = Mat::zeros(neqs, nvars);
    for (ai, &(s, t)) in q.arrows.iter().enumerate() {
        let am = &a.maps[ai];
        let bm = &b.maps[ai];
        for r in 0..b.dims[t] {
            for c in 0..a.dims[s] {
                let row = eq_off[ai] + r * a.dims[s] + c;
                // f_t[r][k] * A[k][c]
                for k in 0..a.dims[t] {
                    let v = am.get(k, c);
                    if v != 0 {
                        let col = var_off[t] + r * a.dims[t] + k;
                        let cur = m.get(row, col);
                        m.set(row, col, fl.add(cur, v));
                    }
                }
                // - B[r][k] * f_s[k][c]
                for k in 0..b.dims[s] {
                    let v = bm.get(r, k);
                    if v != 0 {
                        let col = var_off[s] + k * a.dims[s] + c;
                        let cur = m.get(row, col);
                        m.set(row, col, fl.sub(cur, v));
                    }
                }
            }
        }
    }
    (m, var_off, eq_off)
}

fn vec_to_morphism(x: &[Elem], a: &Rep, b: &Rep, var_off: &[usize]) -> Morphism {
    (0..a.quiver.n)
        .map(|i| {
            let mut f = Mat::zeros(b.dims[i], a.dims[i]);
            for r in 0..b.dims[i] {
                for c in 0..a.dims[i] {
                    f.set(r, c, x[var_off[i] + r * a.dims[i] + c]);
                }
            }
            f
        })
        .collect()
}

pub fn hom_basis(a: &Rep, b: &Rep) -> Vec<Morphism> {
    let (m, var_off, _) = hom_ext_matrix(a, b);
    let k = m.nullspace(&a.field);
    (0..k.cols).map(|j| vec_to_morphism(&k.col(j), a, b, &var_off)).collect()
}

pub fn hom_dim(a: &Rep, b: &Rep) -> usize {
    let (m, _, _) = hom_ext_matrix(a, b);
    m.cols - m.rank(&a.field)
}

pub fn ext1_dim(a: &Rep, b: &Rep) -> usize {
    let (m, _, _) = hom_ext_matrix(a, b);
    m.rows - m.rank(&a.field)
}

/// Representatives of `Ext^1(n, l)` as arrow blocks `eta_a : N_s -> L_t`, one per class.
pub struct ExtSpace {
    pub dim: usize,
    basis: Vec<Vec<Mat>>,
}

impl ExtSpace {
    pub fn new(n: &Rep, l: &Rep) -> ExtSpace {
        let (m, _, eq_off) = hom_ext_matrix(n, l);
        let fl = &n.field;
        let (_, pivots) = m.transpose().rref(fl);
        let free: Vec<usize> = (0..m.rows).filter(|c| !pivots.contains(c)).collect();
        let q = &n.quiver;
        let basis = free
            .iter()
            .map(|&coord| {
                q.arrows
                    .iter()
                    .enumerate()
                    .map(|(ai, &(s, t))| {
                        let mut e = Mat::zeros(l.dims[t], n.dims[s]);
                        let lo = eq_off[ai];
                        let hi = lo + l.dims[t] * n.dims[s];
                        if coord >= lo && coord < hi {
                            let off = coord - lo;
                            e.set(off / n.dims[s], off % n.dims[s], 1);
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        ExtSpace { dim: free.len(), basis }
    }

    /// Middle term of the extension `0 -> L -> M -> N -> 0` with class `eta`.
    pub fn middle(l: &Rep, n: &Rep, eta: &[Mat]) -> Rep {
        let dims: Vec<usize> = l.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
        let maps = l
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, &(s, t))| {
                let mut m = Mat::zeros(dims[t], dims[s]);
                let lm = &l.maps[ai];
                let nm = &n.maps[ai];
                for r in 0..lm.rows {
                    for c in 0..lm.cols {
                        m.set(r, c, lm.get(r, c));
                    }
                }
                for r in 0..nm.rows {
                    for c in 0..nm.cols {
                        m.set(l.dims[t] + r, l.dims[s] + c, nm.get(r, c));
                    }
                }
                let e = &eta[ai];
                for r in 0..e.rows {
                    for c in 0..e.cols {
                        m.set(r, l.dims[s] + c, e.get(r, c));
                    }
                }
                m
            })
            .collect();
        Rep { quiver: l.quiver.clone(), field: l.field.clone(), dims, maps }
    }

    /// Calls `f` once per extension class with the arrow blocks of a representative.
    pub fn for_each(&self, fl: &Field, template: &[Mat], mut f: impl FnMut(&[Mat])) {
        for_each_combination(fl, &self.basis, template, |x| f(x));
    }
}

/// Enumerates every linear combination of `basis` (each a list of matrices
/// shaped like `template`), calling `f` on each.
pub fn for_each_combination(fl: &Field, basis: &[Vec<Mat>], template: &[Mat], mut f: impl FnMut(&[Mat])) {
    let mut cur: Vec<Mat> = template.iter().map(|m| Mat::zeros(m.rows, m.cols)).collect();
    let k = basis.len();
    let q = fl.q as usize;
    let mut digits = vec![0usize; k];
    loop {
        f(&cur);
        // increment mixed-radix counter, updating cur incrementally
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            let old = digits[i] as Elem;
            let new_d = (digits[i] + 1) % q;
            let delta = fl.sub(new_d as Elem, old);
            for (c, b) in cur.iter_mut().zip(&basis[i]) {
                c.add_scaled_in_place(fl, b, delta);
            }
            digits[i] = new_d;
            if new_d != 0 {
                break;
            }
            i += 1;
        }
    }
}

/// Writes the columns of `y` in the column basis `k` (full column rank).
pub fn coords_in_basis(fl: &Field, k: &Mat, y: &Mat) -> Result<Mat> {
    solve_linear(fl, k, y).map(|(x, _)| x)
}

/// Subrepresentation spanned at each vertex by the columns of `bases[i]`.
pub fn subrep(a: &Rep, bases: &[Mat]) -> Result<Rep> {
    let fl = &a.field;
    let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
    let mut maps = Vec::with_capacity(a.maps.len());
    for (m, &(s, t)) in a.maps.iter().zip(&a.quiver.arrows) {
        let img = m.mul_unchecked(fl, &bases[s]);
        let x = if dims[t] == 0 || dims[s] == 0 {
            if !img.is_zero() {
                return Err(Error::InvalidArgument("not a subrepresentation".into()));
            }
            Mat::zeros(dims[t], dims[s])
        } else {
            coords_in_basis(fl, &bases[t], &img).map_err(|_| Error::InvalidArgument("not a subrepresentation".into()))?
        };
        maps.push(x);
    }
    Ok(Rep { quiver: a.quiver.clone(), field: a.field.clone(), dims, maps })
}

/// Quotient of `b` by the subrepresentation with column bases `sub[i]`.
pub fn quotient(b: &Rep, sub: &[Mat]) -> Rep {
    let fl = &b.field;
    let n = b.quiver.n;
    let mut comp: Vec<Mat> = Vec::with_capacity(n);
    let mut proj: Vec<Mat> = Vec::with_capacity(n);
    for i in 0..n {
        let d = b.dims[i];
        let s = &sub[i];
        let (_, piv) = s.transpose().rref(fl);
        let free: Vec<usize> = (0..d).filter(|c| !piv.contains(c)).collect();
        let mut e = Mat::zeros(d, free.len());
        for (j, &c) in free.iter().enumerate() {
            e.set(c, j, 1);
        }
        // projection: coordinates in basis [s | e], keep the e part
        let full = s.hstack(&e);
        let p = if d == 0 {
            Mat::zeros(free.len(), 0)
        } else {
            let inv = coords_in_basis(fl, &full, &Mat::identity(d)).expect("basis of full rank");
            let mut p = Mat::zeros(free.len(), d);
            for r in 0..free.len() {
                for c in 0..d {
                    p.set(r, c, inv.get(s.cols + r, c));
                }
            }
            p
        };
        comp.push(e);
        proj.push(p);
    }
    let dims: Vec<usize> = comp.iter().map(|e| e.cols).collect();
    let maps = b
        .maps
        .iter()
        .zip(&b.quiver.arrows)
        .map(|(m, &(s, t))| proj[t].mul_unchecked(fl, &m.mul_unchecked(fl, &comp[s])))
        .collect();
    Rep { quiver: b.quiver.clone(), field: b.field.clone(), dims, maps }
}

pub fn kernel_bases(fl: &Field, f: &Morphism) -> Vec<Mat> {
    f.iter().map(|m| m.nullspace(fl)).collect()
}

pub fn image_bases(fl: &Field, f: &Morphism) -> Vec<Mat> {
    f.iter().map(|m| m.column_basis(fl)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> (Arc<Quiver>, Arc<Field>) {
        (Arc::new(Quiver::cyclic(2).unwrap()), Field::new(2).unwrap())
    }

    #[test]
    fn segment_rep_shape() {
        let (q, f) = c2();
        let r = rep_from_segments(q.clone(), f.clone(), &[(1, 2)], 10).unwrap();
        assert_eq!(r.dims, vec![1, 1]);
        // arrow 1 -> 0 is index 1
        assert_eq!(r.maps[1].get(0, 0), 1);
        assert!(r.maps[0].is_zero());
        assert!(r.is_nilpotent());
        let err = rep_from_segments(q, f, &[(0, 11)], 10).unwrap_err();
        assert!(matches!(err, Error::DimsCapExceeded { .. }));
    }

    #[test]
    fn hom_minus_ext_is_euler_form() {
        let (q, f) = c2();
        let a = rep_from_segments(q.clone(), f.clone(), &[(1, 2), (0, 1)], 10).unwrap();
        let b = rep_from_segments(q.clone(), f.clone(), &[(0, 3)], 10).unwrap();
        for (x, y) in [(&a, &b), (&b, &a), (&a, &a)] {
            let h = hom_dim(x, y) as i64;
            let e = ext1_dim(x, y) as i64;
            assert_eq!(h - e, q.euler_form(&x.dims, &y.dims));
        }
    }

    #[test]
    fn non_nilpotent_rejected() {
        let q = Arc::new(Quiver::jordan());
        let f = Field::new(2).unwrap();
        let err = Rep::new(q, f, vec![1], vec![Mat::identity(1)], 10).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }
}
