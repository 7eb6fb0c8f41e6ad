use std::fmt;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, o: &Mat) -> Result<Mat> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(self.mul_unchecked(f, o))
    }

    pub(crate) fn mul_unchecked(&self, f: &Field, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                let dst = &mut out.data[i * o.cols..(i + 1) * o.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Field, o: &Mat) -> Result<Mat> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch("matrix add".into()));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    pub(crate) fn add_scaled_in_place(&mut self, f: &Field, o: &Mat, c: Elem) {
        if c == 0 {
            return;
        }
        for (d, &b) in self.data.iter_mut().zip(&o.data) {
            if b != 0 {
                *d = f.add(*d, f.mul(c, b));
            }
        }
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut m = Mat::zeros(self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            m.data[r * m.cols..r * m.cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * m.cols + self.cols..(r + 1) * m.cols].copy_from_slice(o.row(r));
        }
        m
    }

    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        let cols = self.cols;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv_nz(self.data[r * cols + c]);
            if inv != 1 {
                for j in c..cols {
                    let x = self.data[r * cols + j];
                    self.data[r * cols + j] = f.mul(x, inv);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let b = self.data[r * cols + j];
                    if b != 0 {
                        let x = self.data[i * cols + j];
                        self.data[i * cols + j] = f.add(x, f.mul(nf, b));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self, f: &Field) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place(f);
        (m, p)
    }

    /// Rank by forward elimination only.
    pub fn rank(&self, f: &Field) -> usize {
        mat_rank(f, self)
    }

    /// Basis of `{x : self * x = 0}` as the columns of a `cols x k` matrix.
    pub fn nullspace(&self, f: &Field) -> Mat {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Basis of the column space as columns, taken from the original columns at pivots.
    pub fn column_basis(&self, f: &Field) -> Mat {
        let (_, pivots) = self.rref(f);
        let mut b = Mat::zeros(self.rows, pivots.len());
        for (j, &c) in pivots.iter().enumerate() {
            for r in 0..self.rows {
                b.set(r, j, self.get(r, c));
            }
        }
        b
    }
}

pub fn mat_rank(f: &Field, m: &Mat) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a = m.data.clone();
    let cols = m.cols;
    let rows = m.rows;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv_nz(a[r * cols + c]);
        for i in r + 1..rows {
            let factor = a[i * cols + c];
            if factor == 0 {
                continue;
            }
            let nf = f.neg(f.mul(factor, inv));
            for j in c..cols {
                let b = a[r * cols + j];
                if b != 0 {
                    a[i * cols + j] = f.add(a[i * cols + j], f.mul(nf, b));
                }
            }
        }
        r += 1;
    }
    r
}

/// A particular solution of `a x = b` together with a kernel basis of `a`.
pub fn solve_linear(f: &Field, a: &Mat, b: &Mat) -> Result<(Mat, Mat)> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch("solve_linear rhs".into()));
    }
    let aug = a.hstack(b);
    let (r, pivots) = aug.rref(f);
    if pivots.iter().any(|&c| c >= a.cols) {
        return Err(Error::NoSolution);
    }
    let mut x = Mat::zeros(a.cols, b.cols);
    for (i, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.get(i, a.cols + j));
        }
    }
    Ok((x, a.nullspace(f)))
}

/// All `k`-dimensional subspaces of `F_q^n`, each as a `k x n` matrix in RREF.
pub fn enumerate_subspaces(f: &Field, n: usize, k: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose(n, k, 0, &mut pivots, &mut |piv| {
        // free positions: row i, column c > piv[i], c not a pivot
        let mut free = Vec::new();
        for (i, &p) in piv.iter().enumerate() {
            for c in p + 1..n {
                if !piv.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let q = f.q as usize;
        let total = q.pow(free.len() as u32);
        for idx in 0..total {
            let mut m = Mat::zeros(k, n);
            for (i, &p) in piv.iter().enumerate() {
                m.set(i, p, 1);
            }
            let mut t = idx;
            for &(i, c) in &free {
                m.set(i, c, (t % q) as Elem);
                t /= q;
            }
            out.push(m);
        }
    });
    out
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        choose(n, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Gaussian binomial coefficient evaluated at an integer `q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_nullspace_solve() {
        let f = Field::new(3).unwrap();
        let a = Mat::from_rows(&[vec![1, 2, 0], vec![2, 1, 0]]);
        assert_eq!(a.rank(&f), 1);
        let k = a.nullspace(&f);
        assert_eq!(k.cols, 2);
        assert!(a.mul(&f, &k).unwrap().is_zero());
        let b = Mat::from_rows(&[vec![1], vec![2]]);
        let (x, _) = solve_linear(&f, &a, &b).unwrap();
        assert_eq!(a.mul(&f, &x).unwrap(), b);
        let bad = Mat::from_rows(&[vec![1], vec![1]]);
        assert_eq!(solve_linear(&f, &a, &bad).unwrap_err(), Error::NoSolution);
    }

    #[test]
    fn subspace_counts() {
        let f2 = Field::new(2).unwrap();
        assert_eq!(enumerate_subspaces(&f2, 2, 1).len(), 3);
        assert_eq!(enumerate_subspaces(&f2, 3, 2).len(), 7);
        for (q, n, k) in [(3, 3, 1), (4, 3, 2), (2, 4, 2), (5, 2, 1)] {
            let f = Field::new(q).unwrap();
            assert_eq!(enumerate_subspaces(&f, n, k).len() as u128, gaussian_binomial(n as u32, k as u32, q as u64));
        }
    }
}
