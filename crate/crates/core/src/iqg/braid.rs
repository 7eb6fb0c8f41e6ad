use std::fmt;

use super::expr::{Coeff, NcExpr};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidLetter {
    /// `T_i`, or `T_i^{-1}` when `inv`.
    T { i: usize, inv: bool },
    /// `sigma^k`: vertex `i -> i + k`.
    Sigma(i64),
}

/// Product of letters, leftmost letter outermost: the operator of
/// `[a, b, c]` is `a o b o c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub n: usize,
    pub letters: Vec<BraidLetter>,
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                BraidLetter::T { i, inv: false } => format!("s{i}"),
                BraidLetter::T { i, inv: true } => format!("s{i}^-1"),
                BraidLetter::Sigma(k) => format!("sigma^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl BraidWord {
    pub fn inverse(&self) -> BraidWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match *l {
                BraidLetter::T { i, inv } => BraidLetter::T { i, inv: !inv },
                BraidLetter::Sigma(k) => BraidLetter::Sigma(-k),
            })
            .collect();
        BraidWord { n: self.n, letters }
    }

    /// Number of `T` letters.
    pub fn t_len(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, BraidLetter::T { .. })).count()
    }
}

/// `omega_j = sigma^j (s_{n-j} ... s_1)(s_{n-j+1} ... s_2) ... (s_{n-1} ... s_j)`.
pub fn omega_word(j: usize, n: usize) -> Result<BraidWord> {
    if n < 2 || j == 0 || j >= n {
        return Err(Error::InvalidArgument(format!("omega_j needs 1 <= j < n, got j={j} n={n}")));
    }
    let mut letters = vec![BraidLetter::Sigma(j as i64)];
    for b in 1..=j {
        let top = n - j + b - 1;
        for i in (b..=top).rev() {
            letters.push(BraidLetter::T { i, inv: false });
        }
    }
    Ok(BraidWord { n, letters })
}

/// An algebra endomorphism given by the images of the `B_i`, a linear map
/// on `K` exponents and `C -> C`.
#[derive(Clone, Debug)]
pub struct Subst<F: Coeff> {
    pub images: Vec<NcExpr<F>>,
    /// `kmap[i]` is the exponent vector of the image of `K_i`.
    pub kmap: Vec<Vec<i32>>,
}

impl<F: Coeff> Subst<F> {
    pub fn identity(n: usize, ctx: &F::Ctx) -> Self {
        let kmap = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        Subst { images: (0..n).map(|i| NcExpr::b(n, i, ctx)).collect(), kmap }
    }

    fn map_k(&self, k: &[i32]) -> Vec<i32> {
        let n = k.len();
        let mut out = vec![0; n];
        for (i, &e) in k.iter().enumerate() {
            if e != 0 {
                for (o, &m) in out.iter_mut().zip(&self.kmap[i]) {
                    *o += e * m;
                }
            }
        }
        out
    }

    /// Image of `x`. Words are visited in sorted order so shared prefixes of
    /// the `B` part are multiplied out once.
    pub fn apply(&self, x: &NcExpr<F>) -> NcExpr<F> {
        let n = x.n;
        let mut out = NcExpr::zero(n, &x.ctx);
        let mut stack: Vec<NcExpr<F>> = vec![NcExpr::one(n, &x.ctx)];
        let mut prev: &[u8] = &[];
        for (w, c) in &x.terms {
            let common = prev.iter().zip(&w.b).take_while(|(a, b)| a == b).count();
            stack.truncate(common + 1);
            for &letter in &w.b[common..] {
                let next = stack.last().expect("nonempty").mul(&self.images[letter as usize]);
                stack.push(next);
            }
            prev = &w.b;
            let prod = stack.last().expect("nonempty");
            let k = self.map_k(&w.k);
            for (pw, pc) in &prod.terms {
                let mut nw = pw.clone();
                for (a, b) in nw.k.iter_mut().zip(&k) {
                    *a += b;
                }
                nw.c += w.c;
                out.add_term(nw, pc.mul(c));
            }
        }
        out
    }

    /// `self o other`.
    pub fn compose(&self, other: &Subst<F>) -> Subst<F> {
        let images = other.images.iter().map(|e| self.apply(e)).collect();
        let kmap = other.kmap.iter().map(|k| self.map_k(k)).collect();
        Subst { images, kmap }
    }
}

/// Braid operators for a symmetric generalised Cartan matrix.
#[derive(Clone, Debug)]
pub struct Braid {
    pub cartan: Vec<Vec<i32>>,
}

impl Braid {
    pub fn new(cartan: Vec<Vec<i32>>) -> Braid {
        Braid { cartan }
    }

    pub fn n(&self) -> usize {
        self.cartan.len()
    }

    /// `T_i` or `T_i^{-1}` as a substitution.
    pub fn letter<F: Coeff>(&self, i: usize, inv: bool, ctx: &F::Ctx) -> Result<Subst<F>> {
        let n = self.n();
        if i >= n {
            return Err(Error::InvalidArgument(format!("vertex {i} out of range")));
        }
        let b = |j: usize| NcExpr::<F>::b(n, j, ctx);
        let v = |k: i64| F::v_pow(k, ctx);
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let img = if j == i {
                // T_i(B_i) = T_i^{-1}(B_i) = K_i^{-1} B_i
                b(i).mul(&NcExpr::k(n, i, -1, ctx))
            } else {
                match self.cartan[i][j] {
                    0 => b(j),
                    -1 => {
                        let (x, y) = if inv { (b(i), b(j)) } else { (b(j), b(i)) };
                        x.mul(&y).sub(&y.mul(&x).scale(&v(1)))
                    }
                    -2 => {
                        let bi2 = b(i).mul(&b(i));
                        let two = F::bracket(2, 1, ctx);
                        let body = b(j)
                            .mul(&bi2)
                            .sub(&b(i).mul(&b(j)).mul(&b(i)).scale(&v(1).mul(&two)))
                            .add(&bi2.mul(&b(j)).scale(&v(2)))
                            .scale(&two.inv()?);
                        let s = body.add(&b(j).mul(&NcExpr::k(n, i, 1, ctx)));
                        if inv {
                            s.reversed()
                        } else {
                            s
                        }
                    }
                    c => return Err(Error::UnsupportedCartanEntry(c)),
                }
            };
            images.push(img);
        }
        // K_mu -> K_{s_i mu}
        let kmap = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                e[i] -= self.cartan[i][j];
                e
            })
            .collect();
        Ok(Subst { images, kmap })
    }

    pub fn sigma<F: Coeff>(&self, k: i64, ctx: &F::Ctx) -> Subst<F> {
        let n = self.n();
        let sh = |i: usize| (i as i64 + k).rem_euclid(n as i64) as usize;
        let images = (0..n).map(|i| NcExpr::b(n, sh(i), ctx)).collect();
        let kmap = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[sh(i)] = 1;
                e
            })
            .collect();
        Subst { images, kmap }
    }

    /// The substitution of a braid word (leftmost letter outermost).
    pub fn word_subst<F: Coeff>(&self, w: &BraidWord, ctx: &F::Ctx) -> Result<Subst<F>> {
        let mut acc = Subst::identity(self.n(), ctx);
        for l in w.letters.iter().rev() {
            let s = match *l {
                BraidLetter::T { i, inv } => self.letter(i, inv, ctx)?,
                BraidLetter::Sigma(k) => self.sigma(k, ctx),
            };
            acc = s.compose(&acc);
        }
        Ok(acc)
    }

    pub fn apply<F: Coeff>(&self, w: &BraidWord, x: &NcExpr<F>) -> Result<NcExpr<F>> {
        let mut cur = x.clone();
        for l in w.letters.iter().rev() {
            let s = match *l {
                BraidLetter::T { i, inv } => self.letter(i, inv, &x.ctx)?,
                BraidLetter::Sigma(k) => self.sigma(k, &x.ctx),
            };
            cur = s.apply(&cur);
        }
        Ok(cur)
    }
}

/// Order in which `T_{omega}` applies its `sigma^j` prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum OmegaOrder {
    /// `T_omega = sigma^j o T_{a_1} o ... o T_{a_r}`.
    SigmaOuter,
    /// `T_omega = T_{a_1} o ... o T_{a_r} o sigma^j`.
    SigmaInner,
}

pub fn omega_operator(j: usize, n: usize, order: OmegaOrder) -> Result<BraidWord> {
    let mut w = omega_word(j, n)?;
    if order == OmegaOrder::SigmaInner {
        let s = w.letters.remove(0);
        w.letters.push(s);
    }
    Ok(w)
}

/// `(-1)^{jl} T_{omega_j}^{-l}(B_j)` for every `l` in `lo..=hi`, sharing work
/// between consecutive powers.
pub fn root_vector_words<F: Coeff>(
    braid: &Braid,
    j: usize,
    lo: i64,
    hi: i64,
    order: OmegaOrder,
    ctx: &F::Ctx,
) -> Result<Vec<(i64, NcExpr<F>)>> {
    let n = braid.n();
    let w = omega_operator(j, n, order)?;
    let fwd = braid.word_subst::<F>(&w, ctx)?;
    let bwd = braid.word_subst::<F>(&w.inverse(), ctx)?;
    let bj = NcExpr::<F>::b(n, j, ctx);
    let mut out = Vec::new();
    let sign = |l: i64, e: NcExpr<F>| if (j as i64 * l).rem_euclid(2) == 1 { e.neg() } else { e };
    let mut cur = bj.clone();
    for l in 0..=hi.max(0) {
        if l > 0 {
            cur = bwd.apply(&cur);
        }
        if l >= lo && l <= hi {
            out.push((l, sign(l, cur.clone())));
        }
    }
    let mut cur = bj;
    for l in 1..=(-lo).max(0) {
        cur = fwd.apply(&cur);
        if -l <= hi {
            out.push((-l, sign(-l, cur.clone())));
        }
    }
    out.sort_by_key(|(l, _)| *l);
    Ok(out)
}

pub fn root_vector_word<F: Coeff>(
    braid: &Braid,
    j: usize,
    l: i64,
    order: OmegaOrder,
    ctx: &F::Ctx,
) -> Result<NcExpr<F>> {
    Ok(root_vector_words(braid, j, l, l, order, ctx)?.pop().expect("one power").1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentV;
    use crate::quiver::Quiver;

    type E = NcExpr<LaurentV>;

    fn braid(n: usize) -> Braid {
        Braid::new(Quiver::cyclic(n).unwrap().cartan())
    }

    #[test]
    fn omega_words() {
        assert_eq!(omega_word(1, 2).unwrap().to_string(), "sigma^1 s1");
        assert_eq!(omega_word(1, 3).unwrap().to_string(), "sigma^1 s2 s1");
        assert_eq!(omega_word(2, 3).unwrap().to_string(), "sigma^2 s1 s2");
        assert_eq!(omega_word(2, 4).unwrap().to_string(), "sigma^2 s2 s1 s3 s2");
        for n in 2..7 {
            for j in 1..n {
                assert_eq!(omega_word(j, n).unwrap().t_len(), j * (n - j));
            }
        }
    }

    #[test]
    fn letter_formulas() {
        let br = braid(3);
        let t1 = br.letter::<LaurentV>(1, false, &()).unwrap();
        assert_eq!(t1.apply(&E::b(3, 1, &())), E::b(3, 1, &()).mul(&E::k(3, 1, -1, &())));
        let b0b1 = E::b(3, 0, &()).mul(&E::b(3, 1, &()));
        let b1b0 = E::b(3, 1, &()).mul(&E::b(3, 0, &()));
        assert_eq!(t1.apply(&E::b(3, 0, &())), b0b1.sub(&b1b0.scale(&LaurentV::v_pow(1))));
        // K_0 -> K_{s_1 alpha_0} = K_0 K_1
        assert_eq!(t1.apply(&E::k(3, 0, 1, &())), E::torus(3, &[1, 1, 0], 0, &()));
        assert_eq!(t1.apply(&E::c_pow(3, 1, &())), E::c_pow(3, 1, &()));
    }

    #[test]
    fn double_edge_inverse_is_reversal() {
        let br = braid(2);
        let f = br.letter::<LaurentV>(1, false, &()).unwrap();
        let g = br.letter::<LaurentV>(1, true, &()).unwrap();
        assert_eq!(g.apply(&E::b(2, 0, &())), f.apply(&E::b(2, 0, &())).reversed());
    }

    #[test]
    fn subst_matches_letterwise_application() {
        let br = braid(3);
        let w = omega_word(1, 3).unwrap();
        let s = br.word_subst::<LaurentV>(&w, &()).unwrap();
        let x = E::b(3, 1, &()).mul(&E::b(3, 2, &())).mul(&E::k(3, 0, 1, &()));
        assert_eq!(s.apply(&x), br.apply(&w, &x).unwrap());
    }
}
