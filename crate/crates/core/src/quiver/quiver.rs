use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StarOrient {
    /// All arrows point towards the centre.
    In,
    /// All arrows point away from the centre.
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuiverKind {
    /// Cyclic quiver on `n` vertices with arrows `i -> i-1 mod n`.
    Cyclic(usize),
    /// Star `T_{p_1,...,p_t}`: centre 0 and branches of `p_i - 1` vertices.
    Star { weights: Vec<usize>, orient: StarOrient },
    /// Any quiver given by an arrow list.
    Arrows,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub kind: QuiverKind,
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

impl Quiver {
    pub fn cyclic(n: usize) -> Result<Quiver> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic quiver needs n >= 1".into()));
        }
        let arrows = (0..n).map(|i| (i, (i + n - 1) % n)).collect();
        Ok(Quiver { kind: QuiverKind::Cyclic(n), n, arrows })
    }

    pub fn jordan() -> Quiver {
        Quiver::cyclic(1).expect("n = 1")
    }

    pub fn star(weights: &[usize], orient: StarOrient) -> Result<Quiver> {
        if weights.iter().any(|&p| p < 1) {
            return Err(Error::InvalidArgument("star weights must be >= 1".into()));
        }
        let mut arrows = Vec::new();
        let mut next = 1;
        for &p in weights {
            let mut prev = 0;
            for _ in 1..p {
                let v = next;
                next += 1;
                // branch vertex v sits one step further from the centre than prev
                arrows.push(match orient {
                    StarOrient::In => (v, prev),
                    StarOrient::Out => (prev, v),
                });
                prev = v;
            }
        }
        Ok(Quiver { kind: QuiverKind::Star { weights: weights.to_vec(), orient }, n: next, arrows })
    }

    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Quiver> {
        if arrows.iter().any(|&(s, t)| s >= n || t >= n) {
            return Err(Error::InvalidArgument("arrow endpoint out of range".into()));
        }
        Ok(Quiver { kind: QuiverKind::Arrows, n, arrows: arrows.to_vec() })
    }

    /// The acyclic quiver `Q(j)` of the cyclic graph on `n` vertices: `0` is the
    /// unique source, `j` the unique sink, arrows `0 -> 1 -> ... -> j` and
    /// `0 -> n-1 -> ... -> j`.
    pub fn q_of_j(n: usize, j: usize) -> Result<Quiver> {
        if n < 2 || j == 0 || j >= n {
            return Err(Error::InvalidArgument(format!("Q(j) needs 1 <= j < n, got n={n} j={j}")));
        }
        let mut arrows = vec![(0, 1)];
        for i in 1..j {
            arrows.push((i, i + 1));
        }
        arrows.push((0, n - 1));
        let mut i = n - 1;
        while i > j {
            arrows.push((i, i - 1));
            i -= 1;
        }
        Quiver::from_arrows(n, &arrows)
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.kind, QuiverKind::Cyclic(_))
    }

    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm
        let mut indeg = vec![0usize; self.n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen < self.n
    }

    /// Symmetric generalised Cartan matrix of the underlying graph.
    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let mut c = vec![vec![0i32; self.n]; self.n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(s, t) in &self.arrows {
            c[s][t] -= 1;
            c[t][s] -= 1;
        }
        c
    }

    /// `sum_i d_i e_i - sum_{s -> t} d_s e_t`.
    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> i64 {
        let mut s: i64 = d.iter().zip(e).map(|(&a, &b)| (a * b) as i64).sum();
        for &(src, tgt) in &self.arrows {
            s -= (d[src] * e[tgt]) as i64;
        }
        s
    }

    pub fn euler_form_i(&self, d: &[i64], e: &[i64]) -> i64 {
        let mut s: i64 = d.iter().zip(e).map(|(&a, &b)| a * b).sum();
        for &(src, tgt) in &self.arrows {
            s -= d[src] * e[tgt];
        }
        s
    }

    /// Textual spec accepted by [`Quiver::parse`].
    pub fn spec(&self) -> String {
        match &self.kind {
            QuiverKind::Cyclic(n) => format!("cn:{n}"),
            QuiverKind::Star { weights, orient } => {
                let w: Vec<String> = weights.iter().map(|p| p.to_string()).collect();
                let o = match orient {
                    StarOrient::In => "in",
                    StarOrient::Out => "out",
                };
                format!("star:{}:{o}", w.join(","))
            }
            QuiverKind::Arrows => {
                let a: Vec<String> = self.arrows.iter().map(|(s, t)| format!("{s}>{t}")).collect();
                format!("arrows:{}:{}", self.n, a.join(","))
            }
        }
    }

    /// Parses `cn:<n>`, `star:<p1,..>:<in|out>`, `qj:<n>:<j>` or `arrows:<n>:<s>t,...`.
    pub fn parse(s: &str) -> Result<Quiver> {
        let bad = || Error::Parse(format!("quiver spec {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["cn", n] => Quiver::cyclic(n.parse().map_err(|_| bad())?),
            ["star", w, o] => {
                let weights = w.split(',').map(|x| x.trim().parse::<usize>()).collect::<std::result::Result<Vec<_>, _>>().map_err(|_| bad())?;
                let orient = match *o {
                    "in" => StarOrient::In,
                    "out" => StarOrient::Out,
                    _ => return Err(bad()),
                };
                Quiver::star(&weights, orient)
            }
            ["qj", n, j] => Quiver::q_of_j(n.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?),
            ["arrows", n, list] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                let mut arrows = Vec::new();
                for a in list.split(',').filter(|x| !x.is_empty()) {
                    let (x, y) = a.split_once('>').ok_or_else(bad)?;
                    arrows.push((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?));
                }
                Quiver::from_arrows(n, &arrows)
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_arrows() {
        let q = Quiver::cyclic(2).unwrap();
        assert_eq!(q.arrows, vec![(0, 1), (1, 0)]);
        assert_eq!(q.cartan()[0][1], -2);
        assert!(q.has_oriented_cycle());
        assert_eq!(Quiver::jordan().arrows, vec![(0, 0)]);
    }

    #[test]
    fn q_of_j_shapes() {
        let k = Quiver::q_of_j(2, 1).unwrap();
        assert_eq!(k.arrows, vec![(0, 1), (0, 1)]);
        let q3 = Quiver::q_of_j(3, 1).unwrap();
        assert_eq!(q3.arrows, vec![(0, 1), (0, 2), (2, 1)]);
        assert!(!q3.has_oriented_cycle());
    }

    #[test]
    fn euler_form_cyclic() {
        let q = Quiver::cyclic(3).unwrap();
        // <S_1, S_0> = -1 since there is an arrow 1 -> 0
        assert_eq!(q.euler_form(&[0, 1, 0], &[1, 0, 0]), -1);
        assert_eq!(q.euler_form(&[1, 0, 0], &[0, 1, 0]), 0);
        assert_eq!(q.euler_form(&[1, 1, 1], &[1, 1, 1]), 0);
    }

    #[test]
    fn star_and_specs() {
        let t = Quiver::star(&[2, 2, 2], StarOrient::In).unwrap();
        assert_eq!(t.n, 4);
        assert_eq!(t.arrows.len(), 3);
        let e6 = Quiver::star(&[2, 3, 3], StarOrient::Out).unwrap();
        assert_eq!(e6.n, 6);
        for q in [t, e6, Quiver::cyclic(4).unwrap(), Quiver::q_of_j(3, 1).unwrap()] {
            assert_eq!(Quiver::parse(&q.spec()).unwrap().arrows, q.arrows);
        }
    }
}
