use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::braid::{omega_operator, Braid, OmegaOrder, Subst};
use super::eval::Evaluator;
use crate::coeff::QSqrt;
use crate::error::{Error, Result};
use crate::ihall::IHallElem;

/// Powers of one braid automorphism `Phi`, evaluated: level `m` holds
/// `Omega(Phi^m(B_i))` for every vertex and the matrix of `Phi^m` on `K`.
struct Chain {
    step: Subst<QSqrt>,
    levels: Vec<(Vec<IHallElem>, Vec<Vec<i32>>)>,
}

/// Images `Omega(B_{j,l})` of the root vectors `(-1)^{jl} T_{omega_j}^{-l}(B_j)`.
///
/// Uses `Omega(Phi^m(B_i)) = Phi(B_i)` evaluated at `B_k -> Omega(Phi^{m-1}(B_k))`,
/// so only the one-step images are ever expanded symbolically.
pub struct RootVectors {
    pub ev: Arc<Evaluator>,
    pub order: OmegaOrder,
    braid: Braid,
    chains: Mutex<HashMap<(usize, bool), Chain>>,
}

fn apply_kmap(map: &[Vec<i32>], k: &[i32]) -> Vec<i32> {
    let mut out = vec![0; k.len()];
    for (i, &e) in k.iter().enumerate() {
        if e != 0 {
            for (o, &m) in out.iter_mut().zip(&map[i]) {
                *o += e * m;
            }
        }
    }
    out
}

impl RootVectors {
    pub fn new(ev: Arc<Evaluator>, order: OmegaOrder) -> Result<RootVectors> {
        let braid = Braid::new(ev.ih.amb().quiver.cartan());
        Ok(RootVectors { ev, order, braid, chains: Mutex::default() })
    }

    pub fn braid(&self) -> &Braid {
        &self.braid
    }

    fn level(&self, j: usize, up: bool, m: usize) -> Result<Vec<IHallElem>> {
        let n = self.ev.n();
        let mut chains = self.chains.lock().expect("chain lock");
        if !chains.contains_key(&(j, up)) {
            let w = omega_operator(j, n, self.order)?;
            let w = if up { w.inverse() } else { w };
            let step = self.braid.word_subst::<QSqrt>(&w, &self.ev.q())?;
            let gens = (0..n).map(|i| self.ev.b(i)).collect();
            let ident = (0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    e
                })
                .collect();
            chains.insert((j, up), Chain { step, levels: vec![(gens, ident)] });
        }
        let chain = chains.get_mut(&(j, up)).expect("inserted");
        while chain.levels.len() <= m {
            let (prev, pmap) = chain.levels.last().expect("level 0");
            let mut next = Vec::with_capacity(n);
            for img in &chain.step.images {
                next.push(self.ev.eval_with(img, prev, pmap)?);
            }
            let nmap = chain.step.kmap.iter().map(|k| apply_kmap(pmap, k)).collect();
            chain.levels.push((next, nmap));
        }
        Ok(chain.levels[m].0.clone())
    }

    /// `Omega(B_{j,l})`.
    pub fn b(&self, j: usize, l: i64) -> Result<IHallElem> {
        let n = self.ev.n();
        if j == 0 || j >= n {
            return Err(Error::InvalidArgument(format!("root vectors B_{{j,l}} need 1 <= j < n, got j={j}")));
        }
        let x = self.level(j, l > 0, l.unsigned_abs() as usize)?[j].clone();
        Ok(if (j as i64 * l).rem_euclid(2) == 1 { x.neg() } else { x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iqg::braid::root_vector_word;
    use crate::iqg::eval::KNorm;
    use crate::ihall::IHall;
    use crate::quiver::{Ambient, Quiver};

    #[test]
    fn chain_matches_direct_word_evaluation() {
        for (n, q, lmax) in [(2, 2, 2), (3, 2, 1), (4, 2, 1)] {
            let amb = Ambient::new(Quiver::cyclic(n).unwrap(), q).unwrap();
            let ev = Arc::new(Evaluator::new(IHall::from_ambient(amb), KNorm::Signed).unwrap());
            let rv = RootVectors::new(ev.clone(), OmegaOrder::SigmaOuter).unwrap();
            for j in 1..n {
                for l in -lmax..=lmax {
                    let w = root_vector_word::<QSqrt>(rv.braid(), j, l, OmegaOrder::SigmaOuter, &q).unwrap();
                    assert_eq!(rv.b(j, l).unwrap(), ev.eval(&w).unwrap(), "n={n} j={j} l={l}");
                }
            }
        }
    }
}
