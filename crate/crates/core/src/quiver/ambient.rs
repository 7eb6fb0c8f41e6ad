use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finfield::{enumerate_subspaces, mat_rank, Elem, Field, Mat};

use super::quiver::Quiver;
use super::rep::{
    for_each_combination, hom_basis, hom_ext_matrix, kernel_bases, quotient, rep_from_segments, subrep,
    Morphism, Rep, Segment,
};

pub type ClassId = u32;

/// Default enumeration budget for brute-force searches.
pub const DEFAULT_BUDGET: u128 = 3_000_000;

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub label: String,
    pub dims: Vec<usize>,
    pub segs: Option<Vec<Segment>>,
    pub rep: Rep,
}

#[derive(Default)]
struct ClassTable {
    infos: Vec<Arc<ClassInfo>>,
    by_segs: HashMap<Vec<Segment>, ClassId>,
    by_fp: HashMap<Vec<usize>, Vec<ClassId>>,
    by_label: HashMap<String, ClassId>,
}

/// Category of (nilpotent) representations of a quiver over `F_q`, with
/// canonical iso-class labels.
pub struct Ambient {
    pub quiver: Arc<Quiver>,
    pub field: Arc<Field>,
    pub q: u32,
    pub dims_cap: usize,
    pub budget: u128,
    table: Mutex<ClassTable>,
}

impl std::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ambient({}, q={})", self.quiver.spec(), self.q)
    }
}

pub fn render_segments(segs: &[Segment]) -> String {
    if segs.is_empty() {
        return "0".into();
    }
    segs.iter().map(|(i, a)| format!("{i}:{a}")).collect::<Vec<_>>().join("+")
}

pub fn parse_segments(s: &str) -> Result<Vec<Segment>> {
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split('+') {
        let bad = || Error::Parse(format!("segment {part:?}"));
        let (i, rest) = part.trim().split_once(':').ok_or_else(bad)?;
        // `i:a^k` is shorthand for k copies
        let (a, k) = match rest.split_once('^') {
            Some((a, k)) => (a, k.trim().parse::<usize>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        for _ in 0..k {
            out.push((i, a));
        }
    }
    out.sort();
    Ok(out)
}

pub fn render_dims(d: &[usize]) -> String {
    format!("[{}]", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn render_dims_i(d: &[i64]) -> String {
    format!("[{}]", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Multisegment of a nilpotent cyclic-quiver representation from the ranks
/// `r(i, a)` of its path maps of length `a` out of vertex `i`.
pub fn segs_from_ranks(n: usize, maxlen: usize, r: &dyn Fn(usize, usize) -> usize) -> Vec<Segment> {
    // pieces at vertex i with exactly a steps remaining: N(i,a) = r(i,a-1) - r(i,a)
    let nn = |i: usize, a: usize| -> usize { r(i % n, a - 1) - r(i % n, a) };
    let mut out = Vec::new();
    for i in 0..n {
        for a in 1..=maxlen {
            let m = nn(i, a) - if a < maxlen { nn(i + 1, a + 1) } else { 0 };
            for _ in 0..m {
                out.push((i, a));
            }
        }
    }
    out.sort();
    out
}

/// Paths of a quiver without oriented cycles, as arrow-index lists (length >= 1).
fn all_paths(q: &Quiver) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
    let mut frontier = out.clone();
    for _ in 1..q.n {
        let mut next = Vec::new();
        for p in &frontier {
            let end = q.arrows[*p.last().unwrap()].1;
            for (a, &(s, _)) in q.arrows.iter().enumerate() {
                if s == end {
                    let mut np = p.clone();
                    np.push(a);
                    next.push(np);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl Ambient {
    pub fn new(quiver: Quiver, q: u32) -> Result<Arc<Ambient>> {
        let field = Field::new(q)?;
        Ok(Arc::new(Self::with_field(Arc::new(quiver), field)))
    }

    pub fn with_field(quiver: Arc<Quiver>, field: Arc<Field>) -> Ambient {
        let amb = Ambient {
            q: field.q,
            quiver: quiver.clone(),
            field: field.clone(),
            dims_cap: 64,
            budget: DEFAULT_BUDGET,
            table: Mutex::new(ClassTable::default()),
        };
        // class 0 is always the zero module
        let zero = Rep::zero(quiver, field);
        amb.register(zero, if amb.quiver.is_cyclic() { Some(vec![]) } else { None });
        amb
    }

    pub fn with_limits(mut self: Arc<Self>, dims_cap: usize, budget: u128) -> Arc<Self> {
        let s = Arc::get_mut(&mut self).expect("limits are set before sharing");
        s.dims_cap = dims_cap;
        s.budget = budget;
        self
    }

    pub fn zero_class(&self) -> ClassId {
        0
    }

    fn register(&self, rep: Rep, segs: Option<Vec<Segment>>) -> ClassId {
        let mut t = self.table.lock().unwrap();
        let id = t.infos.len() as ClassId;
        let label = match &segs {
            Some(s) => render_segments(s),
            None => {
                if rep.total_dim() == 0 {
                    "0".to_string()
                } else {
                    let same = t.infos.iter().filter(|c| c.dims == rep.dims).count();
                    format!("{}#{}", render_dims(&rep.dims), same)
                }
            }
        };
        let info = Arc::new(ClassInfo { label: label.clone(), dims: rep.dims.clone(), segs: segs.clone(), rep });
        if let Some(s) = segs {
            t.by_segs.insert(s, id);
        }
        t.by_label.insert(label, id);
        t.infos.push(info);
        id
    }

    pub fn info(&self, id: ClassId) -> Arc<ClassInfo> {
        self.table.lock().unwrap().infos[id as usize].clone()
    }

    pub fn label(&self, id: ClassId) -> String {
        self.info(id).label.clone()
    }

    pub fn dims(&self, id: ClassId) -> Vec<usize> {
        self.info(id).dims.clone()
    }

    pub fn num_classes(&self) -> usize {
        self.table.lock().unwrap().infos.len()
    }

    pub fn class_of_segments(&self, segs: &[Segment]) -> Result<ClassId> {
        let mut s = segs.to_vec();
        s.sort();
        if let Some(&id) = self.table.lock().unwrap().by_segs.get(&s) {
            return Ok(id);
        }
        let rep = rep_from_segments(self.quiver.clone(), self.field.clone(), &s, self.dims_cap)?;
        Ok(self.intern_segments(s, rep))
    }

    fn intern_segments(&self, s: Vec<Segment>, rep: Rep) -> ClassId {
        if let Some(&id) = self.table.lock().unwrap().by_segs.get(&s) {
            return id;
        }
        let canon = if rep.quiver.is_cyclic() {
            rep_from_segments(self.quiver.clone(), self.field.clone(), &s, usize::MAX).expect("segments are valid")
        } else {
            rep
        };
        self.register(canon, Some(s))
    }

    pub fn parse_class(&self, s: &str) -> Result<ClassId> {
        if self.quiver.is_cyclic() {
            return self.class_of_segments(&parse_segments(s)?);
        }
        self.table
            .lock()
            .unwrap()
            .by_label
            .get(s.trim())
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown class label {s:?}")))
    }

    pub fn simple_class(&self, i: usize) -> Result<ClassId> {
        self.classify(&Rep::simple(self.quiver.clone(), self.field.clone(), i))
    }

    /// Segments of a cyclic-quiver representation, read off path-map ranks.
    pub fn segments_of(&self, rep: &Rep) -> Vec<Segment> {
        let n = self.quiver.n;
        let total = rep.total_dim();
        let mut ranks = vec![vec![0usize; total + 2]; n];
        for (i, row) in ranks.iter_mut().enumerate() {
            let mut p = Mat::identity(rep.dims[i]);
            let mut cur = i;
            row[0] = rep.dims[i];
            for a in 1..=total {
                p = rep.maps[cur].mul_unchecked(&self.field, &p);
                cur = (cur + n - 1) % n;
                row[a] = mat_rank(&self.field, &p);
                if row[a] == 0 {
                    break;
                }
            }
        }
        segs_from_ranks(n, total.max(1), &|i, a| ranks[i][a])
    }

    fn fingerprint(&self, rep: &Rep) -> Vec<usize> {
        let mut fp = rep.dims.clone();
        for path in all_paths(&self.quiver) {
            let s = self.quiver.arrows[path[0]].0;
            let mut m = Mat::identity(rep.dims[s]);
            for &a in &path {
                m = rep.maps[a].mul_unchecked(&self.field, &m);
            }
            fp.push(mat_rank(&self.field, &m));
        }
        let (h, _, _) = hom_ext_matrix(rep, rep);
        fp.push(h.cols - h.rank(&self.field));
        fp
    }

    /// Canonical class of `rep`, registering a new class when needed.
    pub fn classify(&self, rep: &Rep) -> Result<ClassId> {
        if self.quiver.is_cyclic() {
            let s = self.segments_of(rep);
            return Ok(self.intern_segments(s, rep.clone()));
        }
        if rep.total_dim() == 0 {
            return Ok(0);
        }
        let fp = self.fingerprint(rep);
        let cands = self.table.lock().unwrap().by_fp.get(&fp).cloned().unwrap_or_default();
        for c in cands {
            let other = self.info(c).rep.clone();
            if self.iso_test(rep, &other)? {
                return Ok(c);
            }
        }
        let id = self.register(rep.clone(), None);
        self.table.lock().unwrap().by_fp.entry(fp).or_default().push(id);
        Ok(id)
    }

    pub fn rep_of(&self, id: ClassId) -> Rep {
        self.info(id).rep.clone()
    }

    pub fn direct_sum_class(&self, a: ClassId, b: ClassId) -> Result<ClassId> {
        let ia = self.info(a);
        let ib = self.info(b);
        if let (Some(sa), Some(sb)) = (&ia.segs, &ib.segs) {
            let mut s = sa.clone();
            s.extend(sb.iter().cloned());
            return self.class_of_segments(&s);
        }
        self.classify(&ia.rep.direct_sum(&ib.rep))
    }

    fn check_budget(&self, dim: usize) -> Result<()> {
        let size = (self.q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if size > self.budget {
            return Err(Error::SearchTooLarge { size, budget: self.budget });
        }
        Ok(())
    }

    /// Brute-force isomorphism test over all of `Hom(a, b)`.
    pub fn iso_test(&self, a: &Rep, b: &Rep) -> Result<bool> {
        if a.dims != b.dims {
            return Ok(false);
        }
        let basis = hom_basis(a, b);
        self.check_budget(basis.len())?;
        let template: Vec<Mat> = (0..self.quiver.n).map(|i| Mat::zeros(b.dims[i], a.dims[i])).collect();
        let mut found = false;
        let fl = &self.field;
        for_each_combination(fl, &basis, &template, |f| {
            if !found && f.iter().all(|m| mat_rank(fl, m) == m.rows) {
                found = true;
            }
        });
        Ok(found)
    }

    /// `|Aut(M)|` by enumerating `End(M)`.
    pub fn aut_order_enum(&self, m: &Rep) -> Result<u128> {
        let basis = hom_basis(m, m);
        self.check_budget(basis.len())?;
        let template: Vec<Mat> = (0..self.quiver.n).map(|i| Mat::zeros(m.dims[i], m.dims[i])).collect();
        let fl = &self.field;
        let mut count = 0u128;
        for_each_combination(fl, &basis, &template, |f| {
            if f.iter().all(|x| mat_rank(fl, x) == x.rows) {
                count += 1;
            }
        });
        Ok(count)
    }

    /// `|Aut(M)|`; closed form for segment classes, enumeration otherwise.
    pub fn aut_order(&self, id: ClassId) -> Result<u128> {
        let info = self.info(id);
        match &info.segs {
            Some(segs) => {
                let rep = &info.rep;
                let end = super::rep::hom_dim(rep, rep);
                let mut mult: BTreeMap<Segment, u32> = BTreeMap::new();
                for s in segs {
                    *mult.entry(*s).or_default() += 1;
                }
                let q = self.q as u128;
                let mut acc: u128 = 1;
                let mut sq: usize = 0;
                for &m in mult.values() {
                    acc *= gl_order(m, q);
                    sq += (m * m) as usize;
                }
                Ok(acc * q.pow((end - sq) as u32))
            }
            None => self.aut_order_enum(&info.rep),
        }
    }

    pub fn is_indecomposable(&self, m: &Rep) -> Result<bool> {
        if m.total_dim() == 0 {
            return Ok(false);
        }
        let basis = hom_basis(m, m);
        self.check_budget(basis.len())?;
        let template: Vec<Mat> = (0..self.quiver.n).map(|i| Mat::zeros(m.dims[i], m.dims[i])).collect();
        let fl = &self.field;
        let mut nontrivial = false;
        for_each_combination(fl, &basis, &template, |e| {
            if nontrivial {
                return;
            }
            let idem = e.iter().all(|x| x.mul_unchecked(fl, x) == *x);
            let zero = e.iter().all(|x| x.is_zero());
            let one = e.iter().enumerate().all(|(i, x)| *x == Mat::identity(m.dims[i]));
            if idem && !zero && !one {
                nontrivial = true;
            }
        });
        Ok(!nontrivial)
    }

    /// Representatives of the indecomposable classes with dimension vector `d`:
    /// exhaustive over all arrow matrices when within budget, seeded sampling otherwise.
    pub fn indecomposables(&self, d: &[usize], seed: u64, samples: usize) -> Result<Vec<ClassId>> {
        let entries: usize = self.quiver.arrows.iter().map(|&(s, t)| d[s] * d[t]).sum();
        let qf = self.q as u128;
        let total = qf.checked_pow(entries as u32).unwrap_or(u128::MAX);
        let mut found: Vec<ClassId> = Vec::new();
        let mut consider = |maps: Vec<Mat>| -> Result<()> {
            let Ok(rep) = Rep::new(self.quiver.clone(), self.field.clone(), d.to_vec(), maps, self.dims_cap) else {
                return Ok(());
            };
            let c = self.classify(&rep)?;
            if !found.contains(&c) && self.is_indecomposable(&rep)? {
                found.push(c);
            }
            Ok(())
        };
        let shapes: Vec<(usize, usize)> = self.quiver.arrows.iter().map(|&(s, t)| (d[t], d[s])).collect();
        let build = |digits: &[Elem]| -> Vec<Mat> {
            let mut k = 0;
            shapes
                .iter()
                .map(|&(r, c)| {
                    let m = Mat { rows: r, cols: c, data: digits[k..k + r * c].to_vec() };
                    k += r * c;
                    m
                })
                .collect()
        };
        if total <= self.budget {
            let mut digits = vec![0 as Elem; entries];
            loop {
                consider(build(&digits))?;
                let mut i = 0;
                while i < entries {
                    digits[i] += 1;
                    if (digits[i] as u32) < self.q {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == entries {
                    break;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let digits: Vec<Elem> = (0..entries).map(|_| rng.gen_range(0..self.q) as Elem).collect();
                consider(build(&digits))?;
            }
        }
        found.sort_by_key(|c| self.label(*c));
        Ok(found)
    }

    /// `#{f in Hom(a, b)}` grouped by the classes of `(ker f, coker f)`.
    pub fn hom_fiber_census(&self, a: ClassId, b: ClassId) -> Result<BTreeMap<(ClassId, ClassId), u128>> {
        let ra = self.rep_of(a);
        let rb = self.rep_of(b);
        let basis = hom_basis(&ra, &rb);
        self.check_budget(basis.len())?;
        let template: Vec<Mat> = (0..self.quiver.n).map(|i| Mat::zeros(rb.dims[i], ra.dims[i])).collect();
        let mut out: BTreeMap<(ClassId, ClassId), u128> = BTreeMap::new();
        if self.quiver.is_cyclic() {
            let ctx = CyclicCensus::new(self, &ra, &rb);
            let mut local: HashMap<(Vec<Segment>, Vec<Segment>), u128> = HashMap::new();
            for_each_combination(&self.field, &basis, &template, |f| {
                let key = ctx.ker_coker(f);
                *local.entry(key).or_default() += 1;
            });
            for ((ks, cs), n) in local {
                let k = self.class_of_segments(&ks)?;
                let c = self.class_of_segments(&cs)?;
                *out.entry((k, c)).or_default() += n;
            }
        } else {
            let mut err = None;
            let fl = &self.field;
            for_each_combination(fl, &basis, &template, |f| {
                if err.is_some() {
                    return;
                }
                let f: Morphism = f.to_vec();
                let kb = kernel_bases(fl, &f);
                let ib: Vec<Mat> = f.iter().map(|m| m.column_basis(fl)).collect();
                let res = subrep(&ra, &kb).and_then(|k| {
                    let c = quotient(&rb, &ib);
                    Ok((self.classify(&k)?, self.classify(&c)?))
                });
                match res {
                    Ok(key) => *out.entry(key).or_default() += 1,
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(out)
    }

    /// `F^L_{M,N}`: submodules `X` of `L` with `X ~ N` and `L/X ~ M`, by enumerating
    /// subspace tuples.
    pub fn f_count(&self, m: ClassId, n: ClassId, l: ClassId) -> Result<u128> {
        let dm = self.dims(m);
        let dn = self.dims(n);
        let rl = self.rep_of(l);
        if dm.iter().zip(&dn).zip(&rl.dims).any(|((a, b), c)| a + b != *c) {
            return Ok(0);
        }
        let fl = &self.field;
        let per_vertex: Vec<Vec<Mat>> =
            (0..self.quiver.n).map(|i| enumerate_subspaces(fl, rl.dims[i], dn[i]).into_iter().map(|s| s.transpose()).collect()).collect();
        let size: u128 = per_vertex.iter().map(|v| v.len() as u128).product();
        if size > self.budget {
            return Err(Error::SearchTooLarge { size, budget: self.budget });
        }
        let mut count = 0u128;
        let mut idx = vec![0usize; self.quiver.n];
        loop {
            let bases: Vec<Mat> = idx.iter().enumerate().map(|(i, &k)| per_vertex[i][k].clone()).collect();
            if let Ok(x) = subrep(&rl, &bases) {
                if self.classify(&x)? == n && self.classify(&quotient(&rl, &bases))? == m {
                    count += 1;
                }
            }
            let mut i = 0;
            while i < idx.len() {
                idx[i] += 1;
                if idx[i] < per_vertex[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
        Ok(count)
    }
}

/// `|GL_m(F_q)|`.
pub fn gl_order(m: u32, q: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..m {
        acc *= q.pow(m) - q.pow(i);
    }
    acc
}

/// Precomputed path maps for reading kernel and cokernel segments off ranks.
pub(crate) struct CyclicCensus<'a> {
    field: &'a Field,
    n: usize,
    bdims: Vec<usize>,
    pa: Vec<Vec<Mat>>,
    pb: Vec<Vec<Mat>>,
    la: usize,
    lb: usize,
}

impl<'a> CyclicCensus<'a> {
    pub(crate) fn new(amb: &'a Ambient, a: &Rep, b: &Rep) -> Self {
        let n = amb.quiver.n;
        let loewy = |r: &Rep| -> usize {
            let segs = amb.segments_of(r);
            segs.iter().map(|s| s.1).max().unwrap_or(0)
        };
        let la = loewy(a);
        let lb = loewy(b);
        let paths = |r: &Rep, l: usize| -> Vec<Vec<Mat>> {
            (0..n).map(|i| (0..=l).map(|len| r.cyclic_path(i, len)).collect()).collect()
        };
        CyclicCensus { field: &amb.field, n, bdims: b.dims.clone(), pa: paths(a, la), pb: paths(b, lb), la, lb }
    }

    pub(crate) fn ker_coker(&self, f: &[Mat]) -> (Vec<Segment>, Vec<Segment>) {
        let fl = self.field;
        let n = self.n;
        let kb: Vec<Mat> = f.iter().map(|m| m.nullspace(fl)).collect();
        let irank: Vec<usize> = f.iter().map(|m| mat_rank(fl, m)).collect();
        let la = self.la.max(1);
        let mut rk = vec![vec![0usize; la + 2]; n];
        for i in 0..n {
            rk[i][0] = kb[i].cols;
            for len in 1..=self.la {
                if rk[i][len - 1] == 0 {
                    break;
                }
                rk[i][len] = mat_rank(fl, &self.pa[i][len].mul_unchecked(fl, &kb[i]));
            }
        }
        let ker = segs_from_ranks(n, la, &|i, a| rk[i][a]);
        let lb = self.lb.max(1);
        let mut rc = vec![vec![0usize; lb + 2]; n];
        for i in 0..n {
            rc[i][0] = self.bdims[i] - irank[i];
            for len in 1..=self.lb {
                if rc[i][len - 1] == 0 {
                    break;
                }
                let tgt = ((i as i64 - len as i64).rem_euclid(n as i64)) as usize;
                let stacked = self.pb[i][len].hstack(&f[tgt]);
                rc[i][len] = mat_rank(fl, &stacked) - irank[tgt];
            }
        }
        let cok = segs_from_ranks(n, lb, &|i, a| rc[i][a]);
        (ker, cok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::rep::{kernel_bases, image_bases};

    fn c(n: usize, q: u32) -> Arc<Ambient> {
        Ambient::new(Quiver::cyclic(n).unwrap(), q).unwrap()
    }

    #[test]
    fn labels_and_parse() {
        let a = c(2, 2);
        let x = a.parse_class("1:1+0:3").unwrap();
        assert_eq!(a.label(x), "0:3+1:1");
        assert_eq!(a.parse_class("1:1^2").unwrap(), a.parse_class("1:1+1:1").unwrap());
        assert_eq!(a.label(0), "0");
        assert_eq!(a.dims(a.parse_class("0:3").unwrap()), vec![2, 1]);
    }

    #[test]
    fn segments_survive_base_change() {
        let a = c(3, 3);
        let fl = a.field.clone();
        let r = rep_from_segments(a.quiver.clone(), fl.clone(), &[(0, 4), (2, 2), (1, 1)], 10).unwrap();
        // conjugate by an invertible upper-triangular matrix at each vertex
        let maps: Vec<Mat> = r.maps.iter().zip(&a.quiver.arrows).map(|(m, &(s, t))| {
            let p = |d: usize| { let mut x = Mat::identity(d); for i in 0..d { for j in i + 1..d { x.set(i, j, 2); } } x };
            let pinv_t = crate::finfield::solve_linear(&fl, &p(r.dims[t]), &Mat::identity(r.dims[t])).unwrap().0;
            pinv_t.mul_unchecked(&fl, &m.mul_unchecked(&fl, &p(r.dims[s])))
        }).collect();
        let r2 = Rep::new(a.quiver.clone(), fl, r.dims.clone(), maps, 10).unwrap();
        assert_eq!(a.classify(&r2).unwrap(), a.classify(&r).unwrap());
        assert!(a.iso_test(&r, &r2).unwrap());
    }

    #[test]
    fn aut_formula_matches_enumeration() {
        for (n, q) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            let a = c(n, q);
            for s in ["0:1", "0:1+0:1", "0:2+0:1", "1:2+0:1+0:1", "0:3+1:1"] {
                let Ok(id) = a.parse_class(&s.replace("1:", &format!("{}:", 1 % n))) else { continue };
                let formula = a.aut_order(id).unwrap();
                let enumd = a.aut_order_enum(&a.rep_of(id)).unwrap();
                assert_eq!(formula, enumd, "C{n} q={q} {}", a.label(id));
            }
        }
        let a = c(2, 2);
        assert_eq!(a.aut_order(a.parse_class("1:1+1:1").unwrap()).unwrap(), 6);
        let a3 = c(2, 3);
        assert_eq!(a3.aut_order(a3.parse_class("1:2").unwrap()).unwrap(), 2);
    }

    #[test]
    fn census_fast_path_matches_generic() {
        let a = c(2, 2);
        let pairs = [("0:2", "0:1"), ("1:1", "1:1"), ("0:3", "1:2+0:1"), ("0:2+1:1", "1:2+0:1"), ("1:3", "0:2+1:1")];
        for (x, y) in pairs {
            let ia = a.parse_class(x).unwrap();
            let ib = a.parse_class(y).unwrap();
            let fast = a.hom_fiber_census(ia, ib).unwrap();
            let ra = a.rep_of(ia);
            let rb = a.rep_of(ib);
            let basis = hom_basis(&ra, &rb);
            let template: Vec<Mat> = (0..2).map(|i| Mat::zeros(rb.dims[i], ra.dims[i])).collect();
            let mut slow: BTreeMap<(ClassId, ClassId), u128> = BTreeMap::new();
            for_each_combination(&a.field, &basis, &template, |f| {
                let f = f.to_vec();
                let k = subrep(&ra, &kernel_bases(&a.field, &f)).unwrap();
                let cq = quotient(&rb, &image_bases(&a.field, &f));
                *slow.entry((a.classify(&k).unwrap(), a.classify(&cq).unwrap())).or_default() += 1;
            });
            assert_eq!(fast, slow, "{x} -> {y}");
            let total: u128 = fast.values().sum();
            assert_eq!(total, 2u128.pow(basis.len() as u32));
        }
    }

    #[test]
    fn census_examples() {
        let a = c(2, 3);
        let s1 = a.parse_class("1:1").unwrap();
        let m = a.hom_fiber_census(s1, s1).unwrap();
        assert_eq!(m.get(&(s1, s1)), Some(&1));
        assert_eq!(m.get(&(0, 0)), Some(&2));
        let a = c(2, 2);
        let x = a.parse_class("0:2").unwrap();
        let s0 = a.parse_class("0:1").unwrap();
        let s1 = a.parse_class("1:1").unwrap();
        let m = a.hom_fiber_census(x, s0).unwrap();
        assert_eq!(m.get(&(x, s0)), Some(&1));
        assert_eq!(m.get(&(s1, 0)), Some(&1));
    }

    #[test]
    fn f_counts() {
        let a = c(2, 2);
        let s0 = a.parse_class("0:1").unwrap();
        let s1 = a.parse_class("1:1").unwrap();
        let sum = a.parse_class("0:1+1:1").unwrap();
        let l = a.parse_class("1:2").unwrap();
        assert_eq!(a.f_count(s1, s0, sum).unwrap(), 1);
        assert_eq!(a.f_count(s1, s0, l).unwrap(), 1);
        assert_eq!(a.f_count(s0, s1, l).unwrap(), 0);
        assert_eq!(a.f_count(s1, s1, l).unwrap(), 0);
    }

    #[test]
    fn indecomposables_small() {
        let a = c(2, 2);
        let ind = a.indecomposables(&[1, 1], 0, 0).unwrap();
        let labels: Vec<String> = ind.iter().map(|&c| a.label(c)).collect();
        assert_eq!(labels, vec!["0:2", "1:2"]);
        let k = Ambient::new(Quiver::q_of_j(2, 1).unwrap(), 2).unwrap();
        assert_eq!(k.indecomposables(&[1, 2], 0, 0).unwrap().len(), 1);
        assert_eq!(k.indecomposables(&[1, 1], 0, 0).unwrap().len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let a = c(2, 2).with_limits(64, 4);
        let x = a.parse_class("0:1+0:1+0:1").unwrap();
        assert!(matches!(a.aut_order_enum(&a.rep_of(x)), Err(Error::SearchTooLarge { .. })));
    }
}
