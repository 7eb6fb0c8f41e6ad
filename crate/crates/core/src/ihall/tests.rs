use super::*;
use crate::coeff::rat_int;
use crate::quiver::Quiver;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ih(n: usize, q: u32) -> Arc<IHall> {
    IHall::with_cross_check(HallAlgebra::new(Ambient::new(Quiver::cyclic(n).unwrap(), q).unwrap()))
}

fn class(h: &Arc<IHall>, s: &str) -> ClassId {
    h.amb().parse_class(s).unwrap()
}

#[test]
fn s1_squared_in_c2() {
    for q in [2u32, 3] {
        let h = ih(2, q);
        let s1 = h.basis(class(&h, "1:1"));
        let p = h.product(&s1, &s1).unwrap();
        let vinv = v_power(-1, q);
        let mut want = IHallElem::zero(h.clone());
        want.add_term(class(&h, "1:1+1:1"), vec![0, 0], vinv.clone());
        want.add_term(0, vec![0, 1], vinv.scale(&rat_int(q as i64 - 1)));
        assert_eq!(p, want);
        assert_eq!(h.product_alt(&s1, &s1).unwrap(), want);
    }
}

#[test]
fn unit_and_torus() {
    let h = ih(3, 2);
    let x = h.basis(class(&h, "0:2+2:1"));
    assert_eq!(h.product(&h.unit(), &x).unwrap(), x);
    assert_eq!(h.product(&x, &h.unit()).unwrap(), x);
    let k = h.torus(&[1, -1, 0]);
    assert!(h.commutator_v(&k, &x, 0).unwrap().is_zero());
    let k2 = h.torus(&[0, 1, 2]);
    assert_eq!(h.product(&k, &k2).unwrap(), h.torus(&[1, 0, 2]));
    assert!(h.commutator_v(&x, &x, 0).unwrap().is_zero());
}

fn random_class(h: &Arc<IHall>, rng: &mut ChaCha8Rng, maxdim: usize) -> ClassId {
    let n = h.n();
    let mut segs = Vec::new();
    let mut total = 0;
    let target = rng.gen_range(1..=maxdim);
    while total < target {
        let len = rng.gen_range(1..=(target - total).min(3));
        segs.push((rng.gen_range(0..n), len));
        total += len;
    }
    h.amb().class_of_segments(&segs).unwrap()
}

#[test]
fn associativity_and_formula_agreement() {
    for (n, q) in [(2usize, 2u32), (3, 2), (2, 3)] {
        let h = ih(n, q);
        let mut rng = ChaCha8Rng::seed_from_u64(7 + n as u64 + q as u64);
        for _ in 0..12 {
            let a = h.basis(random_class(&h, &mut rng, 2));
            let b = h.basis(random_class(&h, &mut rng, 2));
            let c = h.basis(random_class(&h, &mut rng, 2));
            let l = h.product(&h.product(&a, &b).unwrap(), &c).unwrap();
            let r = h.product(&a, &h.product(&b, &c).unwrap()).unwrap();
            assert_eq!(l, r, "({a}) ({b}) ({c})");
            assert_eq!(h.product(&a, &b).unwrap(), h.product_alt(&a, &b).unwrap());
            let g = h.product(&a, &b).unwrap().grade();
            assert!(g.is_some());
        }
        let st = h.cross_check_stats();
        assert!(st.checked > 0);
        assert_eq!(st.mismatched, 0);
    }
}

#[test]
fn leading_part_is_the_hall_product() {
    let h = ih(2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let a = random_class(&h, &mut rng, 3);
        let b = random_class(&h, &mut rng, 3);
        let p = h.product(&h.basis(a), &h.basis(b)).unwrap();
        let top = p.leading_part(true).unwrap();
        let da = h.amb().dims(a);
        let db = h.amb().dims(b);
        let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
        let mut want = IHallElem::zero(h.clone());
        for (l, c) in h.hall.twisted_basis(a, b).unwrap() {
            want.add_term(l, vec![0, 0], c);
        }
        assert_eq!(top, want);
        for k in p.terms.keys() {
            let d = h.amb().dims(k.0);
            assert!(d.iter().zip(&sum).all(|(x, y)| x <= y));
        }
    }
}

#[test]
fn leading_part_ambiguity() {
    let h = ih(2, 2);
    let mut x = h.basis(class(&h, "0:1"));
    x.add_term(class(&h, "1:1"), vec![0, 0], QSqrt::one(2));
    assert!(matches!(x.leading_part(true), Err(Error::AmbiguousLeadingTerm(..))));
    assert_eq!(x.leading_part(false).unwrap(), x);
    let mut y = h.basis(class(&h, "1:2")).scale(&QSqrt::v(2));
    y.add_term(0, vec![1, 0], QSqrt::one(2));
    assert_eq!(y.leading_part(true).unwrap(), h.basis(class(&h, "1:2")).scale(&QSqrt::v(2)));
}

#[test]
fn render_parse_round_trip() {
    let h = ih(2, 2);
    let s0 = h.basis(class(&h, "0:1"));
    let s1 = h.basis(class(&h, "1:1"));
    let x = h.commutator_v(&s1, &s0, -1).unwrap().add(&h.torus(&[1, 0]).scale(&QSqrt::parse("-1/2 + 1/2*v", 2).unwrap()));
    let s = x.to_string();
    assert_eq!(h.parse(&s).unwrap(), x);
    assert_eq!(h.parse(&s).unwrap().to_string(), s);
    assert!(h.parse("(1) * [0:1] K[0,0]").is_ok());
    assert!(matches!(h.parse("(1) * [7:1] K[0,0]"), Err(Error::Parse(_))));
    assert_eq!(h.parse("(-1/2 + 1/2*v) * [1:2] K[1,0]").unwrap().to_string(), "(-1/2 + 1/2*v) * [1:2] K[1,0]");
}
