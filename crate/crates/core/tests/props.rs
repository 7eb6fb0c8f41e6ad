use std::sync::Arc;

use proptest::prelude::*;

use ihall::coeff::{rat, series_convert, LaurentOps, LaurentV, QSqrt, SeriesKind};
use ihall::finfield::Mat;
use ihall::ihall::{IHall, IHallElem};
use ihall::named::segment_multisets_dims;
use ihall::quiver::{ext1_dim, hom_dim, Ambient, Quiver, Rep};
use ihall::suites::{Status, SuiteReport};
use ihall::wpl::{cartan_pairing, lp_normal_form, point_census, RootClass, Weights};

fn qsqrt(q: u32) -> impl Strategy<Value = QSqrt> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(move |(a, b, c, d)| QSqrt::new(rat(a, b), rat(c, d), q))
}

fn laurent() -> impl Strategy<Value = LaurentV> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 1..4)
        .prop_map(|ts| LaurentV::from_terms(&ts.iter().map(|&(e, c)| (e, rat(c, 1))).collect::<Vec<_>>()))
}

fn ihall(spec: &str, q: u32) -> Arc<IHall> {
    IHall::from_ambient(Ambient::new(Quiver::parse(spec).unwrap(), q).unwrap())
}

/// The basis element `[M] K_torus` for the `pick`-th class of dimension `dims`.
fn element(ih: &Arc<IHall>, dims: &[usize], pick: usize, torus: &[i64]) -> IHallElem {
    let all = segment_multisets_dims(ih.n(), dims);
    let cls = ih.amb().class_of_segments(&all[pick % all.len()]).unwrap();
    IHallElem::basis(ih.clone(), cls, torus.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qsqrt_is_a_field((q, x, y, z) in prop::sample::select(vec![2u32, 3, 5]).prop_flat_map(|q| (Just(q), qsqrt(q), qsqrt(q), qsqrt(q)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), QSqrt::one(q));
        }
        prop_assert_eq!(QSqrt::parse(&x.to_string(), q).unwrap(), x);
    }

    #[test]
    fn v_squared_is_q(q in prop::sample::select(vec![2u32, 3, 4, 5, 7])) {
        let v = QSqrt::v(q);
        prop_assert_eq!(&v * &v, QSqrt::from_int(q as i64, q));
    }

    #[test]
    fn laurent_parse_render(x in laurent()) {
        prop_assert_eq!(LaurentV::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn qbinom_symmetric(n in 0i64..7, r in 0i64..7) {
        prop_assume!(r <= n);
        prop_assert_eq!(LaurentV::qbinom(n, r), LaurentV::qbinom(n, n - r));
    }

    #[test]
    fn h_theta_round_trip(h in prop::collection::vec(laurent(), 1..5)) {
        let th = series_convert(SeriesKind::H, &h, &LaurentOps, false).unwrap();
        let back = series_convert(SeriesKind::Theta, &th, &LaurentOps, false).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn lp_normal_form_is_canonical(l in prop::collection::vec(-9i64..9, 3), c in -5i64..5, k in -3i64..3, i in 0usize..3) {
        let p = [2usize, 3, 5];
        let a = lp_normal_form(&p, &l, c).unwrap();
        // x_i^{p_i} = c
        let mut l2 = l.clone();
        l2[i] += k * p[i] as i64;
        prop_assert_eq!(lp_normal_form(&p, &l2, c - k).unwrap(), a.clone());
        prop_assert!(a.l.iter().zip(&p).all(|(&x, &pi)| 0 <= x && x < pi as i64));
        prop_assert_eq!(lp_normal_form(&p, &a.l, a.c).unwrap(), a);
    }

    #[test]
    fn census_counts_rational_points(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), m in 1u64..8) {
        let s: u64 = (1..=m).filter(|d| m % d == 0).map(|d| d * point_census(q, d).unwrap()).sum();
        prop_assert_eq!(s, q.pow(m as u32) + 1);
    }

    #[test]
    fn cartan_symmetric_delta_radical(a in prop::collection::vec(-3i64..3, 5), b in prop::collection::vec(-3i64..3, 5)) {
        let w = Weights::new(vec![2, 3]).unwrap();
        let (a, b) = (RootClass(a), RootClass(b));
        prop_assert_eq!(cartan_pairing(&w, &a, &b), cartan_pairing(&w, &b, &a));
        prop_assert_eq!(cartan_pairing(&w, &RootClass::delta(&w, 1), &a), 0);
        prop_assert_eq!(cartan_pairing(&w, &a.add(&b), &a.add(&b)),
            cartan_pairing(&w, &a, &a) + 2 * cartan_pairing(&w, &a, &b) + cartan_pairing(&w, &b, &b));
    }

    #[test]
    fn euler_form_on_random_reps(spec in prop::sample::select(vec!["qj:3:1", "star:2,2,2:in", "arrows:3:0>1,0>2,1>2"]),
                                  q in prop::sample::select(vec![2u32, 3]),
                                  entries in prop::collection::vec(0u32..9, 40),
                                  da in prop::collection::vec(0usize..2, 4), db in prop::collection::vec(0usize..2, 4)) {
        let qv = Arc::new(Quiver::parse(spec).unwrap());
        let amb = Ambient::new((*qv).clone(), q).unwrap();
        let mut it = entries.iter().cycle();
        let mut rep = |dims: &[usize]| {
            let dims = dims[..qv.n].to_vec();
            let maps = qv.arrows.iter().map(|&(s, t)| {
                let mut m = Mat::zeros(dims[t], dims[s]);
                for r in 0..dims[t] {
                    for c in 0..dims[s] {
                        m.set(r, c, (*it.next().unwrap() % q) as _);
                    }
                }
                m
            }).collect();
            Rep::new(qv.clone(), amb.field.clone(), dims, maps, 10).unwrap()
        };
        let (a, b) = (rep(&da), rep(&db));
        prop_assert_eq!(hom_dim(&a, &b) as i64 - ext1_dim(&a, &b) as i64, qv.euler_form(&a.dims, &b.dims));
    }

    #[test]
    fn ihall_associative_and_parse_round_trip(q in prop::sample::select(vec![2u32, 3]),
                                               picks in prop::collection::vec(0usize..50, 3),
                                               dims in prop::collection::vec(prop::collection::vec(0usize..2, 2), 3),
                                               torus in prop::collection::vec(-1i64..=1, 6)) {
        let ih = ihall("cn:2", q);
        let xs: Vec<IHallElem> = (0..3).map(|k| element(&ih, &dims[k], picks[k], &torus[2 * k..2 * k + 2])).collect();
        let lhs = ih.product(&ih.product(&xs[0], &xs[1]).unwrap(), &xs[2]).unwrap();
        let rhs = ih.product(&xs[0], &ih.product(&xs[1], &xs[2]).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(ih.parse(&lhs.to_string()).unwrap(), lhs);
    }

    #[test]
    fn delta_torus_is_central(q in prop::sample::select(vec![2u32, 3]), pick in 0usize..50,
                              dims in prop::collection::vec(0usize..3, 3), k in -2i64..=2) {
        let ih = ihall("cn:3", q);
        let kd = ih.torus(&[k, k, k]);
        let x = element(&ih, &dims, pick, &[0, 0, 0]);
        prop_assert_eq!(ih.product(&kd, &x).unwrap(), ih.product(&x, &kd).unwrap());
    }

    #[test]
    fn report_json_round_trip(ids in prop::collection::vec("[a-z]{1,6}", 0..5), fails in prop::collection::vec(any::<bool>(), 5)) {
        let mut r = SuiteReport::new("p");
        for (k, id) in ids.iter().enumerate() {
            r.record(id, &format!("k={k}"), Ok(!fails[k])).unwrap();
        }
        r.convention("x", "y");
        let back = SuiteReport::from_json(&r.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), r.to_json());
        prop_assert_eq!(back.count(Status::Fail), fails[..ids.len()].iter().filter(|&&f| f).count());
    }
}
