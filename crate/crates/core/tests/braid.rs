//! Braid automorphisms evaluated in the iHall algebra, where the Serre
//! relations hold and the identities below are meaningful.

use std::sync::Arc;

use ihall::coeff::QSqrt;
use ihall::ihall::IHall;
use ihall::iqg::{Braid, Evaluator, KNorm, NcExpr};
use ihall::quiver::{Ambient, Quiver};

fn setup(n: usize, q: u32) -> (Braid, Evaluator) {
    let qv = Quiver::cyclic(n).unwrap();
    let ih = IHall::from_ambient(Ambient::new(qv.clone(), q).unwrap());
    (Braid::new(qv.cartan()), Evaluator::new(Arc::clone(&ih), KNorm::Plain).unwrap())
}

#[test]
fn letters_are_inverted_by_their_inverse_letters() {
    for (n, q) in [(2, 2), (3, 2), (3, 3)] {
        let (br, ev) = setup(n, q);
        for i in 0..n {
            let f = br.letter::<QSqrt>(i, false, &q).unwrap();
            let g = br.letter::<QSqrt>(i, true, &q).unwrap();
            for j in 0..n {
                let b = NcExpr::<QSqrt>::b(n, j, &q);
                let want = ev.eval(&b).unwrap();
                assert_eq!(ev.eval(&g.apply(&f.apply(&b))).unwrap(), want, "n={n} q={q} i={i} j={j}");
                assert_eq!(ev.eval(&f.apply(&g.apply(&b))).unwrap(), want, "n={n} q={q} i={i} j={j}");
            }
        }
    }
}

#[test]
fn braid_relation_in_c3() {
    let q = 2;
    let (br, ev) = setup(3, q);
    let t = |i| br.letter::<QSqrt>(i, false, &q).unwrap();
    for j in 0..3 {
        let b = NcExpr::<QSqrt>::b(3, j, &q);
        let lhs = t(1).apply(&t(2).apply(&t(1).apply(&b)));
        let rhs = t(2).apply(&t(1).apply(&t(2).apply(&b)));
        assert_eq!(ev.eval(&lhs).unwrap(), ev.eval(&rhs).unwrap(), "j={j}");
    }
}
