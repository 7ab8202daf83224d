#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use qdyb_core::cartan::{root_system, LatticeWeight};
use qdyb_core::context::Context;
use qdyb_core::exact::{int, parse_ratfun, rat, ExpSeries, Monomial, Numeric, Poly, Prefactor, Rat, RatFun, Q};
use qdyb_core::linalg::{self, Mat};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn poly2() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=2, 0u32..=2), small_rat()), 0..4)
        .prop_map(|ts| Poly::from_terms(2, ts.into_iter().map(|((a, b), c)| (Monomial(vec![a, b]), c))))
}

fn nonzero_poly2() -> impl Strategy<Value = Poly> {
    poly2().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun2() -> impl Strategy<Value = RatFun> {
    (poly2(), nonzero_poly2()).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn point2() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-50i64..=50, 1i64..=7).prop_map(|(p, q)| rat(p, q)), 2)
}

fn shift2() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-3i64..=3).prop_map(int), 2)
}

fn series1() -> impl Strategy<Value = ExpSeries> {
    prop::collection::vec((0i64..=6, -5i64..=5), 0..5).prop_map(|ts| {
        let rs = root_system(1).unwrap();
        let mut s = ExpSeries::new(int(4), Prefactor::None, rs.height_functional(), 1);
        for (e, c) in ts {
            s.add_term(LatticeWeight::from_ints(&[e]), RatFun::constant(1, int(c)));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_survives_printing(f in ratfun2()) {
        let g = parse_ratfun(&f.to_string_with("x"), "x", 2).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(g.to_string_with("x"), f.to_string_with("x"));
    }

    #[test]
    fn common_factors_cancel(n in poly2(), d in nonzero_poly2(), k in nonzero_poly2()) {
        let a = RatFun::new(n.clone(), d.clone()).unwrap();
        let b = RatFun::new(n.mul(&k), d.mul(&k)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn field_axioms(a in ratfun2(), b in ratfun2(), c in ratfun2()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if let Some(i) = a.inv() {
            prop_assert!(a.mul(&i).is_one());
        }
    }

    #[test]
    fn shifts_compose(f in ratfun2(), s in shift2(), t in shift2()) {
        let st: Vec<Rat> = s.iter().zip(&t).map(|(a, b)| a + b).collect();
        prop_assert_eq!(f.shift(&s).shift(&t), f.shift(&st));
        prop_assert_eq!(f.reflect_rho().reflect_rho(), f);
    }

    #[test]
    fn evaluation_commutes_with_shift(f in ratfun2(), s in shift2(), p in point2()) {
        let ps: Vec<Rat> = p.iter().zip(&s).map(|(a, b)| a + b).collect();
        match (f.shift(&s).eval(&p), f.eval(&ps)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn series_product_is_commutative_and_associative(a in series1(), b in series1(), c in series1()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(rows in prop::collection::vec(prop::collection::vec(small_rat(), 3), 3)) {
        let m = Mat::from_rows(rows);
        if let Ok(i) = linalg::inverse(&Q, &m) {
            prop_assert_eq!(linalg::mul(&Q, &m, &i), linalg::identity(&Q, 3));
            prop_assert_eq!(linalg::mul(&Q, &i, &m), linalg::identity(&Q, 3));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn verma_levels_have_kostant_dimension(p in (-1000i64..=1000, 1i64..=50, -1000i64..=1000, 1i64..=50)) {
        let rs = root_system(2).unwrap();
        let point = vec![rat(p.0, p.1), rat(p.2, p.3)];
        let ctx = Context::new(rs, Numeric::new(point));
        if let Ok(m) = ctx.verma(&ctx.origin(), 3) {
            for l in &m.q.order {
                let b: Vec<i64> = l.iter().map(|&x| i64::from(x)).collect();
                prop_assert_eq!(m.dim(l) as u64, ctx.rs.kostant_partition(&ctx.rs.from_simple(&b)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Irreps, their duals and pairwise tensor products satisfy every
    /// Chevalley and Serre relation.
    #[test]
    fn module_relations(r in 1i64..=2, a in prop::collection::vec(0i64..=2, 2), b in prop::collection::vec(0i64..=1, 2)) {
        use qdyb_core::repmod::{dual, irrep, tensor, trivial};
        let rs = root_system(r).unwrap();
        let n = r as usize;
        let v = irrep(&rs, &a[..n]).unwrap();
        let w = irrep(&rs, &b[..n]).unwrap();
        for m in [&v, &dual(&v), &tensor(&v, &w), &tensor(&w, &dual(&v)), &trivial(&rs)] {
            prop_assert!(m.relations_hold(&rs), "{}", m.name);
        }
    }
}
