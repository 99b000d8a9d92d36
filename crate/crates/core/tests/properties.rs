use ibench_core::config::RunConfig;
use ibench_core::spin::{permutation, Label, SpaceLayout, SpinVector};
use ibench_core::{expand_at_infinity, Field, Fp62, LaurentPoly, Mono, Rat, RatFunc, VarMap};
use num_rational::BigRational;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-1000i64..1000, 1i64..50).prop_map(|(p, q)| Rat::new(p, q))
}

fn big_rat() -> impl Strategy<Value = Rat> {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(p, q)| Rat::new(p, q))
}

fn poly(nv: usize) -> impl Strategy<Value = LaurentPoly<Rat>> {
    prop::collection::vec((prop::collection::vec(-2i32..3, nv), -9i64..10), 0..5).prop_map(move |ts| {
        LaurentPoly::from_terms(nv, ts.into_iter().map(|(e, c)| (Mono::from_exps(&e), Rat::from(c))).collect())
    })
}

/// `num / ((t1 - a)(t1 t2 - 1))`, poles from the Dunkl family plus a shifted one.
fn ratfunc() -> impl Strategy<Value = RatFunc<Rat>> {
    (poly(2), 2i64..9).prop_map(|(num, a)| {
        let t1 = LaurentPoly::var(2, 0);
        let t2 = LaurentPoly::var(2, 1);
        let f1 = t1.sub(&LaurentPoly::constant(2, Rat::from(a)));
        let f2 = t1.mul(&t2).sub(&LaurentPoly::one(2));
        RatFunc::from_factors(num, &[(f1, 1), (f2, 1)]).unwrap()
    })
}

/// Sample points away from the poles above.
fn point() -> impl Strategy<Value = Vec<Rat>> {
    (11i64..500, 11i64..500, 2i64..7).prop_map(|(a, b, d)| vec![Rat::new(a, d), Rat::new(b, d + 1)])
}

fn to_fp(x: &Rat) -> Fp62 {
    Fp62::from_rational(&x.to_big()).unwrap()
}

proptest! {
    #[test]
    fn rational_field_axioms(a in big_rat(), b in big_rat(), c in big_rat()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.to_big() * b.to_big(), a.mul(&b).to_big());
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism(a in big_rat(), b in big_rat()) {
        prop_assert_eq!(to_fp(&a.add(&b)), to_fp(&a).add(&to_fp(&b)));
        prop_assert_eq!(to_fp(&a.mul(&b)), to_fp(&a).mul(&to_fp(&b)));
        if !b.is_zero() {
            prop_assert_eq!(to_fp(&a.div(&b).unwrap()), to_fp(&a).div(&to_fp(&b)).unwrap());
        }
    }

    #[test]
    fn rational_text_round_trip(a in big_rat()) {
        prop_assert_eq!(Rat::parse(&a.to_string()), Some(a.clone()));
        let q: BigRational = a.to_big();
        prop_assert_eq!(Rat::from_big(q), a);
    }

    #[test]
    fn polynomial_ring_laws(p in poly(2), q in poly(2), r in poly(2), x in point()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        let ev = |f: &LaurentPoly<Rat>| f.eval(&x).unwrap();
        prop_assert_eq!(ev(&p.mul(&q)), ev(&p).mul(&ev(&q)));
    }

    #[test]
    fn euler_operator_is_a_derivation(p in poly(2), q in poly(2), i in 0usize..2) {
        prop_assert_eq!(p.mul(&q).euler(i), p.euler(i).mul(&q).add(&p.mul(&q.euler(i))));
    }

    #[test]
    fn substitutions_are_involutions(p in poly(2), x in point()) {
        let s = VarMap::swap(2, 0, 1);
        let inv = VarMap::invert(2, 0);
        prop_assert_eq!(p.substitute(&s).substitute(&s), p.clone());
        prop_assert_eq!(p.substitute(&inv).substitute(&inv), p.clone());
        let swapped = vec![x[1].clone(), x[0].clone()];
        prop_assert_eq!(p.substitute(&s).eval(&x), p.eval(&swapped));
    }

    #[test]
    fn rational_function_arithmetic(f in ratfunc(), g in ratfunc(), x in point()) {
        prop_assert_eq!(f.add(&g).sub(&g), f.clone());
        let ev = |h: &RatFunc<Rat>| h.eval(&x).unwrap();
        prop_assert_eq!(ev(&f.mul(&g)), ev(&f).mul(&ev(&g)));
        prop_assert_eq!(ev(&f.canonical()), ev(&f));
        if !f.is_zero() {
            prop_assert!(f.mul(&f.inv().unwrap()).sub(&RatFunc::one(2)).is_zero());
        }
    }

    #[test]
    fn euler_derivative_of_quotients(f in ratfunc(), g in ratfunc(), i in 0usize..2) {
        let lhs = f.mul(&g).euler_deriv(i);
        let rhs = f.euler_deriv(i).mul(&g).add(&f.mul(&g.euler_deriv(i)));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn geometric_series_at_infinity(a in rat(), k in 1usize..7) {
        // 1/(u - a) = sum_{j >= 1} a^{j-1} u^{-j}
        let u = LaurentPoly::var(1, 0);
        let f = RatFunc::from_factors(LaurentPoly::one(1), &[(u.sub(&LaurentPoly::constant(1, a.clone())), 1)]).unwrap();
        let s = expand_at_infinity(&f, 0, k).unwrap();
        prop_assert!(s.coeff(0).unwrap().is_zero());
        for j in 1..=k {
            prop_assert_eq!(s.coeff(j).unwrap().constant_value(), Some(a.pow(j as u32 - 1)));
        }
    }

    #[test]
    fn series_of_a_product(a in rat(), b in rat(), c in rat(), k in 1usize..6) {
        // (u - c)/(u - a) times u/(u - b): the expansion is multiplicative
        let u = LaurentPoly::var(1, 0);
        let lin = |x: &Rat| u.sub(&LaurentPoly::constant(1, x.clone()));
        let f = RatFunc::from_factors(lin(&c), &[(lin(&a), 1)]).unwrap();
        let g = RatFunc::from_factors(u.clone(), &[(lin(&b), 1)]).unwrap();
        let sf = expand_at_infinity(&f, 0, k).unwrap();
        let sg = expand_at_infinity(&g, 0, k).unwrap();
        let sfg = expand_at_infinity(&f.mul(&g), 0, k).unwrap();
        let prod = sf.mul(&sg);
        for j in 0..=k {
            prop_assert!(prod.coeff(j).unwrap().sub(sfg.coeff(j).unwrap()).is_zero());
        }
    }

    #[test]
    fn flip_squares_to_one_and_swaps_factors(n in 2usize..4, i in 0usize..3, j in 0usize..3) {
        let (i, j) = (i % n, j % n);
        let p = permutation::<Rat>(n, Label::Aux(0), Label::Aux(1)).unwrap();
        let pp = p.compose(&p).unwrap();
        let layout = SpaceLayout::new(n, vec![Label::Aux(0), Label::Aux(1)]).unwrap();
        let v = SpinVector::basis(layout.clone(), &[i, j], Rat::one());
        prop_assert_eq!(pp.apply(&v).unwrap(), v);
        let w = p.apply(&SpinVector::basis(layout.clone(), &[i, j], Rat::one())).unwrap();
        prop_assert_eq!(w, SpinVector::basis(layout, &[j, i], Rat::one()));
    }

    #[test]
    fn config_documents_round_trip(
        n in 2usize..4,
        nn in 1usize..5,
        lambda in rat(),
        b_prime in rat(),
        c in rat(),
        seed in any::<u64>(),
        states in 1usize..20,
    ) {
        let doc = format!(
            "n = {n}\nN = {nn}\nlambda = {lambda}\nb_prime = {b_prime}\nc = {c}  # comment\nseed = {seed}\nstates = {states}\n"
        );
        let cfg = RunConfig::parse(&doc).unwrap();
        prop_assert_eq!((cfg.n, cfg.particles, cfg.seed, cfg.states), (n, nn, seed, states));
        prop_assert_eq!(&cfg.lambda, &lambda);
        let p = cfg.resolve().unwrap();
        prop_assert!(p.beta_constraint_holds() && p.b_constraint_holds());
        prop_assert_eq!(p.b_prime, b_prime);
    }
}
