//! Algebraic invariants under random inputs.

use chowwitt::gersten::{self, Curve};
use chowwitt::json;
use chowwitt::milnorwitt;
use chowwitt::quadforms::{self, RatPlace};
use chowwitt::suite;
use chowwitt::wittgw::{self, Decision, GwElement, WittClass};
use chowwitt::{DiagonalForm, Field, Place, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn nonzero(range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = i64> {
    range.prop_filter("nonzero", |x| *x != 0)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn places(vals: &[i64]) -> Vec<RatPlace> {
    let mut v = vec![RatPlace::Real];
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if p == 2 || vals.iter().any(|x| x % p as i64 == 0) {
            v.push(RatPlace::Prime(p.into()));
        }
    }
    v
}

fn form(k: &Field, v: &[i64]) -> DiagonalForm {
    DiagonalForm::from_i64s(k, v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_symbols_are_bimultiplicative(a in nonzero(-40..=40), b in nonzero(-40..=40), c in nonzero(-40..=40)) {
        for v in places(&[a, b, c]) {
            let h = |x: i64, y: i64| quadforms::hilbert_symbol(&rat(x), &rat(y), &v).unwrap();
            prop_assert_eq!(h(a, b), h(b, a));
            prop_assert_eq!(h(a * c, b), h(a, b) * h(c, b));
            prop_assert_eq!(h(a, -a), 1);
            if a != 1 {
                prop_assert_eq!(h(a, 1 - a), 1);
            }
        }
    }

    #[test]
    fn hilbert_product_formula(a in nonzero(-50..=50), b in nonzero(-50..=50)) {
        let prod: i8 = places(&[a, b]).iter().map(|v| quadforms::hilbert_symbol(&rat(a), &rat(b), v).unwrap()).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn witt_decomposition_is_consistent_over_q(v in prop::collection::vec(nonzero(-12..=12), 0..6)) {
        let k = Field::rationals();
        let q = form(&k, &v);
        let (m, ker) = q.witt_decompose().unwrap();
        prop_assert_eq!(2 * m + ker.rank(), q.rank());
        prop_assert!(!ker.is_isotropic().unwrap());
        let (wq, wk) = (WittClass::from_form(&q).unwrap(), WittClass::from_form(&ker).unwrap());
        prop_assert_eq!(wittgw::witt_equal(&wq, &wk).unwrap(), Decision::Yes);
    }

    #[test]
    fn forms_cancel_their_negatives(v in prop::collection::vec(nonzero(-30..=30), 0..6), p in prop::sample::select(vec![0u64, 3, 5, 7, 11])) {
        let k = if p == 0 { Field::rationals() } else { Field::prime(p).unwrap() };
        let v: Vec<i64> = v.into_iter().filter(|x| p == 0 || x % p as i64 != 0).collect();
        let q = form(&k, &v);
        let w = WittClass::from_form(&q.direct_sum(&q.neg()).unwrap()).unwrap();
        prop_assert_eq!(w.is_zero().unwrap(), Decision::Yes);
    }

    #[test]
    fn grothendieck_witt_ring_laws(a in prop::collection::vec(nonzero(-9..=9), 0..4), b in prop::collection::vec(nonzero(-9..=9), 0..4)) {
        let k = Field::rationals();
        let (x, y) = (GwElement::from_form(&form(&k, &a)).unwrap(), GwElement::from_form(&form(&k, &b)).unwrap());
        let s = x.add(&y).unwrap();
        let p = x.mul(&y).unwrap();
        prop_assert_eq!(s.rank(), x.rank() + y.rank());
        prop_assert_eq!(p.rank(), x.rank() * y.rank());
        prop_assert!(s.is_compatible() && p.is_compatible());
        prop_assert_eq!(wittgw::gw_equal(&p, &y.mul(&x).unwrap()).unwrap(), Decision::Yes);
        prop_assert_eq!(wittgw::gw_equal(&s.sub(&y).unwrap(), &x).unwrap(), Decision::Yes);
    }

    #[test]
    fn valuations_are_additive(
        f in prop::collection::vec(-5i64..=5, 1..5),
        g in prop::collection::vec(-5i64..=5, 1..5),
        place in 0usize..4,
    ) {
        let k = Field::rationals();
        let kt = Field::function_field(&k, "t").unwrap();
        let (pf, pg) = (Poly::from_i64s(&k, &f), Poly::from_i64s(&k, &g));
        prop_assume!(!pf.is_zero() && !pg.is_zero());
        let v = [
            Place::Finite(Poly::x(&k)),
            Place::Finite(Poly::from_i64s(&k, &[1, 1])),
            Place::Finite(Poly::from_i64s(&k, &[1, 0, 1])),
            Place::Infinite,
        ][place].clone();
        let (x, y) = (kt.from_poly(&pf), kt.from_poly(&pg));
        let vx = kt.valuation(&x, &v).unwrap();
        let vy = kt.valuation(&y, &v).unwrap();
        prop_assert_eq!(kt.valuation(&kt.mul(&x, &y), &v).unwrap(), vx + vy);
        prop_assert_eq!(kt.valuation(&kt.div(&x, &y).unwrap(), &v).unwrap(), vx - vy);
    }

    #[test]
    fn quadratic_degree_rank_is_classical_degree(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 3, 5, 7])) {
        let k = if p == 0 { Field::rationals() } else { Field::prime(p).unwrap() };
        let curve = Curve::projective_line(&k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = suite::random_cycle(&curve, &mut rng, 3).unwrap();
        prop_assert_eq!(gersten::qdeg(&z).unwrap().rank(), gersten::cdeg(&gersten::forget(&z)));
        // qdeg is additive
        let w = suite::random_cycle(&curve, &mut rng, 3).unwrap();
        let lhs = gersten::qdeg(&z.add(&w).unwrap()).unwrap();
        let rhs = gersten::qdeg(&z).unwrap().add(&gersten::qdeg(&w).unwrap()).unwrap();
        prop_assert_eq!(wittgw::gw_equal(&lhs, &rhs).unwrap(), Decision::Yes);
    }

    #[test]
    fn reciprocity_over_function_fields(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 3, 5, 7])) {
        let k = if p == 0 { Field::rationals() } else { Field::prime(p).unwrap() };
        let kt = Field::function_field(&k, "t").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = suite::random_mw1(&kt, &mut rng, 6).unwrap();
        let s = milnorwitt::reciprocity_sum(&x).unwrap();
        prop_assert_eq!(s.rank(), 0);
        prop_assert_eq!(s.witt().is_zero().unwrap(), Decision::Yes);
        prop_assert_ne!(x.is_compatible().unwrap(), Decision::No);
    }

    #[test]
    fn json_round_trips(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 5])) {
        let k = if p == 0 { Field::rationals() } else { Field::prime(p).unwrap() };
        let curve = Curve::projective_line(&k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = suite::random_cycle(&curve, &mut rng, 3).unwrap();
        let back = json::cycle_from_json(&json::cycle_to_json(&z)).unwrap();
        prop_assert_eq!(&back, &z);
        let g = gersten::qdeg(&z).unwrap();
        prop_assert_eq!(json::gw_from_json(&json::gw_to_json(&g), None).unwrap(), g);
        let kt = Field::function_field(&k, "t").unwrap();
        let x = suite::random_mw1(&kt, &mut rng, 6).unwrap();
        prop_assert_eq!(json::mw_from_json(&json::mw_to_json(&x), None).unwrap(), x);
        prop_assert_eq!(json::curve_from_json(&json::curve_to_json(&curve)).unwrap(), curve);
    }
}

#[test]
fn conic_cycles_round_trip() {
    let k = Field::prime(7).unwrap();
    let c = Curve::conic(&k, k.one(), k.one(), k.one()).unwrap();
    let pts = chowwitt::rational_points::find_points(&c, 2, 0).unwrap();
    let terms = pts
        .iter()
        .take(5)
        .map(|x| (x.clone(), GwElement::one(&x.residue_field(&c).unwrap())))
        .collect();
    let z = chowwitt::QuadraticZeroCycle::new(&c, terms).unwrap();
    assert_eq!(json::cycle_from_json(&json::cycle_to_json(&z)).unwrap(), z);
    let w = chowwitt::rational_points::bezout_witness(&pts).unwrap();
    assert_eq!(json::witness_from_json(&c, &json::witness_to_json(&c, &w)).unwrap(), w);
}
