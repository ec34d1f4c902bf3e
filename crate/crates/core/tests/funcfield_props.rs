mod common;

use common::*;
use ffdyn_core::funcfield::{
    kpoly_factor, kpoly_is_irreducible, poly_factor, product_formula_check, valuation, Field, KPoly, DEFAULT_FACTOR_BUDGET,
};
use ffdyn_core::funcfield::kfactor::expand_factors;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn product_formula_random() {
    let mut r = rng(1);
    for f in fields() {
        for _ in 0..250 {
            let z = nonzero_frac(&f, &mut r, 20);
            assert_eq!(product_formula_check(&z).unwrap(), 0, "{z:?}");
        }
    }
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(9)].prop_map(|q| match q {
        9 => Field::new(3, 2, None).unwrap(),
        p => Field::prime(p).unwrap(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_factor_round_trip(f in field_strategy(), seed in any::<u64>(), deg in 1usize..=60) {
        let mut r = rng(seed);
        let mut a = nonzero_polyq(&f, &mut r, deg);
        if a.is_constant() {
            a = a.shift(1);
        }
        let fac = poly_factor(&a).unwrap();
        prop_assert_eq!(fac.expand(&a), a);
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(ffdyn_core::funcfield::is_irreducible(g));
        }
    }

    #[test]
    fn valuation_axioms(f in field_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = nonzero_frac(&f, &mut r, 8);
        let b = nonzero_frac(&f, &mut r, 8);
        let p = place(&f, &mut r, 2);
        let (va, vb) = (valuation(&a, &p).unwrap(), valuation(&b, &p).unwrap());
        prop_assert_eq!(valuation(&a.mul_frac(&b), &p), Some(va + vb));
        let s = a.add_frac(&b);
        if let Some(vs) = valuation(&s, &p) {
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        } else {
            prop_assert_eq!(va, vb);
        }
    }
}

#[test]
fn kpoly_factor_degrees_and_recheck() {
    let mut r = rng(7);
    for f in fields().into_iter().skip(1) {
        for _ in 0..12 {
            // products of small random factors so that splittings actually occur
            let k = r.random_range(1..=3);
            let parts: Vec<KPoly> = (0..k)
                .map(|_| {
                    let d = r.random_range(1..=3);
                    kpoly(&f, &mut r, d, 2)
                })
                .collect();
            let g = parts.iter().fold(KPoly::one(&f), |acc, p| acc.mul_poly(p));
            let facs = kpoly_factor(&g, DEFAULT_FACTOR_BUDGET).unwrap();
            let total: usize = facs.iter().map(|(h, m)| h.deg0() * *m as usize).sum();
            assert_eq!(total, g.deg0());
            assert_eq!(expand_factors(&f, &facs), g.monic());
            for (h, _) in &facs {
                assert!(kpoly_is_irreducible(h, DEFAULT_FACTOR_BUDGET).unwrap(), "{h:?}");
            }
        }
    }
}
