mod common;

use common::*;
use ffdyn_core::funcfield::{Field, Frac, P1};
use ffdyn_core::heights::{canonical_height, functoriality_constant, is_preperiodic, weil_height, Preperiodicity, DEFAULT_HEIGHT_BUDGET, DEFAULT_ORBIT_BUDGET};
use ffdyn_core::ratmap::RatMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn functoriality_audit() {
    let mut r = rng(21);
    let mut checked = 0;
    for f in fields() {
        for _ in 0..10 {
            let d = r.random_range(2..=3);
            let phi = ratmap(&f, &mut r, d, 2);
            let c = functoriality_constant(&phi).unwrap() as i64;
            for _ in 0..250 {
                let z = point(&f, &mut r, 6);
                let lhs = weil_height(&phi.evaluate(&z)) as i64 - d as i64 * weil_height(&z) as i64;
                assert!(lhs.abs() <= c, "{phi}: {z:?} gives {lhs}, C = {c}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 10_000);
}

#[test]
fn canonical_height_transforms_and_stays_close() {
    let mut r = rng(22);
    let eps = q(1, 8);
    for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
        for _ in 0..8 {
            let d = r.random_range(2..=3);
            let phi = ratmap(&f, &mut r, d, 1);
            let c = functoriality_constant(&phi).unwrap();
            for _ in 0..4 {
                let z = point(&f, &mut r, 2);
                let a = canonical_height(&phi, &z, &eps, DEFAULT_HEIGHT_BUDGET).unwrap();
                let b = canonical_height(&phi, &phi.evaluate(&z), &eps, DEFAULT_HEIGHT_BUDGET).unwrap();
                assert!(a.error_bound <= eps && b.error_bound <= eps);
                let gap = (&b.value - int(d as u64) * &a.value).abs();
                assert!(gap <= &b.error_bound + int(d as u64) * &a.error_bound, "{phi} at {z:?}");
                let dev = (&a.value - int(weil_height(&z))).abs();
                assert!(dev <= BigRational::new(BigInt::from(c), BigInt::from(d - 1)) + &a.error_bound);
                let pre = matches!(is_preperiodic(&phi, &z, DEFAULT_ORBIT_BUDGET).unwrap(), Preperiodicity::Preperiodic { .. });
                assert_eq!(pre, a.value.is_zero(), "{phi} at {z:?}");
            }
        }
    }
}

#[test]
fn constant_maps_have_zero_heights_on_constants() {
    let mut r = rng(23);
    for f in fields() {
        for _ in 0..10 {
            let d = r.random_range(2..=3);
            let phi = ratmap(&f, &mut r, d, 0);
            assert!(phi.has_constant_coeffs());
            let z = P1::Finite(Frac::constant(&f, elem(&f, &mut r)));
            let h = canonical_height(&phi, &z, &q(1, 64), DEFAULT_HEIGHT_BUDGET).unwrap();
            assert!(h.value.is_zero());
        }
    }
}

#[test]
fn quadratic_example() {
    let f = Field::prime(3).unwrap();
    let phi = RatMap::parse(&f, "z^2+t").unwrap();
    let h = canonical_height(&phi, &P1::Finite(Frac::zero(&f)), &q(1, 64), DEFAULT_HEIGHT_BUDGET).unwrap();
    assert!((&h.value - q(1, 2)).abs() <= q(1, 64));
}
