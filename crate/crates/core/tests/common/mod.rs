#![allow(dead_code)]

use ffdyn_core::funcfield::factor::monic_irreducibles;
use ffdyn_core::funcfield::{Field, Frac, KPoly, Place, PolyQ, P1};
use ffdyn_core::ratmap::RatMap;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn fields() -> Vec<Field> {
    vec![
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::prime(5).unwrap(),
        Field::new(3, 2, None).unwrap(),
    ]
}

pub fn elem(f: &Field, r: &mut StdRng) -> ffdyn_core::funcfield::Gf {
    f.from_index(r.random_range(0..f.order())).unwrap()
}

pub fn nonzero_elem(f: &Field, r: &mut StdRng) -> ffdyn_core::funcfield::Gf {
    f.from_index(r.random_range(1..f.order())).unwrap()
}

pub fn polyq(f: &Field, r: &mut StdRng, max_deg: usize) -> PolyQ {
    let d = r.random_range(0..=max_deg);
    PolyQ::new(f, (0..=d).map(|_| elem(f, r)).collect())
}

pub fn nonzero_polyq(f: &Field, r: &mut StdRng, max_deg: usize) -> PolyQ {
    loop {
        let p = polyq(f, r, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn frac(f: &Field, r: &mut StdRng, max_deg: usize) -> Frac {
    Frac::new(polyq(f, r, max_deg), nonzero_polyq(f, r, max_deg))
}

pub fn nonzero_frac(f: &Field, r: &mut StdRng, max_deg: usize) -> Frac {
    Frac::new(nonzero_polyq(f, r, max_deg), nonzero_polyq(f, r, max_deg))
}

pub fn point(f: &Field, r: &mut StdRng, max_deg: usize) -> P1 {
    if r.random_range(0..12) == 0 {
        P1::Infinity
    } else {
        P1::Finite(frac(f, r, max_deg))
    }
}

pub fn kpoly(f: &Field, r: &mut StdRng, deg: usize, coeff_deg: usize) -> KPoly {
    let mut cs: Vec<Frac> = (0..deg).map(|_| Frac::from_poly(polyq(f, r, coeff_deg))).collect();
    cs.push(Frac::from_poly(nonzero_polyq(f, r, coeff_deg)));
    KPoly::new(f, cs)
}

/// Random map of exact degree `d`; polynomial with probability 1/2.
pub fn ratmap(f: &Field, r: &mut StdRng, d: usize, coeff_deg: usize) -> RatMap {
    loop {
        let num = kpoly(f, r, d, coeff_deg);
        let den = if r.random_bool(0.5) {
            KPoly::one(f)
        } else {
            KPoly::new(f, (0..=r.random_range(0..=d)).map(|_| Frac::from_poly(polyq(f, r, coeff_deg))).collect())
        };
        if den.is_zero() {
            continue;
        }
        if let Ok(m) = RatMap::new(num, den) {
            if m.degree() == d as u64 {
                return m;
            }
        }
    }
}

pub fn place(f: &Field, r: &mut StdRng, max_deg: usize) -> Place {
    if r.random_range(0..6) == 0 {
        return Place::Infinity;
    }
    let d = r.random_range(1..=max_deg);
    let ps = monic_irreducibles(f, d);
    Place::Finite(ps[r.random_range(0..ps.len())].clone())
}
