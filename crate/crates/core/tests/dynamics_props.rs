mod common;

use common::*;
use ffdyn_core::arboreal::{degree_tower, lemma_r_certificate, lemma_u_check, zram_scan, LemmaR, UnicriticalMap};
use ffdyn_core::funcfield::{valuation, Field, Frac, KPoly, Place, PolyQ, P1, DEFAULT_FACTOR_BUDGET};
use ffdyn_core::integrality::PlaceSet;
use ffdyn_core::ratmap::RatMap;
use ffdyn_core::superelliptic::{genus_formula, ramified_sum, SuperellipticCurve};
use ffdyn_core::zsigmondy::{zsigmondy_scan, DEFAULT_ZSIG_BUDGET};

fn quadratic(c: &Frac) -> RatMap {
    UnicriticalMap::new(2, c.clone()).unwrap().to_ratmap()
}

/// `f^m(alpha) - beta` by plain iteration.
fn orbit_terms(phi: &RatMap, alpha: &Frac, beta: &Frac, n: usize) -> Vec<Frac> {
    let mut w = P1::Finite(alpha.clone());
    (1..=n)
        .map(|_| {
            w = phi.evaluate(&w);
            w.finite().unwrap().sub_frac(beta)
        })
        .collect()
}

#[test]
fn zsigmondy_flags_match_direct_valuations() {
    let mut r = rng(51);
    let mut linked = 0;
    for f in [Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
        for _ in 0..6 {
            let c = Frac::from_poly(nonzero_polyq(&f, &mut r, 2));
            if c.is_constant() {
                continue;
            }
            let phi = quadratic(&c);
            let alpha = Frac::zero(&f);
            let beta = Frac::constant(&f, elem(&f, &mut r));
            let rep = zsigmondy_scan(&phi, &alpha, &beta, &[2], 5, DEFAULT_ZSIG_BUDGET).unwrap();
            let terms = orbit_terms(&phi, &alpha, &beta, rep.entries.len());
            for e in &rep.entries {
                assert_eq!(e.b_n, terms[e.n - 1]);
                for flag in &e.support {
                    let v = valuation(&terms[e.n - 1], &flag.place).unwrap();
                    assert_eq!(v, flag.valuation);
                    let earlier = terms[..e.n - 1].iter().all(|b| valuation(b, &flag.place).is_some_and(|u| u <= 0));
                    assert_eq!(flag.primitive, v > 0 && earlier);
                    for &(l, prim) in &flag.primitive_ell {
                        assert_eq!(prim, flag.primitive && v % l as i64 != 0);
                        assert!(!prim || flag.primitive);
                    }
                }
            }
            let z2 = &rep.z_ell[0].1;
            assert!(rep.z.iter().all(|n| z2.contains(n)));

            // primitive 2-divisors where c and beta are units feed the ramification certificate
            let u = UnicriticalMap::new(2, c.clone()).unwrap();
            if beta.is_zero() {
                continue;
            }
            for e in &rep.entries {
                for flag in e.support.iter().filter(|fl| fl.primitive_ell == [(2, true)]) {
                    if valuation(&c, &flag.place) != Some(0) {
                        continue;
                    }
                    let cert = lemma_r_certificate(&u, &beta, &flag.place, e.n, 2, 1).unwrap();
                    let LemmaR::Certificate(cert) = cert else { panic!("{cert:?} for c = {c:?}") };
                    assert!(cert.revalidate(&u, &beta).unwrap());
                    assert_eq!(cert.slope.denom() % 2, 0);
                    linked += 1;
                }
            }
        }
    }
    assert!(linked > 0);
}

#[test]
fn arboreal_certificates_and_oracles() {
    let mut r = rng(52);
    let f = Field::prime(3).unwrap();
    let mut cases: Vec<(Frac, Frac)> = vec![(Frac::t(&f), Frac::zero(&f))];
    while cases.len() < 6 {
        let c = Frac::from_poly(nonzero_polyq(&f, &mut r, 2));
        if !c.is_constant() {
            cases.push((c, Frac::constant(&f, elem(&f, &mut r))));
        }
    }
    let mut certified = 0;
    for (c, beta) in cases {
        let u = UnicriticalMap::new(2, c.clone()).unwrap();
        let phi = u.to_ratmap();
        let Ok(rep) = zram_scan(&u, &beta, 3, 2, 4096) else { continue };
        let z = zsigmondy_scan(&phi, &Frac::zero(&f), &beta, &[2], 3, DEFAULT_ZSIG_BUDGET).unwrap();
        for row in &rep.rows {
            let Some(cert) = &row.certificate else { continue };
            assert!(cert.revalidate(&u, &beta).unwrap());
            let lu = row.lemma_u.as_ref().unwrap();
            assert!(lu.certified);
            assert_eq!(lu.disc_valuation, Some(0));
            let entry = &z.entries[row.n - 1];
            let flag = entry.support.iter().find(|fl| fl.place == cert.place).unwrap();
            assert!(flag.primitive_ell.contains(&(2, true)));
            certified += 1;
        }
        // every certified instance of the unramified criterion passes the discriminant oracle
        for pl in [Place::Infinity, Place::Finite(PolyQ::var(&f)), Place::Finite(PolyQ::from_ints(&f, &[1, 1]))] {
            for n in 0..=3 {
                let lu = lemma_u_check(&u, &beta, &pl, n);
                if lu.certified {
                    assert_eq!(lu.disc_valuation, Some(0), "c={c:?} beta={beta:?} n={n}");
                }
            }
        }
        let tower = degree_tower(&u, &beta, 3, DEFAULT_FACTOR_BUDGET).unwrap();
        for row in tower {
            if let (Some(ex), Some(degs)) = (row.exact, &row.factor_degrees) {
                if degs.len() == 1 {
                    assert_eq!(ex % row.polygon_bound, 0);
                    assert_eq!(ex % row.certified_bound, 0);
                }
            }
        }
    }
    assert!(certified >= 3);
}

#[test]
fn ramified_sum_bounded_by_height() {
    let mut r = rng(53);
    let f = Field::prime(3).unwrap();
    let curves = [
        SuperellipticCurve::new(2, KPoly::new(&f, vec![Frac::t(&f), Frac::one(&f), Frac::zero(&f), Frac::one(&f)])).unwrap(),
        SuperellipticCurve::new(5, KPoly::new(&f, vec![Frac::one(&f), Frac::t(&f), Frac::zero(&f), Frac::zero(&f), Frac::one(&f)])).unwrap(),
    ];
    let s: PlaceSet = [Place::Infinity].into_iter().collect();
    for c in &curves {
        for _ in 0..100 {
            let a = Frac::from_poly(polyq(&f, &mut r, 6));
            if c.poly().eval(&a).is_zero() {
                continue;
            }
            let rs = ramified_sum(c, &a, &s).unwrap();
            assert!(rs.weighted <= rs.height_value);
            assert!(rs.sum <= rs.weighted);
        }
    }
}

#[test]
fn genus_formula_agreement() {
    for m in 3..=30 {
        assert_eq!(genus_formula(2, m), (m - 1) / 2);
    }
    assert_eq!(genus_formula(3, 4), 3);
}
