mod common;

use common::*;
use ffdyn_core::funcfield::{kpoly_factor, valuation, Field, Frac, Place, PolyQ, P1, DEFAULT_FACTOR_BUDGET};
use ffdyn_core::funcfield::residue::Residue;
use ffdyn_core::ratmap::{RatMap, DEFAULT_DEGREE_BUDGET};
use ffdyn_core::reduction::{cross_ratio, newton_polygon, noniso_set_witness, reduction_type};
use ffdyn_core::text::parse_place;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn newton_polygon_soundness() {
    let mut r = rng(31);
    for f in fields() {
        for _ in 0..100 {
            let d = r.random_range(1..=7);
            let g = kpoly(&f, &mut r, d, 4);
            let pl = place(&f, &mut r, 2);
            let np = newton_polygon(&g, &pl).unwrap();
            let len: usize = np.slopes.iter().map(|(_, l)| l).sum();
            assert_eq!(len + np.zero_roots, g.deg0());
            for w in np.slopes.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
            if !g.coeff(0).is_zero() {
                let sum: Rational64 = np.root_valuations().iter().map(|(v, l)| *v * Rational64::from(*l as i64)).sum();
                let want = valuation(&g.coeff(0), &pl).unwrap() - valuation(&g.lead(), &pl).unwrap();
                assert_eq!(sum, Rational64::from(want));
            }
        }
    }
}

fn distinct4(f: &Field, r: &mut rand::rngs::StdRng, constant: bool) -> [P1; 4] {
    loop {
        let pts: Vec<P1> = (0..4)
            .map(|_| match constant {
                // infinity is a constant point too, and keeps q = 3 usable
                true if r.random_range(0..=f.order()) == 0 => P1::Infinity,
                true => P1::Finite(Frac::constant(f, elem(f, r))),
                false => point(f, r, 3),
            })
            .collect();
        if (0..4).all(|i| (i + 1..4).all(|j| pts[i] != pts[j])) {
            return [pts[0].clone(), pts[1].clone(), pts[2].clone(), pts[3].clone()];
        }
    }
}

fn affine(p: &P1, a: &Frac, b: &Frac) -> P1 {
    match p {
        P1::Infinity => P1::Infinity,
        P1::Finite(z) => P1::Finite(a.mul_frac(z).add_frac(b)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cross_ratio_invariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fs = fields();
        let f = &fs[r.random_range(0..fs.len())];
        let [x1, x2, y1, y2] = distinct4(f, &mut r, false);
        let pl = place(f, &mut r, 2);
        let base = cross_ratio(&x1, &x2, &y1, &y2, &pl).unwrap();
        prop_assert_eq!(base.log_ratio, -base.comparison);
        let a = nonzero_frac(f, &mut r, 3);
        let b = frac(f, &mut r, 3);
        let m = |p: &P1| affine(p, &a, &b);
        prop_assert_eq!(cross_ratio(&m(&x1), &m(&x2), &m(&y1), &m(&y2), &pl).unwrap(), base);
        let i = |p: &P1| p.reciprocal(f);
        prop_assert_eq!(cross_ratio(&i(&x1), &i(&x2), &i(&y1), &i(&y2), &pl).unwrap(), base);
    }

    #[test]
    fn cross_ratio_trivial_on_constants(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fs = fields();
        let f = &fs[r.random_range(1..fs.len())];
        let [x1, x2, y1, y2] = distinct4(f, &mut r, true);
        let pl = place(f, &mut r, 3);
        prop_assert_eq!(cross_ratio(&x1, &x2, &y1, &y2, &pl).unwrap().comparison, 0);
    }
}

fn p1_points(res: &Residue) -> Vec<Option<PolyQ>> {
    let mut v: Vec<Option<PolyQ>> = res.elements().into_iter().map(Some).collect();
    v.push(None);
    v
}

#[test]
fn good_reduction_composes() {
    let mut r = rng(33);
    for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::new(2, 2, None).unwrap()] {
        for _ in 0..10 {
            let phi = ratmap(&f, &mut r, 2, 1);
            let phi2 = phi.compose(&phi).unwrap();
            for _ in 0..4 {
                let pl = place(&f, &mut r, 2);
                let red = reduction_type(&phi, &pl);
                if !red.good {
                    continue;
                }
                let red2 = reduction_type(&phi2, &pl);
                assert!(red2.good, "{phi} at {pl:?}");
                let (a, b) = (red.reduced.unwrap(), red2.reduced.unwrap());
                assert_eq!(b.degree(), a.degree() * a.degree());
                for x in p1_points(a.residue()) {
                    assert_eq!(b.evaluate(&x), a.evaluate(&a.evaluate(&x)));
                }
            }
        }
    }
}

#[test]
fn witnesses_revalidate() {
    let cases = [(3, "z^2+t", "0"), (5, "z^2+t", "0"), (5, "z^3+t", "1"), (3, "z^2+t^2+1", "t")];
    for (p, m, b) in cases {
        let f = Field::prime(p).unwrap();
        let phi = RatMap::parse(&f, m).unwrap();
        let beta = ffdyn_core::text::parse_frac(&f, b).unwrap();
        let rep = noniso_set_witness(&phi, &beta, 3, None, DEFAULT_DEGREE_BUDGET).unwrap();
        if let Some(w) = rep.witness {
            assert!(w.revalidate(DEFAULT_DEGREE_BUDGET).unwrap());
            assert!(w.comparison > Rational64::from(0));
        }
    }
}

#[test]
fn witness_agrees_with_explicit_cross_ratio() {
    // roots 0, 1, t, t^2 are K-rational, so every ordered quadruple can be tested directly
    let f = Field::prime(5).unwrap();
    let phi = RatMap::parse(&f, "z*(z-1)*(z-t)*(z-t^2)").unwrap();
    let zero = Frac::zero(&f);
    let pl = [parse_place(&f, "t").unwrap(), parse_place(&f, "t-1").unwrap(), Place::Infinity];
    let rep = noniso_set_witness(&phi, &zero, 1, Some(&pl), DEFAULT_DEGREE_BUDGET).unwrap();
    let w = rep.witness.expect("witness");
    assert!(w.revalidate(DEFAULT_DEGREE_BUDGET).unwrap());
    let facs = kpoly_factor(&w.set_poly, DEFAULT_FACTOR_BUDGET).unwrap();
    let roots: Vec<P1> = facs.iter().map(|(g, _)| P1::Finite(g.coeff(0).neg_frac())).collect();
    assert!(facs.iter().all(|(g, _)| g.deg0() == 1));
    let mut best = i64::MIN;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if [a, b, c, d].iter().collect::<std::collections::BTreeSet<_>>().len() == 4 {
                        best = best.max(cross_ratio(&roots[a], &roots[b], &roots[c], &roots[d], &w.place).unwrap().comparison);
                    }
                }
            }
        }
    }
    assert!(Rational64::from(best) >= w.comparison);
}

#[test]
fn constant_data_has_no_witness() {
    for (p, m) in [(3, "z^2+1"), (5, "z^3+2*z"), (3, "(z^2+1)/(z+2)")] {
        let f = Field::prime(p).unwrap();
        let phi = RatMap::parse(&f, m).unwrap();
        for b in f.elements() {
            let beta = Frac::constant(&f, b);
            let pl = [Place::Infinity, parse_place(&f, "t").unwrap(), parse_place(&f, "t+1").unwrap()];
            match noniso_set_witness(&phi, &beta, 2, Some(&pl), DEFAULT_DEGREE_BUDGET) {
                Ok(rep) => assert!(rep.witness.is_none()),
                Err(e) => assert!(matches!(e, ffdyn_core::error::Error::Precondition(_))),
            }
        }
    }
}
