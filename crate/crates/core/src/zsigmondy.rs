//! Primitive divisors of `f^n(alpha) - beta`, Zsigmondy sets, and the
//! valuation identities along orbits.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::funcfield::field::is_prime;
use crate::funcfield::place::poly_places;
use crate::funcfield::{valuation, Frac, KPoly, Place, P1};
use crate::heights::{canonical_height, is_preperiodic, Preperiodicity, DEFAULT_HEIGHT_BUDGET, DEFAULT_ORBIT_BUDGET};
use crate::ratmap::RatMap;

/// Default cap on `deg_t` of the numerator of `b_n`.
pub const DEFAULT_ZSIG_BUDGET: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceFlag {
    pub place: Place,
    pub valuation: i64,
    pub local_degree: u32,
    pub primitive: bool,
    /// `(ell, primitive ell-divisor)` for every requested `ell`.
    pub primitive_ell: Vec<(u64, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportEntry {
    pub n: usize,
    pub b_n: Frac,
    pub support: Vec<PlaceFlag>,
}

impl SupportEntry {
    pub fn has_primitive(&self) -> bool {
        self.support.iter().any(|p| p.primitive)
    }

    pub fn has_primitive_ell(&self, ell: u64) -> bool {
        self.support
            .iter()
            .any(|p| p.primitive_ell.iter().any(|&(l, b)| l == ell && b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// `b_n` exceeded the degree budget.
    Degree { n: usize, degree: u64 },
    /// `b_n = 0`.
    BetaInOrbit { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    pub beta_in_orbit: Option<usize>,
    pub alpha_preperiodic: Option<bool>,
    pub constant_coefficients: bool,
}

#[derive(Clone, Debug)]
pub struct ZsigmondyReport {
    pub map: RatMap,
    pub alpha: Frac,
    pub beta: Frac,
    pub ells: Vec<u64>,
    pub bound: usize,
    pub entries: Vec<SupportEntry>,
    /// `Z` within the scanned range.
    pub z: Vec<usize>,
    /// `(ell, Z_ell)` within the scanned range.
    pub z_ell: Vec<(u64, Vec<usize>)>,
    pub hypotheses: Hypotheses,
    pub truncated: Option<Truncation>,
}

fn check_poly_map(f: &RatMap) -> Result<()> {
    if !f.is_polynomial() || f.degree() < 2 {
        return Err(Error::Precondition("need a polynomial of degree at least 2".into()));
    }
    Ok(())
}

/// Positive part of the divisor of `b`, places in order.
fn positive_support(b: &Frac) -> Result<Vec<(Place, i64)>> {
    let mut out: Vec<(Place, i64)> = poly_places(b.num())?
        .into_iter()
        .map(|(pl, m)| (pl, m as i64))
        .collect();
    let vinf = valuation(b, &Place::Infinity).unwrap();
    if vinf > 0 {
        out.push((Place::Infinity, vinf));
    }
    out.sort();
    Ok(out)
}

pub fn zsigmondy_scan(f: &RatMap, alpha: &Frac, beta: &Frac, ells: &[u64], bound: usize, budget: u64) -> Result<ZsigmondyReport> {
    check_poly_map(f)?;
    let p = f.field().characteristic() as u64;
    for &l in ells {
        if !is_prime(l) || l == p {
            return Err(Error::Precondition(alloc::format!("ell = {l} must be a prime different from p")));
        }
    }
    let pre = match is_preperiodic(f, &P1::Finite(alpha.clone()), DEFAULT_ORBIT_BUDGET) {
        Ok(Preperiodicity::Preperiodic { .. }) => Some(true),
        Ok(Preperiodicity::Wandering { .. }) => Some(false),
        Err(Error::Budget { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut hyp = Hypotheses { beta_in_orbit: None, alpha_preperiodic: pre, constant_coefficients: f.has_constant_coeffs() };
    let mut cache: Vec<Frac> = Vec::new();
    let mut entries = Vec::new();
    let mut truncated = None;
    let mut w = alpha.clone();
    for n in 1..=bound {
        w = match f.evaluate(&P1::Finite(w)) {
            P1::Finite(x) => x,
            P1::Infinity => unreachable!("polynomial maps send K to K"),
        };
        let b = w.sub_frac(beta);
        if b.is_zero() {
            hyp.beta_in_orbit = Some(n);
            truncated = Some(Truncation::BetaInOrbit { n });
            break;
        }
        let degree = b.num().deg0() as u64;
        if degree > budget {
            truncated = Some(Truncation::Degree { n, degree });
            break;
        }
        let mut support = Vec::new();
        for (pl, v) in positive_support(&b)? {
            let primitive = cache.iter().all(|bm| valuation(bm, &pl).is_some_and(|u| u <= 0));
            let primitive_ell = ells.iter().map(|&l| (l, primitive && v % l as i64 != 0)).collect();
            support.push(PlaceFlag { local_degree: pl.local_degree(), place: pl, valuation: v, primitive, primitive_ell });
        }
        cache.push(b.clone());
        entries.push(SupportEntry { n, b_n: b, support });
    }
    let z = entries.iter().filter(|e| !e.has_primitive()).map(|e| e.n).collect();
    let z_ell = ells
        .iter()
        .map(|&l| (l, entries.iter().filter(|e| !e.has_primitive_ell(l)).map(|e| e.n).collect()))
        .collect();
    Ok(ZsigmondyReport {
        map: f.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        ells: ells.to_vec(),
        bound,
        entries,
        z,
        z_ell,
        hypotheses: hyp,
        truncated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransferStatus {
    Holds,
    Fails,
    /// `v_p(f^n(alpha) - gamma) <= 0`: the identity says nothing.
    NotApplicable,
    /// `p` is in the exceptional set.
    Excluded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferCheck {
    pub e: u64,
    /// `v_p(f^{n+r}(alpha) - beta)`, `None` for `+inf`.
    pub lhs: Option<i64>,
    /// `e * v_p(f^n(alpha) - gamma)`.
    pub rhs: Option<i64>,
    pub exceptional: Vec<Place>,
    pub status: TransferStatus,
}

/// Places outside of which `v(f^r(w) - beta) = e v(w - gamma)` whenever
/// `v(w - gamma) > 0`: write `f^r(z) - beta = (z - gamma)^e h(z)` and collect
/// the places where `gamma` or a coefficient of `h` is non-integral, or
/// `h(gamma)` is not a unit.
pub fn transfer_exceptional_places(f: &RatMap, gamma: &Frac, beta: &Frac, r: usize, e: u64) -> Result<Vec<Place>> {
    let it = f.iterate_map(r, crate::ratmap::DEFAULT_DEGREE_BUDGET)?;
    let g = it.num().sub_poly(&KPoly::constant(beta.clone()));
    let h = g
        .exact_div(&KPoly::linear(gamma).pow(e))
        .ok_or_else(|| Error::Precondition("gamma is not a root of multiplicity e".into()))?;
    let mut out = alloc::collections::BTreeSet::new();
    let add_den = |z: &Frac, out: &mut alloc::collections::BTreeSet<Place>| -> Result<()> {
        if z.is_zero() {
            return Ok(());
        }
        out.extend(poly_places(z.den())?.into_iter().map(|(pl, _)| pl));
        if valuation(z, &Place::Infinity).unwrap() < 0 {
            out.insert(Place::Infinity);
        }
        Ok(())
    };
    add_den(gamma, &mut out)?;
    for c in h.coeffs() {
        add_den(c, &mut out)?;
    }
    let hg = h.eval(gamma);
    out.extend(poly_places(hg.num())?.into_iter().map(|(pl, _)| pl));
    out.extend(poly_places(hg.den())?.into_iter().map(|(pl, _)| pl));
    if valuation(&hg, &Place::Infinity) != Some(0) {
        out.insert(Place::Infinity);
    }
    Ok(out.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
pub fn valuation_transfer_check(f: &RatMap, alpha: &Frac, gamma: &Frac, beta: &Frac, r: usize, place: &Place, n: usize) -> Result<TransferCheck> {
    check_poly_map(f)?;
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    let g1 = P1::Finite(gamma.clone());
    if f.iterate_point(&g1, r) != P1::Finite(beta.clone()) {
        return Err(Error::Precondition("f^r(gamma) != beta".into()));
    }
    let e = f.iterate_map(r, crate::ratmap::DEFAULT_DEGREE_BUDGET)?.ram_index(&g1);
    let exceptional = transfer_exceptional_places(f, gamma, beta, r, e)?;
    let a = P1::Finite(alpha.clone());
    let fin = |z: P1| match z {
        P1::Finite(x) => x,
        P1::Infinity => unreachable!(),
    };
    let wn = fin(f.iterate_point(&a, n));
    let wnr = fin(f.iterate_point(&a, n + r));
    let lhs = valuation(&wnr.sub_frac(beta), place);
    let base = valuation(&wn.sub_frac(gamma), place);
    let rhs = base.map(|v| v * e as i64);
    let status = if exceptional.contains(place) {
        TransferStatus::Excluded
    } else if base.is_some_and(|v| v <= 0) {
        TransferStatus::NotApplicable
    } else if lhs == rhs {
        TransferStatus::Holds
    } else {
        TransferStatus::Fails
    };
    Ok(TransferCheck { e, lhs, rhs, exceptional, status })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRow {
    pub n: usize,
    /// `sum N_p` over `X(n)`.
    pub weight: u64,
    pub places: Vec<Place>,
    /// `weight / (d^n hhat(alpha))`, absent when the height vanishes.
    pub ratio: Option<BigRational>,
}

/// Finite places with `v(f^m(alpha) - g1) > 0` and `v(f^n(alpha) - g2) > 0`
/// for some `0 < m < n`, for `n = 2..=bound`.
pub fn shared_support_density(f: &RatMap, alpha: &Frac, g1: &Frac, g2: &Frac, bound: usize, budget: u64) -> Result<Vec<DensityRow>> {
    check_poly_map(f)?;
    let a = P1::Finite(alpha.clone());
    let eps = BigRational::new(BigInt::from(1), BigInt::from(1 << 10));
    let hh = canonical_height(f, &a, &eps, DEFAULT_HEIGHT_BUDGET)?.value;
    let d = BigInt::from(f.degree());
    let mut orbit: Vec<Frac> = Vec::new();
    let mut w = alpha.clone();
    let mut rows = Vec::new();
    for n in 1..=bound {
        w = match f.evaluate(&P1::Finite(w)) {
            P1::Finite(x) => x,
            P1::Infinity => unreachable!(),
        };
        if n >= 2 {
            let b = w.sub_frac(g2);
            if b.is_zero() {
                return Err(Error::Precondition("g2 lies in the orbit of alpha".into()));
            }
            if b.num().deg0() as u64 > budget {
                return Err(Error::Budget { what: "orbit degree", value: b.num().deg0() as u64, limit: budget });
            }
            let mut places = Vec::new();
            for (pl, _) in poly_places(b.num())? {
                let shared = orbit
                    .iter()
                    .any(|wm| valuation(&wm.sub_frac(g1), &pl).is_none_or(|v| v > 0));
                if shared {
                    places.push(pl);
                }
            }
            let weight: u64 = places.iter().map(|p| p.local_degree() as u64).sum();
            let denom = BigRational::from_integer(num_traits::pow(d.clone(), n)) * &hh;
            let ratio = (!denom.is_zero()).then(|| BigRational::from_integer(BigInt::from(weight)) / denom);
            rows.push(DensityRow { n, weight, places, ratio });
        }
        orbit.push(w.clone());
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::funcfield::{Field, PolyQ};
    use crate::text::{parse_frac, parse_place};

    fn map(f: &Field, s: &str) -> RatMap {
        RatMap::parse(f, s).unwrap()
    }

    #[test]
    fn quadratic_scan() {
        let f = Field::prime(3).unwrap();
        let zero = Frac::zero(&f);
        let rep = zsigmondy_scan(&map(&f, "z^2+t"), &zero, &zero, &[2], 3, DEFAULT_ZSIG_BUDGET).unwrap();
        let prim: Vec<Vec<Place>> = rep
            .entries
            .iter()
            .map(|e| e.support.iter().filter(|p| p.primitive).map(|p| p.place.clone()).collect())
            .collect();
        let pl = |s: &str| parse_place(&f, s).unwrap();
        assert_eq!(prim, vec![vec![pl("t")], vec![pl("t+1")], vec![pl("t^3+2*t^2+t+1")]]);
        assert!(rep.z.is_empty());
        assert_eq!(rep.z_ell, vec![(2, vec![])]);
        assert_eq!(rep.entries[2].b_n, parse_frac(&f, "t*(t^3+2*t^2+t+1)").unwrap());
        assert_eq!(rep.hypotheses.alpha_preperiodic, Some(false));
    }

    #[test]
    fn isotrivial_scan() {
        let f = Field::prime(3).unwrap();
        let rep = zsigmondy_scan(&map(&f, "z^2"), &Frac::t(&f), &Frac::zero(&f), &[2], 5, DEFAULT_ZSIG_BUDGET).unwrap();
        assert_eq!(rep.z, vec![2, 3, 4, 5]);
        assert!(rep.hypotheses.constant_coefficients);
        assert_eq!(rep.entries[0].support[0].valuation, 2);
        // v = 2 at n = 1, so even n = 1 has no primitive 2-divisor
        assert_eq!(rep.z_ell[0].1, vec![1, 2, 3, 4, 5]);
        let empty = zsigmondy_scan(&map(&f, "z^2"), &Frac::t(&f), &Frac::zero(&f), &[2], 0, DEFAULT_ZSIG_BUDGET).unwrap();
        assert!(empty.entries.is_empty());
    }

    #[test]
    fn bad_ell_rejected() {
        let f = Field::prime(3).unwrap();
        let zero = Frac::zero(&f);
        assert!(zsigmondy_scan(&map(&f, "z^2+t"), &zero, &zero, &[3], 3, 64).is_err());
        assert!(zsigmondy_scan(&map(&f, "z^2+t"), &zero, &zero, &[4], 3, 64).is_err());
    }

    #[test]
    fn transfer_identity() {
        let f = Field::prime(3).unwrap();
        let sq = map(&f, "z^2");
        let zero = Frac::zero(&f);
        let alpha = parse_frac(&f, "t+1").unwrap();
        let tp1 = Place::Finite(PolyQ::from_ints(&f, &[1, 1]));
        let c = valuation_transfer_check(&sq, &alpha, &zero, &zero, 1, &tp1, 2).unwrap();
        assert_eq!(c.e, 2);
        assert_eq!(c.status, TransferStatus::Holds);
        assert_eq!(c.lhs, Some(8));
        // z^2 + t with beta = t, gamma = 0, r = 1
        let phi = map(&f, "z^2+t");
        let t = Frac::t(&f);
        let c = valuation_transfer_check(&phi, &zero, &zero, &t, 1, &Place::Finite(PolyQ::var(&f)), 1).unwrap();
        assert_eq!(c.status, TransferStatus::Holds);
        assert_eq!(c.rhs, Some(2));
        assert!(valuation_transfer_check(&phi, &zero, &zero, &zero, 1, &tp1, 1).is_err());
    }

    #[test]
    fn density_rows() {
        let f = Field::prime(3).unwrap();
        let phi = map(&f, "z^2+t");
        let zero = Frac::zero(&f);
        let one = Frac::one(&f);
        assert!(shared_support_density(&phi, &zero, &zero, &one, 1, 4096).unwrap().is_empty());
        let rows = shared_support_density(&phi, &zero, &zero, &one, 6, 4096).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.ratio.is_some()));
    }
}
