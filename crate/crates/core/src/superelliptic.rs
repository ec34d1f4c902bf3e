//! Curves `y^l = F(x)` with `l != p`: genus, the non-isotriviality verdict
//! from cross-ratio witnesses, and ramified-place sums at integral points.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::funcfield::field::is_prime;
use crate::funcfield::kfactor::associates;
use crate::funcfield::place::poly_places;
use crate::funcfield::{valuation, Frac, KPoly, Place, P1};
use crate::integrality::{is_s_integral, DivisorSpec, PlaceSet};
use crate::reduction::WitnessReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperellipticCurve {
    ell: u64,
    f: KPoly,
    genus: u64,
}

impl SuperellipticCurve {
    pub fn new(ell: u64, f: KPoly) -> Result<SuperellipticCurve> {
        let p = f.field().characteristic() as u64;
        if !is_prime(ell) || ell == p {
            return Err(Error::Precondition(alloc::format!("ell = {ell} must be a prime different from p")));
        }
        if f.deg0() == 0 {
            return Err(Error::Precondition("F must be nonconstant".into()));
        }
        if f.gcd(&f.derivative()).deg0() != 0 {
            return Err(Error::Precondition("F must be squarefree and separable".into()));
        }
        let genus = genus_formula(ell, f.deg0() as u64);
        Ok(SuperellipticCurve { ell, f, genus })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn poly(&self) -> &KPoly {
        &self.f
    }

    pub fn degree(&self) -> u64 {
        self.f.deg0() as u64
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// `(l - 1)^2 < g`.
    pub fn uniqueness_bound_ok(&self) -> bool {
        uniqueness_bound(self.ell, self.genus)
    }

    /// `g >= (l - 1)(m/2 - 1)`, as `2g >= (l - 1)(m - 2)`.
    pub fn genus_lower_bound_ok(&self) -> bool {
        2 * self.genus as i64 >= (self.ell as i64 - 1) * (self.degree() as i64 - 2)
    }
}

/// Tame Kummer cover of degree `l` branched over the `m` roots and, when
/// `l` does not divide `m`, over infinity:
/// `2g - 2 = -2l + m(l - 1) + (l - gcd(l, m))`.
pub fn genus_formula(ell: u64, m: u64) -> u64 {
    let two_g = -2 * ell as i64 + m as i64 * (ell as i64 - 1) + (ell - ell.gcd(&m)) as i64 + 2;
    (two_g.max(0) / 2) as u64
}

pub fn uniqueness_bound(ell: u64, genus: u64) -> bool {
    (ell - 1) * (ell - 1) < genus
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveVerdict {
    NonIsotrivialCertified,
    Undetermined(&'static str),
}

/// One-sided verdict; there is no isotrivial outcome.
pub fn noniso_curve_verdict(curve: &SuperellipticCurve, witness: &WitnessReport) -> Result<CurveVerdict> {
    let Some(w) = &witness.witness else {
        return Ok(CurveVerdict::Undetermined("no cross-ratio witness"));
    };
    if !associates(&w.set_poly, &curve.f) {
        return Err(Error::Precondition("witness does not concern the roots of F".into()));
    }
    let (l, m) = (curve.ell as i64, curve.degree() as i64);
    if 2 * (l - 1) >= m - 2 {
        return Ok(CurveVerdict::Undetermined("l - 1 < deg F / 2 - 1 fails"));
    }
    Ok(CurveVerdict::NonIsotrivialCertified)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedSum {
    pub value: Frac,
    /// `(place, v_p(F(a)))` with `v > 0` and `l` not dividing `v`.
    pub places: Vec<(Place, i64)>,
    pub sum: u64,
    pub height_a: u64,
    /// `sum v_p N_p` over the flagged places, bounded by `h(F(a))`.
    pub weighted: u64,
    pub height_value: u64,
}

pub fn ramified_sum(curve: &SuperellipticCurve, a: &Frac, s: &PlaceSet) -> Result<RamifiedSum> {
    let field = a.field();
    if !is_s_integral(&P1::Finite(a.clone()), &DivisorSpec::point(field, &P1::Infinity), s)? {
        return Err(Error::NotIntegral(alloc::format!("{} is not S-integral", crate::text::format_frac(a))));
    }
    let value = curve.f.eval(a);
    if value.is_zero() {
        return Err(Error::Precondition("a is a root of F".into()));
    }
    let mut places: Vec<(Place, i64)> = poly_places(value.num())?
        .into_iter()
        .map(|(pl, m)| (pl, m as i64))
        .collect();
    let vinf = valuation(&value, &Place::Infinity).unwrap();
    if vinf > 0 {
        places.insert(0, (Place::Infinity, vinf));
    }
    places.retain(|(_, v)| v % curve.ell as i64 != 0);
    let sum = places.iter().map(|(p, _)| p.local_degree() as u64).sum();
    let weighted = places.iter().map(|(p, v)| *v as u64 * p.local_degree() as u64).sum();
    Ok(RamifiedSum { height_a: a.height(), height_value: value.height(), value, places, sum, weighted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Field;
    use crate::ratmap::{RatMap, DEFAULT_DEGREE_BUDGET};
    use crate::reduction::{noniso_set_witness, noniso_set_witness_at};
    use crate::text::{parse_frac, parse_kpoly, parse_place};

    #[test]
    fn genus_examples() {
        assert_eq!(genus_formula(2, 5), 2);
        assert_eq!(genus_formula(2, 6), 2);
        assert_eq!(genus_formula(3, 4), 3);
        for m in 3..=30 {
            assert_eq!(genus_formula(2, m), (m - 1) / 2);
        }
    }

    #[test]
    fn uniqueness_examples() {
        assert!(uniqueness_bound(2, 2));
        assert!(!uniqueness_bound(3, 4));
        assert!(!uniqueness_bound(2, 1));
    }

    #[test]
    fn curve_checks() {
        let f = Field::prime(3).unwrap();
        assert!(SuperellipticCurve::new(3, parse_kpoly(&f, "x^5+t*x+1").unwrap()).is_err());
        assert!(SuperellipticCurve::new(2, parse_kpoly(&f, "(x-t)^2*(x+1)").unwrap()).is_err());
        let c = SuperellipticCurve::new(2, parse_kpoly(&f, "x^5+t*x+1").unwrap()).unwrap();
        assert_eq!(c.genus(), 2);
        assert!(c.genus_lower_bound_ok());
    }

    #[test]
    fn verdicts() {
        let f = Field::prime(3).unwrap();
        let phi = RatMap::parse(&f, "z^2+t").unwrap();
        let zero = Frac::zero(&f);
        let pl = [parse_place(&f, "t+1").unwrap()];
        let rep = noniso_set_witness(&phi, &zero, 2, Some(&pl), DEFAULT_DEGREE_BUDGET).unwrap();
        let w = rep.witness.as_ref().unwrap();
        let c = SuperellipticCurve::new(2, w.set_poly.clone()).unwrap();
        assert_eq!(noniso_curve_verdict(&c, &rep).unwrap(), CurveVerdict::Undetermined("l - 1 < deg F / 2 - 1 fails"));
        let other = SuperellipticCurve::new(2, parse_kpoly(&f, "x^5+t*x+1").unwrap()).unwrap();
        assert!(noniso_curve_verdict(&other, &rep).is_err());
        let rep4 = noniso_set_witness(&phi, &zero, 4, Some(&pl), DEFAULT_DEGREE_BUDGET).unwrap();
        let (_, f4) = phi.iterate_poly(4, &P1::Finite(zero.clone()), DEFAULT_DEGREE_BUDGET).unwrap();
        let c16 = SuperellipticCurve::new(2, f4).unwrap();
        assert_eq!(c16.degree(), 16);
        // the first witness is at level 2, so it does not concern the level-4 roots
        assert!(noniso_curve_verdict(&c16, &rep4).is_err());
        let at4 = noniso_set_witness_at(&phi, &zero, 4, Some(&pl), DEFAULT_DEGREE_BUDGET).unwrap();
        assert_eq!(noniso_curve_verdict(&c16, &at4).unwrap(), CurveVerdict::NonIsotrivialCertified);
    }

    #[test]
    fn ramified_sum_example() {
        let f = Field::prime(3).unwrap();
        let c = SuperellipticCurve::new(2, parse_kpoly(&f, "x^2-t").unwrap()).unwrap();
        let s: PlaceSet = [Place::Infinity].into_iter().collect();
        let r = ramified_sum(&c, &Frac::t(&f), &s).unwrap();
        assert_eq!((r.sum, r.height_a), (2, 1));
        assert!(r.weighted <= r.height_value);
        // F(a) = t^2 - t + ... a square: a = t + 1 over F_3 gives t^2 + 2t + 1 - t = t^2 + t + 1 = (t - 1)^2
        let r = ramified_sum(&c, &parse_frac(&f, "t+1").unwrap(), &s).unwrap();
        assert_eq!(r.sum, 0);
        assert!(ramified_sum(&c, &parse_frac(&f, "1/t").unwrap(), &s).is_err());
    }
}
