//! Unicritical polynomials `x^d + c`: unramified and ramified places in the
//! preimage tower, degree growth, and the finite-index conditions.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use crate::error::{Error, Result};
use crate::funcfield::field::is_prime;
use crate::funcfield::place::poly_places;
use crate::funcfield::{discriminant, kpoly_factor, valuation, Field, Frac, KPoly, Place};
use crate::ratmap::RatMap;
use crate::reduction::newton_polygon;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicriticalMap {
    d: u64,
    c: Frac,
}

impl UnicriticalMap {
    pub fn new(d: u64, c: Frac) -> Result<UnicriticalMap> {
        let p = c.field().characteristic() as u64;
        if d < 2 || d % p == 0 {
            return Err(Error::Precondition(alloc::format!("need d >= 2 prime to p, got d = {d}")));
        }
        Ok(UnicriticalMap { d, c })
    }

    /// Recognizes `x^d + c` among polynomial maps.
    pub fn from_ratmap(phi: &RatMap) -> Result<UnicriticalMap> {
        let d = phi.degree() as usize;
        let n = phi.num();
        let ok = phi.is_polynomial() && n.lead().is_one() && (1..d).all(|i| n.coeff(i).is_zero());
        if !ok {
            return Err(Error::Precondition("map is not of the form x^d + c".into()));
        }
        UnicriticalMap::new(d as u64, n.coeff(0))
    }

    pub fn field(&self) -> &Field {
        self.c.field()
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    pub fn c(&self) -> &Frac {
        &self.c
    }

    pub fn is_isotrivial(&self) -> bool {
        self.c.is_constant()
    }

    pub fn to_ratmap(&self) -> RatMap {
        let f = self.field();
        let num = KPoly::x(f).pow(self.d).add_poly(&KPoly::constant(self.c.clone()));
        RatMap::polynomial(num).expect("degree at least 2")
    }

    /// `hhat(0) = h(c) / d`.
    pub fn critical_height(&self) -> BigRational {
        BigRational::new(BigInt::from(self.c.height()), BigInt::from(self.d))
    }

    pub fn apply(&self, z: &Frac) -> Frac {
        z.pow(self.d).add_frac(&self.c)
    }

    /// `[f^1(0), ..., f^n(0)]`.
    pub fn critical_orbit(&self, n: usize) -> Vec<Frac> {
        let mut out = Vec::with_capacity(n);
        let mut w = Frac::zero(self.field());
        for _ in 0..n {
            w = self.apply(&w);
            out.push(w.clone());
        }
        out
    }

    /// `f^n(x) - beta`.
    pub fn preimage_poly(&self, n: usize, beta: &Frac) -> KPoly {
        let f = self.field();
        let mut g = KPoly::x(f);
        let c = KPoly::constant(self.c.clone());
        for _ in 0..n {
            g = g.pow(self.d).add_poly(&c);
        }
        g.sub_poly(&KPoly::constant(beta.clone()))
    }
}

fn vge0(z: &Frac, p: &Place) -> bool {
    valuation(z, p).is_none_or(|v| v >= 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaU {
    pub certified: bool,
    /// Failed conditions: `"i"`, `"ii"`, or `"iii:m"`.
    pub failures: Vec<String>,
    /// `v_p(disc(f^n(x) - beta))`, computed when the degree is small.
    pub disc_valuation: Option<i64>,
}

/// Degree cap for the discriminant cross-check.
pub const DISC_ORACLE_DEGREE: u64 = 256;

/// (i) `v(c) >= 0`, (ii) `v(beta) >= 0`, (iii) `v(f^m(0) - beta) = 0` for
/// `1 <= m <= n`; together they keep `p` unramified in `K(f^{-n}(beta))`.
pub fn lemma_u_check(f: &UnicriticalMap, beta: &Frac, place: &Place, n: usize) -> LemmaU {
    let mut failures = Vec::new();
    if !vge0(f.c(), place) {
        failures.push("i".into());
    }
    if !vge0(beta, place) {
        failures.push("ii".into());
    }
    for (i, w) in f.critical_orbit(n).iter().enumerate() {
        if valuation(&w.sub_frac(beta), place) != Some(0) {
            failures.push(alloc::format!("iii:{}", i + 1));
        }
    }
    let disc_valuation = ((f.degree() as u128).pow(n as u32) <= DISC_ORACLE_DEGREE as u128)
        .then(|| valuation(&discriminant(&f.preimage_poly(n, beta)), place))
        .flatten();
    LemmaU { certified: failures.is_empty(), failures, disc_valuation }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamCertificate {
    pub place: Place,
    pub n: usize,
    pub ell: u64,
    pub e: u32,
    /// A slope of the polygon of `f^n(x) - beta` whose denominator is divisible by `ell^e`.
    pub slope: Rational64,
    pub length: usize,
    pub vertices: Vec<(usize, i64)>,
    /// `v_p(f^n(0) - beta)`.
    pub valuation: i64,
}

impl RamCertificate {
    /// Recomputes the polygon and checks the slope claim.
    pub fn revalidate(&self, f: &UnicriticalMap, beta: &Frac) -> Result<bool> {
        let np = newton_polygon(&f.preimage_poly(self.n, beta), &self.place)?;
        let m = self.ell.pow(self.e) as i64;
        Ok(np.vertices == self.vertices
            && np.slopes.iter().any(|&(s, l)| s == self.slope && l == self.length)
            && self.slope.denom() % m == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaR {
    Certificate(RamCertificate),
    Unmet(String),
}

/// Primitive `ell`-divisor test for `f^n(0) - beta` by direct valuations.
pub fn is_primitive_ell_divisor(f: &UnicriticalMap, beta: &Frac, place: &Place, n: usize, ell: u64) -> Option<i64> {
    let orbit = f.critical_orbit(n);
    let v = valuation(&orbit[n - 1].sub_frac(beta), place)?;
    let earlier_ok = orbit[..n - 1]
        .iter()
        .all(|w| valuation(&w.sub_frac(beta), place).is_some_and(|u| u <= 0));
    (v > 0 && v % ell as i64 != 0 && earlier_ok).then_some(v)
}

/// Newton-polygon certificate that `ell^e` divides a ramification index over
/// `p` at level `n`. `v(c), v(beta) >= 0` is required.
pub fn lemma_r_certificate(f: &UnicriticalMap, beta: &Frac, place: &Place, n: usize, ell: u64, e: u32) -> Result<LemmaR> {
    let p = f.field().characteristic() as u64;
    if !is_prime(ell) || ell == p {
        return Err(Error::Precondition(alloc::format!("ell = {ell} must be a prime different from p")));
    }
    if e == 0 || f.degree() % ell.pow(e) != 0 {
        return Err(Error::Precondition("need e >= 1 and ell^e | d".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if !vge0(f.c(), place) || !vge0(beta, place) {
        return Ok(LemmaR::Unmet("c or beta is not integral at p".into()));
    }
    let Some(v) = is_primitive_ell_divisor(f, beta, place, n, ell) else {
        return Ok(LemmaR::Unmet("p is not a primitive ell-divisor of f^n(0) - beta".into()));
    };
    let np = newton_polygon(&f.preimage_poly(n, beta), place)?;
    let m = ell.pow(e) as i64;
    match np.slopes.iter().find(|(s, _)| s.denom() % m == 0) {
        Some(&(slope, length)) => Ok(LemmaR::Certificate(RamCertificate {
            place: place.clone(),
            n,
            ell,
            e,
            slope,
            length,
            vertices: np.vertices.clone(),
            valuation: v,
        })),
        None => Ok(LemmaR::Unmet("no polygon slope with denominator divisible by ell^e".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZramRow {
    pub n: usize,
    pub certificate: Option<RamCertificate>,
    pub lemma_u: Option<LemmaU>,
    /// Primitive `ell`-divisor places examined at this level.
    pub candidates: Vec<Place>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZramReport {
    pub ell: u64,
    pub rows: Vec<ZramRow>,
    pub blocked: Option<String>,
}

/// Largest `e` with `ell^e | d`.
pub fn ell_exponent(d: u64, ell: u64) -> u32 {
    let mut e = 0;
    let mut m = d;
    while m % ell == 0 {
        m /= ell;
        e += 1;
    }
    e
}

/// For each `n <= bound`, a place that ramifies at level `n` but not at `n - 1`.
pub fn zram_scan(f: &UnicriticalMap, beta: &Frac, bound: usize, ell: u64, budget: u64) -> Result<ZramReport> {
    let e = ell_exponent(f.degree(), ell);
    if e == 0 {
        return Err(Error::Precondition("ell must divide d".into()));
    }
    if f.is_isotrivial() {
        return Ok(ZramReport { ell, rows: Vec::new(), blocked: Some("c is constant: the map is isotrivial".into()) });
    }
    let orbit = f.critical_orbit(bound);
    let mut rows = Vec::new();
    for n in 1..=bound {
        let b = orbit[n - 1].sub_frac(beta);
        if b.is_zero() {
            return Err(Error::Precondition("beta lies on the critical orbit".into()));
        }
        if b.num().deg0() as u64 > budget {
            return Err(Error::Budget { what: "orbit degree", value: b.num().deg0() as u64, limit: budget });
        }
        let mut cands: Vec<Place> = poly_places(b.num())?.into_iter().map(|(pl, _)| pl).collect();
        cands.retain(|pl| is_primitive_ell_divisor(f, beta, pl, n, ell).is_some());
        let mut row = ZramRow { n, certificate: None, lemma_u: None, candidates: cands.clone() };
        for pl in &cands {
            let u = lemma_u_check(f, beta, pl, n - 1);
            if !u.certified {
                continue;
            }
            if let LemmaR::Certificate(c) = lemma_r_certificate(f, beta, pl, n, ell, e)? {
                row.certificate = Some(c);
                row.lemma_u = Some(u);
                break;
            }
        }
        rows.push(row);
    }
    Ok(ZramReport { ell, rows, blocked: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerRow {
    pub n: usize,
    /// Product of the certified `ell^e` up to level `n` (divides the
    /// degree of the splitting field).
    pub certified_bound: u64,
    /// Largest reduced slope denominator of `f^n(x) - beta` at the probed
    /// places (divides the degree of some root field).
    pub polygon_bound: u64,
    pub polygon_place: Option<Place>,
    /// Irreducible factor degrees of `f^n(x) - beta`, when factoring succeeded.
    pub factor_degrees: Option<Vec<usize>>,
    /// `[K(g_n) : K]` for a root `g_n` (largest factor degree).
    pub exact: Option<u64>,
    /// `d [K(g_{n-1}) : K]` divides `[K(g_n) : K]`, when both levels are irreducible.
    pub step_divisible: Option<bool>,
}

pub fn degree_tower(f: &UnicriticalMap, beta: &Frac, bound: usize, budget: u64) -> Result<Vec<TowerRow>> {
    let ells: Vec<u64> = crate::funcfield::field::prime_factors(f.degree());
    let mut cert_places: BTreeSet<Place> = BTreeSet::new();
    let mut certified = vec_of_ones(bound + 1);
    if !f.is_isotrivial() {
        for &l in &ells {
            let rep = zram_scan(f, beta, bound, l, budget)?;
            for row in rep.rows {
                if let Some(c) = row.certificate {
                    certified[row.n] *= l.pow(c.e);
                    cert_places.insert(c.place);
                }
            }
        }
    }
    let mut probe: BTreeSet<Place> = cert_places;
    for z in [f.c(), beta] {
        if !z.is_zero() {
            for p in [z.num(), z.den()] {
                probe.extend(poly_places(p)?.into_iter().map(|(pl, _)| pl));
            }
        }
    }
    probe.insert(Place::Infinity);
    let mut rows = Vec::with_capacity(bound);
    let mut cum = 1u64;
    let mut prev: Option<(u64, bool)> = Some((1, true));
    for n in 1..=bound {
        cum *= certified[n];
        let g = f.preimage_poly(n, beta);
        let mut polygon_bound = 1i64;
        let mut polygon_place = None;
        for pl in &probe {
            for (s, _) in newton_polygon(&g, pl)?.slopes {
                if *s.denom() > polygon_bound {
                    polygon_bound = *s.denom();
                    polygon_place = Some(pl.clone());
                }
            }
        }
        let facs = kpoly_factor(&g, budget).ok();
        let factor_degrees = facs.as_ref().map(|fs| {
            let mut v: Vec<usize> = fs.iter().flat_map(|(h, m)| core::iter::repeat_n(h.deg0(), *m as usize)).collect();
            v.sort_unstable();
            v
        });
        let exact = factor_degrees.as_ref().map(|v| *v.iter().max().unwrap() as u64);
        let irreducible = factor_degrees.as_ref().map(|v| v.len() == 1);
        let step_divisible = match (prev, exact, irreducible) {
            (Some((pd, true)), Some(ex), Some(true)) => Some(ex % (f.degree() * pd) == 0),
            _ => None,
        };
        prev = exact.zip(irreducible);
        rows.push(TowerRow {
            n,
            certified_bound: cum,
            polygon_bound: polygon_bound as u64,
            polygon_place,
            factor_degrees,
            exact,
            step_divisible,
        });
    }
    Ok(rows)
}

fn vec_of_ones(n: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(n);
    v.resize(n, 1);
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinIndexProbe {
    pub place: Place,
    /// Empty when (i)-(iv) all hold; otherwise e.g. `"i"`, `"ii"`,
    /// `"iii:n'"`, `"iv:j:n'"` with `j` the index of the excluding point.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinIndexOutcome {
    pub gamma: Frac,
    pub found: Option<Place>,
    pub probes: Vec<FinIndexProbe>,
}

/// For each `gamma_i`, searches the places dividing `f^n(0) - gamma_i` for
/// one satisfying conditions (i)-(iv). A zero `gamma_j` counts as passing (i).
pub fn finindex_conditions(f: &UnicriticalMap, gammas: &[Frac], n: usize) -> Result<Vec<FinIndexOutcome>> {
    if f.field().characteristic() <= 2 || f.degree() != 2 {
        return Err(Error::Precondition("need p > 2 and a quadratic map".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    for i in 0..gammas.len() {
        for j in i + 1..gammas.len() {
            if gammas[i] == gammas[j] {
                return Err(Error::Precondition("the gamma_i must be distinct".into()));
            }
        }
    }
    let orbit = f.critical_orbit(n);
    let mut out = Vec::new();
    for (i, g) in gammas.iter().enumerate() {
        let b = orbit[n - 1].sub_frac(g);
        if b.is_zero() {
            return Err(Error::Precondition("gamma lies on the critical orbit".into()));
        }
        let mut probes = Vec::new();
        let mut found = None;
        for (pl, _) in poly_places(b.num())? {
            let mut failures: Vec<String> = Vec::new();
            let unit = |z: &Frac| valuation(z, &pl) == Some(0);
            if !unit(f.c()) || !gammas.iter().all(|gj| gj.is_zero() || unit(gj)) {
                failures.push("i".into());
            }
            let v = valuation(&b, &pl).unwrap();
            if v <= 0 || v % 2 == 0 {
                failures.push("ii".into());
            }
            for (k, w) in orbit[..n - 1].iter().enumerate() {
                if !unit(&w.sub_frac(g)) {
                    failures.push(alloc::format!("iii:{}", k + 1));
                }
            }
            for (j, gj) in gammas.iter().enumerate() {
                if j == i {
                    continue;
                }
                for (k, w) in orbit.iter().enumerate() {
                    if !unit(&w.sub_frac(gj)) {
                        failures.push(alloc::format!("iv:{}:{}", j, k + 1));
                    }
                }
            }
            let ok = failures.is_empty();
            probes.push(FinIndexProbe { place: pl.clone(), failures });
            if ok {
                found = Some(pl);
                break;
            }
        }
        out.push(FinIndexOutcome { gamma: g.clone(), found, probes });
    }
    Ok(out)
}

/// Irreducible factor counts of `f^n(x) - beta` for `n = 1..=bound`.
pub fn stability_profile(f: &UnicriticalMap, beta: &Frac, bound: usize, budget: u64) -> Result<Vec<usize>> {
    (1..=bound)
        .map(|n| Ok(kpoly_factor(&f.preimage_poly(n, beta), budget)?.iter().map(|(_, m)| *m as usize).sum()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::kfactor::DEFAULT_FACTOR_BUDGET;
    use crate::text::parse_place;
    use alloc::vec;

    fn quad(f: &Field) -> UnicriticalMap {
        UnicriticalMap::new(2, Frac::t(f)).unwrap()
    }

    #[test]
    fn unramified_examples() {
        let f = Field::prime(3).unwrap();
        let q = quad(&f);
        let zero = Frac::zero(&f);
        let u = lemma_u_check(&q, &zero, &parse_place(&f, "t+2").unwrap(), 2);
        assert!(u.certified);
        assert_eq!(u.disc_valuation, Some(0));
        let u = lemma_u_check(&q, &zero, &parse_place(&f, "t+1").unwrap(), 2);
        assert_eq!(u.failures, vec![String::from("iii:2")]);
        let u = lemma_u_check(&q, &zero, &Place::Infinity, 1);
        assert!(u.failures.contains(&String::from("i")));
    }

    #[test]
    fn ramified_certificate_examples() {
        let f = Field::prime(3).unwrap();
        let q = quad(&f);
        let zero = Frac::zero(&f);
        let LemmaR::Certificate(c) = lemma_r_certificate(&q, &zero, &parse_place(&f, "t+1").unwrap(), 2, 2, 1).unwrap() else {
            panic!("expected a certificate")
        };
        assert_eq!(c.slope, Rational64::new(-1, 2));
        assert_eq!(c.vertices[0], (0, 1));
        assert!(c.revalidate(&q, &zero).unwrap());
        let r = lemma_r_certificate(&q, &zero, &parse_place(&f, "t").unwrap(), 1, 2, 1).unwrap();
        assert!(matches!(r, LemmaR::Certificate(ref c) if c.slope == Rational64::new(-1, 2)));
        let f5 = Field::prime(5).unwrap();
        let q5 = UnicriticalMap::new(4, Frac::t(&f5)).unwrap();
        let z5 = Frac::zero(&f5);
        assert!(lemma_r_certificate(&q5, &z5, &Place::Infinity, 1, 5, 1).is_err());
    }

    #[test]
    fn zram_levels() {
        let f = Field::prime(3).unwrap();
        let q = quad(&f);
        let rep = zram_scan(&q, &Frac::zero(&f), 3, 2, 4096).unwrap();
        let places: Vec<Option<Place>> = rep.rows.iter().map(|r| r.certificate.as_ref().map(|c| c.place.clone())).collect();
        let pl = |s: &str| Some(parse_place(&f, s).unwrap());
        assert_eq!(places, vec![pl("t"), pl("t+1"), pl("t^3+2*t^2+t+1")]);
        let iso = UnicriticalMap::new(2, Frac::one(&f)).unwrap();
        assert!(zram_scan(&iso, &Frac::zero(&f), 3, 2, 4096).unwrap().blocked.is_some());
    }

    #[test]
    fn tower_degrees() {
        let f = Field::prime(3).unwrap();
        let q = quad(&f);
        let rows = degree_tower(&q, &Frac::zero(&f), 3, DEFAULT_FACTOR_BUDGET).unwrap();
        assert_eq!(rows[0].exact, Some(2));
        assert_eq!(rows[1].exact, Some(4));
        assert_eq!(rows[0].polygon_bound, 2);
        assert_eq!(rows[1].polygon_bound, 4);
        assert!(rows.iter().all(|r| r.step_divisible == Some(true)));
        assert_eq!(rows[2].certified_bound, 8);
    }

    #[test]
    fn finindex_examples() {
        let f = Field::prime(3).unwrap();
        let q = quad(&f);
        let zero = Frac::zero(&f);
        let out = finindex_conditions(&q, &[zero.clone()], 2).unwrap();
        assert_eq!(out[0].found, Some(parse_place(&f, "t+1").unwrap()));
        let out = finindex_conditions(&q, &[zero.clone(), Frac::one(&f)], 2).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().flat_map(|o| &o.probes).any(|p| !p.failures.is_empty()));
        let f5 = Field::prime(5).unwrap();
        assert!(finindex_conditions(&UnicriticalMap::new(3, Frac::t(&f5)).unwrap(), &[Frac::zero(&f5)], 1).is_err());
    }
}
