//! Reduction of maps at places, Newton polygons, cross ratios in valuation
//! form, and the search for cross-ratio witnesses on preimage sets.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::funcfield::linalg::charpoly_mod;
use crate::funcfield::place::poly_places;
use crate::funcfield::residue::Residue;
use crate::funcfield::{kpoly_factor, resultant, valuation, Frac, KPoly, Place, PolyQ, P1};
use crate::ratmap::RatMap;

/// A map over the residue field `k_p`, stored by residue coefficients.
#[derive(Clone, Debug)]
pub struct ReducedMap {
    residue: Residue,
    num: Vec<PolyQ>,
    den: Vec<PolyQ>,
    degree: usize,
}

impl ReducedMap {
    pub fn residue(&self) -> &Residue {
        &self.residue
    }

    pub fn num(&self) -> &[PolyQ] {
        &self.num
    }

    pub fn den(&self) -> &[PolyQ] {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Points of `P^1(k_p)` are `Some(residue)` or `None` for infinity.
    pub fn evaluate(&self, x: &Option<PolyQ>) -> Option<PolyQ> {
        let r = &self.residue;
        match x {
            None => {
                let a = self.num.get(self.degree).cloned().unwrap_or_else(|| r.zero());
                let b = self.den.get(self.degree).cloned().unwrap_or_else(|| r.zero());
                if b.is_zero() {
                    None
                } else {
                    Some(r.mul(&a, &r.inv(&b).unwrap()))
                }
            }
            Some(a) => {
                let d = r.eval(&self.den, a);
                if d.is_zero() {
                    None
                } else {
                    Some(r.mul(&r.eval(&self.num, a), &r.inv(&d).unwrap()))
                }
            }
        }
    }

    /// `num / den` with residues printed as polynomials in the local
    /// parameter (`t` at finite places, `1/t` renamed `t` at infinity).
    pub fn format(&self) -> String {
        let f = self.residue.zero().field().clone();
        let lift = |cs: &[PolyQ]| KPoly::new(&f, cs.iter().map(|c| Frac::from_poly(c.clone())).collect());
        crate::text::format_ratfunc(&lift(&self.num), &lift(&self.den), "z")
    }
}

#[derive(Clone, Debug)]
pub struct ReductionType {
    pub place: Place,
    pub good: bool,
    /// Minimal coefficient valuation used to normalize.
    pub shift: i64,
    /// Valuation of the homogeneous resultant of the normalized pair.
    pub resultant_valuation: i64,
    pub reduced: Option<ReducedMap>,
}

/// `Res_{d,d}(N, D)` of the homogenized pair, up to sign.
pub fn homogeneous_resultant(num: &KPoly, den: &KPoly, d: usize) -> Frac {
    let r = resultant(num, den);
    if num.deg0() == d {
        r.mul_frac(&num.lead().pow((d - den.deg0()) as u64))
    } else {
        r.mul_frac(&den.lead().pow((d - num.deg0()) as u64))
    }
}

/// The `2d x 2d` Sylvester matrix of the homogenized pair at formal degree `d`.
pub fn homogeneous_sylvester(num: &KPoly, den: &KPoly, d: usize) -> Vec<Vec<Frac>> {
    let f = num.field();
    let n = 2 * d;
    let mut m = vec![vec![Frac::zero(f); n]; n];
    for r in 0..d {
        for i in 0..=d {
            m[r][r + d - i] = num.coeff(i);
            m[r + d][r + d - i] = den.coeff(i);
        }
    }
    m
}

fn min_coeff_valuation(phi: &RatMap, place: &Place) -> i64 {
    phi.num()
        .coeffs()
        .iter()
        .chain(phi.den().coeffs())
        .filter_map(|c| valuation(c, place))
        .min()
        .expect("nonzero map")
}

pub fn reduction_type(phi: &RatMap, place: &Place) -> ReductionType {
    let d = phi.degree() as usize;
    let m = min_coeff_valuation(phi, place);
    let res = homogeneous_resultant(phi.num(), phi.den(), d);
    // scaling both forms by u^{-m} multiplies Res_{d,d} by u^{-2dm}
    let rv = valuation(&res, place).expect("coprime pair") - 2 * d as i64 * m;
    let good = rv == 0;
    let reduced = good.then(|| {
        let residue = Residue::new(place, phi.field());
        let scale = residue.uniformizer().powi(-m).unwrap();
        let red = |p: &KPoly| -> Vec<PolyQ> {
            (0..=d)
                .map(|i| residue.reduce(&p.coeff(i).mul_frac(&scale)).expect("normalized"))
                .collect()
        };
        let (num, den) = (red(phi.num()), red(phi.den()));
        ReducedMap { residue, num, den, degree: d }
    });
    ReductionType { place: place.clone(), good, shift: m, resultant_valuation: rv, reduced }
}

/// Finite places dividing a numerator or denominator of any coefficient.
pub fn coefficient_places(phi: &RatMap) -> Result<BTreeSet<Place>> {
    let mut out = BTreeSet::new();
    for c in phi.num().coeffs().iter().chain(phi.den().coeffs()) {
        if c.is_zero() {
            continue;
        }
        for p in [c.num(), c.den()] {
            out.extend(poly_places(p)?.into_iter().map(|(pl, _)| pl));
        }
    }
    Ok(out)
}

/// Every place where the given coordinates have bad reduction.
pub fn bad_reduction_places(phi: &RatMap) -> Result<BTreeSet<Place>> {
    let d = phi.degree() as usize;
    let mut cands = coefficient_places(phi)?;
    let res = homogeneous_resultant(phi.num(), phi.den(), d);
    for p in [res.num(), res.den()] {
        cands.extend(poly_places(p)?.into_iter().map(|(pl, _)| pl));
    }
    cands.insert(Place::Infinity);
    Ok(cands.into_iter().filter(|pl| !reduction_type(phi, pl).good).collect())
}

/// Lower convex hull of `(i, v_p(c_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, i64)>,
    /// Hull slopes left to right with horizontal lengths.
    pub slopes: Vec<(Rational64, usize)>,
    /// Multiplicity of `x = 0` as a root (leading zero coefficients).
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// Valuations of the nonzero roots in `C_p`, with multiplicity.
    pub fn root_valuations(&self) -> Vec<(Rational64, usize)> {
        self.slopes.iter().map(|(s, l)| (-s, *l)).collect()
    }

    pub fn is_single_slope(&self) -> bool {
        self.zero_roots == 0 && self.slopes.len() == 1
    }
}

pub fn newton_polygon(f: &KPoly, place: &Place) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation(c, place).map(|v| (i as i64, v)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let slopes = hull
        .windows(2)
        .map(|w| (Rational64::new(w[1].1 - w[0].1, w[1].0 - w[0].0), (w[1].0 - w[0].0) as usize))
        .collect();
    Ok(NewtonPolygon {
        vertices: hull.iter().map(|&(i, v)| (i as usize, v)).collect(),
        slopes,
        zero_roots: pts[0].0 as usize,
    })
}

/// The cross ratio `|x1-y2||x2-y1| / |x1-y1||x2-y2|` at a place, recorded by
/// `comparison = v(x1-y1) + v(x2-y2) - v(x1-y2) - v(x2-y1)`; terms with an
/// infinite point are dropped. The ratio is `q^{N_p * comparison}`, and
/// `log_ratio = -comparison`, so the ratio exceeds 1 exactly when
/// `log_ratio < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossRatioVal {
    pub comparison: i64,
    pub log_ratio: i64,
}

pub fn cross_ratio(x1: &P1, x2: &P1, y1: &P1, y2: &P1, place: &Place) -> Result<CrossRatioVal> {
    let pts = [x1, x2, y1, y2];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::Precondition("cross ratio needs four distinct points".into()));
            }
        }
    }
    let term = |a: &P1, b: &P1| -> i64 {
        match (a, b) {
            (P1::Finite(a), P1::Finite(b)) => valuation(&a.sub_frac(b), place).unwrap(),
            _ => 0,
        }
    };
    let comparison = term(x1, y1) + term(x2, y2) - term(x1, y2) - term(x2, y1);
    Ok(CrossRatioVal { comparison, log_ratio: -comparison })
}

/// A root valuation; `None` is `+inf` (the root equals the center).
pub type RootVal = Option<Rational64>;

fn vmin(a: RootVal, b: RootVal) -> RootVal {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(a.min(b)),
    }
}

/// Distinct root valuations of `f(x + center)` with the number of distinct
/// roots in `K-bar` carrying each.
pub fn root_classes(f: &KPoly, center: &Frac, place: &Place, budget: u64) -> Result<Vec<(RootVal, usize)>> {
    let sep = f.gcd(&f.derivative()).deg0() == 0;
    let parts: Vec<(KPoly, usize)> = if sep {
        vec![(f.clone(), 1)]
    } else {
        // an inseparable irreducible factor has each root repeated deg_i times
        kpoly_factor(f, budget)?
            .into_iter()
            .map(|(g, _)| {
                let k = g.inseparable_exponent() as usize;
                (g, k)
            })
            .collect()
    };
    let mut out: Vec<(RootVal, usize)> = Vec::new();
    let mut push = |v: RootVal, n: usize| match out.iter_mut().find(|(w, _)| *w == v) {
        Some(e) => e.1 += n,
        None => out.push((v, n)),
    };
    for (g, k) in parts {
        let np = newton_polygon(&g.taylor_shift(center), place)?;
        if np.zero_roots > 0 {
            push(None, np.zero_roots / k);
        }
        for (v, l) in np.root_valuations() {
            push(Some(v), l / k);
        }
    }
    out.sort();
    Ok(out)
}

/// Lower bound for the comparison of `(x1, x2; y1, y2)` from valuations of
/// the points relative to a common center, when it is certified.
pub fn comparison_from_valuations(v: [RootVal; 4]) -> Option<Rational64> {
    let [x1, x2, y1, y2] = v;
    let exact = |a: RootVal, b: RootVal| if a != b { vmin(a, b) } else { None };
    // denominators must be exact, numerators may be lower bounds
    let d1 = exact(x1, y2)?;
    let d2 = exact(x2, y1)?;
    let n1 = vmin(x1, y1)?;
    let n2 = vmin(x2, y2)?;
    Some(n1 + n2 - d1 - d2)
}

fn slope_chain(classes: &[(RootVal, usize)]) -> Option<([RootVal; 4], Rational64)> {
    let k = classes.len();
    let mut best: Option<([RootVal; 4], Rational64)> = None;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for e in 0..k {
                    let idx = [a, b, c, e];
                    let fits = (0..k).all(|i| idx.iter().filter(|&&j| j == i).count() <= classes[i].1);
                    if !fits {
                        continue;
                    }
                    let vals = idx.map(|i| classes[i].0);
                    if let Some(cmp) = comparison_from_valuations(vals) {
                        if cmp > Rational64::from(0) && best.is_none_or(|b| cmp > b.1) {
                            best = Some((vals, cmp));
                        }
                    }
                }
            }
        }
    }
    best
}

/// Common distance profile `{v(g - g') : g' != g}` of the roots of a
/// separable `f`, when it is the same for every root.
pub fn distance_profile(f: &KPoly, place: &Place, hasse_charpolys: &[KPoly]) -> Result<Option<Vec<(Rational64, usize)>>> {
    let m = f.deg0();
    let mut pts: Vec<(i64, Rational64)> = Vec::new();
    for k in 1..=m {
        let chi = &hasse_charpolys[k - 1];
        if *chi == KPoly::x(f.field()).pow(m as u64) {
            continue;
        }
        let np = newton_polygon(chi, place)?;
        if !np.is_single_slope() {
            return Ok(None);
        }
        pts.push((k as i64 - 1, np.root_valuations()[0].0));
    }
    // lower hull of (k-1, v(f^[k](g))) is the polygon of f(x + g)/x
    let mut hull: Vec<(i64, Rational64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = Rational64::from(b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * Rational64::from(p.0 - a.0);
            if cross <= Rational64::from(0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(Some(
        hull.windows(2)
            .map(|w| (-(w[1].1 - w[0].1) / Rational64::from(w[1].0 - w[0].0), (w[1].0 - w[0].0) as usize))
            .collect(),
    ))
}

/// `charpoly(f^[k] mod f)` for `k = 1..deg f`.
pub fn hasse_charpolys(f: &KPoly) -> Vec<KPoly> {
    (1..=f.deg0()).map(|k| charpoly_mod(&f.hasse(k), f)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessData {
    /// Four roots with valuations `[x1, x2, y1, y2]` relative to `center`.
    SlopeChain { center: Frac, valuations: [RootVal; 4] },
    /// Every root has a neighbour at distance `near` and another at `far`.
    TwoClusters { near: Rational64, far: Rational64, profile: Vec<(Rational64, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: usize,
    pub place: Place,
    /// Radical of the preimage polynomial.
    pub set_poly: KPoly,
    pub data: WitnessData,
    /// Certified lower bound for the comparison (positive).
    pub comparison: Rational64,
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self.data {
            WitnessData::SlopeChain { .. } => "slope_chain",
            WitnessData::TwoClusters { .. } => "two_clusters",
        }
    }

    /// `comparison` times the lcm of the denominators of the valuations used.
    pub fn comparison_integer(&self) -> i64 {
        let mut l = *self.comparison.denom();
        match &self.data {
            WitnessData::SlopeChain { valuations, .. } => {
                for v in valuations.iter().flatten() {
                    l = l.lcm(v.denom());
                }
            }
            WitnessData::TwoClusters { near, far, .. } => {
                l = l.lcm(near.denom()).lcm(far.denom());
            }
        }
        (self.comparison * Rational64::from(l)).to_integer()
    }

    /// Recomputes the witness from `set_poly` and `place` alone.
    pub fn revalidate(&self, budget: u64) -> Result<bool> {
        match &self.data {
            WitnessData::SlopeChain { center, valuations } => {
                let classes = root_classes(&self.set_poly, center, &self.place, budget)?;
                let fits = valuations.iter().all(|v| {
                    let need = valuations.iter().filter(|w| *w == v).count();
                    classes.iter().any(|(w, n)| w == v && *n >= need)
                });
                Ok(fits && comparison_from_valuations(*valuations) == Some(self.comparison) && self.comparison > Rational64::from(0))
            }
            WitnessData::TwoClusters { near, far, profile } => {
                let f = &self.set_poly;
                if f.gcd(&f.derivative()).deg0() != 0 {
                    return Ok(false);
                }
                let chis = hasse_charpolys(f);
                let Some(prof) = distance_profile(f, &self.place, &chis)? else {
                    return Ok(false);
                };
                let max = prof.iter().map(|p| p.0).max();
                let min = prof.iter().map(|p| p.0).min();
                Ok(prof == *profile
                    && max == Some(*near)
                    && min == Some(*far)
                    && near > far
                    && self.comparison == (near - far) * Rational64::from(2))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub map: RatMap,
    pub beta: Frac,
    pub n_max: usize,
    pub places: Vec<Place>,
    pub witness: Option<Witness>,
}

/// Default probe places: bad reduction, coefficient and `beta` support, infinity.
pub fn default_witness_places(phi: &RatMap, beta: &Frac) -> Result<Vec<Place>> {
    let mut s = bad_reduction_places(phi)?;
    s.extend(coefficient_places(phi)?);
    if !beta.is_zero() {
        for p in [beta.num(), beta.den()] {
            s.extend(poly_places(p)?.into_iter().map(|(pl, _)| pl));
        }
    }
    s.insert(Place::Infinity);
    Ok(s.into_iter().collect())
}

/// Probes one `(P, place)` pair for a witness.
fn probe(set_poly: &KPoly, centers: &[Frac], chis: Option<&[KPoly]>, place: &Place, budget: u64) -> Result<Option<(WitnessData, Rational64)>> {
    for c in centers {
        let classes = root_classes(set_poly, c, place, budget)?;
        if let Some((vals, cmp)) = slope_chain(&classes) {
            return Ok(Some((WitnessData::SlopeChain { center: c.clone(), valuations: vals }, cmp)));
        }
    }
    if let Some(chis) = chis {
        if let Some(prof) = distance_profile(set_poly, place, chis)? {
            if prof.len() >= 2 {
                let near = prof.iter().map(|p| p.0).max().unwrap();
                let far = prof.iter().map(|p| p.0).min().unwrap();
                let cmp = (near - far) * Rational64::from(2);
                return Ok(Some((WitnessData::TwoClusters { near, far, profile: prof }, cmp)));
            }
        }
    }
    Ok(None)
}

fn check_witness_input(phi: &RatMap, beta: &Frac, budget: u64) -> Result<()> {
    if phi.degree() < 2 {
        return Err(Error::Precondition("map degree must be at least 2".into()));
    }
    if phi.is_exceptional(&P1::Finite(beta.clone()), budget)? {
        return Err(Error::Precondition("beta is exceptional".into()));
    }
    Ok(())
}

/// Probes level `n` only, places in the given order.
fn witness_at(phi: &RatMap, beta: &Frac, n: usize, places: &[Place], budget: u64) -> Result<Option<Witness>> {
    let (_, set_poly) = phi.iterate_poly(n, &P1::Finite(beta.clone()), budget)?;
    if set_poly.deg0() < 4 {
        return Ok(None);
    }
    let mut centers = vec![Frac::zero(phi.field())];
    if let Ok(facs) = kpoly_factor(&set_poly, budget) {
        for (g, _) in facs {
            if g.deg0() == 1 {
                let r = g.coeff(0).neg_frac();
                if !r.is_zero() {
                    centers.push(r);
                }
            }
        }
    }
    let separable = set_poly.gcd(&set_poly.derivative()).deg0() == 0;
    let chis = separable.then(|| hasse_charpolys(&set_poly));
    for pl in places {
        if let Some((data, comparison)) = probe(&set_poly, &centers, chis.as_deref(), pl, budget)? {
            return Ok(Some(Witness { n, place: pl.clone(), set_poly, data, comparison }));
        }
    }
    Ok(None)
}

/// Searches `n <= n_max` and the given places (in order) for four points of
/// `phi^{-n}(beta)` whose cross ratio is not 1. The lowest `(n, place)` wins.
pub fn noniso_set_witness(phi: &RatMap, beta: &Frac, n_max: usize, places: Option<&[Place]>, budget: u64) -> Result<WitnessReport> {
    check_witness_input(phi, beta, budget)?;
    let places: Vec<Place> = match places {
        Some(p) => p.to_vec(),
        None => default_witness_places(phi, beta)?,
    };
    let mut witness = None;
    for n in 1..=n_max {
        witness = witness_at(phi, beta, n, &places, budget)?;
        if witness.is_some() {
            break;
        }
    }
    Ok(WitnessReport { map: phi.clone(), beta: beta.clone(), n_max, places, witness })
}

/// The same search restricted to level `n`.
pub fn noniso_set_witness_at(phi: &RatMap, beta: &Frac, n: usize, places: Option<&[Place]>, budget: u64) -> Result<WitnessReport> {
    check_witness_input(phi, beta, budget)?;
    let places: Vec<Place> = match places {
        Some(p) => p.to_vec(),
        None => default_witness_places(phi, beta)?,
    };
    let witness = witness_at(phi, beta, n, &places, budget)?;
    Ok(WitnessReport { map: phi.clone(), beta: beta.clone(), n_max: n, places, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmap::DEFAULT_DEGREE_BUDGET;
    use crate::funcfield::Field;
    use crate::text::{parse_frac, parse_kpoly};

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn map(f: &Field, s: &str) -> RatMap {
        RatMap::parse(f, s).unwrap()
    }

    fn place(f: &Field, s: &str) -> Place {
        crate::text::parse_place(f, s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = f3();
        let phi = map(&f, "z^2+t");
        let r = reduction_type(&phi, &place(&f, "t"));
        assert!(r.good);
        assert_eq!(r.reduced.unwrap().format(), "z^2");
        assert!(!reduction_type(&phi, &Place::Infinity).good);
        assert!(!reduction_type(&map(&f, "z^2/t"), &place(&f, "t")).good);
    }

    #[test]
    fn bad_place_sets() {
        let f = f3();
        let s = bad_reduction_places(&map(&f, "z^2+t")).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![Place::Infinity]);
        let s = bad_reduction_places(&map(&f, "z^2+1/t")).unwrap();
        assert!(s.contains(&place(&f, "t")));
        assert!(bad_reduction_places(&map(&f, "z^2")).unwrap().is_empty());
    }

    #[test]
    fn newton_polygon_examples() {
        let f = f3();
        let np = newton_polygon(&parse_kpoly(&f, "x^4+2*t*x^2+t^2+t").unwrap(), &place(&f, "t")).unwrap();
        assert_eq!(np.vertices, vec![(0, 1), (4, 0)]);
        assert_eq!(np.slopes, vec![(Rational64::new(-1, 4), 4)]);
        let np = newton_polygon(&parse_kpoly(&f, "x^2-t^2").unwrap(), &place(&f, "t")).unwrap();
        assert_eq!(np.root_valuations(), vec![(Rational64::from(1), 2)]);
        let np = newton_polygon(&parse_kpoly(&f, "x^2+t").unwrap(), &place(&f, "t+1")).unwrap();
        assert_eq!(np.slopes, vec![(Rational64::from(0), 2)]);
        let np = newton_polygon(&parse_kpoly(&f, "x^3+t*x").unwrap(), &place(&f, "t")).unwrap();
        assert_eq!(np.zero_roots, 1);
    }

    #[test]
    fn cross_ratio_examples() {
        let f = f3();
        let p = |s: &str| crate::text::parse_point(&f, s).unwrap();
        let c = cross_ratio(&p("t^3"), &p("t"), &p("t^2"), &p("1"), &place(&f, "t")).unwrap();
        assert_eq!(c.comparison, 1);
        assert!(c.log_ratio < 0);
        let f5 = Field::prime(5).unwrap();
        let q = |s: &str| crate::text::parse_point(&f5, s).unwrap();
        let c = cross_ratio(&q("0"), &q("1"), &q("2"), &q("3"), &place(&f5, "t+1")).unwrap();
        assert_eq!(c.comparison, 0);
        let c = cross_ratio(&p("inf"), &p("t"), &p("1"), &p("t+1"), &place(&f, "t-1")).unwrap();
        assert_eq!(c.comparison, -1);
        assert!(cross_ratio(&p("1"), &p("1"), &p("2"), &p("t"), &Place::Infinity).is_err());
    }

    #[test]
    fn witness_for_quadratic() {
        let f = f3();
        let phi = map(&f, "z^2+t");
        let rep = noniso_set_witness(&phi, &Frac::zero(&f), 4, None, DEFAULT_DEGREE_BUDGET).unwrap();
        let w = rep.witness.expect("witness");
        assert!(w.n <= 4);
        assert!(w.comparison > Rational64::from(0));
        assert!(w.revalidate(4096).unwrap());
    }

    #[test]
    fn witness_at_t_plus_one_level_two() {
        // x^4 + 2t x^2 + t^2 + t at (t+1): two roots of valuation 1/2, two units
        let f = f3();
        let phi = map(&f, "z^2+t");
        let pl = [place(&f, "t+1")];
        let rep = noniso_set_witness(&phi, &Frac::zero(&f), 1, Some(&pl), DEFAULT_DEGREE_BUDGET).unwrap();
        assert!(rep.witness.is_none());
        let rep = noniso_set_witness(&phi, &Frac::zero(&f), 2, Some(&pl), DEFAULT_DEGREE_BUDGET).unwrap();
        let w = rep.witness.unwrap();
        assert_eq!(w.kind(), "slope_chain");
        assert!(w.revalidate(4096).unwrap());
    }

    #[test]
    fn constant_data_has_no_witness() {
        let f = f3();
        let phi = map(&f, "z^2+1");
        let one = parse_frac(&f, "1").unwrap();
        let pls = [Place::Infinity, place(&f, "t"), place(&f, "t^2+1")];
        let rep = noniso_set_witness(&phi, &one, 3, Some(&pls), DEFAULT_DEGREE_BUDGET).unwrap();
        assert!(rep.witness.is_none());
    }

    #[test]
    fn exceptional_beta_rejected() {
        let f = f3();
        let r = noniso_set_witness(&map(&f, "z^2"), &Frac::zero(&f), 2, None, DEFAULT_DEGREE_BUDGET);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
