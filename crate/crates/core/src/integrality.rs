//! S-integrality relative to a divisor, its transfer through a map, and
//! integral points along orbits.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::funcfield::factor::monic_irreducibles;
use crate::funcfield::place::poly_places;
use crate::funcfield::{discriminant, valuation, Frac, KPoly, Place, P1};
use crate::ratmap::RatMap;
use crate::reduction::{bad_reduction_places, newton_polygon};

pub type PlaceSet = BTreeSet<Place>;

/// An effective reduced divisor: the roots of `finite` plus, optionally, infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSpec {
    pub finite: KPoly,
    pub include_infinity: bool,
}

impl DivisorSpec {
    pub fn new(finite: KPoly, include_infinity: bool) -> Result<DivisorSpec> {
        if finite.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !finite.is_squarefree() {
            return Err(Error::Precondition("divisor polynomial must be squarefree".into()));
        }
        Ok(DivisorSpec { finite: finite.monic(), include_infinity })
    }

    pub fn point(field: &crate::funcfield::Field, beta: &P1) -> DivisorSpec {
        match beta {
            P1::Infinity => DivisorSpec { finite: KPoly::one(field), include_infinity: true },
            P1::Finite(b) => DivisorSpec { finite: KPoly::linear(b), include_infinity: false },
        }
    }

    /// `phi^*(D)` for a single point `D = {alpha}`, as a reduced divisor.
    pub fn pullback_point(phi: &RatMap, alpha: &P1) -> DivisorSpec {
        let f = phi.field();
        let fin = match alpha {
            P1::Infinity => phi.den().clone(),
            P1::Finite(a) => phi.num().sub_poly(&phi.den().scale(a)),
        };
        let finite = if fin.deg0() == 0 { KPoly::one(f) } else { fin.radical() };
        DivisorSpec { finite, include_infinity: phi.evaluate(&P1::Infinity) == *alpha }
    }
}

fn frac_places(z: &Frac, out: &mut PlaceSet) -> Result<()> {
    if z.is_zero() {
        return Ok(());
    }
    for p in [z.num(), z.den()] {
        out.extend(poly_places(p)?.into_iter().map(|(pl, _)| pl));
    }
    if valuation(z, &Place::Infinity) != Some(0) {
        out.insert(Place::Infinity);
    }
    Ok(())
}

/// Adds the places where `G` has a non-integral coefficient, a non-unit
/// leading coefficient or a non-unit discriminant, plus `extra`.
pub fn enlarge_s(s: &PlaceSet, d: &DivisorSpec, extra: &PlaceSet) -> Result<PlaceSet> {
    let mut out = s.clone();
    out.extend(extra.iter().cloned());
    let g = &d.finite;
    if g.deg0() == 0 {
        return Ok(out);
    }
    for c in g.coeffs() {
        if c.is_zero() {
            continue;
        }
        out.extend(poly_places(c.den())?.into_iter().map(|(pl, _)| pl));
        if valuation(c, &Place::Infinity).unwrap() < 0 {
            out.insert(Place::Infinity);
        }
    }
    frac_places(&g.lead(), &mut out)?;
    frac_places(&discriminant(g), &mut out)?;
    Ok(out)
}

/// First place not in `s`: infinity, then monic irreducibles by degree.
pub fn first_place_outside(s: &PlaceSet, field: &crate::funcfield::Field) -> Place {
    if !s.contains(&Place::Infinity) {
        return Place::Infinity;
    }
    for d in 1.. {
        for pi in monic_irreducibles(field, d) {
            let pl = Place::Finite(pi);
            if !s.contains(&pl) {
                return pl;
            }
        }
    }
    unreachable!()
}

/// Whether some root of `g` has negative valuation at `place`.
fn has_pole_roots(g: &KPoly, place: &Place) -> Result<bool> {
    if g.deg0() == 0 {
        return Ok(false);
    }
    Ok(newton_polygon(g, place)?.root_valuations().iter().any(|(v, _)| v.is_negative()))
}

/// The test at one place `p`: `alpha` must not meet the support modulo `p`.
fn integral_at(alpha: &Frac, d: &DivisorSpec, place: &Place) -> Result<bool> {
    let g = &d.finite;
    let va = valuation(alpha, place);
    if va.is_some_and(|v| v < 0) {
        return Ok(!d.include_infinity && !has_pole_roots(g, place)?);
    }
    if g.deg0() == 0 {
        return Ok(true);
    }
    // v(G(alpha)) = sum over roots of v(alpha - root); roots with negative
    // valuation contribute exactly their valuation, the others are >= 0 with
    // equality iff they stay apart from alpha
    let neg: num_rational::Rational64 = newton_polygon(g, place)?
        .root_valuations()
        .iter()
        .filter(|(v, _)| v.is_negative())
        .map(|(v, l)| *v * num_rational::Rational64::from(*l as i64))
        .sum();
    let vg = valuation(&g.eval(alpha), place).expect("alpha is not a root");
    Ok(num_rational::Rational64::from(vg) == neg)
}

/// `None` when `alpha` is S-integral relative to `D`, otherwise a place
/// outside `S` where it meets the support.
pub fn s_integral_failure(alpha: &P1, d: &DivisorSpec, s: &PlaceSet) -> Result<Option<Place>> {
    let g = &d.finite;
    let field = g.field();
    match alpha {
        P1::Infinity => {
            if d.include_infinity {
                return Ok(Some(first_place_outside(s, field)));
            }
            let mut cands = PlaceSet::new();
            for c in g.coeffs() {
                if !c.is_zero() {
                    cands.extend(poly_places(c.den())?.into_iter().map(|(pl, _)| pl));
                }
            }
            cands.insert(Place::Infinity);
            for pl in cands.into_iter().filter(|p| !s.contains(p)) {
                if has_pole_roots(g, &pl)? {
                    return Ok(Some(pl));
                }
            }
            Ok(None)
        }
        P1::Finite(a) => {
            let ga = g.eval(a);
            if ga.is_zero() {
                return Ok(Some(first_place_outside(s, field)));
            }
            let mut cands = PlaceSet::new();
            frac_places(&ga, &mut cands)?;
            cands.extend(poly_places(a.den())?.into_iter().map(|(pl, _)| pl));
            for c in g.coeffs() {
                if !c.is_zero() {
                    cands.extend(poly_places(c.den())?.into_iter().map(|(pl, _)| pl));
                }
            }
            cands.insert(Place::Infinity);
            for pl in cands.into_iter().filter(|p| !s.contains(p)) {
                if !integral_at(a, d, &pl)? {
                    return Ok(Some(pl));
                }
            }
            Ok(None)
        }
    }
}

pub fn is_s_integral(alpha: &P1, d: &DivisorSpec, s: &PlaceSet) -> Result<bool> {
    Ok(s_integral_failure(alpha, d, s)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctCheck {
    /// `phi(gamma)` is S-integral relative to `alpha`.
    pub image_side: bool,
    /// `gamma` is S-integral relative to `phi^*(alpha)`.
    pub preimage_side: bool,
}

impl FunctCheck {
    pub fn agree(&self) -> bool {
        self.image_side == self.preimage_side
    }
}

/// Smallest admissible `S` containing `base`.
pub fn functoriality_s(phi: &RatMap, alpha: &P1, base: &PlaceSet) -> Result<PlaceSet> {
    let f = phi.field();
    let bad: PlaceSet = bad_reduction_places(phi)?;
    let s = enlarge_s(base, &DivisorSpec::point(f, alpha), &bad)?;
    enlarge_s(&s, &DivisorSpec::pullback_point(phi, alpha), &PlaceSet::new())
}

pub fn functoriality_check(phi: &RatMap, alpha: &P1, gamma: &P1, s: &PlaceSet) -> Result<FunctCheck> {
    let need = functoriality_s(phi, alpha, &PlaceSet::new())?;
    if !need.is_subset(s) {
        return Err(Error::Precondition("S must contain the bad places and both enlargements".into()));
    }
    let f = phi.field();
    let image_side = is_s_integral(&phi.evaluate(gamma), &DivisorSpec::point(f, alpha), s)?;
    let preimage_side = is_s_integral(gamma, &DivisorSpec::pullback_point(phi, alpha), s)?;
    Ok(FunctCheck { image_side, preimage_side })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub n: usize,
    pub height: u64,
    pub integral: bool,
    pub witness: Option<Place>,
}

/// `phi^n(alpha)` for `n = 0..=bound`, tested against `{beta}`.
pub fn orbit_integral_scan(phi: &RatMap, alpha: &P1, beta: &P1, s: &PlaceSet, bound: usize, height_budget: u64) -> Result<Vec<ScanRow>> {
    if phi.degree() < 2 {
        return Err(Error::Precondition("map degree must be at least 2".into()));
    }
    let d = DivisorSpec::point(phi.field(), beta);
    let mut w = alpha.clone();
    let mut rows = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let height = w.height();
        if height > height_budget {
            return Err(Error::Budget { what: "orbit height", value: height, limit: height_budget });
        }
        let witness = s_integral_failure(&w, &d, s)?;
        rows.push(ScanRow { n, height, integral: witness.is_none(), witness });
        w = phi.evaluate(&w);
    }
    Ok(rows)
}
