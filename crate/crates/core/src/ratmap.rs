//! Rational maps `phi in K(z)`: evaluation, iteration, degrees, critical
//! points, exceptional and post-critical points, residue-field periods.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::funcfield::residue::Residue;
use crate::funcfield::{kpoly_factor, Field, Frac, KPoly, Place, PolyQ, P1};

/// Default cap on `d^n` when forming iterates.
pub const DEFAULT_DEGREE_BUDGET: u64 = 4096;

/// `phi = num/den` with `gcd = 1`, `den` monic or `den = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMap {
    num: KPoly,
    den: KPoly,
}

impl core::fmt::Debug for RatMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_ratfunc(&self.num, &self.den, "z"))
    }
}

impl core::fmt::Display for RatMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_ratfunc(&self.num, &self.den, "z"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub total: u64,
    pub separable: u64,
    pub inseparable: u64,
}

/// Where a critical point sits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CritLocation {
    Infinity,
    Rational(Frac),
    /// The roots of an irreducible polynomial of degree at least two.
    Class(KPoly),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CriticalPoint {
    pub location: CritLocation,
    pub ram_index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub seed: P1,
    pub values: Vec<P1>,
    pub heights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Postcritical {
    Yes { gamma: CritLocation, n: usize },
    NoUpTo(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResiduePeriod {
    pub tail: u64,
    pub cycle: u64,
}

impl RatMap {
    /// Reduces `num/den`; rejects `den = 0` and constant maps.
    pub fn new(num: KPoly, den: KPoly) -> Result<RatMap> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if num.is_zero() {
            (num, KPoly::one(den.field()))
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = d.lead().inv().unwrap();
        n = n.scale(&lc);
        d = d.scale(&lc);
        if n.deg0().max(d.deg0()) == 0 {
            return Err(Error::Precondition("map has degree 0".into()));
        }
        Ok(RatMap { num: n, den: d })
    }

    pub fn polynomial(num: KPoly) -> Result<RatMap> {
        let f = num.field().clone();
        RatMap::new(num, KPoly::one(&f))
    }

    pub fn parse(field: &Field, s: &str) -> Result<RatMap> {
        let (n, d) = crate::text::parse_ratfunc(field, s)?;
        RatMap::new(n, d)
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &KPoly {
        &self.num
    }

    pub fn den(&self) -> &KPoly {
        &self.den
    }

    pub fn degree(&self) -> u64 {
        self.num.deg0().max(self.den.deg0()) as u64
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg0() == 0
    }

    /// Every coefficient lies in `F_q`.
    pub fn has_constant_coeffs(&self) -> bool {
        self.num.has_constant_coeffs() && self.den.has_constant_coeffs()
    }

    pub fn evaluate(&self, z: &P1) -> P1 {
        let f = self.field();
        match z {
            P1::Finite(a) => {
                let d = self.den.eval(a);
                if d.is_zero() {
                    P1::Infinity
                } else {
                    P1::Finite(self.num.eval(a).div_frac(&d).unwrap())
                }
            }
            P1::Infinity => {
                let (dn, dd) = (self.num.deg0(), self.den.deg0());
                if dn > dd {
                    P1::Infinity
                } else if dn < dd {
                    P1::Finite(Frac::zero(f))
                } else {
                    P1::Finite(self.num.lead().div_frac(&self.den.lead()).unwrap())
                }
            }
        }
    }

    pub fn orbit(&self, seed: &P1, n: usize) -> OrbitRecord {
        let mut values = vec![seed.clone()];
        for i in 0..n {
            let next = self.evaluate(&values[i]);
            values.push(next);
        }
        let heights = values.iter().map(|v| v.height()).collect();
        OrbitRecord { seed: seed.clone(), values, heights }
    }

    /// `phi o psi`.
    pub fn compose(&self, psi: &RatMap) -> Result<RatMap> {
        let d = self.degree() as usize;
        let (a, b) = (&psi.num, &psi.den);
        // homogeneous substitution N(A, B) = sum n_i A^i B^{d-i}
        let hom = |p: &KPoly| {
            let mut acc = KPoly::zero(self.field());
            let mut bpow = vec![KPoly::one(self.field())];
            for i in 1..=d {
                let next = bpow[i - 1].mul_poly(b);
                bpow.push(next);
            }
            let mut apow = KPoly::one(self.field());
            for i in 0..=d {
                let c = p.coeff(i);
                if !c.is_zero() {
                    acc = acc.add_poly(&apow.mul_poly(&bpow[d - i]).scale(&c));
                }
                apow = apow.mul_poly(a);
            }
            acc
        };
        RatMap::new(hom(&self.num), hom(&self.den))
    }

    /// `phi^n` as a reduced map, subject to `d^n <= budget`.
    pub fn iterate_map(&self, n: usize, budget: u64) -> Result<RatMap> {
        assert!(n >= 1, "iterate_map needs n >= 1");
        let total = (self.degree() as u128).pow(n as u32);
        if total > budget as u128 {
            return Err(Error::Budget { what: "iterate degree", value: total.min(u64::MAX as u128) as u64, limit: budget });
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `P_{n,beta}`: the numerator of `phi^n(x) - beta` (or the denominator of
    /// `phi^n` when `beta = inf`), together with its radical.
    pub fn iterate_poly(&self, n: usize, beta: &P1, budget: u64) -> Result<(KPoly, KPoly)> {
        let it = self.iterate_map(n, budget)?;
        let p = match beta {
            P1::Infinity => it.den.clone(),
            P1::Finite(b) => it.num.sub_poly(&it.den.scale(b)),
        };
        if p.is_zero() {
            return Err(Error::Precondition("phi^n(x) - beta vanishes identically".into()));
        }
        let r = p.radical();
        Ok((p, r))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let total = self.degree();
        let insep = match (self.num.deg0(), self.den.deg0()) {
            (_, 0) => self.num.inseparable_exponent(),
            (0, _) => self.den.inseparable_exponent(),
            _ => self.num.inseparable_exponent().min(self.den.inseparable_exponent()),
        };
        DegreeProfile { total, separable: total / insep, inseparable: insep }
    }

    /// `g` with `phi = g(z^k)` where `k = deg_i phi`.
    fn separable_part(&self) -> (RatMap, u64) {
        let k = self.degree_profile().inseparable;
        if k == 1 {
            return (self.clone(), 1);
        }
        let n = self.num.deflate(k as usize).unwrap();
        let d = self.den.deflate(k as usize).unwrap();
        (RatMap { num: n, den: d }, k)
    }

    /// Ramification index of a separable map at a root of the irreducible `pi`.
    fn ram_index_at(&self, pi: &KPoly) -> u64 {
        let d_at = self.den.rem(pi);
        let max_k = self.degree() as usize;
        if d_at.is_zero() {
            return (1..=max_k)
                .find(|&k| !self.den.hasse(k).rem(pi).is_zero())
                .unwrap_or(max_k) as u64;
        }
        let c = self.num.rem(pi).mul_mod(&d_at.inv_mod(pi).unwrap(), pi);
        (1..=max_k)
            .find(|&k| {
                let h = self.num.hasse(k).sub_poly(&self.den.hasse(k).mul_poly(&c));
                !h.rem(pi).is_zero()
            })
            .unwrap_or(max_k) as u64
    }

    /// Ramification index at infinity.
    pub fn ram_index_at_infinity(&self) -> u64 {
        // phi(1/z) = z^{dd - dn} rev(N) / rev(D)
        let d = self.degree() as usize;
        let rn = self.num.reverse(d);
        let rd = self.den.reverse(d);
        let inv = RatMap::new(rn, rd).expect("same degree");
        inv.ram_index_at(&KPoly::x(self.field()))
    }

    /// Ramification index at a `K`-rational point.
    pub fn ram_index(&self, gamma: &P1) -> u64 {
        let (g, k) = self.separable_part();
        match gamma {
            P1::Infinity => k * g.ram_index_at_infinity(),
            P1::Finite(a) => {
                // gamma^k is the corresponding point for g
                let ak = a.pow(k);
                k * g.ram_index_at(&KPoly::linear(&ak))
            }
        }
    }

    /// Critical points, each conjugate class listed once.
    pub fn critical_points(&self) -> Result<Vec<CriticalPoint>> {
        let (g, k) = self.separable_part();
        let w = g.num.derivative().mul_poly(&g.den).sub_poly(&g.num.mul_poly(&g.den.derivative()));
        let mut out = Vec::new();
        if !w.is_zero() && w.deg0() > 0 {
            for (pi, _) in kpoly_factor(&w, crate::funcfield::DEFAULT_FACTOR_BUDGET)? {
                let e = g.ram_index_at(&pi);
                if e > 1 {
                    let loc = lift_location(&pi, k);
                    out.push(CriticalPoint { location: loc, ram_index: k * e });
                }
            }
        }
        let einf = g.ram_index_at_infinity();
        if einf > 1 {
            out.push(CriticalPoint { location: CritLocation::Infinity, ram_index: k * einf });
        }
        out.sort();
        Ok(out)
    }

    /// `phi^{-2}(beta) = {beta}`.
    pub fn is_exceptional(&self, beta: &P1, budget: u64) -> Result<bool> {
        let d2 = self.degree() * self.degree();
        match beta {
            P1::Infinity => Ok(self.iterate_map(2, budget)?.is_polynomial()),
            P1::Finite(b) => {
                let (p, r) = self.iterate_poly(2, beta, budget)?;
                Ok(p.deg0() as u64 == d2 && r == KPoly::linear(b))
            }
        }
    }

    /// Searches `phi^n(gamma) = beta` for `n <= bound` over the critical points.
    pub fn is_postcritical(&self, beta: &P1, bound: usize, budget: u64) -> Result<Postcritical> {
        let crit = self.critical_points()?;
        for n in 1..=bound {
            let mut classes = Vec::new();
            for c in &crit {
                match &c.location {
                    CritLocation::Infinity => {
                        if self.iterate_point(&P1::Infinity, n) == *beta {
                            return Ok(Postcritical::Yes { gamma: c.location.clone(), n });
                        }
                    }
                    CritLocation::Rational(a) => {
                        if self.iterate_point(&P1::Finite(a.clone()), n) == *beta {
                            return Ok(Postcritical::Yes { gamma: c.location.clone(), n });
                        }
                    }
                    CritLocation::Class(pi) => classes.push(pi.clone()),
                }
            }
            if !classes.is_empty() {
                let it = self.iterate_map(n, budget)?;
                let target = match beta {
                    P1::Infinity => it.den.clone(),
                    P1::Finite(b) => it.num.sub_poly(&it.den.scale(b)),
                };
                for pi in classes {
                    if target.is_zero() || pi.divides(&target) {
                        return Ok(Postcritical::Yes { gamma: CritLocation::Class(pi), n });
                    }
                }
            }
        }
        Ok(Postcritical::NoUpTo(bound))
    }

    pub fn iterate_point(&self, z: &P1, n: usize) -> P1 {
        (0..n).fold(z.clone(), |acc, _| self.evaluate(&acc))
    }

    /// Tail and cycle length of the orbit of `alpha` in `P^1(k_p)`.
    pub fn residue_period(&self, alpha: &Frac, place: &Place) -> Result<ResiduePeriod> {
        let red = crate::reduction::reduction_type(self, place);
        let Some(rm) = red.reduced else {
            return Err(Error::BadReduction(crate::text::format_place(place)));
        };
        let res = Residue::new(place, self.field());
        let Some(a0) = res.reduce(alpha) else {
            return Err(Error::NotIntegral(crate::text::format_place(place)));
        };
        let step = |x: &Option<PolyQ>| rm.evaluate(x);
        Ok(brent(Some(a0), step))
    }
}

/// Location for `phi = g(z^k)` given an irreducible factor `pi` for `g`.
fn lift_location(pi: &KPoly, k: u64) -> CritLocation {
    let lifted = pi.inflate(k as usize).radical();
    if lifted.deg0() == 1 {
        CritLocation::Rational(lifted.coeff(0).neg_frac())
    } else {
        CritLocation::Class(lifted)
    }
}

/// Brent's cycle detection.
pub fn brent<T: Clone + PartialEq>(x0: T, f: impl Fn(&T) -> T) -> ResiduePeriod {
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = x0.clone();
    let mut hare = f(&x0);
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = f(&hare);
        lam += 1;
    }
    let mut tortoise = x0.clone();
    let mut hare = x0;
    for _ in 0..lam {
        hare = f(&hare);
    }
    let mut mu = 0u64;
    while tortoise != hare {
        tortoise = f(&tortoise);
        hare = f(&hare);
        mu += 1;
    }
    ResiduePeriod { tail: mu, cycle: lam }
}

/// Residue periods of `alpha` at every place of degree `<= max_deg` with good
/// reduction (places with bad reduction or a pole of `alpha` are listed with
/// their error).
pub fn period_census(phi: &RatMap, alpha: &Frac, max_deg: usize) -> Vec<(Place, core::result::Result<ResiduePeriod, String>)> {
    let field = phi.field();
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for pi in crate::funcfield::factor::monic_irreducibles(field, d) {
            let pl = Place::Finite(pi);
            let r = phi.residue_period(alpha, &pl).map_err(|e| alloc::format!("{e}"));
            out.push((pl, r));
        }
    }
    out
}

/// Counts of `K`-rational points by orbit length, for diagnostics.
pub fn orbit_heights(phi: &RatMap, alpha: &P1, n: usize) -> BTreeMap<usize, u64> {
    phi.orbit(alpha, n).heights.into_iter().enumerate().collect()
}
