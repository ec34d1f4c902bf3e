//! Weil and canonical heights on `P^1(K)`.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::funcfield::linalg::smith_valuations;
use crate::funcfield::{valuation, P1};
use crate::ratmap::RatMap;
use crate::reduction::{bad_reduction_places, homogeneous_sylvester};

/// Cap on orbit steps in the preperiodicity search.
pub const DEFAULT_ORBIT_BUDGET: u64 = 1 << 16;
/// Cap on `h(phi^n z)` while approximating canonical heights.
pub const DEFAULT_HEIGHT_BUDGET: u64 = 1 << 16;

pub fn weil_height(z: &P1) -> u64 {
    z.height()
}

/// `C` with `|h(phi(z)) - d h(z)| <= C` on all of `P^1(K)`.
///
/// Write `z = [x : y]` and `phi = [N : D]` with `N, D` forms of degree `d`
/// whose coefficients are coprime polynomials in `t`, of max degree `H`.
/// Then `h(z) = sum_v N_v (-min(v x, v y))` and likewise for `phi(z)`.
///
/// Upper: at finite `v` the coefficients are integral, so `v N(x,y)` and
/// `v D(x,y)` are at least `d min(v x, v y)`; at infinity they are at least
/// `-H + d min(...)`. Summing gives `h(phi z) <= d h(z) + H`.
///
/// Lower: let `S` be the `2d x 2d` Sylvester matrix of `(N, D)` and `s_v`
/// its largest elementary divisor valuation over `O_v`. Then `pi^{s_v}`
/// times any form of degree `2d - 1` lies in `O_v[x,y]_{d-1} N + O_v[x,y]_{d-1} D`;
/// applied to `x^{2d-1}` and `y^{2d-1}` this yields
/// `min(v N(x,y), v D(x,y)) <= d min(v x, v y) + s_v`. With `e_v = s_v - m_v`
/// (scale-free, zero at good places) and `m_v = 0` at finite places,
/// `m_inf = -H` for the primitive pair, summing gives
/// `h(phi z) >= d h(z) - (sum_v N_v e_v - H)`.
pub fn functoriality_constant(phi: &RatMap) -> Result<u64> {
    let d = phi.degree() as usize;
    if d < 2 {
        return Err(Error::Precondition("map degree must be at least 2".into()));
    }
    let h_phi = primitive_height(phi) as i64;
    let syl = homogeneous_sylvester(phi.num(), phi.den(), d);
    let mut sum = 0i64;
    for pl in bad_reduction_places(phi)? {
        let m = phi
            .num()
            .coeffs()
            .iter()
            .chain(phi.den().coeffs())
            .filter_map(|c| valuation(c, &pl))
            .min()
            .unwrap();
        let s = smith_valuations(syl.clone(), &pl)
            .into_iter()
            .map(|v| v.expect("nonsingular Sylvester matrix"))
            .max()
            .unwrap();
        sum += pl.local_degree() as i64 * (s - m);
    }
    Ok(h_phi.max(sum - h_phi).max(0) as u64)
}

/// Max `t`-degree of the coefficients of `(N, D)` scaled to coprime polynomials.
pub fn primitive_height(phi: &RatMap) -> u64 {
    let d = phi.degree() as usize;
    // stack N and D into one polynomial so a single content is removed
    phi.num().shift(d + 1).add_poly(phi.den()).deg_t() as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightValue {
    pub value: BigRational,
    pub error_bound: BigRational,
    /// Iterate used: `value = h(phi^n z) / d^n`.
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preperiodicity {
    Preperiodic { tail: u64, cycle: u64 },
    /// `h(phi^n z) (d - 1) > C`, after which heights increase strictly.
    Wandering { n: u64, height: u64, constant: u64 },
}

pub fn is_preperiodic(phi: &RatMap, z: &P1, budget: u64) -> Result<Preperiodicity> {
    let c = functoriality_constant(phi)?;
    is_preperiodic_with(phi, z, c, budget)
}

pub fn is_preperiodic_with(phi: &RatMap, z: &P1, c: u64, budget: u64) -> Result<Preperiodicity> {
    let d1 = phi.degree() - 1;
    let mut seen: BTreeMap<P1, u64> = BTreeMap::new();
    let mut w = z.clone();
    for n in 0..=budget {
        let h = w.height();
        if h * d1 > c {
            return Ok(Preperiodicity::Wandering { n, height: h, constant: c });
        }
        if let Some(&m) = seen.get(&w) {
            return Ok(Preperiodicity::Preperiodic { tail: m, cycle: n - m });
        }
        let next = phi.evaluate(&w);
        seen.insert(w, n);
        w = next;
    }
    Err(Error::Budget { what: "orbit steps", value: budget + 1, limit: budget })
}

/// `h(phi^n z) / d^n` with `n` minimal such that `C / ((d-1) d^n) <= eps`;
/// exactly zero for preperiodic `z`.
pub fn canonical_height(phi: &RatMap, z: &P1, eps: &BigRational, budget: u64) -> Result<HeightValue> {
    if *eps <= BigRational::zero() {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let c = functoriality_constant(phi)?;
    if let Preperiodicity::Preperiodic { .. } = is_preperiodic_with(phi, z, c, DEFAULT_ORBIT_BUDGET)? {
        return Ok(HeightValue { value: BigRational::zero(), error_bound: BigRational::zero(), n: 0 });
    }
    let d = BigInt::from(phi.degree());
    let cc = BigRational::from_integer(BigInt::from(c));
    let mut dn = BigInt::one();
    let mut w = z.clone();
    let mut n = 0usize;
    loop {
        let err = &cc / BigRational::from_integer((&d - 1u32) * &dn);
        if err <= *eps {
            let value = BigRational::new(BigInt::from(w.height()), dn);
            return Ok(HeightValue { value, error_bound: err, n });
        }
        w = phi.evaluate(&w);
        n += 1;
        dn *= &d;
        if w.height() > budget {
            return Err(Error::Budget { what: "height", value: w.height(), limit: budget });
        }
    }
}
