//! Factorization in `K[x]`: specialize `t = t0`, factor over a finite field,
//! Hensel-lift in `s = t - t0`, then recombine local factors.

use alloc::vec;
use alloc::vec::Vec;

use super::factor::poly_factor;
use super::field::{Embedding, Field, Gf};
use super::kpoly::KPoly;
use super::poly::PolyQ;
use crate::error::{Error, Result};

/// Default cap on `deg_x * deg_t` of the content-cleared input.
pub const DEFAULT_FACTOR_BUDGET: u64 = 4096;

/// Largest constant extension tried for specialization points.
const MAX_SPECIAL_ORDER: u64 = 1 << 16;

/// How many valid specialization points are compared per attempt.
const CANDIDATE_POINTS: usize = 3;

struct Specializer {
    big: Field,
    emb: Option<Embedding>,
}

impl Specializer {
    fn new(field: &Field, k: u32) -> Result<Specializer> {
        if k == 1 {
            return Ok(Specializer { big: field.clone(), emb: None });
        }
        let (big, emb) = field.extension(k)?;
        Ok(Specializer { big, emb: Some(emb) })
    }

    fn map(&self, a: Gf) -> Gf {
        match &self.emb {
            None => a,
            Some(e) => e.map(a),
        }
    }

    fn preimage(&self, b: Gf) -> Option<Gf> {
        match &self.emb {
            None => Some(b),
            Some(e) => e.preimage(b),
        }
    }

    fn lift_poly(&self, a: &PolyQ) -> PolyQ {
        a.map_coeffs(&self.big, |c| self.map(c))
    }
}

/// Irreducible factorization over `K`: monic factors with multiplicities,
/// sorted. The product equals `F` up to a unit of `K`.
pub fn kpoly_factor(f: &KPoly, budget: u64) -> Result<Vec<(KPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    factor_rec(&f.monic(), budget, 0, &mut out)?;
    // merge duplicates that arise from different recursion branches
    out.sort();
    let mut merged: Vec<(KPoly, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

/// Irreducibility over `K`, decided with the second valid specialization
/// point rather than the first.
pub fn kpoly_is_irreducible(f: &KPoly, budget: u64) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    factor_rec(&f.monic(), budget, 1, &mut out)?;
    Ok(out.len() == 1 && out[0].1 == 1)
}

fn factor_rec(f: &KPoly, budget: u64, skip: usize, out: &mut Vec<(KPoly, u32)>) -> Result<()> {
    let n = f.deg0();
    if n == 0 {
        return Ok(());
    }
    if n == 1 {
        out.push((f.clone(), 1));
        return Ok(());
    }
    let p = f.field().characteristic();
    let d = f.derivative();
    if d.is_zero() {
        let g = f.deflate(p as usize).unwrap();
        let mut sub = Vec::new();
        factor_rec(&g, budget, skip, &mut sub)?;
        for (u, m) in sub {
            // u(x^p) is a p-th power exactly when u has coefficients in K^p
            match u.coeff_pth_root() {
                Some(r) => out.push((r, m * p)),
                None => out.push((u.inflate(p as usize), m)),
            }
        }
        return Ok(());
    }
    let c = f.gcd(&d);
    let s = f.exact_div(&c).unwrap();
    let mut rest = f.clone();
    for h in core_factor(&s, budget, skip)? {
        let mut m = 0;
        while let Some(q) = rest.exact_div(&h) {
            rest = q;
            m += 1;
        }
        out.push((h, m));
    }
    factor_rec(&rest.monic(), budget, skip, out)
}

/// Factors of a monic, separable, squarefree polynomial.
fn core_factor(f: &KPoly, budget: u64, skip: usize) -> Result<Vec<KPoly>> {
    let n = f.deg0();
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let (cs, _) = f.primitive();
    let deg_t = cs.iter().map(|c| c.deg0()).max().unwrap_or(0);
    let cost = (n as u64) * (deg_t.max(1) as u64);
    if cost > budget {
        return Err(Error::Budget { what: "kpoly_factor deg_x*deg_t", value: cost, limit: budget });
    }
    if deg_t == 0 {
        // constant coefficients: factor over F_q directly
        let pq = PolyQ::new(&field, cs.iter().map(|c| c.coeff(0)).collect());
        return Ok(poly_factor(&pq)?
            .factors
            .into_iter()
            .map(|(g, _)| KPoly::from_polys(&field, &g.coeffs().iter().map(|&c| PolyQ::constant(&field, c)).collect::<Vec<_>>()))
            .collect());
    }
    let (spec, t0, locals) = choose_point(&cs, skip)?;
    if locals.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let lc_deg = cs[n].deg0();
    let prec = deg_t + lc_deg + 1;
    let lifted = hensel_lift(&spec, &cs, t0, &locals, prec);
    Ok(recombine(&spec, &field, cs, t0, lifted, prec))
}

/// Enumerates specialization points in `F_q`, then proper extensions.
fn choose_point(cs: &[PolyQ], skip: usize) -> Result<(Specializer, Gf, Vec<PolyQ>)> {
    let field = cs[0].field().clone();
    let q = field.order() as u64;
    let n = cs.len() - 1;
    let mut k = 1u32;
    let mut seen = 0usize;
    loop {
        let order = q.checked_pow(k).unwrap_or(u64::MAX);
        if k > 1 && order > MAX_SPECIAL_ORDER {
            return Err(Error::NoSpecialization(k - 1));
        }
        let spec = Specializer::new(&field, k)?;
        let lifted: Vec<PolyQ> = cs.iter().map(|c| spec.lift_poly(c)).collect();
        let mut best: Option<(Gf, Vec<PolyQ>)> = None;
        let mut found = 0usize;
        for t0 in spec.big.elements() {
            if k > 1 && spec.preimage(t0).is_some() {
                continue;
            }
            if lifted[n].eval(t0).is_zero() {
                continue;
            }
            let f0 = PolyQ::new(&spec.big, lifted.iter().map(|c| c.eval(t0)).collect());
            if f0.gcd(&f0.derivative()).deg0() != 0 {
                continue;
            }
            if seen < skip {
                seen += 1;
                continue;
            }
            let facs: Vec<PolyQ> = poly_factor(&f0)?.factors.into_iter().map(|(g, _)| g).collect();
            if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
                best = Some((t0, facs));
            }
            found += 1;
            if found >= CANDIDATE_POINTS || best.as_ref().unwrap().1.len() == 1 {
                break;
            }
        }
        if let Some((t0, facs)) = best {
            return Ok((spec, t0, facs));
        }
        k += 1;
    }
}

/// Truncated power series in `s` with coefficients in `R[x]`.
type Series = Vec<PolyQ>;

fn series_mul(a: &Series, b: &Series, prec: usize, zero: &PolyQ) -> Series {
    let mut out = vec![zero.clone(); prec];
    for (i, ai) in a.iter().enumerate().take(prec) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(prec - i) {
            if !bj.is_zero() {
                out[i + j] = out[i + j].add_poly(&ai.mul_poly(bj));
            }
        }
    }
    out
}

/// Coefficients of `c(s + t0)` as a series of constants.
fn shifted_scalar(spec: &Specializer, c: &PolyQ, t0: Gf, prec: usize) -> Vec<Gf> {
    let sh = spec.lift_poly(c).taylor_shift(t0);
    (0..prec).map(|i| sh.coeff(i)).collect()
}

fn scalar_series_inv(a: &[Gf], big: &Field) -> Vec<Gf> {
    let prec = a.len();
    let inv0 = big.inv(a[0]);
    let mut out = vec![Gf::ZERO; prec];
    out[0] = inv0;
    for k in 1..prec {
        let mut acc = Gf::ZERO;
        for j in 1..=k {
            acc = big.add(acc, big.mul(a[j], out[k - j]));
        }
        out[k] = big.neg(big.mul(acc, inv0));
    }
    out
}

/// Bivariate `F(s + t0, x)` as a series in `s`.
fn shifted_series(spec: &Specializer, cs: &[PolyQ], t0: Gf, prec: usize) -> Series {
    let cols: Vec<Vec<Gf>> = cs.iter().map(|c| shifted_scalar(spec, c, t0, prec)).collect();
    (0..prec)
        .map(|j| PolyQ::new(&spec.big, cols.iter().map(|col| col[j]).collect()))
        .collect()
}

/// Multifactor linear Hensel lifting of monic local factors of `F / lc(F)`.
fn hensel_lift(spec: &Specializer, cs: &[PolyQ], t0: Gf, locals: &[PolyQ], prec: usize) -> Vec<Series> {
    let big = &spec.big;
    let zero = PolyQ::zero(big);
    let n = cs.len() - 1;
    let fs = shifted_series(spec, cs, t0, prec);
    let lc = shifted_scalar(spec, &cs[n], t0, prec);
    let lc_inv = scalar_series_inv(&lc, big);
    let inv_series: Series = lc_inv.iter().map(|&c| PolyQ::constant(big, c)).collect();
    let target = series_mul(&fs, &inv_series, prec, &zero);

    let r = locals.len();
    let sigmas: Vec<PolyQ> = (0..r)
        .map(|i| {
            let others = (0..r)
                .filter(|&j| j != i)
                .fold(PolyQ::one(big), |acc, j| acc.mul_poly(&locals[j]));
            others.rem(&locals[i]).inv_mod(&locals[i]).expect("local factors are coprime")
        })
        .collect();

    let mut gs: Vec<Series> = locals
        .iter()
        .map(|g| {
            let mut s = vec![zero.clone(); prec];
            s[0] = g.clone();
            s
        })
        .collect();
    for j in 1..prec {
        let mut prod: Series = vec![PolyQ::one(big)];
        prod.resize(j + 1, zero.clone());
        for g in &gs {
            prod = series_mul(&prod, g, j + 1, &zero);
        }
        let e = target[j].sub_poly(&prod[j]);
        if e.is_zero() {
            continue;
        }
        for (g, (sig, loc)) in gs.iter_mut().zip(sigmas.iter().zip(locals)) {
            g[j] = e.mul_poly(sig).rem(loc);
        }
    }
    gs
}

/// Converts a candidate series back to a polynomial over `F_q` in `t`, or
/// `None` when some coefficient leaves the base field.
fn series_to_bivariate(spec: &Specializer, field: &Field, s: &Series, t0: Gf, n: usize) -> Option<Vec<PolyQ>> {
    let big = &spec.big;
    let neg_t0 = big.neg(t0);
    (0..=n)
        .map(|k| {
            let in_s = PolyQ::new(big, s.iter().map(|c| c.coeff(k)).collect());
            let in_t = in_s.taylor_shift(neg_t0);
            let v: Option<Vec<Gf>> = in_t.coeffs().iter().map(|&c| spec.preimage(c)).collect();
            Some(PolyQ::new(field, v?))
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn recombine(spec: &Specializer, field: &Field, cs: Vec<PolyQ>, t0: Gf, lifted: Vec<Series>, prec: usize) -> Vec<KPoly> {
    let big = &spec.big;
    let zero = PolyQ::zero(big);
    let mut remaining = lifted;
    let mut current = KPoly::from_polys(field, &cs);
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let cur_cs = current.primitive().0;
        let lc = shifted_scalar(spec, cur_cs.last().unwrap(), t0, prec);
        let lc_series: Series = lc.iter().map(|&c| PolyQ::constant(big, c)).collect();
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            let mut cand = lc_series.clone();
            for &i in &subset {
                cand = series_mul(&cand, &remaining[i], prec, &zero);
            }
            let deg: usize = subset.iter().map(|&i| remaining[i][0].deg0()).sum();
            let Some(biv) = series_to_bivariate(spec, field, &cand, t0, deg) else {
                continue;
            };
            let h = KPoly::from_polys(field, &biv);
            if h.deg0() != deg {
                continue;
            }
            if let Some(q) = current.exact_div(&h) {
                hit = Some((subset, h, q));
                break;
            }
        }
        match hit {
            Some((subset, h, q)) => {
                found.push(h.monic());
                current = q;
                let mut i = 0;
                remaining.retain(|_| {
                    let keep = !subset.contains(&i);
                    i += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if current.deg0() > 0 {
        found.push(current.monic());
    }
    found
}

/// Re-multiplies a factorization (for checks).
pub fn expand_factors(field: &Field, facs: &[(KPoly, u32)]) -> KPoly {
    facs.iter()
        .fold(KPoly::one(field), |acc, (g, m)| acc.mul_poly(&g.pow(*m as u64)))
}

/// Leading-unit-free equality: `a = c * b` for some nonzero `c in K`.
pub fn associates(a: &KPoly, b: &KPoly) -> bool {
    a.monic() == b.monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::frac::Frac;

    fn kp(f: &Field, cs: &[Frac]) -> KPoly {
        KPoly::new(f, cs.to_vec())
    }

    #[test]
    fn difference_of_squares() {
        let f = Field::prime(3).unwrap();
        let t = Frac::t(&f);
        let z = Frac::zero(&f);
        let one = Frac::one(&f);
        let poly = kp(&f, &[t.pow(2).neg_frac(), z, one]);
        let facs = kpoly_factor(&poly, DEFAULT_FACTOR_BUDGET).unwrap();
        let mut expect = vec![(KPoly::linear(&t.neg_frac()), 1), (KPoly::linear(&t), 1)];
        expect.sort();
        assert_eq!(facs, expect);
        assert!(associates(&expand_factors(&f, &facs), &poly));
    }

    #[test]
    fn x2_plus_t_irreducible() {
        let f = Field::prime(3).unwrap();
        let t = Frac::t(&f);
        let poly = kp(&f, &[t, Frac::zero(&f), Frac::one(&f)]);
        assert_eq!(kpoly_factor(&poly, DEFAULT_FACTOR_BUDGET).unwrap(), vec![(poly.clone(), 1)]);
        assert!(kpoly_is_irreducible(&poly, DEFAULT_FACTOR_BUDGET).unwrap());
    }

    #[test]
    fn quartic_preimage_irreducible() {
        let f = Field::prime(3).unwrap();
        let t = Frac::t(&f);
        let z = Frac::zero(&f);
        let poly = kp(&f, &[&t.pow(2) + &t, z.clone(), t.scale(f.from_int(2)), z, Frac::one(&f)]);
        assert_eq!(kpoly_factor(&poly, DEFAULT_FACTOR_BUDGET).unwrap().len(), 1);
        assert!(kpoly_is_irreducible(&poly, DEFAULT_FACTOR_BUDGET).unwrap());
    }

    #[test]
    fn mixed_product_with_inseparable_factor() {
        let f = Field::prime(3).unwrap();
        let t = Frac::t(&f);
        let z = Frac::zero(&f);
        let one = Frac::one(&f);
        let a = kp(&f, &[t.neg_frac(), z.clone(), z.clone(), one.clone()]); // x^3 - t
        let b = kp(&f, &[t.clone(), one.clone(), one.clone()]); // x^2 + x + t
        let c = KPoly::linear(&t.inv().unwrap());
        let poly = a.mul_poly(&b.pow(2)).mul_poly(&c.pow(3)).scale(&t);
        let facs = kpoly_factor(&poly, DEFAULT_FACTOR_BUDGET).unwrap();
        assert!(associates(&expand_factors(&f, &facs), &poly));
        assert!(facs.contains(&(a, 1)));
        assert!(facs.contains(&(b, 2)));
        assert!(facs.contains(&(c, 3)));
    }

    #[test]
    fn splits_over_extension_only_when_rational() {
        // x^2 + 1 over F_3(t) is irreducible; its specializations all stay irreducible
        let f = Field::prime(3).unwrap();
        let poly = kp(&f, &[Frac::one(&f), Frac::zero(&f), Frac::one(&f)]);
        assert_eq!(kpoly_factor(&poly, DEFAULT_FACTOR_BUDGET).unwrap().len(), 1);
        // (x^2 + t)(x^2 + t + 1): both irreducible, product of degree 4
        let t = Frac::t(&f);
        let a = kp(&f, &[t.clone(), Frac::zero(&f), Frac::one(&f)]);
        let b = kp(&f, &[&t + &Frac::one(&f), Frac::zero(&f), Frac::one(&f)]);
        let facs = kpoly_factor(&a.mul_poly(&b), DEFAULT_FACTOR_BUDGET).unwrap();
        assert_eq!(facs.len(), 2);
    }

    #[test]
    fn budget_enforced() {
        let f = Field::prime(3).unwrap();
        let t = Frac::t(&f);
        let poly = kp(&f, &[t.pow(40), Frac::one(&f), Frac::one(&f)]);
        assert!(matches!(kpoly_factor(&poly, 10), Err(Error::Budget { .. })));
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 4).len(), 1);
        assert_eq!(combinations(3, 0).len(), 1);
    }
}
