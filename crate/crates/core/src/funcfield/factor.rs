//! Factorization in `F_q[t]`: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.
//!
//! The equal-degree step draws from a ChaCha stream seeded by a hash of the
//! input, so a given polynomial always factors along the same path.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::field::Gf;
use super::poly::PolyQ;
use crate::error::{Error, Result};

/// `f = unit * prod(factor^mult)`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Gf,
    pub factors: Vec<(PolyQ, u32)>,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn expand(&self, template: &PolyQ) -> PolyQ {
        let f = template.field();
        self.factors
            .iter()
            .fold(PolyQ::constant(f, self.unit), |acc, (g, m)| acc.mul_poly(&g.pow(*m as u64)))
    }
}

fn seed_for(f: &PolyQ) -> u64 {
    // FNV-1a over the coefficient encodings
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in f.coeffs() {
        for b in c.index().to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime squarefree
/// parts with their multiplicities.
pub fn squarefree_decomposition(f: &PolyQ) -> Vec<(PolyQ, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field().characteristic();
    let fp = f.derivative();
    if fp.is_zero() {
        let r = f.pth_root().expect("zero derivative implies a p-th power");
        for (g, m) in squarefree_decomposition(&r) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        let r = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, m) in squarefree_decomposition(&r) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(f: &PolyQ) -> Vec<(PolyQ, usize)> {
    let mut out = Vec::new();
    let field = f.field();
    let x = PolyQ::var(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1usize;
    while 2 * d <= rest.degree().unwrap_or(0) {
        h = h.frobenius_mod(&rest);
        let g = rest.gcd(&h.sub_poly(&x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(dr) = rest.degree() {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

fn random_poly(template: &PolyQ, below: usize, rng: &mut ChaCha8Rng) -> PolyQ {
    let field = template.field();
    let q = field.order();
    let v = (0..below)
        .map(|_| field.from_index(rng.next_u32() % q).unwrap())
        .collect();
    PolyQ::new(field, v)
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree(g: &PolyQ, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyQ> {
    let n = g.degree().unwrap_or(0);
    if n == d {
        return alloc::vec![g.monic()];
    }
    let field = g.field();
    let p = field.characteristic();
    let one = PolyQ::one(field);
    loop {
        let r = random_poly(g, n, rng);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let candidate = if p == 2 {
            // absolute trace to F_2: sum of r^(2^j) for j < e*d
            let steps = field.degree() as usize * d;
            let mut s = r.rem(g);
            let mut acc = s.clone();
            for _ in 1..steps {
                s = s.mul_mod(&s, g);
                acc = acc.add_poly(&s);
            }
            acc
        } else {
            // r^((q^d - 1)/2) = (r^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut s = r.rem(g);
            let mut acc = s.clone();
            for _ in 1..d {
                s = s.frobenius_mod(g);
                acc = acc.mul_mod(&s, g);
            }
            acc.pow_mod(((field.order() - 1) / 2) as u64, g).sub_poly(&one)
        };
        let h = g.gcd(&candidate);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < n {
            let other = g.exact_div(&h).expect("gcd divides");
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Full factorization over `F_q`.
pub fn poly_factor(f: &PolyQ) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lead();
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(&monic));
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&part) {
            for irr in equal_degree(&block, d, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Ben-Or irreducibility test.
pub fn is_irreducible(f: &PolyQ) -> bool {
    let n = match f.degree() {
        Some(n) if n > 0 => n,
        _ => return false,
    };
    let m = f.monic();
    let x = PolyQ::var(f.field());
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = h.frobenius_mod(&m);
        if m.gcd(&h.sub_poly(&x)).degree().unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}

/// Roots in the coefficient field, each listed once.
pub fn roots(f: &PolyQ) -> Vec<Gf> {
    if f.is_zero() {
        return Vec::new();
    }
    let field = f.field();
    let m = f.monic();
    let x = PolyQ::var(field);
    let xq = x.frobenius_mod(&m);
    let lin = m.gcd(&xq.sub_poly(&x));
    if lin.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(&lin));
    let mut out: Vec<Gf> = equal_degree(&lin, 1, &mut rng)
        .into_iter()
        .map(|l| field.neg(l.coeff(0)))
        .collect();
    out.sort();
    out
}

/// All monic irreducible polynomials of degree `d` over the field, in
/// increasing order. Intended for small `q^d`.
pub fn monic_irreducibles(field: &super::field::Field, d: usize) -> Vec<PolyQ> {
    let q = field.order() as u64;
    let count = q.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut v = Vec::with_capacity(d + 1);
        let mut x = idx;
        for _ in 0..d {
            v.push(field.from_index((x % q) as u32).unwrap());
            x /= q;
        }
        v.push(Gf::ONE);
        let cand = PolyQ::new(field, v);
        if is_irreducible(&cand) {
            out.push(cand);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::field::Field;

    #[test]
    fn t_squared_plus_t_over_f2() {
        let f = Field::prime(2).unwrap();
        let poly = PolyQ::from_ints(&f, &[0, 1, 1]);
        let fac = poly_factor(&poly).unwrap();
        assert_eq!(fac.unit, Gf::ONE);
        assert_eq!(
            fac.factors,
            alloc::vec![(PolyQ::from_ints(&f, &[0, 1]), 1), (PolyQ::from_ints(&f, &[1, 1]), 1)]
        );
    }

    #[test]
    fn linear_is_irreducible() {
        let f = Field::prime(3).unwrap();
        let t = PolyQ::var(&f);
        let fac = poly_factor(&t).unwrap();
        assert_eq!(fac.factors, alloc::vec![(t, 1)]);
    }

    #[test]
    fn rootless_cubic_over_f3_is_irreducible() {
        let f = Field::prime(3).unwrap();
        let c = PolyQ::from_ints(&f, &[1, 1, 2, 1]);
        // values at 0, 1, 2 are 1, 2, 1
        let vals: Vec<u32> = f.elements().map(|x| c.eval(x).index()).collect();
        assert_eq!(vals, alloc::vec![1, 2, 1]);
        assert!(is_irreducible(&c));
        assert_eq!(poly_factor(&c).unwrap().factors.len(), 1);
    }

    #[test]
    fn zero_rejected() {
        let f = Field::prime(3).unwrap();
        assert_eq!(poly_factor(&PolyQ::zero(&f)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn repeated_and_inseparable_parts() {
        let f = Field::prime(2).unwrap();
        let a = PolyQ::from_ints(&f, &[1, 1]);
        let b = PolyQ::from_ints(&f, &[1, 1, 1]);
        let poly = a.pow(4).mul_poly(&b.pow(3)).mul_poly(&PolyQ::var(&f));
        let fac = poly_factor(&poly).unwrap();
        assert_eq!(fac.expand(&poly), poly);
        assert!(fac.factors.contains(&(a, 4)));
        assert!(fac.factors.contains(&(b, 3)));
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree 3 over F_3 is (27 - 3)/3 = 8
        let f = Field::prime(3).unwrap();
        assert_eq!(monic_irreducibles(&f, 3).len(), 8);
        let f4 = Field::new(2, 2, None).unwrap();
        // degree 2 over F_4: (16 - 4)/2 = 6
        assert_eq!(monic_irreducibles(&f4, 2).len(), 6);
    }
}
