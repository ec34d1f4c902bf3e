//! Dense univariate polynomials over `F_q`. Used both for `F_q[t]` and for
//! residue-field arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Gf};

/// A polynomial over `F_q`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone)]
pub struct PolyQ {
    field: Field,
    coeffs: Vec<Gf>,
}

impl PartialEq for PolyQ {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for PolyQ {}

impl PartialOrd for PolyQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top down.
impl Ord for PolyQ {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl core::hash::Hash for PolyQ {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl core::fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_polyq(self, "t"))
    }
}

impl PolyQ {
    pub fn new(field: &Field, mut coeffs: Vec<Gf>) -> PolyQ {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> PolyQ {
        PolyQ::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> PolyQ {
        PolyQ { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> PolyQ {
        PolyQ::constant(field, Gf::ONE)
    }

    pub fn constant(field: &Field, c: Gf) -> PolyQ {
        PolyQ::new(field, vec![c])
    }

    /// The variable.
    pub fn var(field: &Field) -> PolyQ {
        PolyQ::new(field, vec![Gf::ZERO, Gf::ONE])
    }

    pub fn monomial(field: &Field, c: Gf, k: usize) -> PolyQ {
        let mut v = vec![Gf::ZERO; k + 1];
        v[k] = c;
        PolyQ::new(field, v)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Gf::ONE
    }

    #[inline]
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`, for height-style bookkeeping.
    #[inline]
    pub fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    #[inline]
    pub fn lead(&self) -> Gf {
        self.coeffs.last().copied().unwrap_or(Gf::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Gf::ONE
    }

    pub fn scale(&self, c: Gf) -> PolyQ {
        if c.is_zero() {
            return PolyQ::zero(&self.field);
        }
        let f = &self.field;
        PolyQ { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn monic(&self) -> PolyQ {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> PolyQ {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Gf::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        PolyQ { field: self.field.clone(), coeffs: v }
    }

    pub fn add_poly(&self, other: &PolyQ) -> PolyQ {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        PolyQ::new(f, v)
    }

    pub fn sub_poly(&self, other: &PolyQ) -> PolyQ {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        PolyQ::new(f, v)
    }

    pub fn neg_poly(&self) -> PolyQ {
        let f = &self.field;
        PolyQ { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn mul_poly(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero(&self.field);
        }
        let f = &self.field;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if f.degree() == 1 {
            let p = f.characteristic() as u64;
            // accumulate in u64 and reduce at the end; safe while len * p^2 < 2^64
            let mut acc = vec![0u64; n];
            let reduce_every = (u64::MAX / (p * p)).max(1) as usize;
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a = a.0 as u64;
                for (j, &b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += a * b.0 as u64;
                }
                if (i + 1) % reduce_every == 0 {
                    for x in acc.iter_mut() {
                        *x %= p;
                    }
                }
            }
            let v = acc.into_iter().map(|x| Gf((x % p) as u32)).collect();
            return PolyQ::new(f, v);
        }
        let mut v = vec![Gf::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        PolyQ::new(f, v)
    }

    pub fn square(&self) -> PolyQ {
        self.mul_poly(self)
    }

    pub fn pow(&self, mut e: u64) -> PolyQ {
        let mut result = PolyQ::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Euclidean division; panics when `d` is zero.
    pub fn div_rem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (PolyQ::zero(f), self.clone());
        }
        let inv_lead = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![Gf::ZERO; r.len() - dd];
        if f.degree() == 1 {
            let p = f.characteristic() as u64;
            let neg_d: Vec<u64> = d.coeffs.iter().map(|c| (p - c.0 as u64) % p).collect();
            for k in (0..q.len()).rev() {
                let top = r[k + dd];
                if top.is_zero() {
                    continue;
                }
                let c = f.mul(top, inv_lead);
                q[k] = c;
                let c = c.0 as u64;
                for (i, &nd) in neg_d.iter().enumerate() {
                    let slot = &mut r[k + i];
                    slot.0 = ((slot.0 as u64 + c * nd) % p) as u32;
                }
            }
        } else {
            for k in (0..q.len()).rev() {
                let top = r[k + dd];
                if top.is_zero() {
                    continue;
                }
                let c = f.mul(top, inv_lead);
                q[k] = c;
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = f.sub(r[k + i], f.mul(c, dc));
                }
            }
        }
        r.truncate(dd);
        (PolyQ::new(f, q), PolyQ::new(f, r))
    }

    pub fn rem(&self, d: &PolyQ) -> PolyQ {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &PolyQ) -> Option<PolyQ> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &PolyQ) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &PolyQ) -> (PolyQ, PolyQ, PolyQ) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyQ::one(f), PolyQ::zero(f));
        let (mut u0, mut u1) = (PolyQ::zero(f), PolyQ::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub_poly(&q.mul_poly(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let u = u0.sub_poly(&q.mul_poly(&u1));
            u0 = core::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let c = f.inv(r0.lead());
        (r0.scale(c), s0.scale(c), u0.scale(c))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &PolyQ) -> Option<PolyQ> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &PolyQ, m: &PolyQ) -> PolyQ {
        self.mul_poly(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &PolyQ) -> PolyQ {
        let mut result = PolyQ::one(&self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        result
    }

    /// `self^q mod m`, the Frobenius of the coefficient field's order.
    pub fn frobenius_mod(&self, m: &PolyQ) -> PolyQ {
        self.pow_mod(self.field.order() as u64, m)
    }

    pub fn derivative(&self) -> PolyQ {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        PolyQ::new(f, v)
    }

    pub fn eval(&self, x: Gf) -> Gf {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Gf::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Given `self = h(var^p)` (zero derivative), returns the `p`-th root `r`
    /// with `r^p = self`.
    pub fn pth_root(&self) -> Option<PolyQ> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        if self.coeffs.iter().enumerate().any(|(i, c)| i % p != 0 && !c.is_zero()) {
            return None;
        }
        let v = self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect();
        Some(PolyQ::new(f, v))
    }

    /// Substitute `var -> var + a`.
    pub fn taylor_shift(&self, a: Gf) -> PolyQ {
        let f = &self.field;
        let mut v = self.coeffs.clone();
        let n = v.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                v[j] = f.add(v[j], f.mul(a, v[j + 1]));
            }
        }
        PolyQ::new(f, v)
    }

    /// `var^deg * self(1/var)` for the given formal degree.
    pub fn reverse(&self, deg: usize) -> PolyQ {
        let mut v = vec![Gf::ZERO; deg + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[deg - i] = c;
        }
        PolyQ::new(&self.field, v)
    }

    /// Apply a coefficient map into another field.
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(Gf) -> Gf) -> PolyQ {
        PolyQ::new(target, self.coeffs.iter().map(|&c| map(c)).collect())
    }

    /// Multiplicity of `d` (nonconstant) as a divisor; `None` for zero.
    pub fn multiplicity_of(&self, d: &PolyQ) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(d);
            if !r.is_zero() {
                return Some(k);
            }
            cur = q;
            k += 1;
        }
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        self.add_poly(rhs)
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        self.sub_poly(rhs)
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        self.mul_poly(rhs)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        self.neg_poly()
    }
}
