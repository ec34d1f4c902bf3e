//! Finite fields `F_q`, `q = p^e`, as `F_p[g]/(m(g))` for a verified irreducible `m`.
//!
//! Elements are encoded as integers `0..q`: base-`p` digit `i` is the coefficient
//! of `g^i`. Multiplication goes through log/antilog tables, so `q` is capped at
//! [`MAX_FIELD_ORDER`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest field order accepted (tables are `O(q)` words).
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

/// An element of `F_q`, meaningful only together with its [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf(pub(crate) u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer encoding (base-`p` digits are the coefficients in `g`).
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over `F_p`, lowest degree first, length `e + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to the tables of one finite field. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {}", self.0.p, self.0.e, self.modulus_string())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p used only to bootstrap the tables.
mod raw {
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let pp = p as u64;
        let mut prod = alloc::vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % pp;
            }
        }
        let mut r: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        rem_in_place(&mut r, m, p);
        r
    }

    /// `m` must be monic.
    pub fn rem_in_place(r: &mut Vec<u32>, m: &[u32], p: u32) {
        trim(r);
        let dm = m.len() - 1;
        let pp = p as u64;
        while r.len() > dm {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - dm;
            for (k, &c) in m.iter().enumerate() {
                let sub = lead * c as u64 % pp;
                let v = (r[shift + k] as u64 + pp - sub) % pp;
                r[shift + k] = v as u32;
            }
            trim(r);
        }
    }

    pub fn inv_mod_p(a: u32, p: u32) -> u32 {
        super::pow_mod_u64(a as u64, p as u64 - 2, p as u64) as u32
    }

    pub fn gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let inv = inv_mod_p(*b.last().unwrap(), p);
            let monic: Vec<u32> = b.iter().map(|&c| (c as u64 * inv as u64 % p as u64) as u32).collect();
            rem_in_place(&mut a, &monic, p);
            core::mem::swap(&mut a, &mut b);
        }
        a
    }

    pub fn pow_mod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = alloc::vec![1u32];
        let mut b = base.to_vec();
        rem_in_place(&mut b, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            exp >>= 1;
        }
        result
    }

    /// Ben-Or irreducibility test for a monic polynomial over F_p.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let d = m.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let x = alloc::vec![0u32, 1];
        let mut xp = x.clone();
        for _ in 0..d / 2 {
            xp = pow_mod(&xp, p as u64, m, p);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(m.to_vec(), diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

pub(crate) fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(x % p);
        x /= p;
    }
    raw::trim(&mut d);
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// First monic irreducible polynomial of degree `e` over `F_p` in lexicographic
/// order of the (little-endian) coefficient vector.
pub(crate) fn first_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for idx in 0..count {
        let mut m: Vec<u32> = Vec::with_capacity(e as usize + 1);
        let mut x = idx;
        for _ in 0..e {
            m.push((x % p as u64) as u32);
            x /= p as u64;
        }
        m.push(1);
        if raw::is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// `F_{p^e}` with the given monic modulus over `F_p` (lowest degree first),
    /// or the first irreducible one in lexicographic order when `None`.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(alloc::format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::InvalidField(alloc::format!("{p}^{e} exceeds the supported field size")))?;
        let modulus = match modulus {
            Some(mut m) => {
                for c in m.iter_mut() {
                    *c %= p;
                }
                raw::trim(&mut m);
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(Error::InvalidField(alloc::format!(
                        "modulus must be monic of degree {e}"
                    )));
                }
                if !raw::is_irreducible(&m, p) {
                    return Err(Error::InvalidField("modulus is not irreducible over F_p".into()));
                }
                m
            }
            None if e == 1 => vec![0, 1],
            None => first_irreducible(p, e),
        };
        let q = q as u32;
        let (exp, log) = build_tables(p, e, q, &modulus);
        Ok(Field(Arc::new(FieldData { p, e, q, modulus, exp, log })))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut s = String::new();
        let mut first = true;
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                s.push('+');
            }
            first = false;
            match (i, c) {
                (0, c) => s.push_str(&alloc::format!("{c}")),
                (1, 1) => s.push('g'),
                (1, c) => s.push_str(&alloc::format!("{c}*g")),
                (i, 1) => s.push_str(&alloc::format!("g^{i}")),
                (i, c) => s.push_str(&alloc::format!("{c}*g^{i}")),
            }
        }
        s
    }

    #[inline]
    pub fn zero(&self) -> Gf {
        Gf::ZERO
    }

    #[inline]
    pub fn one(&self) -> Gf {
        Gf::ONE
    }

    /// The class of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from its integer encoding; `None` when out of range.
    pub fn from_index(&self, i: u32) -> Option<Gf> {
        (i < self.0.q).then_some(Gf(i))
    }

    /// The generator `g` of `F_q` over `F_p` (equals 0 when `e = 1`).
    pub fn generator(&self) -> Gf {
        if self.0.e == 1 {
            Gf(0)
        } else {
            Gf(self.0.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.0.q).map(Gf)
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        let d = &*self.0;
        if d.e == 1 {
            let s = a.0 + b.0;
            Gf(if s >= d.p { s - d.p } else { s })
        } else if d.p == 2 {
            Gf(a.0 ^ b.0)
        } else {
            let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
            while x > 0 || y > 0 {
                out += ((x % d.p + y % d.p) % d.p) * place;
                x /= d.p;
                y /= d.p;
                place *= d.p;
            }
            Gf(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        let d = &*self.0;
        if d.e == 1 {
            Gf(if a.0 == 0 { 0 } else { d.p - a.0 })
        } else if d.p == 2 {
            a
        } else {
            let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
            while x > 0 {
                out += ((d.p - x % d.p) % d.p) * place;
                x /= d.p;
                place *= d.p;
            }
            Gf(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf(0);
        }
        let d = &*self.0;
        let n = d.q - 1;
        let s = d.log[a.0 as usize] + d.log[b.0 as usize];
        Gf(d.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Gf) -> Gf {
        assert!(!a.is_zero(), "inverse of zero in F_q");
        let d = &*self.0;
        let n = d.q - 1;
        let l = d.log[a.0 as usize];
        Gf(d.exp[((n - l) % n) as usize])
    }

    #[inline]
    pub fn div(&self, a: Gf, b: Gf) -> Gf {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf(1);
        }
        if a.is_zero() {
            return Gf(0);
        }
        let d = &*self.0;
        let n = (d.q - 1) as u64;
        let l = d.log[a.0 as usize] as u64;
        Gf(d.exp[((l * (e % n)) % n) as usize])
    }

    /// Inverse Frobenius: the unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: Gf) -> Gf {
        let pe1 = (self.0.p as u64).pow(self.0.e - 1);
        self.pow(a, pe1)
    }

    /// Whether the element lies in the prime field.
    pub fn is_prime_field_elem(&self, a: Gf) -> bool {
        a.0 < self.0.p
    }

    /// Coefficients of `a` as a polynomial in `g` over `F_p`.
    pub fn digits(&self, a: Gf) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.e)
    }

    pub fn from_digits(&self, d: &[u32]) -> Gf {
        let mut v: Vec<u32> = d.iter().map(|&c| c % self.0.p).collect();
        raw::rem_in_place(&mut v, &self.0.modulus, self.0.p);
        Gf(undigits(&v, self.0.p))
    }

    /// Degree-`k` extension of this field together with an embedding of this
    /// field into it.
    pub fn extension(&self, k: u32) -> Result<(Field, Embedding)> {
        let big = Field::new(self.0.p, self.0.e * k, None)?;
        let image_of_g = if self.0.e == 1 {
            Gf(0)
        } else {
            // root of our modulus in the big field, found by exhaustive search
            big.elements()
                .find(|&x| {
                    let mut acc = Gf::ZERO;
                    for &c in self.0.modulus.iter().rev() {
                        acc = big.add(big.mul(acc, x), big.from_int(c as i64));
                    }
                    acc.is_zero()
                })
                .ok_or_else(|| Error::InvalidField("no embedding found".into()))?
        };
        let mut forward = Vec::with_capacity(self.0.q as usize);
        let mut backward = BTreeMap::new();
        for a in self.elements() {
            let mut acc = Gf::ZERO;
            for &c in self.digits(a).iter().rev() {
                acc = big.add(big.mul(acc, image_of_g), big.from_int(c as i64));
            }
            forward.push(acc);
            backward.insert(acc.0, a);
        }
        Ok((big.clone(), Embedding { small: self.clone(), big, forward, backward }))
    }

    pub fn format_elem(&self, a: Gf) -> String {
        if self.0.e == 1 {
            return alloc::format!("{}", a.0);
        }
        let d = self.digits(a);
        if d.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        let mut first = true;
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                s.push('+');
            }
            first = false;
            match (i, c) {
                (0, c) => s.push_str(&alloc::format!("{c}")),
                (1, 1) => s.push('g'),
                (1, c) => s.push_str(&alloc::format!("{c}*g")),
                (i, 1) => s.push_str(&alloc::format!("g^{i}")),
                (i, c) => s.push_str(&alloc::format!("{c}*g^{i}")),
            }
        }
        s
    }

    /// True when the printed form of `a` is a single term (no `+`).
    pub(crate) fn elem_is_monomial(&self, a: Gf) -> bool {
        self.digits(a).iter().filter(|&&c| c != 0).count() <= 1
    }
}

/// Field embedding `F_q -> F_{q^k}` with a partial inverse.
#[derive(Clone)]
pub struct Embedding {
    small: Field,
    big: Field,
    forward: Vec<Gf>,
    backward: BTreeMap<u32, Gf>,
}

impl Embedding {
    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    #[inline]
    pub fn map(&self, a: Gf) -> Gf {
        self.forward[a.0 as usize]
    }

    /// Preimage when `b` lies in the image of the small field.
    pub fn preimage(&self, b: Gf) -> Option<Gf> {
        self.backward.get(&b.0).copied()
    }
}

fn build_tables(p: u32, e: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = (q - 1) as u64;
    let factors = prime_factors(n);
    let as_vec = |x: u32| digits(x, p, e);
    let is_primitive = |c: u32| -> bool {
        let base = as_vec(c);
        factors.iter().all(|&r| {
            let v = raw::pow_mod(&base, n / r, modulus, p);
            v != [1u32]
        })
    };
    let gen = if q == 2 {
        1
    } else {
        (2..q).find(|&c| is_primitive(c)).expect("multiplicative group is cyclic")
    };
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; q as usize];
    let gvec = as_vec(gen);
    let mut cur = vec![1u32];
    for (i, slot) in exp.iter_mut().enumerate() {
        let idx = undigits(&cur, p);
        *slot = idx;
        log[idx as usize] = i as u32;
        cur = raw::mul_mod(&cur, &gvec, modulus, p);
    }
    (exp, log)
}
