//! Polynomials in one variable over `K = F_q(t)`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Gf};
use super::frac::Frac;
use super::poly::PolyQ;

/// A polynomial over `K`, lowest coefficient first, no trailing zeros.
#[derive(Clone)]
pub struct KPoly {
    field: Field,
    coeffs: Vec<Frac>,
}

impl PartialEq for KPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for KPoly {}

impl core::hash::Hash for KPoly {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl PartialOrd for KPoly {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top down.
impl Ord for KPoly {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl core::fmt::Debug for KPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_kpoly(self, "x"))
    }
}

impl KPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Frac>) -> KPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> KPoly {
        KPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> KPoly {
        KPoly::constant(Frac::one(field))
    }

    pub fn constant(c: Frac) -> KPoly {
        let field = c.field().clone();
        KPoly::new(&field, vec![c])
    }

    /// The variable `x`.
    pub fn x(field: &Field) -> KPoly {
        KPoly::new(field, vec![Frac::zero(field), Frac::one(field)])
    }

    /// `x - a`.
    pub fn linear(a: &Frac) -> KPoly {
        let f = a.field();
        KPoly::new(f, vec![a.neg_frac(), Frac::one(f)])
    }

    /// Polynomial whose coefficients are the given elements of `F_q[t]`.
    pub fn from_polys(field: &Field, cs: &[PolyQ]) -> KPoly {
        KPoly::new(field, cs.iter().map(|c| Frac::from_poly(c.clone())).collect())
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Frac] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Frac {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Frac::zero(&self.field))
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`.
    pub fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Frac {
        self.coeffs.last().cloned().unwrap_or_else(|| Frac::zero(&self.field))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> KPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn scale(&self, c: &Frac) -> KPoly {
        if c.is_zero() {
            return KPoly::zero(&self.field);
        }
        KPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul_frac(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> KPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Frac::zero(&self.field); k];
        v.extend(self.coeffs.iter().cloned());
        KPoly { field: self.field.clone(), coeffs: v }
    }

    pub fn add_poly(&self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        KPoly::new(&self.field, (0..n).map(|i| self.coeff(i).add_frac(&o.coeff(i))).collect())
    }

    pub fn sub_poly(&self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        KPoly::new(&self.field, (0..n).map(|i| self.coeff(i).sub_frac(&o.coeff(i))).collect())
    }

    pub fn neg_poly(&self) -> KPoly {
        KPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg_frac()).collect() }
    }

    pub fn mul_poly(&self, o: &KPoly) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut v = vec![Frac::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add_frac(&a.mul_frac(b));
                }
            }
        }
        KPoly::new(&self.field, v)
    }

    pub fn pow(&self, mut e: u64) -> KPoly {
        let mut base = self.clone();
        let mut acc = KPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &KPoly) -> (KPoly, KPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (KPoly::zero(&self.field), self.clone());
        }
        let mut q = vec![Frac::zero(&self.field); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = r[i].mul_frac(&inv);
            for j in 0..dd {
                if !d.coeffs[j].is_zero() {
                    r[i - dd + j] = r[i - dd + j].sub_frac(&c.mul_frac(&d.coeffs[j]));
                }
            }
            r[i] = Frac::zero(&self.field);
            q[i - dd] = c;
        }
        r.truncate(dd);
        (KPoly::new(&self.field, q), KPoly::new(&self.field, r))
    }

    pub fn rem(&self, d: &KPoly) -> KPoly {
        self.div_rem(d).1
    }

    pub fn exact_div(&self, d: &KPoly) -> Option<KPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, o: &KPoly) -> bool {
        o.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &KPoly) -> KPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, u)` with `s*self + u*o = g` monic.
    pub fn ext_gcd(&self, o: &KPoly) -> (KPoly, KPoly, KPoly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (KPoly::one(f), KPoly::zero(f));
        let (mut u0, mut u1) = (KPoly::zero(f), KPoly::one(f));
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
        let c = r0.lead().inv().unwrap();
        (r0.scale(&c), s0.scale(&c), u0.scale(&c))
    }

    /// Inverse modulo `m`, when it exists.
    pub fn inv_mod(&self, m: &KPoly) -> Option<KPoly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    pub fn mul_mod(&self, o: &KPoly, m: &KPoly) -> KPoly {
        self.mul_poly(o).rem(m)
    }

    /// `d/dx`.
    pub fn derivative(&self) -> KPoly {
        let f = &self.field;
        KPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(f.from_int(i as i64)))
                .collect(),
        )
    }

    /// `k`-th Hasse derivative: the coefficient of `y^k` in `self(x + y)`.
    pub fn hasse(&self, k: usize) -> KPoly {
        let f = &self.field;
        let p = f.characteristic() as u64;
        KPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(k)
                .map(|(i, c)| c.scale(f.from_int(binom_mod(i as u64, k as u64, p) as i64)))
                .collect(),
        )
    }

    /// Coefficientwise `d/dt`.
    pub fn derivative_t(&self) -> KPoly {
        KPoly::new(&self.field, self.coeffs.iter().map(|c| c.derivative_t()).collect())
    }

    pub fn eval(&self, a: &Frac) -> Frac {
        self.coeffs
            .iter()
            .rev()
            .fold(Frac::zero(&self.field), |acc, c| acc.mul_frac(a).add_frac(c))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &KPoly) -> KPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(KPoly::zero(&self.field), |acc, c| acc.mul_poly(g).add_poly(&KPoly::constant(c.clone())))
    }

    /// `self(x + a)`.
    pub fn taylor_shift(&self, a: &Frac) -> KPoly {
        let mut v = self.coeffs.clone();
        let n = v.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = v[j + 1].mul_frac(a);
                v[j] = v[j].add_frac(&t);
            }
        }
        KPoly::new(&self.field, v)
    }

    /// `x^deg * self(1/x)` for the given formal degree.
    pub fn reverse(&self, deg: usize) -> KPoly {
        let mut v = vec![Frac::zero(&self.field); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[deg - i] = c.clone();
        }
        KPoly::new(&self.field, v)
    }

    /// Largest `k` with `self in K[x^k]` among powers of `p`; `self = G(x^k)`.
    pub fn inseparable_exponent(&self) -> u64 {
        if self.deg0() == 0 {
            return 1;
        }
        let p = self.field.characteristic() as usize;
        let mut k = 1usize;
        loop {
            let next = k * p;
            if self.coeffs.iter().enumerate().all(|(i, c)| i % next == 0 || c.is_zero()) {
                k = next;
            } else {
                return k as u64;
            }
        }
    }

    /// `G` with `G(x^k) = self`; `None` unless `self in K[x^k]`.
    pub fn deflate(&self, k: usize) -> Option<KPoly> {
        if self.coeffs.iter().enumerate().any(|(i, c)| i % k != 0 && !c.is_zero()) {
            return None;
        }
        Some(KPoly::new(&self.field, self.coeffs.iter().step_by(k).cloned().collect()))
    }

    /// `self(x^k)`.
    pub fn inflate(&self, k: usize) -> KPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Frac::zero(&self.field); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        KPoly::new(&self.field, v)
    }

    /// Coefficientwise `p`-th root, when every coefficient lies in `K^p`.
    pub fn coeff_pth_root(&self) -> Option<KPoly> {
        let v: Option<Vec<Frac>> = self.coeffs.iter().map(|c| c.pth_root()).collect();
        Some(KPoly::new(&self.field, v?))
    }

    /// `(cs, c)` with `self = c * sum cs[i] x^i`, the `cs` coprime in `F_q[t]`
    /// and the top one with monic leading coefficient in `t`.
    pub fn primitive(&self) -> (Vec<PolyQ>, Frac) {
        let f = &self.field;
        if self.is_zero() {
            return (Vec::new(), Frac::zero(f));
        }
        let mut den = PolyQ::one(f);
        for c in &self.coeffs {
            let g = den.gcd(c.den());
            den = den.mul_poly(&c.den().exact_div(&g).unwrap());
        }
        let nums: Vec<PolyQ> = self
            .coeffs
            .iter()
            .map(|c| c.num().mul_poly(&den.exact_div(c.den()).unwrap()))
            .collect();
        let mut cont = PolyQ::zero(f);
        for n in &nums {
            cont = cont.gcd(n);
            if cont.is_one() {
                break;
            }
        }
        let lc = nums.last().unwrap().lead();
        let cont = cont.scale(lc);
        let cs: Vec<PolyQ> = nums.iter().map(|n| n.exact_div(&cont).unwrap()).collect();
        (cs, Frac::new(cont, den))
    }

    /// Max `t`-degree of the primitive integral form.
    pub fn deg_t(&self) -> usize {
        self.primitive().0.iter().map(|c| c.deg0()).max().unwrap_or(0)
    }

    /// Product of the distinct irreducible factors over `K` (monic).
    pub fn radical(&self) -> KPoly {
        assert!(!self.is_zero(), "radical of zero");
        let f = self.monic();
        if f.deg0() == 0 {
            return KPoly::one(&self.field);
        }
        let d = f.derivative();
        if d.is_zero() {
            return radical_of_inflated(&f);
        }
        let c = f.gcd(&d);
        let s = f.exact_div(&c).unwrap();
        // strip the separable part with p-free multiplicity from c
        let mut rest = c;
        loop {
            let g = rest.gcd(&s);
            if g.deg0() == 0 {
                break;
            }
            rest = rest.exact_div(&g).unwrap();
        }
        if rest.deg0() == 0 {
            return s;
        }
        s.mul_poly(&radical_of_inflated(&rest))
    }

    /// True when there is no repeated irreducible factor.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.radical().deg0() == self.deg0()
    }

    /// Whether every coefficient is constant (lies in `F_q`).
    pub fn has_constant_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_constant())
    }

    /// Reduce coefficients into the residue field; see [`crate::funcfield::residue`].
    pub fn map_coeffs(&self, m: impl Fn(&Frac) -> Frac) -> KPoly {
        KPoly::new(&self.field, self.coeffs.iter().map(m).collect())
    }

    /// Coefficients as constants when all lie in `F_q`.
    pub fn to_const_poly(&self) -> Option<PolyQ> {
        let v: Option<Vec<Gf>> = self.coeffs.iter().map(|c| c.constant_value()).collect();
        Some(PolyQ::new(&self.field, v?))
    }
}

/// Radical of a monic `F in K[x^p]`.
fn radical_of_inflated(f: &KPoly) -> KPoly {
    let p = f.field.characteristic() as usize;
    let g = f.deflate(p).expect("zero derivative means F in K[x^p]");
    let rg = g.radical();
    // factors of rg with coefficients in K^p are exactly gcd(rg, d/dt rg)
    let a = rg.gcd(&rg.derivative_t());
    let b = rg.exact_div(&a).unwrap();
    let r1 = a.coeff_pth_root().expect("coefficients in K^p");
    let r2 = b.inflate(p);
    let common = r1.gcd(&r2);
    r1.mul_poly(&r2).exact_div(&common).unwrap().monic()
}

/// `binom(n, k) mod p` by Lucas.
pub(crate) fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * ((a - i) % p) % p;
            c = c * super::field::pow_mod_u64(i + 1, p - 2, p) % p;
        }
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}

/// `Res(f, g) = lc(f)^deg g * prod_{f(a)=0} g(a)` with actual degrees.
pub fn resultant(f: &KPoly, g: &KPoly) -> Frac {
    let field = f.field().clone();
    if f.is_zero() || g.is_zero() {
        return Frac::zero(&field);
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = Frac::one(&field);
    loop {
        let m = a.deg0();
        let n = b.deg0();
        if n == 0 {
            return acc.mul_frac(&b.lead().pow(m as u64));
        }
        if m == 0 {
            return acc.mul_frac(&a.lead().pow(n as u64));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Frac::zero(&field);
        }
        let k = r.deg0();
        // Res(a,b) = (-1)^{mn} lc(b)^{m-k} Res(b, r)
        if (m * n) % 2 == 1 {
            acc = acc.neg_frac();
        }
        acc = acc.mul_frac(&b.lead().pow((m - k) as u64));
        a = b;
        b = r;
    }
}

/// `disc(f) = (-1)^{n(n-1)/2} lc^{n-2} prod f'(a)`, from the resultant with `f'`
/// taken at formal degree `n - 1`.
pub fn discriminant(f: &KPoly) -> Frac {
    let field = f.field();
    let n = f.deg0();
    if n == 0 {
        return Frac::one(field);
    }
    let d = f.derivative();
    if d.is_zero() {
        return Frac::zero(field);
    }
    let lc = f.lead();
    let gap = (n - 1 - d.deg0()) as u64;
    let res = resultant(f, &d).mul_frac(&lc.pow(gap));
    let mut out = res.div_frac(&lc).unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        out = out.neg_frac();
    }
    out
}

impl Add for &KPoly {
    type Output = KPoly;
    fn add(self, rhs: &KPoly) -> KPoly {
        self.add_poly(rhs)
    }
}

impl Sub for &KPoly {
    type Output = KPoly;
    fn sub(self, rhs: &KPoly) -> KPoly {
        self.sub_poly(rhs)
    }
}

impl Mul for &KPoly {
    type Output = KPoly;
    fn mul(self, rhs: &KPoly) -> KPoly {
        self.mul_poly(rhs)
    }
}

impl Neg for &KPoly {
    type Output = KPoly;
    fn neg(self) -> KPoly {
        self.neg_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::linalg::det;

    fn tt(f: &Field) -> Frac {
        Frac::t(f)
    }

    fn sylvester(f: &KPoly, g: &KPoly) -> Vec<Vec<Frac>> {
        let field = f.field();
        let (m, n) = (f.deg0(), g.deg0());
        let size = m + n;
        let mut rows = Vec::new();
        for i in 0..n {
            let mut r = vec![Frac::zero(field); size];
            for j in 0..=m {
                r[i + j] = f.coeff(m - j);
            }
            rows.push(r);
        }
        for i in 0..m {
            let mut r = vec![Frac::zero(field); size];
            for j in 0..=n {
                r[i + j] = g.coeff(n - j);
            }
            rows.push(r);
        }
        rows
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let f = Field::prime(5).unwrap();
        let t = tt(&f);
        let a = KPoly::new(&f, vec![t.clone(), Frac::from_int(&f, 2), t.pow(2), Frac::one(&f)]);
        let b = KPoly::new(&f, vec![Frac::one(&f), t.inv().unwrap(), Frac::from_int(&f, 3)]);
        assert_eq!(resultant(&a, &b), det(sylvester(&a, &b)));
        assert_eq!(resultant(&b, &a), det(sylvester(&b, &a)));
    }

    #[test]
    fn discriminant_of_quadratic() {
        // disc(x^2 + t) = -4t
        let f = Field::prime(5).unwrap();
        let q = KPoly::new(&f, vec![tt(&f), Frac::zero(&f), Frac::one(&f)]);
        assert_eq!(discriminant(&q), tt(&f).scale(f.from_int(-4)));
    }

    #[test]
    fn radical_handles_inseparable_pieces() {
        let f = Field::prime(3).unwrap();
        let t = tt(&f);
        // (x^3 - t)^2 (x - 1)^3 (x^3 - t^3)
        let a = KPoly::new(&f, vec![t.neg_frac(), Frac::zero(&f), Frac::zero(&f), Frac::one(&f)]);
        let b = KPoly::linear(&Frac::one(&f));
        let c = KPoly::new(&f, vec![t.pow(3).neg_frac(), Frac::zero(&f), Frac::zero(&f), Frac::one(&f)]);
        let poly = a.pow(2).mul_poly(&b.pow(3)).mul_poly(&c);
        let expect = a.mul_poly(&b).mul_poly(&KPoly::linear(&t));
        assert_eq!(poly.radical(), expect);
        assert!(a.is_squarefree());
        assert!(!c.is_squarefree());
    }

    #[test]
    fn hasse_derivatives() {
        let f = Field::prime(2).unwrap();
        // x^2: first derivative vanishes, second Hasse derivative is 1
        let x2 = KPoly::x(&f).pow(2);
        assert!(x2.derivative().is_zero());
        assert_eq!(x2.hasse(2), KPoly::one(&f));
        assert_eq!(binom_mod(5, 2, 3), 1);
    }

    #[test]
    fn primitive_form() {
        let f = Field::prime(3).unwrap();
        let t = tt(&f);
        let p = KPoly::new(&f, vec![t.inv().unwrap(), t.clone().scale(f.from_int(2))]);
        let (cs, c) = p.primitive();
        let back = KPoly::from_polys(&f, &cs).scale(&c);
        assert_eq!(back, p);
        assert!(cs.last().unwrap().is_monic());
    }
}
