//! Elements of `K = F_q(t)` and points of `P^1(K)`.

use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::field::{Field, Gf};
use super::poly::PolyQ;

/// A reduced fraction `num/den` with `den` monic; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frac {
    num: PolyQ,
    den: PolyQ,
}

impl core::fmt::Debug for Frac {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_frac(self))
    }
}

impl core::fmt::Display for Frac {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_frac(self))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den.cmp(&other.den).then_with(|| self.num.cmp(&other.num))
    }
}

impl Frac {
    /// Builds `num/den` and reduces; panics if `den` is zero.
    pub fn new(num: PolyQ, den: PolyQ) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        let field = num.field().clone();
        if num.is_zero() {
            return Frac::zero(&field);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        if !d.is_monic() {
            let c = field.inv(d.lead());
            n = n.scale(c);
            d = d.scale(c);
        }
        Frac { num: n, den: d }
    }

    pub fn from_poly(p: PolyQ) -> Frac {
        let one = PolyQ::one(p.field());
        Frac { num: p, den: one }
    }

    pub fn zero(field: &Field) -> Frac {
        Frac { num: PolyQ::zero(field), den: PolyQ::one(field) }
    }

    pub fn one(field: &Field) -> Frac {
        Frac::constant(field, Gf::ONE)
    }

    pub fn constant(field: &Field, c: Gf) -> Frac {
        Frac { num: PolyQ::constant(field, c), den: PolyQ::one(field) }
    }

    pub fn from_int(field: &Field, n: i64) -> Frac {
        Frac::constant(field, field.from_int(n))
    }

    /// The element `t`.
    pub fn t(field: &Field) -> Frac {
        Frac::from_poly(PolyQ::var(field))
    }

    #[inline]
    pub fn field(&self) -> &Field {
        self.num.field()
    }

    #[inline]
    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    #[inline]
    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// In `F_q[t]`.
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// In the constant field `F_q`.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The constant value when [`Frac::is_constant`].
    pub fn constant_value(&self) -> Option<Gf> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn add_frac(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac::new(self.num.add_poly(&o.num), self.den.clone());
        }
        Frac::new(
            self.num.mul_poly(&o.den).add_poly(&o.num.mul_poly(&self.den)),
            self.den.mul_poly(&o.den),
        )
    }

    pub fn sub_frac(&self, o: &Frac) -> Frac {
        self.add_frac(&o.neg_frac())
    }

    pub fn neg_frac(&self) -> Frac {
        Frac { num: self.num.neg_poly(), den: self.den.clone() }
    }

    pub fn mul_frac(&self, o: &Frac) -> Frac {
        if self.is_zero() || o.is_zero() {
            return Frac::zero(self.field());
        }
        // cross-cancel first to keep degrees small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = o.den.exact_div(&g1).unwrap();
        let n2 = o.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        Frac::new(n1.mul_poly(&n2), d1.mul_poly(&d2))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Frac> {
        (!self.is_zero()).then(|| Frac::new(self.den.clone(), self.num.clone()))
    }

    /// Division; `None` when dividing by zero.
    pub fn div_frac(&self, o: &Frac) -> Option<Frac> {
        o.inv().map(|i| self.mul_frac(&i))
    }

    pub fn scale(&self, c: Gf) -> Frac {
        Frac::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: u64) -> Frac {
        Frac { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer power (negative exponents invert); `None` for `0^(-k)`.
    pub fn powi(&self, e: i64) -> Option<Frac> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|i| i.pow((-e) as u64))
        }
    }

    /// `max(deg num, deg den)`: the height in degree units.
    pub fn height(&self) -> u64 {
        if self.is_zero() {
            return 0;
        }
        self.num.deg0().max(self.den.deg0()) as u64
    }

    /// `p`-th root in `K`, when this element is a `p`-th power.
    pub fn pth_root(&self) -> Option<Frac> {
        let n = self.num.pth_root()?;
        let d = self.den.pth_root()?;
        Some(Frac::new(n, d))
    }

    /// Formal derivative with respect to `t`.
    pub fn derivative_t(&self) -> Frac {
        // (n/d)' = (n'd - nd')/d^2
        let top = self.num.derivative().mul_poly(&self.den).sub_poly(&self.num.mul_poly(&self.den.derivative()));
        Frac::new(top, self.den.square())
    }

    /// Apply the field automorphism `t -> 1/t`.
    pub fn invert_t(&self) -> Frac {
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.deg0();
        let dd = self.den.deg0();
        let m = dn.max(dd);
        Frac::new(self.num.reverse(dn).shift(m - dn), self.den.reverse(dd).shift(m - dd))
    }

    /// Evaluate at `t = a`; `None` at a pole.
    pub fn eval_const(&self, a: Gf) -> Option<Gf> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return None;
        }
        let f = self.field();
        Some(f.div(self.num.eval(a), d))
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        self.add_frac(rhs)
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self.sub_frac(rhs)
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        self.mul_frac(rhs)
    }
}

impl Div for &Frac {
    type Output = Frac;
    fn div(self, rhs: &Frac) -> Frac {
        self.div_frac(rhs).expect("division by zero in K")
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        self.neg_frac()
    }
}

/// A point of `P^1(K)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1 {
    Finite(Frac),
    Infinity,
}

impl core::fmt::Debug for P1 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_point(self))
    }
}

impl core::fmt::Display for P1 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_point(self))
    }
}

impl P1 {
    pub fn finite(&self) -> Option<&Frac> {
        match self {
            P1::Finite(z) => Some(z),
            P1::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, P1::Infinity)
    }

    /// Weil height; `h(inf) = 0`.
    pub fn height(&self) -> u64 {
        match self {
            P1::Finite(z) => z.height(),
            P1::Infinity => 0,
        }
    }

    /// `z -> 1/z` on `P^1`.
    pub fn reciprocal(&self, field: &Field) -> P1 {
        match self {
            P1::Infinity => P1::Finite(Frac::zero(field)),
            P1::Finite(z) => match z.inv() {
                Some(i) => P1::Finite(i),
                None => P1::Infinity,
            },
        }
    }
}

impl From<Frac> for P1 {
    fn from(z: Frac) -> P1 {
        P1::Finite(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_monic() {
        let f = Field::prime(5).unwrap();
        let num = PolyQ::from_ints(&f, &[0, 2, 2]); // 2t^2 + 2t
        let den = PolyQ::from_ints(&f, &[0, 3]); // 3t
        let z = Frac::new(num, den);
        assert!(z.den().is_one());
        assert_eq!(z.num(), &PolyQ::from_ints(&f, &[4, 4]));
    }

    #[test]
    fn field_axioms_sample() {
        let f = Field::prime(3).unwrap();
        let a = Frac::new(PolyQ::from_ints(&f, &[1, 1]), PolyQ::from_ints(&f, &[0, 1, 1]));
        let b = Frac::new(PolyQ::from_ints(&f, &[2, 0, 1]), PolyQ::from_ints(&f, &[1, 1]));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert!((&a / &a).is_one());
    }

    #[test]
    fn heights() {
        let f = Field::prime(7).unwrap();
        let t = PolyQ::var(&f);
        assert_eq!(Frac::from_poly(t.pow(3)).height(), 3);
        let z = Frac::new(&t.pow(2) + &PolyQ::one(&f), t.clone());
        assert_eq!(z.height(), 2);
        assert_eq!(Frac::from_int(&f, 5).height(), 0);
    }

    #[test]
    fn invert_t_is_involution() {
        let f = Field::prime(3).unwrap();
        let z = Frac::new(PolyQ::from_ints(&f, &[1, 0, 2]), PolyQ::from_ints(&f, &[0, 1]));
        assert_eq!(z.invert_t().invert_t(), z);
    }
}
