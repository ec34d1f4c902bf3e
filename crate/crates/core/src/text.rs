//! The text wire format: sparse sums of monomials in `t` (and `x`/`z` for
//! polynomials over `K`), with `g` naming the generator of `F_q` when `e > 1`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::funcfield::{Field, Frac, Gf, KPoly, Place, PolyQ, P1};

fn elem_needs_parens(field: &Field, c: Gf) -> bool {
    !field.elem_is_monomial(c)
}

/// `2*t^3+t+1`, with `(g+1)*t` style coefficients over `F_{p^e}`.
pub fn format_polyq(p: &PolyQ, var: &str) -> String {
    let field = p.field();
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = field.format_elem(c);
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            cs
        } else if c == Gf::ONE {
            mono
        } else if elem_needs_parens(field, c) {
            format!("({cs})*{mono}")
        } else {
            format!("{cs}*{mono}")
        };
        terms.push(term);
    }
    terms.join("+")
}

fn wrap(s: String, needs: bool) -> String {
    if needs {
        format!("({s})")
    } else {
        s
    }
}

fn is_single_term(p: &PolyQ) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
        && p.coeffs().last().is_none_or(|&c| p.field().elem_is_monomial(c))
}

/// `num` or `(num)/(den)`, parentheses only around multi-term parts.
pub fn format_frac(z: &Frac) -> String {
    let n = format_polyq(z.num(), "t");
    if z.den().is_one() {
        return n;
    }
    let d = format_polyq(z.den(), "t");
    format!("{}/{}", wrap(n, !is_single_term(z.num())), wrap(d, !is_single_term(z.den())))
}

pub fn format_point(z: &P1) -> String {
    match z {
        P1::Infinity => "inf".into(),
        P1::Finite(a) => format_frac(a),
    }
}

pub fn format_place(p: &Place) -> String {
    match p {
        Place::Infinity => "inf".into(),
        Place::Finite(pi) => format_polyq(pi, "t"),
    }
}

fn frac_is_atomic(c: &Frac) -> bool {
    c.den().is_one() && is_single_term(c.num())
}

/// `x^2+t*x+(t+1)/t`.
pub fn format_kpoly(p: &KPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            format_frac(c)
        } else if c.is_one() {
            mono
        } else {
            format!("{}*{mono}", wrap(format_frac(c), !frac_is_atomic(c)))
        };
        terms.push(term);
    }
    terms.join("+")
}

/// `num / den`, or just `num` when `den = 1`.
pub fn format_ratfunc(num: &KPoly, den: &KPoly, var: &str) -> String {
    if den.is_constant() && den.coeff(0).is_one() {
        return format_kpoly(num, var);
    }
    format!("{} / {}", format_kpoly(num, var), format_kpoly(den, var))
}

/// Value of a parsed expression: a rational function in the outer variable.
#[derive(Clone)]
struct Rat {
    num: KPoly,
    den: KPoly,
}

impl Rat {
    fn constant(c: Frac) -> Rat {
        let f = c.field().clone();
        Rat { num: KPoly::constant(c), den: KPoly::one(&f) }
    }

    fn normalize(num: KPoly, den: KPoly) -> Rat {
        let g = num.gcd(&den);
        let (num, den) = if num.is_zero() {
            (num, KPoly::one(den.field()))
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.lead().inv().unwrap();
        Rat { num: num.scale(&lc), den: den.scale(&lc) }
    }

    fn add(&self, o: &Rat) -> Rat {
        Rat::normalize(
            self.num.mul_poly(&o.den).add_poly(&o.num.mul_poly(&self.den)),
            self.den.mul_poly(&o.den),
        )
    }

    fn neg(&self) -> Rat {
        Rat { num: self.num.neg_poly(), den: self.den.clone() }
    }

    fn mul(&self, o: &Rat) -> Rat {
        Rat::normalize(self.num.mul_poly(&o.num), self.den.mul_poly(&o.den))
    }

    fn div(&self, o: &Rat) -> Option<Rat> {
        if o.num.is_zero() {
            return None;
        }
        Some(Rat::normalize(self.num.mul_poly(&o.den), self.den.mul_poly(&o.num)))
    }

    fn pow(&self, e: u64) -> Rat {
        Rat { num: self.num.pow(e), den: self.den.pow(e) }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
    allow_var: bool,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Rat> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Rat> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = match acc.div(&d) {
                        Some(r) => r,
                        None => return self.err("division by zero"),
                    };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Rat> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Rat> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u64 = match s.parse() {
                Ok(e) if e <= 1 << 20 => e,
                _ => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Rat> {
        let f = self.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let p = f.characteristic() as u64;
                // reduce digit by digit so arbitrarily long literals work
                let v = s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Rat::constant(Frac::from_int(f, v as i64)))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Rat::constant(Frac::t(f)))
            }
            Some(b'g') => {
                self.pos += 1;
                if f.degree() == 1 {
                    return self.err("'g' needs an extension field (e > 1)");
                }
                Ok(Rat::constant(Frac::constant(f, f.generator())))
            }
            Some(b'x') | Some(b'z') => {
                if !self.allow_var {
                    return self.err("unexpected variable");
                }
                self.pos += 1;
                Ok(Rat { num: KPoly::x(f), den: KPoly::one(f) })
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_rat(field: &Field, s: &str, allow_var: bool) -> Result<Rat> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, field, allow_var };
    let r = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(r)
}

fn rat_to_frac(r: Rat) -> Frac {
    r.num.coeff(0).div_frac(&r.den.coeff(0)).unwrap()
}

/// An element of `K`.
pub fn parse_frac(field: &Field, s: &str) -> Result<Frac> {
    Ok(rat_to_frac(parse_rat(field, s, false)?))
}

/// An element of `F_q[t]`.
pub fn parse_polyq(field: &Field, s: &str) -> Result<PolyQ> {
    let z = parse_frac(field, s)?;
    if !z.den().is_one() {
        return Err(Error::Parse { pos: 0, msg: "expected a polynomial in t".into() });
    }
    Ok(z.num().clone())
}

/// A point of `P^1(K)`: `inf` or an element of `K`.
pub fn parse_point(field: &Field, s: &str) -> Result<P1> {
    let s = s.trim();
    if s == "inf" || s == "∞" {
        return Ok(P1::Infinity);
    }
    Ok(P1::Finite(parse_frac(field, s)?))
}

/// A place: `inf` or a monic irreducible polynomial in `t`.
pub fn parse_place(field: &Field, s: &str) -> Result<Place> {
    let s = s.trim();
    if s == "inf" || s == "∞" {
        return Ok(Place::Infinity);
    }
    Place::finite(parse_polyq(field, s)?)
}

/// A polynomial over `K` in `x` (or `z`).
pub fn parse_kpoly(field: &Field, s: &str) -> Result<KPoly> {
    let r = parse_rat(field, s, true)?;
    if r.den.deg0() != 0 {
        return Err(Error::Parse { pos: 0, msg: "expected a polynomial in x".into() });
    }
    let c = r.den.coeff(0).inv().unwrap();
    Ok(r.num.scale(&c))
}

/// A rational function in `z` (or `x`) as a reduced `(num, den)` pair with
/// `den` monic.
pub fn parse_ratfunc(field: &Field, s: &str) -> Result<(KPoly, KPoly)> {
    let r = parse_rat(field, s, true)?;
    Ok((r.num, r.den))
}
