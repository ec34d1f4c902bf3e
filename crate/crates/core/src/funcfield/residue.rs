//! Residue fields `k_p` of places, with elements stored as residues in
//! `F_q[u]/(pi)`; at infinity the local parameter is `u = 1/t`.

use alloc::vec::Vec;

use super::frac::Frac;
use super::place::{valuation, Place};
use super::poly::PolyQ;

#[derive(Clone, Debug)]
pub struct Residue {
    place: Place,
    modulus: PolyQ,
}

impl Residue {
    pub fn new(place: &Place, field: &super::field::Field) -> Residue {
        let modulus = match place {
            Place::Finite(pi) => pi.clone(),
            Place::Infinity => PolyQ::var(field),
        };
        Residue { place: place.clone(), modulus }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    /// `q^{N_p}`.
    pub fn size(&self) -> u64 {
        (self.modulus.field().order() as u64).pow(self.modulus.deg0() as u32)
    }

    /// An element of `K` with valuation one at this place.
    pub fn uniformizer(&self) -> Frac {
        match &self.place {
            Place::Finite(pi) => Frac::from_poly(pi.clone()),
            Place::Infinity => Frac::t(self.modulus.field()).inv().unwrap(),
        }
    }

    /// Reduction of `z`; `None` when `v_p(z) < 0`.
    pub fn reduce(&self, z: &Frac) -> Option<PolyQ> {
        if z.is_zero() {
            return Some(PolyQ::zero(z.field()));
        }
        if valuation(z, &self.place)? < 0 {
            return None;
        }
        let local = match self.place {
            Place::Infinity => z.invert_t(),
            Place::Finite(_) => z.clone(),
        };
        let d = local.den().rem(&self.modulus).inv_mod(&self.modulus)?;
        Some(local.num().mul_mod(&d, &self.modulus))
    }

    pub fn zero(&self) -> PolyQ {
        PolyQ::zero(self.modulus.field())
    }

    pub fn add(&self, a: &PolyQ, b: &PolyQ) -> PolyQ {
        a.add_poly(b)
    }

    pub fn sub(&self, a: &PolyQ, b: &PolyQ) -> PolyQ {
        a.sub_poly(b)
    }

    pub fn mul(&self, a: &PolyQ, b: &PolyQ) -> PolyQ {
        a.mul_mod(b, &self.modulus)
    }

    pub fn inv(&self, a: &PolyQ) -> Option<PolyQ> {
        a.inv_mod(&self.modulus)
    }

    /// Horner evaluation of a residue polynomial given by its coefficients.
    pub fn eval(&self, coeffs: &[PolyQ], a: &PolyQ) -> PolyQ {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, a), c))
    }

    /// Every element of `k_p`, in index order.
    pub fn elements(&self) -> Vec<PolyQ> {
        let field = self.modulus.field();
        let q = field.order() as u64;
        let n = self.modulus.deg0();
        (0..self.size())
            .map(|mut idx| {
                let mut v = Vec::with_capacity(n);
                for _ in 0..n {
                    v.push(field.from_index((idx % q) as u32).unwrap());
                    idx /= q;
                }
                PolyQ::new(field, v)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::field::Field;

    #[test]
    fn reduce_at_finite_and_infinite() {
        let f = Field::prime(3).unwrap();
        let r = Residue::new(&Place::Finite(PolyQ::from_ints(&f, &[1, 1])), &f);
        // t = -1 = 2 mod (t+1)
        assert_eq!(r.reduce(&Frac::t(&f)), Some(PolyQ::from_ints(&f, &[2])));
        assert_eq!(r.reduce(&Frac::t(&f).inv().unwrap()), Some(PolyQ::from_ints(&f, &[2])));
        let inf = Residue::new(&Place::Infinity, &f);
        assert_eq!(inf.reduce(&Frac::t(&f)), None);
        // (2t+1)/(t+2) -> 2 at infinity
        let z = Frac::new(PolyQ::from_ints(&f, &[1, 2]), PolyQ::from_ints(&f, &[2, 1]));
        assert_eq!(inf.reduce(&z), Some(PolyQ::from_ints(&f, &[2])));
        assert_eq!(inf.size(), 3);
        assert_eq!(inf.elements().len(), 3);
    }
}
