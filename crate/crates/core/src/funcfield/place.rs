//! Places of `K = F_q(t)`: monic irreducibles and the degree place at infinity.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::factor::{is_irreducible, poly_factor};
use super::frac::Frac;
use super::poly::PolyQ;
use crate::error::{Error, Result};

/// A place of `K`. Infinity sorts first, finite places by degree then coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Finite(PolyQ),
}

impl core::fmt::Debug for Place {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_place(self))
    }
}

impl core::fmt::Display for Place {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", crate::text::format_place(self))
    }
}

impl Place {
    /// Checked constructor for a finite place.
    pub fn finite(pi: PolyQ) -> Result<Place> {
        if !pi.is_monic() || !is_irreducible(&pi) {
            return Err(Error::InvalidPlace(crate::text::format_polyq(&pi, "t")));
        }
        Ok(Place::Finite(pi))
    }

    /// `N_p`: `deg pi` for finite places, 1 at infinity.
    pub fn local_degree(&self) -> u32 {
        match self {
            Place::Infinity => 1,
            Place::Finite(pi) => pi.deg0() as u32,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn generator(&self) -> Option<&PolyQ> {
        match self {
            Place::Finite(pi) => Some(pi),
            Place::Infinity => None,
        }
    }

    /// `v_p` of a polynomial in `t`; `None` means `+inf` (zero input).
    pub fn poly_valuation(&self, a: &PolyQ) -> Option<i64> {
        if a.is_zero() {
            return None;
        }
        Some(match self {
            Place::Infinity => -(a.deg0() as i64),
            Place::Finite(pi) => a.multiplicity_of(pi).unwrap() as i64,
        })
    }
}

/// `v_p(z)`; `None` encodes `+inf`, returned exactly for `z = 0`.
pub fn valuation(z: &Frac, p: &Place) -> Option<i64> {
    if z.is_zero() {
        return None;
    }
    Some(match p {
        Place::Infinity => z.den().deg0() as i64 - z.num().deg0() as i64,
        Place::Finite(pi) => {
            let a = z.num().multiplicity_of(pi).unwrap() as i64;
            let b = z.den().multiplicity_of(pi).unwrap() as i64;
            a - b
        }
    })
}

/// Finite places dividing `a`, with multiplicities.
pub fn poly_places(a: &PolyQ) -> Result<Vec<(Place, u32)>> {
    if a.is_constant() {
        return if a.is_zero() { Err(Error::ZeroPolynomial) } else { Ok(Vec::new()) };
    }
    Ok(poly_factor(a)?
        .factors
        .into_iter()
        .map(|(g, m)| (Place::Finite(g), m))
        .collect())
}

/// The divisor of `z`: every place with nonzero valuation.
pub fn divisor(z: &Frac) -> Result<BTreeMap<Place, i64>> {
    if z.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = BTreeMap::new();
    for (pl, m) in poly_places(z.num())? {
        out.insert(pl, m as i64);
    }
    for (pl, m) in poly_places(z.den())? {
        out.insert(pl, -(m as i64));
    }
    let vinf = valuation(z, &Place::Infinity).unwrap();
    if vinf != 0 {
        out.insert(Place::Infinity, vinf);
    }
    Ok(out)
}

/// `sum_p v_p(z) N_p` over all places; zero for every nonzero `z`.
pub fn product_formula_check(z: &Frac) -> Result<i64> {
    Ok(divisor(z)?
        .iter()
        .map(|(pl, v)| v * pl.local_degree() as i64)
        .sum())
}
