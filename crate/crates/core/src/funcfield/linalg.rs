//! Small dense linear algebra over `K`.

use alloc::vec;
use alloc::vec::Vec;

use super::frac::Frac;
use super::kpoly::KPoly;
use super::place::{valuation, Place};

/// Determinant by Gaussian elimination.
pub fn det(mut m: Vec<Vec<Frac>>) -> Frac {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut acc = Frac::one(&field);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Frac::zero(&field);
        };
        if piv != c {
            m.swap(piv, c);
            acc = acc.neg_frac();
        }
        let inv = m[c][c].inv().unwrap();
        acc = acc.mul_frac(&m[c][c]);
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let k = m[r][c].mul_frac(&inv);
            for j in c..n {
                let s = k.mul_frac(&m[c][j]);
                m[r][j] = m[r][j].sub_frac(&s);
            }
        }
    }
    acc
}

/// Characteristic polynomial of an `n x n` matrix via Hessenberg reduction.
pub fn charpoly(mut a: Vec<Vec<Frac>>) -> KPoly {
    let n = a.len();
    let field = a[0][0].field().clone();
    let zero = Frac::zero(&field);
    // similarity transform to upper Hessenberg form
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            a.swap(piv, j + 1);
            for row in a.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = a[j + 1][j].inv().unwrap();
        for i in j + 2..n {
            if a[i][j].is_zero() {
                continue;
            }
            let u = a[i][j].mul_frac(&inv);
            for k in 0..n {
                let s = u.mul_frac(&a[j + 1][k]);
                a[i][k] = a[i][k].sub_frac(&s);
            }
            for row in a.iter_mut() {
                let s = u.mul_frac(&row[i]);
                row[j + 1] = row[j + 1].add_frac(&s);
            }
        }
    }
    // recurrence on leading principal minors
    let x = KPoly::x(&field);
    let mut ps: Vec<KPoly> = vec![KPoly::one(&field)];
    for m in 1..=n {
        let diag = &x - &KPoly::constant(a[m - 1][m - 1].clone());
        let mut pm = diag.mul_poly(&ps[m - 1]);
        let mut prod = Frac::one(&field);
        for i in 1..m {
            prod = prod.mul_frac(&a[m - i][m - i - 1]);
            if prod == zero {
                break;
            }
            let c = prod.mul_frac(&a[m - i - 1][m - 1]);
            pm = pm.sub_poly(&ps[m - i - 1].scale(&c));
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}

/// Matrix of multiplication by `h` on `K[x]/(m)` in the power basis.
pub fn multiplication_matrix(h: &KPoly, m: &KPoly) -> Vec<Vec<Frac>> {
    let n = m.deg0();
    let field = m.field();
    let mut cols = Vec::with_capacity(n);
    let mut cur = h.rem(m);
    let x = KPoly::x(field);
    for _ in 0..n {
        cols.push(cur.clone());
        cur = cur.mul_mod(&x, m);
    }
    (0..n).map(|i| (0..n).map(|j| cols[j].coeff(i)).collect()).collect()
}

/// Characteristic polynomial of `h(a)` over the roots `a` of `m`, i.e.
/// `prod (y - h(a))` with multiplicity.
pub fn charpoly_mod(h: &KPoly, m: &KPoly) -> KPoly {
    charpoly(multiplication_matrix(h, m))
}

/// Valuations of the elementary divisors of a square matrix over the
/// valuation ring at `place`, smallest first. Singular directions give `None`.
pub fn smith_valuations(mut a: Vec<Vec<Frac>>, place: &Place) -> Vec<Option<i64>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    while !rows.is_empty() {
        let mut best: Option<(i64, usize, usize)> = None;
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                if let Some(v) = valuation(&a[r][c], place) {
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, ri, ci));
                    }
                }
            }
        }
        let Some((v, ri, ci)) = best else {
            out.extend(rows.iter().map(|_| None));
            break;
        };
        out.push(Some(v));
        let pr = rows.remove(ri);
        let pc = cols.remove(ci);
        let inv = a[pr][pc].inv().unwrap();
        for &r in &rows {
            if a[r][pc].is_zero() {
                continue;
            }
            // the pivot has minimal valuation, so the multiplier is integral
            let k = a[r][pc].mul_frac(&inv);
            for &c in &cols {
                let s = k.mul_frac(&a[pr][c]);
                a[r][c] = a[r][c].sub_frac(&s);
            }
        }
    }
    out
}
