//! Scharlau transfers along the field trace of a simple extension.

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::linalg;
use crate::quadforms::DiagonalForm;

/// The form `x ↦ Tr_{L/k}(b x^2)` on the power basis of `L`, diagonalized over `k`.
pub fn scaled_trace_form(l: &Field, b: &Elem) -> Result<DiagonalForm> {
    let k = l.base().filter(|_| l.is_extension()).ok_or_else(|| {
        Error::UnsupportedField(format!("{l} is not a simple extension"))
    })?;
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = l.minpoly().unwrap().deg();
    let theta = l.generator().unwrap();
    // traces of b θ^m for m < 2n - 1
    let mut tr = Vec::with_capacity(2 * n - 1);
    let mut y = b.clone();
    for _ in 0..2 * n - 1 {
        tr.push(l.trace(&y));
        y = l.mul(&y, &theta);
    }
    let gram: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| tr[i + j].clone()).collect()).collect();
    let d = linalg::diagonalize_symmetric(k, gram).map_err(|_| Error::InseparableExtension)?;
    DiagonalForm::new(k, d)
}

/// Transfer of a form over `L` to the base of `L`.
pub fn transfer_form(q: &DiagonalForm) -> Result<DiagonalForm> {
    let l = q.field();
    let k = l.base().filter(|_| l.is_extension()).ok_or_else(|| {
        Error::UnsupportedField(format!("{l} is not a simple extension"))
    })?;
    let mut out = DiagonalForm::zero(k);
    for a in q.entries() {
        out = out.direct_sum(&scaled_trace_form(l, a)?)?;
    }
    Ok(out)
}

/// Transfer through the tower from `q.field()` down to `sub`.
pub fn transfer_to(q: &DiagonalForm, sub: &Field) -> Result<DiagonalForm> {
    let mut cur = q.clone();
    while cur.field() != sub {
        if !cur.field().is_extension() {
            return Err(Error::DescriptorMismatch);
        }
        cur = transfer_form(&cur)?;
    }
    Ok(cur)
}

/// Transfer along the composite trace `Tr_{L/sub}` computed directly on a
/// product basis, without passing through intermediate fields.
pub fn transfer_composite(q: &DiagonalForm, sub: &Field) -> Result<DiagonalForm> {
    let l = q.field();
    if l == sub {
        return Ok(q.clone());
    }
    let basis = tower_basis(l, sub)?;
    let mut out = DiagonalForm::zero(sub);
    for a in q.entries() {
        let n = basis.len();
        let mut gram = vec![vec![sub.zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let x = l.mul(a, &l.mul(&basis[i], &basis[j]));
                let t = l.trace_to(sub, &x)?;
                gram[i][j] = t.clone();
                gram[j][i] = t;
            }
        }
        let d = linalg::diagonalize_symmetric(sub, gram).map_err(|_| Error::InseparableExtension)?;
        out = out.direct_sum(&DiagonalForm::new(sub, d)?)?;
    }
    Ok(out)
}

/// Products of power bases along the tower from `sub` up to `l`.
fn tower_basis(l: &Field, sub: &Field) -> Result<Vec<Elem>> {
    if l == sub {
        return Ok(vec![l.one()]);
    }
    let base = l.base().filter(|_| l.is_extension()).ok_or(Error::DescriptorMismatch)?;
    let lower = tower_basis(base, sub)?;
    let n = l.minpoly().unwrap().deg();
    let theta = l.generator().unwrap();
    let mut out = Vec::new();
    let mut pw = l.one();
    for _ in 0..n {
        for b in &lower {
            out.push(l.mul(&pw, &l.from_base(b)));
        }
        pw = l.mul(&pw, &theta);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn trace_form_of_sqrt2() {
        let k = Field::rationals();
        let l = Field::extension(&k, Poly::from_i64s(&k, &[-2, 0, 1]), "a").unwrap();
        let t = scaled_trace_form(&l, &l.one()).unwrap();
        assert_eq!(t, DiagonalForm::from_i64s(&k, &[2, 4]).unwrap());
    }

    #[test]
    fn trace_form_of_cube_root() {
        let k = Field::rationals();
        let l = Field::extension(&k, Poly::from_i64s(&k, &[-2, 0, 0, 1]), "a").unwrap();
        let t = scaled_trace_form(&l, &l.one()).unwrap();
        assert_eq!(t, DiagonalForm::from_i64s(&k, &[3, 12, -3]).unwrap());
    }

    #[test]
    fn composite_matches_iterated() {
        let k = Field::rationals();
        let l = Field::extension(&k, Poly::from_i64s(&k, &[-2, 0, 1]), "a").unwrap();
        let m = Field::extension(&l, Poly::from_i64s(&l, &[-3, 0, 1]), "b").unwrap();
        let q = DiagonalForm::parse(&m, &["1 + b", "a*b - 1"]).unwrap();
        let it = transfer_to(&q, &k).unwrap();
        let co = transfer_composite(&q, &k).unwrap();
        assert_eq!(it.rank(), 8);
        assert!(crate::quadforms::rational_witt_equal(&it, &co).unwrap());
    }
}
