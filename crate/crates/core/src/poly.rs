//! Dense univariate polynomials with coefficients in a [`Field`].
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and structural equality is equality.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<Elem>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn from_coeffs(mut c: Vec<Elem>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn one(k: &Field) -> Poly {
        Poly(vec![k.one()])
    }

    /// The variable `x`.
    pub fn x(k: &Field) -> Poly {
        Poly(vec![k.zero(), k.one()])
    }

    /// `x - a`
    pub fn linear(k: &Field, a: &Elem) -> Poly {
        Poly::from_coeffs(vec![k.neg(a), k.one()])
    }

    pub fn from_i64s(k: &Field, c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&v| k.from_i64(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&Elem> {
        self.0.last()
    }

    pub fn coeff(&self, i: usize, k: &Field) -> Elem {
        self.0.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_monic(&self, k: &Field) -> bool {
        self.lc().is_some_and(|c| k.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, o: &Poly, k: &Field) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.0.get(i), o.0.get(i)) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, k: &Field) -> Poly {
        Poly(self.0.iter().map(|c| k.neg(c)).collect())
    }

    pub fn sub(&self, o: &Poly, k: &Field) -> Poly {
        self.add(&o.neg(k), k)
    }

    pub fn mul(&self, o: &Poly, k: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![k.zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = k.mul(a, b);
                out[i + j] = k.add(&out[i + j], &t);
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Elem, k: &Field) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|a| k.mul(a, c)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize, k: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![k.zero(); n];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    pub fn pow(&self, e: u32, k: &Field) -> Poly {
        let mut r = Poly::one(k);
        for _ in 0..e {
            r = r.mul(self, k);
        }
        r
    }

    pub fn divrem(&self, d: &Poly, k: &Field) -> Result<(Poly, Poly)> {
        let dl = d.lc().ok_or(Error::DivisionByZero)?;
        let inv = k.inv(dl)?;
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut r = self.0.clone();
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let t = k.mul(&c, dc);
                r[i + j] = k.sub(&r[i + j], &t);
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, d: &Poly, k: &Field) -> Poly {
        self.divrem(d, k).expect("nonzero divisor").1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly, k: &Field) -> Option<Poly> {
        let (q, r) = self.divrem(d, k).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, k: &Field) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(c) => {
                let inv = k.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv, k)
            }
        }
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, o: &Poly, k: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn xgcd(&self, o: &Poly, k: &Field) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(k), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, k).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, k), k);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, k), k);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = k.inv(c).expect("nonzero");
                (r0.scale(&inv, k), s0.scale(&inv, k), t0.scale(&inv, k))
            }
        }
    }

    pub fn derivative(&self, k: &Field) -> Poly {
        Poly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.mul(&k.from_i64(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Elem, k: &Field) -> Elem {
        let mut acc = k.zero();
        for c in self.0.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// Evaluate at an element of an extension `l` of the coefficient field.
    pub fn eval_in(&self, x: &Elem, k: &Field, l: &Field) -> Elem {
        let mut acc = l.zero();
        for c in self.0.iter().rev() {
            let c = l.embed(k, c).expect("coefficient field lies in the tower");
            acc = l.add(&l.mul(&acc, x), &c);
        }
        acc
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, e: &BigUint, m: &Poly, k: &Field) -> Poly {
        let mut base = self.rem(m, k);
        let mut r = Poly::one(k).rem(m, k);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                r = r.mul(&base, k).rem(m, k);
            }
            if i + 1 < bits {
                base = base.mul(&base, k).rem(m, k);
            }
        }
        r
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Poly, k: &Field) -> Poly {
        let mut acc = Poly::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(g, k).add(&Poly::constant(c.clone()), k);
        }
        acc
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Poly {
        Poly::from_coeffs(self.0.iter().map(f).collect())
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i`, every `g_i` monic squarefree and pairwise coprime.
/// Handles positive characteristic via p-th roots over finite fields.
pub fn squarefree_decomposition(f: &Poly, k: &Field) -> Result<Vec<(Poly, u32)>> {
    let mut out: Vec<(Poly, u32)> = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let f = f.monic(k);
    let p = k.characteristic();
    sqf_rec(&f, k, p, 1, &mut out)?;
    out.sort_by_key(|(_, m)| *m);
    // merge equal multiplicities
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, mm)) if *mm == m => *h = h.mul(&g, k),
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

fn sqf_rec(f: &Poly, k: &Field, p: u64, mult: u32, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    if f.deg() == 0 {
        return Ok(());
    }
    let df = f.derivative(k);
    if df.is_zero() {
        // f = g(x^p) = h^p in characteristic p
        let h = pth_root_poly(f, k, p)?;
        return sqf_rec(&h, k, p, mult * p as u32, out);
    }
    let mut c = f.gcd(&df, k);
    let mut w = f.exact_div(&c, k).expect("gcd divides");
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c, k);
        let z = w.exact_div(&y, k).expect("gcd divides");
        if z.deg() > 0 {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w, k).expect("gcd divides");
    }
    if c.deg() > 0 {
        // remaining factor is a p-th power
        let h = pth_root_poly(&c, k, p)?;
        sqf_rec(&h, k, p, mult * p as u32, out)?;
    }
    Ok(())
}

fn pth_root_poly(f: &Poly, k: &Field, p: u64) -> Result<Poly> {
    if p == 0 {
        return Err(Error::InvalidInput("zero derivative in characteristic 0".into()));
    }
    let p = p as usize;
    let mut c = Vec::new();
    for (i, a) in f.0.iter().enumerate() {
        if i % p == 0 {
            c.push(k.pth_root(a)?);
        } else if !a.is_zero() {
            return Err(Error::InvalidInput("not a p-th power".into()));
        }
    }
    Ok(Poly::from_coeffs(c))
}

/// Whether a nonzero polynomial is squarefree.
pub fn is_squarefree(f: &Poly, k: &Field) -> bool {
    let d = f.derivative(k);
    if d.is_zero() {
        return f.deg() == 0;
    }
    f.gcd(&d, k).deg() == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd_over_q() {
        let q = Field::rationals();
        let f = Poly::from_i64s(&q, &[-1, 0, 0, 0, 1]); // t^4 - 1
        let g = Poly::from_i64s(&q, &[1, 0, 1]); // t^2 + 1
        let (quo, r) = f.divrem(&g, &q).unwrap();
        assert!(r.is_zero());
        assert_eq!(quo, Poly::from_i64s(&q, &[-1, 0, 1]));
        let h = Poly::from_i64s(&q, &[-1, 1]);
        assert_eq!(f.gcd(&h.mul(&g, &q), &q), h.mul(&g, &q).monic(&q));
        let (d, s, t) = g.xgcd(&h, &q);
        assert_eq!(d, Poly::one(&q));
        assert_eq!(s.mul(&g, &q).add(&t.mul(&h, &q), &q), Poly::one(&q));
    }

    #[test]
    fn squarefree_decomposition_char_zero_and_p() {
        let q = Field::rationals();
        let a = Poly::from_i64s(&q, &[1, 1]);
        let b = Poly::from_i64s(&q, &[-2, 0, 1]);
        let f = a.pow(3, &q).mul(&b, &q);
        let d = squarefree_decomposition(&f, &q).unwrap();
        assert_eq!(d, vec![(b.clone(), 1), (a.clone(), 3)]);

        let f3 = Field::prime(3).unwrap();
        let a = Poly::from_i64s(&f3, &[1, 1]);
        let b = Poly::from_i64s(&f3, &[1, 0, 1]);
        let f = a.pow(3, &f3).mul(&b, &f3).mul(&b, &f3);
        let d = squarefree_decomposition(&f, &f3).unwrap();
        assert_eq!(d, vec![(b, 2), (a, 3)]);
    }
}
