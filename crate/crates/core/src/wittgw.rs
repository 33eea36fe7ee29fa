//! Witt rings with decidable equality, the fundamental-ideal filtration and
//! Grothendieck-Witt rings as pairs (rank, Witt class).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::{Field, FieldKind, Place};
use crate::poly::Poly;
use crate::quadforms::{self, DiagonalForm};

/// Three-valued answer of a decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Undecidable,
}

impl Decision {
    pub fn from_bool(b: bool) -> Decision {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    pub fn and(self, o: Decision) -> Decision {
        match (self, o) {
            (Decision::No, _) | (_, Decision::No) => Decision::No,
            (Decision::Yes, Decision::Yes) => Decision::Yes,
            _ => Decision::Undecidable,
        }
    }
}

/// A class in the Witt ring `W(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittClass {
    rep: DiagonalForm,
    /// True when `rep` is the anisotropic kernel of the class.
    reduced: bool,
}

impl WittClass {
    /// The class of a form, reduced to its anisotropic kernel when decidable.
    pub fn from_form(q: &DiagonalForm) -> Result<WittClass> {
        let k = q.field();
        if k.is_rationals() || k.is_finite() {
            let (_, kernel) = q.witt_decompose()?;
            return Ok(WittClass { rep: kernel, reduced: true });
        }
        let (rest, decided) = quadforms::cancel_pairs(q)?;
        let reduced = decided && rest.rank() <= 2;
        Ok(WittClass { rep: rest, reduced })
    }

    pub fn zero(k: &Field) -> WittClass {
        WittClass { rep: DiagonalForm::zero(k), reduced: true }
    }

    pub fn one(k: &Field) -> WittClass {
        WittClass { rep: DiagonalForm::new(k, vec![k.one()]).expect("nonzero"), reduced: true }
    }

    pub fn field(&self) -> &Field {
        self.rep.field()
    }

    pub fn rep(&self) -> &DiagonalForm {
        &self.rep
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Rank of the representative modulo 2.
    pub fn parity(&self) -> u8 {
        (self.rep.rank() % 2) as u8
    }

    pub fn add(&self, o: &WittClass) -> Result<WittClass> {
        WittClass::from_form(&self.rep.direct_sum(&o.rep)?)
    }

    pub fn neg(&self) -> WittClass {
        WittClass { rep: self.rep.neg(), reduced: self.reduced }
    }

    pub fn sub(&self, o: &WittClass) -> Result<WittClass> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &WittClass) -> Result<WittClass> {
        WittClass::from_form(&self.rep.tensor(&o.rep)?)
    }

    pub fn is_zero(&self) -> Result<Decision> {
        witt_zero(&self.rep)
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Decides whether a form is hyperbolic, i.e. zero in `W(k)`.
pub fn witt_zero(q: &DiagonalForm) -> Result<Decision> {
    if q.rank() % 2 == 1 {
        return Ok(Decision::No);
    }
    let k = q.field();
    if k.is_rationals() {
        return Ok(Decision::from_bool(quadforms::rational_witt_equal(q, &DiagonalForm::zero(k))?));
    }
    if k.is_finite() {
        return Ok(Decision::from_bool(k.is_square(&q.signed_determinant())?));
    }
    let (rest, decided) = quadforms::cancel_pairs(q)?;
    if rest.rank() == 0 {
        return Ok(Decision::Yes);
    }
    if decided && rest.rank() == 2 {
        return Ok(Decision::No);
    }
    match k.kind() {
        FieldKind::Function { base, .. } if base.is_prime_subfield() => function_field_zero(&rest),
        _ => match rest.witt_decompose() {
            Ok((_, kernel)) => Ok(Decision::from_bool(kernel.rank() == 0)),
            Err(Error::UndecidableAtBound(_)) => Ok(Decision::Undecidable),
            Err(e) => Err(e),
        },
    }
}

/// Milnor's exact sequence: a form over `k(t)` is hyperbolic iff all second
/// residues at finite places and the first residue at infinity vanish.
fn function_field_zero(q: &DiagonalForm) -> Result<Decision> {
    let mut verdict = Decision::Yes;
    for v in quadforms::bad_places(q)? {
        let (_, first, second) = quadforms::residue_forms(q, &v)?;
        let part = if v == Place::Infinite { first } else { second };
        verdict = verdict.and(witt_zero(&part)?);
        if verdict == Decision::No {
            return Ok(verdict);
        }
    }
    Ok(verdict)
}

pub fn witt_equal(a: &WittClass, b: &WittClass) -> Result<Decision> {
    if a.field() != b.field() {
        return Err(Error::DescriptorMismatch);
    }
    if a.parity() != b.parity() {
        return Ok(Decision::No);
    }
    if a.rep.normalized()? == b.rep.normalized()? {
        return Ok(Decision::Yes);
    }
    witt_zero(&a.rep.direct_sum(&b.rep.neg())?)
}

/// Membership of a Witt class in `I^n`, `n ≤ 3`.
pub fn in_fundamental_power(w: &WittClass, n: i64) -> Result<Decision> {
    if !(0..=3).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    let k = w.field();
    let supported = match k.kind() {
        FieldKind::Rationals | FieldKind::Prime(_) => true,
        FieldKind::Function { base, .. } => base.is_prime_subfield(),
        FieldKind::Extension { .. } => k.is_finite(),
    };
    if !supported {
        return Err(Error::UnsupportedField(format!("fundamental ideal over {k}")));
    }
    if n == 0 {
        return Ok(Decision::Yes);
    }
    let q = &w.rep;
    if q.rank() % 2 == 1 {
        return Ok(Decision::No);
    }
    if n == 1 {
        return Ok(Decision::Yes);
    }
    if !k.is_square(&q.signed_determinant())? {
        return Ok(Decision::No);
    }
    if n == 2 {
        return Ok(Decision::Yes);
    }
    if k.is_rationals() {
        // I^3 over ℚ: locally hyperbolic at every finite place, signature ≡ 0 mod 8
        let inv = q.invariants()?;
        let hyp = DiagonalForm::hyperbolic(k, q.rank() / 2);
        let ints = quadforms::rational_classes(&hyp);
        let ok = inv.hasse.iter().all(|(v, &h)| h == quadforms::hasse_at(&ints, v));
        return Ok(Decision::from_bool(ok));
    }
    if k.is_finite() {
        // I^2 = 0 over finite fields
        return witt_zero(q);
    }
    let base = k.base().unwrap();
    if base.is_finite() {
        // cohomological dimension 2: I^3 = 0
        return witt_zero(q);
    }
    match witt_zero(q)? {
        Decision::Yes => Ok(Decision::Yes),
        _ => Ok(Decision::Undecidable),
    }
}

/// Whether `-1` is not a sum of squares in `k`.
pub fn is_formally_real(k: &Field) -> Result<bool> {
    match k.kind() {
        FieldKind::Rationals => Ok(true),
        FieldKind::Prime(_) => Ok(false),
        FieldKind::Function { base, .. } => is_formally_real(base),
        FieldKind::Extension { base, minpoly, .. } => {
            if base.is_finite() {
                Ok(false)
            } else if base.is_rationals() {
                Ok(real_root_count(minpoly, base) > 0)
            } else if !is_formally_real(base)? {
                Ok(false)
            } else {
                Err(Error::UnsupportedField(format!("real embeddings of {k}")))
            }
        }
    }
}

fn sign_of(x: &crate::fields::Elem) -> i8 {
    match x {
        crate::fields::Elem::Rat(r) => {
            if r.is_negative() {
                -1
            } else if r.is_positive() {
                1
            } else {
                0
            }
        }
        _ => unreachable!("rational coefficient"),
    }
}

/// Number of distinct real roots of a rational polynomial by a Sturm sequence.
pub fn real_root_count(f: &Poly, k: &Field) -> usize {
    let mut seq = vec![f.clone(), f.derivative(k)];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1], k).neg(k);
        seq.push(r);
    }
    seq.pop();
    let changes = |signs: Vec<i8>| -> usize {
        let s: Vec<i8> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_pos: Vec<i8> = seq.iter().map(|p| sign_of(p.lc().unwrap())).collect();
    let at_neg: Vec<i8> = seq
        .iter()
        .map(|p| {
            let s = sign_of(p.lc().unwrap());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    changes(at_neg) - changes(at_pos)
}

/// Rank-one generators used by the unit-inverse search.
fn square_class_generators(w: &WittClass) -> Vec<crate::fields::Elem> {
    let k = w.field();
    if k.is_finite() {
        return crate::squares::finite_classes(k);
    }
    if k.is_rationals() {
        let mut primes = vec![BigInt::from(2)];
        for a in quadforms::rational_classes(&w.rep) {
            for p in arith::prime_divisors(&a) {
                let p = BigInt::from(p);
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        primes.truncate(4);
        let mut out = Vec::new();
        for mask in 0..(1u32 << primes.len()) {
            let mut m = BigInt::from(1);
            for (i, p) in primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m *= p;
                }
            }
            out.push(k.from_bigint(&m));
            out.push(k.from_bigint(&-m));
        }
        return out;
    }
    let mut out = vec![k.one(), k.from_i64(-1)];
    for a in w.rep.entries() {
        if !out.contains(a) {
            out.push(a.clone());
        }
        let n = k.neg(a);
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

/// Inverse of an odd-rank class, found among sums of at most three rank-one
/// generators and verified by [`witt_equal`].
pub fn witt_unit_inverse(w: &WittClass) -> Result<WittClass> {
    if w.parity() == 0 {
        return Err(Error::NotAUnit);
    }
    let k = w.field();
    let gens = square_class_generators(w);
    let one = WittClass::one(k);
    for a in &gens {
        let c = WittClass::from_form(&DiagonalForm::new(k, vec![a.clone()])?)?;
        if witt_equal(&w.mul(&c)?, &one)?.is_yes() {
            return Ok(c);
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate().skip(i) {
            for c3 in gens.iter().skip(j) {
                let c = WittClass::from_form(&DiagonalForm::new(k, vec![a.clone(), b.clone(), c3.clone()])?)?;
                if witt_equal(&w.mul(&c)?, &one)?.is_yes() {
                    return Ok(c);
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!("no inverse of {w} among sums of three generators")))
}

/// An element of `GW(k)` as a compatible pair (rank, Witt class).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GwElement {
    rank: i64,
    witt: WittClass,
}

impl GwElement {
    pub fn make(rank: i64, witt: WittClass) -> Result<GwElement> {
        if rank.rem_euclid(2) as u8 != witt.parity() {
            return Err(Error::ParityMismatch { rank, witt_parity: witt.parity() });
        }
        Ok(GwElement { rank, witt })
    }

    pub fn from_form(q: &DiagonalForm) -> Result<GwElement> {
        Ok(GwElement { rank: q.rank() as i64, witt: WittClass::from_form(q)? })
    }

    /// `<a>`
    pub fn unit(k: &Field, a: &crate::fields::Elem) -> Result<GwElement> {
        GwElement::from_form(&DiagonalForm::new(k, vec![a.clone()])?)
    }

    pub fn zero(k: &Field) -> GwElement {
        GwElement { rank: 0, witt: WittClass::zero(k) }
    }

    pub fn one(k: &Field) -> GwElement {
        GwElement { rank: 1, witt: WittClass::one(k) }
    }

    /// The hyperbolic element `h = <1> + <-1>`.
    pub fn hyperbolic(k: &Field) -> GwElement {
        GwElement { rank: 2, witt: WittClass::zero(k) }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn witt(&self) -> &WittClass {
        &self.witt
    }

    pub fn field(&self) -> &Field {
        self.witt.field()
    }

    /// The fiber-product condition `rank ≡ rank(witt) mod 2`.
    pub fn is_compatible(&self) -> bool {
        self.rank.rem_euclid(2) as u8 == self.witt.parity()
    }

    pub fn add(&self, o: &GwElement) -> Result<GwElement> {
        GwElement::make(self.rank + o.rank, self.witt.add(&o.witt)?)
    }

    pub fn neg(&self) -> GwElement {
        GwElement { rank: -self.rank, witt: self.witt.neg() }
    }

    pub fn sub(&self, o: &GwElement) -> Result<GwElement> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &GwElement) -> Result<GwElement> {
        GwElement::make(self.rank * o.rank, self.witt.mul(&o.witt)?)
    }

    /// `n·self` for an integer `n`.
    pub fn times(&self, n: i64) -> Result<GwElement> {
        let mut w = WittClass::zero(self.field());
        let base = if n < 0 { self.witt.neg() } else { self.witt.clone() };
        for _ in 0..n.unsigned_abs() {
            w = w.add(&base)?;
        }
        GwElement::make(self.rank * n, w)
    }
}

pub fn gw_equal(a: &GwElement, b: &GwElement) -> Result<Decision> {
    if a.field() != b.field() {
        return Err(Error::DescriptorMismatch);
    }
    if a.rank != b.rank {
        return Ok(Decision::No);
    }
    witt_equal(&a.witt, &b.witt)
}

impl fmt::Display for GwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(rank {}, {})", self.rank, self.witt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wc(k: &Field, v: &[i64]) -> WittClass {
        WittClass::from_form(&DiagonalForm::from_i64s(k, v).unwrap()).unwrap()
    }

    #[test]
    fn witt_equal_examples() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(witt_equal(&wc(&f3, &[1, 1]), &wc(&f3, &[2, 2])).unwrap(), Decision::Yes);
        let q = Field::rationals();
        assert_eq!(witt_equal(&wc(&q, &[1]), &wc(&q, &[-1])).unwrap(), Decision::No);
        let f = Field::function_field(&q, "t").unwrap();
        let a = WittClass::from_form(&DiagonalForm::parse(&f, &["1", "-t"]).unwrap()).unwrap();
        let b = WittClass::from_form(&DiagonalForm::parse(&f, &["1", "-1"]).unwrap()).unwrap();
        assert_eq!(witt_equal(&a, &b).unwrap(), Decision::No);
    }

    #[test]
    fn gw_examples() {
        let q = Field::rationals();
        let x = GwElement::make(2, wc(&q, &[1, 1])).unwrap();
        assert_eq!(gw_equal(&x, &GwElement::from_form(&DiagonalForm::from_i64s(&q, &[1, 1]).unwrap()).unwrap()).unwrap(), Decision::Yes);
        assert_eq!(GwElement::make(1, WittClass::zero(&q)).unwrap_err(), Error::ParityMismatch { rank: 1, witt_parity: 0 });
        let h = GwElement::unit(&q, &q.one()).unwrap().add(&GwElement::unit(&q, &q.from_i64(-1)).unwrap()).unwrap();
        assert_eq!(gw_equal(&h, &GwElement::hyperbolic(&q)).unwrap(), Decision::Yes);
        let f5 = Field::prime(5).unwrap();
        for a in 1..5 {
            let prod = GwElement::hyperbolic(&f5).mul(&GwElement::unit(&f5, &f5.from_i64(a)).unwrap()).unwrap();
            assert_eq!(gw_equal(&prod, &GwElement::hyperbolic(&f5)).unwrap(), Decision::Yes);
        }
    }

    #[test]
    fn fundamental_powers() {
        let q = Field::rationals();
        for n in 0..=3 {
            assert_eq!(in_fundamental_power(&wc(&q, &[1, -1]), n).unwrap(), Decision::Yes);
        }
        let w = wc(&q, &[1, 1]);
        assert_eq!(in_fundamental_power(&w, 1).unwrap(), Decision::Yes);
        assert_eq!(in_fundamental_power(&w, 2).unwrap(), Decision::No);
        let w = wc(&q, &[1, 1, 1, 1]);
        assert_eq!(in_fundamental_power(&w, 2).unwrap(), Decision::Yes);
        assert_eq!(in_fundamental_power(&w, 3).unwrap(), Decision::No);
        let w8 = wc(&q, &[1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(in_fundamental_power(&w8, 3).unwrap(), Decision::Yes);
        assert_eq!(in_fundamental_power(&w8, 4).unwrap_err(), Error::UnsupportedDegree(4));
    }

    #[test]
    fn formally_real_fields() {
        let q = Field::rationals();
        assert!(is_formally_real(&q).unwrap());
        assert!(!is_formally_real(&Field::prime(7).unwrap()).unwrap());
        let i = Field::extension(&q, Poly::from_i64s(&q, &[1, 0, 1]), "i").unwrap();
        assert!(!is_formally_real(&i).unwrap());
        let c = Field::extension(&q, Poly::from_i64s(&q, &[-2, 0, 0, 1]), "a").unwrap();
        assert!(is_formally_real(&c).unwrap());
        assert_eq!(real_root_count(&Poly::from_i64s(&q, &[-2, 0, 0, 1]), &q), 1);
        assert_eq!(real_root_count(&Poly::from_i64s(&q, &[1, 0, -10, 0, 1]), &q), 4);
    }

    #[test]
    fn unit_inverses() {
        let f5 = Field::prime(5).unwrap();
        let one = WittClass::one(&f5);
        assert_eq!(witt_equal(&witt_unit_inverse(&one).unwrap(), &one).unwrap(), Decision::Yes);
        let two = wc(&f5, &[2]);
        assert_eq!(witt_equal(&witt_unit_inverse(&two).unwrap(), &two).unwrap(), Decision::Yes);
        let f3 = Field::prime(3).unwrap();
        let w = wc(&f3, &[1, 1, 1]);
        let inv = witt_unit_inverse(&w).unwrap();
        assert_eq!(witt_equal(&w.mul(&inv).unwrap(), &WittClass::one(&f3)).unwrap(), Decision::Yes);
        assert_eq!(witt_unit_inverse(&wc(&f3, &[1, 1])).unwrap_err(), Error::NotAUnit);
    }
}
