//! Exact field towers: the rationals, prime fields of odd characteristic,
//! simple algebraic extensions and rational function fields.
//!
//! A [`Field`] is a cheap, shared descriptor. Elements are plain [`Elem`]
//! values in canonical form; every operation goes through the descriptor, so
//! two elements of the same field are equal iff their representations are.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::factor;
use crate::poly::Poly;
use crate::quadforms::DiagonalForm;

/// Largest absolute degree of a simple-extension tower.
pub const MAX_TOWER_DEGREE: usize = 12;
/// Largest number of stacked simple extensions.
pub const MAX_TOWER_DEPTH: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Extension { base: Field, minpoly: Poly, name: String },
    Function { base: Field, var: String },
}

#[derive(Clone, Debug, Eq)]
pub struct Field(Arc<FieldKind>);

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

/// A field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
    /// Coefficients over the base in the power basis, trimmed.
    Alg(Vec<Elem>),
    /// Numerator and monic denominator, coprime.
    Frac(Box<(Poly, Poly)>),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(v) => *v == 0,
            Elem::Alg(c) => c.is_empty(),
            Elem::Frac(b) => b.0.is_zero(),
        }
    }
}

/// A place of a rational function field `k(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// Monic irreducible polynomial; its canonical uniformizer is itself.
    Finite(Poly),
    /// The place at infinity, uniformizer `1/t`.
    Infinite,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.deg(),
            Place::Infinite => 1,
        }
    }
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 || !arith::is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not an odd prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// Simple extension `base[name]/(minpoly)`; checks that the polynomial is
    /// monic, of degree at least two, separable and irreducible, and that the
    /// tower stays within bounds.
    pub fn extension(base: &Field, minpoly: Poly, name: &str) -> Result<Field> {
        let l = Field::extension_unchecked(base, minpoly.clone(), name)?;
        if !factor::is_irreducible(&minpoly, base)? {
            return Err(Error::InvalidField("minimal polynomial is reducible".into()));
        }
        Ok(l)
    }

    /// Like [`Field::extension`] but trusts the caller on irreducibility.
    pub fn extension_unchecked(base: &Field, minpoly: Poly, name: &str) -> Result<Field> {
        if base.is_function_field() {
            return Err(Error::UnsupportedField("extensions of function fields".into()));
        }
        if !minpoly.is_monic(base) || minpoly.deg() < 2 {
            return Err(Error::InvalidField("minimal polynomial must be monic of degree >= 2".into()));
        }
        if minpoly.derivative(base).is_zero() {
            return Err(Error::InseparableExtension);
        }
        if base.ext_depth() + 1 > MAX_TOWER_DEPTH {
            return Err(Error::TowerBoundExceeded(format!("depth exceeds {MAX_TOWER_DEPTH}")));
        }
        let total = base.absolute_degree().unwrap_or(1) * minpoly.deg();
        if total > MAX_TOWER_DEGREE {
            return Err(Error::TowerBoundExceeded(format!("degree {total} exceeds {MAX_TOWER_DEGREE}")));
        }
        if base.generator_names().iter().any(|n| n == name) || name.is_empty() {
            return Err(Error::InvalidField(format!("generator name {name:?} already used")));
        }
        Ok(Field(Arc::new(FieldKind::Extension { base: base.clone(), minpoly, name: name.to_string() })))
    }

    pub fn function_field(base: &Field, var: &str) -> Result<Field> {
        if base.is_function_field() {
            return Err(Error::UnsupportedField("iterated function fields".into()));
        }
        if base.generator_names().iter().any(|n| n == var) {
            return Err(Error::InvalidField(format!("variable name {var:?} already used")));
        }
        Ok(Field(Arc::new(FieldKind::Function { base: base.clone(), var: var.to_string() })))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldKind::Extension { base, .. } | FieldKind::Function { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn minpoly(&self) -> Option<&Poly> {
        match &*self.0 {
            FieldKind::Extension { minpoly, .. } => Some(minpoly),
            _ => None,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(*self.0, FieldKind::Rationals)
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(*self.0, FieldKind::Prime(_))
    }

    pub fn is_extension(&self) -> bool {
        matches!(*self.0, FieldKind::Extension { .. })
    }

    pub fn is_function_field(&self) -> bool {
        matches!(*self.0, FieldKind::Function { .. })
    }

    /// `k` is ℚ or a prime field.
    pub fn is_prime_subfield(&self) -> bool {
        self.is_rationals() || self.is_prime_field()
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { base, .. } | FieldKind::Function { base, .. } => base.characteristic(),
        }
    }

    fn ext_depth(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { base, .. } => 1 + base.ext_depth(),
            _ => 0,
        }
    }

    fn generator_names(&self) -> Vec<String> {
        let mut v = match self.base() {
            Some(b) => b.generator_names(),
            None => Vec::new(),
        };
        match &*self.0 {
            FieldKind::Extension { name, .. } => v.push(name.clone()),
            FieldKind::Function { var, .. } => v.push(var.clone()),
            _ => {}
        }
        v
    }

    /// A generator name not yet used in this tower.
    pub fn fresh_name(&self) -> String {
        let used = self.generator_names();
        for c in ["a", "b", "c", "d", "e"] {
            if !used.iter().any(|u| u == c) {
                return c.to_string();
            }
        }
        format!("g{}", used.len())
    }

    /// Degree over the prime field (None for function fields).
    pub fn absolute_degree(&self) -> Option<usize> {
        match &*self.0 {
            FieldKind::Rationals | FieldKind::Prime(_) => Some(1),
            FieldKind::Extension { base, minpoly, .. } => base.absolute_degree().map(|d| d * minpoly.deg()),
            FieldKind::Function { .. } => None,
        }
    }

    /// Degree `[self : sub]` when `sub` lies in the tower of simple extensions below `self`.
    pub fn degree_over(&self, sub: &Field) -> Option<usize> {
        if self == sub {
            return Some(1);
        }
        match &*self.0 {
            FieldKind::Extension { base, minpoly, .. } => base.degree_over(sub).map(|d| d * minpoly.deg()),
            _ => None,
        }
    }

    /// Number of elements of a finite field.
    pub fn finite_order(&self) -> Option<BigUint> {
        match &*self.0 {
            FieldKind::Prime(p) => Some(BigUint::from(*p)),
            FieldKind::Extension { base, minpoly, .. } => base.finite_order().map(|q| q.pow(minpoly.deg() as u32)),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_order().is_some()
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Rat(BigRational::zero()),
            FieldKind::Prime(_) => Elem::Mod(0),
            FieldKind::Extension { .. } => Elem::Alg(Vec::new()),
            FieldKind::Function { base, .. } => Elem::Frac(Box::new((Poly::zero(), Poly::one(base)))),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let m = n.mod_floor(&BigInt::from(*p));
                Elem::Mod(m.to_u64().expect("reduced"))
            }
            FieldKind::Extension { base, .. } | FieldKind::Function { base, .. } => {
                let b = base.from_bigint(n);
                self.from_base(&b)
            }
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Elem> {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        self.div(&n, &d)
    }

    /// Embed an element of the immediate base field.
    pub fn from_base(&self, b: &Elem) -> Elem {
        match &*self.0 {
            FieldKind::Extension { .. } => Elem::Alg(Poly::constant(b.clone()).0),
            FieldKind::Function { base, .. } => Elem::Frac(Box::new((Poly::constant(b.clone()), Poly::one(base)))),
            _ => b.clone(),
        }
    }

    /// Embed an element of any field below this one in the tower.
    pub fn embed(&self, sub: &Field, x: &Elem) -> Result<Elem> {
        if self == sub {
            return Ok(x.clone());
        }
        match self.base() {
            Some(b) => {
                let y = b.embed(sub, x)?;
                Ok(self.from_base(&y))
            }
            None => Err(Error::DescriptorMismatch),
        }
    }

    /// The adjoined generator (θ for extensions, t for function fields).
    pub fn generator(&self) -> Option<Elem> {
        match &*self.0 {
            FieldKind::Extension { base, .. } => Some(Elem::Alg(vec![base.zero(), base.one()])),
            FieldKind::Function { base, .. } => Some(Elem::Frac(Box::new((Poly::x(base), Poly::one(base))))),
            _ => None,
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % p),
            (FieldKind::Extension { base, .. }, Elem::Alg(x), Elem::Alg(y)) => {
                Elem::Alg(Poly(x.clone()).add(&Poly(y.clone()), base).0)
            }
            (FieldKind::Function { base, .. }, Elem::Frac(x), Elem::Frac(y)) => {
                if x.0.is_zero() {
                    return b.clone();
                }
                if y.0.is_zero() {
                    return a.clone();
                }
                if x.1 == y.1 {
                    return self.frac(x.0.add(&y.0, base), x.1.clone());
                }
                let n = x.0.mul(&y.1, base).add(&y.0.mul(&x.1, base), base);
                self.frac(n, x.1.mul(&y.1, base))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (FieldKind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod((p - x) % p),
            (FieldKind::Extension { base, .. }, Elem::Alg(x)) => Elem::Alg(Poly(x.clone()).neg(base).0),
            (FieldKind::Function { base, .. }, Elem::Frac(x)) => {
                Elem::Frac(Box::new((x.0.neg(base), x.1.clone())))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(x * y % p),
            (FieldKind::Extension { base, minpoly, .. }, Elem::Alg(x), Elem::Alg(y)) => {
                let prod = Poly(x.clone()).mul(&Poly(y.clone()), base);
                Elem::Alg(prod.rem(minpoly, base).0)
            }
            (FieldKind::Function { base, .. }, Elem::Frac(x), Elem::Frac(y)) => {
                if x.0.is_zero() || y.0.is_zero() {
                    return self.zero();
                }
                // cross-cancel before multiplying
                let g1 = x.0.gcd(&y.1, base);
                let g2 = y.0.gcd(&x.1, base);
                let n = x.0.exact_div(&g1, base).unwrap().mul(&y.0.exact_div(&g2, base).unwrap(), base);
                let d = x.1.exact_div(&g2, base).unwrap().mul(&y.1.exact_div(&g1, base).unwrap(), base);
                self.frac(n, d)
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&*self.0, a) {
            (FieldKind::Rationals, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod(mod_pow(*x, p - 2, *p)),
            (FieldKind::Extension { base, minpoly, .. }, Elem::Alg(x)) => {
                let (g, s, _) = Poly(x.clone()).xgcd(minpoly, base);
                debug_assert!(g.deg() == 0);
                Elem::Alg(s.rem(minpoly, base).0)
            }
            (FieldKind::Function { .. }, Elem::Frac(x)) => self.frac(x.1.clone(), x.0.clone()),
            _ => panic!("element does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        Ok(self.pow_big(&base, &BigUint::from(e.unsigned_abs())))
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut r = self.one();
        let mut b = a.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                r = self.mul(&r, &b);
            }
            if i + 1 < bits {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    /// `num/den` over the base of a function field, normalized.
    pub fn frac(&self, num: Poly, den: Poly) -> Elem {
        let FieldKind::Function { base, .. } = &*self.0 else {
            panic!("frac on {self}");
        };
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return self.zero();
        }
        let g = num.gcd(&den, base);
        let (mut n, mut d) = if g.deg() > 0 {
            (num.exact_div(&g, base).unwrap(), den.exact_div(&g, base).unwrap())
        } else {
            (num, den)
        };
        let lc = d.lc().unwrap().clone();
        if !base.is_one(&lc) {
            let inv = base.inv(&lc).unwrap();
            n = n.scale(&inv, base);
            d = d.scale(&inv, base);
        }
        Elem::Frac(Box::new((n, d)))
    }

    /// Polynomial as an element of the function field.
    pub fn from_poly(&self, p: &Poly) -> Elem {
        let base = self.base().expect("function field");
        self.frac(p.clone(), Poly::one(base))
    }

    /// Numerator and denominator of a function-field element.
    pub fn num_den<'a>(&self, x: &'a Elem) -> (&'a Poly, &'a Poly) {
        match x {
            Elem::Frac(b) => (&b.0, &b.1),
            _ => panic!("not a function-field element"),
        }
    }

    /// The unique `p`-th root in a finite field.
    pub fn pth_root(&self, a: &Elem) -> Result<Elem> {
        let q = self.finite_order().ok_or_else(|| Error::UnsupportedField("p-th roots outside finite fields".into()))?;
        let p = BigUint::from(self.characteristic());
        Ok(self.pow_big(a, &(q / p)))
    }

    /// Elements of a finite field, indexed by base-q digits.
    pub fn element_from_index(&self, mut i: u64) -> Elem {
        match &*self.0 {
            FieldKind::Prime(p) => Elem::Mod(i % p),
            FieldKind::Extension { base, minpoly, .. } => {
                let q = base.finite_order().expect("finite").to_u64().expect("small field");
                let mut c = Vec::new();
                for _ in 0..minpoly.deg() {
                    c.push(base.element_from_index(i % q));
                    i /= q;
                }
                Elem::Alg(Poly::from_coeffs(c).0)
            }
            _ => panic!("not a finite field"),
        }
    }

    /// All nonzero elements of a finite field in index order.
    pub fn nonzero_elements(&self) -> Vec<Elem> {
        let q = self.finite_order().expect("finite field").to_u64().expect("small field");
        (1..q).map(|i| self.element_from_index(i)).collect()
    }

    /// Field trace of an element down to the immediate base.
    pub fn trace(&self, x: &Elem) -> Elem {
        let FieldKind::Extension { base, minpoly, .. } = &*self.0 else {
            return x.clone();
        };
        let n = minpoly.deg();
        let theta = self.generator().unwrap();
        let mut acc = base.zero();
        let mut y = x.clone();
        for i in 0..n {
            if let Elem::Alg(c) = &y {
                if let Some(ci) = c.get(i) {
                    acc = base.add(&acc, ci);
                }
            }
            y = self.mul(&y, &theta);
        }
        acc
    }

    /// Trace from this field down to any subfield of the tower.
    pub fn trace_to(&self, sub: &Field, x: &Elem) -> Result<Elem> {
        if self == sub {
            return Ok(x.clone());
        }
        let base = self.base().filter(|_| self.is_extension()).ok_or(Error::DescriptorMismatch)?;
        base.trace_to(sub, &self.trace(x))
    }

    /// Coordinates of an element over the immediate base, padded to the degree.
    pub fn coords(&self, x: &Elem) -> Vec<Elem> {
        let FieldKind::Extension { base, minpoly, .. } = &*self.0 else {
            return vec![x.clone()];
        };
        let Elem::Alg(c) = x else { panic!("not an extension element") };
        (0..minpoly.deg()).map(|i| c.get(i).cloned().unwrap_or_else(|| base.zero())).collect()
    }

    pub fn from_coords(&self, c: Vec<Elem>) -> Elem {
        Elem::Alg(Poly::from_coeffs(c).0)
    }

    /// Norm to the immediate base as the determinant of multiplication.
    pub fn norm(&self, x: &Elem) -> Elem {
        let FieldKind::Extension { base, minpoly, .. } = &*self.0 else {
            return x.clone();
        };
        let n = minpoly.deg();
        let theta = self.generator().unwrap();
        let mut rows = Vec::with_capacity(n);
        let mut y = x.clone();
        for _ in 0..n {
            rows.push(self.coords(&y));
            y = self.mul(&y, &theta);
        }
        crate::linalg::determinant(base, rows)
    }

    pub fn is_square(&self, x: &Elem) -> Result<bool> {
        crate::squares::is_square(self, x)
    }

    /// Canonical representative of the square class of `x`, when one exists.
    pub fn square_class_rep(&self, x: &Elem) -> Result<Option<Elem>> {
        crate::squares::square_class_rep(self, x)
    }

    // --- rational function fields ---

    fn function_base(&self) -> Result<&Field> {
        match &*self.0 {
            FieldKind::Function { base, .. } => Ok(base),
            _ => Err(Error::UnsupportedField(format!("{self} is not a rational function field"))),
        }
    }

    fn check_place(&self, v: &Place) -> Result<()> {
        let k = self.function_base()?;
        if let Place::Finite(p) = v {
            if !p.is_monic(k) || p.deg() == 0 {
                return Err(Error::NonCanonicalUniformizer);
            }
        }
        Ok(())
    }

    /// Valuation of a nonzero element at a place.
    pub fn valuation(&self, x: &Elem, v: &Place) -> Result<i64> {
        self.check_place(v)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let k = self.function_base()?;
        let (n, d) = self.num_den(x);
        Ok(match v {
            Place::Infinite => d.deg() as i64 - n.deg() as i64,
            Place::Finite(p) => poly_valuation(n, p, k) as i64 - poly_valuation(d, p, k) as i64,
        })
    }

    /// Residue field of a place: `k` for degree one and infinity, else `k[a]/(p)`.
    pub fn residue_field(&self, v: &Place) -> Result<Field> {
        self.check_place(v)?;
        let k = self.function_base()?;
        match v {
            Place::Finite(p) if p.deg() >= 2 => {
                let name = self.fresh_name();
                Field::extension_unchecked(k, p.clone(), &name)
            }
            _ => Ok(k.clone()),
        }
    }

    /// Splits `x = u * π^e` for the canonical uniformizer π of `v` and returns
    /// `(e, ū)` with `ū` the image of `u` in the residue field.
    pub fn leading_unit(&self, x: &Elem, v: &Place, kappa: &Field) -> Result<(i64, Elem)> {
        let e = self.valuation(x, v)?;
        let k = self.function_base()?;
        let (n, d) = self.num_den(x);
        match v {
            Place::Infinite => {
                let ubar = k.div(n.lc().unwrap(), d.lc().unwrap())?;
                Ok((e, ubar))
            }
            Place::Finite(p) => {
                let (mut n, mut d) = (n.clone(), d.clone());
                for _ in 0..e.max(0) {
                    n = n.exact_div(p, k).expect("valuation");
                }
                for _ in 0..(-e).max(0) {
                    d = d.exact_div(p, k).expect("valuation");
                }
                let nb = reduce_poly_at(&n, p, k);
                let db = reduce_poly_at(&d, p, k);
                Ok((e, kappa.div(&nb, &db)?))
            }
        }
    }

    /// Image of a polynomial in the residue field of a finite place.
    pub fn reduce_poly(&self, f: &Poly, v: &Place) -> Result<Elem> {
        let k = self.function_base()?;
        match v {
            Place::Finite(p) => Ok(reduce_poly_at(f, p, k)),
            Place::Infinite => Err(Error::InvalidInput("polynomials do not reduce at infinity".into())),
        }
    }

    // --- text form ---

    pub fn format(&self, x: &Elem) -> String {
        match (&*self.0, x) {
            (FieldKind::Rationals, Elem::Rat(r)) => r.to_string(),
            (FieldKind::Prime(_), Elem::Mod(v)) => v.to_string(),
            (FieldKind::Extension { base, name, .. }, Elem::Alg(c)) => format_poly(base, c, name),
            (FieldKind::Function { base, var }, Elem::Frac(b)) => {
                let n = format_poly(base, &b.0 .0, var);
                if b.1.deg() == 0 {
                    n
                } else {
                    format!("({})/({})", n, format_poly(base, &b.1 .0, var))
                }
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        crate::expr::parse_elem(self, s)
    }

    /// Value of a generator name somewhere in the tower.
    pub(crate) fn lookup_name(&self, ident: &str) -> Option<Elem> {
        match &*self.0 {
            FieldKind::Extension { base, name, .. } | FieldKind::Function { base, var: name } => {
                if name == ident {
                    self.generator()
                } else {
                    base.lookup_name(ident).map(|b| self.from_base(&b))
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Extension { base, minpoly, name } => {
                write!(f, "{base}[{name}]/({})", format_poly(base, &minpoly.0, name))
            }
            FieldKind::Function { base, var } => write!(f, "{base}({var})"),
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Multiplicity of `p` in the nonzero polynomial `f`.
pub fn poly_valuation(f: &Poly, p: &Poly, k: &Field) -> u32 {
    let mut f = f.clone();
    let mut v = 0;
    while let Some(q) = f.exact_div(p, k) {
        if f.is_zero() {
            break;
        }
        f = q;
        v += 1;
    }
    v
}

fn reduce_poly_at(f: &Poly, p: &Poly, k: &Field) -> Elem {
    if p.deg() == 1 {
        // κ = k: evaluate at the root of p
        let root = k.neg(&p.0[0]);
        f.eval(&root, k)
    } else {
        Elem::Alg(f.rem(p, k).0)
    }
}

fn format_coeff(base: &Field, c: &Elem) -> (String, bool) {
    let s = base.format(c);
    let simple = base.is_prime_subfield() || !s.contains(['+', ' ']);
    (s, simple)
}

/// Formats coefficients (low first) as a polynomial in `var`.
pub fn format_poly(base: &Field, c: &[Elem], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let (s, simple) = format_coeff(base, a);
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            if simple {
                s
            } else {
                format!("({s})")
            }
        } else if base.is_one(a) {
            mono
        } else if simple && s == "-1" {
            format!("-{mono}")
        } else if simple {
            format!("{s}*{mono}")
        } else {
            format!("({s})*{mono}")
        };
        terms.push(term);
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        match (i, t.strip_prefix('-')) {
            (0, _) => out.push_str(t),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl Field {
    /// Rational value of a ℚ element.
    pub fn as_rational<'a>(&self, x: &'a Elem) -> Option<&'a BigRational> {
        match x {
            Elem::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Sign of a rational element.
    pub fn rational_sign(&self, x: &Elem) -> Option<i8> {
        self.as_rational(x).map(|r| if r.is_negative() { -1 } else if r.is_zero() { 0 } else { 1 })
    }
}

/// Trace form of a simple extension `L/k`: the bilinear form `Tr(xy)` on the
/// power basis, diagonalized over `k`.
pub fn trace_form(l: &Field) -> Result<DiagonalForm> {
    crate::transfer::scaled_trace_form(l, &l.one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn rational_arithmetic() {
        let k = q();
        let a = k.parse("1/2").unwrap();
        let b = k.parse("1/3").unwrap();
        assert_eq!(k.add(&a, &b), k.parse("5/6").unwrap());
    }

    #[test]
    fn inverse_mod_seven() {
        let k = Field::prime(7).unwrap();
        let inv = k.inv(&k.from_i64(3)).unwrap();
        // exhaustive oracle: the x with 3x = 1 mod 7
        let oracle = (0..7).find(|x| 3 * x % 7 == 1).unwrap();
        assert_eq!(inv, Elem::Mod(oracle));
        assert_eq!(oracle, 5);
    }

    #[test]
    fn extension_reduces_by_minpoly() {
        let k = q();
        let l = Field::extension(&k, Poly::from_i64s(&k, &[-2, 0, 1]), "a").unwrap();
        let th = l.generator().unwrap();
        assert_eq!(l.mul(&th, &th), l.from_i64(2));
        let x = l.parse("1 + a").unwrap();
        let y = l.inv(&x).unwrap();
        assert!(l.is_one(&l.mul(&x, &y)));
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        let k = q();
        assert!(Field::extension(&k, Poly::from_i64s(&k, &[-1, 0, 1]), "a").is_err());
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            Field::extension(&f3, Poly::from_i64s(&f3, &[1, 0, 0, 1]), "a").unwrap_err(),
            Error::InseparableExtension
        );
    }

    #[test]
    fn function_field_valuations() {
        let k = q();
        let f = Field::function_field(&k, "t").unwrap();
        let t = Place::Finite(Poly::x(&k));
        let x = f.parse("t^2/(t+1)").unwrap();
        assert_eq!(f.valuation(&x, &t).unwrap(), 2);
        let y = f.parse("(t^2+1)/t").unwrap();
        assert_eq!(f.valuation(&y, &Place::Infinite).unwrap(), -1);
        let z = f.parse("t^4 - 1").unwrap();
        let p = Place::Finite(Poly::from_i64s(&k, &[1, 0, 1]));
        assert_eq!(f.valuation(&z, &p).unwrap(), 1);
        assert_eq!(f.valuation(&f.zero(), &p).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn leading_units() {
        let k = q();
        let f = Field::function_field(&k, "t").unwrap();
        let p = Place::Finite(Poly::from_i64s(&k, &[1, 0, 1]));
        let kappa = f.residue_field(&p).unwrap();
        let x = f.parse("t^3 + t").unwrap(); // t (t^2+1)
        let (e, u) = f.leading_unit(&x, &p, &kappa).unwrap();
        assert_eq!(e, 1);
        assert_eq!(u, kappa.generator().unwrap());
        let (e, u) = f.leading_unit(&x, &Place::Infinite, &k).unwrap();
        assert_eq!((e, u), (-3, k.one()));
    }

    #[test]
    fn format_parse_round_trip() {
        let k = q();
        let l = Field::extension(&k, Poly::from_i64s(&k, &[-2, 0, 0, 1]), "a").unwrap();
        let x = l.parse("-3/2*a^2 + a - 7").unwrap();
        assert_eq!(l.parse(&l.format(&x)).unwrap(), x);
        let f = Field::function_field(&l, "t").unwrap();
        let y = f.parse("(a*t^2 + 1)/(t - a)").unwrap();
        assert_eq!(f.parse(&f.format(&y)).unwrap(), y);
    }

    #[test]
    fn traces_and_norms() {
        let k = q();
        let l = Field::extension(&k, Poly::from_i64s(&k, &[-2, 0, 0, 1]), "a").unwrap();
        let th = l.generator().unwrap();
        assert_eq!(l.trace(&l.one()), k.from_i64(3));
        assert_eq!(l.trace(&th), k.zero());
        assert_eq!(l.trace(&l.mul(&th, &l.mul(&th, &th))), k.from_i64(6));
        assert_eq!(l.norm(&th), k.from_i64(2));
    }
}
