//! Milnor-Witt K-theory of fields in degrees -1 to 2, realized as pairs
//! (Milnor symbol, class in a power of the fundamental ideal).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::factor;
use crate::fields::{Elem, Field, FieldKind, Place};
use crate::quadforms::{self, DiagonalForm, RatPlace};
use crate::transfer;
use crate::wittgw::{self, Decision, GwElement, WittClass};

/// Milnor K-theory part of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MilnorPart {
    /// Degree -1 carries no Milnor part.
    Absent,
    /// `K^M_0 = ℤ`.
    Int(i64),
    /// `K^M_1 = k^×`, written multiplicatively: `{u}`.
    Unit(Elem),
    /// Formal combination `Σ n_i {a_i, b_i}`, canonicalized.
    Symbols(Vec<(i64, Elem, Elem)>),
}

/// An element of `K^MW_n(k)` for `-1 ≤ n ≤ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MwElement {
    degree: i64,
    milnor: MilnorPart,
    ideal: WittClass,
}

fn symbols_canonical(k: &Field, terms: Vec<(i64, Elem, Elem)>) -> Vec<(i64, Elem, Elem)> {
    if k.is_finite() {
        // K_2 of a finite field vanishes
        return Vec::new();
    }
    let one = k.one();
    let minus_one = k.from_i64(-1);
    let mut out: Vec<(i64, Elem, Elem)> = Vec::new();
    for (n, a, b) in terms {
        if n == 0 || a == one || b == one {
            continue;
        }
        if k.add(&a, &b) == one || k.add(&a, &b).is_zero() {
            continue;
        }
        // {a, a} = {a, -1}
        let b = if a == b { minus_one.clone() } else { b };
        if let Some(t) = out.iter_mut().find(|t| t.1 == a && t.2 == b) {
            t.0 += n;
        } else {
            out.push((n, a, b));
        }
    }
    out.retain(|t| t.0 != 0);
    out.sort_by(|x, y| (&x.1, &x.2, x.0).cmp(&(&y.1, &y.2, y.0)));
    out
}

/// Signed discriminant of a Witt representative; `1` for the empty form.
fn signed_disc(w: &WittClass) -> Elem {
    w.rep().signed_determinant()
}

fn rat(x: &Elem) -> &BigRational {
    match x {
        Elem::Rat(r) => r,
        _ => unreachable!("rational element"),
    }
}

/// Hasse invariant of an `I^2` class over ℚ relative to the hyperbolic form of
/// the same rank; equals the Clifford invariant of the class.
fn relative_hasse(q: &DiagonalForm, v: &RatPlace) -> i8 {
    let k = q.field();
    let hyp = DiagonalForm::hyperbolic(k, q.rank() / 2);
    quadforms::hasse_at(&quadforms::rational_classes(q), v) * quadforms::hasse_at(&quadforms::rational_classes(&hyp), v)
}

fn symbol_places(q: &DiagonalForm, terms: &[(i64, Elem, Elem)]) -> BTreeSet<RatPlace> {
    let mut places = BTreeSet::new();
    places.insert(RatPlace::Prime(BigUint::from(2u32)));
    places.insert(RatPlace::Real);
    let mut ints = quadforms::rational_classes(q);
    for (_, a, b) in terms {
        for x in [a, b] {
            let r = rat(x);
            ints.push(r.numer() * r.denom());
        }
    }
    for a in ints {
        for p in arith::prime_divisors(&a) {
            places.insert(RatPlace::Prime(p));
        }
    }
    places
}

impl MwElement {
    /// Builds an element and checks the fiber-product condition.
    pub fn new(degree: i64, milnor: MilnorPart, ideal: WittClass) -> Result<MwElement> {
        if !(-1..=2).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        let k = ideal.field().clone();
        let milnor = match (degree, milnor) {
            (-1, MilnorPart::Absent) => MilnorPart::Absent,
            (0, MilnorPart::Int(n)) => MilnorPart::Int(n),
            (1, MilnorPart::Unit(u)) => {
                if u.is_zero() {
                    return Err(Error::ZeroInput);
                }
                MilnorPart::Unit(u)
            }
            (2, MilnorPart::Symbols(t)) => {
                if t.iter().any(|(_, a, b)| a.is_zero() || b.is_zero()) {
                    return Err(Error::ZeroInput);
                }
                MilnorPart::Symbols(symbols_canonical(&k, t))
            }
            _ => return Err(Error::InvalidInput(format!("Milnor part does not have degree {degree}"))),
        };
        let x = MwElement { degree, milnor, ideal };
        if x.is_compatible()? == Decision::No {
            if let MilnorPart::Int(n) = x.milnor {
                return Err(Error::ParityMismatch { rank: n, witt_parity: x.ideal.parity() });
            }
            return Err(Error::InvalidInput(format!("incompatible pair in degree {degree}: {x}")));
        }
        Ok(x)
    }

    pub fn zero(k: &Field, degree: i64) -> Result<MwElement> {
        let milnor = match degree {
            -1 => MilnorPart::Absent,
            0 => MilnorPart::Int(0),
            1 => MilnorPart::Unit(k.one()),
            2 => MilnorPart::Symbols(Vec::new()),
            n => return Err(Error::UnsupportedDegree(n)),
        };
        Ok(MwElement { degree, milnor, ideal: WittClass::zero(k) })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn milnor(&self) -> &MilnorPart {
        &self.milnor
    }

    pub fn ideal(&self) -> &WittClass {
        &self.ideal
    }

    pub fn field(&self) -> &Field {
        self.ideal.field()
    }

    /// Degree-zero elements are exactly the Grothendieck-Witt ring.
    pub fn from_gw(x: &GwElement) -> MwElement {
        MwElement { degree: 0, milnor: MilnorPart::Int(x.rank()), ideal: x.witt().clone() }
    }

    pub fn to_gw(&self) -> Result<GwElement> {
        match self.milnor {
            MilnorPart::Int(n) => GwElement::make(n, self.ideal.clone()),
            _ => Err(Error::UnsupportedDegree(self.degree)),
        }
    }

    /// Degree -1 elements are bare Witt classes.
    pub fn from_witt(w: &WittClass) -> MwElement {
        MwElement { degree: -1, milnor: MilnorPart::Absent, ideal: w.clone() }
    }

    /// Checks that the Milnor part and the ideal part agree modulo the next
    /// power of the fundamental ideal. In degree 2 the Clifford invariant is
    /// compared over ℚ and finite fields only; elsewhere the check stops at
    /// membership in `I^2`.
    pub fn is_compatible(&self) -> Result<Decision> {
        let k = self.field();
        let q = self.ideal.rep();
        match &self.milnor {
            MilnorPart::Absent => Ok(Decision::Yes),
            MilnorPart::Int(n) => Ok(Decision::from_bool(n.rem_euclid(2) as u8 == self.ideal.parity())),
            MilnorPart::Unit(u) => {
                if q.rank() % 2 == 1 {
                    return Ok(Decision::No);
                }
                match k.is_square(&k.mul(&signed_disc(&self.ideal), u)) {
                    Ok(b) => Ok(Decision::from_bool(b)),
                    Err(Error::UndecidableAtBound(_)) => Ok(Decision::Undecidable),
                    Err(e) => Err(e),
                }
            }
            MilnorPart::Symbols(terms) => {
                if q.rank() % 2 == 1 {
                    return Ok(Decision::No);
                }
                match k.is_square(&signed_disc(&self.ideal)) {
                    Ok(false) => return Ok(Decision::No),
                    Ok(true) => {}
                    Err(Error::UndecidableAtBound(_)) => return Ok(Decision::Undecidable),
                    Err(e) => return Err(e),
                }
                if k.is_finite() {
                    return wittgw::witt_zero(q);
                }
                if !k.is_rationals() {
                    return Ok(Decision::Undecidable);
                }
                for v in symbol_places(q, terms) {
                    let mut s = 1i8;
                    for (n, a, b) in terms {
                        if n.rem_euclid(2) == 1 {
                            s *= quadforms::hilbert_symbol(rat(a), rat(b), &v)?;
                        }
                    }
                    if s != relative_hasse(q, &v) {
                        return Ok(Decision::No);
                    }
                }
                Ok(Decision::Yes)
            }
        }
    }

    fn same_field(&self, o: &MwElement) -> Result<()> {
        if self.field() != o.field() {
            return Err(Error::DescriptorMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &MwElement) -> Result<MwElement> {
        self.same_field(o)?;
        if self.degree != o.degree {
            return Err(Error::InvalidInput(format!("degrees {} and {} differ", self.degree, o.degree)));
        }
        let k = self.field();
        let milnor = match (&self.milnor, &o.milnor) {
            (MilnorPart::Absent, MilnorPart::Absent) => MilnorPart::Absent,
            (MilnorPart::Int(a), MilnorPart::Int(b)) => MilnorPart::Int(a + b),
            (MilnorPart::Unit(a), MilnorPart::Unit(b)) => MilnorPart::Unit(k.mul(a, b)),
            (MilnorPart::Symbols(a), MilnorPart::Symbols(b)) => {
                MilnorPart::Symbols(symbols_canonical(k, a.iter().chain(b).cloned().collect()))
            }
            _ => unreachable!("same degree"),
        };
        Ok(MwElement { degree: self.degree, milnor, ideal: self.ideal.add(&o.ideal)? })
    }

    pub fn neg(&self) -> MwElement {
        let k = self.field();
        let milnor = match &self.milnor {
            MilnorPart::Absent => MilnorPart::Absent,
            MilnorPart::Int(n) => MilnorPart::Int(-n),
            MilnorPart::Unit(u) => MilnorPart::Unit(k.inv(u).expect("unit")),
            MilnorPart::Symbols(t) => MilnorPart::Symbols(t.iter().map(|(n, a, b)| (-n, a.clone(), b.clone())).collect()),
        };
        MwElement { degree: self.degree, milnor, ideal: self.ideal.neg() }
    }

    pub fn sub(&self, o: &MwElement) -> Result<MwElement> {
        self.add(&o.neg())
    }
}

impl fmt::Display for MwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.field();
        let m = match &self.milnor {
            MilnorPart::Absent => "-".to_string(),
            MilnorPart::Int(n) => n.to_string(),
            MilnorPart::Unit(u) => format!("{{{}}}", k.format(u)),
            MilnorPart::Symbols(t) if t.is_empty() => "0".to_string(),
            MilnorPart::Symbols(t) => t
                .iter()
                .map(|(n, a, b)| format!("{n}{{{}, {}}}", k.format(a), k.format(b)))
                .collect::<Vec<_>>()
                .join(" + "),
        };
        write!(f, "[deg {}: {}, {}]", self.degree, m, self.ideal)
    }
}

/// `[u] = ({u}, <1, -u>)`.
pub fn mw_unit_symbol(k: &Field, u: &Elem) -> Result<MwElement> {
    if u.is_zero() {
        return Err(Error::ZeroInput);
    }
    let q = DiagonalForm::new(k, vec![k.one(), k.neg(u)])?;
    Ok(MwElement { degree: 1, milnor: MilnorPart::Unit(u.clone()), ideal: WittClass::from_form(&q)? })
}

/// Multiplication by η: drops the Milnor part and keeps the ideal part,
/// now read in one degree lower.
pub fn eta_mul(x: &MwElement) -> Result<MwElement> {
    if x.degree == -1 {
        return Err(Error::DegreeUnderflow);
    }
    let mut y = MwElement::zero(x.field(), x.degree - 1)?;
    y.ideal = x.ideal.clone();
    Ok(y)
}

/// Graded product, componentwise on (Milnor part, ideal part).
pub fn mw_mul(x: &MwElement, y: &MwElement) -> Result<MwElement> {
    x.same_field(y)?;
    let d = x.degree + y.degree;
    if d > 2 {
        return Err(Error::DegreeOverflow(d));
    }
    if d < -1 {
        return Err(Error::UnsupportedDegree(d));
    }
    let k = x.field();
    let ideal = x.ideal.mul(&y.ideal)?;
    let milnor = match (&x.milnor, &y.milnor) {
        (MilnorPart::Absent, _) | (_, MilnorPart::Absent) => MwElement::zero(k, d)?.milnor,
        (MilnorPart::Int(a), MilnorPart::Int(b)) => MilnorPart::Int(a * b),
        (MilnorPart::Int(n), MilnorPart::Unit(u)) | (MilnorPart::Unit(u), MilnorPart::Int(n)) => {
            MilnorPart::Unit(k.pow(u, *n)?)
        }
        (MilnorPart::Int(n), MilnorPart::Symbols(t)) | (MilnorPart::Symbols(t), MilnorPart::Int(n)) => {
            MilnorPart::Symbols(symbols_canonical(k, t.iter().map(|(m, a, b)| (m * n, a.clone(), b.clone())).collect()))
        }
        (MilnorPart::Unit(a), MilnorPart::Unit(b)) => {
            MilnorPart::Symbols(symbols_canonical(k, vec![(1, a.clone(), b.clone())]))
        }
        _ => unreachable!("degree at most two"),
    };
    Ok(MwElement { degree: d, milnor, ideal })
}

/// Tame symbols of a degree-2 combination at every odd prime, as residues
/// mod `p`, together with the real symbol; these determine `K_2(ℚ)`.
fn rational_k2_equal(a: &[(i64, Elem, Elem)], b: &[(i64, Elem, Elem)]) -> bool {
    let mut terms: Vec<(i64, Elem, Elem)> = a.to_vec();
    terms.extend(b.iter().map(|(n, x, y)| (-n, x.clone(), y.clone())));
    let mut real = 1i8;
    let mut primes = BTreeSet::new();
    for (n, x, y) in &terms {
        let (rx, ry) = (rat(x), rat(y));
        if n.rem_euclid(2) == 1 && rx.is_negative() && ry.is_negative() {
            real = -real;
        }
        for r in [rx, ry] {
            for z in [r.numer(), r.denom()] {
                primes.extend(arith::prime_divisors(z));
            }
        }
    }
    if real != 1 {
        return false;
    }
    for p in primes {
        if p == BigUint::from(2u32) {
            continue;
        }
        let pi = BigInt::from(p.clone());
        let mut acc = BigInt::one();
        for (n, x, y) in &terms {
            let t = rational_tame(rat(x), rat(y), &p);
            let t = if *n >= 0 {
                t.modpow(&BigInt::from(*n), &pi)
            } else {
                mod_inverse(&t, &pi).modpow(&BigInt::from(-n), &pi)
            };
            acc = (acc * t).mod_floor(&pi);
        }
        if !acc.is_one() {
            return false;
        }
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    a.modpow(&(p - 2u32), p)
}

fn split_rat(r: &BigRational, p: &BigUint) -> (i64, BigInt, BigInt) {
    let v = arith::valuation(r.numer(), p) as i64 - arith::valuation(r.denom(), p) as i64;
    let pi = BigInt::from(p.clone());
    let strip = |mut n: BigInt| {
        while (&n % &pi).is_zero() {
            n /= &pi;
        }
        n
    };
    (v, strip(r.numer().clone()), strip(r.denom().clone()))
}

/// `(-1)^{v(a)v(b)} a^{-v(b)} b^{v(a)}` reduced mod an odd prime.
fn rational_tame(a: &BigRational, b: &BigRational, p: &BigUint) -> BigInt {
    let pi = BigInt::from(p.clone());
    let (va, an, ad) = split_rat(a, p);
    let (vb, bn, bd) = split_rat(b, p);
    let unit = |n: &BigInt, d: &BigInt| (n.mod_floor(&pi) * mod_inverse(&d.mod_floor(&pi), &pi)).mod_floor(&pi);
    let ua = unit(&an, &ad);
    let ub = unit(&bn, &bd);
    let pw = |u: &BigInt, e: i64| {
        if e >= 0 {
            u.modpow(&BigInt::from(e), &pi)
        } else {
            mod_inverse(u, &pi).modpow(&BigInt::from(-e), &pi)
        }
    };
    let mut t = (pw(&ua, -vb) * pw(&ub, va)).mod_floor(&pi);
    if (va * vb).rem_euclid(2) == 1 {
        t = (-t).mod_floor(&pi);
    }
    t
}

/// Equality of Milnor-Witt elements. Degree-2 Milnor parts are decided over
/// finite fields and ℚ; elsewhere only identical canonical forms are equal.
pub fn mw_equal(x: &MwElement, y: &MwElement) -> Result<Decision> {
    x.same_field(y)?;
    if x.degree != y.degree {
        return Ok(Decision::No);
    }
    let k = x.field();
    let milnor = match (&x.milnor, &y.milnor) {
        (MilnorPart::Absent, MilnorPart::Absent) => Decision::Yes,
        (MilnorPart::Int(a), MilnorPart::Int(b)) => Decision::from_bool(a == b),
        (MilnorPart::Unit(a), MilnorPart::Unit(b)) => Decision::from_bool(a == b),
        (MilnorPart::Symbols(a), MilnorPart::Symbols(b)) => {
            if a == b {
                Decision::Yes
            } else if k.is_rationals() {
                Decision::from_bool(rational_k2_equal(a, b))
            } else {
                Decision::Undecidable
            }
        }
        _ => unreachable!("same degree"),
    };
    if milnor == Decision::No {
        return Ok(Decision::No);
    }
    Ok(milnor.and(wittgw::witt_equal(&x.ideal, &y.ideal)?))
}

fn check_canonical_place(f: &Field, v: &Place) -> Result<()> {
    let k = f.base().filter(|_| f.is_function_field()).ok_or_else(|| {
        Error::UnsupportedField(format!("{f} is not a rational function field"))
    })?;
    if let Place::Finite(p) = v {
        if p.deg() == 0 || !p.is_monic(k) || !factor::is_irreducible(p, k)? {
            return Err(Error::NonCanonicalUniformizer);
        }
    }
    Ok(())
}

/// The unit `<-π'(θ)>` attached to a finite place by its canonical
/// uniformizer; trivial at infinity.
pub fn place_twist(f: &Field, v: &Place) -> Result<Elem> {
    let k = f.base().ok_or_else(|| Error::UnsupportedField(format!("{f} is not a rational function field")))?;
    let kappa = f.residue_field(v)?;
    match v {
        Place::Infinite => Ok(kappa.one()),
        Place::Finite(p) => {
            let d = f.reduce_poly(&p.derivative(k), v)?;
            if d.is_zero() {
                return Err(Error::InseparableExtension);
            }
            Ok(kappa.neg(&d))
        }
    }
}

/// Second residue of a form at a place, twisted by [`place_twist`].
pub fn second_residue(q: &DiagonalForm, v: &Place) -> Result<DiagonalForm> {
    let f = q.field();
    let kappa = f.residue_field(v)?;
    let twist = place_twist(f, v)?;
    let mut out = Vec::new();
    for a in q.entries() {
        let (e, u) = f.leading_unit(a, v, &kappa)?;
        if e.rem_euclid(2) == 1 {
            out.push(kappa.mul(&twist, &u));
        }
    }
    DiagonalForm::new(&kappa, out)
}

/// Residue `K^MW_n(k(t)) → K^MW_{n-1}(κ_v)` for `n ∈ {1, 2}`.
pub fn residue(x: &MwElement, v: &Place) -> Result<MwElement> {
    let f = x.field();
    check_canonical_place(f, v)?;
    let kappa = f.residue_field(v)?;
    let ideal = WittClass::from_form(&second_residue(x.ideal.rep(), v)?)?;
    let milnor = match &x.milnor {
        MilnorPart::Unit(u) => MilnorPart::Int(f.valuation(u, v)?),
        MilnorPart::Symbols(terms) => {
            let mut acc = kappa.one();
            for (n, a, b) in terms {
                let va = f.valuation(a, v)?;
                let vb = f.valuation(b, v)?;
                let mut c = f.mul(&f.pow(a, -vb)?, &f.pow(b, va)?);
                if (va * vb).rem_euclid(2) == 1 {
                    c = f.neg(&c);
                }
                let (_, cbar) = f.leading_unit(&c, v, &kappa)?;
                acc = kappa.mul(&acc, &kappa.pow(&cbar, *n)?);
            }
            MilnorPart::Unit(acc)
        }
        _ => return Err(Error::UnsupportedDegree(x.degree)),
    };
    MwElement::new(x.degree - 1, milnor, ideal)
}

/// Scharlau transfer of a Witt class along the trace of a simple extension.
pub fn scharlau_transfer_witt(w: &WittClass) -> Result<WittClass> {
    WittClass::from_form(&transfer::transfer_form(w.rep())?)
}

/// Scharlau transfer on `GW`; the rank multiplies by the degree.
pub fn scharlau_transfer_gw(x: &GwElement) -> Result<GwElement> {
    let l = x.field();
    let d = l.minpoly().map(|m| m.deg() as i64).ok_or_else(|| {
        Error::UnsupportedField(format!("{l} is not a simple extension"))
    })?;
    GwElement::make(x.rank() * d, scharlau_transfer_witt(x.witt())?)
}

/// Transfer from a residue field of `k(t)` down to `k`.
pub fn transfer_to_base(x: &GwElement, k: &Field) -> Result<GwElement> {
    let mut cur = x.clone();
    while cur.field() != k {
        cur = scharlau_transfer_gw(&cur)?;
    }
    Ok(cur)
}

/// Finite places where an element can have a nonzero residue, sorted by
/// degree, followed by infinity.
pub fn support_places(x: &MwElement) -> Result<Vec<Place>> {
    let f = x.field();
    let mut entries: Vec<Elem> = x.ideal.rep().entries().to_vec();
    match &x.milnor {
        MilnorPart::Unit(u) => entries.push(u.clone()),
        MilnorPart::Symbols(t) => {
            for (_, a, b) in t {
                entries.push(a.clone());
                entries.push(b.clone());
            }
        }
        _ => {}
    }
    let q = DiagonalForm::new(f, entries)?;
    let mut places = quadforms::bad_places(&q).map_err(|e| match e {
        Error::FactorizationOverflow(n) => Error::FactorizationOverflow(n),
        e => e,
    })?;
    places.dedup();
    Ok(places)
}

/// `Σ_v tr_{κ_v/k} ∂_v(x)` over all places of `k(t)`, including infinity.
pub fn reciprocity_sum(x: &MwElement) -> Result<GwElement> {
    if x.degree != 1 {
        return Err(Error::UnsupportedDegree(x.degree));
    }
    let f = x.field();
    let k = match f.kind() {
        FieldKind::Function { base, .. } => base.clone(),
        _ => return Err(Error::UnsupportedField(format!("{f} is not a rational function field"))),
    };
    let mut sum = GwElement::zero(&k);
    for v in support_places(x)? {
        let r = residue(x, &v)?.to_gw()?;
        sum = sum.add(&transfer_to_base(&r, &k)?)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn qt() -> (Field, Field) {
        let k = Field::rationals();
        let f = Field::function_field(&k, "t").unwrap();
        (k, f)
    }

    fn gw_is_zero(x: &GwElement) -> bool {
        x.rank() == 0 && x.witt().is_zero().unwrap() == Decision::Yes
    }

    #[test]
    fn unit_symbols() {
        let q = Field::rationals();
        let one = mw_unit_symbol(&q, &q.one()).unwrap();
        assert_eq!(mw_equal(&one, &MwElement::zero(&q, 1).unwrap()).unwrap(), Decision::Yes);
        let four = mw_unit_symbol(&q, &q.from_i64(4)).unwrap();
        assert_eq!(four.ideal().is_zero().unwrap(), Decision::Yes);
        assert_eq!(four.milnor(), &MilnorPart::Unit(q.from_i64(4)));
        let f7 = Field::prime(7).unwrap();
        let two = mw_unit_symbol(&f7, &f7.from_i64(2)).unwrap();
        // 2 = 3^2 mod 7, so <1, -2> is hyperbolic
        assert_eq!(two.ideal().is_zero().unwrap(), Decision::Yes);
        let three = mw_unit_symbol(&f7, &f7.from_i64(3)).unwrap();
        assert_eq!(three.ideal().is_zero().unwrap(), Decision::No);
        assert_eq!(mw_unit_symbol(&q, &q.zero()).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn eta_and_products() {
        let q = Field::rationals();
        let u = mw_unit_symbol(&q, &q.from_i64(3)).unwrap();
        let e = eta_mul(&u).unwrap();
        assert_eq!(e.degree(), 0);
        let g = e.to_gw().unwrap();
        assert_eq!(g.rank(), 0);
        let h = MwElement::from_gw(&GwElement::hyperbolic(&q));
        assert_eq!(eta_mul(&h).unwrap().ideal().is_zero().unwrap(), Decision::Yes);
        assert_eq!(eta_mul(&MwElement::from_witt(&WittClass::one(&q))).unwrap_err(), Error::DegreeUnderflow);
        let one = mw_unit_symbol(&q, &q.one()).unwrap();
        let p = mw_mul(&u, &one).unwrap();
        assert_eq!(mw_equal(&p, &MwElement::zero(&q, 2).unwrap()).unwrap(), Decision::Yes);
        let two = MwElement::new(2, MilnorPart::Symbols(vec![]), WittClass::zero(&q)).unwrap();
        assert_eq!(mw_mul(&two, &u).unwrap_err(), Error::DegreeOverflow(3));
    }

    #[test]
    fn square_relation_over_f5() {
        let f5 = Field::prime(5).unwrap();
        for a in 1..5 {
            let ua = mw_unit_symbol(&f5, &f5.from_i64(a)).unwrap();
            let um = mw_unit_symbol(&f5, &f5.from_i64(-1)).unwrap();
            let lhs = mw_mul(&ua, &ua).unwrap();
            let rhs = mw_mul(&ua, &um).unwrap();
            assert_eq!(mw_equal(&lhs, &rhs).unwrap(), Decision::Yes);
        }
    }

    #[test]
    fn scaled_symbols_over_q() {
        let q = Field::rationals();
        for c in [2, 3] {
            for u in [2, 3] {
                let g = MwElement::from_gw(&GwElement::unit(&q, &q.from_i64(c)).unwrap());
                let x = mw_mul(&g, &mw_unit_symbol(&q, &q.from_i64(u)).unwrap()).unwrap();
                assert_eq!(x.milnor(), &MilnorPart::Unit(q.from_i64(u)));
                let expect = DiagonalForm::from_i64s(&q, &[c, -c * u]).unwrap();
                assert_eq!(
                    wittgw::witt_equal(x.ideal(), &WittClass::from_form(&expect).unwrap()).unwrap(),
                    Decision::Yes
                );
                assert_eq!(x.is_compatible().unwrap(), Decision::Yes);
            }
        }
    }

    #[test]
    fn degree_two_compatibility_over_q() {
        let q = Field::rationals();
        let a = mw_unit_symbol(&q, &q.from_i64(-1)).unwrap();
        let x = mw_mul(&a, &a).unwrap();
        assert_eq!(x.is_compatible().unwrap(), Decision::Yes);
        // {-1,-1} with the zero ideal part violates the Clifford invariant
        let bad = MwElement::new(
            2,
            MilnorPart::Symbols(vec![(1, q.from_i64(-1), q.from_i64(-1))]),
            WittClass::zero(&q),
        );
        assert!(bad.is_err());
        // {2, 3} and {3, 2} are negatives of each other in K_2
        let s = MilnorPart::Symbols(vec![(1, q.from_i64(2), q.from_i64(3)), (1, q.from_i64(3), q.from_i64(2))]);
        let ideal = mw_mul(
            &mw_unit_symbol(&q, &q.from_i64(2)).unwrap(),
            &mw_unit_symbol(&q, &q.from_i64(3)).unwrap(),
        )
        .unwrap()
        .ideal()
        .clone();
        let twice = ideal.add(&ideal).unwrap();
        let y = MwElement::new(2, s, twice).unwrap();
        assert_eq!(mw_equal(&y, &MwElement::zero(&q, 2).unwrap()).unwrap(), Decision::Yes);
    }

    #[test]
    fn residues_and_reciprocity() {
        let (k, f) = qt();
        let t = mw_unit_symbol(&f, &f.parse("t").unwrap()).unwrap();
        let r0 = residue(&t, &Place::Finite(Poly::x(&k))).unwrap().to_gw().unwrap();
        assert_eq!(wittgw::gw_equal(&r0, &GwElement::one(&k)).unwrap(), Decision::Yes);
        assert!(gw_is_zero(&reciprocity_sum(&t).unwrap()));
        let c = mw_unit_symbol(&f, &f.from_i64(5)).unwrap();
        let r = residue(&c, &Place::Finite(Poly::x(&k))).unwrap();
        assert_eq!(mw_equal(&r, &MwElement::zero(&k, 0).unwrap()).unwrap(), Decision::Yes);
        let g = Poly::from_i64s(&k, &[1, 0, 1]);
        let x = mw_unit_symbol(&f, &f.from_poly(&g)).unwrap();
        let r = residue(&x, &Place::Finite(g.clone())).unwrap().to_gw().unwrap();
        assert_eq!(wittgw::gw_equal(&r, &GwElement::one(r.field())).unwrap(), Decision::Yes);
        for s in ["t^2-2", "(t^3+t+1)/(t^2+3)", "7*t*(t-1)^3", "-(t^4+2)"] {
            let x = mw_unit_symbol(&f, &f.parse(s).unwrap()).unwrap();
            assert!(gw_is_zero(&reciprocity_sum(&x).unwrap()), "{s}");
        }
        let bad = Place::Finite(Poly::from_i64s(&k, &[-1, 0, 1]));
        assert_eq!(residue(&t, &bad).unwrap_err(), Error::NonCanonicalUniformizer);
    }

    #[test]
    fn reciprocity_over_finite_function_fields() {
        for p in [3, 5, 7] {
            let k = Field::prime(p).unwrap();
            let f = Field::function_field(&k, "t").unwrap();
            for s in ["t", "t^2+1", "2*t^3+t+1", "t^2*(t+2)/(t^3+2)"] {
                let x = mw_unit_symbol(&f, &f.parse(s).unwrap()).unwrap();
                let c = MwElement::from_gw(&GwElement::unit(&f, &f.parse("t+1").unwrap()).unwrap());
                let y = mw_mul(&c, &x).unwrap();
                assert!(gw_is_zero(&reciprocity_sum(&y).unwrap()), "{p} {s}");
            }
        }
    }

    #[test]
    fn degree_two_residue() {
        let (k, f) = qt();
        let a = mw_unit_symbol(&f, &f.parse("t").unwrap()).unwrap();
        let b = mw_unit_symbol(&f, &f.from_i64(3)).unwrap();
        let x = mw_mul(&a, &b).unwrap();
        let r = residue(&x, &Place::Finite(Poly::x(&k))).unwrap();
        let expect = mw_unit_symbol(&k, &k.from_i64(3)).unwrap();
        assert_eq!(mw_equal(&r, &expect).unwrap(), Decision::Yes);
    }

    #[test]
    fn transfers() {
        let q = Field::rationals();
        let l = Field::extension(&q, Poly::from_i64s(&q, &[-2, 0, 1]), "s").unwrap();
        let one = GwElement::one(&l);
        let t = scharlau_transfer_gw(&one).unwrap();
        assert_eq!(t.rank(), 2);
        let expect = WittClass::from_form(&DiagonalForm::from_i64s(&q, &[2, 1]).unwrap()).unwrap();
        assert_eq!(wittgw::witt_equal(t.witt(), &expect).unwrap(), Decision::Yes);
        let c = Field::extension(&q, Poly::from_i64s(&q, &[-2, 0, 0, 1]), "a").unwrap();
        let t = scharlau_transfer_gw(&GwElement::one(&c)).unwrap();
        assert_eq!(t.rank(), 3);
        let expect = WittClass::from_form(&DiagonalForm::from_i64s(&q, &[3]).unwrap()).unwrap();
        assert_eq!(wittgw::witt_equal(t.witt(), &expect).unwrap(), Decision::Yes);
    }
}
