//! Diagonal quadratic forms, their classical invariants, isotropy and Witt
//! decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::factor;
use crate::fields::{Elem, Field, FieldKind, Place};
use crate::poly::Poly;

/// Default bound for searches over fields without a decision procedure.
pub const DEFAULT_SEARCH_BOUND: u64 = 1;

/// A nondegenerate diagonal form `<a_1, ..., a_n>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    field: Field,
    entries: Vec<Elem>,
}

/// A place of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RatPlace {
    Prime(BigUint),
    Real,
}

impl fmt::Display for RatPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatPlace::Prime(p) => write!(f, "{p}"),
            RatPlace::Real => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariants {
    pub rank: usize,
    /// Product of the entries, as a canonical square-class representative
    /// when the field has one.
    pub disc: Elem,
    /// `(-1)^(n(n-1)/2)` times the determinant, same normalization.
    pub signed_disc: Elem,
    /// Over ℚ: Hasse symbol at 2, every prime dividing an entry, and the real place.
    pub hasse: BTreeMap<RatPlace, i8>,
    /// Over ℚ: number of positive minus number of negative entries.
    pub signature: Option<i64>,
}

impl DiagonalForm {
    pub fn new(field: &Field, entries: Vec<Elem>) -> Result<DiagonalForm> {
        if entries.iter().any(Elem::is_zero) {
            return Err(Error::ZeroInput);
        }
        Ok(DiagonalForm { field: field.clone(), entries })
    }

    pub fn zero(field: &Field) -> DiagonalForm {
        DiagonalForm { field: field.clone(), entries: Vec::new() }
    }

    pub fn from_i64s(field: &Field, v: &[i64]) -> Result<DiagonalForm> {
        DiagonalForm::new(field, v.iter().map(|&a| field.from_i64(a)).collect())
    }

    pub fn parse(field: &Field, v: &[&str]) -> Result<DiagonalForm> {
        let e = v.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>()?;
        DiagonalForm::new(field, e)
    }

    /// `m` copies of the hyperbolic plane `<1, -1>`.
    pub fn hyperbolic(field: &Field, m: usize) -> DiagonalForm {
        let mut e = Vec::with_capacity(2 * m);
        for _ in 0..m {
            e.push(field.one());
            e.push(field.from_i64(-1));
        }
        DiagonalForm { field: field.clone(), entries: e }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn direct_sum(&self, o: &DiagonalForm) -> Result<DiagonalForm> {
        if self.field != o.field {
            return Err(Error::DescriptorMismatch);
        }
        let mut e = self.entries.clone();
        e.extend(o.entries.iter().cloned());
        Ok(DiagonalForm { field: self.field.clone(), entries: e })
    }

    pub fn tensor(&self, o: &DiagonalForm) -> Result<DiagonalForm> {
        if self.field != o.field {
            return Err(Error::DescriptorMismatch);
        }
        let k = &self.field;
        let e = self.entries.iter().flat_map(|a| o.entries.iter().map(move |b| k.mul(a, b))).collect();
        Ok(DiagonalForm { field: k.clone(), entries: e })
    }

    /// `<c> ⊗ self`
    pub fn scale(&self, c: &Elem) -> Result<DiagonalForm> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        let k = &self.field;
        Ok(DiagonalForm { field: k.clone(), entries: self.entries.iter().map(|a| k.mul(c, a)).collect() })
    }

    pub fn neg(&self) -> DiagonalForm {
        let k = &self.field;
        DiagonalForm { field: k.clone(), entries: self.entries.iter().map(|a| k.neg(a)).collect() }
    }

    pub fn determinant(&self) -> Elem {
        let k = &self.field;
        self.entries.iter().fold(k.one(), |acc, a| k.mul(&acc, a))
    }

    pub fn signed_determinant(&self) -> Elem {
        let n = self.rank();
        let d = self.determinant();
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            self.field.neg(&d)
        } else {
            d
        }
    }

    /// Entries with each replaced by its canonical square-class representative
    /// when the field has one.
    pub fn normalized(&self) -> Result<DiagonalForm> {
        let k = &self.field;
        let mut e = Vec::with_capacity(self.rank());
        for a in &self.entries {
            e.push(k.square_class_rep(a)?.unwrap_or_else(|| a.clone()));
        }
        Ok(DiagonalForm { field: k.clone(), entries: e })
    }

    pub fn invariants(&self) -> Result<FormInvariants> {
        let k = &self.field;
        let rep = |x: Elem| -> Result<Elem> { Ok(k.square_class_rep(&x)?.unwrap_or(x)) };
        let disc = rep(self.determinant())?;
        let signed_disc = rep(self.signed_determinant())?;
        let (hasse, signature) = if k.is_rationals() {
            let ints = rational_classes(self);
            let mut places = relevant_primes(&ints);
            places.insert(RatPlace::Real);
            let h = places.into_iter().map(|v| {
                let s = hasse_at(&ints, &v);
                (v, s)
            });
            (h.collect(), Some(ints.iter().map(|a| if a.is_negative() { -1 } else { 1 }).sum()))
        } else {
            (BTreeMap::new(), None)
        };
        Ok(FormInvariants { rank: self.rank(), disc, signed_disc, hasse, signature })
    }

    pub fn is_isotropic(&self) -> Result<bool> {
        self.is_isotropic_bounded(DEFAULT_SEARCH_BOUND)
    }

    /// Isotropy with an explicit search bound for fields decided by search.
    pub fn is_isotropic_bounded(&self, bound: u64) -> Result<bool> {
        let n = self.rank();
        if n <= 1 {
            return Ok(false);
        }
        let k = &self.field;
        if n == 2 {
            let d = k.neg(&k.mul(&self.entries[0], &self.entries[1]));
            return k.is_square(&d);
        }
        if k.is_finite() {
            return Ok(true);
        }
        match k.kind() {
            FieldKind::Rationals => Ok(isotropic_over_q(&rational_classes(self))),
            FieldKind::Function { base, .. } => isotropic_function_field(self, base, bound),
            _ => isotropic_by_search(self, bound),
        }
    }

    /// `(witt_index, kernel)` with `self ≅ witt_index·H ⊥ kernel`, kernel anisotropic.
    pub fn witt_decompose(&self) -> Result<(usize, DiagonalForm)> {
        let k = &self.field;
        let n = self.rank();
        let kernel = if k.is_rationals() {
            rational_kernel(self)?
        } else if k.is_finite() {
            finite_kernel(self)?
        } else {
            generic_kernel(self)?
        };
        Ok(((n - kernel.rank()) / 2, kernel))
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| self.field.format(a)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

// ---------- ℚ: local symbols ----------

/// Squarefree integer representatives of the entries of a form over ℚ.
pub fn rational_classes(q: &DiagonalForm) -> Vec<BigInt> {
    q.entries
        .iter()
        .map(|a| match a {
            Elem::Rat(r) => arith::squarefree_class(r),
            _ => unreachable!("form over QQ"),
        })
        .collect()
}

fn relevant_primes(ints: &[BigInt]) -> BTreeSet<RatPlace> {
    let mut s = BTreeSet::new();
    s.insert(RatPlace::Prime(BigUint::from(2u32)));
    for a in ints {
        for p in arith::prime_divisors(a) {
            s.insert(RatPlace::Prime(p));
        }
    }
    s
}

fn split_p(a: &BigInt, p: &BigUint) -> (u32, BigInt) {
    let pi = BigInt::from(p.clone());
    let mut u = a.clone();
    let mut v = 0;
    while (&u % &pi).is_zero() {
        u /= &pi;
        v += 1;
    }
    (v, u)
}

/// Hilbert symbol of nonzero integers at a place.
pub fn hilbert_int(a: &BigInt, b: &BigInt, v: &RatPlace) -> i8 {
    match v {
        RatPlace::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        RatPlace::Prime(p) => {
            let (alpha, u) = split_p(a, p);
            let (beta, w) = split_p(b, p);
            if p == &BigUint::from(2u32) {
                let eps = |x: &BigInt| -> u32 { if x.mod_floor(&BigInt::from(4)) == BigInt::from(3) { 1 } else { 0 } };
                let omega = |x: &BigInt| -> u32 {
                    let r = x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
                    if r == 3 || r == 5 { 1 } else { 0 }
                };
                let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
                if e % 2 == 0 { 1 } else { -1 }
            } else {
                let eps_p = ((p - 1u32) >> 1u32).is_odd() as u32;
                let mut s: i8 = if (alpha * beta * eps_p) % 2 == 1 { -1 } else { 1 };
                if beta % 2 == 1 {
                    s *= arith::legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= arith::legendre(&w, p);
                }
                s
            }
        }
    }
}

fn rat_to_int_class(x: &BigRational) -> BigInt {
    // numerator times denominator lies in the same square class
    x.numer() * x.denom()
}

/// Hilbert symbol `(a, b)_v` of nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: &RatPlace) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if let RatPlace::Prime(p) = v {
        if !arith::is_probable_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
    }
    Ok(hilbert_int(&rat_to_int_class(a), &rat_to_int_class(b), v))
}

/// Places where `(a, b)_v` can be nontrivial: 2, primes dividing `ab`, and ∞.
pub fn hilbert_support(a: &BigRational, b: &BigRational) -> Vec<RatPlace> {
    let mut s = relevant_primes(&[rat_to_int_class(a), rat_to_int_class(b)]);
    s.insert(RatPlace::Real);
    s.into_iter().collect()
}

/// Hasse invariant `prod_{i<j} (a_i, a_j)_v`.
pub fn hasse_at(ints: &[BigInt], v: &RatPlace) -> i8 {
    let mut h = 1;
    let mut prefix = BigInt::one();
    for a in ints {
        if !(prefix.is_one()) {
            h *= hilbert_int(&prefix, a, v);
        }
        prefix *= a;
    }
    h
}

/// Whether the nonzero integer `d` is a square in ℚ_v.
pub fn is_local_square(d: &BigInt, v: &RatPlace) -> bool {
    match v {
        RatPlace::Real => d.is_positive(),
        RatPlace::Prime(p) => {
            let (e, u) = split_p(d, p);
            if e % 2 == 1 {
                return false;
            }
            if p == &BigUint::from(2u32) {
                u.mod_floor(&BigInt::from(8)) == BigInt::one()
            } else {
                arith::legendre(&u, p) == 1
            }
        }
    }
}

/// Local isotropy of `<a_1..a_n>` over ℚ_v (Serre's criteria).
pub fn locally_isotropic(ints: &[BigInt], v: &RatPlace) -> bool {
    let n = ints.len();
    if let RatPlace::Real = v {
        return n >= 2 && ints.iter().any(|a| a.is_positive()) && ints.iter().any(|a| a.is_negative());
    }
    let d: BigInt = ints.iter().product();
    let eps = hasse_at(ints, v);
    let m1 = BigInt::from(-1);
    match n {
        0 | 1 => false,
        2 => is_local_square(&-d, v),
        3 => hilbert_int(&m1, &-d, v) == eps,
        4 => !is_local_square(&d, v) || eps == hilbert_int(&m1, &m1, v),
        _ => true,
    }
}

fn isotropic_over_q(ints: &[BigInt]) -> bool {
    let n = ints.len();
    if n <= 1 {
        return false;
    }
    if n == 2 {
        return arith::is_perfect_square(&-(&ints[0] * &ints[1]));
    }
    if !locally_isotropic(ints, &RatPlace::Real) {
        return false;
    }
    if n >= 5 {
        return true;
    }
    relevant_primes(ints).iter().all(|v| locally_isotropic(ints, v))
}

// ---------- ℚ: canonical anisotropic kernel ----------

/// Local data of a would-be form over ℚ: rank, determinant class, Hasse
/// symbols (at an explicit finite set of places, 1 elsewhere) and signature.
#[derive(Clone, Debug)]
struct RatData {
    rank: usize,
    det: BigInt,
    hasse: BTreeMap<RatPlace, i8>,
    signature: i64,
}

fn squarefree_product(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    a * b / (&g * &g)
}

impl RatData {
    fn h(&self, v: &RatPlace) -> i8 {
        *self.hasse.get(v).unwrap_or(&1)
    }

    fn realizable(&self) -> bool {
        let r = self.rank as i64;
        let s = self.signature;
        if s.abs() > r || (r - s) % 2 != 0 {
            return false;
        }
        let neg = (r - s) / 2;
        if self.det.is_negative() != (neg % 2 == 1) {
            return false;
        }
        let h_inf = if (neg * (neg - 1) / 2) % 2 == 1 { -1 } else { 1 };
        if self.h(&RatPlace::Real) != h_inf {
            return false;
        }
        if self.hasse.values().filter(|&&x| x == -1).count() % 2 != 0 {
            return false;
        }
        match self.rank {
            0 => self.det.is_one() && self.hasse.values().all(|&x| x == 1),
            1 => self.hasse.values().all(|&x| x == 1),
            2 => self
                .hasse
                .iter()
                .filter(|(_, &x)| x == -1)
                .all(|(v, _)| !is_local_square(&-&self.det, v)),
            _ => true,
        }
    }

    /// Data of the complement of `<a>` in a form with this data.
    fn remove(&self, a: &BigInt) -> RatData {
        let det = squarefree_product(&self.det, a);
        let mut places: BTreeSet<RatPlace> = self.hasse.keys().cloned().collect();
        places.extend(relevant_primes(&[a.clone(), det.clone()]));
        places.insert(RatPlace::Real);
        // h(<a> ⊥ k') = h(k') (a, det k')
        let hasse = places
            .into_iter()
            .map(|v| {
                let x = self.h(&v) * hilbert_int(a, &det, &v);
                (v, x)
            })
            .collect();
        RatData { rank: self.rank - 1, det, hasse, signature: self.signature - if a.is_negative() { -1 } else { 1 } }
    }
}

fn is_squarefree_small(a: u64) -> bool {
    let mut p = 2u64;
    while p * p <= a {
        if a.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

const SMALL_CANDIDATE_LIMIT: u64 = 500;
const KERNEL_CANDIDATE_LIMIT: u64 = 200_000;
/// For rank-two data with determinant `d`, an `a` with
/// `(a, -d)_v = h_v` at every place, so that `<a, ad>` realizes the data.
/// Symbols are multiplicative in `a`, so this is linear algebra over F_2 on
/// `-1`, the primes carrying data and at most one further prime `q` with
/// `-d` a square mod `q`.
fn rank_two_entry(data: &RatData) -> Option<BigInt> {
    let nd = -&data.det;
    let mut places: BTreeSet<RatPlace> = data.hasse.keys().cloned().collect();
    places.extend(relevant_primes(std::slice::from_ref(&nd)));
    places.insert(RatPlace::Real);
    let places: Vec<RatPlace> = places.into_iter().collect();
    let mut gens: Vec<BigInt> = vec![BigInt::from(-1)];
    gens.extend(places.iter().filter_map(|v| match v {
        RatPlace::Prime(p) => Some(BigInt::from(p.clone())),
        RatPlace::Real => None,
    }));
    let target: Vec<bool> = places.iter().map(|v| data.h(v) == -1).collect();
    let vector = |g: &BigInt| -> Vec<bool> { places.iter().map(|v| hilbert_int(g, &nd, v) == -1).collect() };
    let mut q = BigUint::from(2u32);
    for _ in 0..KERNEL_CANDIDATE_LIMIT {
        let mut cand = gens.clone();
        if q > BigUint::from(2u32) {
            cand.push(BigInt::from(q.clone()));
        }
        let vecs: Vec<Vec<bool>> = cand.iter().map(&vector).collect();
        if let Some(sel) = solve_f2(&vecs, &target) {
            let a = cand.iter().zip(sel).filter(|(_, s)| *s).fold(BigInt::one(), |acc, (g, _)| acc * g);
            return Some(a);
        }
        // next prime outside the places with -d a square mod q
        loop {
            q += 1u32;
            if !arith::is_probable_prime(&q) || places.contains(&RatPlace::Prime(q.clone())) {
                continue;
            }
            if arith::legendre(&nd, &q) == 1 {
                break;
            }
        }
    }
    None
}

/// A subset of `vecs` summing to `target` over F_2.
fn solve_f2(vecs: &[Vec<bool>], target: &[bool]) -> Option<Vec<bool>> {
    let n = vecs.len();
    let m = target.len();
    // rows: equations, columns: unknowns plus right-hand side
    let mut rows: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            let mut r: Vec<bool> = vecs.iter().map(|v| v[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| rows[i][c]) else { continue };
        rows.swap(r, p);
        for i in 0..m {
            if i != r && rows[i][c] {
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pr) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n]) {
        return None;
    }
    let mut sol = vec![false; n];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][n];
    }
    Some(sol)
}

/// Greedily builds the lexicographically first form (candidates ordered
/// 1, -1, 2, -2, 3, -3, 5, ...) realizing the given data.
fn build_rational_form(mut data: RatData) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    while data.rank > 0 {
        if data.rank == 1 {
            out.push(data.det.clone());
            break;
        }
        let mut chosen = None;
        'search: for m in 1..SMALL_CANDIDATE_LIMIT {
            if !is_squarefree_small(m) {
                continue;
            }
            for a in [BigInt::from(m), -BigInt::from(m)] {
                let rest = data.remove(&a);
                if rest.realizable() {
                    chosen = Some((a, rest));
                    break 'search;
                }
            }
        }
        if chosen.is_none() && data.rank == 2 {
            chosen = rank_two_entry(&data).map(|a| {
                let rest = data.remove(&a);
                (a, rest)
            }).filter(|(_, rest)| rest.realizable());
        }
        let (a, rest) = chosen.ok_or_else(|| {
            Error::SearchExhausted(format!("anisotropic kernel entry for rank {} det {} hasse {:?}", data.rank, data.det, data.hasse))
        })?;
        out.push(a);
        data = rest;
    }
    Ok(out)
}

fn rational_data(q: &DiagonalForm) -> RatData {
    let ints = rational_classes(q);
    let det = ints.iter().fold(BigInt::one(), |acc, a| squarefree_product(&acc, a));
    let mut places = relevant_primes(&ints);
    places.insert(RatPlace::Real);
    let hasse = places.into_iter().map(|v| {
        let h = hasse_at(&ints, &v);
        (v, h)
    });
    RatData {
        rank: ints.len(),
        det,
        hasse: hasse.collect(),
        signature: ints.iter().map(|a| if a.is_negative() { -1 } else { 1 }).sum(),
    }
}

/// Data of the kernel of rank `rank(q) - 2m` in the Witt class of `q`.
fn kernel_data(q: &RatData, m: usize) -> RatData {
    let sign = if m % 2 == 1 { BigInt::from(-1) } else { BigInt::one() };
    let det = &q.det * &sign;
    let m1 = BigInt::from(-1);
    let hyp_exp = (m * m.saturating_sub(1) / 2) % 2 == 1;
    let mut places: BTreeSet<RatPlace> = q.hasse.keys().cloned().collect();
    places.insert(RatPlace::Real);
    let hasse = places
        .into_iter()
        .map(|v| {
            let mut h = q.h(&v);
            if hyp_exp {
                h *= hilbert_int(&m1, &m1, &v);
            }
            h *= hilbert_int(&det, &sign, &v);
            (v, h)
        })
        .collect();
    RatData { rank: q.rank - 2 * m, det, hasse, signature: q.signature }
}

fn rational_kernel(q: &DiagonalForm) -> Result<DiagonalForm> {
    let data = rational_data(q);
    let n = data.rank;
    for m in (0..=n / 2).rev() {
        let kd = kernel_data(&data, m);
        if kd.realizable() {
            let ints = build_rational_form(kd)?;
            let k = q.field();
            return DiagonalForm::new(k, ints.iter().map(|a| k.from_bigint(a)).collect());
        }
    }
    unreachable!("the form itself realizes its data")
}

/// Whether two forms over ℚ are Witt equivalent, by the invariants of `q1 ⊥ -q2`.
pub fn rational_witt_equal(q1: &DiagonalForm, q2: &DiagonalForm) -> Result<bool> {
    let d = q1.direct_sum(&q2.neg())?;
    let data = rational_data(&d);
    if data.rank % 2 == 1 {
        return Ok(false);
    }
    Ok(kernel_data(&data, data.rank / 2).realizable())
}

// ---------- finite fields ----------

fn finite_kernel(q: &DiagonalForm) -> Result<DiagonalForm> {
    let k = q.field();
    let n = q.rank();
    let sd = q.signed_determinant();
    let rep = |x: &Elem| -> Result<Elem> { Ok(k.square_class_rep(x)?.expect("finite field")) };
    if n % 2 == 1 {
        DiagonalForm::new(k, vec![rep(&sd)?])
    } else if k.is_square(&sd)? {
        Ok(DiagonalForm::zero(k))
    } else {
        DiagonalForm::new(k, vec![k.one(), rep(&k.neg(&sd))?])
    }
}

// ---------- other fields ----------

/// Removes hyperbolic pairs `<a, b>` (with `-ab` a square) greedily. The flag
/// is false when some square test was undecidable, so a pair may remain.
pub fn cancel_pairs(q: &DiagonalForm) -> Result<(DiagonalForm, bool)> {
    let k = q.field();
    let mut e = q.normalized()?.entries;
    let mut decided = true;
    let mut i = 0;
    while i < e.len() {
        let mut cancelled = false;
        for j in i + 1..e.len() {
            let x = k.neg(&k.mul(&e[i], &e[j]));
            match k.is_square(&x) {
                Ok(true) => {
                    e.remove(j);
                    e.remove(i);
                    cancelled = true;
                    break;
                }
                Ok(false) => {}
                Err(Error::UndecidableAtBound(_)) => decided = false,
                Err(err) => return Err(err),
            }
        }
        if !cancelled {
            i += 1;
        }
    }
    Ok((DiagonalForm::new(k, e)?, decided))
}

/// Cancels hyperbolic pairs, then certifies the remainder anisotropic.
fn generic_kernel(q: &DiagonalForm) -> Result<DiagonalForm> {
    let (rest, decided) = cancel_pairs(q)?;
    if !decided {
        return Err(Error::UndecidableAtBound(DEFAULT_SEARCH_BOUND));
    }
    if rest.rank() >= 3 && rest.is_isotropic()? {
        return Err(Error::UndecidableAtBound(DEFAULT_SEARCH_BOUND));
    }
    Ok(rest)
}

fn small_elements(k: &Field, bound: u64) -> Vec<Elem> {
    let b = bound as i64 + 1;
    match k.kind() {
        FieldKind::Function { base, .. } => {
            let consts: Vec<Elem> = if let Some(q) = base.finite_order().and_then(|q| q.to_u64()) {
                (0..q.min(5)).map(|i| base.element_from_index(i)).collect()
            } else {
                (-b..=b).map(|i| base.from_i64(i)).collect()
            };
            let mut out = Vec::new();
            for c1 in &consts {
                for c0 in &consts {
                    out.push(k.from_poly(&Poly::from_coeffs(vec![c0.clone(), c1.clone()])));
                }
            }
            out
        }
        FieldKind::Extension { minpoly, .. } => {
            let d = minpoly.deg();
            let base = k.base().unwrap();
            let vals: Vec<i64> = (-b..=b).collect();
            let mut out = vec![Vec::new()];
            for _ in 0..d {
                let mut next = Vec::new();
                for v in &out {
                    for &x in &vals {
                        let mut w: Vec<Elem> = v.clone();
                        w.push(base.from_i64(x));
                        next.push(w);
                    }
                }
                out = next;
            }
            out.into_iter().map(|c| k.from_coords(c)).collect()
        }
        _ => (-b..=b).map(|i| k.from_i64(i)).collect(),
    }
}

/// Looks for a nonzero vector with entries from a small box on which the form
/// vanishes, in at most the first four variables.
fn search_isotropic_vector(q: &DiagonalForm, bound: u64) -> Option<Vec<Elem>> {
    let k = q.field();
    let n = q.rank().min(4);
    let vals = small_elements(k, bound);
    let squares: Vec<Elem> = vals.iter().map(|x| k.mul(x, x)).collect();
    let total = vals.len().pow(n as u32);
    if total > 2_000_000 {
        return None;
    }
    let mut idx = vec![0usize; n];
    loop {
        if idx.iter().any(|&i| !vals[i].is_zero()) {
            let mut s = k.zero();
            for (j, &i) in idx.iter().enumerate() {
                s = k.add(&s, &k.mul(&q.entries[j], &squares[i]));
            }
            if s.is_zero() {
                let mut v: Vec<Elem> = idx.iter().map(|&i| vals[i].clone()).collect();
                v.resize(q.rank(), k.zero());
                return Some(v);
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                return None;
            }
            idx[j] += 1;
            if idx[j] < vals.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn isotropic_by_search(q: &DiagonalForm, bound: u64) -> Result<bool> {
    if search_isotropic_vector(q, bound).is_some() {
        Ok(true)
    } else {
        Err(Error::UndecidableAtBound(bound))
    }
}

/// Splits a form over `k(t)` at a place into the residue forms of the
/// entries of even and of odd valuation.
pub fn residue_forms(q: &DiagonalForm, v: &Place) -> Result<(Field, DiagonalForm, DiagonalForm)> {
    let f = q.field();
    let kappa = f.residue_field(v)?;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for a in &q.entries {
        let (e, u) = f.leading_unit(a, v, &kappa)?;
        if e.rem_euclid(2) == 0 {
            even.push(u);
        } else {
            odd.push(u);
        }
    }
    Ok((kappa.clone(), DiagonalForm::new(&kappa, even)?, DiagonalForm::new(&kappa, odd)?))
}

/// Places of `k(t)` at which some entry of the form has a zero or pole,
/// plus the place at infinity.
pub fn bad_places(q: &DiagonalForm) -> Result<Vec<Place>> {
    let f = q.field();
    let k = f.base().ok_or_else(|| Error::UnsupportedField("not a function field".into()))?;
    let mut set = BTreeSet::new();
    for a in &q.entries {
        let (n, d) = f.num_den(a);
        for p in [n, d] {
            if p.deg() > 0 {
                for (g, _) in factor::factor(p, k)? {
                    set.insert(Place::Finite(g));
                }
            }
        }
    }
    let mut out: Vec<Place> = set.into_iter().collect();
    out.sort_by(|a, b| (a.degree(), a).cmp(&(b.degree(), b)));
    out.push(Place::Infinite);
    Ok(out)
}

fn isotropic_function_field(q: &DiagonalForm, k: &Field, bound: u64) -> Result<bool> {
    let f = q.field();
    // constant forms are isotropic over k(t) iff over k
    if q.entries.iter().all(|a| {
        let (n, d) = f.num_den(a);
        n.deg() == 0 && d.deg() == 0
    }) {
        let c: Vec<Elem> = q.entries.iter().map(|a| f.num_den(a).0.lc().unwrap().clone()).collect();
        return DiagonalForm::new(k, c)?.is_isotropic_bounded(bound);
    }
    let n = q.rank();
    if k.is_finite() && n >= 5 {
        return Ok(true);
    }
    // Springer: anisotropic at one completion implies anisotropic
    let mut undecided = false;
    for v in bad_places(q)? {
        let (_, q1, q2) = residue_forms(q, &v)?;
        let iso = |r: &DiagonalForm| -> Result<Option<bool>> {
            match r.is_isotropic_bounded(bound) {
                Ok(b) => Ok(Some(b)),
                Err(Error::UndecidableAtBound(_)) => Ok(None),
                Err(e) => Err(e),
            }
        };
        match (iso(&q1)?, iso(&q2)?) {
            (Some(false), Some(false)) => return Ok(false),
            (Some(true), _) | (_, Some(true)) => {}
            _ => undecided = true,
        }
    }
    if k.is_finite() && !undecided {
        // a global field: local isotropy everywhere suffices
        return Ok(true);
    }
    isotropic_by_search(q, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn form(v: &[i64]) -> DiagonalForm {
        DiagonalForm::from_i64s(&q(), v).unwrap()
    }

    fn p(n: u32) -> RatPlace {
        RatPlace::Prime(BigUint::from(n))
    }

    fn hs(a: i64, b: i64, v: &RatPlace) -> i8 {
        hilbert_int(&BigInt::from(a), &BigInt::from(b), v)
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hs(-1, -1, &RatPlace::Real), -1);
        assert_eq!(hs(-1, -1, &p(2)), -1);
        assert_eq!(hs(2, 7, &p(7)), 1);
    }

    /// Solubility of z^2 = a x^2 + b y^2 modulo p^k with a primitive vector.
    fn brute_local(a: i64, b: i64, p: i64, k: u32) -> bool {
        let m = p.pow(k);
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % p == 0 && y % p == 0 && z % p == 0 {
                        continue;
                    }
                    if (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn hilbert_matches_congruence_oracle() {
        // primitive solubility modulo a high enough power decides the local symbol
        let vals = [-6i64, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10];
        for &a in &vals {
            for &b in &vals {
                for &(pr, k) in &[(3i64, 3u32), (5, 2), (7, 2), (2, 5)] {
                    let expect = if brute_local(a, b, pr, k) { 1 } else { -1 };
                    assert_eq!(hs(a, b, &p(pr as u32)), expect, "({a},{b})_{pr}");
                }
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let inv = form(&[1, -1]).invariants().unwrap();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.signed_disc, q().one());
        assert_eq!(inv.signature, Some(0));
        assert!(inv.hasse.values().all(|&h| h == 1));
        assert_eq!(form(&[1, 1, 1]).invariants().unwrap().signature, Some(3));
        let f3 = Field::prime(3).unwrap();
        let inv = DiagonalForm::from_i64s(&f3, &[1, 1]).unwrap().invariants().unwrap();
        assert_eq!(inv.disc, f3.one());
        // 4<1> has trivial Hasse symbols while 2H has -1 at 2 and at infinity
        let h = form(&[1, 1, 1, 1]).invariants().unwrap().hasse;
        assert_eq!(h[&p(2)], 1);
        let h = form(&[1, -1, 1, -1]).invariants().unwrap().hasse;
        assert_eq!((h[&p(2)], h[&RatPlace::Real]), (-1, -1));
    }

    #[test]
    fn isotropy_examples() {
        assert!(!form(&[1, 1, 1]).is_isotropic().unwrap());
        let f5 = Field::prime(5).unwrap();
        assert!(DiagonalForm::from_i64s(&f5, &[1, 1]).unwrap().is_isotropic().unwrap());
        assert!(!form(&[1, 1, -3]).is_isotropic().unwrap());
        assert!(form(&[1, 1, -2]).is_isotropic().unwrap());
        assert!(form(&[1, 2, -3]).is_isotropic().unwrap());
        assert!(!form(&[1, 1, 1, 1]).is_isotropic().unwrap());
        assert!(form(&[1, 1, 1, -1]).is_isotropic().unwrap());
        assert!(form(&[1, 1, 1, 1, -1]).is_isotropic().unwrap());
    }

    #[test]
    fn witt_decompose_examples() {
        assert_eq!(form(&[1, -1]).witt_decompose().unwrap(), (1, form(&[])));
        assert_eq!(form(&[1, 1, -1]).witt_decompose().unwrap(), (1, form(&[1])));
        assert_eq!(form(&[1, 2, -3]).witt_decompose().unwrap(), (1, form(&[6])));
        let (i, k) = form(&[1, 1, 1, 1, -1, -7]).witt_decompose().unwrap();
        assert_eq!(i, (6 - k.rank()) / 2);
        assert!(!k.is_isotropic().unwrap());
        assert!(rational_witt_equal(&k, &form(&[1, 1, 1, 1, -1, -7])).unwrap());
    }

    #[test]
    fn finite_field_kernels() {
        let f3 = Field::prime(3).unwrap();
        let (i, k) = DiagonalForm::from_i64s(&f3, &[1, 1, 1]).unwrap().witt_decompose().unwrap();
        assert_eq!((i, k.rank()), (1, 1));
        let (i, k) = DiagonalForm::from_i64s(&f3, &[1, 1]).unwrap().witt_decompose().unwrap();
        assert_eq!((i, k.rank()), (0, 2));
    }

    #[test]
    fn function_field_isotropy() {
        let k = q();
        let f = Field::function_field(&k, "t").unwrap();
        let form = DiagonalForm::parse(&f, &["1", "1", "t"]).unwrap();
        // positive definite residue form at infinity certifies anisotropy:
        // at t: <1,1> anisotropic over QQ and <1> anisotropic
        assert!(!form.is_isotropic().unwrap());
        let iso = DiagonalForm::parse(&f, &["1", "-1", "t"]).unwrap();
        assert!(iso.is_isotropic().unwrap());
        let f5 = Field::prime(5).unwrap();
        let g = Field::function_field(&f5, "t").unwrap();
        let form = DiagonalForm::parse(&g, &["1", "2", "t", "2*t"]).unwrap();
        assert!(!form.is_isotropic().unwrap());
        let form = DiagonalForm::parse(&g, &["1", "t", "t+1"]).unwrap();
        assert!(form.is_isotropic().unwrap());
    }
}
