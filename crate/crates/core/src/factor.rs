//! Polynomial factorization over the supported coefficient fields.
//!
//! Finite fields use distinct-degree plus Cantor-Zassenhaus equal-degree
//! splitting with a fixed-seed generator. The rationals use modular
//! factorization, Hensel lifting and subset recombination. Algebraic number
//! fields reduce to their base through norms of shifted polynomials.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::poly::{squarefree_decomposition, Poly};

/// Largest squarefree degree factored over ℚ.
pub const MAX_RATIONAL_DEGREE: usize = 24;
/// Largest squarefree degree whose norm is factored over a number field.
pub const MAX_NORM_DEGREE: usize = 24;
const RECOMBINATION_BUDGET: usize = 200_000;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients.
pub fn factor(f: &Poly, k: &Field) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if k.is_function_field() {
        return Err(Error::UnsupportedField("factorization over function fields".into()));
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f, k)? {
        for h in factor_squarefree(&g, k)? {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0).cmp(&(b.0.deg(), &b.0)));
    Ok(out)
}

/// Monic irreducible factors of a monic squarefree polynomial.
pub fn factor_squarefree(f: &Poly, k: &Field) -> Result<Vec<Poly>> {
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    if f.deg() == 1 {
        return Ok(vec![f.monic(k)]);
    }
    let mut v = if k.is_finite() {
        factor_finite(f, k)
    } else if k.is_rationals() {
        factor_rational(f)?
    } else if k.is_extension() {
        factor_number_field(f, k)?
    } else {
        return Err(Error::UnsupportedField(format!("factorization over {k}")));
    };
    v.sort_by(|a, b| (a.deg(), a).cmp(&(b.deg(), b)));
    Ok(v)
}

pub fn is_irreducible(f: &Poly, k: &Field) -> Result<bool> {
    if f.deg() == 0 {
        return Ok(false);
    }
    let fs = factor(f, k)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// Distinct roots in `k`.
pub fn roots(f: &Poly, k: &Field) -> Result<Vec<Elem>> {
    Ok(factor(f, k)?
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| k.neg(&g.0[0]))
        .collect())
}

// ---------- finite fields ----------

fn random_elem(k: &Field, rng: &mut ChaCha8Rng) -> Elem {
    if let Some(p) = k.kind_prime() {
        return Elem::Mod(rng.gen_range(0..p));
    }
    let base = k.base().expect("finite extension");
    let n = k.minpoly().expect("extension").deg();
    k.from_coords((0..n).map(|_| random_elem(base, rng)).collect())
}

fn factor_finite(f: &Poly, k: &Field) -> Vec<Poly> {
    let q = k.finite_order().expect("finite");
    let f = f.monic(k);
    let x = Poly::x(k);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    while rest.deg() >= 2 * d {
        h = h.pow_mod(&q, &rest, k);
        let g = rest.gcd(&h.sub(&x, k), k);
        if g.deg() > 0 {
            equal_degree_split(&g, d, k, &q, &mut rng, &mut out);
            rest = rest.exact_div(&g, k).expect("gcd divides");
            h = h.rem(&rest, k);
        }
        d += 1;
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out
}

fn equal_degree_split(g: &Poly, d: usize, k: &Field, q: &BigUint, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    if g.deg() == d {
        out.push(g.clone());
        return;
    }
    let e = (q.pow(d as u32) - 1u32) >> 1;
    loop {
        let r = Poly::from_coeffs((0..g.deg()).map(|_| random_elem(k, rng)).collect());
        if r.deg() == 0 {
            continue;
        }
        let w = r.pow_mod(&e, g, k).sub(&Poly::one(k), k);
        let u = g.gcd(&w, k);
        if u.deg() > 0 && u.deg() < g.deg() {
            let v = g.exact_div(&u, k).expect("gcd divides");
            equal_degree_split(&u, d, k, q, rng, out);
            equal_degree_split(&v, d, k, q, rng, out);
            return;
        }
    }
}

// ---------- rationals ----------

type IntPoly = Vec<BigInt>;

fn trim(mut v: IntPoly) -> IntPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content(v: &IntPoly) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: IntPoly) -> IntPoly {
    let c = content(&v);
    let mut out: IntPoly = v.into_iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

/// Clears denominators of a rational polynomial into a primitive integer one.
fn to_int_poly(f: &Poly) -> IntPoly {
    let rs: Vec<&BigRational> = f.0.iter().map(|c| match c {
        Elem::Rat(r) => r,
        _ => panic!("not rational"),
    }).collect();
    let l = rs.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    primitive(rs.iter().map(|r| r.numer() * (&l / r.denom())).collect())
}

fn from_int_poly(v: &IntPoly, k: &Field) -> Poly {
    Poly::from_coeffs(v.iter().map(|c| k.from_bigint(c)).collect()).monic(k)
}

/// Exact quotient of integer polynomials, if it exists.
fn int_divexact(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    let mut r = f.clone();
    let dg = g.len() - 1;
    if r.len() < g.len() {
        return None;
    }
    let lg = g.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for i in (0..q.len()).rev() {
        let c = &r[i + dg];
        if c.is_zero() {
            continue;
        }
        let (qi, rem) = c.div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        for (j, gj) in g.iter().enumerate() {
            r[i + j] -= &qi * gj;
        }
        q[i] = qi;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

fn mod_field_poly(v: &IntPoly, kp: &Field) -> Poly {
    Poly::from_coeffs(v.iter().map(|c| kp.from_bigint(c)).collect())
}

fn lift_to_int(p: &Poly) -> IntPoly {
    p.0.iter()
        .map(|c| match c {
            Elem::Mod(v) => BigInt::from(*v),
            _ => unreachable!(),
        })
        .collect()
}

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn int_mod(v: &IntPoly, m: &BigInt) -> IntPoly {
    trim(v.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(v: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    trim(v.iter().map(|c| {
        let c = c.mod_floor(m);
        if c > half { c - m } else { c }
    }).collect())
}

/// Lifts `f ≡ g*h (mod p)`, `g` monic, to a factorization modulo `p^k`.
fn hensel_pair(f: &IntPoly, g: Poly, h: Poly, kp: &Field, p: &BigInt, k: u32) -> (IntPoly, IntPoly) {
    let (one, _, t) = g.xgcd(&h, kp);
    debug_assert_eq!(one.deg(), 0);
    let mut gi = lift_to_int(&g);
    let mut hi = lift_to_int(&h);
    let mut pj = p.clone();
    for _ in 1..k {
        let prod = int_mul(&gi, &hi);
        let mut diff: IntPoly = f.clone();
        diff.resize(diff.len().max(prod.len()), BigInt::zero());
        for (i, c) in prod.iter().enumerate() {
            diff[i] -= c;
        }
        let e: IntPoly = diff.iter().map(|c| {
            let (q, r) = c.div_rem(&pj);
            debug_assert!(r.is_zero());
            q
        }).collect();
        let ebar = mod_field_poly(&e, kp);
        let dg = t.mul(&ebar, kp).rem(&g, kp);
        let dh = ebar.sub(&dg.mul(&h, kp), kp).exact_div(&g, kp).expect("Hensel step");
        let add = |a: &mut IntPoly, d: &Poly| {
            let d = lift_to_int(d);
            a.resize(a.len().max(d.len()), BigInt::zero());
            for (i, c) in d.iter().enumerate() {
                a[i] += c * &pj;
            }
        };
        add(&mut gi, &dg);
        add(&mut hi, &dh);
        pj *= p;
    }
    (trim(gi), int_mod(&hi, &pj))
}

fn factor_rational(f: &Poly) -> Result<Vec<Poly>> {
    let q = Field::rationals();
    let n = f.deg();
    if n > MAX_RATIONAL_DEGREE {
        return Err(Error::FactorizationOverflow(n));
    }
    let f = &f.monic(&q);
    let fi = to_int_poly(f);
    let lc = fi.last().unwrap().clone();
    // choose a good prime with few modular factors
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p = crate::arith::next_prime(p);
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let kp = Field::prime(p)?;
        let fp = mod_field_poly(&fi, &kp);
        if fp.deg() != n || !crate::poly::is_squarefree(&fp, &kp) {
            continue;
        }
        tried += 1;
        let fac = factor_finite(&fp, &kp);
        if fac.len() == 1 {
            return Ok(vec![f.monic(&q)]);
        }
        if best.as_ref().is_none_or(|(_, b)| fac.len() < b.len()) {
            best = Some((p, fac));
        }
    }
    let (p, mut modf) = best.expect("some prime works");
    modf.sort();
    let kp = Field::prime(p)?;
    let pb = BigInt::from(p);
    // coefficient bound for factors of f, times the leading coefficient
    let norm2: BigInt = fi.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << (n + 1)) * (norm2.sqrt() + 1u32) * lc.abs() * 2u32;
    let mut kexp = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        kexp += 1;
    }
    // multifactor lifting by peeling off one factor at a time
    let mut lifted: Vec<IntPoly> = Vec::new();
    let mut cur = int_mod(&fi, &pk);
    for i in 0..modf.len() {
        if i + 1 == modf.len() {
            // monic remaining factor: cur * lc^{-1} mod p^k
            let lcinv = mod_inverse(&lc, &pk);
            lifted.push(int_mod(&cur.iter().map(|c| c * &lcinv).collect(), &pk));
            break;
        }
        let g = modf[i].clone();
        let mut h = Poly::one(&kp).scale(&kp.from_bigint(&lc), &kp);
        for m in &modf[i + 1..] {
            h = h.mul(m, &kp);
        }
        let (gl, hl) = hensel_pair(&cur, g, h, &kp, &pb, kexp);
        lifted.push(int_mod(&gl, &pk));
        cur = hl;
    }
    // recombination
    let mut out = Vec::new();
    let mut target = fi;
    let mut s = 1;
    let mut budget = RECOMBINATION_BUDGET;
    while 2 * s <= lifted.len() {
        let mut found = None;
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            if budget == 0 {
                return Err(Error::FactorizationOverflow(n));
            }
            budget -= 1;
            let tl = target.last().unwrap().clone();
            let mut cand = vec![tl];
            for &i in &idx {
                cand = int_mod(&int_mul(&cand, &lifted[i]), &pk);
            }
            let cand = primitive(symmetric(&cand, &pk));
            if cand.len() > 1 && (cand[0].is_zero() || (&target[0] % &cand[0]).is_zero()) {
                if let Some(qt) = int_divexact(&target, &cand) {
                    found = Some((idx.clone(), cand, qt));
                    break;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        match found {
            Some((idx, cand, qt)) => {
                out.push(from_int_poly(&cand, &q));
                target = primitive(qt);
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if target.len() > 1 {
        out.push(from_int_poly(&target, &q));
    }
    Ok(out)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    for i in (0..s).rev() {
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// ---------- algebraic number fields ----------

/// Norm of a polynomial over `l = base[θ]/(m)` down to `base`, by evaluation
/// at integer points and interpolation.
pub fn norm_poly(f: &Poly, l: &Field) -> Result<Poly> {
    let base = l.base().expect("extension");
    let d = f.deg() * l.minpoly().unwrap().deg();
    let mut xs = Vec::with_capacity(d + 1);
    let mut ys = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let x = base.from_i64(i as i64);
        let y = l.norm(&f.eval(&l.from_base(&x), l));
        xs.push(x);
        ys.push(y);
    }
    Ok(interpolate(base, &xs, &ys))
}

/// Newton interpolation through distinct points.
fn interpolate(k: &Field, xs: &[Elem], ys: &[Elem]) -> Poly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = k.sub(&coef[i], &coef[i - 1]);
            let den = k.sub(&xs[i], &xs[i - j]);
            coef[i] = k.div(&num, &den).expect("distinct nodes");
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p.mul(&Poly::linear(k, &xs[i]), k).add(&Poly::constant(coef[i].clone()), k);
    }
    p
}

fn factor_number_field(f: &Poly, l: &Field) -> Result<Vec<Poly>> {
    let base = l.base().expect("extension").clone();
    if f.deg() * l.minpoly().unwrap().deg() > MAX_NORM_DEGREE {
        return Err(Error::FactorizationOverflow(f.deg()));
    }
    let theta = l.generator().unwrap();
    let f = f.monic(l);
    for s in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5] {
        let shift = l.mul(&l.from_i64(s), &theta);
        // f_s(x) = f(x - sθ)
        let fs = f.compose(&Poly::linear(l, &shift), l);
        let n = norm_poly(&fs, l)?;
        if !crate::poly::is_squarefree(&n, &base) {
            continue;
        }
        let mut out = Vec::new();
        for g in factor_squarefree(&n.monic(&base), &base)? {
            let ge = g.map(|c| l.from_base(c));
            let h = fs.gcd(&ge, l);
            if h.deg() > 0 {
                // undo the shift: h(x + sθ)
                let back = Poly::from_coeffs(vec![shift.clone(), l.one()]);
                out.push(h.compose(&back, l).monic(l));
            }
        }
        return Ok(out);
    }
    Err(Error::UndecidableAtBound(5))
}

impl Field {
    pub(crate) fn kind_prime(&self) -> Option<u64> {
        match self.kind() {
            crate::fields::FieldKind::Prime(p) => Some(*p),
            _ => None,
        }
    }
}

/// Integer value of a small ℚ element (used in tests and searches).
pub fn small_int(x: &Elem) -> Option<i64> {
    match x {
        Elem::Rat(r) if r.is_integer() => r.numer().to_i64(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly {
        Poly::from_i64s(&Field::rationals(), c)
    }

    fn product(fs: &[(Poly, u32)], k: &Field) -> Poly {
        let mut p = Poly::one(k);
        for (g, m) in fs {
            p = p.mul(&g.pow(*m, k), k);
        }
        p
    }

    #[test]
    fn factors_over_rationals() {
        let k = Field::rationals();
        // t^4 - 1 = (t - 1)(t + 1)(t^2 + 1)
        let f = qp(&[-1, 0, 0, 0, 1]);
        let fs = factor(&f, &k).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs, &k), f);
        assert_eq!(fs[2].0, qp(&[1, 0, 1]));
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime into factors of degree <= 2
        let k = Field::rationals();
        assert!(is_irreducible(&qp(&[1, 0, -10, 0, 1]), &k).unwrap());
        assert!(!is_irreducible(&qp(&[4, 0, -12, 0, 9]), &k).unwrap());
    }

    #[test]
    fn factors_nonmonic_products() {
        let k = Field::rationals();
        let a = qp(&[3, -2, 5]);
        let b = qp(&[-7, 0, 0, 2]);
        let c = qp(&[1, 4]);
        let f = a.mul(&b, &k).mul(&c, &k).mul(&c, &k);
        let fs = factor(&f, &k).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs, &k), f.monic(&k));
    }

    #[test]
    fn factors_over_prime_field() {
        let k = Field::prime(5).unwrap();
        let f = Poly::from_i64s(&k, &[-1, 0, 0, 0, 1]); // x^4 - 1 splits over F_5
        let fs = factor(&f, &k).unwrap();
        assert_eq!(fs.len(), 4);
        let roots = roots(&f, &k).unwrap();
        assert_eq!(roots.len(), 4);
        let g = Poly::from_i64s(&k, &[2, 0, 1]); // x^2 + 2, -2 = 3 nonsquare mod 5
        assert!(is_irreducible(&g, &k).unwrap());
    }

    #[test]
    fn factors_in_characteristic_p_with_pth_powers() {
        let k = Field::prime(3).unwrap();
        let f = Poly::from_i64s(&k, &[1, 0, 0, 1]); // (x + 1)^3
        let fs = factor(&f, &k).unwrap();
        assert_eq!(fs, vec![(Poly::from_i64s(&k, &[1, 1]), 3)]);
    }

    #[test]
    fn factors_over_number_field() {
        let q = Field::rationals();
        let l = Field::extension(&q, qp(&[-2, 0, 1]), "a").unwrap();
        // x^2 - 2 = (x - a)(x + a)
        let f = Poly::from_i64s(&l, &[-2, 0, 1]);
        let fs = factor(&f, &l).unwrap();
        assert_eq!(fs.len(), 2);
        // x^2 - 3 stays irreducible
        assert!(is_irreducible(&Poly::from_i64s(&l, &[-3, 0, 1]), &l).unwrap());
    }

    #[test]
    fn finite_extension_factoring() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension(&f3, Poly::from_i64s(&f3, &[1, 0, 1]), "a").unwrap();
        // x^2 + 1 splits over F_9
        let f = Poly::from_i64s(&f9, &[1, 0, 1]);
        assert_eq!(factor(&f, &f9).unwrap().len(), 2);
    }
}
