//! Square tests and canonical square-class representatives.

use num_bigint::BigUint;

use crate::arith;
use crate::error::{Error, Result};
use crate::factor;
use crate::fields::{Elem, Field, FieldKind};
use crate::poly::{squarefree_decomposition, Poly};

pub fn is_square(k: &Field, x: &Elem) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if let Some(q) = k.finite_order() {
        let e: BigUint = (q - 1u32) >> 1;
        return Ok(k.is_one(&k.pow_big(x, &e)));
    }
    match (k.kind(), x) {
        (FieldKind::Rationals, Elem::Rat(r)) => Ok(arith::is_rational_square(r)),
        (FieldKind::Extension { base, .. }, _) => {
            // a square has a square norm
            if !is_square(base, &k.norm(x))? {
                return Ok(false);
            }
            let f = Poly::from_coeffs(vec![k.neg(x), k.zero(), k.one()]);
            match factor::factor(&f, k) {
                Ok(fs) => Ok(fs.len() > 1 || fs[0].1 > 1),
                Err(Error::FactorizationOverflow(_)) | Err(Error::UndecidableAtBound(_)) => {
                    Err(Error::UndecidableAtBound(factor::MAX_NORM_DEGREE as u64))
                }
                Err(e) => Err(e),
            }
        }
        (FieldKind::Function { base, .. }, _) => {
            let (n, d) = k.num_den(x);
            if !is_square(base, n.lc().unwrap())? {
                return Ok(false);
            }
            for p in [n, d] {
                let m = p.monic(base);
                if squarefree_decomposition(&m, base)?.iter().any(|(_, e)| e % 2 == 1) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(Error::DescriptorMismatch),
    }
}

/// Least nonsquare of a finite field in index order.
pub fn least_nonsquare(k: &Field) -> Elem {
    let mut i = 1;
    loop {
        let x = k.element_from_index(i);
        if !is_square(k, &x).expect("finite field") {
            return x;
        }
        i += 1;
    }
}

/// Canonical representative of `x` modulo squares: the squarefree integer over
/// ℚ; `1` or the least nonsquare over a finite field; over `k(t)` with such a
/// `k`, the representative of the leading coefficient times the product of the
/// odd-multiplicity squarefree parts of numerator and denominator. `None` for
/// number fields.
pub fn square_class_rep(k: &Field, x: &Elem) -> Result<Option<Elem>> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if k.is_finite() {
        return Ok(Some(if is_square(k, x)? { k.one() } else { least_nonsquare(k) }));
    }
    match (k.kind(), x) {
        (FieldKind::Rationals, Elem::Rat(r)) => Ok(Some(k.from_bigint(&arith::squarefree_class(r)))),
        (FieldKind::Function { base, .. }, _) => {
            let (n, d) = k.num_den(x);
            let Some(c) = square_class_rep(base, n.lc().unwrap())? else {
                return Ok(None);
            };
            let mut p = Poly::constant(c);
            for f in [n, d] {
                for (g, e) in squarefree_decomposition(&f.monic(base), base)? {
                    if e % 2 == 1 {
                        p = p.mul(&g, base);
                    }
                }
            }
            Ok(Some(k.frac(p, Poly::one(base))))
        }
        _ => Ok(None),
    }
}

/// Whether `a` and `b` have the same square class, i.e. `ab` is a square.
pub fn same_class(k: &Field, a: &Elem, b: &Elem) -> Result<bool> {
    is_square(k, &k.mul(a, b))
}

/// Square-class representatives of a finite field: `[1, least nonsquare]`.
pub fn finite_classes(k: &Field) -> Vec<Elem> {
    vec![k.one(), least_nonsquare(k)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_mod_seven() {
        let k = Field::prime(7).unwrap();
        let oracle: Vec<u64> = (1..7u64).map(|x| x * x % 7).collect();
        for a in 1..7 {
            assert_eq!(is_square(&k, &k.from_i64(a)).unwrap(), oracle.contains(&(a as u64)));
        }
        assert!(is_square(&k, &k.from_i64(2)).unwrap());
        assert_eq!(least_nonsquare(&k), k.from_i64(3));
    }

    #[test]
    fn rational_squares() {
        let k = Field::rationals();
        assert!(is_square(&k, &k.from_i64(4)).unwrap());
        assert!(!is_square(&k, &k.from_i64(-4)).unwrap());
        assert!(is_square(&k, &k.parse("9/25").unwrap()).unwrap());
        assert_eq!(is_square(&k, &k.zero()).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn function_field_squares() {
        let k = Field::rationals();
        let f = Field::function_field(&k, "t").unwrap();
        assert!(!is_square(&f, &f.parse("t").unwrap()).unwrap());
        assert!(is_square(&f, &f.parse("4*(t+1)^2/(t-3)^4").unwrap()).unwrap());
        assert!(!is_square(&f, &f.parse("2*(t+1)^2").unwrap()).unwrap());
        let rep = square_class_rep(&f, &f.parse("12*t^3*(t+1)^2").unwrap()).unwrap().unwrap();
        assert_eq!(rep, f.parse("3*t").unwrap());
    }

    #[test]
    fn number_field_squares() {
        let k = Field::rationals();
        let l = Field::extension(&k, Poly::from_i64s(&k, &[1, 0, 1]), "i").unwrap();
        // 2i = (1 + i)^2
        assert!(is_square(&l, &l.parse("2*i").unwrap()).unwrap());
        assert!(is_square(&l, &l.from_i64(-1)).unwrap());
        assert!(!is_square(&l, &l.from_i64(3)).unwrap());
        let c = Field::extension(&k, Poly::from_i64s(&k, &[-2, 0, 0, 1]), "a").unwrap();
        assert!(is_square(&c, &c.parse("a^4").unwrap()).unwrap());
        assert!(!is_square(&c, &c.parse("a").unwrap()).unwrap());
        assert!(!is_square(&c, &c.from_i64(2)).unwrap());
    }
}
