//! Integer and rational helpers: primality, factorization, Legendre symbols and
//! square classes of rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 2_000;

/// Primes below `limit` by a plain sieve.
pub fn primes_below(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// The smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if is_prime_u64(c) {
            return c;
        }
        c += 1;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first 20 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71] {
        let a = BigUint::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        // Brent's cycle detection with batched gcds.
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y, mut ys) = (BigUint::from(2u32), BigUint::from(2u32), BigUint::from(2u32));
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        let m: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let d = match n.to_u64() {
        Some(small) => BigUint::from(rho_u64(small)),
        None => rho_big(&n),
    };
    let rest = &n / &d;
    split_into(d, out);
    split_into(rest, out);
}

/// Prime factorization of a positive integer, sorted by prime.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factor(0)");
    let mut n = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    for p in primes_below(TRIAL_LIMIT) {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            primes.push(pb.clone());
        }
    }
    split_into(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Primes dividing `n` (ignoring sign); empty for |n| <= 1.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    let m = n.magnitude();
    if m.is_zero() || m.is_one() {
        return Vec::new();
    }
    factor(m).into_iter().map(|(p, _)| p).collect()
}

/// The squarefree integer in the square class of a nonzero rational.
pub fn squarefree_class(r: &BigRational) -> BigInt {
    assert!(!r.is_zero(), "square class of zero");
    let prod = r.numer() * r.denom();
    let mut core = BigUint::one();
    for (p, e) in factor(prod.magnitude()) {
        if e % 2 == 1 {
            core *= p;
        }
    }
    BigInt::from_biguint(if prod.is_negative() { Sign::Minus } else { Sign::Plus }, core)
}

/// Whether a nonnegative integer is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Whether a rational is the square of a rational.
pub fn is_rational_square(r: &BigRational) -> bool {
    is_perfect_square(r.numer()) && is_perfect_square(r.denom())
}

/// Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}.
pub fn legendre(a: &BigInt, p: &BigUint) -> i8 {
    let pi = BigInt::from(p.clone());
    let a = a.mod_floor(&pi);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    let r = a.magnitude().modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigUint) -> u32 {
    let mut m = n.magnitude().clone();
    let mut v = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_and_medium_numbers() {
        let n = BigUint::from(2u32 * 2 * 3 * 101 * 101);
        let f = factor(&n);
        assert_eq!(
            f,
            vec![(BigUint::from(2u32), 2), (BigUint::from(3u32), 1), (BigUint::from(101u32), 2)]
        );
        // product of two 31-bit primes
        let p = 2_147_483_647u64;
        let q = 2_147_483_629u64;
        let f = factor(&(BigUint::from(p) * BigUint::from(q)));
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, BigUint::from(q));
    }

    #[test]
    fn factors_beyond_64_bits() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let r = BigUint::from(4_294_967_291u64);
        let n = &p * &q * &r;
        let f: Vec<BigUint> = factor(&n).into_iter().map(|(p, _)| p).collect();
        assert_eq!(f, vec![q, p, r]);
    }

    #[test]
    fn squarefree_classes() {
        assert_eq!(squarefree_class(&rat(8, 3)), BigInt::from(6));
        assert_eq!(squarefree_class(&rat(-4, 9)), BigInt::from(-1));
        assert_eq!(squarefree_class(&rat(1, 50)), BigInt::from(2));
    }

    #[test]
    fn legendre_matches_brute_force() {
        for p in [3u32, 5, 7, 11, 13] {
            let squares: Vec<u32> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expect = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre(&BigInt::from(a), &BigUint::from(p)), expect);
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(is_probable_prime(&BigUint::parse_bytes(b"170141183460469231731687303715884105727", 10).unwrap()));
        assert_eq!(next_prime(7), 11);
    }
}
