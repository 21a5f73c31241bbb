//! Elementary number theory on arbitrary-precision integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Legendre symbol `(q/p)` for an odd prime `p`.
pub fn legendre(q: &BigInt, p: u64) -> i8 {
    debug_assert!(p % 2 == 1 && is_prime(p));
    let p_big = BigInt::from(p);
    let r = q.mod_floor(&p_big);
    if r.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    if r.modpow(&e, &p_big).is_one() {
        1
    } else {
        -1
    }
}

/// Returns the integer square root when `n` is a perfect square.
pub fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    perfect_square_root(n).is_some()
}

/// Largest `z` with `p^z | n`. `n` must be nonzero.
pub fn ord_p(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "ord_p(0) is undefined");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut z = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return z;
        }
        n = q;
        z += 1;
    }
}

/// `p^e ‖ n`: `p^e` divides `n` exactly.
pub fn exactly_divides(n: &BigInt, p: u64, e: u32) -> bool {
    !n.is_zero() && ord_p(n, p) == e
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing order.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut n = n.abs();
    if n.is_zero() {
        return out;
    }
    if let Some(small) = n.to_u64() {
        return factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
    }
    let mut d = BigInt::from(2u32);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The set of prime divisors of `n` (empty for `n = ±1`).
pub fn prime_set(n: &BigInt) -> BTreeSet<BigInt> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Squarefree part of a nonzero integer, sign included.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    factorize(n)
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(sign, |acc, (p, _)| acc * p)
}

pub fn euler_phi(m: u64) -> u64 {
    factorize_u64(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `a | b` for integers; `0 | b` only when `b = 0`.
pub fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

pub fn pow(base: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(&big(2), 7), 1);
        assert_eq!(legendre(&big(3), 7), -1);
        assert_eq!(legendre(&big(14), 7), 0);
        assert_eq!(legendre(&big(-1), 7), -1);
        assert_eq!(legendre(&big(-1), 5), 1);
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(perfect_square_root(&big(50176)), Some(big(224)));
        assert_eq!(224 * 224, 50176);
        assert_eq!(perfect_square_root(&big(50177)), None);
        assert_eq!(perfect_square_root(&big(0)), Some(big(0)));
        assert_eq!(perfect_square_root(&big(-4)), None);
    }

    #[test]
    fn prime_sets() {
        // 1944 = 2^3 * 3^5
        let expected: BTreeSet<BigInt> = [big(2), big(3)].into_iter().collect();
        assert_eq!(prime_set(&big(1944)), expected);
        assert!(prime_set(&big(1)).is_empty());
        assert_eq!(ord_p(&big(1944), 3), 5);
        assert_eq!(ord_p(&big(1944), 2), 3);
        assert_eq!(ord_p(&big(-1944), 7), 0);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&big(-28)), big(-7));
        assert_eq!(squarefree_part(&big(72)), big(2));
        assert_eq!(squarefree_part(&big(-4)), big(-1));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(7), 6);
    }

    #[test]
    fn factorize_large() {
        let n = pow(11, 5) * big(3072);
        let f = factorize(&n);
        assert_eq!(f, vec![(big(2), 10), (big(3), 1), (big(11), 5)]);
    }
}
