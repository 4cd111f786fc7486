//! Small integer helpers: gcd, p-parts, Euler's totient, divisors.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn gcd(a: usize, b: usize) -> usize {
    num_integer::gcd(a, b)
}

/// The largest power of `p` dividing `n` (`n_p`). `n` must be positive.
pub fn p_part(n: usize, p: usize) -> usize {
    assert!(n > 0 && p > 1);
    let mut n = n;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: usize) -> Vec<usize> {
    let mut n = n;
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

/// Positive divisors in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn euler_phi(n: usize) -> usize {
    prime_divisors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}
