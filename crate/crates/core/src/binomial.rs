//! Binomial and multinomial coefficients modulo a prime, Legendre
//! valuations of factorials, and the odd-primary unit `nu(n)`.
//!
//! The notation `(a, b)` means `C(a+b, a)`, taken to be zero when either
//! argument is negative. Binomials are evaluated digit-wise in base `p`
//! (Lucas); the big-integer route exists only as a test oracle.

use crate::error::{Error, Result};
use crate::fp::PrimeField;

/// `(a, b) = C(a+b, a) mod p`, zero if `a < 0` or `b < 0`.
pub fn binom_mod_p(a: i64, b: i64, field: PrimeField) -> u64 {
    if a < 0 || b < 0 {
        return 0;
    }
    lucas(a as u64 + b as u64, a as u64, field)
}

/// `C(n, k) mod p` by the digit-wise product in base `p`.
fn lucas(mut n: u64, mut k: u64, field: PrimeField) -> u64 {
    let p = field.p() as u64;
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = field.mul(acc, binom_small(nd, kd, field));
        n /= p;
        k /= p;
    }
    acc
}

/// `C(n, k) mod p` for digits `0 <= k <= n < p`.
fn binom_small(n: u64, k: u64, field: PrimeField) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = field.mul(num, (n - i) % field.p() as u64);
        den = field.mul(den, (i + 1) % field.p() as u64);
    }
    field.mul(num, field.inv(den.max(1)))
}

/// Multinomial coefficient `(sum parts)! / prod(parts!) mod p`; zero if
/// any part is negative. Evaluated as a product of binomials.
pub fn multinom_mod_p(parts: &[i64], field: PrimeField) -> u64 {
    if parts.iter().any(|&x| x < 0) {
        return 0;
    }
    let mut acc = 1u64;
    let mut rest: i64 = parts.iter().sum();
    for &part in parts {
        rest -= part;
        acc = field.mul(acc, binom_mod_p(part, rest, field));
        if acc == 0 {
            return 0;
        }
    }
    acc
}

/// Legendre valuation `ord_p(n!) = sum_{k>=1} floor(n / p^k)`.
pub fn ord_p_factorial(n: u64, field: PrimeField) -> u64 {
    let p = field.p() as u64;
    let mut acc = 0;
    let mut q = n / p;
    while q > 0 {
        acc += q;
        q /= p;
    }
    acc
}

/// The unit `nu(n) = (-1)^{n(n-1)(p-1)/4} (((p-1)/2)!)^n` in `F_p`, `p` odd.
pub fn nu_sign(n: i64, field: PrimeField) -> Result<u64> {
    let p = field.p() as u64;
    if p == 2 {
        return Err(Error::OddPrimeRequired(2));
    }
    // n(n-1) is even and p-1 is even, so the exponent is an integer.
    let sign_exp = n
        .wrapping_mul(n - 1)
        .wrapping_mul(field.p() as i64 - 1)
        .div_euclid(4);
    let sign = if sign_exp.rem_euclid(2) == 0 {
        1
    } else {
        p - 1
    };
    let mut half_fact = 1u64;
    for i in 1..=(p - 1) / 2 {
        half_fact = field.mul(half_fact, i);
    }
    Ok(field.mul(sign, field.pow_i64(half_fact, n)))
}
