//! Small integer helpers shared by the field and character code.

pub use num_integer::{gcd, lcm};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|k| n % k == 0).collect()
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp` with overflow detection.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Reduce a signed integer into `[0, m)`.
pub fn modulo(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Smallest nonnegative `k` with `a * k ≡ b (mod m)`, if any.
pub fn solve_linear_congruence(a: u64, b: u64, m: u64) -> Option<u64> {
    let a = a % m;
    let b = b % m;
    let g = gcd(a, m);
    if b % g != 0 {
        return None;
    }
    let (a1, b1, m1) = (a / g, b / g, m / g);
    if m1 == 1 {
        return Some(0);
    }
    let inv = mod_inverse(a1, m1)?;
    Some(mul_mod(b1, inv, m1))
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// p-adic valuation of `n!` (Legendre).
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut pk = p;
    while pk <= n {
        v += n / pk;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    v
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruence_and_inverse() {
        assert_eq!(solve_linear_congruence(3, 6, 9), Some(2));
        assert_eq!(solve_linear_congruence(2, 1, 4), None);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
    }

    #[test]
    fn legendre() {
        assert_eq!(factorial_valuation(25, 5), 6);
        assert_eq!(factorial_valuation(4, 5), 0);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(prime_factors(63), vec![3, 7]);
    }
}
