//! Small integer helpers.

use alloc::vec::Vec;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended Euclid on signed integers: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m` if it exists.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (g, x, _) = egcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `n = p^s` with `p` prime, if it has that shape.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factor_u64(n);
    (f.len() == 1).then(|| f[0])
}

/// `Some(l)` when `m` is a prime `l` or a prime square `l^2`.
pub fn prime_or_prime_square(m: u64) -> Option<u64> {
    match factor_u64(m).as_slice() {
        [(l, 1)] | [(l, 2)] => Some(*l),
        _ => None,
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn egcd_bezout() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                let (g, x, y) = egcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(
                    g as u64,
                    gcd(a.unsigned_abs() as u64, b.unsigned_abs() as u64)
                );
            }
        }
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(360), alloc::vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_or_prime_square(4), Some(2));
        assert_eq!(prime_or_prime_square(8), None);
        assert_eq!(prime_or_prime_square(6), None);
    }
}
