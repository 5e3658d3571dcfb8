//! Exact `u64` number theory: modular arithmetic, deterministic primality,
//! and full factorization.
//!
//! Factor moduli are capped at 64 bits, so a deterministic Miller-Rabin
//! witness set plus Pollard's rho covers every input this crate accepts.

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

/// Modular inverse of `a` mod `m` for coprime `a`, `m`.
///
/// # Panics
///
/// Panics when `gcd(a, m) != 1`.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    // extended Euclid over i128; coefficients stay within range for u64 inputs
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert!(old_r == 1, "inv_mod: {a} is not invertible mod {m}");
    old_s.rem_euclid(m as i128) as u64
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be exact below 3.3 * 10^24, which covers u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
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

/// One non-trivial factor of an odd composite `n` via Pollard's rho (Brent).
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && n % 2 == 1 && !is_prime(n));
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Prime factorization of `n >= 2` as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 2, "factorize: input must be at least 2");
    let mut factors = Vec::new();
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if n > 1 {
        let mut composites = vec![n];
        while let Some(m) = composites.pop() {
            if is_prime(m) {
                match factors.iter_mut().find(|(p, _)| *p == m) {
                    Some((_, e)) => *e += 1,
                    None => factors.push((m, 1)),
                }
            } else {
                let d = pollard_rho(m);
                composites.push(d);
                composites.push(m / d);
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    factors
}

/// `p^e` if it fits in a u64.
pub fn checked_pow(p: u64, e: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_range() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                83, 89, 97
            ]
        );
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(18_446_744_073_709_551_615)); // u64::MAX = 3*5*17*257*641*65537*6700417
        assert!(!is_prime(3_825_123_056_546_413_051)); // strong pseudoprime to bases 2..23
    }

    #[test]
    fn factorize_round_trips() {
        for n in 2u64..2000 {
            let f = factorize(n);
            let product: u64 = f.iter().map(|&(p, e)| checked_pow(p, e).unwrap()).product();
            assert_eq!(product, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn factorize_large_semiprime() {
        let f = factorize(999_665_081 * 999_716_071);
        assert_eq!(f, vec![(999_665_081, 1), (999_716_071, 1)]);
    }

    #[test]
    fn inverse_round_trips() {
        for m in [3u64, 5, 9, 16, 101, 65537] {
            for a in 1..m.min(60) {
                if gcd(a, m) == 1 {
                    assert_eq!(mul_mod(a, inv_mod(a, m), m), 1);
                }
            }
        }
    }

    #[test]
    fn checked_pow_limits() {
        assert_eq!(checked_pow(2, 63), Some(1 << 63));
        assert_eq!(checked_pow(2, 64), None);
        assert_eq!(checked_pow(10, 19), Some(10_000_000_000_000_000_000));
        assert_eq!(checked_pow(10, 20), None);
    }
}
