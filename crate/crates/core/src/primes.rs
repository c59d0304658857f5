//! Primality and primitive roots for the character machinery.

/// Deterministic Miller–Rabin for `u64`. Trial division handles small
/// inputs; above that the twelve-base test is deterministic far beyond the
/// `u64` range (valid to 3.3e24).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
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

/// Distinct prime factors by trial division (inputs here are at most 1e7).
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root of a prime `q`.
pub fn smallest_primitive_root(q: u64) -> Option<u64> {
    if q == 2 {
        return Some(1);
    }
    let exponents: Vec<u64> = distinct_prime_factors(q - 1)
        .iter()
        .map(|f| (q - 1) / f)
        .collect();
    'candidate: for g in 2..q {
        for &e in &exponents {
            if pow_mod(g, e, q) == 1 {
                continue 'candidate;
            }
        }
        return Some(g);
    }
    None
}
