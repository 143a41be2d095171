//! Exact integer helpers: extended gcd, integer square roots, deterministic
//! primality, squarefree tests and quadratic-surd comparisons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Extended GCD: returns (g, u, v) with g = u*a + v*b and g >= 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());

    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }

    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Three-term extended GCD: (g, u, v, w) with g = u*a + v*b + w*c.
pub fn ext_gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let (g1, u1, v1) = ext_gcd(a, b);
    let (g, s, w) = ext_gcd(&g1, c);
    (g, &s * &u1, &s * &v1, w)
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative value");
    n.sqrt()
}

/// True iff n is a perfect square (n >= 0 required for a true result).
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 inputs, trial division first.
///
/// The base set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is proven
/// correct for all n < 3.3 * 10^24, which covers the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &SMALL {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }

    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factorization shapes accepted by the search pipeline for D = 4n^2 + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiprimeShape {
    /// D itself is prime; reported with the convention p = 1, q = D.
    Prime(u64),
    /// D = p * q with p < q distinct primes.
    TwoPrimes(u64, u64),
}

/// Classifies D as prime, a product of two distinct primes, or neither.
pub fn semiprime_shape(d: u64) -> Option<SemiprimeShape> {
    if d < 2 {
        return None;
    }
    if is_prime_u64(d) {
        return Some(SemiprimeShape::Prime(d));
    }
    let mut p = 2u64;
    while p <= d / p {
        if d % p == 0 {
            let q = d / p;
            if q == p {
                return None; // square factor
            }
            return if is_prime_u64(q) {
                Some(SemiprimeShape::TwoPrimes(p, q))
            } else {
                None // three or more prime factors
            };
        }
        p += 1;
    }
    // No factor below sqrt(d) and not prime: unreachable for d >= 2.
    None
}

/// Trial-division factorization into (prime, exponent) pairs, ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while n > 1 && p <= n / p {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True iff n (> 0) has no repeated prime factor.
pub fn is_squarefree_u64(n: u64) -> bool {
    n > 0 && factor_u64(n).iter().all(|&(_, e)| e == 1)
}

/// Legendre symbol (a / p) for an odd prime p, computed by Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    debug_assert!(p > 2 && is_prime_u64(p));
    let pb = BigInt::from(p);
    let red = a.mod_floor(&pb);
    if red.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    let r = red.modpow(&e, &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// CRT for pairwise coprime moduli: x = r_i (mod m_i); returns x mod prod(m_i).
pub fn crt(pairs: &[(BigInt, BigInt)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in pairs {
        let (g, u, _) = ext_gcd(&modulus, m);
        assert!(g.is_one(), "crt moduli must be coprime");
        // x' = x + modulus * u * (r - x) solves both congruences
        let diff = (r - &x).mod_floor(m);
        x += &modulus * u * diff;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    x
}

/// Sign of a + b*sqrt(d) for non-square d > 0, computed exactly.
pub fn sign_quad(a: &BigInt, b: &BigInt, d: &BigInt) -> i32 {
    debug_assert!(d.is_positive() && !is_square(d));
    match (a.sign(), b.sign()) {
        (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => 0,
        (_, num_bigint::Sign::NoSign) => {
            if a.is_positive() {
                1
            } else {
                -1
            }
        }
        (num_bigint::Sign::NoSign, _) | (num_bigint::Sign::Plus, num_bigint::Sign::Plus) => {
            if b.is_positive() {
                1
            } else {
                -1
            }
        }
        (num_bigint::Sign::Minus, num_bigint::Sign::Minus) => -1,
        _ => {
            // mixed signs: compare a^2 with b^2 d (no ties, d non-square)
            let lhs = a * a;
            let rhs = b * b * d;
            let positive_part_wins = if a.is_positive() {
                lhs > rhs
            } else {
                rhs > lhs
            };
            if positive_part_wins {
                1
            } else {
                -1
            }
        }
    }
}

/// Decimal expansion of (t + u*sqrt(d)) / 2 to `digits` significant digits.
///
/// Used for reporting fundamental units; the computation carries ten guard
/// digits so every printed digit is exact.
pub fn quad_decimal(t: &BigInt, u: &BigInt, d: &BigInt, digits: usize) -> String {
    assert!(
        sign_quad(t, u, d) > 0,
        "quad_decimal expects a positive value"
    );
    let guard = digits + 10;
    let scale = BigInt::from(10u32).pow(guard as u32);
    // floor(10^guard * sqrt(d))
    let root = isqrt(&(d * &scale * &scale));
    let numer = t * &scale + u * root;
    let denom = BigInt::from(2) * &scale;
    let int_part = &numer / &denom;
    let mut rem = &numer - &int_part * &denom;

    let int_str = int_part.to_string();
    let mut frac = String::new();
    let frac_len = if int_part.is_zero() {
        // keep pulling digits until `digits` significant ones appear
        digits + guard
    } else {
        digits.saturating_sub(int_str.len())
    };
    for _ in 0..frac_len {
        rem *= 10;
        let digit = &rem / &denom;
        rem -= &digit * &denom;
        frac.push_str(&digit.to_string());
        if int_part.is_zero() {
            let significant = frac.trim_start_matches('0').len();
            if significant >= digits {
                break;
            }
        }
    }
    if frac.is_empty() {
        int_str
    } else {
        format!("{int_str}.{frac}")
    }
}
