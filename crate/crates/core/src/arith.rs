//! Exact integer arithmetic behind the oracles and the classical
//! post-processing.
//!
//! Everything works on `u128` and never touches floating point, so perfect
//! square tests stay exact for near-squares.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("x below √N: {x}² < {n}")]
    BelowSqrt { x: u128, n: u128 },
    #[error("{n} is not an odd composite ≥ 9")]
    NotOddComposite { n: u128 },
    #[error("arithmetic overflow squaring {x}")]
    Overflow { x: u128 },
}

/// An odd composite integer, at least 9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddComposite(u128);

impl OddComposite {
    pub fn new(n: u128) -> Result<Self, ArithError> {
        if n < 9 || n.is_multiple_of(2) || is_prime(n) {
            return Err(ArithError::NotOddComposite { n });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u128 {
        self.0
    }
}

/// Returns 1 when `i` divides `n`, 0 otherwise.
pub fn divides_indicator(n: u128, i: u128) -> u8 {
    debug_assert!(i >= 2);
    u8::from(n.is_multiple_of(i))
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `a * b mod n` without overflowing for any modulus that fits in `u128`.
pub fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    let (a, b) = (a % n, b % n);
    if let Some(p) = a.checked_mul(b) {
        return p % n;
    }
    // double-and-add; every intermediate stays below 2n
    let mut acc = 0u128;
    let mut base = a;
    let mut k = b;
    while k > 0 {
        if k & 1 == 1 {
            acc = add_mod(acc, base, n);
        }
        base = add_mod(base, base, n);
        k >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    // a, b < n
    if a >= n - b {
        a - (n - b)
    } else {
        a + b
    }
}

/// `a^x mod n` by square-and-multiply.
pub fn modexp(a: u128, mut x: u128, n: u128) -> u128 {
    if n == 1 {
        return 0;
    }
    if n <= u32::MAX as u128 {
        return modexp_small(a as u64 % n as u64, x, n as u64) as u128;
    }
    let mut result = 1u128;
    let mut base = a % n;
    while x > 0 {
        if x & 1 == 1 {
            result = mul_mod(result, base, n);
        }
        base = mul_mod(base, base, n);
        x >>= 1;
    }
    result
}

/// Native 64-bit loop for moduli below 2³², where products cannot overflow.
fn modexp_small(mut base: u64, mut x: u128, n: u64) -> u64 {
    let mut result = 1u64;
    while x > 0 {
        if x & 1 == 1 {
            result = result * base % n;
        }
        base = base * base % n;
        x >>= 1;
    }
    result
}

/// ⌊√m⌋, exact.
pub fn isqrt(m: u128) -> u128 {
    if m < 2 {
        return m;
    }
    // Newton iteration from an upper bound; decreases monotonically to the floor.
    let bits = 128 - m.leading_zeros();
    let mut x = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + m / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// ⌈√m⌉, exact.
pub fn isqrt_ceil(m: u128) -> u128 {
    let r = isqrt(m);
    if r * r == m {
        r
    } else {
        r + 1
    }
}

/// Integer nearest to √m, ties rounding up. Ties cannot occur for integer `m`.
pub fn nearest_sqrt(m: u128) -> u128 {
    let r = isqrt(m);
    if m - r * r > r {
        r + 1
    } else {
        r
    }
}

pub fn is_perfect_square(m: u128) -> bool {
    let r = isqrt(m);
    r * r == m
}

/// +1 when `x² − n` is a perfect square, −1 otherwise.
pub fn fermat_sign(x: u128, n: u128) -> Result<i8, ArithError> {
    let sq = x.checked_mul(x).ok_or(ArithError::Overflow { x })?;
    if sq < n {
        return Err(ArithError::BelowSqrt { x, n });
    }
    Ok(if is_perfect_square(sq - n) { 1 } else { -1 })
}

/// Deterministic Miller–Rabin. The witness set covers every `n < 3.3·10²⁴`;
/// above that the answer is probabilistic. Only used for input validation.
pub fn is_prime(n: u128) -> bool {
    const WITNESSES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
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
    'witness: for &a in &WITNESSES {
        let mut x = modexp(a, d, n);
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
