//! Brute-force classical references.
//!
//! These deliberately share no code with [`crate::arith`] or the wave
//! algorithms so that agreement between the two is meaningful.

use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaselineError {
    #[error("input too small: {n}")]
    InputTooSmall { n: u128 },
    #[error("Fermat method requires odd input, got {n}")]
    EvenInput { n: u128 },
    #[error("prime or no representation: {n}")]
    NoRepresentation { n: u128, steps: u64 },
    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: u64, n: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    TrialDivision,
    ClassicalFermat,
    OrderScan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaselineResult {
    Factors(Vec<u128>),
    Period(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineReport {
    pub method: Method,
    pub result: BaselineResult,
    /// Loop iterations executed.
    pub steps: u64,
}

impl BaselineReport {
    pub fn factors(&self) -> &[u128] {
        match &self.result {
            BaselineResult::Factors(f) => f,
            BaselineResult::Period(_) => &[],
        }
    }

    pub fn period(&self) -> Option<u64> {
        match self.result {
            BaselineResult::Period(r) => Some(r),
            BaselineResult::Factors(_) => None,
        }
    }
}

/// Complete prime factorization by trial division, ascending with
/// multiplicity. `steps` counts candidate divisors tried.
pub fn trial_division(n: u128) -> Result<BaselineReport, BaselineError> {
    if n < 2 {
        return Err(BaselineError::InputTooSmall { n });
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut steps = 0u64;
    let mut d = 2u128;
    while d <= rest / d {
        steps += 1;
        while rest.is_multiple_of(d) {
            factors.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(rest);
    }
    Ok(BaselineReport {
        method: Method::TrialDivision,
        result: BaselineResult::Factors(factors),
        steps: steps.max(1),
    })
}

/// Smallest `s` with `s² ≥ m`, by bisection.
fn ceil_root(m: u128) -> u128 {
    let (mut lo, mut hi) = (0u128, 1u128 << 64);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_mul(mid) {
            Some(sq) if sq < m => lo = mid + 1,
            _ => hi = mid,
        }
    }
    lo
}

/// Fermat's method: ascending scan of `x` from `⌈√n⌉` until `x² − n` is a
/// square, giving `(x + y, x − y)`. Gives up past `⌊n/2⌋`.
pub fn classical_fermat(n: u128) -> Result<BaselineReport, BaselineError> {
    if n < 9 {
        return Err(BaselineError::InputTooSmall { n });
    }
    if n.is_multiple_of(2) {
        return Err(BaselineError::EvenInput { n });
    }
    let mut x = ceil_root(n);
    let mut steps = 0u64;
    while x <= n / 2 {
        steps += 1;
        let diff = x * x - n;
        let y = ceil_root(diff);
        if y * y == diff {
            return Ok(BaselineReport {
                method: Method::ClassicalFermat,
                result: BaselineResult::Factors(vec![x + y, x - y]),
                steps,
            });
        }
        x += 1;
    }
    Err(BaselineError::NoRepresentation { n, steps })
}

/// Multiplicative order of `a` modulo `n` by repeated multiplication.
pub fn order_bruteforce(a: u64, n: u64) -> Result<BaselineReport, BaselineError> {
    if a < 2 || n < 3 {
        return Err(BaselineError::InputTooSmall { n: n as u128 });
    }
    let (mut x, mut y) = (a, n);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    if x != 1 {
        return Err(BaselineError::NotCoprime { a, n });
    }
    let (a, n) = (a as u128 % n as u128, n as u128);
    let mut value = a;
    let mut r = 1u64;
    while value != 1 {
        value = value * a % n;
        r += 1;
    }
    Ok(BaselineReport {
        method: Method::OrderScan,
        result: BaselineResult::Period(r),
        steps: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_division_examples() {
        assert_eq!(trial_division(21).unwrap().factors(), &[3, 7]);
        assert_eq!(trial_division(2).unwrap().factors(), &[2]);
        assert_eq!(trial_division(360).unwrap().factors(), &[2, 2, 2, 3, 3, 5]);
        assert!(trial_division(1).is_err());
    }

    #[test]
    fn classical_fermat_examples() {
        let r = classical_fermat(21).unwrap();
        assert_eq!((r.factors(), r.steps), (&[7u128, 3][..], 1));
        let r = classical_fermat(9).unwrap();
        assert_eq!((r.factors(), r.steps), (&[3u128, 3][..], 1));
        let r = classical_fermat(33).unwrap();
        assert_eq!((r.factors(), r.steps), (&[11u128, 3][..], 2));
        assert!(matches!(classical_fermat(11), Err(BaselineError::NoRepresentation { .. })));
        assert_eq!(classical_fermat(22), Err(BaselineError::EvenInput { n: 22 }));
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_bruteforce(2, 21).unwrap().period(), Some(6));
        assert_eq!(order_bruteforce(2, 15).unwrap().period(), Some(4));
        assert!(order_bruteforce(1, 15).is_err());
        assert_eq!(order_bruteforce(6, 21), Err(BaselineError::NotCoprime { a: 6, n: 21 }));
    }

    #[test]
    fn ceil_root_matches_definition() {
        for m in 0..2000u128 {
            let s = ceil_root(m);
            assert!(s * s >= m);
            assert!(s == 0 || (s - 1) * (s - 1) < m);
        }
    }
}
