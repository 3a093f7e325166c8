//! 2-adic valuations of integers, factorials and binomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// `ν₂(n)`; `None` for `n = 0`.
pub fn nu2(n: &BigInt) -> Option<u64> {
    if n.is_zero() {
        None
    } else {
        n.trailing_zeros()
    }
}

/// Binary digit sum.
pub fn digit_sum2(n: &BigInt) -> u64 {
    n.abs().to_biguint().unwrap().count_ones()
}

/// `ν₂(n!) = n - s₂(n)`.
pub fn nu2_factorial(n: &BigInt) -> BigInt {
    n - BigInt::from(digit_sum2(n))
}

/// `Σ_{k≥1} ⌊n / 2^k⌋`
pub fn legendre_sum(n: &BigInt) -> BigInt {
    let mut out = BigInt::zero();
    let mut m: BigInt = n >> 1;
    while !m.is_zero() {
        out += &m;
        m >>= 1;
    }
    out
}

/// `ν₂(binom(a, b))` as the number of carries when adding `b` and `a - b`
/// in base 2.
pub fn nu2_binomial(a: &BigInt, b: &BigInt) -> Option<u64> {
    if b.is_negative() || b > a {
        return None;
    }
    let c = a - b;
    Some(digit_sum2(b) + digit_sum2(&c) - digit_sum2(a))
}

/// `binom(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NinePower {
    pub n: u64,
    /// `ν₂(9^n - 1)`, by direct computation.
    pub lhs: u64,
    /// `ν₂(8n)`
    pub rhs: u64,
}

impl NinePower {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check_nine_power(n: u64) -> NinePower {
    assert!(n >= 1);
    let x = num_traits::pow(BigInt::from(9), n as usize) - 1;
    NinePower { n, lhs: nu2(&x).unwrap(), rhs: 3 + n.trailing_zeros() as u64 }
}

/// Checks `ν₂(9^n - 1) = ν₂(8n)` for `1 ≤ n ≤ limit`, building the powers
/// incrementally. Returns the first failure.
pub fn check_nine_power_range(limit: u64) -> Option<NinePower> {
    let mut p = BigInt::one();
    let nine = BigInt::from(9u32);
    for n in 1..=limit {
        p *= &nine;
        let lhs = nu2(&(&p - 1u32)).unwrap();
        let rhs = 3 + n.trailing_zeros() as u64;
        if lhs != rhs {
            return Some(NinePower { n, lhs, rhs });
        }
    }
    None
}

/// `n - s₂(n) = Σ ⌊n/2^k⌋` for `0 ≤ n ≤ limit`; returns the first failure.
pub fn check_legendre_range(limit: u64) -> Option<u64> {
    (0..=limit).find(|&n| {
        let b = BigInt::from(n);
        nu2_factorial(&b) != legendre_sum(&b)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nu2Suite {
    pub n: String,
    pub nu2: u64,
    pub nu2_factorial: String,
    pub legendre_sum: String,
    /// `ν₂(binom(2n, n)) = s₂(n)`
    pub nu2_central_binomial: u64,
    pub nine_power: Option<NinePower>,
    pub ok: bool,
}

/// Valuation identities at `n ≥ 1`. The `9^n - 1` check is skipped for `n`
/// beyond `u32` range.
pub fn nu2_suite(n: &BigInt) -> Nu2Suite {
    assert!(n.is_positive());
    let f = nu2_factorial(n);
    let l = legendre_sum(n);
    let c = nu2_binomial(&(n * 2), n).unwrap();
    let nine = n.to_u64().filter(|&m| m <= u32::MAX as u64).map(check_nine_power);
    let ok = f == l && c == digit_sum2(n) && nine.as_ref().is_none_or(NinePower::holds);
    Nu2Suite {
        n: n.to_string(),
        nu2: nu2(n).unwrap(),
        nu2_factorial: f.to_string(),
        legendre_sum: l.to_string(),
        nu2_central_binomial: c,
        nine_power: nine,
        ok,
    }
}
