//! Exact arithmetic: polynomial-convention binomials and truncated power series.
//!
//! Every count in the crate goes through [`pbinom`]. It evaluates the binomial
//! polynomial `s(s-1)...(s-r+1)/r!` at any integer `s`, which is what Euler
//! characteristics need; [`binom`] is the combinatorial restriction that is
//! zero whenever `s < r`.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{contract, Result};

/// Binomial polynomial `s(s-1)...(s-r+1)/r!` evaluated exactly.
pub fn pbinom(s: i64, r: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..i64::from(r) {
        // acc = s(s-1)...(s-j+1)/j! is an integer, and so is the next quotient.
        acc *= BigInt::from(s - j);
        acc /= BigInt::from(j + 1);
    }
    acc
}

/// [`pbinom`] for callers that carry `r` as a signed integer.
pub fn pbinom_checked(s: i64, r: i64) -> Result<BigInt> {
    let r = u32::try_from(r).map_err(|_| contract(format!("pbinom: r = {r} must be non-negative")))?;
    Ok(pbinom(s, r))
}

/// Combinatorial binomial: `C(s, r)` for `s >= r >= 0`, zero otherwise.
pub fn binom(s: i64, r: u32) -> BigInt {
    if s < i64::from(r) {
        BigInt::zero()
    } else {
        pbinom(s, r)
    }
}

/// `ceil(a / b)` for `b > 0`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    num_integer::Integer::div_ceil(&a, &b)
}

pub fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `p`, `-p` or `p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || contract(format!("not a rational number: {s:?}"));
    let r = match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            BigRational::new(num, den)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(r)
}

/// Decimal rendering that round-trips through [`parse_rational`]: `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Power series with integer coefficients, truncated after degree `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(cap: usize) -> Self {
        Self { coeffs: vec![BigInt::zero(); cap + 1] }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything past `cap` is dropped.
    pub fn from_coeffs(cap: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut s = Self::zero(cap);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k`; zero outside `0..=cap`.
    pub fn coeff(&self, k: i64) -> BigInt {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.cap());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.cap().min(rhs.cap());
        TruncatedSeries::from_coeffs(cap, self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.cap().min(rhs.cap());
        let mut out = TruncatedSeries::zero(cap);
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(cap + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

/// `((1 - t^(d-1)) / (1 - t))^(n+1)` truncated after degree `cap`, i.e. the
/// Hilbert series of `n+1` generic forms of degree `d-1` in `n+1` variables.
pub fn series_pow_ratio(d: i64, n: i64, cap: usize) -> Result<TruncatedSeries> {
    if d < 2 || n < 1 {
        return Err(contract(format!("series_pow_ratio needs d >= 2 and n >= 1, got d = {d}, n = {n}")));
    }
    let factor = TruncatedSeries::from_coeffs(cap, (0..d - 1).map(|_| BigInt::one()));
    Ok(factor.pow((n + 1) as u32))
}

pub(crate) fn to_i64(v: &BigInt) -> i64 {
    debug_assert!(v.abs() < BigInt::from(i64::MAX));
    i64::try_from(v).expect("value fits in i64")
}
