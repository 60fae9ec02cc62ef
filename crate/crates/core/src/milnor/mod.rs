//! Jacobian (Milnor) algebra `R = k[x_0..x_n] / (∂f/∂x_0, ..., ∂f/∂x_n)`.
//!
//! For smooth `f` of degree `d` the partials form a regular sequence, so the
//! Hilbert function of `R` is that of `n+1` generic forms of degree `d-1`:
//! it is supported in `0..=ρ` with `ρ = (n+1)(d-2)`, symmetric, and `R_ρ` is a
//! line. [`milnor_hilbert`] returns that closed form. The rest of this module
//! is the oracle: it builds the degree-`k` piece of the Jacobian ideal for an
//! explicit polynomial and computes ranks over `F_P`.

mod linalg;
mod poly;

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{contract, Error, Result};
use crate::numeric::{binom, series_pow_ratio, to_i64};

pub use linalg::{rank_mod_p, Echelon, SparseRow};
pub use poly::{check_prime, is_prime, monomials, Monomial, SparsePolynomial, Term, DEFAULT_PRIME, SECOND_PRIME};

/// Graded dimensions `[dim R_0, ..., dim R_ρ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    coeffs: Vec<BigInt>,
}

impl HilbertSeries {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Top degree ρ.
    pub fn rho(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// `dim R_k`, zero outside `0..=ρ`.
    pub fn dim(&self, k: i64) -> BigInt {
        usize::try_from(k).ok().and_then(|k| self.coeffs.get(k)).cloned().unwrap_or_default()
    }
}

/// `ρ = (n+1)(d-2)`.
pub fn socle_degree(n: i64, d: i64) -> i64 {
    (n + 1) * (d - 2)
}

pub fn milnor_hilbert(n: i64, d: i64) -> Result<HilbertSeries> {
    if n < 1 || d < 2 {
        return Err(contract(format!("milnor_hilbert needs n >= 1 and d >= 2, got n = {n}, d = {d}")));
    }
    let rho = socle_degree(n, d);
    let series = series_pow_ratio(d, n, rho as usize)?;
    Ok(HilbertSeries { coeffs: series.into_coeffs() })
}

/// The `n+1` partial derivatives of `f`.
pub fn jacobian_partials(f: &SparsePolynomial) -> Result<Vec<SparsePolynomial>> {
    if f.degree() < 2 {
        return Err(contract(format!("need degree >= 2, got {}", f.degree())));
    }
    Ok((0..f.num_vars()).map(|v| f.derivative(v)).collect())
}

/// Matrix of the Jacobian map `⊕_{n+1} S_{k-d+1} -> S_k`, `(g_i) ↦ Σ g_i ∂f/∂x_i`,
/// in the monomial basis of `S_k`. Its row space is the degree-`k` part of the
/// Jacobian ideal.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: i64,
    basis: Vec<Monomial>,
    rows: Vec<SparseRow>,
    prime: u64,
}

impl GradedPiece {
    pub fn jacobian(partials: &[SparsePolynomial], degree: i64) -> Self {
        let first = partials.first().expect("at least one partial");
        let num_vars = first.num_vars();
        let prime = first.prime();
        if degree < 0 {
            return Self { degree, basis: Vec::new(), rows: Vec::new(), prime };
        }
        let basis = monomials(num_vars, degree as u32);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let source_degree = degree - i64::from(first.degree());
        let mut rows = Vec::new();
        if source_degree >= 0 {
            for g in monomials(num_vars, source_degree as u32) {
                for partial in partials {
                    let mut row: SparseRow = partial
                        .terms()
                        .iter()
                        .map(|t| {
                            let prod: Monomial = t.exps.iter().zip(&g).map(|(a, b)| a + b).collect();
                            (index[&prod], t.coeff)
                        })
                        .collect();
                    if row.is_empty() {
                        continue;
                    }
                    row.sort_unstable_by_key(|&(c, _)| c);
                    rows.push(row);
                }
            }
        }
        Self { degree, basis, rows, prime }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Number of generators `(n+1) · dim S_{k-d+1}` that are not identically zero.
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> u64 {
        rank_mod_p(&self.rows, self.basis.len(), self.prime) as u64
    }

    /// `(rank, dim S_k - rank)`.
    pub fn rank_and_corank(&self) -> (u64, u64) {
        let rank = self.rank();
        (rank, self.basis.len() as u64 - rank)
    }
}

/// `dim R_k` for `k = 0..=k_max` from explicit ranks, without comparing to
/// the generic Hilbert function.
pub fn raw_ideal_dims(f: &SparsePolynomial, k_max: i64) -> Result<Vec<u64>> {
    let partials = jacobian_partials(f)?;
    Ok((0..=k_max.max(-1))
        .into_par_iter()
        .map(|k| GradedPiece::jacobian(&partials, k).rank_and_corank().1)
        .collect())
}

fn generic_dim(n: i64, d: i64, k: i64) -> Result<u64> {
    Ok(to_i64(&milnor_hilbert(n, d)?.dim(k)) as u64)
}

/// `dim R_k` for `k = 0..=k_max`, checked against the generic Hilbert function.
pub fn ideal_dims(f: &SparsePolynomial, k_max: i64) -> Result<Vec<u64>> {
    let dims = raw_ideal_dims(f, k_max)?;
    let h = milnor_hilbert(f.n() as i64, i64::from(f.degree()))?;
    for (k, &computed) in dims.iter().enumerate() {
        let expected = to_i64(&h.dim(k as i64)) as u64;
        if computed != expected {
            return Err(Error::HilbertMismatch { degree: k, computed, expected, dims });
        }
    }
    Ok(dims)
}

/// `dim R_k` for a single degree, checked against the generic Hilbert function.
pub fn ideal_dim_at(f: &SparsePolynomial, k: i64) -> Result<u64> {
    if k < 0 {
        return Ok(0);
    }
    let partials = jacobian_partials(f)?;
    let computed = GradedPiece::jacobian(&partials, k).rank_and_corank().1;
    let expected = generic_dim(f.n() as i64, i64::from(f.degree()), k)?;
    if computed != expected {
        return Err(Error::HilbertMismatch { degree: k as usize, computed, expected, dims: vec![computed] });
    }
    Ok(computed)
}

/// Rank and cokernel dimension of `⊕_{n+1} H^0(O(r+1)) -> H^0(O(d+r))`.
/// For smooth `f` the cokernel is `R_{d+r}`; a different value is reported
/// as a mismatch.
pub fn jacobian_map_rank(f: &SparsePolynomial, r: i64) -> Result<(u64, u64)> {
    if r < -1 {
        return Err(contract(format!("r = {r} must be at least -1")));
    }
    let (rank, coker) = jacobian_map_rank_raw(f, r)?;
    let (n, d) = (f.n() as i64, i64::from(f.degree()));
    let expected = generic_dim(n, d, d + r)?;
    if coker != expected {
        let target = to_i64(&binom(d + r + n, n as u32)) as u64;
        debug_assert_eq!(rank + coker, target);
        return Err(Error::HilbertMismatch { degree: (d + r) as usize, computed: coker, expected, dims: vec![coker] });
    }
    Ok((rank, coker))
}

pub fn jacobian_map_rank_raw(f: &SparsePolynomial, r: i64) -> Result<(u64, u64)> {
    let partials = jacobian_partials(f)?;
    Ok(GradedPiece::jacobian(&partials, i64::from(f.degree()) + r).rank_and_corank())
}

/// Result of running the oracle over two primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCrossCheck {
    pub primes: (u64, u64),
    pub dims: (Vec<u64>, Vec<u64>),
}

impl PrimeCrossCheck {
    pub fn agree(&self) -> bool {
        self.dims.0 == self.dims.1
    }

    pub fn totals(&self) -> (u64, u64) {
        (self.dims.0.iter().sum(), self.dims.1.iter().sum())
    }
}

/// Runs [`raw_ideal_dims`] for `f` and for its integer lift reduced modulo `second`.
pub fn cross_check_primes(f: &SparsePolynomial, k_max: i64, second: u64) -> Result<PrimeCrossCheck> {
    let g = f.with_prime(second)?;
    Ok(PrimeCrossCheck {
        primes: (f.prime(), second),
        dims: (raw_ideal_dims(f, k_max)?, raw_ideal_dims(&g, k_max)?),
    })
}
