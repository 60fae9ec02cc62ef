use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{contract, Error, Result};

/// Largest prime below 2^31.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;
/// Next prime down, used to cross-check ranks.
pub const SECOND_PRIME: u64 = 2_147_483_629;

/// Exponent vector of a monomial in `x_0, ..., x_n`.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u64,
    pub exps: Monomial,
}

/// Homogeneous polynomial over `F_P`. Terms keep the order they were given in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    num_vars: usize,
    degree: u32,
    prime: u64,
    terms: Vec<Term>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// Primes are kept below 2^32 so products of reduced residues fit in a `u64`.
pub fn check_prime(p: u64) -> Result<()> {
    if p >= 1 << 32 || !is_prime(p) {
        return Err(contract(format!("{p} is not a prime below 2^32")));
    }
    Ok(())
}

impl SparsePolynomial {
    /// Collects terms, reducing coefficients mod `prime`, merging repeated
    /// monomials and dropping zeros. Rejects terms of differing degree.
    pub fn from_terms(
        num_vars: usize,
        degree: u32,
        prime: u64,
        terms: impl IntoIterator<Item = (u64, Monomial)>,
    ) -> Result<Self> {
        check_prime(prime)?;
        if num_vars == 0 {
            return Err(contract("a polynomial needs at least one variable"));
        }
        let mut out: Vec<Term> = Vec::new();
        for (idx, (coeff, exps)) in terms.into_iter().enumerate() {
            if exps.len() != num_vars {
                return Err(contract(format!(
                    "term {idx} has {} exponents, expected {num_vars}",
                    exps.len()
                )));
            }
            let found: u32 = exps.iter().sum();
            if found != degree {
                return Err(Error::NotHomogeneous { term: idx, found, expected: degree });
            }
            let coeff = coeff % prime;
            match out.iter_mut().find(|t| t.exps == exps) {
                Some(t) => t.coeff = (t.coeff + coeff) % prime,
                None => out.push(Term { coeff, exps }),
            }
        }
        out.retain(|t| t.coeff != 0);
        Ok(Self { num_vars, degree, prime, terms: out })
    }

    /// `x_0^d + ... + x_n^d`.
    pub fn fermat(n: usize, d: u32, prime: u64) -> Result<Self> {
        let terms = (0..=n).map(|i| {
            let mut e = vec![0; n + 1];
            e[i] = d;
            (1, e)
        });
        Self::from_terms(n + 1, d, prime, terms)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Projective dimension `n` of the ambient space.
    pub fn n(&self) -> usize {
        self.num_vars - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Formal partial derivative in `x_var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.num_vars);
        let degree = self.degree.saturating_sub(1);
        let terms = self.terms.iter().filter(|t| t.exps[var] > 0).map(|t| {
            let mut exps = t.exps.clone();
            exps[var] -= 1;
            ((t.coeff * u64::from(t.exps[var])) % self.prime, exps)
        });
        Self::from_terms(self.num_vars, degree, self.prime, terms).expect("derivative stays homogeneous")
    }

    /// Reinterprets the coefficients, read as integers in `[0, P)`, modulo another prime.
    pub fn with_prime(&self, prime: u64) -> Result<Self> {
        Self::from_terms(
            self.num_vars,
            self.degree,
            prime,
            self.terms.iter().map(|t| (t.coeff, t.exps.clone())),
        )
    }

    /// Text form: a header line `n d P`, then one line `c e0 ... en` per term.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n(), self.degree, self.prime);
        for t in &self.terms {
            write!(s, "{}", t.coeff).unwrap();
            for e in &t.exps {
                write!(s, " {e}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Parses the format written by [`to_text`](Self::to_text). Coefficients
    /// must already be reduced and nonzero, and no monomial may repeat, so that
    /// parsing and printing are inverse to each other.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let header = parse_ints(hline + 1, header)?;
        if header.len() != 3 {
            return Err(Error::Parse { line: hline + 1, message: "header must be `n d P`".into() });
        }
        let (n, d, prime) = (header[0], header[1], header[2]);
        let num_vars = usize::try_from(n + 1)
            .ok()
            .filter(|&v| v > 0)
            .ok_or(Error::Parse { line: hline + 1, message: format!("bad n = {n}") })?;
        let degree = u32::try_from(d).map_err(|_| Error::Parse { line: hline + 1, message: format!("bad d = {d}") })?;
        let prime = u64::try_from(prime).map_err(|_| Error::Parse { line: hline + 1, message: "bad prime".into() })?;
        check_prime(prime).map_err(|e| Error::Parse { line: hline + 1, message: e.to_string() })?;

        let mut seen = HashSet::new();
        let mut terms = Vec::new();
        for (idx, line) in lines {
            let err = |message: String| Error::Parse { line: idx + 1, message };
            let vals = parse_ints(idx + 1, line)?;
            if vals.len() != num_vars + 1 {
                return Err(err(format!("expected {} integers, found {}", num_vars + 1, vals.len())));
            }
            let coeff = u64::try_from(vals[0]).ok().filter(|&c| c > 0 && c < prime).ok_or_else(|| {
                err(format!("coefficient {} must lie in [1, {})", vals[0], prime))
            })?;
            let exps = vals[1..]
                .iter()
                .map(|&e| u32::try_from(e))
                .collect::<std::result::Result<Monomial, _>>()
                .map_err(|_| err("negative exponent".into()))?;
            let found: u32 = exps.iter().sum();
            if found != degree {
                return Err(err(format!("term has degree {found}, header says {degree}")));
            }
            if !seen.insert(exps.clone()) {
                return Err(err("repeated monomial".into()));
            }
            terms.push(Term { coeff, exps });
        }
        Ok(Self { num_vars, degree, prime, terms })
    }
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::Parse { line, message: format!("not an integer: {tok:?}") })
        })
        .collect()
}

/// Monomials of total degree `degree` in `num_vars` variables, in descending
/// lexicographic order (`x_0^degree` first).
pub fn monomials(num_vars: usize, degree: u32) -> Vec<Monomial> {
    fn go(prefix: &mut Monomial, left: usize, degree: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            go(prefix, left - 1, degree - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if num_vars > 0 {
        go(&mut Vec::with_capacity(num_vars), num_vars, degree, &mut out);
    }
    out
}
