//! Line-bundle and twisted-form cohomology on `P^n` and on a smooth
//! hypersurface `X ⊂ P^n` of degree `d`.
//!
//! Cohomology on `P^n` comes from Bott's formula. Everything on `X` is
//! obtained from the restriction sequence
//!
//! ```text
//! 0 -> F(l - d) -> F(l) -> F|_X(l) -> 0
//! ```
//!
//! and the fact that `H^q(P^n, Ω^p(s))` lives only in degrees `0`, `p` and `n`.
//! Multiplication by the equation of `X` is injective on `H^0` and surjective
//! on `H^n` (because `H^n` of anything on `X` vanishes), and in the remaining
//! degrees source and target are never simultaneously nonzero, so the long
//! exact sequence always closes.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dim::CohomologyDim;
use crate::error::{contract, Result};
use crate::numeric::{binom, pbinom};

/// `H^q(P^n, Ω^p ⊗ O(l))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PnQuery {
    pub n: i64,
    pub p: i64,
    pub l: i64,
    pub q: i64,
}

impl PnQuery {
    pub fn new(n: i64, p: i64, l: i64, q: i64) -> Result<Self> {
        if n < 1 {
            return Err(contract(format!("ambient dimension n = {n} must be positive")));
        }
        if !(0..=n).contains(&p) || !(0..=n).contains(&q) {
            return Err(contract(format!("need 0 <= p, q <= n; got n = {n}, p = {p}, q = {q}")));
        }
        Ok(Self { n, p, l, q })
    }
}

/// One term `O(twist)^{⊕ multiplicity}` of the Koszul-type resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTerm {
    pub multiplicity: BigInt,
    pub twist: i64,
}

/// Bott's formula; unchecked version of [`bott_pn`].
pub(crate) fn bott_value(n: i64, p: i64, l: i64, q: i64) -> BigInt {
    if q == 0 && l > p {
        binom(l + n - p, l as u32) * binom(l - 1, p as u32)
    } else if q == p && l == 0 {
        BigInt::from(1)
    } else if q == n && l < p - n {
        binom(-l + p, (-l) as u32) * binom(-l - 1, (n - p) as u32)
    } else {
        BigInt::zero()
    }
}

pub fn bott_pn(query: PnQuery) -> CohomologyDim {
    let PnQuery { n, p, l, q } = query;
    let value = bott_value(n, p, l, q);
    let rule = if q == 0 && l > p {
        format!("Bott H^0 branch: C({}, {l}) * C({}, {p})", l + n - p, l - 1)
    } else if q == p && l == 0 {
        "Bott diagonal: H^p(P^n, Ω^p) is one-dimensional".to_string()
    } else if q == n && l < p - n {
        format!("Bott H^n branch: C({}, {}) * C({}, {})", p - l, -l, -l - 1, n - p)
    } else {
        "Bott vanishing".to_string()
    };
    let line = format!("h^{q}(P^{n}, Ω^{p}({l})) = {value} [{rule}]");
    CohomologyDim::exact(value, vec![line])
}

/// The resolution `0 -> O(-n-1) -> ... -> O(-p-1)^{C(n+1,p+1)} -> Ω^p_{P^n}|_X -> 0`,
/// listed from the term adjacent to `Ω^p` outward.
pub fn koszul_resolution(n: i64, p: i64) -> Result<Vec<ResolutionTerm>> {
    if n < 1 || !(0..=n).contains(&p) {
        return Err(contract(format!("koszul_resolution needs 0 <= p <= n, got n = {n}, p = {p}")));
    }
    Ok((0..=n - p)
        .map(|j| ResolutionTerm {
            multiplicity: binom(n + 1, (p + 1 + j) as u32),
            twist: -(p + 1 + j),
        })
        .collect())
}

/// `h^0(P^n, O(s))`, zero for negative `s`.
pub(crate) fn h0_pn(n: i64, s: i64) -> BigInt {
    binom(s + n, n as u32)
}

pub(crate) fn h_ox_value(n: i64, d: i64, l: i64, i: i64) -> BigInt {
    let top = n - 1;
    if i == 0 {
        if l < 0 {
            BigInt::zero()
        } else {
            h0_pn(n, l) - h0_pn(n, l - d)
        }
    } else if i == top {
        h_ox_value(n, d, d - n - 1 - l, 0)
    } else {
        BigInt::zero()
    }
}

/// `H^i(X, O_X(l))`.
pub fn h_ox(n: i64, d: i64, l: i64, i: i64) -> Result<CohomologyDim> {
    check_hypersurface(n, d)?;
    if !(0..n).contains(&i) {
        return Err(contract(format!("cohomological degree i = {i} outside [0, {}]", n - 1)));
    }
    let value = h_ox_value(n, d, l, i);
    let rule = if i == 0 {
        "H^0 from 0 -> O(l-d) -> O(l) -> O_X(l) -> 0".to_string()
    } else if i == n - 1 {
        format!("Serre duality with h^0(O_X({}))", d - n - 1 - l)
    } else {
        "middle cohomology of a line bundle on a hypersurface vanishes".to_string()
    };
    Ok(CohomologyDim::exact(value.clone(), vec![format!("h^{i}(X, O_X({l})) = {value} [{rule}]")]))
}

/// `χ(X, O_X(l))` for all `l`.
pub fn euler_char_ox(n: i64, d: i64, l: i64) -> Result<BigInt> {
    check_hypersurface(n, d)?;
    Ok(euler_char_ox_value(n, d, l))
}

pub(crate) fn euler_char_ox_value(n: i64, d: i64, l: i64) -> BigInt {
    pbinom(l + n, n as u32) - pbinom(l - d + n, n as u32)
}

fn check_hypersurface(n: i64, d: i64) -> Result<()> {
    if n < 2 {
        return Err(contract(format!("hypersurface needs ambient dimension n >= 2, got {n}")));
    }
    if d < 1 {
        return Err(contract(format!("hypersurface degree d = {d} must be positive")));
    }
    Ok(())
}

/// Exact `h^i(X, Ω^p_{P^n}|_X ⊗ O_X(l))` without argument checks.
pub(crate) fn restricted_value(n: i64, d: i64, p: i64, l: i64, i: i64) -> BigInt {
    restricted_chase(n, d, p, l, i).0
}

fn restricted_chase(n: i64, d: i64, p: i64, l: i64, i: i64) -> (BigInt, Vec<String>) {
    // A^q = H^q(Ω^p(l-d)), B^q = H^q(Ω^p(l)); rank of A^q -> B^q.
    let a = |q: i64| if (0..=n).contains(&q) { bott_value(n, p, l - d, q) } else { BigInt::zero() };
    let b = |q: i64| if (0..=n).contains(&q) { bott_value(n, p, l, q) } else { BigInt::zero() };
    let rank = |q: i64| {
        if q == 0 {
            a(0)
        } else if q == n {
            b(n)
        } else {
            debug_assert!(a(q).is_zero() || b(q).is_zero());
            BigInt::zero()
        }
    };
    let coker = b(i) - rank(i);
    let ker = a(i + 1) - rank(i + 1);
    let trace = vec![
        format!("0 -> Ω^{p}({}) -> Ω^{p}({l}) -> Ω^{p}|_X({l}) -> 0 on P^{n}", l - d),
        format!(
            "coker(H^{i}(Ω^{p}({})) -> H^{i}(Ω^{p}({l}))) = {} - {} = {coker}",
            l - d,
            b(i),
            rank(i)
        ),
        format!(
            "ker(H^{}(Ω^{p}({})) -> H^{}(Ω^{p}({l}))) = {} - {} = {ker}",
            i + 1,
            l - d,
            i + 1,
            a(i + 1),
            rank(i + 1)
        ),
    ];
    (coker + ker, trace)
}

/// `H^i(X, Ω^p_{P^n}|_X ⊗ O_X(l))` for a smooth hypersurface of degree `d`.
///
/// The value is always exact. The only nonzero cases are `i = p, l = 0`,
/// `i = p - 1, l = d`, `i = 0, l > p` and `i = n - 1, l < d + p - n`.
pub fn h_restricted_forms(n: i64, d: i64, p: i64, l: i64, i: i64) -> Result<CohomologyDim> {
    check_hypersurface(n, d)?;
    if !(0..=n).contains(&p) {
        return Err(contract(format!("form degree p = {p} outside [0, {n}]")));
    }
    if !(0..n).contains(&i) {
        return Err(contract(format!("cohomological degree i = {i} outside [0, {}]", n - 1)));
    }
    let (value, mut trace) = restricted_chase(n, d, p, l, i);
    let case = if i == p && l == 0 {
        "case i = p, l = 0"
    } else if i == p - 1 && l == d {
        "case i = p - 1, l = d"
    } else if i == 0 && l > p {
        "case i = 0, l > p"
    } else if i == n - 1 && l < d + p - n {
        "case i = n - 1, l < d + p - n"
    } else {
        "no exceptional case applies"
    };
    trace.push(format!("h^{i}(X, Ω^{p}_P|_X({l})) = {value} [{case}]"));
    if n < 4 {
        trace.push(format!("note: n = {n} is outside the n >= 4 range of the classification"));
    }
    Ok(CohomologyDim::exact(value, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::Status;

    fn bott(n: i64, p: i64, l: i64, q: i64) -> BigInt {
        bott_pn(PnQuery::new(n, p, l, q).unwrap()).status().exact_value().unwrap()
    }

    #[test]
    fn bott_examples() {
        // Euler sequence: χ(Ω^1(2)) = 3 χ(O(1)) - χ(O(2)) = 9 - 6.
        assert_eq!(bott(2, 1, 2, 0), BigInt::from(3));
        assert_eq!(bott(3, 2, 0, 2), BigInt::from(1));
        assert_eq!(bott(4, 1, -6, 4), BigInt::from(70));
        // Serre dual of the previous one.
        assert_eq!(bott(4, 3, 6, 0), BigInt::from(70));
    }

    #[test]
    fn bott_rejects_bad_indices() {
        assert!(PnQuery::new(3, 4, 0, 0).is_err());
        assert!(PnQuery::new(3, 1, 0, -1).is_err());
    }

    #[test]
    fn koszul_examples() {
        let terms = |n, p| -> Vec<(i64, i64)> {
            koszul_resolution(n, p)
                .unwrap()
                .into_iter()
                .map(|t| (i64::try_from(&t.multiplicity).unwrap(), t.twist))
                .collect()
        };
        assert_eq!(terms(4, 2), vec![(10, -3), (5, -4), (1, -5)]);
        assert_eq!(terms(4, 4), vec![(1, -5)]);
        assert_eq!(terms(3, 0), vec![(4, -1), (6, -2), (4, -3), (1, -4)]);
        assert!(koszul_resolution(3, 4).is_err());
    }

    #[test]
    fn h_ox_examples() {
        let v = |n, d, l, i| h_ox(n, d, l, i).unwrap().status().clone();
        assert_eq!(v(4, 2, 3, 0), Status::Exact(BigInt::from(30)));
        assert_eq!(v(4, 2, 1, 2), Status::Zero);
        assert_eq!(v(4, 2, -5, 3), Status::Exact(BigInt::from(14)));
        assert!(h_ox(4, 2, 0, 4).is_err());
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(euler_char_ox(3, 4, 0).unwrap(), BigInt::from(2));
        assert_eq!(euler_char_ox(4, 2, 0).unwrap(), BigInt::from(1));
        assert_eq!(euler_char_ox(4, 5, 5).unwrap(), BigInt::from(125));
    }

    #[test]
    fn h_ox_euler_characteristic() {
        for n in 2..7 {
            for d in 1..6 {
                for l in -20..20 {
                    let chi: BigInt = (0..n)
                        .map(|i| {
                            let v = h_ox_value(n, d, l, i);
                            if i % 2 == 0 { v } else { -v }
                        })
                        .sum();
                    assert_eq!(chi, euler_char_ox_value(n, d, l), "n={n} d={d} l={l}");
                }
            }
        }
    }

    #[test]
    fn restricted_examples() {
        let v = |n, d, p, l, i| h_restricted_forms(n, d, p, l, i).unwrap().status().clone();
        assert_eq!(v(4, 3, 2, 1, 2), Status::Zero);
        // 40 from H^0(P^4, Ω^1(3)) plus 1 from H^1(P^4, Ω^1) because l = d.
        assert_eq!(v(4, 3, 1, 3, 0), Status::Exact(BigInt::from(41)));
        assert_eq!(v(4, 3, 1, 3, 1), Status::Zero);
        // away from l = d the H^1 correction disappears
        assert_eq!(v(4, 3, 1, 4, 0), Status::Exact(bott(4, 1, 4, 0) - bott(4, 1, 1, 0)));
        assert!(h_restricted_forms(4, 3, 1, 3, 4).is_err());
        assert!(h_restricted_forms(4, 3, 5, 3, 0).is_err());
    }

    #[test]
    fn restricted_p0_is_line_bundle() {
        for n in 2..7 {
            for d in 1..5 {
                for l in -12..12 {
                    for i in 0..n {
                        assert_eq!(restricted_value(n, d, 0, l, i), h_ox_value(n, d, l, i));
                    }
                }
            }
        }
    }

    #[test]
    fn n3_is_flagged() {
        let r = h_restricted_forms(3, 4, 1, 0, 1).unwrap();
        assert!(r.trace().iter().any(|t| t.contains("outside the n >= 4 range")));
        assert_eq!(r.status(), &Status::Exact(BigInt::from(1)));
    }

    #[test]
    fn restricted_nonzero_only_in_listed_cases() {
        for n in 4..7 {
            for d in 2..5 {
                for p in 0..=n {
                    for l in -15..=15 {
                        for i in 0..n {
                            let listed = (i == p && l == 0)
                                || (i == p - 1 && l == d)
                                || (i == 0 && l > p)
                                || (i == n - 1 && l < d + p - n);
                            let v = restricted_value(n, d, p, l, i);
                            if !listed {
                                assert!(v.is_zero(), "n={n} d={d} p={p} l={l} i={i}");
                            } else {
                                assert!(v > BigInt::zero(), "n={n} d={d} p={p} l={l} i={i}");
                            }
                        }
                    }
                }
            }
        }
    }
}
