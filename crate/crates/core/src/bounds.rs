//! Degree and length bounds for a divisor `D = X ∩ Y`, where `X ⊂ P^n` is a
//! smooth hypersurface of degree `d` and `Y` is a hypersurface of degree `m`.

use num_bigint::BigInt;

use crate::error::{contract, Result};
use crate::numeric::{binom, ceil_div};

fn check(n: i64, d: i64, m: i64) -> Result<()> {
    if n < 4 {
        return Err(contract(format!("need n >= 4, got {n}")));
    }
    if d < 1 {
        return Err(contract(format!("need d >= 1, got {d}")));
    }
    if m < 1 {
        return Err(contract(format!("need m >= 1, got {m}")));
    }
    Ok(())
}

/// `max{k(d-2), k(d-2) + (n-2)(d-1) - m}`.
pub fn twist(n: i64, d: i64, m: i64, k: i64) -> i64 {
    let base = k * (d - 2);
    base.max(base + (n - 2) * (d - 1) - m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthBound {
    pub l: i64,
    pub bound: BigInt,
}

/// Upper bound for the length of the subscheme `Z_k` cut out by `I_k(D)`.
pub fn length_bound(n: i64, d: i64, m: i64, k: i64) -> Result<LengthBound> {
    check(n, d, m)?;
    if k < 0 {
        return Err(contract(format!("need k >= 0, got {k}")));
    }
    let l = twist(n, d, m, k);
    let top = (k + 1) * m + l;
    let bound = binom(top + d - 1, n as u32) - binom(top - 1, n as u32);
    Ok(LengthBound { l, bound })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBound {
    pub k: i64,
    pub l: i64,
    pub degree: i64,
    pub interpretation: String,
}

fn degree_bound(n: i64, d: i64, m: i64, k: i64, l: i64, what: &str) -> DegreeBound {
    let degree = (k + 1) * m + l + d - n - 1;
    let interpretation = if degree < 0 {
        "S_t empty".to_string()
    } else {
        format!("S_t {what} hypersurfaces of degree at least {degree}")
    };
    DegreeBound { k, l, degree, interpretation }
}

/// Least degree in which the points of multiplicity at least `t` impose
/// independent conditions. A negative degree means there are no such points.
pub fn independent_conditions_degree(n: i64, d: i64, m: i64, t: i64) -> Result<DegreeBound> {
    check(n, d, m)?;
    if t < 2 {
        return Err(contract(format!("need t >= 2, got {t}")));
    }
    let k = ceil_div(n, t) - 1;
    let l = twist(n, d, m, k).max(0);
    Ok(degree_bound(n, d, m, k, l, "imposes independent conditions on"))
}

/// `k_{t,j}`.
pub fn jet_index(n: i64, t: i64, j: i64) -> Result<i64> {
    if t < 3 || j < 1 {
        return Err(contract(format!("need t >= 3 and j >= 1, got t = {t}, j = {j}")));
    }
    let num = n - 1 - t + j;
    Ok(if j <= t - 1 { ceil_div(num, t) } else { ceil_div(num, t - 2) })
}

/// Least degree separating `(j-1)`-jets along the points of multiplicity at least `t`.
pub fn jet_separation_degree(n: i64, d: i64, m: i64, t: i64, j: i64) -> Result<DegreeBound> {
    check(n, d, m)?;
    let k = jet_index(n, t, j)?;
    let l = twist(n, d, m, k);
    Ok(degree_bound(n, d, m, k, l, &format!("separates {}-jets on", j - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn length_examples() {
        assert_eq!(length_bound(4, 2, 2, 1).unwrap(), LengthBound { l: 0, bound: 5.into() });
        assert_eq!(length_bound(4, 2, 2, 0).unwrap(), LengthBound { l: 0, bound: 0.into() });
        // l = max{1, 1 + 3*2 - 2} = 5, C(11,5) - C(8,5)
        assert_eq!(length_bound(5, 3, 2, 1).unwrap(), LengthBound { l: 5, bound: 406.into() });
        assert!(length_bound(5, 3, 2, -1).is_err());
        assert!(length_bound(3, 3, 2, 1).is_err());
    }

    #[test]
    fn independent_examples() {
        let b = independent_conditions_degree(4, 2, 2, 2).unwrap();
        assert_eq!(b.degree, 1);
        assert_eq!(independent_conditions_degree(4, 2, 2, 3).unwrap().degree, 1);
        let b = independent_conditions_degree(4, 2, 2, 4).unwrap();
        assert_eq!(b.degree, -1);
        assert_eq!(b.interpretation, "S_t empty");
        let b = independent_conditions_degree(5, 2, 3, 5).unwrap();
        assert_eq!((b.k, b.l, b.degree), (0, 0, -1));
        assert!(independent_conditions_degree(5, 2, 3, 1).is_err());
    }

    #[test]
    fn quadric_multiplicity_n_is_excluded() {
        for n in 4..=12 {
            for m in 1..=n - 2 {
                assert_eq!(independent_conditions_degree(n, 2, m, n).unwrap().degree, -1, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn jet_examples() {
        assert_eq!(jet_index(4, 3, 1).unwrap(), 1);
        assert_eq!(jet_index(4, 3, 3).unwrap(), 3);
        assert_eq!(jet_separation_degree(4, 2, 2, 3, 1).unwrap().degree, 1);
        assert!(jet_index(4, 2, 1).is_err());
        assert!(jet_index(4, 3, 0).is_err());
    }

    #[test]
    fn projective_space_specialization() {
        // d = 1: degree (k+1)m - n with k = ⌈n/t⌉ - 1
        for n in 4..=8 {
            for m in 1..=6 {
                for t in 2..=n {
                    let b = independent_conditions_degree(n, 1, m, t).unwrap();
                    assert_eq!(b.degree, (b.k + 1) * m - n);
                }
            }
        }
    }

    #[test]
    fn ceiling_conventions_agree() {
        // ⌈n/t⌉ - 1 against ⌈n/t - 1⌉ computed with rationals
        for n in 1..=60i64 {
            for t in 1..=20i64 {
                let a = ceil_div(n, t) - 1;
                let r = num_rational::Ratio::new(n - t, t);
                assert_eq!(a, r.ceil().to_integer());
            }
        }
    }

    proptest! {
        #[test]
        fn length_bound_monotone_in_m(n in 4i64..=7, d in 2i64..=5, k in 0i64..=4) {
            let mut prev = BigInt::from(0);
            for m in 1..=10 {
                let b = length_bound(n, d, m, k).unwrap().bound;
                prop_assert!(b >= BigInt::from(0));
                prop_assert!(b >= prev);
                prev = b;
            }
        }

        #[test]
        fn first_jet_matches_independent_conditions(n in 4i64..=12, d in 2i64..=5, m in 1i64..=8, t in 3i64..=12) {
            let jet = jet_separation_degree(n, d, m, t, 1).unwrap();
            let ind = independent_conditions_degree(n, d, m, t).unwrap();
            prop_assert_eq!(jet.k, ind.k);
            prop_assert!(jet.degree >= ind.degree);
            prop_assert_eq!(jet.degree, ind.degree);
        }
    }
}
