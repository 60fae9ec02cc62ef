//! `H^i(X, Ω^p_X ⊗ O_X(l))` for a smooth hypersurface `X ⊂ P^n` of degree `d`,
//! `n ≥ 4`, so that `X` has dimension `N = n - 1 ≥ 3`.
//!
//! Off the line `i + p = N` the groups vanish except in three families, all of
//! which are computed exactly. On the line, the answer is governed by the
//! Jacobian ring: `h^{N-p}(Ω^p_X(l)) = dim R_{(p+1)d - l - n - 1}`. Without
//! further input only the ranges where this is forced by degree reasons are
//! reported as determined; the rest is `Unknown` unless a [`Resolution`] other
//! than [`Resolution::Closed`] is supplied.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dim::{CohomologyDim, Status};
use crate::error::{contract, Result};
use crate::milnor::{self, milnor_hilbert, socle_degree, SparsePolynomial};
use crate::pn::{h_ox_value, restricted_value};

/// How far to go when the degree arguments alone leave a group undetermined.
#[derive(Debug, Clone, Copy, Default)]
pub enum Resolution<'a> {
    /// Only what follows from degree bounds and exact sequences.
    #[default]
    Closed,
    /// Use the generic Hilbert function of the Jacobian ring, which is the
    /// Hilbert function for every smooth `f`.
    Jacobian,
    /// Rank computation for an explicit defining polynomial.
    Polynomial(&'a SparsePolynomial),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct XFormQuery {
    pub n: i64,
    pub d: i64,
    pub p: i64,
    pub l: i64,
    pub i: i64,
}

impl XFormQuery {
    pub fn new(n: i64, d: i64, p: i64, l: i64, i: i64) -> Result<Self> {
        check_nd(n, d)?;
        if !(0..n).contains(&p) || !(0..n).contains(&i) {
            return Err(contract(format!("need 0 <= p, i <= {}; got p = {p}, i = {i}", n - 1)));
        }
        Ok(Self { n, d, p, l, i })
    }

    /// The Serre-dual query `(N - p, -l, N - i)`.
    pub fn dual(self) -> Self {
        let top = self.n - 1;
        Self { p: top - self.p, l: -self.l, i: top - self.i, ..self }
    }
}

fn check_nd(n: i64, d: i64) -> Result<()> {
    if n < 4 {
        return Err(contract(format!("need n >= 4, got {n}")));
    }
    if d < 2 {
        return Err(contract(format!("need d >= 2, got {d}")));
    }
    Ok(())
}

/// `h^{q, n-1-q}(X)`: primitive part from the Jacobian ring plus the hyperplane
/// class when `2q = n - 1`.
pub fn hodge_middle(n: i64, d: i64, q: i64) -> Result<BigInt> {
    if n < 3 || d < 2 || !(0..n).contains(&q) {
        return Err(contract(format!("hodge_middle needs n >= 3, d >= 2, 0 <= q <= n-1; got n = {n}, d = {d}, q = {q}")));
    }
    let prim = milnor_hilbert(n, d)?.dim((n - q) * d - n - 1);
    Ok(if 2 * q == n - 1 { prim + 1 } else { prim })
}

/// Least `r` with the Jacobian map onto `H^0(P^n, O(d + r))` surjective for
/// every smooth `f`, together with `ρ = (n+1)(d-2)`.
pub fn jacobian_surjectivity_threshold(n: i64, d: i64) -> Result<(i64, i64)> {
    if n < 2 || d < 2 {
        return Err(contract(format!("need n >= 2 and d >= 2, got n = {n}, d = {d}")));
    }
    Ok((n * (d - 2) - 1, socle_degree(n, d)))
}

/// `H^{n-2}(X, Ω^1_X(l))` with the default [`Resolution::Closed`].
pub fn borderline_p1_status(n: i64, d: i64, l: i64) -> Result<CohomologyDim> {
    borderline_p1_with(n, d, l, Resolution::Closed)
}

pub fn borderline_p1_with(n: i64, d: i64, l: i64, res: Resolution<'_>) -> Result<CohomologyDim> {
    check_nd(n, d)?;
    let k = 2 * d - l - n - 1;
    let head = format!("h^{}(X, Ω^1_X({l})) = dim R_{k}", n - 2);
    if l >= 2 * d - n {
        return Ok(CohomologyDim::zero(vec![head, format!("l >= 2d-n = {}: target degree {k} is negative", 2 * d - n)]));
    }
    if l > d - n {
        let value = h_ox_value(n, d, k, 0);
        return Ok(CohomologyDim::exact(
            value.clone(),
            vec![
                head,
                format!("d-n < l <= 2d-n-1: the Jacobian map into H^0(O_X({k})) has zero source, cokernel h^0(O_X({k})) = {value}"),
            ],
        ));
    }
    if l <= (1 - n) * d + n {
        return Ok(CohomologyDim::zero(vec![
            head,
            format!("l <= (1-n)d+n = {}: degree {k} exceeds the socle degree {}", (1 - n) * d + n, socle_degree(n, d)),
        ]));
    }
    if l == 0 {
        let value = hodge_middle(n, d, 1)?;
        return Ok(CohomologyDim::exact(value.clone(), vec![head, format!("untwisted: h^{{1,{}}} = {value}", n - 2)]));
    }
    match res {
        Resolution::Closed => Ok(CohomologyDim::unknown(vec![
            head,
            format!(
                "window (1-n)d+n < l <= d-n = ({}, {}]: not determined by degree bounds; resolve with the Jacobian ring",
                (1 - n) * d + n,
                d - n
            ),
        ])),
        Resolution::Jacobian => {
            let value = milnor_hilbert(n, d)?.dim(k);
            Ok(CohomologyDim::exact(value.clone(), vec![head, format!("generic Hilbert function of R: dim R_{k} = {value}")]))
        }
        Resolution::Polynomial(f) => {
            if f.n() as i64 != n || i64::from(f.degree()) != d {
                return Err(contract(format!(
                    "polynomial has n = {}, d = {}, query has n = {n}, d = {d}",
                    f.n(),
                    f.degree()
                )));
            }
            let value = milnor::ideal_dim_at(f, k)?;
            Ok(CohomologyDim::exact(
                BigInt::from(value),
                vec![head, format!("rank computation mod {}: dim R_{k} = {value}", f.prime())],
            ))
        }
    }
}

/// `H^i(X, Ω^p_X(l))` with the default [`Resolution::Closed`].
pub fn classify_form_cohomology(q: XFormQuery) -> Result<CohomologyDim> {
    classify_with(q, Resolution::Closed)
}

pub fn classify_with(q: XFormQuery, res: Resolution<'_>) -> Result<CohomologyDim> {
    let q = XFormQuery::new(q.n, q.d, q.p, q.l, q.i)?;
    let XFormQuery { n, d, p, l, i } = q;
    let top = n - 1;
    let head = format!("h^{i}(X, Ω^{p}_X({l})) on a degree {d} hypersurface in P^{n}");
    let dim = if i + p != top {
        off_line(q)
    } else if i == 0 {
        let s = l + d - n - 1;
        let value = h_ox_value(n, d, s, 0);
        CohomologyDim::exact(value.clone(), vec![format!("Ω^{top}_X = ω_X = O_X(d-n-1): h^0(O_X({s})) = {value}")])
    } else if i == top {
        let value = h_ox_value(n, d, l, top);
        CohomologyDim::exact(value.clone(), vec![format!("h^{top}(O_X({l})) = h^0(O_X({})) = {value}", d - n - 1 - l)])
    } else {
        on_line(q, res)?
    };
    Ok(dim.push_front(head))
}

fn off_line(q: XFormQuery) -> CohomologyDim {
    let XFormQuery { n, d, p, l, i } = q;
    let top = n - 1;
    if i == p && l == 0 {
        CohomologyDim::exact(BigInt::one(), vec!["i = p, l = 0: restriction of the hyperplane class power".into()])
    } else if i == 0 && l > p {
        let (value, mut trace) = h0_forms(n, d, p, l);
        trace.insert(0, format!("i = 0, l > p: h^0 via 0 -> Ω^(p-1)_X(l-d) -> Ω^p|_X(l) -> Ω^p_X(l) -> 0"));
        CohomologyDim::exact(value, trace)
    } else if i == top && l < p - top {
        let (value, mut trace) = h0_forms(n, d, top - p, -l);
        trace.insert(0, format!("i = N, l < p-N: Serre dual to h^0(Ω^{}_X({}))", top - p, -l));
        CohomologyDim::exact(value, trace)
    } else {
        CohomologyDim::zero(vec!["i + p != N and no exceptional case applies: vanishing".into()])
    }
}

/// `h^0(Ω^p_X(l))` for `p < N`.
fn h0_forms(n: i64, d: i64, p: i64, l: i64) -> (BigInt, Vec<String>) {
    if p == 0 {
        let value = h_ox_value(n, d, l, 0);
        return (value.clone(), vec![format!("h^0(O_X({l})) = {value}")]);
    }
    if l <= p {
        return (BigInt::zero(), vec![format!("h^0(Ω^{p}_X({l})) = 0 since l <= p")]);
    }
    let restricted = restricted_value(n, d, p, l, 0);
    let (lower, mut trace) = h0_forms(n, d, p - 1, l - d);
    let value = &restricted - lower;
    trace.push(format!("h^0(Ω^{p}_X({l})) = h^0(Ω^{p}|_X({l})) - h^0(Ω^{}_X({})) = {restricted} - ... = {value}", p - 1, l - d));
    (value, trace)
}

fn on_line(q: XFormQuery, res: Resolution<'_>) -> Result<CohomologyDim> {
    let XFormQuery { n, d, p, l, i } = q;
    let top = n - 1;
    if l == 0 {
        let value = hodge_middle(n, d, p)?;
        return Ok(CohomologyDim::exact(value.clone(), vec![format!("untwisted middle Hodge number h^{{{p},{i}}} = {value}")]));
    }
    let upper = (p + 1) * d - n;
    let lower = (p - n) * d + n;
    if l >= upper || l <= lower {
        return Ok(CohomologyDim::zero(vec![format!("i + p = N: vanishing since l >= {upper} or l <= {lower}")]));
    }
    let down = || -> Result<CohomologyDim> {
        let twist = l - (p - 1) * d;
        Ok(borderline_p1_with(n, d, twist, res)?
            .push_front(format!("H^{i}(Ω^{p}_X({l})) ≅ H^{}(Ω^1_X({twist})) lowering p", top - 1)))
    };
    let up = || -> Result<CohomologyDim> {
        let twist = l + (i - 1) * d;
        let (status, trace) = borderline_p1_with(n, d, -twist, res)?.into_parts();
        let mut lines = vec![
            format!("H^{i}(Ω^{p}_X({l})) ≅ H^1(Ω^{}_X({twist})) raising p", top - 1),
            format!("Serre duality: H^1(Ω^{}_X({twist})) dual to H^{}(Ω^1_X({}))", top - 1, top - 1, -twist),
        ];
        lines.extend(trace);
        Ok(with_status(status, lines))
    };
    if p == 1 {
        Ok(borderline_p1_with(n, d, l, res)?)
    } else if i > p {
        down()
    } else if i < p {
        up()
    } else {
        Ok(merge(down()?, up()?))
    }
}

fn with_status(status: Status, trace: Vec<String>) -> CohomologyDim {
    match status {
        Status::Zero => CohomologyDim::zero(trace),
        Status::Exact(v) => CohomologyDim::exact(v, trace),
        Status::NonzeroAtLeast(b) => CohomologyDim::nonzero_at_least(b, trace),
        Status::Unknown => CohomologyDim::unknown(trace),
    }
}

fn rank(s: &Status) -> u8 {
    match s {
        Status::Zero | Status::Exact(_) => 2,
        Status::NonzeroAtLeast(_) => 1,
        Status::Unknown => 0,
    }
}

/// Combines two independent derivations of the same group, keeping the sharper one.
fn merge(a: CohomologyDim, b: CohomologyDim) -> CohomologyDim {
    if a.status().is_determined() && b.status().is_determined() {
        debug_assert_eq!(a.status(), b.status(), "routes disagree");
    }
    let (keep, other) = if rank(b.status()) > rank(a.status()) { (b, a) } else { (a, b) };
    let mut keep = keep;
    for line in other.trace() {
        keep = keep.push(format!("cross-check: {line}"));
    }
    keep
}

/// Topological Euler characteristic of a smooth degree `d` hypersurface in `P^n`.
pub fn topological_euler(n: i64, d: i64) -> BigInt {
    let one_minus_d = BigInt::from(1 - d);
    (num_traits::pow(one_minus_d, (n + 1) as usize) - 1) / d + n + 1
}
