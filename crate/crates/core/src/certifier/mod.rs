//! Vanishing certificates for `H^i(X, ω_X(kZ) ⊗ I_k(D) ⊗ L)` on a smooth
//! hypersurface, where `D` is an effective `Q`-divisor of degree `m` with
//! support `Z` and `⌈D⌉ = Z + aH` in the Picard group.
//!
//! A [`Verdict`] answers `Yes` only together with a list of exact inequalities
//! that all hold. Anything not covered by a rule is `Unknown`, never `No`.

mod akl;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{contract, Result};
use crate::numeric::{format_rational, rational};

pub use akl::{crosscheck_prop72, AklProver, ConditionNode, CrossCheckReport, InequalityScope, NodeStatus, PremiseMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorData {
    pub n: i64,
    pub d: i64,
    /// Degree of `D`.
    pub m: BigRational,
    /// Degree of the support `Z`.
    pub m_z: i64,
    /// `O_X(Z - ⌈D⌉) ≅ O_X(-a)`.
    pub a: i64,
    pub reduced: bool,
}

impl DivisorData {
    pub fn new(n: i64, d: i64, m: BigRational, m_z: i64, a: i64) -> Result<Self> {
        let dd = Self { n, d, m, m_z, a, reduced: false };
        dd.validate()?;
        Ok(dd)
    }

    /// A reduced divisor of integral degree `m`: `a = 0` and `Z = D`.
    pub fn reduced(n: i64, d: i64, m: i64) -> Result<Self> {
        let dd = Self { n, d, m: rational(m), m_z: m, a: 0, reduced: true };
        dd.validate()?;
        Ok(dd)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 1 {
            return Err(contract(format!("degree d = {} must be positive", self.d)));
        }
        if !self.m.is_positive() {
            return Err(contract(format!("divisor degree m = {} must be positive", format_rational(&self.m))));
        }
        if self.m_z < 1 {
            return Err(contract(format!("support degree mZ = {} must be at least 1", self.m_z)));
        }
        if self.a < 0 {
            return Err(contract(format!("a = {} must be non-negative", self.a)));
        }
        let ceil = rational(self.m_z + self.a);
        if ceil < self.m {
            return Err(contract(format!(
                "deg ⌈D⌉ = mZ + a = {} is smaller than m = {}",
                ceil,
                format_rational(&self.m)
            )));
        }
        if rational(self.a) >= self.m {
            return Err(contract(format!(
                "a = {} must be smaller than m = {} since ⌈D⌉ - D < Z",
                self.a,
                format_rational(&self.m)
            )));
        }
        if self.reduced && (!self.m.is_integer() || self.a != 0 || rational(self.m_z) != self.m) {
            return Err(contract("a reduced divisor needs integral m, a = 0 and mZ = m"));
        }
        Ok(())
    }
}

/// The class `h_coeff · H + z_coeff · Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AmpleClass {
    pub h_coeff: i64,
    pub z_coeff: i64,
}

impl AmpleClass {
    pub fn new(h_coeff: i64, z_coeff: i64) -> Self {
        Self { h_coeff, z_coeff }
    }
}

impl fmt::Display for AmpleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}H + {}Z", self.h_coeff, self.z_coeff)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

/// `lhs relation rhs`, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub label: String,
    pub lhs: BigRational,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl InequalityCheck {
    pub fn new(label: impl Into<String>, lhs: BigRational, relation: Relation, rhs: BigRational) -> Self {
        Self { label: label.into(), lhs, relation, rhs }
    }

    pub fn ints(label: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Self {
        Self::new(label, rational(lhs), relation, rational(rhs))
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Ge => self.lhs >= self.rhs,
            Relation::Gt => self.lhs > self.rhs,
        }
    }
}

impl fmt::Display for InequalityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.label,
            format_rational(&self.lhs),
            self.relation.symbol(),
            format_rational(&self.rhs),
            if self.holds() { "holds" } else { "fails" }
        )
    }
}

/// Decides ampleness of a class and returns the inequality that witnesses it.
pub trait Ampleness {
    fn check(&self, label: &str, class: AmpleClass) -> InequalityCheck;
}

/// `αH + βZ` is ample iff `α + β·mZ > 0`: the Picard group is generated by
/// `H` and `Z` is a complete intersection of degree `mZ`.
#[derive(Debug, Clone, Copy)]
pub struct DegreeModel {
    pub m_z: i64,
}

impl Ampleness for DegreeModel {
    fn check(&self, label: &str, class: AmpleClass) -> InequalityCheck {
        let lhs = BigInt::from(class.h_coeff) + BigInt::from(class.z_coeff) * self.m_z;
        InequalityCheck::new(format!("{label}: {class} ample"), BigRational::from_integer(lhs), Relation::Gt, BigRational::zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vanishes {
    Yes,
    Unknown,
}

impl Vanishes {
    pub fn label(self) -> &'static str {
        match self {
            Vanishes::Yes => "yes",
            Vanishes::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub vanishes: Vanishes,
    pub certificate: Vec<InequalityCheck>,
    pub citation: Option<String>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn yes(rule: &str, certificate: Vec<InequalityCheck>) -> Self {
        debug_assert!(!certificate.is_empty() && certificate.iter().all(InequalityCheck::holds));
        Self { vanishes: Vanishes::Yes, certificate, citation: Some(rule.to_string()), notes: Vec::new() }
    }

    fn unknown(notes: Vec<String>) -> Self {
        Self { vanishes: Vanishes::Unknown, certificate: Vec::new(), citation: None, notes }
    }

    pub fn is_yes(&self) -> bool {
        self.vanishes == Vanishes::Yes
    }
}

/// Returns the first rule whose checks all hold; otherwise `Unknown` listing the failures.
fn first_rule(rules: Vec<(&str, Vec<InequalityCheck>)>) -> Verdict {
    let mut notes = Vec::new();
    for (rule, checks) in rules {
        if checks.iter().all(InequalityCheck::holds) {
            return Verdict::yes(rule, checks);
        }
        for c in checks.iter().filter(|c| !c.holds()) {
            notes.push(format!("{rule}: {c}"));
        }
    }
    if notes.is_empty() {
        notes.push("no rule applies".into());
    }
    Verdict::unknown(notes)
}

/// Vanishing of `H^i(X, ω_X(kZ) ⊗ I_k(D) ⊗ O_X(l))` for `X ⊂ P^n`, `n ≥ 4`.
pub fn certify_thm1(dd: &DivisorData, k: i64, l: i64, i: i64) -> Result<Verdict> {
    certify_thm1_with(dd, k, l, i, &DegreeModel { m_z: dd.m_z })
}

pub fn certify_thm1_with(dd: &DivisorData, k: i64, l: i64, i: i64, ample: &dyn Ampleness) -> Result<Verdict> {
    dd.validate()?;
    let (n, d, a) = (dd.n, dd.d, dd.a);
    if n < 4 {
        return Err(contract(format!("n = {n} < 4; use the surface certifier for n = 3")));
    }
    if d < 2 {
        return Err(contract(format!("d = {d} < 2 is the projective-space case, not handled here")));
    }
    if k < 0 {
        return Err(contract(format!("k = {k} must be non-negative")));
    }
    if !(0..n).contains(&i) {
        return Err(contract(format!("cohomological degree i = {i} outside [0, {}]", n - 1)));
    }
    let mut rules = Vec::new();
    if (2..=n - 2).contains(&i) {
        rules.push((
            "isolated.middle-degrees",
            vec![
                InequalityCheck::ints("i >= 2", i, Relation::Ge, 2),
                InequalityCheck::ints("n-2 >= i", n - 2, Relation::Ge, i),
                InequalityCheck::ints("k >= 0", k, Relation::Ge, 0),
            ],
        ));
    }
    if i == n - 1 {
        if dd.reduced {
            rules.push((
                "isolated.top-degree-reduced",
                vec![InequalityCheck::new("l + km > 0", rational(l) + rational(k) * &dd.m, Relation::Gt, BigRational::zero())],
            ));
        } else {
            rules.push(("isolated.top-degree-ample", vec![ample.check("(l-a)H + kZ", AmpleClass::new(l - a, k))]));
        }
    }
    if i == 1 && k >= 1 {
        let base = k * (d - 2);
        rules.push((
            "isolated.h1-threshold",
            vec![
                InequalityCheck::new("l >= k(d-2) + m", rational(l), Relation::Ge, rational(base) + &dd.m),
                InequalityCheck::ints("l >= k(d-2) + (n-2)(d-1) + a", l, Relation::Ge, base + (n - 2) * (d - 1) + a),
            ],
        ));
    }
    if k == 0 && i >= 1 {
        rules.push(("nadel.k0", vec![InequalityCheck::new("l >= m", rational(l), Relation::Ge, dd.m.clone())]));
    }
    Ok(first_rule(rules))
}

fn check_surface(dd: &DivisorData, k: i64) -> Result<()> {
    dd.validate()?;
    if dd.n != 3 {
        return Err(contract(format!("surface certifier needs n = 3, got {}", dd.n)));
    }
    if dd.d < 2 {
        return Err(contract(format!("need d >= 2, got {}", dd.d)));
    }
    if k < 0 {
        return Err(contract(format!("k = {k} must be non-negative")));
    }
    Ok(())
}

/// Vanishing of `H^i(X, ω_X(kZ) ⊗ I_k(D) ⊗ L)` on a surface `X ⊂ P^3`, with `L` the class `line`.
pub fn certify_surface(dd: &DivisorData, k: i64, line: AmpleClass, i: i64, ample: &dyn Ampleness) -> Result<Verdict> {
    check_surface(dd, k)?;
    if !(0..=2).contains(&i) {
        return Err(contract(format!("cohomological degree i = {i} outside [0, 2]")));
    }
    let (alpha, beta, a, shift) = (line.h_coeff, line.z_coeff, dd.a, 2 - dd.d);
    let rules = match i {
        2 => {
            let (label, rule) = if dd.reduced { ("L + kD", "surface.high-degree-reduced") } else { ("L + (k+1)Z - ⌈D⌉", "surface.high-degree") };
            vec![(rule, vec![ample.check(label, AmpleClass::new(alpha - a, beta + k))])]
        }
        1 => {
            let first = AmpleClass::new(alpha - a + (k - 1) * shift, beta - 1);
            let mut checks = Vec::new();
            if dd.reduced {
                checks.push(ample.check("(L - D)((k-1)(2-d))", first));
                for j in 0..k {
                    let class = AmpleClass::new(alpha + (k - j + 1) * shift, beta + j);
                    checks.push(ample.check(&format!("L({j}D)((k-j+1)(2-d)), j = {j}"), class));
                }
                vec![("surface.h1-reduced", checks)]
            } else {
                checks.push(ample.check("(L - ⌈D⌉)((k-1)(2-d))", first));
                for j in 1..=k {
                    let class = AmpleClass::new(alpha - a + (k - j + 2) * shift, beta + j - 1);
                    checks.push(ample.check(&format!("L(jZ - ⌈D⌉)((k-j+2)(2-d)), j = {j}"), class));
                }
                vec![("surface.h1", checks)]
            }
        }
        _ => Vec::new(),
    };
    Ok(first_rule(rules))
}

/// Vanishing of `H^1(X, Ω^1_X ⊗ L)` on a surface of degree `d` in `P^3`.
pub fn certify_surface_omega1(d: i64, line: AmpleClass, ample: &dyn Ampleness) -> Result<Verdict> {
    if d < 2 {
        return Err(contract(format!("need d >= 2, got {d}")));
    }
    let class = AmpleClass::new(line.h_coeff + 4 - 2 * d, line.z_coeff);
    Ok(first_rule(vec![("surface.omega1", vec![ample.check("L(4-2d)", class)])]))
}
