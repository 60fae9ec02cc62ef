//! Recursive sufficient conditions for `A_{i,k,l}`:
//! `H^i(X, ω_X ⊗ O_X((k+1)m + l) ⊗ I_k(D)) = 0`.
//!
//! Every premise of a clause has strictly smaller `k`, so the evaluation
//! terminates and proved nodes form a DAG of depth at most `k + 1`.

use std::collections::{HashMap, HashSet};
use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::Signed;

use super::{InequalityCheck, Relation};
use crate::error::{contract, Result};
use crate::numeric::rational;

/// Which reading of the twist in the `A_{i-1,k-r,·}` premise family to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum PremiseMode {
    /// Twist `rd`, as printed in the statement.
    Verbatim,
    /// Twist `l + rd`, as it appears in the argument.
    #[default]
    Corrected,
}

/// Which `r` the inequality `l >= (n-r)d - n - (k-r+1)m` is imposed for.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum InequalityScope {
    #[default]
    EveryR,
    /// Only `r = 1`.
    FirstR,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeStatus {
    Proved,
    Unknown,
    InProgress,
}

impl NodeStatus {
    pub fn label(self) -> &'static str {
        match self {
            NodeStatus::Proved => "proved",
            NodeStatus::Unknown => "unknown",
            NodeStatus::InProgress => "in_progress",
        }
    }
}

pub type NodeKey = (i64, i64, i64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionNode {
    pub i: i64,
    pub k: i64,
    pub l: i64,
    pub status: NodeStatus,
    pub rule: String,
    /// Keys of the premises that were evaluated, in order. For an unproved
    /// node the last one is the first premise that failed.
    pub premises: Vec<NodeKey>,
    pub inequalities: Vec<InequalityCheck>,
}

impl ConditionNode {
    pub fn key(&self) -> NodeKey {
        (self.i, self.k, self.l)
    }
}

pub struct AklProver {
    n: i64,
    d: i64,
    m: BigRational,
    mode: PremiseMode,
    scope: InequalityScope,
    memo: HashMap<NodeKey, ConditionNode>,
    max_depth: usize,
    revisits: usize,
}

impl AklProver {
    pub fn new(n: i64, d: i64, m: BigRational, mode: PremiseMode) -> Result<Self> {
        if n < 4 || d < 2 {
            return Err(contract(format!("need n >= 4 and d >= 2, got n = {n}, d = {d}")));
        }
        if !m.is_positive() {
            return Err(contract("m must be positive"));
        }
        Ok(Self { n, d, m, mode, scope: InequalityScope::default(), memo: HashMap::new(), max_depth: 0, revisits: 0 })
    }

    pub fn with_scope(mut self, scope: InequalityScope) -> Self {
        self.scope = scope;
        self.memo.clear();
        self
    }

    /// Evaluates `A_{i,k,l}`; `i >= 1` and `k >= 0`.
    pub fn prove(&mut self, i: i64, k: i64, l: i64) -> Result<&ConditionNode> {
        if i < 1 || k < 0 {
            return Err(contract(format!("need i >= 1 and k >= 0, got i = {i}, k = {k}")));
        }
        self.eval((i, k, l), 1);
        Ok(&self.memo[&(i, k, l)])
    }

    pub fn node(&self, key: NodeKey) -> Option<&ConditionNode> {
        self.memo.get(&key)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &ConditionNode> {
        self.memo.values()
    }

    /// Deepest recursion reached so far, counting the root as 1.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Number of times a node was reached while it was still being evaluated.
    pub fn revisits(&self) -> usize {
        self.revisits
    }

    /// Length of the longest premise chain below `key`, counting `key`.
    pub fn dag_depth(&self, key: NodeKey) -> usize {
        fn go(p: &AklProver, key: NodeKey, cache: &mut HashMap<NodeKey, usize>) -> usize {
            if let Some(&v) = cache.get(&key) {
                return v;
            }
            let below = p.memo.get(&key).map_or(0, |node| node.premises.iter().map(|&c| go(p, c, cache)).max().unwrap_or(0));
            cache.insert(key, below + 1);
            below + 1
        }
        go(self, key, &mut HashMap::new())
    }

    /// Flattened proof tree below `key`, each node once, in discovery order.
    pub fn subtree(&self, key: NodeKey) -> Vec<&ConditionNode> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![key];
        while let Some(k) = stack.pop() {
            if !seen.insert(k) {
                continue;
            }
            if let Some(node) = self.memo.get(&k) {
                out.push(node);
                stack.extend(node.premises.iter().rev());
            }
        }
        out
    }

    fn leaf(&mut self, key: NodeKey, status: NodeStatus, rule: &str) -> NodeStatus {
        let (i, k, l) = key;
        self.memo.insert(key, ConditionNode { i, k, l, status, rule: rule.into(), premises: Vec::new(), inequalities: Vec::new() });
        status
    }

    fn eval(&mut self, key: NodeKey, depth: usize) -> NodeStatus {
        self.max_depth = self.max_depth.max(depth);
        if let Some(node) = self.memo.get(&key) {
            if node.status == NodeStatus::InProgress {
                self.revisits += 1;
                return NodeStatus::Unknown;
            }
            return node.status;
        }
        let (i, k, l) = key;
        if i > self.n - 1 {
            return self.leaf(key, NodeStatus::Proved, "above cohomological dimension");
        }
        if k == 0 {
            return if i >= 1 && l >= 0 {
                self.leaf(key, NodeStatus::Proved, "base: k = 0, l >= 0 (Nadel)")
            } else {
                self.leaf(key, NodeStatus::Unknown, "base: k = 0 needs i >= 1 and l >= 0")
            };
        }
        if i < 1 {
            return self.leaf(key, NodeStatus::Unknown, "no clause for i < 1");
        }
        self.leaf(key, NodeStatus::InProgress, "");
        let (rule, premises, inequalities) = if i >= 2 { self.clause_high(i, k, l) } else { self.clause_h1(k, l) };
        let mut status = NodeStatus::Proved;
        let mut evaluated = Vec::new();
        if inequalities.iter().any(|c| !c.holds()) {
            status = NodeStatus::Unknown;
        } else {
            for p in premises {
                evaluated.push(p);
                if self.eval(p, depth + 1) != NodeStatus::Proved {
                    status = NodeStatus::Unknown;
                    break;
                }
            }
        }
        self.memo.insert(key, ConditionNode { i, k, l, status, rule: rule.into(), premises: evaluated, inequalities });
        status
    }

    fn clause_high(&self, i: i64, k: i64, l: i64) -> (&'static str, Vec<NodeKey>, Vec<InequalityCheck>) {
        let d = self.d;
        let mut out = vec![(i, k - 1, l)];
        for r in 1..=k {
            let twist = match self.mode {
                PremiseMode::Verbatim => r * d,
                PremiseMode::Corrected => l + r * d,
            };
            out.push((i - 1, k - r, twist));
        }
        for r in 1..=k {
            for j in i + 1..=i + r {
                for t in 0..=j - i {
                    out.push((j + t - 1, k - r, l + (i + r - j) * d - i + j - t));
                }
            }
        }
        let rule = match self.mode {
            PremiseMode::Verbatim => "recursion i >= 2 (verbatim)",
            PremiseMode::Corrected => "recursion i >= 2 (corrected)",
        };
        (rule, dedup(out), Vec::new())
    }

    fn clause_h1(&self, k: i64, l: i64) -> (&'static str, Vec<NodeKey>, Vec<InequalityCheck>) {
        let (n, d) = (self.n, self.d);
        let mut out = Vec::new();
        for r in 0..k {
            out.push((1, k - 1, l + r * d));
        }
        for r in 1..k {
            for j in 2..=1 + r {
                for t in 0..j {
                    out.push((j + t, k - r - 1, l + (r - j + 1) * d + j - t - 1));
                }
            }
        }
        for r in 1..=k {
            for j in r..=n - 3 {
                for t in 0..=j + 1 {
                    out.push((j + t, k - r, l + (r - j - 1) * d + j - t + 1));
                }
            }
        }
        let rs = match self.scope {
            InequalityScope::EveryR => 1..=k,
            InequalityScope::FirstR => 1..=1,
        };
        let inequalities = rs
            .map(|r| {
                let rhs = rational((n - r) * d - n) - rational(k - r + 1) * &self.m;
                InequalityCheck::new(format!("r = {r}: l >= (n-r)d - n - (k-r+1)m"), rational(l), Relation::Ge, rhs)
            })
            .collect();
        ("recursion i = 1", dedup(out), inequalities)
    }
}

fn dedup(keys: Vec<NodeKey>) -> Vec<NodeKey> {
    let mut seen = HashSet::new();
    keys.into_iter().filter(|k| seen.insert(*k)).collect()
}

/// Comparison of the recursion at `k = 1` with the closed-form thresholds
/// `l >= 0` for `i >= 2` and `l >= max{(n-2)d, (n-1)d-n-m}` for `i = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub n: i64,
    pub d: i64,
    pub m: i64,
    pub h1_threshold: i64,
    /// `(i, l)` pairs.
    pub both: Vec<(i64, i64)>,
    pub closed_form_only: Vec<(i64, i64)>,
    pub dag_only: Vec<(i64, i64)>,
    pub neither: usize,
}

pub fn crosscheck_prop72(n: i64, d: i64, m: i64, ls: RangeInclusive<i64>) -> Result<CrossCheckReport> {
    if m < 1 {
        return Err(contract(format!("m = {m} must be a positive integer")));
    }
    let mut prover = AklProver::new(n, d, rational(m), PremiseMode::Corrected)?;
    let h1_threshold = ((n - 2) * d).max((n - 1) * d - n - m);
    let mut report = CrossCheckReport {
        n,
        d,
        m,
        h1_threshold,
        both: Vec::new(),
        closed_form_only: Vec::new(),
        dag_only: Vec::new(),
        neither: 0,
    };
    for i in 1..n {
        for l in ls.clone() {
            let closed = if i == 1 { l >= h1_threshold } else { l >= 0 };
            let dag = prover.prove(i, 1, l)?.status == NodeStatus::Proved;
            match (closed, dag) {
                (true, true) => report.both.push((i, l)),
                (true, false) => report.closed_form_only.push((i, l)),
                (false, true) => report.dag_only.push((i, l)),
                (false, false) => report.neither += 1,
            }
        }
    }
    Ok(report)
}
