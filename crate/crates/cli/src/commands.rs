use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use hv_core::bounds::{independent_conditions_degree, jet_separation_degree, length_bound};
use hv_core::certifier::{
    certify_surface, certify_surface_omega1, certify_thm1, crosscheck_prop72, AklProver, AmpleClass, DegreeModel,
    DivisorData, InequalityCheck, InequalityScope, NodeStatus, PremiseMode, Relation,
};
use hv_core::milnor::{
    check_prime, cross_check_primes, jacobian_map_rank_raw, milnor_hilbert, raw_ideal_dims, SparsePolynomial,
    DEFAULT_PRIME, SECOND_PRIME,
};
use hv_core::numeric::{format_rational, parse_rational, rational};
use hv_core::{bott_pn, classify_with, h_restricted_forms, PnQuery, Resolution, XFormQuery};
use num_bigint::BigInt;

use crate::record::{big, CertificateEntry, OutputRecord};

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h^q(P^n, Ω^p(l)) by Bott's formula
    Bott(BottArgs),
    /// h^i(X, Ω^p_{P^n}|_X(l))
    CohRestricted(FormArgs),
    /// h^i(X, Ω^p_X(l)) for a smooth hypersurface X in P^n, n >= 4
    CohX(CohXArgs),
    /// Hilbert function of the Jacobian ring of a smooth hypersurface
    Hilbert(NdArgs),
    /// Explicit rank computations for a given polynomial
    Oracle(OracleArgs),
    /// Vanishing certificate on a hypersurface in P^n, n >= 4
    CertifyThm1(Thm1Args),
    /// Vanishing certificate on a surface in P^3
    CertifySurface(SurfaceArgs),
    /// Recursive prover for A_{i,k,l}
    ProveAkl(AklArgs),
    /// Compare the prover at k = 1 with the closed-form thresholds
    #[command(name = "crosscheck-72")]
    Crosscheck72(CrossArgs),
    /// Degree and length bounds
    #[command(subcommand)]
    Bounds(BoundsCommand),
}

#[derive(Debug, Args)]
pub struct BottArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    p: i64,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long)]
    q: i64,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    d: i64,
    #[arg(long)]
    p: i64,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long)]
    i: i64,
}

#[derive(Debug, Args)]
pub struct CohXArgs {
    #[command(flatten)]
    form: FormArgs,
    /// Resolve undetermined cases with the generic Jacobian ring
    #[arg(long, conflicts_with = "poly")]
    jacobian: bool,
    /// Resolve undetermined cases with rank computations for this polynomial file
    #[arg(long)]
    poly: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NdArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    d: i64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Polynomial file: "n d P" then one "c e0 .. en" line per term
    #[arg(long, required_unless_present = "fermat")]
    poly: Option<PathBuf>,
    /// Use x_0^d + ... + x_n^d instead of a file
    #[arg(long, requires_all = ["n", "d"], conflicts_with = "poly")]
    fermat: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<u32>,
    /// Highest degree to compute, default ρ + 1
    #[arg(long)]
    k_max: Option<i64>,
    /// Report the rank of the Jacobian map onto degree d + r instead
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    /// Repeat the computation modulo a second prime
    #[arg(long)]
    cross_check: bool,
}

#[derive(Debug, Args)]
pub struct DivisorArgs {
    #[arg(long)]
    d: i64,
    /// Degree of D, an integer or p/q
    #[arg(long)]
    m: String,
    /// Degree of the support Z
    #[arg(long)]
    mz: Option<i64>,
    /// O_X(Z - ⌈D⌉) = O_X(-a)
    #[arg(long, default_value_t = 0)]
    a: i64,
    /// D is reduced: Z = D and a = 0
    #[arg(long)]
    reduced: bool,
}

impl DivisorArgs {
    fn build(&self, n: i64) -> Result<DivisorData> {
        let m = parse_rational(&self.m)?;
        if self.reduced {
            if !m.is_integer() {
                bail!("a reduced divisor needs an integral m, got {}", self.m);
            }
            if self.mz.is_some_and(|mz| rational(mz) != m) || self.a != 0 {
                bail!("--reduced fixes mZ = m and a = 0");
            }
            return Ok(DivisorData::reduced(n, self.d, m.to_integer().try_into().context("m out of range")?)?);
        }
        let mz = self.mz.context("--mz is required unless --reduced is given")?;
        Ok(DivisorData::new(n, self.d, m, mz, self.a)?)
    }

    fn inputs(&self, out: &mut Vec<(&'static str, String)>) {
        out.push(("d", self.d.to_string()));
        out.push(("m", self.m.clone()));
        if let Some(mz) = self.mz {
            out.push(("mz", mz.to_string()));
        }
        out.push(("a", self.a.to_string()));
        out.push(("reduced", self.reduced.to_string()));
    }
}

#[derive(Debug, Args)]
pub struct Thm1Args {
    #[arg(long)]
    n: i64,
    #[command(flatten)]
    divisor: DivisorArgs,
    #[arg(long)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long)]
    i: i64,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[command(flatten)]
    divisor: DivisorArgs,
    #[arg(long, default_value_t = 0)]
    k: i64,
    /// Coefficient of H in L
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    /// Coefficient of Z in L
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    lz: i64,
    #[arg(long, default_value_t = 1)]
    i: i64,
    /// Certify H^1(X, Ω^1_X ⊗ L) instead
    #[arg(long)]
    omega1: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Verbatim,
    Corrected,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScopeArg {
    EveryR,
    FirstR,
}

#[derive(Debug, Args)]
pub struct AklArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    d: i64,
    #[arg(long)]
    m: String,
    #[arg(long)]
    i: i64,
    #[arg(long)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long, value_enum, default_value = "corrected")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "every-r")]
    scope: ScopeArg,
}

#[derive(Debug, Args)]
pub struct CrossArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    d: i64,
    #[arg(long)]
    m: i64,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// Upper bound for the length of Z_k
    Length {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: i64,
    },
    /// Degree from which S_t imposes independent conditions
    Independent {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        t: i64,
    },
    /// Degree separating (j-1)-jets along S_t
    Jet {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        j: i64,
    },
}

/// Twists to evaluate: the `--table` range or the single `--l`.
pub enum Sweep {
    Single,
    Table(RangeInclusive<i64>),
}

impl Sweep {
    fn values(&self, given: Option<i64>) -> Result<Vec<i64>> {
        match self {
            Sweep::Table(r) => Ok(r.clone().collect()),
            Sweep::Single => Ok(vec![given.context("--l is required unless --table A:B is given")?]),
        }
    }
}

/// The prime for polynomial computations, from `HV_PRIME` if set.
fn oracle_prime() -> Result<u64> {
    match std::env::var("HV_PRIME") {
        Ok(s) => {
            let p: u64 = s.trim().parse().with_context(|| format!("HV_PRIME = {s:?} is not an integer"))?;
            check_prime(p)?;
            Ok(p)
        }
        Err(_) => Ok(DEFAULT_PRIME),
    }
}

fn load_poly(path: &PathBuf) -> Result<SparsePolynomial> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let f = SparsePolynomial::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    match std::env::var("HV_PRIME") {
        Ok(_) => Ok(f.with_prime(oracle_prime()?)?),
        Err(_) => Ok(f),
    }
}

/// Evaluates `f` for every twist, in parallel, keeping the order.
fn sweep<F>(ls: Vec<i64>, f: F) -> Result<Vec<OutputRecord>>
where
    F: Fn(i64) -> Result<OutputRecord> + Send + Sync,
{
    use rayon::prelude::*;
    ls.into_par_iter().map(f).collect()
}

fn s(v: impl ToString) -> String {
    v.to_string()
}

pub fn run(cmd: &Command, table: &Sweep) -> Result<Vec<OutputRecord>> {
    match cmd {
        Command::Bott(a) => sweep(table.values(a.l)?, |l| {
            let dim = bott_pn(PnQuery::new(a.n, a.p, l, a.q)?);
            let inputs = [("n", s(a.n)), ("p", s(a.p)), ("l", s(l)), ("q", s(a.q))];
            Ok(OutputRecord::from_dim("bott", &inputs, &dim).cite(&["bott-formula"]))
        }),
        Command::CohRestricted(a) => sweep(table.values(a.l)?, |l| {
            let dim = h_restricted_forms(a.n, a.d, a.p, l, a.i)?;
            let inputs = [("n", s(a.n)), ("d", s(a.d)), ("p", s(a.p)), ("l", s(l)), ("i", s(a.i))];
            Ok(OutputRecord::from_dim("coh-restricted", &inputs, &dim).cite(&["restriction-sequence", "bott-formula"]))
        }),
        Command::CohX(a) => {
            let poly = a.poly.as_ref().map(load_poly).transpose()?;
            let (res, how) = match (&poly, a.jacobian) {
                (Some(f), _) => (Resolution::Polynomial(f), "polynomial"),
                (None, true) => (Resolution::Jacobian, "jacobian"),
                (None, false) => (Resolution::Closed, "closed"),
            };
            let fa = &a.form;
            sweep(table.values(fa.l)?, |l| {
                let dim = classify_with(XFormQuery::new(fa.n, fa.d, fa.p, l, fa.i)?, res)?;
                let inputs =
                    [("n", s(fa.n)), ("d", s(fa.d)), ("p", s(fa.p)), ("l", s(l)), ("i", s(fa.i)), ("resolution", s(how))];
                let mut rec = OutputRecord::from_dim("coh-x", &inputs, &dim).cite(&["borderline-nakano"]);
                if how != "closed" {
                    rec = rec.cite(&["jacobian-ring"]);
                }
                Ok(rec)
            })
        }
        Command::Hilbert(a) => {
            let h = milnor_hilbert(a.n, a.d)?;
            let rec = OutputRecord::new("hilbert", &[("n", s(a.n)), ("d", s(a.d))], "exact")
                .list(h.coeffs().iter().map(big))
                .interpretation(format!("rho = {}", h.rho()))
                .cite(&["macaulay"]);
            Ok(vec![rec])
        }
        Command::Oracle(a) => oracle(a).map(|r| vec![r]),
        Command::CertifyThm1(a) => {
            let dd = a.divisor.build(a.n)?;
            sweep(table.values(a.l)?, |l| {
                let v = certify_thm1(&dd, a.k, l, a.i)?;
                let mut inputs = vec![("n", s(a.n))];
                a.divisor.inputs(&mut inputs);
                inputs.extend([("k", s(a.k)), ("l", s(l)), ("i", s(a.i))]);
                Ok(OutputRecord::from_verdict("certify-thm1", &inputs, &v))
            })
        }
        Command::CertifySurface(a) => {
            let dd = a.divisor.build(3)?;
            let model = DegreeModel { m_z: dd.m_z };
            sweep(table.values(a.l)?, |l| {
                let line = AmpleClass::new(l, a.lz);
                let v = if a.omega1 {
                    certify_surface_omega1(dd.d, line, &model)?
                } else {
                    certify_surface(&dd, a.k, line, a.i, &model)?
                };
                let mut inputs = Vec::new();
                a.divisor.inputs(&mut inputs);
                inputs.extend([("k", s(a.k)), ("l", s(l)), ("lz", s(a.lz)), ("i", s(a.i)), ("omega1", s(a.omega1))]);
                Ok(OutputRecord::from_verdict("certify-surface", &inputs, &v))
            })
        }
        Command::ProveAkl(a) => {
            let m = parse_rational(&a.m)?;
            let mode = match a.mode {
                ModeArg::Verbatim => PremiseMode::Verbatim,
                ModeArg::Corrected => PremiseMode::Corrected,
            };
            let scope = match a.scope {
                ScopeArg::EveryR => InequalityScope::EveryR,
                ScopeArg::FirstR => InequalityScope::FirstR,
            };
            AklProver::new(a.n, a.d, m.clone(), mode)?;
            sweep(table.values(a.l)?, |l| prove_akl(a, &m, mode, scope, l))
        }
        Command::Crosscheck72(a) => {
            let grid = match table {
                Sweep::Table(r) => r.clone(),
                Sweep::Single => -10..=20,
            };
            let r = crosscheck_prop72(a.n, a.d, a.m, grid.clone())?;
            let summary = vec![
                format!("h1_threshold = {}", r.h1_threshold),
                format!("both: {}", ranges(&r.both)),
                format!("closed_form_only: {}", ranges(&r.closed_form_only)),
                format!("dag_only: {}", ranges(&r.dag_only)),
                format!("neither: {}", r.neither),
            ];
            let inputs = [
                ("n", s(a.n)),
                ("d", s(a.d)),
                ("m", s(a.m)),
                ("l_from", s(grid.start())),
                ("l_to", s(grid.end())),
            ];
            let interp = if r.closed_form_only.is_empty() {
                "every closed-form point is also proved by the recursion"
            } else {
                "some closed-form points are not proved by the recursion"
            };
            Ok(vec![OutputRecord::new("crosscheck-72", &inputs, "reported")
                .list(summary)
                .interpretation(interp)
                .cite(&["akl-recursion", "akl-k1-closed-form"])])
        }
        Command::Bounds(b) => bounds(b).map(|r| vec![r]),
    }
}

fn prove_akl(a: &AklArgs, m: &num_rational::BigRational, mode: PremiseMode, scope: InequalityScope, l: i64) -> Result<OutputRecord> {
    let mut prover = AklProver::new(a.n, a.d, m.clone(), mode)?.with_scope(scope);
    let status = prover.prove(a.i, a.k, l)?.status;
    let key = (a.i, a.k, l);
    let depth = prover.dag_depth(key);
    let inputs = [
        ("n", s(a.n)),
        ("d", s(a.d)),
        ("m", format_rational(m)),
        ("i", s(a.i)),
        ("k", s(a.k)),
        ("l", s(l)),
        ("mode", s(format!("{mode:?}").to_lowercase())),
        ("scope", s(if scope == InequalityScope::EveryR { "every-r" } else { "first-r" })),
    ];
    let mut rec = OutputRecord::new("prove-akl", &inputs, status.label());
    let nodes = prover.subtree(key);
    for node in &nodes {
        let name = format!("A({},{},{})", node.i, node.k, node.l);
        let line = format!(
            "{name}: {} [{}] <- {}",
            node.status.label(),
            node.rule,
            node.premises.iter().map(|(i, k, l)| format!("A({i},{k},{l})")).collect::<Vec<_>>().join(", ")
        );
        rec.trace.push(line);
        if status != NodeStatus::Proved {
            continue;
        }
        if node.premises.is_empty() {
            let check = if node.i > a.n - 1 {
                InequalityCheck::ints(format!("{name}: i > n-1"), node.i, Relation::Gt, a.n - 1)
            } else {
                InequalityCheck::ints(format!("{name}: k = 0 base, l >= 0"), node.l, Relation::Ge, 0)
            };
            rec.certificate.push(CertificateEntry::from(&check));
        }
        for c in &node.inequalities {
            let mut e = CertificateEntry::from(c);
            e.label = format!("{name}: {}", e.label);
            rec.certificate.push(e);
        }
    }
    if status == NodeStatus::Proved {
        rec = rec.interpretation(format!("proof DAG with {} nodes, depth {depth}", nodes.len()));
    } else {
        rec = rec.interpretation("not established by the recursion");
    }
    Ok(rec.cite(&["akl-recursion", "nadel-base"]))
}

/// `i=1: 2..3; i=2: 0..20` style summary of `(i, l)` pairs.
fn ranges(points: &[(i64, i64)]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut iter = points.iter().peekable();
    while let Some(&(i, start)) = iter.next() {
        let mut end = start;
        while let Some(&&(ni, nl)) = iter.peek() {
            if ni == i && nl == end + 1 {
                end = nl;
                iter.next();
            } else {
                break;
            }
        }
        let span = if start == end { format!("{start}") } else { format!("{start}..{end}") };
        match parts.last_mut() {
            Some(last) if last.starts_with(&format!("i={i}:")) => {
                last.push(',');
                last.push_str(&span);
            }
            _ => parts.push(format!("i={i}: {span}")),
        }
    }
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join("; ")
    }
}

fn oracle(a: &OracleArgs) -> Result<OutputRecord> {
    let f = match (&a.poly, a.fermat) {
        (Some(path), _) => load_poly(path)?,
        (None, true) => SparsePolynomial::fermat(a.n.unwrap(), a.d.unwrap(), oracle_prime()?)?,
        (None, false) => bail!("give --poly FILE or --fermat --n N --d D"),
    };
    let (n, d) = (f.n() as i64, i64::from(f.degree()));
    let h = milnor_hilbert(n, d)?;
    let mut inputs = vec![("n", s(n)), ("d", s(d)), ("prime", s(f.prime())), ("terms", s(f.terms().len()))];
    if let Some(r) = a.r {
        if r < -1 {
            bail!(hv_core::Error::Contract(format!("r = {r} must be at least -1")));
        }
        let (rank, coker) = jacobian_map_rank_raw(&f, r)?;
        let expected = h.dim(d + r);
        inputs.push(("r", s(r)));
        let status = if BigInt::from(coker) == expected { "agrees" } else { "mismatch" };
        let mut rec = OutputRecord::new("oracle", &inputs, status).list([rank, coker]);
        rec = rec.interpretation(if status == "agrees" {
            format!("[rank, coker]; coker = dim R_{} = {expected}", d + r)
        } else {
            format!("[rank, coker]; generic dim R_{} = {expected}: singular or unlucky prime", d + r)
        });
        return Ok(rec.cite(&["jacobian-map", "macaulay"]));
    }
    let k_max = a.k_max.unwrap_or(h.rho() + 1);
    inputs.push(("k_max", s(k_max)));
    let dims = raw_ideal_dims(&f, k_max)?;
    let generic: Vec<BigInt> = (0..=k_max).map(|k| h.dim(k)).collect();
    let agrees = dims.iter().zip(&generic).all(|(x, y)| BigInt::from(*x) == *y);
    let mut rec = OutputRecord::new("oracle", &inputs, if agrees { "agrees" } else { "mismatch" }).list(dims.iter());
    rec = rec.interpretation(if agrees {
        "dim R_k for k = 0..k_max; equals the generic Hilbert function".to_string()
    } else {
        format!("differs from the generic Hilbert function [{}]: singular or unlucky prime", generic.iter().map(big).collect::<Vec<_>>().join(", "))
    });
    if a.cross_check {
        let second = if f.prime() == SECOND_PRIME { DEFAULT_PRIME } else { SECOND_PRIME };
        let check = cross_check_primes(&f, k_max, second)?;
        let (x, y) = check.totals();
        rec.certificate.push(CertificateEntry {
            label: format!("sum of dim R_k mod {} equals sum mod {second}", f.prime()),
            lhs: s(x),
            relation: "=".into(),
            rhs: s(y),
            holds: check.agree(),
        });
    }
    Ok(rec.cite(&["macaulay", "jacobian-ideal"]))
}

fn bounds(b: &BoundsCommand) -> Result<OutputRecord> {
    Ok(match *b {
        BoundsCommand::Length { n, d, m, k } => {
            let r = length_bound(n, d, m, k)?;
            OutputRecord::new("bounds length", &[("n", s(n)), ("d", s(d)), ("m", s(m)), ("k", s(k))], "exact")
                .scalar(&r.bound)
                .interpretation(format!("length(Z_k) <= {} with l = {}", r.bound, r.l))
                .cite(&["length-bound"])
        }
        BoundsCommand::Independent { n, d, m, t } => {
            let r = independent_conditions_degree(n, d, m, t)?;
            OutputRecord::new("bounds independent", &[("n", s(n)), ("d", s(d)), ("m", s(m)), ("t", s(t))], "exact")
                .scalar(r.degree)
                .interpretation(format!("{} (k = {}, l = {})", r.interpretation, r.k, r.l))
                .cite(&["independent-conditions"])
        }
        BoundsCommand::Jet { n, d, m, t, j } => {
            let r = jet_separation_degree(n, d, m, t, j)?;
            let inputs = [("n", s(n)), ("d", s(d)), ("m", s(m)), ("t", s(t)), ("j", s(j))];
            OutputRecord::new("bounds jet", &inputs, "exact")
                .scalar(r.degree)
                .interpretation(format!("{} (k = {}, l = {})", r.interpretation, r.k, r.l))
                .cite(&["jet-separation"])
        }
    })
}
