//! Argument parsing and the subcommands.
//!
//! Exit codes: 0 when the command ran and every check passed, 1 when a check
//! or predicate failed, 2 for an invalid specification or unreadable input.

use std::path::PathBuf;

use brunlie_core::braids::{self, BraidWord};
use brunlie_core::dkho::{CombedLie, SubspaceSpec};
use brunlie_core::krv::{self, SpanConvention};
use brunlie_core::pentagon::{self, PentFlavor, SolutionSpace};
use brunlie_core::{dmr, emergent, LieElement};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cache::{self, DiskCache};
use crate::json;
use crate::verify::{self, Verdict};

pub const DEFAULT_SEED: u64 = 1;
/// Degree guard in two-letter contexts (`𝕃(x, y)`, `t_3`, `t_4`).
pub const GUARD_SMALL: usize = 8;
/// Degree guard once five or more strands are involved.
pub const GUARD_LARGE: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "brunlie",
    version,
    about = "Exact computations in Drinfeld-Kohno Lie algebras and pure braid groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Compact JSON on one line (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Cache directory (overrides the environment variable).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Keep computed subspaces in memory only.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Raise the degree guard.
    #[arg(long, global = true, value_name = "DEG")]
    pub guard: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions and bases of a graded subspace.
    Basis(BasisArgs),
    /// Solution spaces of a linear system, per weight.
    Solve(SolveArgs),
    /// Run one of the theorem checks.
    Verify(VerifyArgs),
    /// Evaluate the pentagon map on a Lie element.
    Pent(PentArgs),
    /// Braid computations.
    #[command(subcommand)]
    Braid(BraidCommand),
}

#[derive(clap::Args, Debug)]
pub struct BasisArgs {
    /// t<n>, p<n>, dk<m><k>, brun<n>, brun<m><k>, wi, wj, i, j
    #[arg(long)]
    pub algebra: String,
    #[arg(long, conflicts_with = "max_degree")]
    pub degree: Option<usize>,
    /// List degrees 1..=max.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Replace the algebra by its k-th lower central series term.
    #[arg(long, value_name = "K")]
    pub lcs: Option<usize>,
    /// Print dimensions only.
    #[arg(long)]
    pub dims_only: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Grt1,
    Pent,
    Pentk,
    Dmr0,
    Krv,
    SdSpecial,
    GrtEm,
    Pent1Krv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Grt,
    Dmr,
    Krv,
}

impl From<Flavor> for PentFlavor {
    fn from(f: Flavor) -> Self {
        match f {
            Flavor::Grt => PentFlavor::Grt,
            Flavor::Dmr => PentFlavor::Dmr,
            Flavor::Krv => PentFlavor::Krv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    With,
    Without,
}

impl From<Convention> for SpanConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::With => SpanConvention::WithInfinity,
            Convention::Without => SpanConvention::WithoutInfinity,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub system: System,
    #[arg(long, conflicts_with = "max_weight")]
    pub weight: Option<usize>,
    /// Solve every weight from the system's lowest up to this one.
    #[arg(long)]
    pub max_weight: Option<usize>,
    #[arg(long, value_enum, default_value = "grt")]
    pub flavor: Flavor,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Span convention for the divergence condition.
    #[arg(long, value_enum, default_value = "with")]
    pub convention: Convention,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// One of: kernel, relations, dmr, shuffle-coproduct, div-mu, cocycle,
    /// krv-commutative, krv, corollary, kv-right, pent-j, brunnian-magnus,
    /// johnson-cocycle
    #[arg(long)]
    pub theorem: String,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub max_weight: Option<usize>,
    #[arg(long)]
    pub max_k: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Magnus truncation for the braid checks.
    #[arg(long)]
    pub truncate: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct PentArgs {
    /// Truncate in this Brunnian flavor; without it the full `pent(φ)` is printed.
    #[arg(long, value_enum)]
    pub flavor: Option<Flavor>,
    #[arg(long, requires = "flavor")]
    pub k: Option<usize>,
    /// LieElement JSON file (`-` for stdin).
    #[arg(long)]
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum BraidCommand {
    /// Lowest Magnus term of Pent(Φ) on the last-strand fiber.
    PentTriviality(TrivialityArgs),
    /// Is the braid Brunnian in its moving strands?
    IsBrunnian(BrunnianArgs),
    /// Print Pent(Φ) as braid JSON.
    Pent(PentBraidArgs),
}

#[derive(clap::Args, Debug)]
pub struct TrivialityArgs {
    /// Φ as a word in s1, s2 (capitals invert).
    #[arg(long, conflicts_with = "input")]
    pub phi: Option<String>,
    /// Φ as braid JSON.
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub truncate: usize,
    /// Number of fixed strands of the ambient 4-braid.
    #[arg(long, default_value_t = 0)]
    pub fixed: u8,
}

#[derive(clap::Args, Debug)]
pub struct BrunnianArgs {
    #[arg(long, conflicts_with = "input", requires = "n")]
    pub word: Option<String>,
    #[arg(long)]
    pub n: Option<u8>,
    #[arg(long)]
    pub input: Option<String>,
    /// Overrides the braid's own `fixed` count.
    #[arg(long)]
    pub fixed: Option<u8>,
}

#[derive(clap::Args, Debug)]
pub struct PentBraidArgs {
    #[arg(long)]
    pub phi: String,
}

/// A finished command: the JSON to print and whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub value: Value,
    pub pass: bool,
}

#[derive(Debug)]
pub struct SpecError(pub String);

impl From<brunlie_core::Error> for SpecError {
    fn from(e: brunlie_core::Error) -> Self {
        SpecError(e.to_string())
    }
}

impl From<json::FormatError> for SpecError {
    fn from(e: json::FormatError) -> Self {
        SpecError(e.0)
    }
}

type CResult<T> = Result<T, SpecError>;

fn bad<T>(msg: impl Into<String>) -> CResult<T> {
    Err(SpecError(msg.into()))
}

fn ok(value: Value) -> CResult<Outcome> {
    Ok(Outcome { value, pass: true })
}

impl Cli {
    fn guard(&self, default: usize) -> usize {
        self.guard.unwrap_or(default)
    }

    fn disk_cache(&self) -> DiskCache {
        if self.no_cache {
            return DiskCache::disabled();
        }
        DiskCache::new(self.cache_dir.clone().or_else(cache::default_dir))
    }

    pub fn render(&self, v: &Value) -> String {
        if self.pretty {
            serde_json::to_string_pretty(v).expect("JSON values serialize")
        } else {
            v.to_string()
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> CResult<Outcome> {
    let mut cache = cli.disk_cache();
    match &cli.command {
        Command::Basis(a) => cmd_basis(cli, a, &mut cache),
        Command::Solve(a) => cmd_solve(cli, a, &mut cache),
        Command::Verify(a) => cmd_verify(cli, a, &mut cache),
        Command::Pent(a) => cmd_pent(a, &mut cache),
        Command::Braid(b) => cmd_braid(b, &mut cache),
    }
}

/// Parses `args`, runs, and returns (stdout text, exit code). Parse errors
/// come back as the usage message with code 2.
pub fn run_args<I, S>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.to_string(), code);
        }
    };
    match run(&cli) {
        Ok(o) => (cli.render(&o.value), if o.pass { 0 } else { 1 }),
        Err(SpecError(m)) => (format!("error: {}", m), 2),
    }
}

// ---------------------------------------------------------------------------
// algebra names

/// A parsed `--algebra` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Sub {
        name: String,
        spec: SubspaceSpec,
    },
    /// `p_n`, realized on `t_{n-1}` modulo its center
    Sphere(u8),
}

fn digits(s: &str) -> Option<Vec<u8>> {
    let s = s.replace(',', "");
    if s.is_empty() {
        return None;
    }
    s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
}

pub fn parse_algebra(text: &str, lcs: Option<usize>) -> CResult<Algebra> {
    let t = text.trim().to_ascii_lowercase();
    let invalid = || SpecError(format!("unknown algebra `{}`", text));
    let (name, spec) = if let Some(r) = t.strip_prefix("brun") {
        match digits(r).as_deref() {
            Some([n]) if *n >= 1 => (format!("brun{}", n), SubspaceSpec::Brun(*n)),
            Some([m, k]) if *m >= 1 && *k >= 1 => {
                (format!("brun{}{}", m, k), SubspaceSpec::BrunMixed(*m, *k))
            }
            _ => return Err(invalid()),
        }
    } else if let Some(r) = t.strip_prefix("dk") {
        match digits(r).as_deref() {
            Some([m, k]) if *m >= 1 && *k >= 1 => {
                (format!("dk{}{}", m, k), SubspaceSpec::Dk(*m, *k))
            }
            _ => return Err(invalid()),
        }
    } else if let Some(r) = t.strip_prefix('t') {
        match digits(r).as_deref() {
            Some([n]) if *n >= 1 => (format!("t{}", n), SubspaceSpec::Whole(*n)),
            _ => return Err(invalid()),
        }
    } else if let Some(r) = t.strip_prefix('p') {
        match digits(r).as_deref() {
            Some([n]) if (3..=7).contains(n) => {
                if lcs.is_some() {
                    return bad("--lcs is not available for p_n");
                }
                return Ok(Algebra::Sphere(*n));
            }
            _ => return Err(invalid()),
        }
    } else {
        match t.as_str() {
            "wi" | "w_i" => ("wi".to_string(), SubspaceSpec::WI),
            "wj" | "w_j" => ("wj".to_string(), SubspaceSpec::WJ),
            "i" => ("brun13".to_string(), SubspaceSpec::ideal_i()),
            "j" => ("brun22".to_string(), SubspaceSpec::ideal_j()),
            _ => return Err(invalid()),
        }
    };
    if spec.ambient() > 6 {
        return bad(format!(
            "`{}` lives in t_{}; at most 6 strands are supported",
            text,
            spec.ambient()
        ));
    }
    Ok(match lcs {
        None => Algebra::Sub { name, spec },
        Some(0) => return bad("--lcs starts at 1"),
        Some(k) => Algebra::Sub {
            name: format!("lcs{}({})", k, name),
            spec: SubspaceSpec::Lcs(Box::new(spec), k),
        },
    })
}

// ---------------------------------------------------------------------------
// basis

fn degrees(
    single: Option<usize>,
    max: Option<usize>,
    lo: usize,
    what: &str,
) -> CResult<Vec<usize>> {
    match (single, max) {
        (Some(d), _) if d < lo => bad(format!("{} must be at least {}", what, lo)),
        (Some(d), _) => Ok(vec![d]),
        (None, Some(m)) if m < lo => bad(format!("max {} must be at least {}", what, lo)),
        (None, Some(m)) => Ok((lo..=m).collect()),
        (None, None) => bad(format!("give --{} or --max-{}", what, what)),
    }
}

fn check_guard(cli: &Cli, strands: u8, top: usize) -> CResult<()> {
    let g = cli.guard(if strands >= 5 {
        GUARD_LARGE
    } else {
        GUARD_SMALL
    });
    if top > g {
        return bad(format!(
            "degree {} exceeds the guard {} for t_{}; pass --guard to raise it",
            top, g, strands
        ));
    }
    Ok(())
}

fn cmd_basis(cli: &Cli, a: &BasisArgs, cache: &mut DiskCache) -> CResult<Outcome> {
    let alg = parse_algebra(&a.algebra, a.lcs)?;
    let ds = degrees(a.degree, a.max_degree, 1, "degree")?;
    let top = *ds.last().expect("nonempty");
    let mut rows = Vec::new();
    let name = match &alg {
        Algebra::Sub { name, spec } => {
            check_guard(cli, spec.ambient(), top)?;
            for &d in &ds {
                let sub = cache.subspace(name, spec, d)?;
                let ambient = cache.memory().basis(spec.ambient(), d).clone();
                let mut row =
                    json!({ "degree": d, "dim": sub.dim(), "ambient_dim": ambient.dim() });
                if !a.dims_only {
                    row["basis"] = json::subspace_elements(&sub, &ambient);
                }
                rows.push(row);
            }
            name.clone()
        }
        Algebra::Sphere(n) => {
            let m = n - 1;
            check_guard(cli, *n, top)?;
            for &d in &ds {
                let whole = cache.subspace(&format!("t{}", m), &SubspaceSpec::Whole(m), d)?;
                let basis = cache.memory().basis(m, d).clone();
                // the center lives in degree one; its `t_{m-1,m}` slot is the one eliminated
                let skip = if d == 1 && m >= 2 {
                    basis
                        .entries()
                        .iter()
                        .position(|e| e.0 == m && e.1 == [m - 2])
                } else {
                    None
                };
                let elems: Vec<CombedLie> = (0..whole.dim())
                    .filter(|i| Some(*i) != skip)
                    .map(|i| basis.element(i))
                    .collect();
                let mut row =
                    json!({ "degree": d, "dim": elems.len(), "ambient_dim": basis.dim() });
                if !a.dims_only {
                    row["basis"] = Value::Array(elems.iter().map(json::combed).collect());
                    row["quotient_of"] = json!(format!("t{}", m));
                }
                rows.push(row);
            }
            format!("p{}", n)
        }
    };
    ok(json!({ "algebra": name, "degrees": rows }))
}

// ---------------------------------------------------------------------------
// solve

fn min_weight(s: System) -> usize {
    match s {
        System::Krv | System::SdSpecial => 2,
        System::Pentk | System::Pent1Krv | System::GrtEm => 2,
        System::Dmr0 => 3,
        System::Grt1 | System::Pent => 1,
    }
}

fn system_name(a: &SolveArgs) -> String {
    match a.system {
        System::Grt1 => "grt1".into(),
        System::Pent => "pent".into(),
        System::Pentk => format!("pent{}_{}", a.k, PentFlavor::from(a.flavor).name()),
        System::Dmr0 => "dmr0".into(),
        System::Krv => format!("krv_sym ({})", SpanConvention::from(a.convention).name()),
        System::SdSpecial => "sd_special".into(),
        System::GrtEm => "grt_em".into(),
        System::Pent1Krv => "pent1_krv".into(),
    }
}

fn solve_one(a: &SolveArgs, w: usize, cache: &mut DiskCache) -> CResult<SolutionSpace> {
    Ok(match a.system {
        System::Grt1 => pentagon::grt1_space(w)?,
        System::Pent => pentagon::pent_space(w)?,
        System::Pentk => {
            if a.k == 0 {
                return bad("--k starts at 1");
            }
            let flavor = PentFlavor::from(a.flavor);
            let spec = flavor.filtration(a.k);
            cache.subspace(&format!("lcs{}(brun_{})", a.k + 1, flavor.name()), &spec, w)?;
            pentagon::pent_k_space(w, flavor, a.k, cache.memory())?
        }
        System::Dmr0 => dmr::dmr0_space(w)?,
        System::Krv => krv::krv_sym_space(w, a.convention.into())?,
        System::SdSpecial => krv::sd_special_space(w)?,
        System::GrtEm => emergent::grt_em_space(w)?,
        System::Pent1Krv => {
            let j = emergent::ideal_j();
            cache.subspace("brun22", &j, w)?;
            emergent::pent1_krv_space(w, cache.memory())?
        }
    })
}

fn cmd_solve(cli: &Cli, a: &SolveArgs, cache: &mut DiskCache) -> CResult<Outcome> {
    let ws = degrees(a.weight, a.max_weight, min_weight(a.system), "weight")?;
    check_guard(cli, 4, *ws.last().expect("nonempty"))?;
    let mut rows = Vec::new();
    for &w in &ws {
        let s = solve_one(a, w, cache)?;
        let mut row = json::solution_space(&s);
        if a.system == System::Pentk && a.flavor == Flavor::Dmr && a.k == 1 && w >= 3 {
            row["equal_to_dmr0"] = json!(s.same_span(&dmr::dmr0_space(w)?));
        }
        rows.push(row);
    }
    ok(json!({ "system": system_name(a), "weights": rows }))
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(cli: &Cli, a: &VerifyArgs, cache: &mut DiskCache) -> CResult<Outcome> {
    let deg = |default: usize| -> CResult<usize> {
        let d = a.max_degree.unwrap_or(default);
        check_guard(cli, 4, d)?;
        Ok(d)
    };
    let wt = |default: usize| -> CResult<usize> {
        let w = a.max_weight.unwrap_or(default);
        check_guard(cli, 4, w)?;
        Ok(w)
    };
    let n = |default: usize| a.samples.unwrap_or(default);
    let mem = cache.memory();
    let v: Verdict = match a.theorem.as_str() {
        "kernel" => verify::kernel_lemma(n(200), deg(7)?, a.seed)?,
        "relations" => verify::relations(wt(6)?, a.max_k.unwrap_or(3), mem)?,
        "dmr" => verify::dmr_equivalence(wt(7)?, mem)?,
        "shuffle-coproduct" => verify::shuffle_coproduct(n(50), deg(8)?, a.seed)?,
        "div-mu" => verify::div_mu(deg(8)?)?,
        "cocycle" => verify::div_cocycle(n(100), deg(6)?, a.seed)?,
        "krv-commutative" => verify::middle_square(deg(7)?, mem)?,
        "krv" => verify::krv_equivalence(wt(7)?, mem)?,
        "corollary" => verify::corollary(wt(7)?, mem)?,
        "kv-right" => verify::quotient(wt(6)?, mem)?,
        "pent-j" => verify::route_equality(n(100), deg(7)?, a.seed, mem)?,
        "brunnian-magnus" => {
            verify::brunnian_magnus(n(30), 8, a.truncate.unwrap_or(6), a.seed, mem)?
        }
        "johnson-cocycle" => verify::johnson_cocycle(n(50), a.truncate.unwrap_or(5), a.seed)?,
        other => {
            return bad(format!(
                "unknown theorem `{}`; expected one of {}",
                other,
                verify::THEOREMS.join(", ")
            ))
        }
    };
    Ok(Outcome {
        pass: v.pass,
        value: v.to_json(),
    })
}

// ---------------------------------------------------------------------------
// pent and braid

fn read_json(path: &str) -> CResult<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| SpecError(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| SpecError(format!("{}: {}", path, e)))?
    };
    serde_json::from_str(&text).map_err(|e| SpecError(format!("{}: {}", path, e)))
}

fn cmd_pent(a: &PentArgs, cache: &mut DiskCache) -> CResult<Outcome> {
    let phi: LieElement = json::parse_lie(&read_json(&a.input)?)?;
    if phi.rank() != 2 {
        return bad("φ must be a Lie element in two letters");
    }
    let Some(flavor) = a.flavor else {
        return ok(json!({ "pent": json::combed(&pentagon::pent_phi(&phi)) }));
    };
    let flavor = PentFlavor::from(flavor);
    let k = a.k.unwrap_or(1);
    if k == 0 {
        return bad("--k starts at 1");
    }
    let d = phi
        .homogeneous_degree()
        .ok_or_else(|| SpecError("φ must be homogeneous".into()))?;
    if d >= 2 {
        cache.subspace(
            &format!("lcs{}(brun_{})", k + 1, flavor.name()),
            &flavor.filtration(k),
            d,
        )?;
    }
    let r = pentagon::pent_k_eval(&phi, flavor, k, cache.memory())?;
    let value = if r.is_empty() {
        json!("0")
    } else {
        let basis = cache.memory().basis(4, d).clone();
        Value::Array(
            r.iter()
                .map(|(i, c)| {
                    let (s, w) = basis.entry(*i);
                    json!({ "index": i, "strand": s, "lyndon": w.iter().map(|&l| format!("t{}{}", l + 1, s)).collect::<Vec<_>>(), "coeff": json::scalar(c) })
                })
                .collect(),
        )
    };
    ok(json!({ "flavor": flavor.name(), "k": k, "degree": d, "value": value }))
}

fn phi_braid(text: Option<&str>, input: Option<&str>) -> CResult<BraidWord> {
    let b = match (text, input) {
        (Some(t), _) => BraidWord::parse(3, t)?,
        (None, Some(p)) => json::parse_braid(&read_json(p)?)?,
        (None, None) => return bad("give --phi or --input"),
    };
    if b.n() != 3 {
        return bad("Φ must be a 3-braid");
    }
    Ok(b)
}

fn cmd_braid(c: &BraidCommand, cache: &mut DiskCache) -> CResult<Outcome> {
    match c {
        BraidCommand::Pent(a) => {
            let phi = phi_braid(Some(&a.phi), None)?;
            ok(json::braid(&braids::pent_braid(&phi)?))
        }
        BraidCommand::IsBrunnian(a) => {
            let mut b = match (&a.word, &a.input) {
                (Some(w), _) => BraidWord::parse(a.n.expect("clap requires n"), w)?,
                (None, Some(p)) => json::parse_braid(&read_json(p)?)?,
                (None, None) => return bad("give --word with --n, or --input"),
            };
            if let Some(m) = a.fixed {
                b = b.with_fixed(m)?;
            }
            if !b.is_pure() {
                return Ok(Outcome {
                    pass: false,
                    value: json!({ "pure": false, "brunnian": false }),
                });
            }
            let deletions: Vec<Value> = (b.fixed() + 1..=b.n())
                .map(|i| Ok(json!({ "strand": i, "trivial": braids::is_trivial(&b.delete(i)?) })))
                .collect::<CResult<_>>()?;
            let brunnian = braids::is_brunnian(&b, None)?;
            Ok(Outcome {
                pass: brunnian,
                value: json!({ "pure": true, "fixed": b.fixed(), "brunnian": brunnian, "deletions": deletions }),
            })
        }
        BraidCommand::PentTriviality(a) => {
            let phi = phi_braid(a.phi.as_deref(), a.input.as_deref())?;
            if !phi.is_pure() {
                return bad("Φ must be a pure braid");
            }
            if a.truncate == 0 || a.truncate > GUARD_SMALL {
                return bad(format!("--truncate must lie in 1..={}", GUARD_SMALL));
            }
            let pent = braids::pent_braid(&phi)?.with_fixed(a.fixed)?;
            let brunnian = braids::is_brunnian(&pent, None)?;
            let mut out =
                json!({ "phi": json::braid(&phi), "fixed": a.fixed, "brunnian": brunnian });
            if !brunnian {
                out["report"] = Value::Null;
                out["reason"] = json!("Pent(Φ) has a nontrivial one-strand deletion, so the fiber element is undefined");
                return Ok(Outcome {
                    pass: false,
                    value: out,
                });
            }
            let r = braids::n_triviality_report(&phi, a.truncate, a.fixed, cache.memory())?;
            let pass = r.in_deletion_kernels && r.lie && r.in_brun;
            out["report"] = json::n_triviality(&r);
            Ok(Outcome { pass, value: out })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_names() {
        assert_eq!(
            parse_algebra("brun4", None).unwrap(),
            Algebra::Sub {
                name: "brun4".into(),
                spec: SubspaceSpec::Brun(4)
            }
        );
        assert_eq!(
            parse_algebra("dk22", None).unwrap(),
            Algebra::Sub {
                name: "dk22".into(),
                spec: SubspaceSpec::Dk(2, 2)
            }
        );
        assert_eq!(
            parse_algebra("brun2,2", None).unwrap(),
            Algebra::Sub {
                name: "brun22".into(),
                spec: SubspaceSpec::BrunMixed(2, 2)
            }
        );
        assert_eq!(parse_algebra("p5", None).unwrap(), Algebra::Sphere(5));
        assert!(parse_algebra("t7", None).is_err());
        assert!(parse_algebra("q4", None).is_err());
        assert!(parse_algebra("brun", None).is_err());
        match parse_algebra("brun4", Some(2)).unwrap() {
            Algebra::Sub {
                spec: SubspaceSpec::Lcs(_, 2),
                ..
            } => {}
            other => panic!("{:?}", other),
        }
    }
}
