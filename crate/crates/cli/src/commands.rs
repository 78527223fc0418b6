use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ddf_core::algebra::modular::{factorize, is_prime, prime_power};
use ddf_core::algebra::{pisano_data, pisano_period, FiniteField};
use ddf_core::composition::{ddf_for_group, ddf_for_group_half, normal_series};
use ddf_core::constructions::{
    cyclic_abelian_ddf, ea_product_ddf, heisenberg_ddf, heisenberg_ddf_for_k, patterned_starter, pisano_ddf,
    q4_order3_ddf, roots_of_unity_ddf,
};
use ddf_core::ferrero::{feasible_parameters, split_ddf};
use ddf_core::verify::{self, expand_to_nrb, verify_2_design, verify_near_resolution, Translation};
use ddf_core::{DiffFamily, Element, Group, Subgroup};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::format::{pretty, read_json, write_text, DesignFile, FamilyFile, GroupSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "ddf", version, about = "Construct and verify disjoint difference families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family and print it as JSON
    Construct(ConstructArgs),
    /// Check a family file by brute force
    Verify(VerifyArgs),
    /// Pisano period of n
    Period(PeriodArgs),
    /// Whether every maximal prime-power factor of v is 1 mod k
    Feasible { v: u64, k: u64 },
    /// Translate a DDF into its near-resolvable design
    Expand(ExpandArgs),
    /// Split an abelian DDF of odd v and k into two half-index families
    Split(SplitArgs),
    /// Try every applicable construction over a range of (v, k)
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Roots,
    Ea,
    Cyclic,
    Pisano,
    Q4,
    Heisenberg,
    Starter,
    Compose,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Comma-separated moduli or prime powers
    #[arg(long, value_delimiter = ',')]
    pub moduli: Vec<u64>,
    /// Comma-separated multiplicative subgroup for the Heisenberg method
    #[arg(long, value_delimiter = ',')]
    pub units: Vec<u64>,
    /// Group JSON file (starter)
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Job JSON file (compose)
    #[arg(long)]
    pub job: Option<PathBuf>,
    /// Write the JSON here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print blocks in compact notation instead of JSON
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Df,
    Ddf,
    Pdf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long = "as", value_enum, default_value = "df")]
    pub kind: FamilyKind,
    /// Override the index stored in the file
    #[arg(long)]
    pub lambda: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    pub n: u64,
    /// For a prime n, print pi(n), pi(n^2) and phi as JSON
    #[arg(long)]
    pub data: bool,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    pub file: PathBuf,
    /// Use left translates g + B
    #[arg(long)]
    pub left: bool,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, default_value_t = 3)]
    pub v_min: u64,
    #[arg(long, default_value_t = 100)]
    pub v_max: u64,
    #[arg(long, default_value_t = 2)]
    pub k_min: u64,
    #[arg(long, default_value_t = 6)]
    pub k_max: u64,
    /// Emit JSON rows instead of a table
    #[arg(long)]
    pub json: bool,
}

/// What a command prints on stdout and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Construct(a) => cmd_construct(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Period(a) => cmd_period(&a),
        Command::Feasible { v, k } => Ok(Outcome::ok(format!("{}\n", feasible_parameters(v, k)))),
        Command::Expand(a) => cmd_expand(&a),
        Command::Split(a) => cmd_split(&a),
        Command::Catalog(a) => cmd_catalog(&a),
    }
}

fn need(v: Option<u64>, flag: &str, method: Method) -> Result<u64, CliError> {
    v.ok_or_else(|| CliError::usage(format!("--method {method:?} needs --{flag}").to_lowercase()))
}

/// Job file for `construct --method compose`. `chain` lists subgroups by
/// generators, largest first; when absent the built-in series is used.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeJob {
    pub group: GroupSpec,
    pub k: u64,
    #[serde(default)]
    pub chain: Option<Vec<Vec<Vec<u64>>>>,
    #[serde(default)]
    pub half: bool,
}

pub fn run_compose_job(job: &ComposeJob) -> Result<DiffFamily, CliError> {
    let group = job.group.build()?;
    let chain = match &job.chain {
        None => normal_series(&group)?,
        Some(gens) => gens
            .iter()
            .map(|g| {
                let g: Vec<Element> = g.iter().map(|x| Element::new(x.clone())).collect();
                Subgroup::generated_by(&group, &g)
            })
            .collect::<Result<_, _>>()?,
    };
    Ok(if job.half { ddf_for_group_half(&group, &chain, job.k)? } else { ddf_for_group(&group, &chain, job.k)? })
}

/// Runs one construction; returns the family and its metadata.
pub fn construct(a: &ConstructArgs) -> Result<(DiffFamily, Value), CliError> {
    let m = a.method;
    let k = || need(a.k, "k", m);
    let mut meta = json!({ "method": format!("{m:?}").to_lowercase() });
    let family = match m {
        Method::Roots => roots_of_unity_ddf(&FiniteField::new(need(a.q, "q", m)?)?, k()?)?,
        Method::Ea | Method::Cyclic => {
            if a.moduli.is_empty() {
                return Err(CliError::usage(format!("--method {} needs --moduli", meta["method"])));
            }
            if m == Method::Ea {
                ea_product_ddf(&a.moduli, k()?)?
            } else {
                cyclic_abelian_ddf(&a.moduli, k()?)?
            }
        }
        Method::Pisano => {
            let p = need(a.p, "p", m)?;
            let d = pisano_data(p)?;
            let family = pisano_ddf(p, k()?)?;
            meta["p"] = json!(p);
            meta["pi_p"] = json!(d.pi_p);
            meta["pi_p2"] = json!(d.pi_p2);
            meta["phi"] = json!(d.phi.rows());
            family
        }
        Method::Q4 => q4_order3_ddf(need(a.q, "q", m)?)?,
        Method::Heisenberg => {
            let q = need(a.q, "q", m)?;
            if a.units.is_empty() {
                heisenberg_ddf_for_k(q, k()?)?
            } else {
                heisenberg_ddf(q, &a.units)?
            }
        }
        Method::Starter => {
            let group = match (&a.group, a.moduli.is_empty()) {
                (Some(path), _) => read_json::<GroupSpec>(path)?.build()?,
                (None, false) => Group::abelian(a.moduli.clone())?,
                (None, true) => return Err(CliError::usage("--method starter needs --moduli or --group")),
            };
            patterned_starter(&group)?
        }
        Method::Compose => {
            let path = a.job.as_ref().ok_or_else(|| CliError::usage("--method compose needs --job"))?;
            run_compose_job(&read_json(path)?)?
        }
    };
    // constructors certify already; the CLI checks once more before emitting
    let family = family.certify(true)?;
    Ok((family, meta))
}

fn cmd_construct(a: &ConstructArgs) -> Result<Outcome, CliError> {
    let (family, meta) = construct(a)?;
    let file = FamilyFile::of(&family, Some(meta.clone()));
    let json = file.to_json() + "\n";
    let mut stdout = String::new();
    if let Some(path) = &a.out {
        write_text(path, &json)?;
    } else if !a.pretty {
        stdout = json;
    }
    if a.pretty {
        stdout = pretty(&family, Some(&meta));
    }
    Ok(Outcome::ok(stdout))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub element: Vec<u64>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    #[serde(rename = "as")]
    pub kind: String,
    pub v: u64,
    pub k: usize,
    pub lambda: u64,
    pub blocks: usize,
    pub well_formed: bool,
    pub census_min: u64,
    pub census_max: u64,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disjoint: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<bool>,
}

/// Checks `file` as a DF, DDF or PDF. For a PDF the singleton `{0}` may be
/// listed or left implicit.
pub fn verify_file(file: &FamilyFile, kind: FamilyKind, lambda: Option<u64>) -> Result<VerifyReport, CliError> {
    let group = file.group()?;
    let blocks = file.element_blocks();
    for x in blocks.iter().flatten() {
        group.check(x)?;
    }
    let lambda = lambda.unwrap_or(file.lambda);
    let zero = group.zero();
    let well_formed = blocks.iter().all(|b| {
        let mut s = b.clone();
        s.sort();
        s.dedup();
        let size_ok = b.len() == file.k || (kind == FamilyKind::Pdf && b.len() == 1 && b[0] == zero);
        s.len() == b.len() && size_ok
    });
    let census = verify::is_difference_family(&group, &blocks, lambda)?;
    let disjoint = (kind != FamilyKind::Df).then(|| verify::is_disjoint(&blocks));
    let partition = (kind == FamilyKind::Pdf)
        .then(|| verify::is_partition(&group, &blocks) || verify::is_partition_of_nonzero(&group, &blocks));
    let pass = well_formed && census.pass && disjoint.unwrap_or(true) && partition.unwrap_or(true);
    Ok(VerifyReport {
        pass,
        kind: format!("{kind:?}").to_lowercase(),
        v: file.v,
        k: file.k,
        lambda,
        blocks: blocks.len(),
        well_formed,
        census_min: census.min,
        census_max: census.max,
        violations: census
            .violations
            .iter()
            .map(|(e, c)| Violation { element: e.coords().to_vec(), count: *c })
            .collect(),
        disjoint,
        partition,
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let file: FamilyFile = read_json(&a.file)?;
    let report = verify_file(&file, a.kind, a.lambda)?;
    let code = if report.pass { 0 } else { 1 };
    Ok(Outcome { stdout: serde_json::to_string(&report)? + "\n", code })
}

fn cmd_period(a: &PeriodArgs) -> Result<Outcome, CliError> {
    if a.data {
        let d = pisano_data(a.n)?;
        let v = json!({ "p": d.p, "pi_p": d.pi_p, "pi_p2": d.pi_p2, "phi": d.phi.rows() });
        return Ok(Outcome::ok(v.to_string() + "\n"));
    }
    Ok(Outcome::ok(format!("{}\n", pisano_period(a.n)?)))
}

fn cmd_expand(a: &ExpandArgs) -> Result<Outcome, CliError> {
    let family = read_json::<FamilyFile>(&a.file)?.family()?;
    let t = if a.left { Translation::Left } else { Translation::Right };
    let design = expand_to_nrb(&family, t)?;
    let checks = (verify_near_resolution(&design), verify_2_design(&design, family.k(), family.lambda())?);
    let out = DesignFile::of(&design, t, family.k(), family.lambda(), checks);
    let code = if checks.0 && checks.1 { 0 } else { 1 };
    Ok(Outcome { stdout: serde_json::to_string(&out)? + "\n", code })
}

fn cmd_split(a: &SplitArgs) -> Result<Outcome, CliError> {
    let family = read_json::<FamilyFile>(&a.file)?.family()?;
    let (first, second) = split_ddf(&family)?;
    let v = json!({ "first": FamilyFile::of(&first, None), "second": FamilyFile::of(&second, None) });
    Ok(Outcome::ok(v.to_string() + "\n"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub method: String,
    pub v: u64,
    pub k: u64,
    pub verified: bool,
    pub blocks: usize,
    pub time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn integer_root(v: u64, e: u32) -> Option<u64> {
    let r = (v as f64).powf(1.0 / e as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c >= 2 && c.checked_pow(e) == Some(v))
}

/// A deferred construction.
pub type Builder = Box<dyn Fn() -> ddf_core::Result<DiffFamily>>;

/// The constructions whose hypotheses hold for `(v, k)`.
pub fn applicable(v: u64, k: u64) -> Vec<(Method, Builder)> {
    let mut out: Vec<(Method, Builder)> = Vec::new();
    if v < 2 || k < 2 {
        return out;
    }
    let factors = factorize(v);
    let prime_powers: Vec<u64> = factors.iter().map(|&(p, e)| p.pow(e)).collect();
    if prime_power(v).is_some() && (v - 1).is_multiple_of(k) {
        out.push((Method::Roots, Box::new(move || roots_of_unity_ddf(&FiniteField::new(v)?, k))));
    }
    if feasible_parameters(v, k) {
        out.push((Method::Ea, Box::new(move || ea_product_ddf(&prime_powers, k))));
    }
    if factors.iter().all(|&(p, _)| p % k == 1) {
        out.push((Method::Cyclic, Box::new(move || cyclic_abelian_ddf(&[v], k))));
        out.push((
            Method::Compose,
            Box::new(move || {
                let g = Group::cyclic(v)?;
                ddf_for_group(&g, &normal_series(&g)?, k)
            }),
        ));
    }
    if let Some(p) = integer_root(v, 4) {
        if is_prime(p) && p != 5 && pisano_period(p).is_ok_and(|pi| pi % k == 0) {
            out.push((Method::Pisano, Box::new(move || pisano_ddf(p, k))));
        }
        if k == 3 && p % 3 != 0 && prime_power(p).is_some() {
            out.push((Method::Q4, Box::new(move || q4_order3_ddf(p))));
        }
    }
    if let Some(q) = integer_root(v, 3) {
        if prime_power(q).is_some() && k % 2 == 1 && (q - 1) % k == 0 {
            out.push((Method::Heisenberg, Box::new(move || heisenberg_ddf_for_k(q, k))));
        }
    }
    if k == 2 && v % 2 == 1 {
        out.push((Method::Starter, Box::new(move || patterned_starter(&Group::cyclic(v)?))));
    }
    out
}

pub fn catalog(a: &CatalogArgs) -> Vec<CatalogRow> {
    let mut rows = Vec::new();
    for v in a.v_min..=a.v_max {
        for k in a.k_min..=a.k_max {
            for (method, build) in applicable(v, k) {
                let start = Instant::now();
                let result = build().and_then(|f| f.certify(true));
                let time_ms = start.elapsed().as_secs_f64() * 1e3;
                rows.push(CatalogRow {
                    method: format!("{method:?}").to_lowercase(),
                    v,
                    k,
                    verified: result.is_ok(),
                    blocks: result.as_ref().map_or(0, DiffFamily::len),
                    time_ms,
                    error: result.err().map(|e| e.name().to_string()),
                });
            }
        }
    }
    rows
}

fn cmd_catalog(a: &CatalogArgs) -> Result<Outcome, CliError> {
    let rows = catalog(a);
    let code = if rows.iter().all(|r| r.verified) { 0 } else { 1 };
    let stdout = if a.json {
        serde_json::to_string(&rows)? + "\n"
    } else {
        let mut s = String::from("method\tv\tk\tverified\tblocks\ttime_ms\n");
        for r in &rows {
            s += &format!("{}\t{}\t{}\t{}\t{}\t{:.3}\n", r.method, r.v, r.k, r.verified, r.blocks, r.time_ms);
        }
        s
    };
    Ok(Outcome { stdout, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(81, 4), Some(3));
        assert_eq!(integer_root(343, 3), Some(7));
        assert_eq!(integer_root(82, 4), None);
        assert_eq!(integer_root(1, 3), None);
    }

    #[test]
    fn applicable_methods() {
        let names = |v, k| applicable(v, k).into_iter().map(|(m, _)| m).collect::<Vec<_>>();
        assert_eq!(names(13, 3), [Method::Roots, Method::Ea, Method::Cyclic, Method::Compose]);
        assert_eq!(names(16, 3), [Method::Roots, Method::Ea, Method::Pisano, Method::Q4]);
        assert_eq!(names(343, 3), [Method::Roots, Method::Ea, Method::Cyclic, Method::Compose, Method::Heisenberg]);
        assert_eq!(names(9, 2), [Method::Roots, Method::Ea, Method::Cyclic, Method::Compose, Method::Starter]);
        assert!(names(15, 2).contains(&Method::Starter));
        assert!(names(45, 3).is_empty());
    }

    #[test]
    fn parses_arguments() {
        let cli = Cli::try_parse_from(["ddf", "construct", "--method", "ea", "--moduli", "5,13", "--k", "4"]).unwrap();
        let Command::Construct(a) = cli.command else { panic!() };
        assert_eq!(a.moduli, [5, 13]);
        let (f, meta) = construct(&a).unwrap();
        assert_eq!((f.v(), f.len()), (65, 16));
        assert_eq!(meta["method"], "ea");
        assert!(Cli::try_parse_from(["ddf", "construct", "--method", "nope"]).is_err());
    }
}
