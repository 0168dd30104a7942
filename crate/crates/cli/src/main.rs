use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use tope_committees::blocking::{self, BlockingInstance, BlockingMethod};
use tope_committees::convex::{self, LayerMethod};
use tope_committees::cross::{self, CrossInstance, CrossMethod};
use tope_committees::formulas::{
    crosscheck, evaluate_committees, evaluate_free_committees, CrosscheckReport, EllChoice, FormulaBudget, MethodId,
};
use tope_committees::instances::{paper_example, random_realizable, triangle};
use tope_committees::oracle::{kappa_sweep, SweepBudget, Variants};
use tope_committees::OrientedMatroid;

/// Tope committees of simple oriented matroids: exhaustive counts, counting
/// formulas, relative blocking and convex sets.
#[derive(Parser, Debug)]
#[command(name = "tope-committees", version)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a .topes file for symmetry, simplicity and non-acyclicity.
    Validate { file: PathBuf },
    /// Committee counts per cardinality.
    Kappa(KappaArgs),
    /// Compare formulas against exhaustive counts; exits 1 on disagreement.
    Crosscheck(CrosscheckArgs),
    /// Write a seeded random realizable instance.
    Gen(GenArgs),
    /// Relatively r-blocking k-sets in a Boolean lattice.
    BoolBlock(BoolBlockArgs),
    /// Relatively r-blocking elements of a crosspolytope face semilattice.
    CrossBlock(CrossBlockArgs),
    /// Convex sets, free sets and ideal layer counts.
    Convex(ConvexArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Tsv,
}

#[derive(Args, Debug)]
struct KappaArgs {
    file: PathBuf,
    /// Cardinalities, `A..B`, `A..=B` or a single `K`.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    free: bool,
    #[arg(long)]
    min: bool,
    #[arg(long)]
    maxplus: bool,
    /// `brute`, a formula tag, or `all` (cross-check every formula).
    #[arg(long, default_value = "brute")]
    method: String,
    /// `small`, `large`, or an explicit value of k or |T|-k.
    #[arg(long, default_value = "small")]
    ell: String,
    #[arg(long, value_enum, default_value = "json")]
    out: OutFormat,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    file: PathBuf,
    #[arg(long)]
    k: String,
    /// Comma-separated formula tags; all formulas when omitted.
    #[arg(long)]
    methods: Option<String>,
    #[arg(long, default_value = "small")]
    ell: String,
    #[arg(long, value_enum, default_value = "json")]
    out: OutFormat,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, required_unless_present = "builtin")]
    t: Option<usize>,
    #[arg(long, required_unless_present = "builtin")]
    dim: Option<usize>,
    /// Write a built-in instance (`paper` or `c3`) instead.
    #[arg(long, conflicts_with_all = ["t", "dim"])]
    builtin: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct BoolBlockArgs {
    #[arg(long)]
    n: usize,
    /// Exact rational `P/Q` in [0, 1).
    #[arg(long)]
    r: String,
    #[arg(long)]
    k: usize,
    /// One set per line, comma-separated 1-based elements.
    #[arg(long, conflicts_with = "random")]
    antichain: Option<PathBuf>,
    /// `COUNT SIZE SEED`: a seeded random antichain.
    #[arg(long, num_args = 3, value_names = ["COUNT", "SIZE", "SEED"])]
    random: Option<Vec<u64>>,
    /// A blocking method tag or `all`.
    #[arg(long, default_value = "all")]
    method: String,
    #[arg(long, value_enum, default_value = "json")]
    out: OutFormat,
}

#[derive(Args, Debug)]
struct CrossBlockArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: String,
    #[arg(long)]
    k: usize,
    /// One set per line, comma-separated nonzero integers in -m..=m.
    #[arg(long)]
    antichain: PathBuf,
    /// `brute`, `double-mobius`, `double-ie` or `all`.
    #[arg(long, default_value = "all")]
    method: String,
    #[arg(long, value_enum, default_value = "json")]
    out: OutFormat,
}

#[derive(Args, Debug)]
struct ConvexArgs {
    file: PathBuf,
    /// Also count j-sets of topes inside some positive halfspace.
    #[arg(long)]
    layer: Option<usize>,
}

/// A failure that maps to the disagreement exit status.
#[derive(Debug)]
struct Disagreement;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Disagreement)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Option<Disagreement>> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Kappa(a) => kappa(a),
        Command::Crosscheck(a) => crosscheck_cmd(a),
        Command::Gen(a) => gen(a),
        Command::BoolBlock(a) => bool_block(a),
        Command::CrossBlock(a) => cross_block(a),
        Command::Convex(a) => convex_cmd(a),
    }
}

fn load(path: &Path) -> Result<OrientedMatroid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    OrientedMatroid::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_valid(path: &Path) -> Result<OrientedMatroid> {
    let om = load(path)?;
    let report = om.validate();
    if !report.is_clean() {
        bail!("{} fails validation: {report}", path.display());
    }
    Ok(om)
}

fn parse_k_range(s: &str) -> Result<RangeInclusive<usize>> {
    let parse = |x: &str| x.trim().parse::<usize>().with_context(|| format!("bad cardinality {x:?}"));
    if let Some((a, b)) = s.split_once("..=") {
        Ok(parse(a)?..=parse(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        Ok(parse(a)?..=parse(b)?)
    } else {
        let k = parse(s)?;
        Ok(k..=k)
    }
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>> {
    s.trim().parse().map_err(|_| anyhow!("r must be a fraction P/Q, got {s:?}"))
}

fn print_json(v: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn validate(file: &Path) -> Result<Option<Disagreement>> {
    let om = load(file)?;
    let report = om.validate();
    if report.is_clean() {
        println!("ok: t={} topes={}", om.ground_size(), om.num_topes());
        Ok(None)
    } else {
        bail!("{} fails validation: {report}", file.display())
    }
}

fn kappa(a: KappaArgs) -> Result<Option<Disagreement>> {
    let om = load_valid(&a.file)?;
    let n = om.num_topes();
    let range = match &a.k {
        Some(s) => parse_k_range(s)?,
        None => 1..=n.saturating_sub(1),
    };
    if a.method == "brute" {
        let variants = Variants {
            free: a.free,
            min: a.min,
            maxplus: a.maxplus,
        };
        let report = kappa_sweep(&om, range, variants, &SweepBudget::default())?;
        match a.out {
            OutFormat::Tsv => print!("{}", report.to_tsv()),
            OutFormat::Json => {
                let mut v = serde_json::to_value(&report)?;
                v["total"] = json!(report.total());
                if let Some(f) = report.total_free() {
                    v["total_free"] = json!(f);
                }
                print_json(&v)?;
            }
        }
        return Ok(None);
    }
    let ell: EllChoice = a.ell.parse()?;
    if a.method == "all" {
        let report = crosscheck(&om, range, &MethodId::all(), ell, &FormulaBudget::default(), &SweepBudget::default())?;
        return emit_crosscheck(&report, a.out);
    }
    let method: MethodId = a.method.parse()?;
    let budget = FormulaBudget::default();
    let mut results = Vec::new();
    for k in range {
        let start = Instant::now();
        let outcome = match method {
            MethodId::Committee(m) if k >= 3 && k + 3 <= n => evaluate_committees(&om, k, m, ell, &budget),
            MethodId::Free(m) if k >= 3 && k <= n / 2 => evaluate_free_committees(&om, k, m, &budget),
            _ => continue,
        };
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let e = outcome.with_context(|| format!("{method} at k={k}"))?;
        results.push(json!({"k": k, "method": method.tag(), "value": e.value.to_string(),
            "elapsed_ms": elapsed_ms, "agrees": Value::Null}));
    }
    if results.is_empty() {
        bail!("no cardinality in range is admissible for {method}");
    }
    match a.out {
        OutFormat::Tsv => {
            println!("k\tmethod\tvalue\telapsed_ms");
            for r in &results {
                println!("{}\t{}\t{}\t{:.1}", r["k"], method, r["value"].as_str().unwrap(), r["elapsed_ms"].as_f64().unwrap());
            }
        }
        OutFormat::Json => print_json(&json!({
            "instance": {"t": om.ground_size(), "num_topes": n},
            "results": results,
            "totals": {"cells": results.len()},
        }))?,
    }
    Ok(None)
}

fn emit_crosscheck(report: &CrosscheckReport, out: OutFormat) -> Result<Option<Disagreement>> {
    match out {
        OutFormat::Json => println!("{}", report.to_json()),
        OutFormat::Tsv => print!("{}", report.to_tsv()),
    }
    let t = &report.totals;
    eprintln!(
        "{} cells: {} agree, {} disagree, {} not evaluated",
        t.cells, t.agreeing, t.disagreeing, t.errors
    );
    Ok((!report.all_agree()).then_some(Disagreement))
}

fn crosscheck_cmd(a: CrosscheckArgs) -> Result<Option<Disagreement>> {
    let om = load_valid(&a.file)?;
    let range = parse_k_range(&a.k)?;
    let methods = match &a.methods {
        None => MethodId::all(),
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse::<MethodId>().map_err(anyhow::Error::from))
            .collect::<Result<_>>()?,
    };
    let ell: EllChoice = a.ell.parse()?;
    let report = crosscheck(&om, range, &methods, ell, &FormulaBudget::default(), &SweepBudget::default())?;
    emit_crosscheck(&report, a.out)
}

fn gen(a: GenArgs) -> Result<Option<Disagreement>> {
    let om = match (a.builtin.as_deref(), a.t, a.dim) {
        (Some("paper"), ..) => paper_example(),
        (Some("c3"), ..) => triangle(),
        (Some(other), ..) => bail!("unknown built-in instance {other:?} (expected paper or c3)"),
        (None, Some(t), Some(d)) => random_realizable(t, d, a.seed)?,
        _ => bail!("give --t and --dim, or --builtin"),
    };
    fs::write(&a.out, om.to_topes_string()).with_context(|| format!("writing {}", a.out.display()))?;
    println!("wrote {} topes (t={}) to {}", om.num_topes(), om.ground_size(), a.out.display());
    Ok(None)
}

#[derive(Serialize)]
struct BlockRow {
    method: String,
    value: Option<String>,
    elapsed_ms: f64,
    agrees: Option<bool>,
    error: Option<String>,
}

fn run_rows<M: Copy>(
    methods: &[M],
    tag: impl Fn(M) -> String,
    count: impl Fn(M) -> tope_committees::Result<u128>,
    reference: Option<u128>,
) -> Vec<BlockRow> {
    methods
        .iter()
        .map(|&m| {
            let start = Instant::now();
            let r = count(m);
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            match r {
                Ok(v) => BlockRow {
                    method: tag(m),
                    value: Some(v.to_string()),
                    elapsed_ms,
                    agrees: reference.map(|b| b == v),
                    error: None,
                },
                Err(e) => BlockRow {
                    method: tag(m),
                    value: None,
                    elapsed_ms,
                    agrees: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

fn emit_block(instance: Value, rows: &[BlockRow], out: OutFormat, gate: bool) -> Result<Option<Disagreement>> {
    let disagreeing = rows.iter().filter(|r| r.agrees == Some(false)).count();
    let errors = rows.iter().filter(|r| r.error.is_some()).count();
    match out {
        OutFormat::Json => print_json(&json!({
            "instance": instance,
            "results": rows,
            "totals": {"cells": rows.len(), "disagreeing": disagreeing, "errors": errors},
        }))?,
        OutFormat::Tsv => {
            println!("method\tvalue\tagrees\telapsed_ms\tnote");
            for r in rows {
                println!(
                    "{}\t{}\t{}\t{:.1}\t{}",
                    r.method,
                    r.value.as_deref().unwrap_or("-"),
                    r.agrees.map_or("-", |a| if a { "yes" } else { "NO" }),
                    r.elapsed_ms,
                    r.error.as_deref().unwrap_or("-")
                );
            }
        }
    }
    if !gate && errors > 0 {
        bail!("{}", rows[0].error.clone().unwrap_or_default());
    }
    Ok((disagreeing > 0).then_some(Disagreement))
}

fn bool_block(a: BoolBlockArgs) -> Result<Option<Disagreement>> {
    let r = parse_ratio(&a.r)?;
    let antichain = match (&a.antichain, &a.random) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            blocking::parse_antichain(&text, a.n)?
        }
        (None, Some(v)) => {
            let (count, size, seed) = (v[0] as usize, v[1] as usize, v[2]);
            blocking::random_antichain(a.n, count, size..=size, seed)?
        }
        _ => bail!("give exactly one of --antichain FILE or --random COUNT SIZE SEED"),
    };
    let inst = BlockingInstance::new(a.n, antichain, r, a.k)?;
    let status = blocking::check_constraints(&inst);
    let all = a.method == "all";
    let methods: Vec<BlockingMethod> = if all {
        BlockingMethod::all().into_iter().filter(|m| m.applies(&inst)).collect()
    } else {
        vec![a.method.parse()?]
    };
    let budget = FormulaBudget::default();
    let reference = if all { Some(blocking::brute_blockers(&inst)?) } else { None };
    let rows = run_rows(&methods, |m| m.tag().to_string(), |m| m.count(&inst, &budget), reference);
    let instance = json!({
        "n": a.n, "r": r.to_string(), "k": a.k, "nu": inst.nu(),
        "antichain": blocking::format_antichain(inst.antichain()).lines().collect::<Vec<_>>(),
        "satisfies_22": status.satisfies_22, "satisfies_23": status.satisfies_23,
    });
    emit_block(instance, &rows, a.out, all)
}

fn cross_block(a: CrossBlockArgs) -> Result<Option<Disagreement>> {
    let r = parse_ratio(&a.r)?;
    let text = fs::read_to_string(&a.antichain).with_context(|| format!("reading {}", a.antichain.display()))?;
    let antichain = cross::parse_signed_antichain(&text, a.m)?;
    let inst = CrossInstance::new(a.m, antichain, r, a.k)?;
    // `None` stands for brute force.
    let all = a.method == "all";
    let methods: Vec<Option<CrossMethod>> = match a.method.as_str() {
        "all" => std::iter::once(None).chain(CrossMethod::ALL.iter().map(|&m| Some(m))).collect(),
        "brute" => vec![None],
        s => vec![Some(
            CrossMethod::ALL
                .into_iter()
                .find(|m| m.tag() == s)
                .ok_or_else(|| anyhow!("unknown cross-block method {s:?}"))?,
        )],
    };
    let reference = if all { Some(cross::brute_blockers_cross(&inst)?) } else { None };
    let rows = run_rows(
        &methods,
        |m| m.map_or("brute".into(), |m| m.tag().to_string()),
        |m| match m {
            None => cross::brute_blockers_cross(&inst),
            Some(m) => cross::count_blockers_cross(&inst, m),
        },
        reference,
    );
    let instance = json!({
        "m": a.m, "r": r.to_string(), "k": a.k, "nu": inst.nu(),
        "antichain": cross::format_signed_antichain(a.m, inst.antichain()).lines().collect::<Vec<_>>(),
        "layer_size": cross::layer_size(a.m, a.k).to_string(),
    });
    emit_block(instance, &rows, a.out, all)
}

fn convex_cmd(a: ConvexArgs) -> Result<Option<Disagreement>> {
    let om = load_valid(&a.file)?;
    let lat = convex::convex_sets(&om)?;
    let free: usize = lat.free_sets().count();
    let by_size: Vec<Value> = lat
        .counts_by_size()
        .iter()
        .enumerate()
        .map(|(s, &(c, f))| json!({"size": s, "convex": c, "free": f}))
        .collect();
    let mut out = json!({
        "instance": {"t": om.ground_size(), "num_topes": om.num_topes()},
        "convex_sets": lat.len(),
        "free_sets": free,
        "by_size": by_size,
    });
    let mut mismatch = false;
    if let Some(j) = a.layer {
        let direct = convex::ideal_layer_count(&om, j, LayerMethod::Direct)?;
        let via_free = convex::ideal_layer_count(&om, j, LayerMethod::FreeSets)?;
        mismatch = direct != via_free;
        out["layer"] = json!({"j": j, "direct": direct.to_string(), "free_sets": via_free.to_string()});
    }
    print_json(&out)?;
    Ok(mismatch.then_some(Disagreement))
}
