//! Command-line front end: tables of moving averages, preorder queries,
//! equivalence-class partitions, extrema and duality reports, and the
//! verification suites. Exit codes: 0 success, 1 verification failure,
//! 2 usage or configuration error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use afmet::arith::{build_triple, triple_of, FunctionDescriptor};
use afmet::extension::{extend, ModExtended};
use afmet::means::{profile, MeanKind};
use afmet::preorders::{compare, duality_check, extrema, partition, PreorderLabel, PreorderSpec};
use afmet::registry;
use afmet::{AfError, Result};

#[derive(Parser)]
#[command(name = "afmet", version, about = "Pseudometrics and preorders on integer sequences")]
struct Cli {
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print base values and moving-average columns over one period.
    Table(TableArgs),
    /// Evaluate one preorder relation between two windows.
    Preorder(PreorderArgs),
    /// Partition the nine preorders of a function triple.
    Classes(ConfigArgs),
    /// Report the extrema of moving-average profiles.
    Extrema(ExtremaArgs),
    /// Check the extrema duality between complementary windows.
    Dual(ConfigArgs),
    /// Run a verification suite and report pass/fail counts.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Am,
    Gm,
    Hm,
}

impl From<KindArg> for MeanKind {
    fn from(k: KindArg) -> MeanKind {
        match k {
            KindArg::Am => MeanKind::Arithmetic,
            KindArg::Gm => MeanKind::Geometric,
            KindArg::Hm => MeanKind::Harmonic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Registry name, also accepted as name@modulus.
    #[arg(long = "fn")]
    function: String,
    /// Modulus of the periodic extension.
    #[arg(long)]
    n: Option<u64>,
    /// Window length; repeat for several column groups.
    #[arg(long = "m", required = true)]
    windows: Vec<usize>,
    /// Mean kinds to tabulate; defaults to all three.
    #[arg(long = "kind")]
    kinds: Vec<KindArg>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Display decimals.
    #[arg(long, default_value_t = 4)]
    precision: usize,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long = "m")]
    window: usize,
    #[arg(long, default_value_t = 4)]
    precision: usize,
}

#[derive(Args)]
struct PreorderArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long = "m")]
    window: usize,
    /// Preorder label from the alphabet f+ f* fH g+ g* gH h+ h* hH.
    #[arg(long)]
    label: String,
    x: i64,
    y: i64,
}

#[derive(Args)]
struct ExtremaArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long = "m")]
    window: usize,
    #[arg(long = "kind")]
    kinds: Vec<KindArg>,
    #[arg(long, default_value_t = 4)]
    precision: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of axioms, means, groups, tables, duality, reverse_gm, all.
    suite: String,
}

fn main() {
    // Die quietly when the consumer of a pipe goes away, like cat does.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let seed = cli.seed;
    let code = match run(cli.command, seed) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(command: Command, seed: u64) -> Result<i32> {
    match command {
        Command::Table(args) => cmd_table(args),
        Command::Preorder(args) => cmd_preorder(args),
        Command::Classes(args) => cmd_classes(args),
        Command::Extrema(args) => cmd_extrema(args),
        Command::Dual(args) => cmd_dual(args),
        Command::Verify(args) => cmd_verify(args, seed),
    }
}

/// Resolves `--fn`/`--n` into a descriptor and its extension, accepting
/// the combined `name@modulus` form as long as it does not contradict an
/// explicit `--n`.
fn resolve(function: &str, n: Option<u64>) -> Result<(FunctionDescriptor, ModExtended)> {
    if function.contains('@') {
        let ext = registry::parse_extended(function)?;
        if let Some(n) = n {
            if n != ext.modulus() {
                return Err(AfError::Config(format!(
                    "--n {n} contradicts modulus in '{function}'"
                )));
            }
        }
        return Ok((ext.base().clone(), ext));
    }
    let desc = registry::lookup(function)?;
    let n = n.ok_or_else(|| AfError::Config("missing --n (or use name@modulus)".into()))?;
    let ext = extend(&desc, n)?;
    Ok((desc, ext))
}

fn check_precision(precision: usize) -> Result<()> {
    if !(1..=15).contains(&precision) {
        return Err(AfError::Config(format!(
            "precision {precision} outside 1..=15"
        )));
    }
    Ok(())
}

fn kinds_or_all(kinds: &[KindArg]) -> Vec<MeanKind> {
    if kinds.is_empty() {
        MeanKind::ALL.to_vec()
    } else {
        kinds.iter().map(|&k| k.into()).collect()
    }
}

fn fmt(v: f64, precision: usize) -> String {
    format!("{:.precision$}", v + 0.0)
}

fn round_to(v: f64, precision: usize) -> f64 {
    let scale = 10f64.powi(precision as i32);
    (v * scale).round() / scale + 0.0
}

#[derive(Serialize)]
struct TableJson<'a> {
    #[serde(rename = "fn")]
    function: &'a str,
    n: u64,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

fn cmd_table(args: TableArgs) -> Result<i32> {
    check_precision(args.precision)?;
    let (desc, ext) = resolve(&args.function, args.n)?;
    let kinds = kinds_or_all(&args.kinds);
    let n = ext.modulus();

    let mut columns = vec!["x".to_string(), "base".to_string()];
    let mut value_columns: Vec<Vec<f64>> = vec![ext.period_values().to_vec()];
    for &m in &args.windows {
        for &kind in &kinds {
            columns.push(format!("m{m}_{}", kind.token()));
            value_columns.push(profile(&ext, m, kind)?.values);
        }
    }

    match args.format {
        FormatArg::Csv => {
            println!("{}", columns.join(","));
            for x in 0..n as usize {
                let mut row = vec![(x + 1).to_string()];
                row.extend(value_columns.iter().map(|col| fmt(col[x], args.precision)));
                println!("{}", row.join(","));
            }
        }
        FormatArg::Json => {
            let rows: Vec<Vec<f64>> = (0..n as usize)
                .map(|x| {
                    let mut row = vec![(x + 1) as f64];
                    row.extend(
                        value_columns
                            .iter()
                            .map(|col| round_to(col[x], args.precision)),
                    );
                    row
                })
                .collect();
            let table = TableJson {
                function: desc.name(),
                n,
                columns,
                rows,
            };
            println!("{}", serde_json::to_string(&table).expect("serialization"));
        }
    }
    Ok(0)
}

fn cmd_preorder(args: PreorderArgs) -> Result<i32> {
    let (desc, ext) = resolve(&args.function, args.n)?;
    let label: PreorderLabel = args.label.parse()?;
    let triple = triple_of(&desc)?;
    let spec = PreorderSpec::for_label(&triple, ext.modulus(), args.window, label)?;
    println!("{}", compare(&spec, args.x, args.y));
    Ok(0)
}

fn cmd_classes(args: ConfigArgs) -> Result<i32> {
    let (desc, ext) = resolve(&args.function, args.n)?;
    let triple = build_triple(&desc)?;
    let part = partition(&triple, ext.modulus(), args.window)?;
    println!("{}", part.to_json());
    println!("blocks: {}", part.block_count());
    Ok(0)
}

fn cmd_extrema(args: ExtremaArgs) -> Result<i32> {
    check_precision(args.precision)?;
    let (_, ext) = resolve(&args.function, args.n)?;
    for kind in kinds_or_all(&args.kinds) {
        let rep = extrema(&ext, args.window, kind)?;
        let join =
            |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        println!(
            "kind={kind} m={} max={} argmax={{{}}} min={} argmin={{{}}}",
            rep.window,
            fmt(rep.max, args.precision),
            join(&rep.argmax),
            fmt(rep.min, args.precision),
            join(&rep.argmin),
        );
    }
    Ok(0)
}

fn cmd_dual(args: ConfigArgs) -> Result<i32> {
    let (_, ext) = resolve(&args.function, args.n)?;
    let rep = duality_check(&ext, args.window)?;
    for (from, to) in &rep.max_to_min {
        println!("max {from} -> min {to}");
    }
    for (from, to) in &rep.min_to_max {
        println!("min {from} -> max {to}");
    }
    println!("verdict: {}", rep.holds);
    Ok(if rep.holds { 0 } else { 1 })
}

fn cmd_verify(args: VerifyArgs, seed: u64) -> Result<i32> {
    let reports = afmet::verify::run(&args.suite, seed)?;
    let mut failed = false;
    for rep in &reports {
        if rep.passed() {
            println!("{}: {} checks, 0 failures ... PASS", rep.name, rep.checks);
        } else {
            failed = true;
            println!(
                "{}: {} checks, {} failures ... FAIL",
                rep.name, rep.checks, rep.failure_count
            );
            if let Some(first) = rep.witnesses.first() {
                println!("  first failure: {first}");
            }
        }
    }
    Ok(if failed { 1 } else { 0 })
}
