//! `tcrgf`: command-line frontend for the derived functor engine and the TCR tables.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use tcrgf_core::cache::DiskCache;
use tcrgf_core::config::{FileConfig, FlagConfig, OutputFormat, RunConfig, CACHE_ENV};
use tcrgf_core::linalg::FinAbTwoGroup;
use tcrgf_core::nadf::{verify_path_agreement, verify_quotient_lemma, verify_stability, Engine, HomologyPath};
use tcrgf_core::oracle::verify_oracle;
use tcrgf_core::quad::Functor;
use tcrgf_core::report::Report;
use tcrgf_core::simplicial::BaseModule;
use tcrgf_core::tcr;

#[derive(Parser, Debug)]
#[command(name = "tcrgf", version, about = "Derived functors over Z/4 and the TCR(Z/4) geometric fixed point tables")]
struct Cli {
    /// Print machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,

    /// Directory for cached derived values (overridden by TCRGF_CACHE).
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<std::num::NonZeroUsize>,

    /// TOML file with defaults for the options above.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Which chain complex to take homology of.
    #[arg(long, global = true, value_enum, ignore_case = true)]
    homology: Option<PathArg>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PathArg {
    Moore,
    Normalized,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FunctorArg {
    F,
    G,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModuleArg {
    Z2,
    Z4,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derived functors L_i^(n) T(M).
    Nadf(NadfArgs),
    /// Homotopy groups of THR(Z/4)^φ and of its fixed points.
    Thr {
        #[command(subcommand)]
        command: TableCommand,
    },
    /// Kernel/cokernel table of r - f and the short exact sequences for π_i TCR.
    Tcr {
        #[command(subcommand)]
        command: SesCommand,
    },
    /// Resolve π_1 TCR(Z/4)^φ through the pushout square.
    #[command(name = "resolve-pi1")]
    ResolvePi1,
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct NadfArgs {
    #[command(subcommand)]
    table: Option<NadfTable>,
    #[arg(long, value_enum, ignore_case = true)]
    functor: Option<FunctorArg>,
    #[arg(long, value_enum, ignore_case = true)]
    module: Option<ModuleArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum NadfTable {
    /// Grid of L_i^(n) T(M) for 0 <= n <= i <= max degree.
    Table {
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, ignore_case = true, default_value = "f")]
        functor: FunctorArg,
        #[arg(long, value_enum, ignore_case = true, default_value = "z2")]
        module: ModuleArg,
    },
}

#[derive(Subcommand, Debug)]
enum TableCommand {
    Table {
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum SesCommand {
    Ses {
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyKind {
    QuotientLemma,
    Stability,
    Bounds,
    Oracle,
    Paths,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    which: VerifyKind,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = 3)]
    max_rank: usize,
}

impl From<FunctorArg> for Functor {
    fn from(f: FunctorArg) -> Self {
        match f {
            FunctorArg::F => Functor::F,
            FunctorArg::G => Functor::G,
        }
    }
}

impl From<ModuleArg> for BaseModule {
    fn from(m: ModuleArg) -> Self {
        match m {
            ModuleArg::Z2 => BaseModule::Z2,
            ModuleArg::Z4 => BaseModule::Z4,
        }
    }
}

impl From<PathArg> for HomologyPath {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Moore => HomologyPath::Moore,
            PathArg::Normalized => HomologyPath::Normalized,
        }
    }
}

enum Outcome {
    Ok,
    Failed(Report),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed(rep)) => {
            let failures: Vec<_> = rep.failures().collect();
            eprintln!("{}", json!({ "status": "failed", "suite": rep.title, "failures": failures }));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}", json!({ "status": "error", "message": format!("{e:#}") }));
            ExitCode::from(1)
        }
    }
}

fn max_degree_flag(cmd: &Command) -> Option<usize> {
    match cmd {
        Command::Nadf(NadfArgs { table: Some(NadfTable::Table { max_degree, .. }), .. }) => *max_degree,
        Command::Thr { command: TableCommand::Table { max_degree } } => *max_degree,
        Command::Tcr { command: SesCommand::Ses { max_degree } } => *max_degree,
        Command::Verify(v) => v.max_degree,
        _ => None,
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FlagConfig {
        max_degree: max_degree_flag(&cli.command),
        cache_dir: cli.cache_dir.clone(),
        json: cli.json,
        threads: cli.threads.map(|t| t.get()),
        homology: cli.homology.map(Into::into),
    };
    let cfg = RunConfig::resolve(file, flags, std::env::var(CACHE_ENV).ok())?;
    if let Some(t) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("configuring thread pool")?;
    }
    let cache = cfg.cache_dir.as_ref().map(DiskCache::open).transpose()?;
    let engine = Engine::new(cfg.homology, cache);
    let json_out = cfg.output_format == OutputFormat::Json;
    let d = cfg.max_degree;

    match cli.command {
        Command::Nadf(args) => match args.table {
            Some(NadfTable::Table { functor, module, .. }) => nadf_table(&engine, functor.into(), module.into(), d, json_out)?,
            None => {
                let (Some(f), Some(m), Some(n), Some(i)) = (args.functor, args.module, args.n, args.i) else {
                    Cli::command()
                        .error(clap::error::ErrorKind::MissingRequiredArgument, "nadf needs --functor, --module, --n and --i (or the table subcommand)")
                        .exit();
                };
                let v = engine.derived(f.into(), m.into(), n, i)?;
                if json_out {
                    println!("{}", serde_json::to_string(&v.group)?);
                } else {
                    println!("{}", v.group);
                }
            }
        },
        Command::Thr { .. } => thr_table(&engine, d, json_out)?,
        Command::Tcr { .. } => ses(&engine, d, json_out)?,
        Command::ResolvePi1 => resolve_pi1(&engine, json_out)?,
        Command::Verify(v) => {
            let rep = match v.which {
                VerifyKind::QuotientLemma => quotient_lemma(d)?,
                VerifyKind::Stability => verify_stability(&engine, d)?,
                VerifyKind::Bounds => tcr::verify_bounds(&engine, d)?,
                VerifyKind::Oracle => verify_oracle(v.max_rank, 200, 0x7c2f)?,
                VerifyKind::Paths => verify_path_agreement(d, &[Functor::F, Functor::G], &[BaseModule::Z2, BaseModule::Z4])?,
            };
            print_report(&rep, json_out)?;
            if !rep.ok() {
                return Ok(Outcome::Failed(rep));
            }
        }
    }
    Ok(Outcome::Ok)
}

fn print_table(header: &[&str], rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count()))).collect();
        println!("{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
}

fn nadf_table(engine: &Engine, functor: Functor, module: BaseModule, d: usize, json_out: bool) -> Result<()> {
    engine.prefetch(&engine.table_keys(&[functor], module, d))?;
    let mut cells = Vec::new();
    for i in 0..=d {
        for n in 0..=i {
            cells.push((n, i, engine.derived(functor, module, n, i)?.group.clone()));
        }
    }
    if json_out {
        let rows: Vec<_> = cells.iter().map(|(n, i, g)| json!({ "n": n, "i": i, "group": g })).collect();
        println!("{}", serde_json::to_string(&rows)?);
        return Ok(());
    }
    println!("L_i^(n) {functor}({module})");
    let mut header = vec!["i".to_string()];
    header.extend((0..=d).map(|n| format!("n={n}")));
    let rows: Vec<Vec<String>> = (0..=d)
        .map(|i| {
            let mut r = vec![i.to_string()];
            r.extend((0..=d).map(|n| cells.iter().find(|c| c.0 == n && c.1 == i).map(|c| c.2.to_string()).unwrap_or_default()));
            r
        })
        .collect();
    print_table(&header.iter().map(String::as_str).collect::<Vec<_>>(), &rows);
    Ok(())
}

fn thr_table(engine: &Engine, d: usize, json_out: bool) -> Result<()> {
    tcr::prefetch(engine, d)?;
    let mut rows = Vec::new();
    for i in 0..=d {
        rows.push((i, tcr::assemble_thr_c2(engine, i)?.total, tcr::assemble_thr(i).total));
    }
    if json_out {
        let out: Vec<_> = rows.iter().map(|(i, c2, thr)| json!({ "i": i, "thr_c2": c2, "thr": thr })).collect();
        println!("{}", serde_json::to_string(&out)?);
    } else {
        let cells: Vec<Vec<String>> = rows.iter().map(|(i, a, b)| vec![i.to_string(), a.to_string(), b.to_string()]).collect();
        print_table(&["i", "π_i((THR^φ)^C2)", "π_i(THR^φ)"], &cells);
    }
    Ok(())
}

fn ses(engine: &Engine, d: usize, json_out: bool) -> Result<()> {
    let table = tcr::ses_table(engine, d)?;
    if json_out {
        println!("{}", serde_json::to_string(&table)?);
        return Ok(());
    }
    let cells: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| vec![r.i.to_string(), r.thr_c2.to_string(), r.thr.to_string(), r.ker.to_string(), r.coker.to_string()])
        .collect();
    print_table(&["i", "π_i((THR^φ)^C2)", "π_i(THR^φ)", "ker (r-f)_i", "coker (r-f)_i"], &cells);
    println!();
    for s in &table.ses {
        match &s.group {
            Some(g) => println!("π_{}(TCR^φ) = {g}", s.i),
            None => println!("0 → {} → π_{}(TCR^φ) → {} → 0", s.sub, s.i, s.quotient),
        }
    }
    Ok(())
}

fn resolve_pi1(engine: &Engine, json_out: bool) -> Result<()> {
    let p = tcr::resolve_pi1(engine)?;
    if json_out {
        println!("{}", serde_json::to_string(&p)?);
        return Ok(());
    }
    let show = |v: &[FinAbTwoGroup]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    println!("coker(π_2 γ_n), n = 0..2: {}", show(&p.gamma_cokernels));
    println!("ker(π_1 γ_n), n = 0..1: {}", show(&p.gamma_kernels));
    for (n, b) in p.quotient_blocks.iter().enumerate() {
        let desc = if b.is_zero() { "zero" } else { "isomorphism" };
        println!("quotient onto coker((r-f)_2) on block n={n}: {desc}");
    }
    println!("π_1(TCR^φ) = {}", p.group);
    Ok(())
}

fn quotient_lemma(d: usize) -> Result<Report> {
    let cases: Vec<(usize, usize)> = (0..=d).flat_map(|i| (0..=i).map(move |n| (n, i))).collect();
    let results: Vec<_> = cases.par_iter().map(|&(n, i)| verify_quotient_lemma(n, i)).collect::<Result<_, _>>()?;
    let mut rep = Report::new("quotient-lemma");
    for r in results {
        let actual = format!(
            "{}{}{}",
            r.quotient,
            if r.diagonal_class_generates { "" } else { ", diagonal class does not generate" },
            if r.theta_even_on_boundaries { "" } else { ", odd θ on a boundary" }
        );
        rep.push(format!("n={} i={}", r.n, r.i), "Z/2", actual, r.holds());
    }
    Ok(rep)
}

fn print_report(rep: &Report, json_out: bool) -> Result<()> {
    if json_out {
        println!("{}", serde_json::to_string(rep)?);
        return Ok(());
    }
    for c in &rep.checks {
        let tag = if c.ok { "ok  " } else { "FAIL" };
        println!("{tag} {}: expected {}, got {}", c.name, c.expected, c.actual);
    }
    let failed = rep.failures().count();
    println!("{}: {} checks, {} failed", rep.title, rep.checks.len(), failed);
    Ok(())
}
