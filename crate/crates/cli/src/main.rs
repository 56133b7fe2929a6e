//! `dngon`: lemma sweeps, concyclic constructions, bounded searches for
//! integer-distance polygons, bound checks and SVG figures.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical
//! inconsistency is found, 2 on usage or I/O errors.

mod config;
mod render;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dngon_core::bounds::{check_claims, BoundReport};
use dngon_core::circle::construct_diophantine;
use dngon_core::kernel::{rational_to_string, DiophantineSet};
use dngon_core::search::{
    brute_force_oracle, search, SearchConfig, SearchError, SearchMode, SearchReport,
};
use dngon_core::trigon::{lemma1_sweep, task1_sweep, task2_sweep, AngleRow, Lemma1Row, SweepGrid};

use config::Settings;

#[derive(Parser)]
#[command(
    name = "dngon",
    version,
    about = "Integer-distance polygons: lemmas, constructions, searches and bounds"
)]
struct Cli {
    /// key=value settings file; flags on the command line take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for parallel sweeps and searches
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive exact checks of the triangle-comparison lemmas on a grid
    VerifyLemmas(LemmaArgs),
    /// Build a concyclic set of n points with natural pairwise distances
    Construct {
        #[arg(long)]
        n: Option<usize>,
        /// Output JSON file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded search for the largest set through a pair at distance k
    Search(SearchArgs),
    /// Brute-force reference search for tiny frames, compared against `search`
    Oracle(SearchArgs),
    /// Closed-form bounds for k, optionally checked against a search report
    CheckBounds {
        #[arg(long)]
        k: Option<u64>,
        /// Search report JSON to check
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG figure of a set file, or of the first witness in a report
    Render {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long)]
    a_max: Option<u64>,
    #[arg(long)]
    b_max: Option<u64>,
    #[arg(long)]
    k_max: Option<u64>,
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long)]
    b_max_tasks: Option<u64>,
    #[arg(long)]
    m_max_tasks: Option<u64>,
    /// Directory for lemma1.csv, task1.csv and task2.csv
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    max_dist: Option<u64>,
    /// sets, convex or concave
    #[arg(long)]
    mode: Option<String>,
    /// Report whether this many vertices were reached
    #[arg(long)]
    target_n: Option<usize>,
    /// Report JSON file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// One-row CSV summary
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn positive(name: &str, v: u64) -> Result<u64> {
    if v == 0 {
        bail!("--{name} must be positive");
    }
    Ok(v)
}

fn lemma1_csv(rows: &[&Lemma1Row]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "a", "b", "k", "m", "cosC1", "cosC2", "cosA1", "cosA2", "holds",
    ])?;
    for r in rows {
        let i = &r.instance;
        let c = &r.cosines;
        w.write_record([
            i.a.to_string(),
            i.b.to_string(),
            i.k.to_string(),
            i.m.to_string(),
            rational_to_string(&c.cos_c1),
            rational_to_string(&c.cos_c2),
            rational_to_string(&c.cos_a1),
            rational_to_string(&c.cos_a2),
            r.holds.to_string(),
        ])?;
    }
    Ok(w.into_inner()?)
}

fn angle_csv(rows: &[&AngleRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["a", "b", "c", "cos_alpha", "cos_beta", "holds"])?;
    for r in rows {
        let i = &r.instance;
        w.write_record([
            i.a.to_string(),
            i.b.to_string(),
            i.c.to_string(),
            rational_to_string(&r.cos_alpha),
            rational_to_string(&r.cos_beta),
            r.holds.to_string(),
        ])?;
    }
    Ok(w.into_inner()?)
}

fn verify_lemmas(args: LemmaArgs, cfg: &Settings) -> Result<bool> {
    let d = SweepGrid::default();
    let get =
        |flag, key, dflt| -> Result<u64> { positive(key, cfg.pick(flag, key)?.unwrap_or(dflt)) };
    let grid = SweepGrid {
        a_max: get(args.a_max, "a-max", d.a_max)?,
        b_max: get(args.b_max, "b-max", d.b_max)?,
        k_max: get(args.k_max, "k-max", d.k_max)?,
        m_max: get(args.m_max, "m-max", d.m_max)?,
        b_max_tasks: get(args.b_max_tasks, "b-max-tasks", d.b_max_tasks)?,
        m_max_tasks: get(args.m_max_tasks, "m-max-tasks", d.m_max_tasks)?,
    };
    let out: Option<PathBuf> = cfg.pick(args.out, "out")?;

    let lemma = lemma1_sweep(&grid);
    let task1 = task1_sweep(grid.b_max_tasks);
    let task2 = task2_sweep(grid.b_max_tasks, grid.m_max_tasks);

    // counterexamples first, then everything
    let bad_lemma: Vec<&Lemma1Row> = lemma.iter().filter(|r| !r.holds).collect();
    let bad_t1: Vec<&AngleRow> = task1.iter().filter(|r| !r.holds).collect();
    let bad_t2: Vec<&AngleRow> = task2.iter().filter(|r| !r.holds).collect();
    let bad = bad_lemma.len() + bad_t1.len() + bad_t2.len();
    if bad > 0 {
        println!("counterexamples:");
        if !bad_lemma.is_empty() {
            print!("{}", String::from_utf8(lemma1_csv(&bad_lemma)?)?);
        }
        for rows in [&bad_t1, &bad_t2] {
            if !rows.is_empty() {
                print!("{}", String::from_utf8(angle_csv(rows)?)?);
            }
        }
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        write_atomic(
            &dir.join("lemma1.csv"),
            &lemma1_csv(&lemma.iter().collect::<Vec<_>>())?,
        )?;
        write_atomic(
            &dir.join("task1.csv"),
            &angle_csv(&task1.iter().collect::<Vec<_>>())?,
        )?;
        write_atomic(
            &dir.join("task2.csv"),
            &angle_csv(&task2.iter().collect::<Vec<_>>())?,
        )?;
    }
    println!(
        "lemma1 {} rows, task1 {} rows, task2 {} rows, counterexamples {bad}",
        lemma.len(),
        task1.len(),
        task2.len()
    );
    Ok(bad == 0)
}

fn construct(n: Option<usize>, out: Option<PathBuf>, cfg: &Settings) -> Result<bool> {
    let n: usize = cfg.require(n, "n")?;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let out: Option<PathBuf> = cfg.pick(out, "out")?;
    let set = construct_diophantine(n)?;
    set.verify()?;
    let scale = set
        .scale()
        .map_or_else(|| "1".to_string(), |s| s.to_string());
    emit(out.as_deref(), &to_json(&set)?)?;
    eprintln!("n={n} scale={scale}");
    Ok(true)
}

fn search_config(args: &SearchArgs, cfg: &Settings) -> Result<SearchConfig> {
    let k: u64 = cfg.require(args.k, "k")?;
    let max_dist: u64 = cfg.require(args.max_dist, "max-dist")?;
    let mode: SearchMode = cfg
        .pick(args.mode.clone(), "mode")?
        .map_or(Ok(SearchMode::Sets), |m: String| m.parse())?;
    let mut sc = SearchConfig::new(k, max_dist, mode)?;
    sc.target_n = cfg.pick(args.target_n, "target-n")?;
    Ok(sc)
}

fn summary_csv(r: &SearchReport, bounds: &BoundReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "k",
        "max_dist",
        "mode",
        "apex_count",
        "edge_count",
        "max_n_found",
        "bound_4k",
        "witnesses",
        "consistent",
    ])?;
    w.write_record([
        r.k.to_string(),
        r.max_dist.to_string(),
        r.mode.to_string(),
        r.apex_count.to_string(),
        r.edge_count.to_string(),
        r.max_n_found.to_string(),
        r.bound_4k.to_string(),
        r.witnesses.len().to_string(),
        bounds.consistent.to_string(),
    ])?;
    Ok(w.into_inner()?)
}

fn finish_search(report: &SearchReport, args: &SearchArgs, cfg: &Settings) -> Result<bool> {
    let bounds = check_claims(report);
    let out: Option<PathBuf> = cfg.pick(args.out.clone(), "out")?;
    let csv_path: Option<PathBuf> = cfg.pick(args.csv.clone(), "csv")?;
    if let Some(p) = &out {
        write_atomic(p, to_json(report)?.as_bytes())?;
    } else {
        print!("{}", to_json(report)?);
    }
    if let Some(p) = &csv_path {
        write_atomic(p, &summary_csv(report, &bounds)?)?;
    }
    let line = report.summary_line();
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(bounds.consistent)
}

fn run_search(args: SearchArgs, cfg: &Settings) -> Result<bool> {
    let sc = search_config(&args, cfg)?;
    let report = search(&sc)?;
    finish_search(&report, &args, cfg)
}

fn run_oracle(args: SearchArgs, cfg: &Settings) -> Result<bool> {
    let sc = search_config(&args, cfg)?;
    let oracle = brute_force_oracle(&sc)?;
    let fast = search(&sc)?;
    let consistent = finish_search(&oracle, &args, cfg)?;
    let agree = oracle == fast;
    eprintln!("oracle agrees with search: {agree}");
    Ok(consistent && agree)
}

fn check_bounds(
    k: Option<u64>,
    report: Option<PathBuf>,
    out: Option<PathBuf>,
    cfg: &Settings,
) -> Result<bool> {
    let report_path: Option<PathBuf> = cfg.pick(report, "report")?;
    let bounds = match report_path {
        Some(p) => {
            let text =
                std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            let r: SearchReport =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            if let Some(k) = cfg.pick(k, "k")? {
                if k != r.k {
                    bail!("--k {k} does not match the report's k = {}", r.k);
                }
            }
            check_claims(&r)
        }
        None => BoundReport::for_k(cfg.require(k, "k")?)?,
    };
    print!("{}", bounds.table());
    if let Some(p) = cfg.pick::<PathBuf>(out, "out")? {
        write_atomic(&p, to_json(&bounds)?.as_bytes())?;
    }
    Ok(bounds.consistent)
}

fn load_set(path: &Path) -> Result<DiophantineSet> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let set: DiophantineSet = if value.get("witnesses").is_some() {
        let report: SearchReport = serde_json::from_value(value)?;
        match report.witnesses.into_iter().next() {
            Some(w) => w.set,
            None => bail!("report has no witnesses to render"),
        }
    } else if let Some(set) = value.get("set") {
        serde_json::from_value(set.clone())?
    } else {
        serde_json::from_value(value)?
    };
    set.verify().context("set fails its certificate")?;
    Ok(set)
}

fn run_render(input: Option<PathBuf>, out: Option<PathBuf>, cfg: &Settings) -> Result<bool> {
    let input: PathBuf = cfg.require(input, "input")?;
    let set = load_set(&input)?;
    let svg = render::render_svg(&set)?;
    emit(cfg.pick::<PathBuf>(out, "out")?.as_deref(), &svg)?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = Settings::load(cli.config.as_deref())?;
    if let Some(t) = cfg.pick(cli.threads, "threads")? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match cli.command {
        Command::VerifyLemmas(args) => verify_lemmas(args, &cfg),
        Command::Construct { n, out } => construct(n, out, &cfg),
        Command::Search(args) => run_search(args, &cfg),
        Command::Oracle(args) => run_oracle(args, &cfg),
        Command::CheckBounds { k, report, out } => check_bounds(k, report, out, &cfg),
        Command::Render { input, out } => run_render(input, out, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let inconsistent = e
                .downcast_ref::<SearchError>()
                .is_some_and(|se| matches!(se, SearchError::Inconsistent(_)));
            ExitCode::from(if inconsistent { 1 } else { 2 })
        }
    }
}
