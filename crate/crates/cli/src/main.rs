use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rug::Integer;

use fermatreg::cache::{CoeffCache, CACHE_DIR_ENV};
use fermatreg::verify::{report_json, table_run, verify_case, write_csv, CaseRecord, CaseReport, RunConfig, RunStatus};
use fermatreg::FermatIndex;

/// Regulators versus L-values for Fermat motives.
#[derive(Parser, Debug)]
#[command(name = "fermatreg", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Largest denominator accepted during recognition.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    q_max: u64,
    /// Recognition tolerance is 10^-TOL_EXP (default: digits - 5).
    #[arg(long, global = true)]
    tol_exp: Option<u32>,
    /// Coefficient cache directory.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one index.
    Verify {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, default_value_t = 15)]
        digits: u32,
        /// Write a JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Conductor norm, for indices without a built-in one.
        #[arg(long)]
        conductor: Option<Integer>,
        /// Include stage timings in the JSON.
        #[arg(long)]
        timings: bool,
    },
    /// Run every reference row.
    Table {
        #[arg(long, default_value_t = 15)]
        digits: u32,
        /// CSV output; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
    /// Fill the coefficient cache.
    Coeffs {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        upto: usize,
    },
}

fn config(common: &Common, digits: u32) -> RunConfig {
    RunConfig {
        digits,
        q_max: common.q_max,
        tol_exp: common.tol_exp,
        cache_dir: common.cache_dir.clone(),
        parallelism: common.jobs,
        conductor: None,
    }
}

fn write_json(path: &Path, records: &[CaseRecord], timings: bool) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, &report_json(records, timings))?;
    writeln!(w)?;
    w.flush()
}

fn print_report(r: &CaseReport) {
    let d = r.digits as usize;
    let show = |x: &rug::Float| x.to_string_radix(10, Some(d));
    if let Some((n, a, b)) = r.requested {
        println!("({n},{a},{b}) reduced to {}", r.idx);
    }
    let h: Vec<String> = r.h_set.iter().map(|h| h.to_string()).collect();
    let el: Vec<String> = r.elements.iter().map(|e| e.to_string()).collect();
    println!("index      {}  g = {}  H = {{{}}}", r.idx, r.g(), h.join(", "));
    println!("elements   {}", el.join(" "));
    println!("conductor  N(f) = {}, {} coefficients", r.conductor_norm, r.coefficients_used);
    println!("R          {}", show(&r.r));
    println!("D_ab       {}", show(&r.d_ab));
    println!("R~         {}", show(&r.r_tilde));
    println!("L*(0)      {}  (epsilon = {})", show(&r.l_star), r.epsilon);
    println!("R~/L*      {}", show(&r.ratio));
    match (&r.recognized, &r.residual) {
        (Some(q), Some(res)) => println!("recognized {q}  residual {}", res.to_string_radix(10, Some(3))),
        _ => println!("recognized none"),
    }
    if let Some(e) = &r.expected {
        println!("expected   {e}  {}", if r.matches_expected() { "match" } else { "MISMATCH" });
    }
}

fn run(cli: Cli) -> Result<RunStatus, String> {
    match cli.cmd {
        Command::Verify { n, a, b, digits, json, conductor, timings } => {
            let mut cfg = config(&cli.common, digits);
            cfg.conductor = conductor;
            cfg.validate().map_err(|e| e.to_string())?;
            let result = verify_case(n, a, b, &cfg);
            let record = match &result {
                Ok(r) => {
                    print_report(r);
                    Some(CaseRecord::from_report(r))
                }
                Err(e) => {
                    eprintln!("({n},{a},{b}): {e}");
                    FermatIndex::new(n, a, b).ok().map(|idx| CaseRecord::from_error(&idx, e))
                }
            };
            if let (Some(path), Some(record)) = (json, record) {
                write_json(&path, &[record], timings).map_err(|e| e.to_string())?;
            }
            Ok(RunStatus::of_case(&result))
        }
        Command::Table { digits, out, json, timings } => {
            let run = table_run(&config(&cli.common, digits)).map_err(|e| e.to_string())?;
            let records = run.records();
            match out {
                Some(path) => {
                    let f = File::create(&path).map_err(|e| e.to_string())?;
                    write_csv(&records, BufWriter::new(f)).map_err(|e| e.to_string())?;
                }
                None => write_csv(&records, io::stdout().lock()).map_err(|e| e.to_string())?,
            }
            if let Some(path) = json {
                write_json(&path, &records, timings).map_err(|e| e.to_string())?;
            }
            for row in &run.rows {
                let got = match &row.result {
                    Ok(r) => r.recognized.as_ref().map_or("none".into(), |q| q.to_string()),
                    Err(e) => e.to_string(),
                };
                let mark = if row.matches() { "ok" } else { "MISMATCH" };
                eprintln!("{:<10} expected {:<6} got {:<6} {mark}", row.idx.to_string(), row.expected.to_string(), got);
            }
            eprintln!("{}/{} rows match", run.matched(), run.rows.len());
            Ok(run.status())
        }
        Command::Coeffs { n, a, b, upto } => {
            let cache = cli
                .common
                .cache_dir
                .map(CoeffCache::new)
                .ok_or_else(|| format!("no cache directory: pass --cache-dir or set {CACHE_DIR_ENV}"))?;
            let idx = FermatIndex::new(n, a, b).map_err(|e| e.to_string())?;
            let c = cache.get_or_compute(&idx, upto).map_err(|e| e.to_string())?;
            println!("{} coefficients in {}", c.len() - 1, cache.path_for(&idx).display());
            Ok(RunStatus::Success)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
