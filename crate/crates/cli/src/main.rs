use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use trifference::bounds::{best_bounds, curve_csv, BaseFacts, BoundValue};
use trifference::geometry::{
    blocking_to_json, gaussian_binomial, is_strength_blocking, line_hit_probability, parse_blocking_json, point_count,
    random_lines_blocking, LinesMode,
};
use trifference::linear::{enumerate_codewords, is_m_minimal, parse_generator_json, DEFAULT_MINIMALITY_BUDGET};
use trifference::search::{
    build_cover_instance, lp_text, max_trifferent_exact, max_trifferent_slice, min_blocking_exact, tl_from_blocking,
    BlockingOptima, BlockingOptions, SearchOutcome, TrifferentOptions,
};
use trifference::ternary::{
    alteration_construct, format_code, is_m_trifferent, min_triple_trifference, parse_code, repetition_lift,
};
use trifference::Error;

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "trifference", version, about = "Bounds, constructions and exact searches for m-trifferent ternary codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a code file is m-trifferent.
    Verify {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Check a linear code given by a JSON generator matrix.
    VerifyLinear {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = LinearMode::Both)]
        mode: LinearMode,
    },
    /// Check that a JSON point set is a strength-m strong blocking set.
    VerifyBlocking {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Best certified bounds on T(n,m).
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write the rate curves as CSV.
    Curve {
        #[arg(long)]
        grid_step: f64,
        #[arg(long)]
        out: PathBuf,
    },
    #[command(subcommand)]
    Construct(Construct),
    #[command(subcommand)]
    Exact(Exact),
    /// Recompute the tables of exact values.
    Tables {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        /// Budget per cell.
        #[arg(long)]
        budget_seconds: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    #[command(subcommand)]
    Geometry(Geometry),
}

#[derive(Subcommand)]
enum Construct {
    /// Random code with expurgation of bad triples.
    Alteration {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        retries: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union of random lines of PG(k-1,3), verified as a blocking set.
    Lines {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::General)]
        mode: ModeArg,
        #[arg(long, default_value_t = trifference::geometry::DEFAULT_MAX_ATTEMPTS)]
        attempts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeat every coordinate of a code m times.
    Lift {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Exact {
    /// Largest m-trifferent code of length n.
    Trifferent {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Restrict to words with exactly this many 2s.
        #[arg(long)]
        slice_twos: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Only use translations for symmetry breaking.
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Smallest strength-m strong blocking set in PG(k-1,3).
    Blocking {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Write the covering program and exit without solving.
        #[arg(long)]
        export_lp: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        max_multiplicity: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Geometry {
    /// Points, lines and affine targets of PG(k-1,3).
    Count {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LinearMode {
    Minimal,
    Trifferent,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    General,
    Asymptotic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Nonlinear,
    Linear,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Error::BudgetExceeded(msg)) => {
            eprintln!("error: budget exceeded: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read(path: &Path) -> trifference::Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Writes via a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> trifference::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> trifference::Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        EXIT_FALSE
    }
}

fn run(command: Command) -> trifference::Result<u8> {
    match command {
        Command::Verify { code, m } => {
            let c = parse_code(&read(&code)?)?;
            let v = is_m_trifferent(&c, m)?;
            match &v.violation {
                None => println!("m-trifferent for m={m}: yes ({} words of length {})", c.size(), c.word_len()),
                Some([a, b, cc]) => println!("m-trifferent for m={m}: no (triple {a} {b} {cc})"),
            }
            Ok(status(v.holds))
        }
        Command::VerifyLinear { gen, m, mode } => {
            let code = parse_generator_json(&read(&gen)?)?;
            let mut ok = true;
            if matches!(mode, LinearMode::Minimal | LinearMode::Both) {
                let r = is_m_minimal(&code, m, DEFAULT_MINIMALITY_BUDGET)?;
                println!("m-minimal for m={m}: {}", yes_no(r.holds));
                if let Some(w) = &r.witness {
                    println!("  witness: {}", serde_json::to_string(w)?);
                }
                ok &= r.holds;
            }
            if matches!(mode, LinearMode::Trifferent | LinearMode::Both) {
                let v = is_m_trifferent(&enumerate_codewords(&code)?, m)?;
                println!("m-trifferent for m={m}: {}", yes_no(v.holds));
                ok &= v.holds;
            }
            Ok(status(ok))
        }
        Command::VerifyBlocking { set, m } => {
            let b = parse_blocking_json(&read(&set)?)?;
            let v = is_strength_blocking(&b, m)?;
            println!("strong blocking of strength {m}: {} (smallest target count {})", yes_no(v.holds), v.min_count);
            if let Some(w) = &v.witness {
                println!("  failing target: {}", serde_json::to_string(w)?);
            }
            Ok(status(v.holds))
        }
        Command::Bounds { n, m, json } => {
            let b = best_bounds(n, m, &BaseFacts::published())?;
            if json {
                let side = |v: &BoundValue, chain: &[String]| {
                    json!({
                        "log2": v.effective_log2(),
                        "integer": v.integer_value,
                        "provenance": v.provenance,
                        "constant_known": v.constant_known,
                        "chain": chain,
                    })
                };
                let out = json!({
                    "n": n,
                    "m": m,
                    "lower": side(&b.lower, &b.lower_chain),
                    "upper": side(&b.upper, &b.upper_chain),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("T({n},{m}) bounds");
                println!("  lower: {}  [{}]", describe(&b.lower), b.lower_chain.join(" <- "));
                println!("  upper: {}  [{}]", describe(&b.upper), b.upper_chain.join(" <- "));
            }
            Ok(0)
        }
        Command::Curve { grid_step, out } => {
            write_atomic(&out, &curve_csv(grid_step)?)?;
            Ok(0)
        }
        Command::Construct(c) => construct(c),
        Command::Exact(e) => exact(e),
        Command::Tables { which, budget_seconds, threads } => tables(which, budget_seconds.map(Duration::from_secs), threads),
        Command::Geometry(Geometry::Count { k }) => {
            if !(1..=30).contains(&k) {
                return Err(Error::OutOfRange(format!("geometry count supports 1 <= k <= 30, got {k}")));
            }
            println!("k = {k}");
            println!("points: {}", point_count(k));
            if k >= 2 {
                let lines = gaussian_binomial(k as u32, 2);
                println!("lines: {lines}");
                println!("affine targets: {}", lines * 8u32);
            }
            if k >= 3 {
                println!("line hit probability: {}", line_hit_probability(k as u32)?);
            }
            Ok(0)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe(v: &BoundValue) -> String {
    match v.integer_value {
        Some(i) => format!("{i}"),
        None => format!("2^{:.6}", v.effective_log2()),
    }
}

fn construct(c: Construct) -> trifference::Result<u8> {
    match c {
        Construct::Alteration { n, m, seed, retries, out } => {
            let a = alteration_construct(n, m, seed, retries)?;
            eprintln!(
                "sampled {} words, kept {} (target {}), attempts {}",
                a.sample_size,
                a.code.size(),
                a.target,
                a.attempts
            );
            emit(out.as_deref(), &format_code(&a.code))?;
            Ok(status(a.reached_target))
        }
        Construct::Lines { k, m, seed, mode, attempts, out } => {
            let mode = match mode {
                ModeArg::General => LinesMode::General,
                ModeArg::Asymptotic => LinesMode::Asymptotic,
            };
            match random_lines_blocking(k, m, mode, seed, attempts) {
                Ok(r) => {
                    eprintln!(
                        "{} lines per attempt, {} attempts, {} points",
                        r.lines_per_attempt,
                        r.attempts,
                        r.set.total_size()
                    );
                    emit(out.as_deref(), &(blocking_to_json(&r.set) + "\n"))?;
                    Ok(0)
                }
                Err(e @ Error::ConstructionFailed { .. }) => {
                    eprintln!("{e}");
                    Ok(EXIT_FALSE)
                }
                Err(e) => Err(e),
            }
        }
        Construct::Lift { code, m, out } => {
            let c = parse_code(&read(&code)?)?;
            let lifted = repetition_lift(&c, m)?;
            if lifted.size() >= 3 {
                eprintln!("min trifference {}", min_triple_trifference(&lifted).min_trifference.unwrap_or(0));
            }
            emit(out.as_deref(), &format_code(&lifted))?;
            Ok(0)
        }
    }
}

fn report<W>(o: &SearchOutcome<W>, witness_file: Option<&Path>, json: bool) -> trifference::Result<u8> {
    if json {
        let file = witness_file.map(|p| p.to_string_lossy().into_owned());
        println!("{}", serde_json::to_string(&o.summary(file.as_deref()))?);
    } else if !o.feasible {
        println!("infeasible");
    } else {
        println!("value: {}", o.value);
        println!("optimal: {}", o.optimal);
        if o.budget_hit {
            println!("bound from unexplored frontier: {}", o.frontier_bound);
        }
        println!("nodes: {}  seconds: {:.3}", o.nodes, o.seconds);
    }
    Ok(if !o.feasible {
        EXIT_FALSE
    } else if o.optimal {
        0
    } else {
        EXIT_BUDGET
    })
}

fn exact(e: Exact) -> trifference::Result<u8> {
    match e {
        Exact::Trifferent { n, m, budget_seconds, slice_twos, threads, no_symmetry, witness, json } => {
            let opts = TrifferentOptions {
                budget: budget_seconds.map(Duration::from_secs),
                threads,
                symmetry: !no_symmetry,
                known: BaseFacts::new(),
            };
            let o = match slice_twos {
                Some(t) => max_trifferent_slice(n, m, t, &opts)?,
                None => max_trifferent_exact(n, m, &opts)?,
            };
            if let (Some(p), Some(w)) = (&witness, &o.witness) {
                write_atomic(p, &format_code(w))?;
            }
            report(&o, witness.as_deref(), json)
        }
        Exact::Blocking { k, m, budget_seconds, export_lp, max_multiplicity, threads, witness, json } => {
            if let Some(path) = export_lp {
                let inst = build_cover_instance(k, m)?;
                write_atomic(&path, &lp_text(&inst))?;
                eprintln!("wrote {} variables, {} constraints", inst.points.len(), inst.targets.len());
                return Ok(0);
            }
            let opts = BlockingOptions { budget: budget_seconds.map(Duration::from_secs), threads, max_multiplicity };
            let o = min_blocking_exact(k, m, &opts)?;
            if let (Some(p), Some(w)) = (&witness, &o.witness) {
                write_atomic(p, &(blocking_to_json(w) + "\n"))?;
            }
            report(&o, witness.as_deref(), json)
        }
    }
}

/// Nonlinear cells in computation order; each result feeds the bounds of later cells.
const NONLINEAR_CELLS: [(usize, usize); 13] =
    [(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (4, 2), (5, 2), (6, 2), (4, 3), (5, 3), (6, 3), (7, 3)];

fn tables(which: Which, budget: Option<Duration>, threads: usize) -> trifference::Result<u8> {
    let mut all_optimal = true;
    if which != Which::Linear {
        println!("T(n,m)");
        println!("{:>3} {:>3} {:>6} {:>8}", "n", "m", "value", "optimal");
        let mut known = BaseFacts::new();
        for (n, m) in NONLINEAR_CELLS {
            let opts = TrifferentOptions { budget, threads, symmetry: true, known: known.clone() };
            let o = max_trifferent_exact(n, m, &opts)?;
            println!("{n:>3} {m:>3} {:>6} {:>8}", o.value, o.optimal);
            if o.optimal {
                known.insert(n, m, o.value as u64);
            }
            all_optimal &= o.optimal;
        }
    }
    if which != Which::Nonlinear {
        if which == Which::All {
            println!();
        }
        println!("smallest strong blocking sets in PG(k-1,3)");
        println!("{:>3} {:>3} {:>6} {:>8}", "k", "m", "size", "optimal");
        for (k, m) in [(3, 2), (4, 2), (4, 3), (4, 4), (4, 5), (4, 6), (4, 7)] {
            let o = min_blocking_exact(k, m, &BlockingOptions { budget, threads, max_multiplicity: 1 })?;
            println!("{k:>3} {m:>3} {:>6} {:>8}", o.value, o.optimal);
            all_optimal &= o.optimal;
        }
        // linear codes may repeat columns, so the derived values use multisets
        let mut optima = BlockingOptima::new();
        for k in 2..=4 {
            let o = min_blocking_exact(k, 2, &BlockingOptions { budget, threads, max_multiplicity: 2 })?;
            if o.optimal {
                optima.insert(k, 2, o.value);
            }
            all_optimal &= o.optimal;
        }
        println!();
        println!("T_L(n,2)");
        for n in 11..=16 {
            match tl_from_blocking(n, 2, &optima) {
                Ok(f) => println!("{n:>3} {:>6}", f.value),
                Err(Error::InsufficientData(msg)) => println!("{n:>3} {:>6}  ({msg})", "?"),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(if all_optimal { 0 } else { EXIT_BUDGET })
}
