//! `hare reduce | verify | gen | stats`.
//!
//! Exit status: 0 success, 1 I/O error, 2 parse or usage error, 3 internal
//! error or failed verification, 4 instance too large for `verify`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hare_core::fasthare::{self, Config, Outcome};
use hare_core::model::IsingHamiltonian;
use log::{debug, info};
use rayon::prelude::*;

use crate::error::HareError;
use crate::formats::{self, Format};
use crate::generate::{self, GeneratorSpec, Topology};
use crate::json::{self, MapDoc, ReportDoc};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "hare", version, about = "Reduce Ising and QUBO instances by compressing non-separable groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce an instance (or every file in a directory).
    Reduce(ReduceArgs),
    /// Reduce small instances and check the result by exhaustive search.
    Verify(VerifyArgs),
    /// Generate a random instance in the native Ising format.
    Gen(GenArgs),
    /// Print instance statistics.
    Stats(StatsArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Args)]
struct EngineArgs {
    /// Candidate edges kept per node.
    #[arg(long, default_value_t = fasthare::DEFAULT_ALPHA, value_parser = positive)]
    alpha: usize,
    /// Merge weakly non-separable pairs when nothing stronger is found.
    #[arg(long, value_enum, default_value = "on")]
    weak_ngs: Switch,
}

impl EngineArgs {
    fn config(&self) -> Config {
        Config {
            alpha: self.alpha,
            weak_ngs: self.weak_ngs == Switch::On,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Reduced instance, or a directory when the input is one.
    #[arg(short, long)]
    output: PathBuf,
    /// Input format; detected from the header when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    engine: EngineArgs,
    /// Reduction map (default: OUTPUT.map.json).
    #[arg(long)]
    map: Option<PathBuf>,
    /// Run report (default: OUTPUT.report.json).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the report as JSON instead of the summary line.
    #[arg(long)]
    json: bool,
    /// Record time_ms as 0 so reports are reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    /// Worker threads for directory input.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Instance to check; random instances are generated when omitted.
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// First seed for random instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random instances.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Largest random instance.
    #[arg(long, default_value_t = 12)]
    max_spins: usize,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(value_enum)]
    topology: Topology,
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    avg_degree: usize,
    #[arg(long, default_value_t = 1024)]
    weight_bound: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
    /// Draw a field for every spin as well.
    #[arg(long)]
    with_fields: bool,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Runs the command line `args` (program name first), writing human output
/// to `out`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Reduce(a) => reduce(&a, out),
        Command::Verify(a) => verify_cmd(&a, out),
        Command::Gen(a) => gen(&a, out),
        Command::Stats(a) => stats(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hare: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, HareError> {
    fs::read_to_string(path).map_err(|e| HareError::io(path, e))
}

fn write(path: &Path, contents: &str) -> Result<(), HareError> {
    fs::write(path, contents).map_err(|e| HareError::io(path, e))
}

fn load(path: &Path, format: Option<Format>) -> Result<IsingHamiltonian, HareError> {
    let text = read(path)?;
    let format = format.unwrap_or_else(|| Format::detect(&text));
    debug!("parsing {} as {format:?}", path.display());
    formats::parse(&text, format).map_err(|source| HareError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

struct Reduced {
    outcome: Outcome,
    report: ReportDoc,
}

fn reduce_one(h: &IsingHamiltonian, config: Config, timing: bool) -> Result<Reduced, HareError> {
    let start = Instant::now();
    let outcome = fasthare::reduce(h, config)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let report = ReportDoc::new(&outcome.report, if timing { elapsed } else { 0.0 });
    Ok(Reduced { outcome, report })
}

fn summary(name: &str, r: &ReportDoc) -> String {
    format!(
        "{name}: {} -> {} spins, ratio {:.2}%, fixed {}, offset {}, {:.1} ms",
        r.nodes_before,
        r.nodes_after,
        100.0 * r.reduction_ratio_logical,
        r.fixed_spins,
        r.offset,
        r.time_ms
    )
}

fn write_outputs(
    reduced: &Reduced,
    output: &Path,
    map: &Path,
    report: &Path,
) -> Result<(), HareError> {
    write(output, &formats::write_ising(&reduced.outcome.reduction.hamiltonian))?;
    write(map, &json::to_string(&MapDoc::new(&reduced.outcome.reduction)))?;
    write(report, &json::to_string(&reduced.report))
}

fn reduce(a: &ReduceArgs, out: &mut dyn Write) -> Result<i32, HareError> {
    if a.input.is_dir() {
        return reduce_batch(a, out);
    }
    let h = load(&a.input, a.format)?;
    info!("{}: {} spins", a.input.display(), h.num_spins());
    let reduced = reduce_one(&h, a.engine.config(), !a.no_timing)?;
    let map = a.map.clone().unwrap_or_else(|| with_suffix(&a.output, ".map.json"));
    let report = a
        .report
        .clone()
        .unwrap_or_else(|| with_suffix(&a.output, ".report.json"));
    write_outputs(&reduced, &a.output, &map, &report)?;
    let line = if a.json {
        json::to_string(&reduced.report)
    } else {
        summary(&a.input.display().to_string(), &reduced.report) + "\n"
    };
    out.write_all(line.as_bytes())
        .map_err(|e| HareError::io("<stdout>", e))?;
    Ok(0)
}

fn reduce_batch(a: &ReduceArgs, out: &mut dyn Write) -> Result<i32, HareError> {
    if a.map.is_some() || a.report.is_some() {
        return Err(HareError::Usage(
            "--map and --report name single files; batch outputs go to the output directory".into(),
        ));
    }
    let mut files: Vec<PathBuf> = fs::read_dir(&a.input)
        .map_err(|e| HareError::io(&a.input, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    fs::create_dir_all(&a.output).map_err(|e| HareError::io(&a.output, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| HareError::Usage(e.to_string()))?;
    let config = a.engine.config();
    let results: Vec<Result<ReportDoc, HareError>> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let name = path.file_name().unwrap().to_string_lossy().into_owned();
                let h = load(path, a.format)?;
                let reduced = reduce_one(&h, config, !a.no_timing)?;
                let base = a.output.join(&name);
                write_outputs(
                    &reduced,
                    &with_suffix(&base, ".reduced.ising"),
                    &with_suffix(&base, ".map.json"),
                    &with_suffix(&base, ".report.json"),
                )?;
                Ok(reduced.report)
            })
            .collect()
    });
    let mut status = 0;
    let mut ok = 0;
    let mut ratio_sum = 0.0;
    let mut time_sum = 0.0;
    let mut lines = String::new();
    for (path, result) in files.iter().zip(results) {
        match result {
            Ok(r) => {
                ok += 1;
                ratio_sum += r.reduction_ratio_logical;
                time_sum += r.time_ms;
                if !a.json {
                    lines += &summary(&path.display().to_string(), &r);
                    lines.push('\n');
                }
            }
            Err(e) => {
                eprintln!("hare: {e}");
                status = status.max(e.exit_code());
            }
        }
    }
    let mean = if ok == 0 { 0.0 } else { ratio_sum / ok as f64 };
    lines += &format!(
        "batch: {ok}/{} instances reduced, mean ratio {:.2}%, total {:.1} ms\n",
        files.len(),
        100.0 * mean,
        time_sum
    );
    out.write_all(lines.as_bytes())
        .map_err(|e| HareError::io("<stdout>", e))?;
    Ok(status)
}

fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, HareError> {
    let config = a.engine.config();
    let instances: Vec<(String, IsingHamiltonian)> = match &a.input {
        Some(path) => vec![(path.display().to_string(), load(path, a.format)?)],
        None => (0..a.count)
            .map(|k| {
                let seed = a.seed + k;
                (
                    format!("seed {seed}"),
                    generate::small_random(seed, 2..=a.max_spins.max(2), 16),
                )
            })
            .collect(),
    };
    let mut failed = 0;
    let mut text = String::new();
    for (name, h) in &instances {
        let check = verify::verify(h, config)?;
        let verdict = if check.passed() { "PASS" } else { "FAIL" };
        if !check.passed() {
            failed += 1;
        }
        text += &format!(
            "{verdict} {name}: min H = {}, min H' + offset = {} + {}, {} reduced ground states, {} bad\n",
            check.original_min,
            check.reduced_min,
            check.offset,
            check.reduced_ground_states,
            check.failures
        );
    }
    out.write_all(text.as_bytes())
        .map_err(|e| HareError::io("<stdout>", e))?;
    if failed > 0 {
        return Err(HareError::VerifyFailed(format!(
            "{failed} of {} instances",
            instances.len()
        )));
    }
    Ok(0)
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, HareError> {
    let spec = GeneratorSpec {
        topology: a.topology,
        n: a.nodes,
        avg_degree: a.avg_degree,
        weight_bound: a.weight_bound,
        seed: a.seed,
        with_fields: a.with_fields,
    };
    let h = generate::generate(&spec)?;
    write(&a.output, &formats::write_ising(&h))?;
    writeln!(
        out,
        "wrote {}: {} spins, {} couplings, {} fields",
        a.output.display(),
        h.num_spins(),
        h.num_couplings(),
        h.num_fields()
    )
    .map_err(|e| HareError::io("<stdout>", e))?;
    Ok(0)
}

fn stats(a: &StatsArgs, out: &mut dyn Write) -> Result<i32, HareError> {
    let h = load(&a.input, a.format)?;
    let n = h.num_spins();
    let mut degree = vec![0usize; n];
    for (i, j, _) in h.couplings() {
        degree[i] += 1;
        degree[j] += 1;
    }
    let range = |it: &mut dyn Iterator<Item = i64>| {
        it.fold(None, |acc: Option<(i64, i64)>, w| {
            Some(acc.map_or((w, w), |(lo, hi)| (lo.min(w), hi.max(w))))
        })
        .map_or_else(|| "none".to_string(), |(lo, hi)| format!("[{lo}, {hi}]"))
    };
    let mean = if n == 0 {
        0.0
    } else {
        degree.iter().sum::<usize>() as f64 / n as f64
    };
    let text = format!(
        "n={n}\nm={}\nfields={}\ndegree: min {}, mean {mean:.2}, max {}\ncoupling weights: {}\nfield weights: {}\n",
        h.num_couplings(),
        h.num_fields(),
        degree.iter().min().copied().unwrap_or(0),
        degree.iter().max().copied().unwrap_or(0),
        range(&mut h.couplings().map(|(_, _, w)| w)),
        range(&mut h.fields().map(|(_, w)| w)),
    );
    out.write_all(text.as_bytes())
        .map_err(|e| HareError::io("<stdout>", e))?;
    Ok(0)
}
