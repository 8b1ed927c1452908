//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bootstrap::{bootstrap_cis, format_edges};
use crate::dataset::Dataset;
use crate::direct;
use crate::error::{LingamError, Result};
use crate::eval::{run_benchmark, summary_table, BenchmarkGrid};
use crate::ica::{ica_lingam_fit, FastIcaConfig};
use crate::independence::IndependenceConfig;
use crate::io::{
    load_csv, read_json, report_to_csv, write_atomic, write_csv, write_json, CsvOptions,
    EdgesDocument, ModelDocument, ReportDocument, TruthDocument,
};
use crate::model::{CausalOrder, ConnectionMatrix};
use crate::seed::rng_from_seed;
use crate::synth::{generate, Network, SynthConfig};

#[derive(Debug, Parser)]
#[command(name = "lingam", version, about = "Causal ordering for linear non-Gaussian acyclic models")]
pub struct Cli {
    /// Worker threads; results are identical for any value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a causal order and connection strengths from a CSV file.
    Fit(FitArgs),
    /// Generate a random model and a dataset drawn from it.
    Simulate(SimulateArgs),
    /// Run a benchmark grid on synthetic data.
    Benchmark(BenchmarkArgs),
    /// Bootstrap intervals for the strengths of a fitted model.
    Bootstrap(BootstrapArgs),
}

#[derive(Debug, Args)]
pub struct CsvArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// The first row holds data, not labels.
    #[arg(long)]
    pub no_header: bool,
    /// Each CSV row is one variable.
    #[arg(long)]
    pub variables_as_rows: bool,
}

impl CsvArgs {
    fn load(&self) -> Result<Dataset> {
        let options = CsvOptions { header: !self.no_header, variables_as_rows: self.variables_as_rows };
        load_csv(&self.input, options)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Direct,
    Ica,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub csv: CsvArgs,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub n: usize,
    /// dense, sparse or random.
    #[arg(long, default_value = "random")]
    pub network: Network,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_data: PathBuf,
    #[arg(long)]
    pub out_truth: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[arg(long)]
    pub grid: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Flat per-trial CSV export.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Print medians per cell.
    #[arg(long)]
    pub summary: bool,
    /// Record wall times; the report is then no longer byte-reproducible.
    #[arg(long)]
    pub record_timings: bool,
}

#[derive(Debug, Args)]
pub struct BootstrapArgs {
    #[command(flatten)]
    pub csv: CsvArgs,
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, default_value_t = 0.99)]
    pub level: f64,
    #[arg(long, default_value_t = 2000)]
    pub resamples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

fn edge_list(b: &ConnectionMatrix, labels: &[String]) -> String {
    let mut out = String::new();
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let w = b.get(i, j);
            if w != 0.0 {
                out.push_str(&format!("{} -> {} : {}\n", labels[j], labels[i], w));
            }
        }
    }
    out
}

fn print_fit(order: &CausalOrder, b: &ConnectionMatrix, labels: &[String]) {
    println!("order: {order}");
    let named: Vec<&str> = order.as_slice().iter().map(|&v| labels[v].as_str()).collect();
    println!("labels: {}", named.join(", "));
    print!("{}", edge_list(b, labels));
}

fn fit(args: &FitArgs) -> Result<()> {
    let data = args.csv.load()?;
    let doc = match args.method {
        Method::Direct => {
            let fitted = direct::fit(&data, &IndependenceConfig::default())?;
            print_fit(&fitted.order, &fitted.strengths, data.labels());
            ModelDocument::from_direct(&fitted, data.labels())
        }
        Method::Ica => {
            let fitted = ica_lingam_fit(&data, &FastIcaConfig::with_seed(args.seed))?;
            print_fit(&fitted.order, &fitted.pruned, data.labels());
            ModelDocument::from_ica(&fitted, data.labels(), args.seed)
        }
    };
    write_json(&doc, &args.output)
}

fn simulate(args: &SimulateArgs) -> Result<()> {
    let cfg = SynthConfig { p: args.p, n: args.n, network: args.network, seed: args.seed, ..SynthConfig::default() };
    let (data, model) = generate(&cfg)?;
    write_csv(&data, &args.out_data)?;
    write_json(&TruthDocument::new(&cfg, &model, data.labels()), &args.out_truth)
}

fn benchmark(args: &BenchmarkArgs) -> Result<()> {
    let mut grid: BenchmarkGrid = serde_json::from_str(&std::fs::read_to_string(&args.grid)?)?;
    grid.record_timings |= args.record_timings;
    let report = run_benchmark(&grid)?;
    if let Some(path) = &args.csv {
        write_atomic(path, &report_to_csv(&report)?)?;
    }
    if args.summary {
        print!("{}", summary_table(&report));
    }
    write_json(&ReportDocument::new(report), &args.out)
}

fn bootstrap(args: &BootstrapArgs) -> Result<()> {
    let data = args.csv.load()?;
    let model: ModelDocument = read_json(&args.model)?;
    let order = model.causal_order()?;
    if order.len() != data.p() {
        return Err(LingamError::DimensionMismatch {
            expected: format!("{} variables in the model", order.len()),
            found: data.p().to_string(),
        });
    }
    let mut rng = rng_from_seed(args.seed);
    let edges = bootstrap_cis(&data, &order, args.level, args.resamples, &mut rng)?;
    print!("{}", format_edges(&edges, data.labels()));
    let doc = EdgesDocument::new(&edges, data.labels(), &order, args.level, args.resamples, args.seed);
    write_json(&doc, &args.out)
}

fn dispatch(command: &Command) -> Result<()> {
    match command {
        Command::Fit(a) => fit(a),
        Command::Simulate(a) => simulate(a),
        Command::Benchmark(a) => benchmark(a),
        Command::Bootstrap(a) => bootstrap(a),
    }
}

/// Runs a parsed command line on a pool of the requested size.
pub fn run(cli: Cli) -> Result<()> {
    match cli.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| LingamError::InvalidConfig(e.to_string()))?;
            pool.install(|| dispatch(&cli.command))
        }
        None => dispatch(&cli.command),
    }
}
