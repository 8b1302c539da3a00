use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dbscanpp::bench::{
    plot_rows, run_epsilon_sweep, run_levelset_experiment, run_scaling_experiment, run_tradeoff_sweep, write_plot_csv,
    write_records_csv, write_records_jsonl, AlgorithmSpec, BenchConfig, BenchRecord, LevelSetConfig,
};
use dbscanpp::data::{labels_to_image, load_csv, load_image_ppm, preset, LabelColumn, LabeledDataset, PRESETS};
use dbscanpp::eval::{
    adjusted_mutual_info_with, adjusted_rand_index_with, noise_report, AmiNormalization, DensitySpec, EvalReport,
    NoiseHandling,
};
use dbscanpp::params::SampleSize;
use dbscanpp::{
    AlgoParams, AlgorithmRegistry, Assignment, Budget, ClusterLabels, ClusteringResult, Dataset, SamplerRegistry,
};

mod grid;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] dbscanpp::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(dbscanpp::Error::InvalidParameter { .. } | dbscanpp::Error::UnknownStrategy { .. }) => 2,
            CliError::Lib(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Density-based clustering with DBSCAN and DBSCAN++.
#[derive(Debug, Parser)]
#[command(name = "dbscanpp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cluster the rows of a CSV file.
    Cluster(ClusterArgs),
    /// Segment a binary PPM (P6) image by clustering (x, y, R, G, B) pixel vectors.
    Segment(SegmentArgs),
    /// Compare two label files.
    Eval(EvalArgs),
    /// Run an experiment and write record tables.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Dbscan,
    Dbscanpp,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum AssignmentArg {
    #[default]
    Graph,
    NearestCore,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum NoiseArg {
    /// Noise points form one extra cluster.
    #[default]
    AsCluster,
    /// Points that are noise in either labeling are dropped.
    Exclude,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum NormArg {
    #[default]
    Max,
    Arithmetic,
}

impl From<NoiseArg> for NoiseHandling {
    fn from(v: NoiseArg) -> Self {
        match v {
            NoiseArg::AsCluster => NoiseHandling::AsCluster,
            NoiseArg::Exclude => NoiseHandling::Exclude,
        }
    }
}

impl From<NormArg> for AmiNormalization {
    fn from(v: NormArg) -> Self {
        match v {
            NormArg::Max => AmiNormalization::Max,
            NormArg::Arithmetic => AmiNormalization::Arithmetic,
        }
    }
}

/// Sample size for DBSCAN++; at most one of these.
#[derive(Debug, Args)]
#[group(multiple = false)]
struct SampleArgs {
    /// Absolute number of sampled points.
    #[arg(long)]
    m: Option<usize>,
    /// Sample size as a fraction of n, in (0, 1].
    #[arg(long)]
    m_ratio: Option<f64>,
    /// Exponent-schedule parameter: m = p * n^(D/(D+4)).
    #[arg(long)]
    m_p: Option<f64>,
}

impl SampleArgs {
    fn given(&self) -> bool {
        self.m.is_some() || self.m_ratio.is_some() || self.m_p.is_some()
    }

    fn sample_size(&self, default: SampleSize) -> CliResult<SampleSize> {
        let (flag, s) = if let Some(m) = self.m {
            ("--m", SampleSize::Fixed { m })
        } else if let Some(ratio) = self.m_ratio {
            ("--m-ratio", SampleSize::Ratio { ratio })
        } else if let Some(p) = self.m_p {
            ("--m-p", SampleSize::Schedule { p })
        } else {
            return Ok(default);
        };
        match s.validate() {
            Ok(()) => Ok(s),
            Err(dbscanpp::Error::InvalidParameter { reason, .. }) => Err(usage(format!("{flag} {reason}"))),
            Err(e) => Err(e.into()),
        }
    }
}

#[derive(Debug, Args)]
struct AlgoArgs {
    #[arg(long, value_enum, default_value = "dbscanpp")]
    algo: Algo,
    /// Sampling strategy for DBSCAN++ (uniform or kcenter).
    #[arg(long)]
    strategy: Option<String>,
    /// Neighbourhood radius.
    #[arg(long, allow_negative_numbers = true)]
    eps: f64,
    #[arg(long, default_value_t = dbscanpp::params::DEFAULT_MIN_PTS)]
    min_pts: usize,
    #[command(flatten)]
    sample: SampleArgs,
    /// Radius for linking cores; defaults to --eps.
    #[arg(long, allow_negative_numbers = true)]
    eps_connect: Option<f64>,
    #[arg(long, value_enum, default_value = "graph")]
    assignment: AssignmentArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl AlgoArgs {
    /// Checks flag values that do not depend on the data.
    fn validate(&self) -> CliResult<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(usage("--eps must be a positive finite number"));
        }
        if self.min_pts == 0 {
            return Err(usage("--min-pts must be >= 1"));
        }
        if let Some(c) = self.eps_connect {
            if !(c >= self.eps && c.is_finite()) {
                return Err(usage("--eps-connect must be finite and >= --eps"));
            }
        }
        if matches!(self.algo, Algo::Dbscan) && (self.sample.given() || self.strategy.is_some()) {
            return Err(usage("--strategy/--m/--m-ratio/--m-p only apply to --algo dbscanpp"));
        }
        self.sample.sample_size(SampleSize::Full)?;
        if let Some(s) = &self.strategy {
            SamplerRegistry::default().get(s)?;
        }
        Ok(())
    }

    fn params(&self, data: &Dataset) -> CliResult<AlgoParams> {
        let mut p = AlgoParams::new(self.eps, self.min_pts)
            .with_seed(self.seed)
            .with_assignment(match self.assignment {
                AssignmentArg::Graph => Assignment::Graph,
                AssignmentArg::NearestCore => Assignment::NearestCore,
            });
        if let Some(c) = self.eps_connect {
            p = p.with_epsilon_connect(c);
        }
        if matches!(self.algo, Algo::Dbscanpp) {
            // An explicit --m larger than n is an error rather than clamped.
            let m = match self.sample.sample_size(SampleSize::Full)? {
                SampleSize::Fixed { m } => m,
                s => s.resolve(data.len(), data.dim()),
            };
            p = p
                .with_strategy(self.strategy.clone().unwrap_or_else(|| "uniform".into()))
                .with_m(m);
        }
        Ok(p)
    }

    fn name(&self) -> &'static str {
        match self.algo {
            Algo::Dbscan => "dbscan",
            Algo::Dbscanpp => "dbscanpp",
        }
    }

    fn run(&self, data: &Dataset) -> CliResult<ClusteringResult> {
        let params = self.params(data)?;
        let registry = AlgorithmRegistry::default();
        Ok(registry.get(self.name())?.cluster(data, &params, &Budget::unlimited())?)
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// First row is a header.
    #[arg(long)]
    header: bool,
    /// Ground-truth column, by header name or 0-based position.
    #[arg(long)]
    label_column: Option<LabelColumn>,
}

impl InputArgs {
    fn load(&self, path: &Path) -> CliResult<LabeledDataset> {
        Ok(load_csv(path, self.header, self.label_column.as_ref())?)
    }
}

#[derive(Debug, Args)]
struct ClusterArgs {
    /// Input CSV.
    input: PathBuf,
    #[command(flatten)]
    algo: AlgoArgs,
    #[command(flatten)]
    io: InputArgs,
    /// Label file to write [default: <input>.labels].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report JSON to write [default: <input>.report.json].
    #[arg(long)]
    report: Option<PathBuf>,
    /// Leave timings out of the report.
    #[arg(long)]
    no_timings: bool,
    /// Also run DBSCAN and record noise counts of both runs.
    #[arg(long)]
    noise_report: bool,
    #[arg(long, value_enum, default_value = "as-cluster")]
    noise: NoiseArg,
    #[arg(long, value_enum, default_value = "max")]
    normalization: NormArg,
}

#[derive(Debug, Args)]
struct SegmentArgs {
    /// Input P6 PPM image.
    input: PathBuf,
    #[command(flatten)]
    algo: AlgoArgs,
    /// Segmented image to write.
    #[arg(long)]
    out: PathBuf,
    /// Optional label file, one label per pixel in row-major order.
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    predicted: PathBuf,
    truth: PathBuf,
    #[arg(long, value_enum, default_value = "as-cluster")]
    noise: NoiseArg,
    #[arg(long, value_enum, default_value = "max")]
    normalization: NormArg,
}

#[derive(Debug, Args)]
struct BenchCommon {
    #[arg(long, default_value_t = dbscanpp::params::DEFAULT_MIN_PTS)]
    min_pts: usize,
    /// Base seed; repetition r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    repetitions: u64,
    /// Worker threads for independent cells.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Per-run wall-clock cap in seconds.
    #[arg(long, default_value_t = 300.0)]
    timeout_secs: f64,
    /// Output directory.
    #[arg(long, default_value = "bench_out")]
    out_dir: PathBuf,
    /// Strip timing columns from every output.
    #[arg(long)]
    no_timings: bool,
    #[arg(long, value_enum, default_value = "as-cluster")]
    noise: NoiseArg,
    #[arg(long, value_enum, default_value = "max")]
    normalization: NormArg,
}

impl BenchCommon {
    fn config(&self) -> CliResult<BenchConfig> {
        if self.repetitions == 0 {
            return Err(usage("--repetitions must be >= 1"));
        }
        if self.workers == 0 {
            return Err(usage("--workers must be >= 1"));
        }
        if self.min_pts == 0 {
            return Err(usage("--min-pts must be >= 1"));
        }
        if !(self.timeout_secs > 0.0 && self.timeout_secs.is_finite()) {
            return Err(usage("--timeout-secs must be positive"));
        }
        Ok(BenchConfig {
            min_pts: self.min_pts,
            seeds: (0..self.repetitions).map(|r| self.seed.wrapping_add(r)).collect(),
            timeout: std::time::Duration::from_secs_f64(self.timeout_secs),
            workers: self.workers,
            noise: self.noise.into(),
            normalization: self.normalization.into(),
            ..BenchConfig::default()
        })
    }

    fn write(&self, name: &str, records: Vec<BenchRecord>, x: &str, y: &str) -> CliResult<()> {
        let records: Vec<BenchRecord> = if self.no_timings {
            records.into_iter().map(BenchRecord::without_timings).collect()
        } else {
            records
        };
        std::fs::create_dir_all(&self.out_dir).map_err(|e| {
            dbscanpp::Error::Io {
                path: self.out_dir.clone(),
                source: e,
            }
        })?;
        let base = self.out_dir.join(name);
        write_records_csv(&base.with_extension("csv"), &records)?;
        write_records_jsonl(&base.with_extension("jsonl"), &records)?;
        let plot = plot_rows(&records, x, y)?;
        write_plot_csv(&self.out_dir.join(format!("{name}_plot.csv")), &plot)?;
        let timeouts = records.iter().filter(|r| r.status == dbscanpp::bench::RunStatus::Timeout).count();
        println!(
            "{name}: {} records written to {}{}",
            records.len(),
            self.out_dir.display(),
            if timeouts > 0 { format!(" ({timeouts} timed out)") } else { String::new() }
        );
        Ok(())
    }
}

/// Data for sweeps: a CSV file, or a named generator.
#[derive(Debug, Args)]
struct SourceArgs {
    /// Input CSV (omit to use --gen).
    input: Option<PathBuf>,
    #[command(flatten)]
    io: InputArgs,
    /// Synthetic generator instead of a file.
    #[arg(long, conflicts_with = "input")]
    gen: Option<String>,
    /// Points to generate with --gen.
    #[arg(long, default_value_t = 5000)]
    n: usize,
}

impl SourceArgs {
    fn load(&self, seed: u64) -> CliResult<LabeledDataset> {
        match (&self.input, &self.gen) {
            (Some(path), None) => self.io.load(path),
            (None, Some(name)) => Ok(preset(name, self.n, seed)?),
            _ => Err(usage(format!("give an input CSV or --gen <{}>", PRESETS.join("|")))),
        }
    }
}

fn parse_grid_flag(flag: &str, s: &str) -> CliResult<Vec<f64>> {
    grid::parse_grid(s).map_err(|e| usage(format!("{flag}: {e}")))
}

fn parse_algorithms(labels: &[String], sample: SampleSize) -> CliResult<Vec<AlgorithmSpec>> {
    labels.iter().map(|l| Ok(AlgorithmSpec::parse(l, sample)?)).collect()
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Runtime against dataset size.
    Scaling {
        #[arg(long, default_value = "gauss4x3d")]
        gen: String,
        #[arg(long, value_delimiter = ',', default_values_t = [1000, 4000, 16000, 64000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, value_delimiter = ',', default_value = "dbscan,dbscanpp-uniform,dbscanpp-kcenter")]
        algos: Vec<String>,
        #[command(flatten)]
        common: BenchCommon,
    },
    /// Scores over a grid of radii.
    EpsSweep {
        #[command(flatten)]
        source: SourceArgs,
        /// start:stop:count or a comma list.
        #[arg(long)]
        eps: String,
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, value_delimiter = ',', default_value = "dbscan,dbscanpp-kcenter")]
        algos: Vec<String>,
        #[command(flatten)]
        common: BenchCommon,
    },
    /// Scores, runtime and noise against m/n.
    Tradeoff {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        ratios: String,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_delimiter = ',', default_value = "uniform,kcenter")]
        strategies: Vec<String>,
        /// Column plotted against the ratio.
        #[arg(long, default_value = "ari")]
        plot_y: String,
        #[command(flatten)]
        common: BenchCommon,
    },
    /// Hausdorff distance of DBSCAN++ cores to a Gaussian-mixture level set.
    Levelset {
        /// Component means, `;`-separated, coordinates `,`-separated.
        #[arg(long, default_value = "0,0;5,0")]
        means: String,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Density level; defaults to halfway between the density at the first mean and at the midpoint of the first two.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [1000, 4000, 16000])]
        sizes: Vec<usize>,
        /// Regularity used for the minPts and m rates.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Confidence correction in the radius formula.
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        #[arg(long, default_value_t = 0.05)]
        resolution: f64,
        #[arg(long, default_value = "uniform")]
        strategy: String,
        /// Evaluate every point instead of m = n^(D/(2 beta + D)).
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        common: BenchCommon,
    },
}

fn default_path(input: &Path, suffix: &str) -> PathBuf {
    let mut s = input.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_cluster(args: &ClusterArgs) -> CliResult<()> {
    args.algo.validate()?;
    if args.noise_report && matches!(args.algo.algo, Algo::Dbscan) {
        return Err(usage("--noise-report compares against DBSCAN; use it with --algo dbscanpp"));
    }
    let data = args.io.load(&args.input)?;
    let start = Instant::now();
    let result = args.algo.run(&data.data)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;

    let mut report = EvalReport::default();
    if let Some(truth) = &data.truth {
        report.ari = Some(adjusted_rand_index_with(&result.labels, truth, args.noise.into())?);
        report.ami = Some(adjusted_mutual_info_with(
            &result.labels,
            truth,
            args.noise.into(),
            args.normalization.into(),
        )?);
    }
    if args.noise_report {
        let reference = AlgoArgs {
            algo: Algo::Dbscan,
            strategy: None,
            sample: SampleArgs {
                m: None,
                m_ratio: None,
                m_p: None,
            },
            ..args.algo
        }
        .run(&data.data)?;
        let nr = noise_report(&reference, &result)?;
        report.n_noise_dbscan = Some(nr.n0);
        report.n_noise_pp = Some(nr.n1);
        report.noise_subset = Some(nr.subset_holds);
    }
    if !args.no_timings {
        let mut t: std::collections::BTreeMap<String, f64> =
            result.timings.as_map().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        t.insert("total".into(), result.timings.total());
        report.timings_ms = Some(t);
    }

    let out = args.out.clone().unwrap_or_else(|| default_path(&args.input, ".labels"));
    let report_path = args.report.clone().unwrap_or_else(|| default_path(&args.input, ".report.json"));
    result.labels.write_file(&out)?;
    let json = report.to_json().map_err(dbscanpp::Error::from)?;
    std::fs::write(&report_path, json + "\n").map_err(|e| dbscanpp::Error::Io {
        path: report_path.clone(),
        source: e,
    })?;
    println!(
        "algorithm={} k={} noise={} elapsed_ms={elapsed:.3}",
        label_of(&result),
        result.num_clusters(),
        result.noise_count()
    );
    Ok(())
}

fn label_of(result: &ClusteringResult) -> String {
    if result.algorithm == "dbscan" {
        result.algorithm.to_string()
    } else {
        format!("{}-{}", result.algorithm, result.params.strategy)
    }
}

fn cmd_segment(args: &SegmentArgs) -> CliResult<()> {
    args.algo.validate()?;
    let (data, image) = load_image_ppm(&args.input)?;
    let start = Instant::now();
    let result = args.algo.run(&data)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    labels_to_image(&result.labels, image.width, image.height, &args.out)?;
    if let Some(path) = &args.labels {
        result.labels.write_file(path)?;
    }
    println!(
        "algorithm={} segments={} noise={} elapsed_ms={elapsed:.3}",
        label_of(&result),
        result.num_clusters(),
        result.noise_count()
    );
    Ok(())
}

fn cmd_eval(args: &EvalArgs) -> CliResult<()> {
    let a = ClusterLabels::read_file(&args.predicted)?;
    let b = ClusterLabels::read_file(&args.truth)?;
    let ari = adjusted_rand_index_with(&a, &b, args.noise.into())?;
    let ami = adjusted_mutual_info_with(&a, &b, args.noise.into(), args.normalization.into())?;
    println!("{}", serde_json::json!({ "ari": ari, "ami": ami }));
    Ok(())
}

fn parse_means(s: &str) -> CliResult<Vec<Vec<f64>>> {
    s.split(';')
        .map(|m| {
            m.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| usage(format!("--means: `{v}` is not a number"))))
                .collect()
        })
        .collect()
}

fn cmd_bench(cmd: &BenchCommand) -> CliResult<()> {
    match cmd {
        BenchCommand::Scaling {
            gen,
            sizes,
            eps,
            sample,
            algos,
            common,
        } => {
            let config = common.config()?;
            let algorithms = parse_algorithms(algos, sample.sample_size(SampleSize::Fixed { m: 500 })?)?;
            let report = run_scaling_experiment(gen, sizes, *eps, &algorithms, &config)?;
            for s in &report.slopes {
                match s.slope {
                    Some(v) => println!("slope {}: {v:.3}", s.algorithm),
                    None => println!("slope {}: n/a", s.algorithm),
                }
            }
            common.write("scaling", report.records, "n", "total_ms")
        }
        BenchCommand::EpsSweep {
            source,
            eps,
            sample,
            algos,
            common,
        } => {
            let config = common.config()?;
            let grid = parse_grid_flag("--eps", eps)?;
            let algorithms = parse_algorithms(algos, sample.sample_size(SampleSize::Ratio { ratio: 0.1 })?)?;
            let data = source.load(common.seed)?;
            let sweep = run_epsilon_sweep(&data, &grid, &algorithms, &config)?;
            for r in &sweep.robustness {
                match r.interval {
                    Some(i) => println!(
                        "robustness {}: width {:.6} [{:.6}, {:.6}] best {:.4}",
                        r.algorithm, i.width, i.lo, i.hi, i.best
                    ),
                    None => println!("robustness {}: n/a (no scores)", r.algorithm),
                }
            }
            common.write("eps_sweep", sweep.records, "epsilon", "ari")
        }
        BenchCommand::Tradeoff {
            source,
            ratios,
            eps,
            strategies,
            plot_y,
            common,
        } => {
            let config = common.config()?;
            let ratios = parse_grid_flag("--ratios", ratios)?;
            if ratios.iter().any(|r| !(*r > 0.0 && *r <= 1.0)) {
                return Err(usage("--ratios must lie in (0, 1]"));
            }
            let data = source.load(common.seed)?;
            let strategies: Vec<&str> = strategies.iter().map(String::as_str).collect();
            let report = run_tradeoff_sweep(&data, &ratios, *eps, &strategies, &config)?;
            println!("dbscan noise: {}", report.dbscan_noise);
            for s in &report.summaries {
                if let Some(r) = s.runtime_pearson {
                    println!("runtime-ratio correlation {}: {r:.3}", s.algorithm);
                }
            }
            common.write("tradeoff", report.records, "ratio", plot_y)
        }
        BenchCommand::Levelset {
            means,
            scale,
            lambda,
            sizes,
            beta,
            c,
            resolution,
            strategy,
            full,
            common,
        } => {
            let config = common.config()?;
            let means = parse_means(means)?;
            let spec = DensitySpec::gaussians(&means, *scale)?;
            let lambda = match lambda {
                Some(l) => *l,
                None => {
                    let peak = spec.density(&means[0]);
                    let valley = match means.get(1) {
                        Some(b) => {
                            let mid: Vec<f64> = means[0].iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
                            spec.density(&mid)
                        }
                        None => 0.0,
                    };
                    0.5 * (peak + valley)
                }
            };
            let mut levelset = LevelSetConfig::minimax(*beta, spec.dim());
            levelset.c = *c;
            levelset.resolution = *resolution;
            levelset.strategy = strategy.clone();
            if *full {
                levelset.sample = SampleSize::Full;
            }
            let (records, summaries) = run_levelset_experiment(&spec, lambda, sizes, &levelset, &config)?;
            println!("lambda: {lambda:.6}");
            for s in &summaries {
                println!(
                    "n={} m={} min_pts={} eps={:.6} median_hausdorff={:.6}",
                    s.n, s.m, s.min_pts, s.epsilon, s.median_hausdorff
                );
            }
            common.write("levelset", records, "n", "hausdorff")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Cluster(a) => cmd_cluster(a),
        Command::Segment(a) => cmd_segment(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Bench(b) => cmd_bench(b),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
