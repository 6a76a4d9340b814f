use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use varratio::ingest::{load_market, load_sample_csv};
use varratio::report::{self, write_fit_report, write_matrix_report};
use varratio::{Distribution, Family, FitConfig, FitOptions, Manifest, NaiveDate, RatioMode, Rescale, VolConfig, VolIndex, WindowStep};

#[derive(Parser)]
#[command(name = "varratio", version, about = "Fit distributions to realized/implied variance ratios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit all seven families to a ratio series and its reciprocal.
    Fit(FitArgs),
    /// Pearson correlations of RV², next-month RV², index² and shuffled RV².
    Corr(MatrixArgs),
    /// Two-sample KS distances between the six ratio series.
    Ksmatrix(MatrixArgs),
    /// Write a seeded sample from a parametric family.
    Synthetic(SyntheticArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexArg {
    Vix,
    Vxo,
}

impl From<IndexArg> for VolIndex {
    fn from(v: IndexArg) -> Self {
        match v {
            IndexArg::Vix => VolIndex::Vix,
            IndexArg::Vxo => VolIndex::Vxo,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Predicted,
    Preceding,
    Adjacent,
    Random,
}

impl From<ModeArg> for RatioMode {
    fn from(v: ModeArg) -> Self {
        match v {
            ModeArg::Predicted => RatioMode::Predicted,
            ModeArg::Preceding => RatioMode::Preceding,
            ModeArg::Adjacent => RatioMode::AdjacentRv,
            ModeArg::Random => RatioMode::RandomPairing,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RescaleArg {
    None,
    Calendar,
}

#[derive(Clone, Copy, ValueEnum)]
enum StepArg {
    Rolling,
    Disjoint,
}

fn parse_date(s: &str) -> Result<NaiveDate, String> {
    varratio::ingest::parse_date(s).ok_or_else(|| format!("expected YYYY-MM-DD, got {s:?}"))
}

#[derive(Args)]
struct DataArgs {
    /// key=value manifest naming the spx/vix/vxo CSV files.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "vix")]
    index: IndexArg,
    #[arg(long, value_parser = parse_date)]
    from: Option<NaiveDate>,
    #[arg(long, value_parser = parse_date)]
    to: Option<NaiveDate>,
    /// Trading days per realized-variance window.
    #[arg(long, default_value_t = 21)]
    horizon: usize,
    /// Calendar-length correction of each realized variance.
    #[arg(long, value_enum, default_value = "calendar")]
    rescale: RescaleArg,
    #[arg(long, value_enum, default_value = "rolling")]
    step: StepArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

impl DataArgs {
    fn vol_config(&self) -> VolConfig {
        VolConfig {
            horizon: self.horizon,
            rescale: match self.rescale {
                RescaleArg::None => Rescale::None,
                RescaleArg::Calendar => Rescale::Calendar,
            },
            step: match self.step {
                StepArg::Rolling => WindowStep::Rolling,
                StepArg::Disjoint => WindowStep::Disjoint,
            },
            ..VolConfig::default()
        }
    }

    fn market(&self) -> anyhow::Result<varratio::ingest::MarketData> {
        let Some(path) = &self.manifest else {
            bail!(UsageError("--manifest is required".into()));
        };
        let manifest = load_manifest(path)?;
        Ok(load_market(&manifest, self.index.into(), self.from, self.to)?)
    }
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Fit an undated sample (a `value` column) instead of market data.
    #[arg(long, conflicts_with = "manifest")]
    sample: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "predicted")]
    mode: ModeArg,
    /// Histogram and curves of the reciprocal series.
    #[arg(long)]
    invert: bool,
    /// Skip unit-mean scaling of the ratio series.
    #[arg(long)]
    no_scale: bool,
    /// Forces unit-mean scaling even where the mode's default is off.
    #[arg(long, conflicts_with = "no_scale")]
    scale: bool,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Skip unit-mean scaling of the ratio series (ksmatrix only).
    #[arg(long)]
    no_scale: bool,
}

#[derive(Args)]
struct SyntheticArgs {
    #[arg(long)]
    family: Family,
    /// Comma-separated parameters, e.g. `2,3,1` for BP(p, q, beta); Weibull
    /// takes `shape,scale`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    params: Vec<f64>,
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

/// Errors reported with exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn load_manifest(path: &Path) -> anyhow::Result<Manifest> {
    match Manifest::load(path) {
        Ok(m) => Ok(m),
        Err(varratio::Error::Manifest(msg)) => {
            bail!(UsageError(format!("manifest {}: {msg}", path.display())))
        }
        Err(e) => Err(e).with_context(|| format!("reading manifest {}", path.display())),
    }
}

fn run_fit(args: &FitArgs) -> anyhow::Result<()> {
    let opts = FitOptions {
        mode: args.mode.into(),
        scale: if args.no_scale {
            Some(false)
        } else if args.scale {
            Some(true)
        } else {
            None
        },
        invert: args.invert,
        seed: args.data.seed,
        fit: FitConfig::default(),
        vol: args.data.vol_config(),
    };
    let bundle = match &args.sample {
        Some(path) => {
            let values = load_sample_csv(path).with_context(|| format!("loading {}", path.display()))?;
            report::fit_sample(&values, &opts)?
        }
        None => report::fit_market(&args.data.market()?, &opts)?,
    };
    write_fit_report(&bundle, &args.data.out)?;
    print!("{}", bundle.render_text());
    eprintln!("wrote {}", args.data.out.display());
    Ok(())
}

fn run_corr(args: &MatrixArgs) -> anyhow::Result<()> {
    let market = args.data.market()?;
    let rep = report::pcc_matrix(&market, &args.data.vol_config(), args.data.seed)?;
    write_matrix_report(&rep, &args.data.out, "pcc", 4)?;
    print!("{}", rep.matrix.to_text(4));
    Ok(())
}

fn run_ksmatrix(args: &MatrixArgs) -> anyhow::Result<()> {
    let market = args.data.market()?;
    let scale = args.no_scale.then_some(false);
    let rep = report::ks_matrix(&market, &args.data.vol_config(), args.data.seed, scale)?;
    write_matrix_report(&rep, &args.data.out, "ksmatrix", 3)?;
    print!("{}", rep.matrix.to_text(3));
    Ok(())
}

fn run_synthetic(args: &SyntheticArgs) -> anyhow::Result<()> {
    let dist = Distribution::from_params(args.family, &args.params)?;
    report::write_synthetic(&dist, args.n, args.seed, &args.out)?;
    println!("{dist}: {} draws, seed {} -> {}", args.n, args.seed, args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Fit(a) => run_fit(a),
        Command::Corr(a) => run_corr(a),
        Command::Ksmatrix(a) => run_ksmatrix(a),
        Command::Synthetic(a) => run_synthetic(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
