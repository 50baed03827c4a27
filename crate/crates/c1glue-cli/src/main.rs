//! Command-line front end: mesh analysis, basis emission, verification,
//! surface sampling, and bundled examples.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use c1glue::basisgen::BasisSet;
use c1glue::report::{
    analyze_report, basis_report, run_verification, to_json_pretty, VerifyOptions,
};
use c1glue::verify::sample_surface;
use c1glue::{
    example_mesh, Error, ErrorCategory, GammaNormalization, MeshPair, ScalingMode,
    TraceNormalSpace, EXAMPLE_NAMES,
};

#[derive(Parser)]
#[command(
    name = "c1glue",
    version,
    about = "Exact C1-smooth spline spaces over two-element Bezier meshes",
    long_about = "Constructs, dimensions, and verifies C1-smooth isogeometric spline \
                  spaces over a pair of planar quadratic Bezier elements sharing one \
                  edge. All construction is exact rational arithmetic; reports are \
                  deterministic JSON."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the interface and report gluing data and dimensions
    Analyze {
        /// Mesh JSON file
        mesh: PathBuf,
        #[command(flatten)]
        opts: AnalyzeOpts,
    },
    /// Construct the interpolatory basis and emit it as JSON or CSV samples
    Basis {
        mesh: PathBuf,
        #[command(flatten)]
        opts: BasisOpts,
    },
    /// Run independent smoothness and dimension checks on the basis
    Verify {
        mesh: PathBuf,
        #[command(flatten)]
        opts: VerifyCmdOpts,
    },
    /// Evaluate one basis function on a reference grid and emit CSV
    Sample {
        mesh: PathBuf,
        #[command(flatten)]
        opts: SampleOpts,
    },
    /// Run a subcommand on a bundled example mesh
    Example {
        /// Example name, e.g. ex1-generic (see `example --help` for the list)
        #[arg(long_help = example_name_help())]
        name: String,
        #[command(subcommand)]
        action: ExampleAction,
    },
}

fn example_name_help() -> String {
    format!("One of: {}", EXAMPLE_NAMES.join(", "))
}

#[derive(Subcommand)]
enum ExampleAction {
    Analyze {
        #[command(flatten)]
        opts: AnalyzeOpts,
    },
    Basis {
        #[command(flatten)]
        opts: BasisOpts,
    },
    Verify {
        #[command(flatten)]
        opts: VerifyCmdOpts,
    },
    Sample {
        #[command(flatten)]
        opts: SampleOpts,
    },
    /// Print the example mesh itself as JSON
    Mesh,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalingArg {
    /// Derivative rows weighted by falling factorials (reference profile)
    Paper,
    /// Every functional left unscaled
    Unit,
}

impl From<ScalingArg> for ScalingMode {
    fn from(v: ScalingArg) -> ScalingMode {
        match v {
            ScalingArg::Paper => ScalingMode::Weighted,
            ScalingArg::Unit => ScalingMode::Unit,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisFormat {
    /// Full basis as JSON
    Json,
    /// Sampled surface values of one function (requires --function)
    CsvSample,
}

#[derive(Args)]
struct AnalyzeOpts {
    /// Spline degree (at least 2)
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    degree: u32,
}

#[derive(Args)]
struct BasisOpts {
    /// Spline degree (at least 2)
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    degree: u32,
    /// Row scaling of the collocation functionals
    #[arg(long, value_enum, default_value = "paper")]
    functional_scaling: ScalingArg,
    /// Skip the exact orthogonalization of the two mu functions
    #[arg(long)]
    no_mu_orthogonalize: bool,
    /// Add floating-point copies of each coefficient net
    #[arg(long)]
    float: bool,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: BasisFormat,
    /// Function tag for csv-sample output, e.g. dof-0 or mu-1
    #[arg(long)]
    function: Option<String>,
    /// Grid resolution for csv-sample output (nodes per direction minus one)
    #[arg(long, default_value_t = 10)]
    grid: usize,
}

#[derive(Args)]
struct VerifyCmdOpts {
    /// Spline degree (at least 2)
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    degree: u32,
    #[arg(long, value_enum, default_value = "paper")]
    functional_scaling: ScalingArg,
    #[arg(long)]
    no_mu_orthogonalize: bool,
    /// Check the independent nullspace dimension against the construction
    #[arg(long)]
    oracle: bool,
    /// Check the exact smoothness identity of every basis function
    #[arg(long)]
    identity: bool,
    /// Probe the floating-point gradient jump at N interface samples
    #[arg(long, value_name = "N")]
    gradient_samples: Option<usize>,
    /// Report the collocation condition number
    #[arg(long)]
    cond: bool,
}

#[derive(Args)]
struct SampleOpts {
    /// Spline degree (at least 2)
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    degree: u32,
    /// Tag of the basis function to evaluate, e.g. dof-0 or int1-2-0
    #[arg(long)]
    function: String,
    /// Grid resolution (nodes per direction minus one)
    #[arg(long, default_value_t = 10)]
    grid: usize,
    #[arg(long, value_enum, default_value = "paper")]
    functional_scaling: ScalingArg,
    #[arg(long)]
    no_mu_orthogonalize: bool,
    /// Write CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e.category() {
            ErrorCategory::Parse => 2,
            ErrorCategory::Validation => 3,
            ErrorCategory::Computation => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure {
        code: 2,
        message: format!("cannot read input: {e}"),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { mesh, opts } => analyze(load_mesh(&mesh)?, &opts),
        Command::Basis { mesh, opts } => basis(load_mesh(&mesh)?, &opts),
        Command::Verify { mesh, opts } => verify(load_mesh(&mesh)?, &opts),
        Command::Sample { mesh, opts } => sample(load_mesh(&mesh)?, &opts),
        Command::Example { name, action } => {
            let mesh = example_mesh(&name)?;
            match action {
                ExampleAction::Analyze { opts } => analyze(mesh, &opts),
                ExampleAction::Basis { opts } => basis(mesh, &opts),
                ExampleAction::Verify { opts } => verify(mesh, &opts),
                ExampleAction::Sample { opts } => sample(mesh, &opts),
                ExampleAction::Mesh => {
                    println!("{}", serde_pretty(&mesh));
                    Ok(())
                }
            }
        }
    }
}

fn serde_pretty(mesh: &MeshPair) -> String {
    let value = mesh.to_json_value();
    serde_json::to_string_pretty(&value).expect("mesh JSON serializes")
}

fn load_mesh(path: &PathBuf) -> Result<MeshPair, Failure> {
    let text = fs::read_to_string(path).map_err(io_failure)?;
    Ok(MeshPair::from_json_str(&text)?)
}

fn build_space(mesh: &MeshPair, degree: u32) -> Result<TraceNormalSpace, Failure> {
    let space = TraceNormalSpace::build(mesh, degree as usize)?;
    if space.gluing.gamma_normalization == GammaNormalization::LeadingCoefficient {
        eprintln!(
            "warning: gamma vanishes at v = 0; reporting the monic representative instead"
        );
    }
    Ok(space)
}

fn analyze(mesh: MeshPair, opts: &AnalyzeOpts) -> Result<(), Failure> {
    let space = build_space(&mesh, opts.degree)?;
    println!("{}", to_json_pretty(&analyze_report(&space)));
    Ok(())
}

fn basis(mesh: MeshPair, opts: &BasisOpts) -> Result<(), Failure> {
    let space = build_space(&mesh, opts.degree)?;
    let scaling = ScalingMode::from(opts.functional_scaling);
    let set = BasisSet::generate(&mesh, &space, scaling, !opts.no_mu_orthogonalize)?;
    match opts.format {
        BasisFormat::Json => {
            let report = basis_report(&space, &set, scaling, !opts.no_mu_orthogonalize, opts.float);
            println!("{}", to_json_pretty(&report));
            Ok(())
        }
        BasisFormat::CsvSample => {
            let tag = opts.function.as_deref().ok_or(Failure {
                code: 2,
                message: "--format csv-sample requires --function".into(),
            })?;
            let rows = sample_function(&mesh, &set, tag, opts.grid)?;
            write_csv(rows, None)
        }
    }
}

fn verify(mesh: MeshPair, opts: &VerifyCmdOpts) -> Result<(), Failure> {
    let space = build_space(&mesh, opts.degree)?;
    let scaling = ScalingMode::from(opts.functional_scaling);
    let set = BasisSet::generate(&mesh, &space, scaling, !opts.no_mu_orthogonalize)?;
    let any_selected =
        opts.oracle || opts.identity || opts.gradient_samples.is_some() || opts.cond;
    let options = if any_selected {
        VerifyOptions {
            identity: opts.identity,
            oracle: opts.oracle,
            gradient_samples: opts.gradient_samples,
            cond: opts.cond,
        }
    } else {
        VerifyOptions::default()
    };
    let report = run_verification(&mesh, &space, &set, &options)?;
    println!("{}", to_json_pretty(&report));
    if report.passed {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: "verification failed".into(),
        })
    }
}

fn sample(mesh: MeshPair, opts: &SampleOpts) -> Result<(), Failure> {
    let space = build_space(&mesh, opts.degree)?;
    let scaling = ScalingMode::from(opts.functional_scaling);
    let set = BasisSet::generate(&mesh, &space, scaling, !opts.no_mu_orthogonalize)?;
    let rows = sample_function(&mesh, &set, &opts.function, opts.grid)?;
    write_csv(rows, opts.output.as_ref())
}

fn sample_function(
    mesh: &MeshPair,
    set: &BasisSet,
    tag: &str,
    grid: usize,
) -> Result<Vec<c1glue::SampleRow>, Failure> {
    let f = set.functions.iter().find(|f| f.tag == tag).ok_or(Failure {
        code: 2,
        message: format!("no basis function tagged {tag:?}"),
    })?;
    Ok(sample_surface(mesh, set.degree, &f.nets, grid)?)
}

fn write_csv(rows: Vec<c1glue::SampleRow>, output: Option<&PathBuf>) -> Result<(), Failure> {
    let sink: Box<dyn Write> = match output {
        Some(path) => Box::new(fs::File::create(path).map_err(io_failure)?),
        None => Box::new(io::stdout()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    for row in rows {
        writer.serialize(row).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write CSV: {e}"),
        })?;
    }
    writer.flush().map_err(io_failure)?;
    Ok(())
}
