//! Command-line front end: resolve plane-curve germs, compute the motivic
//! and topological zeta functions, specialize, and check the Monodromy
//! Conjecture. All file I/O uses the documented JSON schemas, all
//! arithmetic is exact, and identical inputs produce byte-identical
//! outputs.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 mathematical
//! domain errors (non-squarefree input, irrational centers, missing `M`
//! multiplicities, and the like).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arczeta::curve::{resolve_germ, DEFAULT_MAX_DEPTH};
use arczeta::polynomial::parse_poly;
use arczeta::resolution::ResolutionData;
use arczeta::series::MotivicSeries;
use arczeta::topzeta::{check_monodromy_conjecture, z_branch, z_top};
use arczeta::zeta::{
    classical_monodromy_zeta, contact_series_with, eta_series_with, euler_specialize_series,
    motivic_monodromy_zeta_with, BranchWeight, SpaceKind,
};

#[derive(Parser)]
#[command(
    name = "arczeta",
    about = "Exact motivic and topological zeta functions of plane-curve germs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    /// The full space of parametrized arcs.
    Arcs,
    /// Arcs modulo the scaling action on the parameter.
    ArcsModCstar,
    /// Arcs modulo all reparametrizations.
    Branches,
}

impl From<SpaceArg> for SpaceKind {
    fn from(value: SpaceArg) -> Self {
        match value {
            SpaceArg::Arcs => SpaceKind::Arcs,
            SpaceArg::ArcsModCstar => SpaceKind::ArcsModCstar,
            SpaceArg::Branches => SpaceKind::Branches,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BranchWeightArg {
    /// Weights nu + M (the printed convention; the default).
    NuPlusM,
    /// Weights nu - M (the convention a direct jet count suggests).
    NuMinusM,
}

impl From<BranchWeightArg> for BranchWeight {
    fn from(value: BranchWeightArg) -> Self {
        match value {
            BranchWeightArg::NuPlusM => BranchWeight::NuPlusM,
            BranchWeightArg::NuMinusM => BranchWeight::NuMinusM,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    /// The plain topological zeta function (weights nu).
    Top,
    /// The branch variant (weights nu + M).
    Branch,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a plane-curve germ and write its resolution data.
    Resolve(ResolveArgs),
    /// Compute a zeta-type series or factorization from resolution data.
    Zeta(ZetaArgs),
    /// Apply the Euler characteristic coefficientwise to a series file.
    Specialize(SpecializeArgs),
    /// Compute a topological zeta function from resolution data.
    Topzeta(TopzetaArgs),
    /// Check the Monodromy Conjecture for a topological zeta function.
    CheckMc(CheckMcArgs),
    /// Write the built-in corpus of resolution data files.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct ResolveArgs {
    /// Polynomial in x and y, e.g. "(x^2+y^3)*(y^2+x^3)".
    poly: String,
    /// Output path (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Blowup-depth cap.
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: u32,
}

#[derive(Args)]
struct ZetaArgs {
    /// Resolution data file.
    res: PathBuf,
    /// Integration space.
    #[arg(long, value_enum, default_value_t = SpaceArg::ArcsModCstar)]
    space: SpaceArg,
    /// Truncation order (total degree).
    #[arg(long, default_value_t = 12)]
    order: u32,
    /// The motivic monodromy zeta function (the default).
    #[arg(long, group = "mode")]
    motivic: bool,
    /// The contact series (generating series of order measures).
    #[arg(long, group = "mode")]
    contact: bool,
    /// Exp of the contact series.
    #[arg(long, group = "mode")]
    eta: bool,
    /// The classical monodromy zeta function in cyclotomic product form.
    #[arg(long, group = "mode")]
    acampo: bool,
    /// Exponent convention for branch-space weights.
    #[arg(long, value_enum, default_value_t = BranchWeightArg::NuPlusM)]
    branch_weight: BranchWeightArg,
    /// Output path (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpecializeArgs {
    /// Series file in the interchange schema.
    series: PathBuf,
    /// Output path (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TopzetaArgs {
    /// Resolution data file.
    res: PathBuf,
    /// Which zeta function to compute.
    #[arg(long, value_enum, default_value_t = VariantArg::Top)]
    variant: VariantArg,
    /// Optional JSON output path.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckMcArgs {
    /// Resolution data file.
    res: PathBuf,
    /// Which zeta function to check.
    #[arg(long, value_enum, default_value_t = VariantArg::Top)]
    variant: VariantArg,
    /// Optional JSON output path for the report.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Directory for the corpus files.
    #[arg(long, default_value = ".")]
    dir: PathBuf,
}

enum Failure {
    /// Bad invocation or malformed input files: exit 1.
    Usage(String),
    /// The requested computation is undefined for the input: exit 2.
    Math(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Math(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Math(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn math(e: impl std::fmt::Display) -> Failure {
    Failure::Math(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits; everything else is
            // a usage error.
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Resolve(args) => cmd_resolve(args),
        Command::Zeta(args) => cmd_zeta(args),
        Command::Specialize(args) => cmd_specialize(args),
        Command::Topzeta(args) => cmd_topzeta(args),
        Command::CheckMc(args) => cmd_check_mc(args),
        Command::Examples(args) => cmd_examples(args),
    }
}

fn load_resolution(path: &Path) -> Result<ResolutionData, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {}", path.display(), e)))?;
    let res = ResolutionData::from_json_str(&text).map_err(usage)?;
    let report = res.validate();
    if !report.is_valid() {
        return Err(usage(format!(
            "{} is not valid resolution data:\n{}",
            path.display(),
            report
        )));
    }
    Ok(res)
}

fn emit(out: &Option<PathBuf>, json: String, summary: String) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, json)
                .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))?;
            println!("{}", summary);
            println!("wrote {}", path.display());
        }
        None => println!("{}", json.trim_end()),
    }
    Ok(())
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

fn cmd_resolve(args: ResolveArgs) -> Result<(), Failure> {
    let poly = parse_poly(&args.poly).map_err(usage)?;
    let resolved = resolve_germ(&poly, args.max_depth).map_err(math)?;
    let exceptional = resolved.graph.vertices.len();
    let strict = resolved.graph.arrows.len();
    emit(
        &args.out,
        resolved.data.to_json_string(),
        format!(
            "resolved {} into {} exceptional and {} strict components",
            args.poly, exceptional, strict
        ),
    )
}

fn cmd_zeta(args: ZetaArgs) -> Result<(), Failure> {
    let res = load_resolution(&args.res)?;
    let space: SpaceKind = args.space.into();
    let weight: BranchWeight = args.branch_weight.into();

    if args.acampo {
        let zf = classical_monodromy_zeta(&res);
        return emit(&args.out, pretty(&zf), format!("zeta_f = {}", zf));
    }

    let series: MotivicSeries = if args.contact {
        contact_series_with(&res, space, args.order, weight).map_err(math)?
    } else if args.eta {
        eta_series_with(&res, space, args.order, weight).map_err(math)?
    } else {
        motivic_monodromy_zeta_with(&res, space, args.order, weight).map_err(math)?
    };
    let label = if args.contact {
        "contact series"
    } else if args.eta {
        "eta"
    } else {
        "motivic monodromy zeta"
    };
    emit(
        &args.out,
        pretty(&series),
        format!("{} over {} = {}", label, space, series),
    )
}

fn cmd_specialize(args: SpecializeArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.series)
        .map_err(|e| usage(format!("cannot read {}: {}", args.series.display(), e)))?;
    let series: MotivicSeries = serde_json::from_str(&text).map_err(usage)?;
    if series.arity() != 1 {
        return Err(math(format!(
            "specialization expects a one-variable series, got arity {}",
            series.arity()
        )));
    }
    let spec = euler_specialize_series(&series);
    emit(&args.out, pretty(&spec), format!("chi-specialization = {}", spec))
}

fn cmd_topzeta(args: TopzetaArgs) -> Result<(), Failure> {
    let res = load_resolution(&args.res)?;
    let zeta = match args.variant {
        VariantArg::Top => z_top(&res).map_err(math)?,
        VariantArg::Branch => z_branch(&res).map_err(math)?,
    };
    println!("{}", zeta);
    if let Some(path) = &args.out {
        std::fs::write(path, pretty(&zeta))
            .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_check_mc(args: CheckMcArgs) -> Result<(), Failure> {
    let res = load_resolution(&args.res)?;
    let zeta = match args.variant {
        VariantArg::Top => z_top(&res).map_err(math)?,
        VariantArg::Branch => z_branch(&res).map_err(math)?,
    };
    let zf = classical_monodromy_zeta(&res);
    let report = check_monodromy_conjecture(&zeta, &zf).map_err(math)?;
    println!("zeta function: {}", zeta);
    println!("monodromy zeta: {}", zf);
    println!("{}", report);
    if let Some(path) = &args.out {
        std::fs::write(path, pretty(&report))
            .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_examples(args: ExamplesArgs) -> Result<(), Failure> {
    std::fs::create_dir_all(&args.dir)
        .map_err(|e| usage(format!("cannot create {}: {}", args.dir.display(), e)))?;
    let corpus = [
        ("smooth.json", "x"),
        ("node.json", "x*y"),
        ("cusp.json", "x^2+y^3"),
        ("two_cusps.json", "(x^2+y^3)*(y^2+x^3)"),
    ];
    for (file, germ) in corpus {
        let poly = parse_poly(germ).expect("built-in germs parse");
        let resolved = resolve_germ(&poly, DEFAULT_MAX_DEPTH).expect("built-in germs resolve");
        let path = args.dir.join(file);
        std::fs::write(&path, resolved.data.to_json_string())
            .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))?;
        println!("wrote {} ({})", path.display(), germ);
    }
    Ok(())
}
