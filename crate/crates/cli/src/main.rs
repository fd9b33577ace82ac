use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oadp_core::jordan::{build_catalog, CatalogKey, DEFAULT_TERM_BUDGET};
use oadp_core::varieties::{build_kind, twisted_cubic_curve, ParamVariety, VarietyKind};
use oadp_core::verify::config::QTier;
use oadp_core::verify::report::{report_for, CheckKind};
use oadp_core::verify::RunConfig;

/// Exit code for a check that ran and failed.
const EXIT_FAIL: u8 = 1;
/// Exit code for bad input or usage.
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "oadp-lab", version, about = "Cubic Jordan algebras, Cremona maps and OADP varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog of cubic Jordan algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Build and inspect parametrized varieties.
    #[command(subcommand)]
    Variety(VarietyCmd),
    /// Run verification checks on a variety document.
    Check(CheckArgs),
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// List catalog keys with dimensions.
    List,
    /// Check the adjoint and norm identities.
    Verify {
        key: String,
        #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
        term_budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write the algebra as JSON.
    Export { key: String, path: PathBuf },
}

#[derive(Subcommand, Debug)]
enum VarietyCmd {
    /// Construct a variety and write its JSON document.
    Build(BuildArgs),
    /// Print dimension, ambient dimension, kind and component degrees.
    Inspect { path: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Jordan,
    Scroll,
    Verra,
    Delpezzo5,
    Segre12,
    Curve,
    Veronese,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Catalog key (jordan).
    #[arg(long)]
    algebra: Option<String>,
    /// Scroll block sizes, e.g. 1,3.
    #[arg(long, value_delimiter = ',')]
    blocks: Vec<u32>,
    /// Curve exponents, e.g. 0,1,3,4.
    #[arg(long, value_delimiter = ',')]
    exponents: Vec<u32>,
    /// Dimension (segre12, verra).
    #[arg(long)]
    n: Option<usize>,
    /// Core variety document for verra; defaults to the twisted cubic curve.
    #[arg(long)]
    core: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckName {
    Oadp,
    Bronowski,
    HyperplaneCase,
    Involutory,
    Invariant,
    Full,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(value_enum)]
    check: CheckName,
    #[arg(long)]
    variety: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Field size for the finite-field statistics (overrides the config).
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

type CliResult = Result<u8, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let result = match cli.command {
        Command::Algebra(cmd) => cmd_algebra(cmd),
        Command::Variety(cmd) => cmd_variety(cmd),
        Command::Check(args) => cmd_check(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("OADP_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("OADP_LAB_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("OADP_LAB_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn write_json(path: &Path, json: &str) -> Result<(), String> {
    fs::write(path, format!("{json}\n")).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_algebra(cmd: AlgebraCmd) -> CliResult {
    match cmd {
        AlgebraCmd::List => {
            for key in CatalogKey::listing() {
                println!("{:<8} dim {:>2}  {}", key.to_string(), key.dim(), key.description());
            }
            Ok(0)
        }
        AlgebraCmd::Verify { key, term_budget, json } => {
            let j = build_catalog(&key).map_err(|e| e.to_string())?;
            let report = j.validate_axioms(term_budget);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                for c in &report.checks {
                    println!("{:<18} {}", c.name, if c.passed { "pass" } else { "FAIL" });
                }
            }
            Ok(if report.all_passed() { 0 } else { EXIT_FAIL })
        }
        AlgebraCmd::Export { key, path } => {
            let j = build_catalog(&key).map_err(|e| e.to_string())?;
            write_json(&path, &serde_json::to_string_pretty(&j).expect("serializable"))?;
            Ok(0)
        }
    }
}

fn read_variety(path: &Path) -> Result<ParamVariety, String> {
    let s = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&s).map_err(|e| format!("{}: {e}", path.display()))
}

fn build_variety(args: &BuildArgs) -> Result<ParamVariety, String> {
    let need_n = || args.n.ok_or_else(|| "--n is required for this kind".to_string());
    let kind = match args.kind {
        KindArg::Jordan => {
            let key = args.algebra.as_deref().ok_or("--algebra is required for --kind jordan")?;
            let key = CatalogKey::from_str(key).map_err(|e| e.to_string())?;
            VarietyKind::Jordan { algebra: key.to_string() }
        }
        KindArg::Scroll => VarietyKind::Scroll { blocks: args.blocks.clone() },
        KindArg::Curve => VarietyKind::Curve { exponents: args.exponents.clone() },
        KindArg::Delpezzo5 => VarietyKind::DelPezzo5,
        KindArg::Veronese => VarietyKind::Veronese,
        KindArg::Segre12 => VarietyKind::Segre12 { n: need_n()? },
        KindArg::Verra => {
            let core = match &args.core {
                Some(p) => read_variety(p)?,
                None => twisted_cubic_curve(),
            };
            VarietyKind::Verra { core: Box::new(core.kind().clone()), n: need_n()? }
        }
    };
    build_kind(&kind).map_err(|e| e.to_string())
}

fn cmd_variety(cmd: VarietyCmd) -> CliResult {
    match cmd {
        VarietyCmd::Build(args) => {
            let x = build_variety(&args)?;
            let json = serde_json::to_string_pretty(&x).expect("serializable");
            match &args.output {
                Some(path) => write_json(path, &json)?,
                None => println!("{json}"),
            }
            Ok(0)
        }
        VarietyCmd::Inspect { path } => {
            let x = read_variety(&path)?;
            let degrees: Vec<String> = x.component_degrees().iter().map(u32::to_string).collect();
            println!("kind: {}", x.kind());
            println!("n: {}", x.dim());
            println!("ambient: P^{}", x.ambient_dim());
            println!("degrees: {}", degrees.join(","));
            Ok(0)
        }
    }
}

fn cmd_check(args: CheckArgs) -> CliResult {
    let mut config = match &args.config {
        Some(p) => RunConfig::from_file(p).map_err(|e| e.to_string())?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(q) = args.q {
        config.q = vec![QTier { max_dim: None, q }];
    }
    if let Some(t) = args.trials {
        config.trials = t;
    }
    if args.output.is_some() {
        config.output = args.output.clone();
    }
    config.validate().map_err(|e| e.to_string())?;
    let x = read_variety(&args.variety)?;
    let kinds: Vec<CheckKind> = match args.check {
        CheckName::Oadp => vec![CheckKind::Oadp],
        CheckName::Bronowski => vec![CheckKind::Bronowski],
        CheckName::HyperplaneCase => vec![CheckKind::HyperplaneCase],
        CheckName::Involutory => vec![CheckKind::Involutory],
        CheckName::Invariant => vec![CheckKind::Invariant],
        CheckName::Full => CheckKind::ALL.to_vec(),
    };
    let report = report_for(&x, &config, &kinds).map_err(|e| e.to_string())?;
    let json = report.to_json();
    if let Some(path) = &config.output {
        write_json(path, &json)?;
    }
    if args.json {
        println!("{json}");
    } else {
        println!("{report}");
    }
    Ok(if report.passed { 0 } else { EXIT_FAIL })
}
