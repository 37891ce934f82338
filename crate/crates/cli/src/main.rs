//! Batch-oriented command-line driver: every command prints one
//! machine-readable document to standard output and keeps diagnostics on
//! standard error, with stable exit codes for scripted use.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 cross-check
//! disagreement, 3 exhausted or degenerate specializations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use contact_curves::graphs::{dot_export, statistics_by_type, to_hex};
use contact_curves::invariants::{
    compute_with_classes, compute_with_spec, load_or_enumerate, resolve_cache_dir, InvariantError,
    InvariantKind, InvariantRequest, InvariantResult,
};
use contact_curves::legendrian::{
    buczynski, contact_pairing, is_contact, osculation_multiplicity, RationalCurveParam,
};
use contact_curves::localization::{LocalizationError, TorusSpec};
use contact_curves::{configs, HomogPoly2, P1Point, Rational};

#[derive(Parser)]
#[command(
    name = "contact-curves",
    version,
    about = "Exact localization sums, fixed-graph enumeration and contact-curve checks"
)]
struct Cli {
    /// Worker threads for the contribution sums (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Graph-class cache directory (overrides the CONTACT_CURVES_CACHE_DIR
    /// environment variable; defaults to a project-local directory).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a virtual invariant as an exact rational number.
    Compute(ComputeArgs),
    /// Enumerate the torus-fixed graph classes of a degree.
    Graphs(GraphsArgs),
    /// Print a reducible-configuration counting table.
    Configs(ConfigsArgs),
    /// Check contact conditions and osculation orders of explicit curves.
    Legendrian(LegendrianArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InvariantChoice {
    /// Virtual count of rational contact curves meeting 2d+1 general lines.
    Contact,
    /// Gromov–Witten count of rational curves meeting 4d general lines.
    #[value(name = "gw-lines")]
    GwLines,
}

#[derive(Args)]
struct ComputeArgs {
    /// Curve degree (at least 1).
    #[arg(long)]
    degree: u32,

    #[arg(long, value_enum, default_value_t = InvariantChoice::Contact)]
    invariant: InvariantChoice,

    /// Explicit torus weights (four comma-separated rationals). Disables
    /// sampling; the weights must be pairwise distinct.
    #[arg(long, value_name = "L0,L1,L2,L3")]
    lambda: Option<String>,

    /// How many independently sampled specializations must agree.
    #[arg(long, default_value_t = 2, value_name = "N")]
    agree: usize,

    /// Seed for the specialization sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Omit elapsed time so outputs are byte-comparable across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphsFormat {
    Json,
    Dot,
}

#[derive(Args)]
struct GraphsArgs {
    /// Total weight of the enumerated trees (at least 1).
    #[arg(long)]
    degree: u32,

    #[arg(long, value_enum, default_value_t = GraphsFormat::Json)]
    format: GraphsFormat,

    /// Summarize by combinatorial type instead of listing every class.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct ConfigsArgs {
    /// Configuration family: cubics or quartics.
    #[arg(long)]
    family: String,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LegendrianAction {
    /// Report whether the curve is contact, with the pairing polynomial.
    Verify,
    /// Report the vanishing order of the distribution-plane section at a
    /// point (requires --point).
    Osculation,
}

#[derive(Args)]
struct LegendrianArgs {
    /// Either "buczynski:k,l" or four semicolon-separated coefficient
    /// lists, one per coordinate, each listing the coefficients of
    /// s^0 t^d, s^1 t^(d-1), ..., s^d. A bare "0" denotes an identically
    /// zero coordinate and inherits the degree of the others.
    #[arg(long, value_name = "CURVE")]
    curve: String,

    /// Point on the parameter line, as two comma-separated rationals.
    #[arg(long, value_name = "A,B")]
    point: Option<String>,

    #[arg(long, value_enum, default_value_t = LegendrianAction::Verify)]
    action: LegendrianAction,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

/// A command failure: the message goes to standard error, the code to the
/// shell.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

fn map_invariant_error(err: InvariantError) -> Failure {
    let code = match &err {
        InvariantError::Disagreement { .. } => 2,
        InvariantError::RetryExhausted { .. } => 3,
        InvariantError::Degenerate(LocalizationError::SpecializationDegenerate(_)) => 3,
        _ => 1,
    };
    Failure { code, message: err.to_string() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            err.print().expect("writing clap output");
            return if informational { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        // Ignore the error if a pool already exists (tests call run twice).
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    let cache_dir = resolve_cache_dir(cli.cache_dir.as_deref());
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(args, &cache_dir),
        Command::Graphs(args) => cmd_graphs(args, &cache_dir),
        Command::Configs(args) => cmd_configs(args),
        Command::Legendrian(args) => cmd_legendrian(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    let text = text.trim();
    let parse_int = |part: &str| -> Result<Rational, Failure> {
        part.trim()
            .parse::<i64>()
            .map(Rational::from_int)
            .map_err(|_| Failure::usage(format!("cannot parse '{part}' as an integer")))
    };
    match text.split_once('/') {
        None => parse_int(text),
        Some((numer, denom)) => parse_int(numer)?
            .checked_div(&parse_int(denom)?)
            .map_err(|_| Failure::usage(format!("zero denominator in '{text}'"))),
    }
}

fn parse_lambda(text: &str) -> Result<TorusSpec, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Failure::usage(format!(
            "--lambda needs exactly four comma-separated weights, got {}",
            parts.len()
        )));
    }
    let mut weights = Vec::with_capacity(4);
    for part in parts {
        weights.push(parse_rational(part)?);
    }
    let weights: [Rational; 4] = weights.try_into().expect("length checked");
    TorusSpec::new(weights)
        .map_err(|_| Failure::usage("--lambda weights must be pairwise distinct"))
}

fn cmd_compute(args: ComputeArgs, cache_dir: &std::path::Path) -> Result<(), Failure> {
    let kind = match args.invariant {
        InvariantChoice::Contact => InvariantKind::Contact,
        InvariantChoice::GwLines => InvariantKind::LineIncidence,
    };
    let req = InvariantRequest::new(args.degree, kind).map_err(map_invariant_error)?;
    let result = match &args.lambda {
        Some(text) => {
            let spec = parse_lambda(text)?;
            compute_with_spec(&req, &spec).map_err(map_invariant_error)?
        }
        None => {
            let classes =
                load_or_enumerate(cache_dir, args.degree).map_err(map_invariant_error)?;
            compute_with_classes(&req, &classes, args.seed, args.agree)
                .map_err(map_invariant_error)?
        }
    };
    emit_compute(&result, args.format, !args.no_timing);
    Ok(())
}

fn emit_compute(result: &InvariantResult, format: OutputFormat, timing: bool) {
    match format {
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&result.to_json(timing)).expect("serializable")
            );
        }
        OutputFormat::Text => {
            let value = if result.is_integer {
                result.value.numer().to_string()
            } else {
                format!("{}/{}", result.value.numer(), result.value.denom())
            };
            let mut line = format!(
                "degree {} {} = {} ({} graph classes, {} specialization(s))",
                result.degree,
                result.kind.label(),
                value,
                result.graph_class_count,
                result.specializations_used.len()
            );
            if timing {
                line.push_str(&format!(" in {} ms", result.elapsed_ms));
            }
            println!("{line}");
        }
        OutputFormat::Csv => {
            println!("degree,kind,num,den,is_integer,graph_classes");
            println!(
                "{},{},{},{},{},{}",
                result.degree,
                result.kind.label(),
                result.value.numer(),
                result.value.denom(),
                result.is_integer,
                result.graph_class_count
            );
        }
    }
}

fn cmd_graphs(args: GraphsArgs, cache_dir: &std::path::Path) -> Result<(), Failure> {
    let classes = load_or_enumerate(cache_dir, args.degree).map_err(map_invariant_error)?;
    if args.stats {
        if args.format == GraphsFormat::Dot {
            return Err(Failure::usage(
                "--stats summarizes by type and has no dot rendering; use --format json",
            ));
        }
        let stats = statistics_by_type(&classes);
        let types: Vec<serde_json::Value> = stats
            .iter()
            .map(|(pattern, cell)| {
                serde_json::json!({
                    "pattern": to_hex(pattern),
                    "class_count": cell.class_count,
                    "aut_order": cell.aut_order,
                    "a_gamma": cell.a_gamma,
                    "representative": tree_json(&cell.representative),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "degree": args.degree,
                "classes": classes.len(),
                "types": types,
            }))
            .expect("serializable")
        );
        return Ok(());
    }
    match args.format {
        GraphsFormat::Dot => print!("{}", dot_export(&classes)),
        GraphsFormat::Json => {
            let listed: Vec<serde_json::Value> = classes
                .iter()
                .map(|class| {
                    serde_json::json!({
                        "colors": class.representative.colors(),
                        "edges": class
                            .representative
                            .edges()
                            .iter()
                            .map(|e| [e.u as u32, e.v as u32, e.weight])
                            .collect::<Vec<_>>(),
                        "aut_order": class.aut_order,
                        "a_gamma": class.a_gamma(),
                        "canonical": class.canonical_hex(),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "degree": args.degree,
                    "count": classes.len(),
                    "classes": listed,
                }))
                .expect("serializable")
            );
        }
    }
    Ok(())
}

fn tree_json(tree: &contact_curves::graphs::WeightedColoredTree) -> serde_json::Value {
    serde_json::json!({
        "colors": tree.colors(),
        "edges": tree
            .edges()
            .iter()
            .map(|e| [e.u as u32, e.v as u32, e.weight])
            .collect::<Vec<_>>(),
    })
}

fn cmd_configs(args: ConfigsArgs) -> Result<(), Failure> {
    let table = match args.family.as_str() {
        "cubics" => configs::cubic_configuration_table(),
        "quartics" => configs::quartic_configuration_table(),
        other => {
            return Err(Failure::usage(format!(
                "unsupported family '{other}': expected cubics or quartics"
            )))
        }
    };
    match args.format {
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&table.to_json()).expect("serializable")
            );
        }
        OutputFormat::Text => {
            println!("{}", table.assumption);
            println!("family: {} (pool of {} lines)", table.family, table.pool);
            for entry in &table.entries {
                println!("  {:<16} {}", entry.label, entry.count);
            }
            println!("  {:<16} {}", "total", table.total);
        }
        OutputFormat::Csv => {
            eprintln!("{}", table.assumption);
            println!("label,count");
            for entry in &table.entries {
                println!("{},{}", entry.label, entry.count);
            }
            println!("total,{}", table.total);
        }
    }
    Ok(())
}

fn parse_point(text: &str) -> Result<P1Point, Failure> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Failure::usage("--point needs two comma-separated coordinates"))?;
    P1Point::new(parse_rational(a)?, parse_rational(b)?)
        .map_err(|_| Failure::usage("--point must not be the zero vector"))
}

fn parse_curve(text: &str) -> Result<RationalCurveParam, Failure> {
    if let Some(params) = text.strip_prefix("buczynski:") {
        let (k, l) = params
            .split_once(',')
            .ok_or_else(|| Failure::usage("expected buczynski:k,l"))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Failure::usage(format!("cannot parse '{s}' as a positive integer")))
        };
        return buczynski(parse(k)?, parse(l)?).map_err(|e| Failure::usage(e.to_string()));
    }

    let lists: Vec<Vec<Rational>> = text
        .split(';')
        .map(|coord| coord.split(',').map(parse_rational).collect())
        .collect::<Result<_, _>>()?;
    if lists.len() != 4 {
        return Err(Failure::usage(format!(
            "a curve needs exactly four coordinate polynomials, got {}",
            lists.len()
        )));
    }
    // A list of zeros stands for the zero polynomial and adopts the common
    // degree of the genuinely nonzero coordinates.
    let degree = lists
        .iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .map(|c| c.len() - 1)
        .max()
        .ok_or_else(|| Failure::usage("at least one coordinate must be nonzero"))?;
    let coords: Vec<HomogPoly2> = lists
        .into_iter()
        .map(|coeffs| {
            if coeffs.iter().all(Rational::is_zero) {
                Ok(HomogPoly2::zero(degree))
            } else if coeffs.len() == degree + 1 {
                Ok(HomogPoly2::new(coeffs))
            } else {
                Err(Failure::usage(format!(
                    "coordinate polynomials must share one degree: got {} and {} coefficients",
                    coeffs.len(),
                    degree + 1
                )))
            }
        })
        .collect::<Result<_, _>>()?;
    let coords: [HomogPoly2; 4] = coords.try_into().expect("length checked");
    RationalCurveParam::new(coords).map_err(|e| Failure::usage(e.to_string()))
}

fn cmd_legendrian(args: LegendrianArgs) -> Result<(), Failure> {
    let curve = parse_curve(&args.curve)?;
    match args.action {
        LegendrianAction::Verify => {
            let pairing = contact_pairing(&curve);
            let contact = is_contact(&curve);
            match args.format {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "degree": curve.degree(),
                        "is_contact": contact,
                        "pairing": pairing.to_string(),
                    }))
                    .expect("serializable")
                ),
                OutputFormat::Text => {
                    println!("contact: {contact}");
                    println!("pairing: {pairing}");
                }
                OutputFormat::Csv => {
                    println!("degree,is_contact,pairing");
                    println!("{},{},\"{}\"", curve.degree(), contact, pairing);
                }
            }
        }
        LegendrianAction::Osculation => {
            let point_text = args
                .point
                .as_deref()
                .ok_or_else(|| Failure::usage("--action osculation requires --point"))?;
            let point = parse_point(point_text)?;
            let order = osculation_multiplicity(&curve, &point)
                .map_err(|e| Failure::usage(e.to_string()))?;
            match args.format {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "degree": curve.degree(),
                        "point": point.to_string(),
                        "multiplicity": order.to_string(),
                    }))
                    .expect("serializable")
                ),
                OutputFormat::Text | OutputFormat::Csv => println!("{order}"),
            }
        }
    }
    Ok(())
}
