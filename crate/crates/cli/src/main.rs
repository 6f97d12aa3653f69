//! Command-line surface for the exact moduli-space invariants.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use moduli_betti::betti::{
    bcg_odd, bcg_z2, bg_z2, bsg_z2, fixed_det_rank2_odd, fixed_det_rank2_z2, fixed_det_rank3_z2,
    BettiResult, Rank2Mode,
};
use moduli_betti::groups::{h1_fixed_det_moduli, pi1_fixed_det_moduli};
use moduli_betti::topology::{enumerate_curves, validate_curve};
use moduli_betti::verify::{
    distinguish, golden_table_suite, markdown_summary, oracle_suite, run_identity_suite, Report,
};

const DEFAULT_TRUNC: usize = 40;

#[derive(Parser)]
#[command(
    name = "moduli-betti",
    version,
    about = "Exact Betti numbers, Poincaré series and fundamental groups for \
             moduli spaces of Real vector bundles over real curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Characteristic {
    /// Mod-2 coefficients.
    #[value(name = "2")]
    Two,
    /// Any odd or zero characteristic.
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    /// The fixed-determinant moduli space itself.
    Moduli,
    /// Constant-determinant gauge classifying space.
    Bcg,
    /// Determinant-one gauge classifying space.
    Bsg,
    /// Full gauge classifying space.
    Bg,
}

#[derive(Args)]
struct BettiArgs {
    #[arg(long)]
    rank: u32,
    #[arg(long)]
    genus: u32,
    /// Number of real circles.
    #[arg(long)]
    circles: u32,
    /// Number of odd circles.
    #[arg(long)]
    odd: u32,
    /// 1 when the complement of the real locus is connected, 0 when not.
    #[arg(long)]
    eps: Option<u8>,
    #[arg(long = "char", value_enum)]
    characteristic: Characteristic,
    /// Truncation degree (defaults to 40, or MODULI_BETTI_TRUNC).
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, value_enum, default_value = "moduli")]
    target: Target,
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
}

#[derive(Args)]
struct Pi1Args {
    #[arg(long)]
    rank: u32,
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    circles: u32,
    #[arg(long)]
    odd: u32,
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Golden,
    Oracle,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Truncation degree for the identity suite.
    #[arg(long)]
    trunc: Option<usize>,
    /// Smaller degree caps for the oracle runs.
    #[arg(long, default_value_t = false)]
    quick: bool,
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
}

#[derive(Args)]
struct DistinguishArgs {
    /// First type as "g,a,eps,c".
    #[arg(long = "a")]
    first: String,
    /// Second type as "g,a,eps,c".
    #[arg(long = "b")]
    second: String,
    #[arg(long)]
    rank: u32,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Poincaré series or polynomial.
    Betti(BettiArgs),
    /// List the real curve types of a genus.
    Classify(ClassifyArgs),
    /// Fundamental group and first homology of the moduli space.
    Pi1(Pi1Args),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Compare two bundle types by their Betti data.
    Distinguish(DistinguishArgs),
}

fn default_trunc(cli: Option<usize>) -> usize {
    cli.or_else(|| {
        std::env::var("MODULI_BETTI_TRUNC")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(DEFAULT_TRUNC)
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn coeff_row(series_json: &Value) -> Vec<String> {
    series_json["coeffs"]
        .as_array()
        .map(|arr| arr.iter().map(render_coeff).collect())
        .unwrap_or_default()
}

fn render_coeff(v: &Value) -> String {
    match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(parts) if parts.len() == 2 => {
            // rational [num, den] or character pair
            match (&parts[0], &parts[1]) {
                (Value::Array(_), Value::Array(_)) => format!(
                    "{}+{}χ",
                    render_coeff(&parts[0]),
                    render_coeff(&parts[1])
                ),
                _ => {
                    let num = render_coeff(&parts[0]);
                    let den = render_coeff(&parts[1]);
                    if den == "1" {
                        num
                    } else {
                        format!("{num}/{den}")
                    }
                }
            }
        }
        other => other.to_string(),
    }
}

fn print_betti_result(prefix: &str, res: &BettiResult, format: Format) {
    match format {
        Format::Json => {
            let mut obj = res.to_json();
            obj["target"] = json!(prefix);
            println!("{}", serde_json::to_string(&obj).expect("serializable"));
        }
        Format::Csv => {
            println!("target,case,degree,coefficient");
            for (k, c) in coeff_row(&res.series.to_json()).iter().enumerate() {
                println!("{prefix},{},{k},{c}", res.case_label);
            }
        }
        Format::Markdown => {
            println!("{prefix} [{}]", res.case_label);
            println!("  {}", res.series);
            for w in &res.warnings {
                println!("  warning: {w}");
            }
        }
        Format::Latex => {
            let poly = res.series.to_string().replace("t^", "t^{");
            // Close the braces opened above.
            let mut fixed = String::new();
            let mut chars = poly.chars().peekable();
            while let Some(c) = chars.next() {
                fixed.push(c);
                if c == '{' {
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            fixed.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    fixed.push('}');
                }
            }
            println!("$ {fixed} $");
        }
    }
}

fn run_betti(args: BettiArgs) -> Result<(), String> {
    // Mod-2 invariants do not depend on eps; default to any valid type.
    let eps = args.eps.unwrap_or_else(|| {
        if validate_curve(args.genus, args.circles, 1).is_ok() {
            1
        } else {
            0
        }
    });
    let curve = validate_curve(args.genus, args.circles, eps).map_err(|e| e.to_string())?;
    // A degree of the right parity, coprime when possible.
    let bundle = moduli_betti::topology::bundle_from_counts(&curve, args.rank, args.odd, true)
        .map_err(|e| e.to_string())?;
    let trunc = default_trunc(args.trunc);
    if args.target == Target::Moduli && !bundle.is_coprime() {
        return Err(format!(
            "the moduli formulas need gcd(r, d) = 1; no such degree exists for rank {} \
             with {} odd circles",
            args.rank, args.odd
        ));
    }
    let res = match (args.characteristic, args.target) {
        (Characteristic::Two, Target::Moduli) => match args.rank {
            2 => fixed_det_rank2_z2(args.genus, args.circles, Rank2Mode::TableReconciled),
            3 => fixed_det_rank3_z2(args.genus, args.circles, trunc),
            r => Err(moduli_betti::betti::BettiError::InvalidParams(format!(
                "no closed moduli formula for rank {r} mod 2; use --target bcg"
            ))),
        },
        (Characteristic::Two, Target::Bcg) => bcg_z2(args.rank, args.genus, args.circles, trunc),
        (Characteristic::Two, Target::Bsg) => bsg_z2(args.rank, args.genus, args.circles, trunc),
        (Characteristic::Two, Target::Bg) => bg_z2(args.rank, args.genus, args.circles, trunc),
        (Characteristic::Odd, Target::Moduli) => {
            if args.rank == 2 {
                fixed_det_rank2_odd(args.genus, curve.a - bundle.b)
            } else {
                Err(moduli_betti::betti::BettiError::InvalidParams(
                    "odd-characteristic moduli polynomials are available for rank 2".into(),
                ))
            }
        }
        (Characteristic::Odd, Target::Bcg) => bcg_odd(args.rank, &curve, &bundle, trunc),
        (Characteristic::Odd, Target::Bsg | Target::Bg) => {
            Err(moduli_betti::betti::BettiError::InvalidParams(
                "odd-characteristic series are provided for the constant-determinant \
                 classifying space and the moduli space; use --target bcg or moduli"
                    .into(),
            ))
        }
    }
    .map_err(|e| e.to_string())?;
    let target = format!(
        "rank {} genus {} circles {} odd {} char {}",
        args.rank,
        args.genus,
        args.circles,
        args.odd,
        match args.characteristic {
            Characteristic::Two => "2",
            Characteristic::Odd => "odd",
        }
    );
    print_betti_result(&target, &res, args.format);
    Ok(())
}

fn run_classify(args: ClassifyArgs) {
    let curves = enumerate_curves(args.genus);
    match args.format {
        Format::Json => {
            let rows: Vec<Value> = curves.iter().map(|c| c.to_json()).collect();
            println!("{}", serde_json::to_string(&rows).expect("serializable"));
        }
        Format::Csv => {
            println!("g,a,eps");
            for c in curves {
                println!("{},{},{}", c.g, c.a, c.eps);
            }
        }
        Format::Markdown => {
            println!("| g | a | eps |");
            println!("|---|---|-----|");
            for c in curves {
                println!("| {} | {} | {} |", c.g, c.a, c.eps);
            }
        }
        Format::Latex => {
            println!("\\begin{{tabular}}{{ccc}}");
            println!("g & a & eps \\\\");
            for c in curves {
                println!("{} & {} & {} \\\\", c.g, c.a, c.eps);
            }
            println!("\\end{{tabular}}");
        }
    }
}

fn run_pi1(args: Pi1Args) -> Result<(), String> {
    let pi1 = pi1_fixed_det_moduli(args.rank, args.genus, args.circles, args.odd)
        .map_err(|e| e.to_string())?;
    let h1 = h1_fixed_det_moduli(args.rank, args.genus, args.circles, args.odd)
        .map_err(|e| e.to_string())?;
    match args.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string(&json!({
                    "pi1": pi1.to_json(),
                    "pi1_display": pi1.to_string(),
                    "h1": h1.to_json(),
                    "h1_display": h1.to_string(),
                }))
                .expect("serializable")
            );
        }
        _ => println!("{pi1}; H1 = {h1}"),
    }
    Ok(())
}

fn emit_reports(reports: &[Report], format: Format) {
    match format {
        Format::Json => {
            for r in reports {
                println!("{}", serde_json::to_string(&r.to_json()).expect("serializable"));
            }
        }
        _ => print!("{}", markdown_summary(reports)),
    }
}

fn run_verify(args: VerifyArgs) -> Result<bool, String> {
    let trunc = default_trunc(args.trunc);
    let mut reports = Vec::new();
    if matches!(args.suite, Suite::Identities | Suite::All) {
        reports.extend(run_identity_suite(5, 6, trunc));
    }
    if matches!(args.suite, Suite::Golden | Suite::All) {
        reports.extend(golden_table_suite());
    }
    if matches!(args.suite, Suite::Oracle | Suite::All) {
        reports.extend(oracle_suite(args.quick).map_err(|e| e.to_string())?);
    }
    emit_reports(&reports, args.format);
    Ok(reports.iter().any(|r| r.is_unexpected()))
}

fn parse_type(spec: &str) -> Result<(u32, u32, u8, u32), String> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected \"g,a,eps,c\", got {spec:?}"));
    }
    let parse =
        |s: &str, what: &str| s.parse::<u32>().map_err(|_| format!("bad {what}: {s:?}"));
    Ok((
        parse(parts[0], "genus")?,
        parse(parts[1], "circle count")?,
        parse(parts[2], "eps")? as u8,
        parse(parts[3], "even circle count")?,
    ))
}

fn run_distinguish(args: DistinguishArgs) -> Result<(), String> {
    let trunc = default_trunc(args.trunc);
    let build = |spec: &str| -> Result<_, String> {
        let (g, a, eps, c) = parse_type(spec)?;
        let curve = validate_curve(g, a, eps).map_err(|e| e.to_string())?;
        if c > a {
            return Err(format!("even circles {c} exceed circle count {a}"));
        }
        let bundle =
            moduli_betti::topology::bundle_from_counts(&curve, args.rank, a - c, true)
                .map_err(|e| e.to_string())?;
        Ok((curve, bundle))
    };
    let (lc, lb) = build(&args.first)?;
    let (rc, rb) = build(&args.second)?;
    let out = distinguish((&lc, &lb), (&rc, &rb), trunc).map_err(|e| e.to_string())?;
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&out.to_json()).expect("serializable")
        ),
        _ => {
            if out.distinguished {
                println!(
                    "distinguished at stage {} ({}){}",
                    out.stage.unwrap_or(0),
                    out.detail,
                    out.witness_degree
                        .map(|d| format!(", witness degree {d}"))
                        .unwrap_or_default()
                );
            } else {
                println!("{}", out.detail);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Betti(args) => match run_betti(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Classify(args) => {
            run_classify(args);
            ExitCode::SUCCESS
        }
        Command::Pi1(args) => match run_pi1(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Verify(args) => match run_verify(args) {
            Ok(false) => ExitCode::SUCCESS,
            Ok(true) => {
                eprintln!("unexpected verification failures");
                ExitCode::FAILURE
            }
            Err(e) => fail(e),
        },
        Command::Distinguish(args) => match run_distinguish(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
    }
}
