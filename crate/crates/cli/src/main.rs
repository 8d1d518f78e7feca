//! Command-line surface for the quotient stability toolkit.
//!
//! Every numeric input and output is an exact fraction; stability
//! parameters are parsed as fraction strings like `1/3`, never floats,
//! since chamber boundaries are rational.
//!
//! Exit codes: 0 success, 2 malformed input (files, expressions,
//! fractions), 3 unsupported scope, 4 internal consistency failure.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use squot::error::Error;
use squot::hassett;
use squot::invariants::{self, ChamberValue};
use squot::localization::{enumerate_fixed_graphs, Geometry};
use squot::quotient::{self, CombQuotient, Stability};
use squot::rational::Rational;
use squot::taut::{self, ExprBounds};

#[derive(Parser)]
#[command(
    name = "squot",
    about = "stability chambers and localization for quotient data",
    version
)]
struct Cli {
    /// Machine-readable output with stable key ordering.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical stability parameters for (g, m, d).
    Walls(WallsArgs),
    /// Test stability of a quotient file at a fixed parameter.
    Stable(StableArgs),
    /// Test stability for every positive parameter.
    MopStable(FileArg),
    /// Virtual dimension of the moduli.
    Vdim(VdimArgs),
    /// Section count of the embedding twist.
    H0(H0Args),
    /// Contract rational tails from one parameter down to another.
    Contract(ContractArgs),
    /// Map rank data through the wedge embedding.
    Plucker(PluckerArgs),
    /// Canonical form of a class expression.
    Canon(CanonArgs),
    /// Pull a class expression back across walls.
    Pullback(PullbackArgs),
    /// Enumerate torus-fixed-locus graphs.
    Graphs(GraphsArgs),
    /// Exact invariant of a local geometry at one parameter.
    Invariant(InvariantArgs),
    /// Chamber-corrected generating series of the conifold.
    Series(SeriesArgs),
    /// Invariant per chamber, across the whole wall set.
    Report(ReportArgs),
    /// Weighted-pointed moduli dimension.
    HassettDim(HassettDimArgs),
}

#[derive(Args)]
struct WallsArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    d: u32,
}

#[derive(Args)]
struct StableArgs {
    #[arg(long)]
    eps: Rational,
    #[arg(long = "in")]
    input: String,
}

#[derive(Args)]
struct FileArg {
    #[arg(long = "in")]
    input: String,
}

#[derive(Args)]
struct VdimArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
}

#[derive(Args)]
struct H0Args {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    k: u32,
}

#[derive(Args)]
struct ContractArgs {
    #[arg(long)]
    from: Rational,
    #[arg(long)]
    to: Rational,
    #[arg(long = "in")]
    input: String,
    #[arg(long = "out")]
    output: String,
}

#[derive(Args)]
struct PluckerArgs {
    #[arg(long = "in")]
    input: String,
    #[arg(long = "out")]
    output: String,
}

#[derive(Args)]
struct CanonArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long)]
    eps: Option<Rational>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args)]
struct PullbackArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long)]
    from: Rational,
    #[arg(long)]
    to: Rational,
    #[arg(long)]
    d: u32,
}

#[derive(Args)]
struct GraphsArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    eps: Rational,
    /// Also print each graph as one JSON line.
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct InvariantArgs {
    #[arg(long)]
    geometry: String,
    #[arg(long)]
    g: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    eps: Rational,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    geometry: String,
    #[arg(long)]
    eps: Rational,
    #[arg(long = "t-order")]
    t_order: u32,
    #[arg(long = "lambda-order", allow_hyphen_values = true)]
    lambda_order: i64,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    geometry: String,
    #[arg(long)]
    g: u32,
    #[arg(long)]
    d: u32,
}

#[derive(Args)]
struct HassettDimArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    d: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedScope(_) | Error::SizeLimit(_) => 3,
        Error::Inconsistency(_) => 4,
        _ => 2,
    }
}

fn read_quotient(path: &str) -> Result<CombQuotient, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
    CombQuotient::from_json(&text)
}

fn write_file(path: &str, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("cannot write {path}: {e}")))
}

fn upper_str(upper: &Option<Rational>) -> String {
    match upper {
        Some(u) => u.to_string(),
        None => "inf".to_string(),
    }
}

fn print_report(rows: &[ChamberValue], json: bool) {
    if json {
        let rows: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "lower": r.lower.to_string(),
                    "upper": r.upper.as_ref().map(|u| u.to_string()),
                    "value": r.value.to_string(),
                })
            })
            .collect();
        println!("{}", json!({ "chambers": rows }));
    } else {
        let bounds: Vec<String> = rows
            .iter()
            .map(|r| {
                let close = if r.upper.is_some() { "]" } else { ")" };
                format!("({}, {}{close}", r.lower, upper_str(&r.upper))
            })
            .collect();
        let width = bounds.iter().map(|b| b.len()).max().unwrap_or(0);
        for (b, r) in bounds.iter().zip(rows) {
            println!("{b:width$}  {}", r.value);
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Walls(a) => {
            let ws = quotient::walls(a.g, a.m, a.d)?;
            if cli.json {
                let mut walls: Vec<String> = ws.finite.iter().map(|w| w.to_string()).collect();
                walls.push("inf".into());
                println!(
                    "{}",
                    json!({ "g": a.g, "m": a.m, "d": a.d, "walls": walls })
                );
            } else {
                println!("{ws}");
            }
        }
        Command::Stable(a) => {
            let q = read_quotient(&a.input)?;
            let verdict = quotient::is_epsilon_stable(&q, &a.eps)?;
            print_verdict(&verdict, cli.json);
        }
        Command::MopStable(a) => {
            let q = read_quotient(&a.input)?;
            let verdict = quotient::is_mop_stable(&q);
            print_verdict(&verdict, cli.json);
        }
        Command::Vdim(a) => {
            let v = quotient::vdim(a.g, a.m, a.r, a.n, a.d)?;
            if cli.json {
                println!("{}", json!({ "vdim": v }));
            } else {
                println!("{v}");
            }
        }
        Command::H0(a) => {
            let h = quotient::embedding_h0(a.g, a.m, a.d, a.l, a.k)?;
            if !h.proven {
                eprintln!("warning: k < 5, very-ampleness of the twist is unproven");
            }
            if cli.json {
                println!(
                    "{}",
                    json!({ "h0": h.value, "very_ample_proven": h.proven })
                );
            } else {
                println!("{}", h.value);
            }
        }
        Command::Contract(a) => {
            let q = read_quotient(&a.input)?;
            let out = quotient::contract(&q, &a.from, &a.to)?;
            let text = out.to_json();
            write_file(&a.output, &text)?;
            println!("{text}");
        }
        Command::Plucker(a) => {
            let q = read_quotient(&a.input)?;
            let out = quotient::plucker(&q)?;
            let text = out.to_json();
            write_file(&a.output, &text)?;
            println!("{text}");
        }
        Command::Canon(a) => {
            let bounds = ExprBounds { m: a.m, d: a.d };
            let expr = taut::parse_expr(&a.expr, bounds)?;
            let out = taut::canonical_form(&expr, a.eps.as_ref());
            if cli.json {
                println!("{}", json!({ "expr": out.to_string() }));
            } else {
                println!("{out}");
            }
        }
        Command::Pullback(a) => {
            let bounds = ExprBounds {
                m: None,
                d: Some(a.d),
            };
            let expr = taut::parse_expr(&a.expr, bounds)?;
            let out = taut::pullback_contraction(&expr, &a.from, &a.to, a.d)?;
            if cli.json {
                println!("{}", json!({ "expr": out.to_string() }));
            } else {
                println!("{out}");
            }
        }
        Command::Graphs(a) => {
            let graphs = enumerate_fixed_graphs(a.g, a.m, a.d, a.r, a.n, &a.eps)?;
            if cli.json {
                let dumped: Vec<serde_json::Value> = if a.dump {
                    graphs
                        .iter()
                        .map(|g| serde_json::to_value(g).expect("serializable"))
                        .collect()
                } else {
                    Vec::new()
                };
                let mut obj = json!({ "count": graphs.len() });
                if a.dump {
                    obj["graphs"] = serde_json::Value::Array(dumped);
                }
                println!("{obj}");
            } else {
                println!("{}", graphs.len());
                if a.dump {
                    for g in &graphs {
                        println!("{}", g.to_json());
                    }
                }
            }
        }
        Command::Invariant(a) => {
            let geometry = Geometry::parse(&a.geometry)?;
            let value = match geometry {
                Geometry::Conifold => invariants::conifold_invariant(a.g, a.d, &a.eps)?,
                Geometry::LocalP2 => {
                    if (a.g, a.d) != (1, 1) {
                        return Err(Error::UnsupportedScope(
                            "local-p2 supports the elliptic degree-one invariant".into(),
                        ));
                    }
                    invariants::local_p2_11(&a.eps)?
                }
                Geometry::Quintic => {
                    if a.g != 0 {
                        return Err(Error::UnsupportedScope(
                            "quintic invariants are genus zero".into(),
                        ));
                    }
                    invariants::quintic_g0(a.d, &a.eps)?
                }
                Geometry::Projective(_) => {
                    return Err(Error::UnsupportedScope(
                        "no invariant attached to a bare projective space".into(),
                    ))
                }
            };
            if cli.json {
                println!("{}", json!({ "value": value.to_string() }));
            } else {
                println!("{value}");
            }
        }
        Command::Series(a) => {
            let geometry = Geometry::parse(&a.geometry)?;
            if geometry != Geometry::Conifold {
                return Err(Error::UnsupportedScope(
                    "series output is implemented for the conifold".into(),
                ));
            }
            let s = invariants::f_epsilon_conifold(&a.eps, a.lambda_order, a.t_order)?;
            if cli.json {
                let mut rows = Vec::new();
                for (d, ls) in &s.coefficients {
                    for (e, c) in ls.iter_nonzero() {
                        rows.push(json!({ "t": d, "lambda": e, "coeff": c.to_string() }));
                    }
                }
                println!("{}", json!({ "rows": rows }));
            } else {
                for (d, ls) in &s.coefficients {
                    for (e, c) in ls.iter_nonzero() {
                        println!("t^{d} lambda^{e} {c}");
                    }
                }
            }
        }
        Command::Report(a) => {
            let geometry = Geometry::parse(&a.geometry)?;
            let (_, rows) = invariants::wall_crossing_report(geometry, a.g, a.d)?;
            print_report(&rows, cli.json);
        }
        Command::HassettDim(a) => {
            let v = hassett::hassett_dim(a.g, a.m, a.d)?;
            if cli.json {
                println!("{}", json!({ "dim": v }));
            } else {
                println!("{v}");
            }
        }
    }
    Ok(())
}

fn print_verdict(verdict: &Stability, json: bool) {
    match verdict {
        Stability::Stable => {
            if json {
                println!("{}", json!({ "stable": true }));
            } else {
                println!("stable");
            }
        }
        Stability::Unstable(v) => {
            if json {
                println!("{}", json!({ "stable": false, "reason": v.to_string() }));
            } else {
                println!("unstable: {v}");
            }
        }
    }
}
