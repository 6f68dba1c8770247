use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsing::QsingError;
use serde_json::Value;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "qsing", version, about = "Genus-zero A-model and Saito B-model computations for simple singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weights, central charge, Milnor number and maximal group order.
    Analyze(PolyArgs),
    /// Elements of the chosen symmetry group.
    Group(GroupArgs),
    /// Sectors, classes, W-degrees and the pairing.
    Statespace(GroupArgs),
    /// Nonzero genus-zero correlators among basis classes.
    Correlators(CorrelatorArgs),
    /// A-model potential of a named case, reconstructed through the given order.
    Potential(PotentialArgs),
    /// Saito B-model pairing, three- and four-point data.
    Bmodel(BmodelArgs),
    /// Ring isomorphism and potential comparison for a named case.
    MirrorCheck(CaseArgs),
}

#[derive(Args, Debug)]
pub struct Output {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// Quasi-homogeneous polynomial, e.g. "x^3+x*y^3".
    #[arg(long)]
    pub poly: String,
    /// Comma-separated variable order; defaults to order of appearance.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// J, max, or generators as phase lists: "1/3,2/9;0,1/2".
    #[arg(long, default_value = "J")]
    pub group: String,
}

#[derive(Args, Debug)]
pub struct CorrelatorArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Number of insertions (3 or 4).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(3..=4))]
    pub points: u32,
    /// Only genus zero is supported.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=0))]
    pub genus: u32,
}

#[derive(Args, Debug)]
pub struct CaseArgs {
    /// A:n, D:n, Dodd:n, DT:n, E6, E7 or E8.
    #[arg(long)]
    pub case: String,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Highest number of insertions kept.
    #[arg(long, env = "QSING_ORDER", default_value_t = 4, value_parser = clap::value_parser!(u32).range(3..=8))]
    pub order: u32,
    /// Only genus zero is supported.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=0))]
    pub genus: u32,
}

#[derive(Args, Debug)]
pub struct BmodelArgs {
    /// A:n, D:n (for x^n + x y^2), E6, E7 or E8.
    #[arg(long)]
    pub family: String,
    /// Primitive form multiple of dx; defaults to the family's natural base.
    #[arg(long)]
    pub scale: Option<String>,
    /// Truncation order of the flat-coordinate series to report.
    #[arg(long, env = "QSING_ORDER", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=12))]
    pub order: u32,
    #[command(flatten)]
    pub out: Output,
}

pub struct Report {
    pub json: Value,
    pub text: String,
}

fn error_kind(e: &QsingError) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, result) = match &cli.command {
        Command::Analyze(a) => (a.out.json, commands::analyze(a)),
        Command::Group(a) => (a.poly.out.json, commands::group(a)),
        Command::Statespace(a) => (a.poly.out.json, commands::statespace(a)),
        Command::Correlators(a) => (a.group.poly.out.json, commands::correlators(a)),
        Command::Potential(a) => (a.case.out.json, commands::potential(a)),
        Command::Bmodel(a) => (a.out.json, commands::bmodel(a)),
        Command::MirrorCheck(a) => (a.out.json, commands::mirror_check(a)),
    };
    match result {
        Ok(r) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                print!("{}", r.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                let v = serde_json::json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
