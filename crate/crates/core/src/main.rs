use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quasigroup::construction::construct_suitable;
use quasigroup::field::{is_prime, FieldCtx};
use quasigroup::report::{shift_subq, shift_trace, AnalysisReport, ConstructionReport};
use quasigroup::subq::{find_all_subquasigroups, generated_by};
use quasigroup::table::{Permutation, QTable};

#[derive(Parser)]
#[command(
    name = "quasigroup",
    version,
    about = "Construct and analyze finite quasigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a polynomially complete quasigroup of order p^r without proper subquasigroups
    Construct {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// Exponent m (default: smallest valid)
        #[arg(long)]
        m: Option<u64>,
        /// Constant c as a field tag (default: smallest with no idempotent)
        #[arg(long)]
        c: Option<u64>,
        /// Generator of the multiplicative group as a field tag
        #[arg(long)]
        beta: Option<u64>,
        /// Monic modulus coefficients, lowest degree first, e.g. 1,1,0,1
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Report subquasigroups, simplicity, affineness and related properties
    Analyze {
        file: PathBuf,
        /// Print element indices starting from 1
        #[arg(long)]
        one_based: bool,
    },
    /// List all proper subquasigroups
    Subq {
        file: PathBuf,
        #[arg(long)]
        one_based: bool,
    },
    /// Subquasigroup generated by one element
    Genby {
        file: PathBuf,
        a: usize,
        /// Read `a` and print indices starting from 1
        #[arg(long)]
        one_based: bool,
    },
    /// Apply x*y = pi(pi1^-1(x) . pi2^-1(y)) to a table
    Isotope {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        pi: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        pi1: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        pi2: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("invalid integer {s:?}"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err("p must be prime".into())
    }
}

fn load(path: &Path) -> Result<QTable, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    QTable::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("report serializes");
    out.push('\n');
    out
}

fn run(command: Command) -> Result<String, String> {
    match command {
        Command::Construct {
            p,
            r,
            m,
            c,
            beta,
            modulus,
            format,
        } => {
            let mut field = FieldCtx::new(p, r, modulus.as_deref()).map_err(|e| e.to_string())?;
            if let Some(tag) = beta {
                field = field.with_beta(tag).map_err(|e| e.to_string())?;
            }
            let c = c
                .map(|t| field.elem(t))
                .transpose()
                .map_err(|e| e.to_string())?;
            let built = construct_suitable(&field, m, c.as_ref()).map_err(|e| e.to_string())?;
            let report = ConstructionReport::new(built).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Json => json(&report),
                Format::Text => report.to_text(),
            })
        }
        Command::Analyze { file, one_based } => {
            let q = load(&file)?;
            Ok(json(
                &AnalysisReport::analyze(&q).shifted(one_based as usize),
            ))
        }
        Command::Subq { file, one_based } => {
            let q = load(&file)?;
            Ok(json(&shift_subq(
                find_all_subquasigroups(&q),
                one_based as usize,
            )))
        }
        Command::Genby { file, a, one_based } => {
            let q = load(&file)?;
            let offset = one_based as usize;
            let index = a
                .checked_sub(offset)
                .filter(|&i| i < q.order())
                .ok_or_else(|| format!("element {a} is out of range"))?;
            Ok(json(&shift_trace(generated_by(&q, index), offset)))
        }
        Command::Isotope {
            file,
            pi,
            pi1,
            pi2,
            format,
        } => {
            let q = load(&file)?;
            let perm = |v: Vec<usize>| Permutation::new(v).map_err(|e| e.to_string());
            let iso = q
                .isotope(&perm(pi)?, &perm(pi1)?, &perm(pi2)?)
                .map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Json => format!("{}\n", iso.to_json()),
                Format::Text => iso.to_text(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
