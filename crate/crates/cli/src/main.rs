use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use singeta::analyze::{analyze, brieskorn, BrieskornPath, Options};
use singeta::report::{exit_code, render_text, Report};
use singeta::{maslov, table};
use singeta_core::eta::EtaConvention;

#[derive(Parser)]
#[command(name = "singeta", version, about = "Eta-invariants of quasihomogeneous singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    General,
    Brieskorn,
}

impl From<Sign> for EtaConvention {
    fn from(s: Sign) -> Self {
        match s {
            Sign::General => EtaConvention::General,
            Sign::Brieskorn => EtaConvention::BrieskornSign,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Worker threads for lattice sums (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a polynomial end to end.
    Analyze {
        polynomial: String,
        /// Comma-separated variable order.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "general")]
        unit_eigenvalue_sign: Sign,
        #[command(flatten)]
        common: Common,
    },
    /// Brieskorn polynomial z_0^a_0 + ... + z_n^a_n.
    Brieskorn {
        #[arg(required = true, num_args = 1..)]
        exponents: Vec<u32>,
        #[arg(long, group = "path")]
        fast: bool,
        #[arg(long, group = "path")]
        naive: bool,
        #[arg(long, group = "path")]
        both: bool,
        #[arg(long, value_enum, default_value = "brieskorn")]
        unit_eigenvalue_sign: Sign,
        #[command(flatten)]
        common: Common,
    },
    /// CSV table of Brieskorn invariants over exponent ranges.
    Table {
        /// Inclusive ranges, e.g. 2..6,2..6,2..6.
        #[arg(long)]
        ranges: String,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Maslov index oracle.
    Maslov {
        #[arg(long, conflicts_with = "random")]
        demo: bool,
        /// Random Lagrangians: DIM SEED.
        #[arg(long, num_args = 2, value_names = ["DIM", "SEED"])]
        random: Option<Vec<u64>>,
    },
}

fn threads(t: Option<usize>) -> usize {
    t.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1)
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        match serde_json::to_string_pretty(report) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    } else {
        print!("{}", render_text(report));
    }
    ExitCode::from(exit_code(report) as u8)
}

fn fail(code: &str, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error[{code}]: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            polynomial,
            vars,
            unit_eigenvalue_sign,
            common,
        } => {
            let opts = Options {
                convention: unit_eigenvalue_sign.into(),
                threads: threads(common.threads),
                timing: common.timing,
            };
            match analyze(&polynomial, vars.as_deref(), &opts) {
                Ok(r) => emit(&r, common.json),
                Err(e) => fail(&e.code(), e),
            }
        }
        Command::Brieskorn {
            exponents,
            fast,
            naive,
            both,
            unit_eigenvalue_sign,
            common,
        } => {
            let path = match (fast, naive, both) {
                (_, true, _) => BrieskornPath::Naive,
                (_, _, true) => BrieskornPath::Both,
                _ => BrieskornPath::Fast,
            };
            let opts = Options {
                convention: unit_eigenvalue_sign.into(),
                threads: threads(common.threads),
                timing: common.timing,
            };
            match brieskorn(&exponents, path, &opts) {
                Ok(r) => {
                    if path == BrieskornPath::Both && r.eta["brieskorn_fast"] != r.eta["brieskorn_naive"] {
                        return fail("eta_formulas.PathMismatch", "fast and naive lattice sums differ");
                    }
                    emit(&r, common.json)
                }
                Err(e) => fail(&e.code(), e),
            }
        }
        Command::Table { ranges, out, threads: t } => {
            let ranges = match table::parse_ranges(&ranges) {
                Ok(r) => r,
                Err(e) => return fail("cli.BadRange", e),
            };
            let result = match &out {
                Some(path) => File::create(path)
                    .map_err(|e| e.into())
                    .and_then(|f| {
                        let mut w = BufWriter::new(f);
                        let n = table::write_table(&ranges, threads(t), &mut w)?;
                        w.flush()?;
                        Ok(n)
                    }),
                None => table::write_table(&ranges, threads(t), &mut io::stdout().lock()),
            };
            match result {
                Ok(n) => {
                    if let Some(path) = out {
                        eprintln!("wrote {n} rows to {path}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail("cli.Table", e),
            }
        }
        Command::Maslov { demo, random } => {
            let json = match (demo, random) {
                (_, Some(r)) => maslov::random(r[0] as usize, r[1]).map(|x| serde_json::to_string_pretty(&x)),
                (true, None) => maslov::demo().map(|x| serde_json::to_string_pretty(&x)),
                (false, None) => return fail("cli.Usage", "pass --demo or --random DIM SEED"),
            };
            match json {
                Ok(Ok(s)) => {
                    println!("{s}");
                    ExitCode::SUCCESS
                }
                Ok(Err(e)) => fail("cli.Json", e),
                Err(e) => fail(&e.code(), e),
            }
        }
    }
}
