//! `mahonian`: statistic tables, identity verification and conjecture search
//! on colored permutation groups.
//!
//! Exit status is 0 on success, 1 when a claimed identity fails, and 2 for
//! usage or parse errors.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mahonian::colored::{parse_word, GroupParams};
use mahonian::derangements::{
    d_count, d_poly_closed, d_signed_closed_check, derangement_polynomials, even_part_check,
};
use mahonian::enumerate::{enumerate_group, DEFAULT_BUDGET};
use mahonian::identities::{run_suite, SuiteConfig};
use mahonian::report::IdentityId;
use mahonian::statistics::StatRow;

#[derive(Parser)]
#[command(
    name = "mahonian",
    version,
    about = "Flag-major and length statistics on colored permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Statistics of a single colored permutation, e.g. "2[3] 1[1] 3 4[2] 5".
    Stats {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        n: u32,
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// One row of statistics per element of G(c,n).
    Table {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Check identities over a grid of (c, n).
    Verify {
        /// Identity to check; repeat or separate with commas.
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        identity: Vec<IdentityId>,
        /// Check every identity.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        common: Common,
    },
    /// Transpose symmetry of the (inv~, fmaj) distribution over a grid.
    Conjecture {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        common: Common,
    },
    /// Derangement polynomials and counts for G(c,n).
    Derangements {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        n: u32,
        /// Print values at q = 1 instead of polynomials.
        #[arg(long)]
        q1: bool,
        /// Print the signed polynomial even when c is odd.
        #[arg(long)]
        signed: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest number of group elements to enumerate per computation.
    #[arg(long, env = "MAHONIAN_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the main output here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct Grid {
    /// A single number of colors.
    #[arg(long, conflicts_with_all = ["c_min", "c_max"])]
    c: Option<u32>,
    #[arg(long)]
    c_min: Option<u32>,
    #[arg(long)]
    c_max: Option<u32>,
    /// A single degree.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<u32>,
    #[arg(long)]
    n_min: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
}

impl Grid {
    fn ranges(&self) -> (RangeInclusive<u32>, RangeInclusive<u32>) {
        let pick = |one: Option<u32>, lo: Option<u32>, hi: Option<u32>| match one {
            Some(v) => v..=v,
            None => lo.unwrap_or(1)..=hi.unwrap_or(4),
        };
        (
            pick(self.c, self.c_min, self.c_max),
            pick(self.n, self.n_min, self.n_max),
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Md,
}

enum Failure {
    Usage(String),
    Verification,
    Io(io::Error),
}

impl From<mahonian::Error> for Failure {
    fn from(e: mahonian::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<mahonian::ParseError> for Failure {
    fn from(e: mahonian::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn set_jobs(jobs: Option<usize>) -> Outcome {
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Stats { c, n, word, common } => {
            let perm = parse_word(&word, GroupParams::new(c, n)?)?;
            let row = StatRow::of(&perm);
            let mut out = open_output(&common.output)?;
            match common.format {
                None => writeln!(out, "{row}")?,
                Some(f) => output::stat_rows(&mut out, f, std::slice::from_ref(&row), true)?,
            }
            out.flush()?;
            Ok(())
        }
        Command::Table { c, n, common } => {
            set_jobs(common.jobs)?;
            let rows: Vec<StatRow> = enumerate_group(GroupParams::new(c, n)?, common.budget)?
                .map(|p| StatRow::of(&p))
                .collect();
            let mut out = open_output(&common.output)?;
            output::stat_rows(
                &mut out,
                common.format.unwrap_or(Format::Csv),
                &rows,
                common.verbose,
            )?;
            out.flush()?;
            Ok(())
        }
        Command::Verify {
            identity,
            all,
            grid,
            common,
        } => {
            let (c_range, n_range) = grid.ranges();
            let identities = if all || identity.is_empty() {
                IdentityId::ALL.to_vec()
            } else {
                for id in &identity {
                    if !c_range.clone().any(|c| id.applies_to(c)) {
                        let err = mahonian::Error::ParityMismatch {
                            identity: id.as_str(),
                            expected: id.parity().name(),
                            c: *c_range.start(),
                        };
                        return Err(Failure::Usage(err.to_string()));
                    }
                }
                identity
            };
            let config = SuiteConfig {
                c_range,
                n_range,
                budget: common.budget,
                identities,
                jobs: common.jobs,
            };
            let run = run_suite(&config)?;
            output::suite(
                &run,
                common.format.unwrap_or(Format::Json),
                &common.output,
                common.verbose,
            )?;
            if run.ok() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Conjecture { grid, common } => {
            let (c_range, n_range) = grid.ranges();
            let config = SuiteConfig {
                c_range,
                n_range,
                budget: common.budget,
                identities: vec![IdentityId::Conjecture],
                jobs: common.jobs,
            };
            let run = run_suite(&config)?;
            output::conjecture(&run, common.format, &common.output)?;
            if run.ok() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Derangements {
            c,
            n,
            q1,
            signed,
            common,
        } => {
            set_jobs(common.jobs)?;
            let polys = derangement_polynomials(c, n, common.budget)?;
            let even_c = c % 2 == 0;
            let mut checks = vec![("closed form", polys.plain == d_poly_closed(c, n))];
            checks.push(("count", polys.counts.total == d_count(c, n)));
            if even_c {
                checks.push((
                    "signed closed form",
                    d_signed_closed_check(c, n, common.budget)?.pass,
                ));
                checks.push(("even part", even_part_check(c, n, common.budget)?.pass));
            }
            let mut out = open_output(&common.output)?;
            let show = output::DerangementView {
                polys: &polys,
                q1,
                show_signed: even_c || signed,
                checks: &checks,
            };
            output::derangements(&mut out, common.format, &show)?;
            out.flush()?;
            if checks.iter().all(|(_, ok)| *ok) {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}
