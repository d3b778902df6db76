mod parse;
mod suites;

use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use qgrass::bigcell::bigcell_presentation;
use qgrass::grassmannian::{enumerate_standard, GrPresentation};
use qgrass::manin::build_manin;
use qgrass::parabolic::build_parabolic;
use qgrass::report::VerificationReport;
use qgrass::rewrite::Presentation;
use rayon::prelude::*;

use suites::{Context, RunConfig, SUITES};

#[derive(Parser)]
#[command(name = "qgrass", version, about = "Exact rewriting engine and verification suites for M_q(4|1), Gr_q and the quantum big cell")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Algebra {
    /// M_q(m|n), generators a[i,j]
    Mq,
    /// abstract Gr_q, generators D[i,j]
    Gr,
    /// lower parabolic quotient, generators g[i,j], gamma[i,j]
    Parabolic,
    /// big cell, generators t[i,j], tau[5,j]
    Bigcell,
}

#[derive(clap::Args, Clone)]
struct Sizes {
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        sizes: Sizes,
        #[arg(long)]
        degree: Option<usize>,
        /// Specializations of q for extra rank checks, e.g. 2,1/3
        #[arg(long, value_delimiter = ',')]
        q: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
        /// Enable the triple-tensor and degree-3 checks
        #[arg(long)]
        extended: bool,
    },
    /// Print the normal form of an expression.
    NormalForm {
        expr: String,
        #[arg(long, value_enum, default_value = "mq")]
        algebra: Algebra,
        #[command(flatten)]
        sizes: Sizes,
    },
    /// Number of irreducible words of a degree.
    Hilbert {
        #[arg(long, value_enum, default_value = "mq")]
        algebra: Algebra,
        #[command(flatten)]
        sizes: Sizes,
        #[arg(long)]
        degree: usize,
    },
    /// List the standard monomials of a degree.
    Basis {
        #[arg(long, value_enum, default_value = "gr")]
        algebra: Algebra,
        #[command(flatten)]
        sizes: Sizes,
        #[arg(long)]
        degree: usize,
    },
    /// Re-render saved JSON reports.
    Report {
        files: Vec<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn presentation(algebra: Algebra, sizes: &Sizes) -> Result<Presentation> {
    Ok(match algebra {
        Algebra::Mq => build_manin(sizes.m, sizes.n)?.presentation,
        Algebra::Gr => GrPresentation::new().presentation,
        Algebra::Parabolic => build_parabolic(&build_manin(4, 1)?).presentation,
        Algebra::Bigcell => bigcell_presentation().presentation,
    })
}

fn emit(reports: &[VerificationReport], format: Format) -> Result<()> {
    match format {
        Format::Text => {
            for r in reports {
                print!("{}", r.to_text());
            }
        }
        Format::Json if reports.len() == 1 => println!("{}", reports[0].to_json()),
        Format::Json => println!("{}", serde_json::to_string_pretty(reports)?),
    }
    Ok(())
}

fn parse_q(values: &[String]) -> Result<Vec<BigRational>> {
    values
        .iter()
        .map(|s| {
            let v: BigRational = s.trim().parse().with_context(|| format!("invalid q value '{s}'"))?;
            if v.is_zero() {
                bail!("q values must be nonzero");
            }
            Ok(v)
        })
        .collect()
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { suite, sizes, degree, q, format, jobs, extended } => {
            if !SUITES.contains(&suite.as_str()) {
                bail!("unknown suite '{suite}'; expected one of {}", SUITES.join(", "));
            }
            if sizes.m == 0 {
                bail!("--m must be at least 1");
            }
            if degree == Some(0) {
                bail!("--degree must be at least 1");
            }
            let config = RunConfig { m: sizes.m, n: sizes.n, degree, qs: parse_q(&q)?, extended };
            let ctx = Context::new(config);
            let selected: Vec<&str> = if suite == "all" { SUITES[..SUITES.len() - 1].to_vec() } else { vec![suite.as_str()] };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()?;
            let reports: Vec<VerificationReport> = pool.install(|| selected.par_iter().map(|s| ctx.run(s)).collect());
            emit(&reports, format)?;
            Ok(reports.iter().all(VerificationReport::all_pass))
        }
        Command::NormalForm { expr, algebra, sizes } => {
            let p = presentation(algebra, &sizes)?;
            let e = parse::parse_element(&expr, p.gens())?;
            println!("{}", p.normal_form(&e).display(p.gens()));
            Ok(true)
        }
        Command::Hilbert { algebra, sizes, degree } => {
            println!("{}", presentation(algebra, &sizes)?.count_irreducible(degree));
            Ok(true)
        }
        Command::Basis { algebra, sizes, degree } => {
            if algebra == Algebra::Gr {
                for t in enumerate_standard(degree) {
                    println!("{t}");
                }
            } else {
                let p = presentation(algebra, &sizes)?;
                for w in p.irreducible_words(degree) {
                    println!("{}", w.display(p.gens()));
                }
            }
            Ok(true)
        }
        Command::Report { files, format } => {
            let mut reports = Vec::new();
            for f in &files {
                let text = std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
                match serde_json::from_str::<Vec<VerificationReport>>(&text) {
                    Ok(many) => reports.extend(many),
                    Err(_) => reports.push(VerificationReport::from_json(&text).with_context(|| format!("parsing {}", f.display()))?),
                }
            }
            emit(&reports, format)?;
            Ok(reports.iter().all(VerificationReport::all_pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
