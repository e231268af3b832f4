//! Library backing the `kmaha` binary: element parsing, enumeration, the
//! batch check harness, and report rendering.
//!
//! Exit codes: 0 all pass; 1 property violation (theorem bug or conjecture
//! counterexample — the report says which); 2 usage or configuration error;
//! 3 completed with unresolved (unknown) verdicts only.

pub mod checks;
pub mod enumerate;
pub mod expr;
pub mod report;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use kmaha::{
    build_datum, demazure_candidate, hecke_t_mul, inv_intersect, kma_string, length_wt,
    sign_rep_t, tbasis_string, triv_rep_t, wp_canonical_string, DemazureOutcome, EngineLimits,
    Error, Result, RootDatum, TBasisElt, WPElt, WitnessBudget,
};
use serde::Deserialize;

use checks::{CheckKind, CheckRun};
use enumerate::Bounds;

#[derive(Parser)]
#[command(
    name = "kmaha",
    version,
    about = "Exact computations in Kac-Moody affine Hecke algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiply T_x T_y and print the T-basis expansion
    Mult {
        #[arg(long, default_value = "A1aff")]
        datum: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Print ℓ(x)
    Length {
        #[arg(long, default_value = "A1aff")]
        datum: String,
        #[arg(long)]
        x: String,
    },
    /// Print Inv(x) ∩ Inv(y⁻¹)
    InvIntersect {
        #[arg(long, default_value = "A1aff")]
        datum: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Print triv(T_x)
    Triv {
        #[arg(long, default_value = "A1aff")]
        datum: String,
        #[arg(long)]
        x: String,
    },
    /// Print sign(T_x)
    Sign {
        #[arg(long, default_value = "A1aff")]
        datum: String,
        #[arg(long)]
        x: String,
    },
    /// Print the unique q=0 survivor of T_x T_y (the Demazure candidate)
    Demazure {
        #[arg(long, default_value = "A1aff")]
        datum: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Run a property suite over enumerated pairs (or one explicit pair)
    Check(CheckArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// deficit | support | demazure | characters | roundtrip | golden
    kind: String,
    #[arg(long)]
    datum: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    /// Coweight coordinates range over [-B, B]
    #[arg(long)]
    max_coord: Option<i64>,
    /// Weyl factor length cap
    #[arg(long)]
    max_weyl_len: Option<usize>,
    /// |ℓ(x)| cap
    #[arg(long)]
    max_abs_length: Option<i64>,
    /// Bruhat witness search depth
    #[arg(long)]
    witness_depth: Option<usize>,
    /// json | text | csv
    #[arg(long)]
    format: Option<String>,
    /// Worker threads (output is byte-identical at any count)
    #[arg(long)]
    jobs: Option<usize>,
    /// TOML file supplying any of the above flags
    #[arg(long)]
    config: Option<PathBuf>,
}

/// TOML mirror of the check flags; explicit flags win over file values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    datum: Option<String>,
    x: Option<String>,
    y: Option<String>,
    max_coord: Option<i64>,
    max_weyl_len: Option<usize>,
    max_abs_length: Option<i64>,
    witness_depth: Option<usize>,
    format: Option<String>,
    jobs: Option<usize>,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::TheoremViolation(_) => 1,
                _ => 2,
            }
        }
    }
}

fn resolve_datum(desc: &str) -> Result<RootDatum> {
    if Path::new(desc).is_file() {
        let text = std::fs::read_to_string(desc)
            .map_err(|e| Error::Usage(format!("cannot read datum file {}: {}", desc, e)))?;
        build_datum(&text)
    } else {
        build_datum(desc)
    }
}

fn parse(text: &str, datum: &RootDatum) -> Result<WPElt> {
    expr::parse_element(text, datum).map_err(Error::Usage)
}

fn dispatch(cli: Cli) -> Result<i32> {
    let limits = EngineLimits::default();
    match cli.cmd {
        Cmd::Mult { datum, x, y } => {
            let d = resolve_datum(&datum)?;
            let prod = hecke_t_mul(&d, &parse(&x, &d)?, &parse(&y, &d)?, &limits)?;
            println!("{}", tbasis_string(&d, &prod));
            Ok(0)
        }
        Cmd::Length { datum, x } => {
            let d = resolve_datum(&datum)?;
            println!("{}", length_wt(&d, &parse(&x, &d)?)?);
            Ok(0)
        }
        Cmd::InvIntersect { datum, x, y } => {
            let d = resolve_datum(&datum)?;
            let inter = inv_intersect(&d, &parse(&x, &d)?, &parse(&y, &d)?)?;
            let members: Vec<String> = inter.iter().map(|b| kma_string(&d, b)).collect();
            println!("{{{}}}", members.join(", "));
            Ok(0)
        }
        Cmd::Triv { datum, x } => {
            let d = resolve_datum(&datum)?;
            let t = TBasisElt::t(&d, &parse(&x, &d)?)?;
            println!("{}", triv_rep_t(&d, &t, &limits)?);
            Ok(0)
        }
        Cmd::Sign { datum, x } => {
            let d = resolve_datum(&datum)?;
            let t = TBasisElt::t(&d, &parse(&x, &d)?)?;
            println!("{}", sign_rep_t(&d, &t, &limits)?);
            Ok(0)
        }
        Cmd::Demazure { datum, x, y } => {
            let d = resolve_datum(&datum)?;
            match demazure_candidate(&d, &parse(&x, &d)?, &parse(&y, &d)?, &limits)? {
                DemazureOutcome::Unique { z, coeff } => {
                    println!("{} (q=0 coefficient {})", wp_canonical_string(&d, &z), coeff);
                    Ok(0)
                }
                DemazureOutcome::Ambiguous { survivors } => {
                    println!("ambiguous: {} terms survive at q=0", survivors.len());
                    for (z, c) in survivors {
                        println!("  {} -> {}", wp_canonical_string(&d, &z), c);
                    }
                    Ok(1)
                }
            }
        }
        Cmd::Check(args) => run_check_cmd(args),
    }
}

fn run_check_cmd(args: CheckArgs) -> Result<i32> {
    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Usage(format!("cannot read config {}: {}", path.display(), e))
            })?;
            toml::from_str(&text)
                .map_err(|e| Error::Usage(format!("bad config {}: {}", path.display(), e)))?
        }
        None => FileConfig::default(),
    };

    let kind = CheckKind::from_str(&args.kind)?;
    let datum_label = args.datum.or(file.datum).unwrap_or_else(|| "A1aff".into());
    let datum = resolve_datum(&datum_label)?;
    let bounds = Bounds {
        max_coord: args.max_coord.or(file.max_coord).unwrap_or(1),
        max_weyl_len: args.max_weyl_len.or(file.max_weyl_len).unwrap_or(2),
        max_abs_length: args.max_abs_length.or(file.max_abs_length).unwrap_or(8),
    };
    let budget = WitnessBudget {
        max_depth: args.witness_depth.or(file.witness_depth).unwrap_or(6),
        ..WitnessBudget::default()
    };
    let format = args.format.or(file.format).unwrap_or_else(|| "text".into());
    let jobs = args.jobs.or(file.jobs).unwrap_or(1);
    if jobs == 0 {
        return Err(Error::Usage("--jobs must be at least 1".into()));
    }
    let x = match args.x.or(file.x) {
        Some(s) => Some(parse(&s, &datum)?),
        None => None,
    };
    let y = match args.y.or(file.y) {
        Some(s) => Some(parse(&s, &datum)?),
        None => None,
    };

    let run = CheckRun { datum, datum_label, kind, x, y, bounds, budget, jobs };
    let rep = checks::run_check(&run)?;
    let rendered = report::render(&rep, &format).map_err(Error::Usage)?;
    print!("{}", rendered);
    Ok(report::exit_code(&rep.summary))
}
