use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::{BigRational, Rational64};
use serde::Serialize;

use frs_core::bounds::{parse_rational, BoundQuery, BoundReport};
use frs_core::codes::{corrupt, CodeParams};
use frs_core::decoder::{list_decode, list_recover, radius_threshold, CandidateSpace};
use frs_core::experiments::{list_size, prune_completeness, singleton2, subspace};
use frs_core::prune::enumerate_list;
use frs_core::rng::trial_rng;
use frs_core::schema::{from_json, to_json, ListFile, MessageFile, ParamsFile, SetsFile, SpaceFile, WordFile};
use frs_core::{Error, Result};

const TINY: &str = include_str!("../../../configs/tiny.json");
const MEDIUM: &str = include_str!("../../../configs/medium.json");
const SINGLETON2: &str = include_str!("../../../configs/singleton2.json");

#[derive(Parser)]
#[command(name = "frs", version, about = "Folded Reed-Solomon and multiplicity code list decoding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Trials {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<u64>,
    /// Code parameters JSON; defaults to the experiment's pinned configuration.
    #[arg(long)]
    params: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a message polynomial.
    Encode {
        #[arg(long)]
        params: PathBuf,
        /// `{"message":[coeffs]}`
        #[arg(long)]
        message: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Replace random columns of a word with random symbols.
    Corrupt {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        errors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// List decode a received word to a candidate space.
    Decode {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        listing: Listing,
        #[command(flatten)]
        output: Output,
    },
    /// List recover from per-column candidate sets (FRS only).
    Recover {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        sets: PathBuf,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        listing: Listing,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate every list-size bound whose inputs are given.
    Bounds {
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        /// Rate, as `a/b` or a decimal.
        #[arg(long = "R")]
        rate: Option<String>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        /// List size for the generalized Singleton radius.
        #[arg(long)]
        list: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// m = 2 decoding with list size at most two.
    ExpSingleton2 {
        #[command(flatten)]
        common: Trials,
        #[arg(long, default_value_t = 18)]
        errors: usize,
    },
    /// Largest list at the decoding radius against the fixed-m bound.
    ExpListsize {
        #[command(flatten)]
        common: Trials,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Pruning completeness against exact enumeration.
    ExpPrune {
        #[command(flatten)]
        common: Trials,
        #[arg(long, default_value_t = 0.01)]
        eta: f64,
        #[arg(long, default_value = "1/4")]
        rho: String,
        /// Dimension of the random candidate spaces.
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Column-kernel statistics of decoder spaces.
    ExpSubspace {
        #[command(flatten)]
        common: Trials,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
}

#[derive(Args)]
struct Listing {
    /// Also write the messages within `--rho` (default: the decoding radius).
    #[arg(long)]
    list: Option<PathBuf>,
    #[arg(long)]
    rho: Option<String>,
    /// Largest number of space members enumeration may visit.
    #[arg(long, default_value_t = 1 << 26)]
    budget: u128,
}

/// Outcome of a command: the JSON to print and whether a property that must
/// hold was violated.
struct Report {
    json: String,
    violated: bool,
}

impl Report {
    fn ok<T: Serialize>(value: &T) -> Report {
        Report { json: to_json(value), violated: false }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn load_params(path: &Path) -> Result<CodeParams> {
    from_json::<ParamsFile>(&read(path)?)?.to_params()
}

fn params_or(path: &Option<PathBuf>, pinned: &str) -> Result<CodeParams> {
    match path {
        Some(p) => load_params(p),
        None => from_json::<ParamsFile>(pinned)?.to_params(),
    }
}

fn rational(text: &str) -> Result<BigRational> {
    parse_rational(text)
}

fn small_rational(text: &str) -> Result<Rational64> {
    let x = rational(text)?;
    match (i64::try_from(x.numer()), i64::try_from(x.denom())) {
        (Ok(n), Ok(d)) => Ok(Rational64::new(n, d)),
        _ => Err(Error::Format(format!("{text} does not fit in 64 bits"))),
    }
}

fn write_list(params: &CodeParams, space: &CandidateSpace, sets: &frs_core::codes::RecoverySets, m: usize, listing: &Listing) -> Result<()> {
    let Some(path) = &listing.list else { return Ok(()) };
    let rho = match &listing.rho {
        Some(r) => small_rational(r)?,
        None => {
            let errors = radius_threshold(params, m, sets.ell())?.max_errors;
            Rational64::new(errors as i64, params.n() as i64)
        }
    };
    let list = enumerate_list(params, space, sets, rho, listing.budget)?;
    write(&Some(path.clone()), &to_json(&ListFile::from_list(&list)))
}

fn write(out: &Option<PathBuf>, json: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{json}\n")).map_err(|e| Error::Format(format!("{}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(Report, Option<PathBuf>)> {
    match command {
        Command::Encode { params, message, output } => {
            let params = load_params(&params)?;
            let f = from_json::<MessageFile>(&read(&message)?)?.to_poly(&params)?;
            Ok((Report::ok(&WordFile::from_word(&params.encode(&f)?)), output.out))
        }
        Command::Corrupt { params, word, errors, seed, output } => {
            let params = load_params(&params)?;
            let w = from_json::<WordFile>(&read(&word)?)?.to_word(&params)?;
            let y = corrupt(params.field(), &w, errors, &mut trial_rng(seed, 0))?;
            Ok((Report::ok(&WordFile::from_word(&y)), output.out))
        }
        Command::Decode { params, word, m, listing, output } => {
            let params = load_params(&params)?;
            let y = from_json::<WordFile>(&read(&word)?)?.to_word(&params)?;
            let space = list_decode(&params, &y, m)?;
            write_list(&params, &space, &frs_core::codes::RecoverySets::from_word(&y), m, &listing)?;
            Ok((Report::ok(&SpaceFile::from_space(&space)), output.out))
        }
        Command::Recover { params, sets, m, listing, output } => {
            let params = load_params(&params)?;
            let sets = from_json::<SetsFile>(&read(&sets)?)?.to_sets(&params)?;
            let space = list_recover(&params, &sets, m)?;
            write_list(&params, &space, &sets, m, &listing)?;
            Ok((Report::ok(&SpaceFile::from_space(&space)), output.out))
        }
        Command::Bounds { m, s, rate, eps, ell, delta, d, p, list, output } => {
            let query = BoundQuery {
                m,
                s,
                rate: rate.as_deref().map(rational).transpose()?,
                eps: eps.as_deref().map(rational).transpose()?,
                ell,
                delta: delta.as_deref().map(rational).transpose()?,
                d,
                p,
                list,
            };
            Ok((Report::ok(&BoundReport::evaluate(&query)), output.out))
        }
        Command::ExpSingleton2 { common, errors } => {
            let params = params_or(&common.params, SINGLETON2)?;
            let trials = common.trials.unwrap_or(1000);
            let within = singleton2(&params, trials, common.seed, errors)?;
            // One error past the radius: counts only, no guarantee.
            let beyond = singleton2(&params, trials, common.seed, errors + 1)?;
            #[derive(Serialize)]
            struct Both<T> {
                within: T,
                beyond: T,
            }
            let violated = within.violations + beyond.violations > 0;
            Ok((Report { json: to_json(&Both { within, beyond }), violated }, common.output.out))
        }
        Command::ExpListsize { common, m } => {
            let params = params_or(&common.params, MEDIUM)?;
            let report = list_size(&params, m, common.trials.unwrap_or(500), common.seed)?;
            let violated = report.violations > 0;
            Ok((Report { json: to_json(&report), violated }, common.output.out))
        }
        Command::ExpPrune { common, eta, rho, dim } => {
            let params = params_or(&common.params, TINY)?;
            let report = prune_completeness(&params, dim, small_rational(&rho)?, eta, common.trials.unwrap_or(200), common.seed)?;
            let violated = report.violations > 0 || !report.miss_rate_ok;
            Ok((Report { json: to_json(&report), violated }, common.output.out))
        }
        Command::ExpSubspace { common, m } => {
            let params = params_or(&common.params, MEDIUM)?;
            let report = subspace(&params, m, common.trials.unwrap_or(100), common.seed)?;
            let violated = report.violations > 0;
            Ok((Report { json: to_json(&report), violated }, common.output.out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command).and_then(|(report, out)| write(&out, &report.json).map(|_| report.violated)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: a property that must always hold was violated; see the report");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Invariant(_)) { 2 } else { 1 })
        }
    }
}
