use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use coulomb_core::gauge::{parse_spec, FlavorCoweight, Preset, ResolvedSpec};
use coulomb_core::klein::{character_from_semiinvariants, DominantGLWeight};
use coulomb_core::monopole::{klein_costalk_character, monopole_series_with, MonopoleOptions, DEFAULT_MAX_RADIUS};
use coulomb_core::ring::expr::ExprContext;
use coulomb_core::ring::two_node::TwoNode;
use coulomb_core::ring::AbelianRing;
use coulomb_core::suites::{parse_range, run_suite, Suite, SuiteParams};
use coulomb_core::{Error, TruncatedSeries};

const EXIT_SUITE_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(name = "coulomb", version, about = "Exact Coulomb-branch characters, rings and checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Monopole-formula Hilbert series of a theory.
    Hilbert {
        /// Preset (`sqed:2`, `jordan:3`, `two-node:1,2`, `trivial`) or inline JSON.
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 16)]
        order: u32,
        /// Keep the topological grading (`x` per gauge factor).
        #[arg(long)]
        graded: bool,
        /// Flavor coweight, comma separated; `0` is the zero vector.
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
    },
    /// Character of a flavored costalk.
    Costalk {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 16)]
        order: u32,
        #[arg(long)]
        graded: bool,
        /// Flavor coweight for the monopole sum.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "lambda")]
        kappa: Option<String>,
        /// Dominant weight for the closed generator sum of an `sqed:N` preset.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// With `--lambda`, omit the classical factor.
        #[arg(long, requires = "lambda")]
        generators: bool,
    },
    /// Character of the semi-invariant section module of the Kleinian surface.
    KleinChar {
        /// Rank N of the cyclic group.
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 16)]
        order: u32,
    },
    /// Evaluates a product expression in an abelian Coulomb-branch ring.
    Ring {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        expr: String,
        /// Keep flavor parameters as variables `f_1, f_2, …`.
        #[arg(long)]
        flavor_formal: bool,
    },
    /// Runs a named verification suite.
    Verify {
        /// One of monopole-hilbert, sn-coincidence, klein-multiplicity,
        /// klein-surjectivity, klein-iso, ring-computation, ring-rmn, sl3-example.
        #[arg(long)]
        suite: String,
        /// Truncation order.
        #[arg(long)]
        order: Option<u32>,
        /// Flavor weights l of jordan:2, as `a..b` or a single integer.
        #[arg(long, allow_hyphen_values = true)]
        l: Option<String>,
        /// Range of ranks N for the Kleinian and sqed suites.
        #[arg(long, allow_hyphen_values = true)]
        rank: Option<String>,
        #[arg(long)]
        lambda_max: Option<i64>,
        /// Node widths for the ring suites.
        #[arg(long, allow_hyphen_values = true)]
        wj: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        wi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        /// Print every case, not only failures.
        #[arg(long)]
        verbose: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonConvergence { .. } | Error::NegativeExponent { .. } | Error::NonConvergentGeometric => {
            EXIT_CONVERGENCE
        }
        _ => EXIT_USAGE,
    }
}

fn monopole_options() -> Result<MonopoleOptions, Error> {
    match std::env::var("COULOMB_MAX_RADIUS") {
        Ok(v) => {
            let max_radius: i64 = v
                .trim()
                .parse()
                .ok()
                .filter(|&r| r >= 1)
                .ok_or_else(|| Error::Parse(format!("COULOMB_MAX_RADIUS must be a positive integer, got {v:?}")))?;
            Ok(MonopoleOptions { max_radius })
        }
        Err(_) => Ok(MonopoleOptions {
            max_radius: DEFAULT_MAX_RADIUS,
        }),
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Parse(format!("expected comma separated integers, got {s:?}")))
}

fn parse_kappa(s: Option<&str>, rank: usize) -> Result<FlavorCoweight, Error> {
    let Some(s) = s else {
        return Ok(FlavorCoweight::zero(rank));
    };
    let entries = parse_ints(s)?;
    if entries == [0] {
        return Ok(FlavorCoweight::zero(rank));
    }
    if entries.len() != rank {
        return Err(Error::Shape(format!("kappa has {} entries, theory has flavor rank {rank}", entries.len())));
    }
    Ok(FlavorCoweight::new(entries))
}

fn range(s: &Option<String>) -> Result<Option<std::ops::RangeInclusive<i64>>, Error> {
    s.as_deref().map(parse_range).transpose()
}

fn print_series(series: &TruncatedSeries, format: Format) {
    match format {
        Format::Text => println!("{series}"),
        Format::Json => println!("{}", serde_json::to_string(&series.to_json()).expect("serializable")),
    }
}

fn monopole(spec: &ResolvedSpec, kappa: Option<&str>, order: u32, graded: bool) -> Result<TruncatedSeries, Error> {
    let kappa = parse_kappa(kappa, spec.theory.flavor_rank)?;
    Ok(monopole_series_with(&spec.theory, &kappa, order, graded, &monopole_options()?)?.series)
}

fn run(cli: Cli) -> Result<u8, Error> {
    let format = cli.format;
    match cli.command {
        Command::Hilbert {
            spec,
            order,
            graded,
            kappa,
        } => {
            check_order(order)?;
            let spec = parse_spec(&spec)?;
            print_series(&monopole(&spec, kappa.as_deref(), order, graded)?, format);
        }
        Command::Costalk {
            spec,
            order,
            graded,
            kappa,
            lambda,
            generators,
        } => {
            check_order(order)?;
            let spec = parse_spec(&spec)?;
            let series = match lambda {
                Some(lambda) => {
                    let Some(Preset::Sqed(n)) = spec.preset else {
                        return Err(Error::Unsupported("--lambda needs an sqed:N preset".into()));
                    };
                    klein_costalk_character(n, &parse_ints(&lambda)?, order, !generators)?
                }
                None => monopole(&spec, kappa.as_deref(), order, graded)?,
            };
            print_series(&series, format);
        }
        Command::KleinChar { rank, lambda, order } => {
            check_order(order)?;
            let lambda = DominantGLWeight::new(parse_ints(&lambda)?)?;
            if lambda.n() != rank {
                return Err(Error::Shape(format!("lambda needs {rank} entries")));
            }
            print_series(&character_from_semiinvariants(&lambda, order)?, format);
        }
        Command::Ring {
            spec,
            expr,
            flavor_formal,
        } => {
            let spec = parse_spec(&spec)?;
            let ctx = match spec.preset {
                Some(Preset::TwoNode { wj, wi }) => ExprContext::two_node(TwoNode::with_flavor(wj, wi, flavor_formal)?),
                _ => ExprContext::new(Arc::new(AbelianRing::new(spec.theory, flavor_formal)?)),
            };
            let element = ctx.parse(&expr)?;
            match format {
                Format::Text => println!("{element}"),
                Format::Json => println!("{}", serde_json::to_string(&element.to_json()).expect("serializable")),
            }
        }
        Command::Verify {
            suite,
            order,
            l,
            rank,
            lambda_max,
            wj,
            wi,
            alpha,
            m,
            n,
            verbose,
        } => {
            let suite: Suite = suite.parse()?;
            if let Some(order) = order {
                check_order(order)?;
            }
            let params = SuiteParams {
                order,
                l: range(&l)?,
                rank: range(&rank)?,
                lambda_max,
                wj: range(&wj)?,
                wi: range(&wi)?,
                alpha: range(&alpha)?,
                m: range(&m)?,
                n: range(&n)?,
                monopole: monopole_options()?,
            };
            let report = run_suite(suite, &params)?;
            match format {
                Format::Json => {
                    let value = json!({
                        "suite": report.suite,
                        "passed": report.passed(),
                        "cases": report.cases,
                    });
                    println!("{}", serde_json::to_string(&value).expect("serializable"));
                }
                Format::Text if verbose => println!("{report}"),
                Format::Text => {
                    for c in report.failures() {
                        println!("FAIL {}\n     expected: {}\n     actual:   {}", c.id, c.expected, c.actual);
                    }
                    println!("{} ({:.2?})", report.summary(), report.wall_time);
                }
            }
            if !report.passed() {
                return Ok(EXIT_SUITE_FAILURE);
            }
        }
    }
    Ok(0)
}

fn check_order(order: u32) -> Result<(), Error> {
    if order == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
