//! `fnp`: compute, enumerate and verify multivariate Fuss-Narayana polynomials.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.
//! Results go to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use fuss_narayana::freeprob::{
    convolution_moments_closed, psi_moments, quadrature_moments, ShapeVector,
};
use fuss_narayana::partitions::{
    build_word, count_adapted, enumerate_adapted, profile_histogram, render_svg, WordSpec,
    DEFAULT_BUDGET,
};
use fuss_narayana::scalar::{parse_scalar, to_f64};
use fuss_narayana::suites::{freeprob_suite, lemma_suite, oracle_suite, pk_by_method};
use fuss_narayana::{d_vars, t_vars, MultiPoly, VerificationReport};
use rmt_lab::{run_experiment, DimensionProfile, Ensemble, McConfig};

#[derive(Parser, Debug)]
#[command(
    name = "fnp",
    version,
    about = "Multivariate Fuss-Narayana polynomials"
)]
struct Cli {
    /// Print the parsed command to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moment polynomial P_k (or F_k with --vars t) as canonical JSON.
    #[command(group(ArgGroup::new("method").args(["closed", "enumerate", "series", "all_methods"])))]
    Poly {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        series: bool,
        /// Compute by all three methods and report whether they agree.
        #[arg(long)]
        all_methods: bool,
        #[arg(long, value_enum, default_value_t = Vars::D)]
        vars: Vars,
    },
    /// Noncrossing pair partitions adapted to W_shift^k.
    #[command(group(ArgGroup::new("mode").args(["count", "list", "profiles"])))]
    Enumerate {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        shift: usize,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        profiles: bool,
    },
    /// Run an identity suite; exit 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest p for the lemma suite.
        #[arg(short, default_value_t = 3)]
        p: usize,
        /// Largest order: k for the lemma suite (default 2), K for freeprob (default 6).
        #[arg(long)]
        k_max: Option<usize>,
        /// Enumeration budget on 2pk; overrides FN_BUDGET.
        #[arg(long)]
        pk_budget: Option<usize>,
    },
    /// Moments of the free multiplicative convolution of MP laws, as CSV.
    #[command(group(ArgGroup::new("route").args(["exact", "quadrature"])))]
    Moments {
        /// Shape parameters t_1,...,t_p (integers, decimals or a/b).
        #[arg(short, value_delimiter = ',', required = true)]
        t: Vec<String>,
        #[arg(short = 'K')]
        order: usize,
        #[arg(long)]
        exact: bool,
        /// Add quadrature estimates (single t only).
        #[arg(long)]
        quadrature: bool,
    },
    /// Monte Carlo trace moments of products of Gaussian matrices.
    Mc {
        /// Asymptotic dimensions d_0,...,d_p.
        #[arg(short, value_delimiter = ',', required = true)]
        d: Vec<f64>,
        #[arg(short)]
        n: usize,
        #[arg(short = 'K')]
        k_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Complex)]
        ensemble: EnsembleArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// SVG arch diagram of one adapted partition.
    Diagram {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        shift: usize,
        #[arg(long)]
        index: usize,
        /// Output file; stdout when absent.
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Vars {
    D,
    T,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Lemmas,
    Oracle,
    Freeprob,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnsembleArg {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<fuss_narayana::Error> for Failure {
    fn from(e: fuss_narayana::Error) -> Self {
        match e {
            fuss_narayana::Error::Quadrature { .. } | fuss_narayana::Error::NonIntegral(_) => {
                Failure::Verification(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<rmt_lab::Error> for Failure {
    fn from(e: rmt_lab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn budget(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("FN_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "FN_BUDGET must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn poly_json(poly: &MultiPoly, p: usize, vars: Vars) -> String {
    let (poly, names) = match vars {
        Vars::D => (poly.clone(), d_vars(p)),
        Vars::T => (poly.fix_var(0, &fuss_narayana::scalar::int(1)), t_vars(p)),
    };
    poly.to_json(&names).to_canonical_string()
}

fn cmd_poly(p: usize, k: usize, enumerate: bool, series: bool, all: bool, vars: Vars) -> Outcome {
    if p == 0 {
        return Err(Failure::Usage("p must be >= 1".into()));
    }
    let b = budget(None)?;
    if all {
        let mut fields = Vec::new();
        let mut polys = Vec::new();
        for method in ["closed", "enumerate", "series"] {
            let poly = pk_by_method(method, p, k, b)?;
            fields.push(format!("\"{method}\":{}", poly_json(&poly, p, vars)));
            polys.push(poly);
        }
        let agree = polys.windows(2).all(|w| w[0] == w[1]);
        return Ok(format!("{{\"agree\":{agree},{}}}\n", fields.join(",")));
    }
    let method = if enumerate {
        "enumerate"
    } else if series {
        "series"
    } else {
        "closed"
    };
    let poly = pk_by_method(method, p, k, b)?;
    Ok(poly_json(&poly, p, vars) + "\n")
}

fn cmd_enumerate(p: usize, k: usize, shift: usize, list: bool, profiles: bool) -> Outcome {
    let spec = WordSpec::new(p, shift, k)?;
    let b = budget(None)?;
    if list {
        count_adapted(&spec, b)?;
        let mut out = String::new();
        for pi in enumerate_adapted(&spec) {
            let _ = writeln!(out, "{pi}");
        }
        return Ok(out);
    }
    if profiles {
        let hist = profile_histogram(&spec, b)?;
        let body: Vec<String> = hist
            .iter()
            .map(|(j, c)| {
                let key = format!(
                    "({})",
                    j.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                );
                format!("{}:{c}", serde_json::to_string(&key).expect("json"))
            })
            .collect();
        return Ok(format!("{{{}}}\n", body.join(",")));
    }
    Ok(format!("{}\n", count_adapted(&spec, b)?))
}

fn report_outcome(report: VerificationReport) -> Outcome {
    let mut v = serde_json::to_value(&report).expect("report serializes");
    v["passed"] = report.passed().into();
    let text = serde_json::to_string_pretty(&v).expect("json") + "\n";
    if report.passed() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Verification(format!(
            "{} of {} checks failed in suite {}",
            report.mismatches.len(),
            report.checks,
            report.suite
        )))
    }
}

fn cmd_verify(suite: Suite, p: usize, k_max: Option<usize>, pk_budget: Option<usize>) -> Outcome {
    let b = budget(pk_budget)?;
    let report = match suite {
        Suite::Oracle => oracle_suite(b)?,
        Suite::Lemmas => lemma_suite(p, k_max.unwrap_or(2), b)?,
        Suite::Freeprob => freeprob_suite(k_max.unwrap_or(6))?,
    };
    report_outcome(report)
}

fn cmd_moments(t: &[String], order: usize, quadrature: bool) -> Outcome {
    let ts = ShapeVector::new(
        t.iter()
            .map(|s| parse_scalar(s))
            .collect::<Result<_, _>>()?,
    )?;
    if quadrature {
        if ts.p() != 1 {
            return Err(Failure::Usage(format!(
                "--quadrature needs a single t, got {} values",
                ts.p()
            )));
        }
        let table = convolution_moments_closed(&ts, order)?;
        let numeric = quadrature_moments(to_f64(&ts.entries()[0]), order)?;
        return Ok(table.to_csv(Some(&numeric)));
    }
    let table = psi_moments(&ts, order)?;
    Ok(table.to_csv(None))
}

#[allow(clippy::too_many_arguments)]
fn cmd_mc(
    d: &[f64],
    n: usize,
    k_max: usize,
    trials: usize,
    seed: u64,
    ensemble: EnsembleArg,
    format: Format,
) -> Outcome {
    let ensemble = match ensemble {
        EnsembleArg::Real => Ensemble::Real,
        EnsembleArg::Complex => Ensemble::Complex,
    };
    let cfg = McConfig::new(DimensionProfile::new(d.to_vec(), n)?, k_max, trials, seed)?
        .with_ensemble(ensemble);
    let res = run_experiment(&cfg)?;
    Ok(match format {
        Format::Json => res.to_json() + "\n",
        Format::Csv => res.to_csv(),
    })
}

fn cmd_diagram(
    p: usize,
    k: usize,
    shift: usize,
    index: usize,
    svg: Option<&std::path::Path>,
) -> Outcome {
    let spec = WordSpec::new(p, shift, k)?;
    count_adapted(&spec, budget(None)?)?;
    let all = enumerate_adapted(&spec);
    let pi = all.get(index).ok_or_else(|| {
        Failure::Usage(format!(
            "index {index} out of range: {} partitions",
            all.len()
        ))
    })?;
    let doc = render_svg(pi, &build_word(&spec));
    match svg {
        Some(path) => {
            std::fs::write(path, &doc)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {} ({pi})", path.display());
            Ok(String::new())
        }
        None => Ok(doc),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Poly {
            p,
            k,
            closed: _,
            enumerate,
            series,
            all_methods,
            vars,
        } => cmd_poly(p, k, enumerate, series, all_methods, vars),
        Command::Enumerate {
            p,
            k,
            shift,
            count: _,
            list,
            profiles,
        } => cmd_enumerate(p, k, shift, list, profiles),
        Command::Verify {
            suite,
            p,
            k_max,
            pk_budget,
        } => cmd_verify(suite, p, k_max, pk_budget),
        Command::Moments {
            t,
            order,
            exact: _,
            quadrature,
        } => cmd_moments(&t, order, quadrature),
        Command::Mc {
            d,
            n,
            k_max,
            trials,
            seed,
            ensemble,
            format,
        } => cmd_mc(&d, n, k_max, trials, seed, ensemble, format),
        Command::Diagram {
            p,
            k,
            shift,
            index,
            svg,
        } => cmd_diagram(p, k, shift, index, svg.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.verbose {
        eprintln!("{:?}", cli.command);
    }
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
