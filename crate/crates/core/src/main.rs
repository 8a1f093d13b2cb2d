use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bei::bounds::{betti_lower_bounds_with, recognize, reg_bounds_with, SearchOptions};
use bei::closedforms::closed_betti;
use bei::corpus::DEFAULT_SEED;
use bei::hilbert::{closed_hilbert, hilbert_from_gb, HilbertSeries};
use bei::koszul::{betti_table_partial, OracleOptions, DEFAULT_BUDGET};
use bei::polyring::{edge_ideal_basis, ALT_PRIME, DEFAULT_PRIME};
use bei::primes::{krull_dim, minimal_primes};
use bei::table::BettiTable;
use bei::verify::{self, VerifyOptions};
use bei::{Error, FamilySpec, Graph};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "bei", version, about = "Binomial edge ideals: Betti tables, Hilbert series, minimal primes, regularity bounds")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded Betti table of S/J_G.
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "oracle")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        /// Largest homological degree shown.
        #[arg(long)]
        max_i: Option<usize>,
        /// Largest row shown.
        #[arg(long)]
        max_j: Option<usize>,
        /// Largest estimated number of nonzeros per Koszul strand.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Hilbert series of S/J_G.
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "reduced")]
        form: Form,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
    },
    /// Minimal primes, one per cut-set.
    Primes {
        #[command(flatten)]
        input: Input,
    },
    /// Regularity bounds and Betti lower bounds from induced subgraphs.
    Bounds {
        #[command(flatten)]
        input: Input,
        /// Largest n searched exhaustively; above it a random search runs.
        #[arg(long, default_value_t = bei::bounds::DEFAULT_SEARCH_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Runs the verification criteria and prints a per-check ledger.
    Verify {
        /// Comma-separated families swept: cycle, t3, g3.
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        /// Vertex range such as "3..5" or "4".
        #[arg(long)]
        n: Option<String>,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        /// Second characteristic for the two-prime comparison.
        #[arg(long, default_value_t = ALT_PRIME)]
        alt_prime: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file: {"n": 4, "edges": [[1,2],[2,3]]}.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Line,
    Cycle,
    Complete,
    T3,
    G3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Formula,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Raw,
    Reduced,
    Closed,
}

struct Loaded {
    graph: Graph,
    /// The family, given on the command line or recognised from the file.
    spec: Option<FamilySpec>,
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Error> {
    v.ok_or_else(|| Error::Invalid(format!("--{flag} is required for this family")))
}

impl Input {
    fn load(&self) -> Result<Loaded, Error> {
        if let Some(path) = &self.graph {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let graph = Graph::from_json_str(&text)?;
            let spec = recognize(&graph);
            return Ok(Loaded { graph, spec });
        }
        let spec = match self.family {
            None => return Err(Error::Invalid("give --graph FILE or --family".into())),
            Some(Family::Line) => FamilySpec::Line { n: need(self.n, "n")? },
            Some(Family::Cycle) => FamilySpec::Cycle { n: need(self.n, "n")? },
            Some(Family::Complete) => FamilySpec::Complete { n: need(self.n, "n")? },
            Some(Family::T3) => FamilySpec::T3 {
                r: need(self.r, "r")?,
                s: need(self.s, "s")?,
                t: need(self.t, "t")?,
            },
            Some(Family::G3) => FamilySpec::G3 {
                r: need(self.r, "r")?,
                s: need(self.s, "s")?,
                t: need(self.t, "t")?,
            },
        };
        Ok(Loaded {
            graph: spec.build()?,
            spec: Some(spec),
        })
    }
}

fn window(t: &BettiTable, max_i: Option<usize>, max_j: Option<usize>) -> BettiTable {
    let keep = |i: usize, j: usize| max_i.is_none_or(|m| i <= m) && max_j.is_none_or(|m| j <= m);
    BettiTable::from_entries(t.n_vars(), t.entries().filter(|&((i, j), _)| keep(i, j)).map(|((i, j), b)| (i, j, b)))
}

fn no_formula(loaded: &Loaded) -> Error {
    Error::Unsupported(format!(
        "no closed form for the graph with edges {:?}; formulas cover lines, complete graphs, cycles, T3 and G3",
        loaded.graph.edges()
    ))
}

fn graph_label(loaded: &Loaded) -> String {
    match loaded.spec {
        Some(s) => s.to_string(),
        None => format!("graph on {} vertices", loaded.graph.n()),
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialise"));
}

fn cmd_betti(
    input: &Input,
    method: Method,
    prime: u32,
    max_i: Option<usize>,
    max_j: Option<usize>,
    budget: u128,
    as_json: bool,
) -> Result<u8, Error> {
    let loaded = input.load()?;
    let oracle = if method != Method::Formula {
        let basis = edge_ideal_basis(&loaded.graph, prime)?;
        let opts = OracleOptions {
            max_i,
            max_j,
            budget,
            ..OracleOptions::default()
        };
        Some(betti_table_partial(&basis, &opts)?)
    } else {
        None
    };
    let formula = if method != Method::Oracle {
        let spec = loaded.spec.ok_or_else(|| no_formula(&loaded))?;
        Some(window(&closed_betti(&spec)?, max_i, max_j))
    } else {
        None
    };
    let gaps = oracle.as_ref().is_some_and(|t| !t.is_complete());
    let diff = match (&oracle, &formula) {
        (Some(o), Some(f)) => {
            let known = |i: usize, j: usize| !o.gaps().contains(&(i, j));
            Some(o.diff(f).into_iter().filter(|&(i, j, _, _)| known(i, j)).collect::<Vec<_>>())
        }
        _ => None,
    };
    if as_json {
        let mut v = json!({ "graph": graph_label(&loaded), "prime": prime });
        if let Some(o) = &oracle {
            v["oracle"] = o.to_json();
        }
        if let Some(f) = &formula {
            v["formula"] = f.to_json();
        }
        if let Some(d) = &diff {
            v["match"] = json!(d.is_empty());
            v["diff"] = json!(d.iter().map(|&(i, j, a, b)| json!({"i": i, "j": j, "oracle": a, "formula": b})).collect::<Vec<_>>());
        }
        print_json(&v);
    } else {
        println!("{}", graph_label(&loaded));
        if let Some(o) = &oracle {
            println!("oracle over GF({prime}):\n{o}");
            if gaps {
                println!("? marks cells over the budget of {budget} nonzeros");
            }
        }
        if let Some(f) = &formula {
            println!("closed form:\n{f}");
        }
        if let Some(d) = &diff {
            if d.is_empty() {
                println!("match");
            } else {
                for (i, j, a, b) in d {
                    println!("mismatch at ({i},{j}): oracle {a}, formula {b}");
                }
            }
        }
    }
    Ok(if diff.as_ref().is_some_and(|d| !d.is_empty()) {
        EXIT_MISMATCH
    } else if gaps {
        EXIT_BUDGET
    } else {
        0
    })
}

fn cmd_hilbert(input: &Input, form: Form, prime: u32, as_json: bool) -> Result<u8, Error> {
    let loaded = input.load()?;
    let series: HilbertSeries = match form {
        Form::Raw => hilbert_from_gb(&edge_ideal_basis(&loaded.graph, prime)?),
        Form::Reduced => hilbert_from_gb(&edge_ideal_basis(&loaded.graph, prime)?).reduce(),
        Form::Closed => closed_hilbert(&loaded.spec.ok_or_else(|| no_formula(&loaded))?)?,
    };
    if as_json {
        print_json(&series.to_json());
    } else {
        println!("{series}");
    }
    Ok(0)
}

fn cmd_primes(input: &Input, as_json: bool) -> Result<u8, Error> {
    let loaded = input.load()?;
    let primes = minimal_primes(&loaded.graph)?;
    let dim = krull_dim(&loaded.graph)?;
    if as_json {
        print_json(&json!({ "primes": primes, "dim": dim }));
    } else {
        println!("{}: {} minimal primes, dim S/J_G = {dim}", graph_label(&loaded), primes.len());
        for p in &primes {
            let comps: Vec<String> = p.components.iter().map(ToString::to_string).collect();
            println!("  T = {:<12} height {:<3} components {}", p.cut_set.to_string(), p.height, comps.join(" "));
        }
    }
    Ok(0)
}

fn cmd_bounds(input: &Input, cap: usize, seed: u64, as_json: bool) -> Result<u8, Error> {
    let loaded = input.load()?;
    let opts = SearchOptions {
        cap,
        seed,
        ..SearchOptions::default()
    };
    let bounds = reg_bounds_with(&loaded.graph, &opts);
    let betti = betti_lower_bounds_with(&loaded.graph, &opts);
    if as_json {
        let mut v = bounds.to_json();
        v["bettiLowerBounds"] = betti.to_json();
        print_json(&v);
    } else {
        print!("{bounds}");
        println!("Betti lower bounds:\n{betti}");
    }
    Ok(0)
}

fn parse_range(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Invalid(format!("vertex range {s:?}: expected \"a..b\" or \"a\""));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_verify(
    families: Option<&[String]>,
    n: Option<&str>,
    primes: [u32; 2],
    budget: u128,
    seed: u64,
    as_json: bool,
) -> Result<u8, Error> {
    let mut opts = VerifyOptions::acceptance(seed);
    if families.is_some() || n.is_some() {
        let kinds: Vec<&str> = match families {
            Some(f) => f.iter().map(|s| s.trim()).collect(),
            None => vec!["cycle", "t3", "g3"],
        };
        let (lo, hi) = match n {
            Some(r) => parse_range(r)?,
            None => (3, 5),
        };
        opts.members = verify::sweep_members(&kinds, lo, hi)?;
    }
    for p in primes {
        bei::polyring::PrimeField::new(p)?;
    }
    opts.primes = primes;
    opts.budget = budget;
    let report = verify::run(&opts)?;
    if as_json {
        print_json(&report.to_json());
    } else {
        print!("{}", report.ledger());
        println!();
        for line in report.summary() {
            println!("{line}");
        }
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Error> {
    let as_json = cli.json;
    match cli.command {
        Command::Betti {
            input,
            method,
            prime,
            max_i,
            max_j,
            budget,
        } => cmd_betti(&input, method, prime, max_i, max_j, budget, as_json),
        Command::Hilbert { input, form, prime } => cmd_hilbert(&input, form, prime, as_json),
        Command::Primes { input } => cmd_primes(&input, as_json),
        Command::Bounds { input, cap, seed } => cmd_bounds(&input, cap, seed, as_json),
        Command::Verify {
            families,
            n,
            prime,
            alt_prime,
            budget,
            seed,
        } => cmd_verify(families.as_deref(), n.as_deref(), [prime, alt_prime], budget, seed, as_json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::OutOfBudget { .. } => EXIT_BUDGET,
                _ => EXIT_INVALID,
            })
        }
    }
}
