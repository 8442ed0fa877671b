use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ngc::builtin::by_name;
use ngc::commutator::{
    bracket_coords, bracket_power, ideal_generated, n_gen_lie_closure, power_subgroup, BracketSpec,
};
use ngc::text::{format_element, parse_elements, parse_presentation};
use ngc::verifier::identities::IDENTITIES;
use ngc::verifier::{fuzz_identities, run_all, scenario_names, FuzzConfig, ScenarioResult, Status, VerifyConfig};
use ngc::{center, make_ring, Budget, Error, Int, Ring, Subgroup};

/// Exact generalized commutator calculus on finite-rank rings.
#[derive(Parser)]
#[command(name = "ngc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a ring presentation and check associativity and unity.
    Validate { file: String },
    /// Compute a subgroup or element in one ring.
    Compute(ComputeArgs),
    /// Run one scenario, or all scenarios and the identity fuzzer.
    Check {
        /// Scenario name, or `all`.
        #[arg(default_value = "all")]
        name: String,
        /// Write the JSON report to this path (`-` for standard output).
        #[arg(long)]
        json: Option<String>,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        /// Fuzzer samples per identity when running `all`.
        #[arg(long, default_value_t = VerifyConfig::default().fuzz_iterations)]
        iters: usize,
        /// Record elapsed milliseconds per scenario.
        #[arg(long)]
        timings: bool,
        /// Also run a deliberately false identity that must fail.
        #[arg(long)]
        self_test: bool,
    },
    /// Check the registered identities on seeded random samples.
    Fuzz {
        #[arg(long)]
        iters: usize,
        #[arg(long)]
        seed: u64,
        /// Builtin ring names (default: the standard ring set).
        #[arg(long = "ring")]
        rings: Vec<String>,
        /// Identity names (default: all valid identities).
        #[arg(long = "identity")]
        identities: Vec<String>,
        #[arg(long)]
        json: Option<String>,
    },
    /// List scenario names, identity names, and builtin ring families.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    /// `[a_1, ..., a_n]` of the given elements, or `[R, ..., R]_n` without elements.
    Bracket,
    /// Ideal generated by the elements (by `[R, R]` without elements).
    Ideal,
    /// Center of the ring.
    Center,
    /// Generalized Lie ideal closure of the elements at slot `pos + 1`.
    Closure,
    /// `R^n`.
    Power,
}

#[derive(clap::Args)]
struct ComputeArgs {
    /// `builtin:NAME` or a presentation file.
    #[arg(long)]
    ring: String,
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long)]
    n: Option<usize>,
    /// Number of ring slots before the subgroup slot, for `closure`.
    #[arg(long, default_value_t = 0)]
    pos: usize,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    beta: String,
    /// Comma-separated elements in label syntax, such as `2e12,e11+e22`.
    #[arg(long, allow_hyphen_values = true)]
    elems: Option<String>,
}

enum Failure {
    Usage(String),
    Math,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Budget from the default scaled by `NGC_BUDGET`, if set.
fn budget() -> Result<Budget, Failure> {
    match std::env::var("NGC_BUDGET") {
        Ok(v) => {
            let factor: u128 = v
                .trim()
                .parse()
                .ok()
                .filter(|f| *f > 0)
                .ok_or_else(|| Failure::Usage(format!("NGC_BUDGET must be a positive integer, got `{v}`")))?;
            Ok(Budget::default().scaled(factor))
        }
        Err(_) => Ok(Budget::default()),
    }
}

fn load_ring(spec: &str) -> Result<Ring, Failure> {
    let ring = match spec.strip_prefix("builtin:") {
        Some(name) => by_name(name)?,
        None => {
            let text = fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("cannot read {spec}: {e}")))?;
            make_ring(parse_presentation(&text)?)?
        }
    };
    Ok(ring.with_budget(budget()?))
}

fn print_subgroup(s: &Subgroup) {
    println!("rank {}", s.rank());
    if let Some(order) = s.order() {
        println!("order {order}");
    }
    for row in s.rows() {
        println!("{}", format_element(s.ring(), row));
    }
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let ring = load_ring(&args.ring)?;
    let elems = match &args.elems {
        Some(text) => parse_elements(&ring, text)?,
        None => Vec::new(),
    };
    let beta: Int = args
        .beta
        .parse()
        .map_err(|_| Failure::Usage(format!("bad beta `{}`", args.beta)))?;
    let need_n = || args.n.ok_or_else(|| Failure::Usage("--n is required for this operation".into()));
    match args.op {
        Op::Bracket if !elems.is_empty() => {
            if let Some(n) = args.n {
                if n != elems.len() {
                    return Err(Failure::Usage(format!("--n {n} but {} elements given", elems.len())));
                }
            }
            if elems.len() < 2 {
                return Err(Failure::Usage("a bracket needs at least two elements".into()));
            }
            BracketSpec::new(elems.len(), 0, beta.clone(), ring.modulus())?;
            println!("{}", format_element(&ring, &bracket_coords(&ring, &elems, &beta)));
        }
        Op::Bracket => {
            let n = need_n()?;
            BracketSpec::new(n, 0, beta.clone(), ring.modulus())?;
            print_subgroup(&bracket_power(&ring, n, &beta)?);
        }
        Op::Ideal => {
            let seed = if elems.is_empty() {
                bracket_power(&ring, 2, &Int::ONE)?
            } else {
                Subgroup::span(&ring, &elems)
            };
            print_subgroup(&ideal_generated(&ring, &seed)?);
        }
        Op::Center => print_subgroup(&center(&ring)),
        Op::Closure => {
            if elems.is_empty() {
                return Err(Failure::Usage("closure needs --elems".into()));
            }
            let spec = BracketSpec::new(need_n()?, args.pos, beta, ring.modulus())?;
            print_subgroup(&n_gen_lie_closure(&ring, &Subgroup::span(&ring, &elems), &spec)?);
        }
        Op::Power => {
            let n = need_n()?;
            if n == 0 {
                return Err(Failure::Usage("--n must be positive".into()));
            }
            print_subgroup(&power_subgroup(&ring, n)?);
        }
    }
    Ok(())
}

fn write_json(path: &str, json: &str) -> Result<(), Failure> {
    if path == "-" {
        println!("{json}");
        Ok(())
    } else {
        fs::write(Path::new(path), format!("{json}\n")).map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))
    }
}

fn print_failures(r: &ScenarioResult) {
    for a in r.failures() {
        eprintln!("{}: {} (expected {}, got {})", r.name, a.description, a.expected, a.got);
    }
    for w in &r.witnesses {
        eprintln!("  {} [{}]: {}", w.label, w.ring, w.elements.join(", "));
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            let ring = load_ring(&file)?;
            let unity = if ring.is_unital() { "unital" } else { "non-unital" };
            println!("ok: {} has rank {} over {} ({unity})", ring.name(), ring.dim(), ring.modulus());
            Ok(())
        }
        Command::Compute(args) => compute(&args),
        Command::Check {
            name,
            json,
            seed,
            iters,
            timings,
            self_test,
        } => {
            if iters == 0 {
                return Err(Failure::Usage("--iters must be positive".into()));
            }
            let all = name == "all";
            let config = VerifyConfig {
                seed,
                fuzz_iterations: iters,
                scenarios: (!all).then(|| vec![name.clone()]),
                include_fuzz: all,
                self_test,
                budget: budget()?,
                timings,
            };
            let report = run_all(&config)?;
            if json.as_deref() != Some("-") {
                print!("{}", report.table());
            }
            if let Some(path) = json {
                write_json(&path, &report.to_json())?;
            }
            for r in report.scenarios.iter().filter(|r| r.status == Status::Fail) {
                print_failures(r);
            }
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Math)
            }
        }
        Command::Fuzz {
            iters,
            seed,
            rings,
            identities,
            json,
        } => {
            let mut cfg = FuzzConfig::default_suite(seed, iters);
            if !rings.is_empty() {
                cfg.rings = rings;
            }
            if !identities.is_empty() {
                cfg.identities = identities;
            }
            let r = fuzz_identities(&cfg)?;
            if let Some(path) = &json {
                write_json(path, &r.to_json())?;
            }
            if json.as_deref() != Some("-") {
                for a in &r.assertions {
                    println!("{} {}", if a.ok { "pass" } else { "FAIL" }, a.description);
                }
            }
            if r.status == Status::Fail {
                print_failures(&r);
                Err(Failure::Math)
            } else {
                Ok(())
            }
        }
        Command::List => {
            println!("scenarios:");
            for n in scenario_names() {
                println!("  {n}");
            }
            println!("identities:");
            for i in IDENTITIES.iter().filter(|i| !i.corrupted) {
                println!("  {:<30} {}", i.name, i.statement);
            }
            println!("builtin rings:");
            for f in [
                "matrix{k}x{k}[scale{s}][mod{m}]",
                "upper{k}[mod{m}]",
                "strictupper{k}[mod{m}]",
                "idempotentspan{n}mod{p}",
                "niltrunc{k}x{K}mod{p}",
                "example4n{n}mod{p}",
                "example7m{k}",
                "zero{n}[mod{m}]",
                "A+B",
            ] {
                println!("  {f}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
