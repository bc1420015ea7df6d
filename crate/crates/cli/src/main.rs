use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use paritynet::bench::{format_summary, run_bench, summarize, write_csv, BenchConfig, Execution, Point};
use paritynet::problems::{gen_caveman_graph, gen_coloring_polynomial, gen_full, gen_random};
use paritynet::qasm::{from_qasm, to_qasm};
use paritynet::verify::{
    circuit_diagonal, compare_diagonals, diagonal_distance, extract_phase_polynomial, oracle_diagonal,
    MAX_ORACLE_QUBITS,
};
use paritynet::{synthesize_diagonal, Method, PhasePolynomial, ReturnMethod, SynthOptions};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "paritynet",
    version,
    about = "Diagonal Hamiltonian simulation with few CNOTs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark instance as a .pn file.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Synthesize a CNOT+RZ circuit for exp(i*gamma*H).
    Synth(SynthArgs),
    /// Sweep a problem family and write per-instance counts as CSV.
    Bench(BenchArgs),
    /// Check a circuit against the polynomial it should implement.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GenFamily {
    /// Uniformly random distinct parities with coefficients in [-pi, pi).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every parity of weight 1..=k with unit coefficient.
    Full {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coloring penalty on a connected caveman graph.
    Caveman {
        #[arg(long)]
        cliques: usize,
        #[arg(long)]
        clique_size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SynthArgs {
    input: PathBuf,
    #[arg(long, default_value = "greedy")]
    method: Method,
    #[arg(long, default_value = "greedy_elim")]
    return_method: ReturnMethod,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Append swaps so the circuit ends in the identity wire order.
    #[arg(long)]
    force_identity: bool,
    /// QASM destination; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the synthesis report as one JSON line.
    #[arg(long)]
    stats: bool,
    /// Report runtime_ms as 0 so the report is reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct BenchArgs {
    family: paritynet::bench::Family,
    /// Variable counts (random, full), e.g. `4..8` or `4,6,8`.
    #[arg(long)]
    n: Option<String>,
    /// Maximum order (full).
    #[arg(long)]
    k: Option<String>,
    /// Term counts (random).
    #[arg(long, default_value = "100")]
    terms: String,
    /// Clique counts (caveman).
    #[arg(long)]
    cliques: Option<String>,
    /// Clique sizes (caveman).
    #[arg(long)]
    clique_size: Option<String>,
    #[arg(long, default_value_t = 30)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "greedy,graysynth,ladder")]
    methods: Vec<Method>,
    #[arg(long, default_value = "greedy_elim")]
    return_method: ReturnMethod,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write 0 for runtime_ms so reruns give identical CSV bytes.
    #[arg(long)]
    no_timing: bool,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct VerifyArgs {
    poly: PathBuf,
    circuit: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Also compare full diagonals (n <= 12).
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen { family } => cmd_gen(family).map(|()| true),
        Command::Synth(args) => cmd_synth(args).map(|()| true),
        Command::Bench(args) => cmd_bench(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn read_pn(path: &Path) -> Result<PhasePolynomial> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    PhasePolynomial::from_pn(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_gen(family: GenFamily) -> Result<()> {
    let (poly, params, out) = match family {
        GenFamily::Random { n, terms, seed, out } => (
            gen_random(n, terms, seed)?,
            format!("family=random n={n} terms={terms} seed={seed}"),
            out,
        ),
        GenFamily::Full { n, k, out } => (gen_full(n, k)?, format!("family=full n={n} k={k} seed=none"), out),
        GenFamily::Caveman {
            cliques,
            clique_size,
            out,
        } => {
            let g = gen_caveman_graph(cliques, clique_size)?;
            (
                gen_coloring_polynomial(&g)?,
                format!("family=caveman cliques={cliques} clique_size={clique_size} seed=none"),
                out,
            )
        }
    };
    let header = [params, format!("paritynet {VERSION}")];
    emit(out.as_deref(), &poly.to_pn(&header))
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    let poly = read_pn(&args.input)?;
    let opts = SynthOptions {
        method: args.method,
        return_method: args.return_method,
        force_identity: args.force_identity,
    };
    let report = synthesize_diagonal(&poly, args.gamma, opts)?;
    emit(args.out.as_deref(), &to_qasm(&report.circuit))?;
    if args.stats {
        let line = json!({
            "n": poly.n(),
            "term_count": poly.len(),
            "method": args.method.name(),
            "return_method": args.return_method.name(),
            "cnot_count": report.cnot_count,
            "network_cnots": report.network_cnots,
            "return_cnots": report.return_cnots,
            "rz_count": report.rz_count,
            "output_permutation": report.circuit.output_permutation,
            "runtime_ms": if args.no_timing { 0.0 } else { report.runtime_ms },
        });
        // Keep stdout clean for the circuit when no output file was given.
        if args.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(())
}

/// `4`, `4..8` (inclusive) or `4,6,8`.
fn parse_range(flag: &str, s: &str) -> Result<Vec<usize>> {
    let parse = |v: &str| -> Result<usize> { v.trim().parse().with_context(|| format!("--{flag}: bad value {v:?}")) };
    let values: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
        if a > b {
            bail!("--{flag}: empty range {s:?}");
        }
        (a..=b).collect()
    } else {
        s.split(',').map(parse).collect::<Result<_>>()?
    };
    if values.is_empty() {
        bail!("--{flag}: no values");
    }
    Ok(values)
}

fn required(flag: &str, v: &Option<String>) -> Result<Vec<usize>> {
    match v {
        Some(s) => parse_range(flag, s),
        None => bail!("--{flag} is required for this family"),
    }
}

fn bench_points(args: &BenchArgs) -> Result<Vec<Point>> {
    use paritynet::bench::Family;
    let mut points = Vec::new();
    match args.family {
        Family::Random => {
            let terms = parse_range("terms", &args.terms)?;
            for n in required("n", &args.n)? {
                for &t in &terms {
                    points.push(Point::Random { n, terms: t });
                }
            }
        }
        Family::Full => {
            let ks = required("k", &args.k)?;
            for n in required("n", &args.n)? {
                for &k in ks.iter().filter(|&&k| k <= n) {
                    points.push(Point::Full { n, k });
                }
            }
        }
        Family::Caveman => {
            let sizes = required("clique-size", &args.clique_size)?;
            for cliques in required("cliques", &args.cliques)? {
                for &clique_size in &sizes {
                    points.push(Point::Caveman { cliques, clique_size });
                }
            }
        }
    }
    if points.is_empty() {
        bail!("no parameter points in range");
    }
    Ok(points)
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    if args.samples == 0 {
        bail!("--samples must be at least 1");
    }
    if args.methods.is_empty() {
        bail!("--methods needs at least one method");
    }
    let mut cfg = BenchConfig::new(bench_points(&args)?);
    cfg.samples = args.samples;
    cfg.seed = args.seed;
    cfg.methods = args.methods.clone();
    cfg.return_method = args.return_method;
    cfg.gamma = args.gamma;
    cfg.record_timing = !args.no_timing;
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let run = run_bench(&cfg, exec)?;
    if let Some(path) = &args.csv {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_csv(&run.records, io::BufWriter::new(file))?;
    }
    print!("{}", format_summary(&summarize(&run)));
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let poly = read_pn(&args.poly)?;
    let text = fs::read_to_string(&args.circuit).with_context(|| format!("reading {}", args.circuit.display()))?;
    let circuit = from_qasm(&text).with_context(|| format!("parsing {}", args.circuit.display()))?;
    if circuit.n != poly.n() {
        bail!(
            "circuit has {} qubits but the polynomial has {} variables",
            circuit.n,
            poly.n()
        );
    }
    if args.oracle && poly.n() > MAX_ORACLE_QUBITS {
        bail!("--oracle supports at most {MAX_ORACLE_QUBITS} qubits, got {}", poly.n());
    }

    let mut ok = true;
    let ex = extract_phase_polynomial(&circuit, args.gamma)?;
    match ex.final_state.as_permutation() {
        None => {
            ok = false;
            println!("FAIL final state: not a permutation");
            for (w, row) in ex.final_state.rows().iter().enumerate() {
                println!("  wire {w}: {row}");
            }
        }
        Some(_) if !ex.final_state_matches(&circuit) => {
            ok = false;
            println!(
                "FAIL final state: permutation {:?} does not match declared {:?}",
                ex.final_state.as_permutation().unwrap_or_default(),
                circuit.output_permutation
            );
        }
        Some(p) => println!("ok   final state: permutation {p:?}"),
    }

    let diff = ex.extracted.max_coefficient_diff(&poly);
    if diff <= args.tol {
        println!("ok   coefficients: {} terms, max deviation {diff:.3e}", poly.len());
    } else {
        ok = false;
        println!("FAIL coefficients: max deviation {diff:.3e} exceeds {:.1e}", args.tol);
        let mut shown = 0;
        let support: std::collections::BTreeSet<_> = poly.parities().chain(ex.extracted.parities()).collect();
        for p in support {
            let (want, got) = (poly.coefficient(p), ex.extracted.coefficient(p));
            if (want - got).abs() > args.tol && shown < 10 {
                println!("  {p}: expected {want:?}, circuit has {got:?}");
                shown += 1;
            }
        }
    }

    if args.oracle {
        let want = oracle_diagonal(&poly, args.gamma)?;
        match circuit_diagonal(&circuit) {
            Ok(got) => {
                let dist = diagonal_distance(&want, &got);
                if compare_diagonals(&want, &got, args.tol) {
                    println!("ok   oracle: diagonal distance {dist:.3e}");
                } else {
                    ok = false;
                    println!("FAIL oracle: diagonal distance {dist:.3e} exceeds {:.1e}", args.tol);
                }
            }
            Err(e) => {
                ok = false;
                println!("FAIL oracle: {e}");
            }
        }
    }
    println!("{}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}
