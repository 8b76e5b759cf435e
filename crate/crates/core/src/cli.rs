//! Command-line front end. Machine-readable output goes to stdout,
//! diagnostics to stderr.
//!
//! Exit codes: 0 success/PASS, 1 FAIL or NOT FOUND, 2 usage or input error,
//! 3 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coloring::{
    color_exact, color_heuristic, compose_coloring, verify_coloring, ColoringError, ExactBudget,
};
use crate::formats::{
    parse_certificate, parse_coloring, parse_partition, render_certificate, render_coloring,
    render_odd_certificate, render_partition, render_quotient, AnyCertificate,
};
use crate::graph::generate::{generate, GraphSpec};
use crate::graph::io::{parse_graph, render_graph, Format};
use crate::graph::Graph;
use crate::lifting::{lift_expansion, reduction_report, Budgets, ReductionError};
use crate::minors::{
    find_expansion, find_odd_expansion, verify_expansion, verify_odd_expansion, MinorError,
    SearchBudget,
};
use crate::partition::{compute_partition, verify_partition};
use crate::quotient::{build_quotient, contraction_check, QuotientGraph};
use crate::report::VerificationReport;

#[derive(Debug, Parser)]
#[command(name = "oddminor", version, about = "Bipartite-connected partitions, quotient colorings and odd K_t-expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a generated graph.
    Gen {
        /// complete T | cycle N | complete-bipartite A B | gnp N P | petersen
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::EdgeList)]
        format: OutFormat,
    },
    /// Compute the bipartite-connected partition and verify it.
    Partition(InputArgs),
    /// Contract the partition into the quotient graph with witness triples.
    Quotient(InputArgs),
    /// Color the graph.
    Color {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for a K_t-expansion.
    FindMinor {
        #[command(flatten)]
        input: InputArgs,
        #[arg(short)]
        t: usize,
        /// Search the quotient graph of the input instead of the input.
        #[arg(long)]
        quotient: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for an odd K_t-expansion.
    FindOddMinor {
        #[command(flatten)]
        input: InputArgs,
        #[arg(short)]
        t: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a certificate, partition or coloring against the graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, group = "artifact")]
        cert: Option<PathBuf>,
        #[arg(long, group = "artifact")]
        partition: Option<PathBuf>,
        #[arg(long, group = "artifact")]
        coloring: Option<PathBuf>,
    },
    /// Lift a K_t-expansion of the quotient to an odd K_t-expansion of the graph.
    Lift {
        #[command(flatten)]
        input: InputArgs,
        /// Certificate on the quotient graph.
        #[arg(long, conflicts_with = "t", required_unless_present = "t")]
        cert: Option<PathBuf>,
        /// Find the quotient expansion by search instead.
        #[arg(short)]
        t: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the whole reduction for a given t.
    Report {
        #[command(flatten)]
        input: InputArgs,
        #[arg(short)]
        t: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sweep a G(n, p) grid and emit CSV.
    Bench {
        /// Vertex counts, e.g. `5,8` or `4..10`.
        #[arg(long, value_parser = parse_int_list)]
        n: IntList,
        /// Edge probabilities, e.g. `0.1,0.5`.
        #[arg(long, value_parser = parse_float_list)]
        p: FloatList,
        /// Seeds, e.g. `1..3`.
        #[arg(long, value_parser = parse_int_list)]
        seeds: IntList,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Graph file; stdin when omitted or `-`.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InFormat::Auto)]
    format: InFormat,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Node cap for exact coloring.
    #[arg(long, env = "ODDMINOR_NODE_BUDGET", default_value_t = ExactBudget::default().max_nodes)]
    node_budget: u64,
    /// Cap on (t+1)^n for the minor searches.
    #[arg(long, env = "ODDMINOR_SEARCH_BUDGET", default_value_t = SearchBudget::default().max_assignments)]
    search_budget: u128,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            search: SearchBudget { max_assignments: self.search_budget },
            exact: ExactBudget { max_nodes: self.node_budget, max_time: None },
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InFormat {
    Auto,
    EdgeList,
    Dimacs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    EdgeList,
    Dimacs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Heuristic,
    Composed,
}

#[derive(Debug, Clone)]
struct IntList(Vec<u64>);

#[derive(Debug, Clone)]
struct FloatList(Vec<f64>);

fn parse_int_list(s: &str) -> Result<IntList, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if let Some((a, b)) = item.split_once("..") {
            let a: u64 = a.parse().map_err(|_| format!("bad range start `{a}`"))?;
            let b: u64 = b.parse().map_err(|_| format!("bad range end `{b}`"))?;
            if a > b {
                return Err(format!("empty range `{item}`"));
            }
            out.extend(a..=b);
        } else {
            out.push(item.parse().map_err(|_| format!("bad integer `{item}`"))?);
        }
    }
    Ok(IntList(out))
}

fn parse_float_list(s: &str) -> Result<FloatList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad number `{t}`")))
        .collect::<Result<_, _>>()
        .map(FloatList)
}

enum Failure {
    Usage(String),
    Resource(String),
}

impl From<MinorError> for Failure {
    fn from(e: MinorError) -> Self {
        match e {
            MinorError::BudgetExceeded { .. } | MinorError::TooLarge(_) => Failure::Resource(e.to_string()),
            MinorError::ZeroOrder => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ColoringError> for Failure {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::BudgetExceeded { .. } => Failure::Resource(e.to_string()),
            ColoringError::Improper(_) => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Minor(e) => e.into(),
            ReductionError::Coloring(e) => e.into(),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: String,
    err: String,
}

impl Io<'_> {
    fn read_input(&mut self, path: Option<&PathBuf>) -> Result<String, Failure> {
        match path {
            Some(p) if p.as_os_str() != "-" => read_file(p),
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
                Ok(s)
            }
        }
    }

    fn graph(&mut self, args: &InputArgs) -> Result<Graph, Failure> {
        let text = self.read_input(args.input.as_ref())?;
        let format = match args.format {
            InFormat::Auto => Format::detect(&text),
            InFormat::EdgeList => Format::EdgeList,
            InFormat::Dimacs => Format::Dimacs,
        };
        parse_graph(&text, format).map_err(|e| Failure::Usage(format!("input graph: {e}")))
    }

    fn report(&mut self, r: &VerificationReport) -> i32 {
        writeln!(self.out, "{r}").unwrap();
        if r.passed() {
            0
        } else {
            1
        }
    }
}

fn read_file(p: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn quotient_of(g: &Graph) -> QuotientGraph {
    build_quotient(g, &compute_partition(g)).expect("computed partitions verify")
}

fn comment(out: &mut String, text: &str) {
    for line in text.lines() {
        writeln!(out, "# {line}").unwrap();
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                return 2;
            }
            let _ = stdout.write_all(text.as_bytes());
            return 0;
        }
    };
    let mut io = Io { stdin, out: String::new(), err: String::new() };
    let code = match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            writeln!(io.err, "error: {msg}").unwrap();
            2
        }
        Err(Failure::Resource(msg)) => {
            writeln!(io.err, "error: {msg}").unwrap();
            3
        }
    };
    let _ = stdout.write_all(io.out.as_bytes());
    let _ = stderr.write_all(io.err.as_bytes());
    code
}

pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let mut stdin = stdin.lock();
    run(std::env::args_os(), &mut stdin, &mut std::io::stdout(), &mut std::io::stderr())
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match command {
        Command::Gen { spec, seed, format } => {
            let spec = GraphSpec::from_tokens(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
            let g = generate(spec, seed).map_err(|e| Failure::Usage(e.to_string()))?;
            let format = match format {
                OutFormat::EdgeList => Format::EdgeList,
                OutFormat::Dimacs => Format::Dimacs,
            };
            io.out.push_str(&render_graph(&g, format));
            Ok(0)
        }
        Command::Partition(input) => {
            let g = io.graph(&input)?;
            let p = compute_partition(&g);
            let r = verify_partition(&g, &p);
            io.out.push_str(&render_partition(&p));
            comment(&mut io.out, &r.to_string());
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Quotient(input) => {
            let g = io.graph(&input)?;
            let q = quotient_of(&g);
            let r = contraction_check(&g, &q);
            io.out.push_str(&render_quotient(&q));
            comment(&mut io.out, &r.to_string());
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Color { input, method, budget } => {
            let g = io.graph(&input)?;
            let exact = budget.budgets().exact;
            let c = match method {
                Method::Exact => color_exact(&g, exact)?,
                Method::Heuristic => color_heuristic(&g),
                Method::Composed => {
                    let q = quotient_of(&g);
                    let c_h = color_exact(q.h(), exact)?;
                    let c = compose_coloring(&q, &c_h)?;
                    comment(
                        &mut io.out,
                        &format!("chi(H) = {}, composed palette {} <= {}", c_h.palette(), c.palette(), 2 * c_h.palette()),
                    );
                    c
                }
            };
            let r = verify_coloring(&g, &c);
            io.out.push_str(&render_coloring(&c));
            comment(&mut io.out, &r.to_string());
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::FindMinor { input, t, quotient, budget } => {
            let g = io.graph(&input)?;
            let target = if quotient { quotient_of(&g).h().clone() } else { g };
            match find_expansion(&target, t, budget.budgets().search)? {
                Some(cert) => {
                    io.out.push_str(&render_certificate(&cert));
                    Ok(0)
                }
                None => {
                    io.out.push_str("NOT FOUND\n");
                    Ok(1)
                }
            }
        }
        Command::FindOddMinor { input, t, budget } => {
            let g = io.graph(&input)?;
            match find_odd_expansion(&g, t, budget.budgets().search)? {
                Some(cert) => {
                    io.out.push_str(&render_odd_certificate(&cert));
                    Ok(0)
                }
                None => {
                    io.out.push_str("NOT FOUND\n");
                    Ok(1)
                }
            }
        }
        Command::Verify { input, cert, partition, coloring } => {
            let g = io.graph(&input)?;
            let bad = |e: crate::formats::FormatError| Failure::Usage(e.to_string());
            let r = match (cert, partition, coloring) {
                (Some(path), _, _) => match parse_certificate(&read_file(&path)?).map_err(bad)? {
                    AnyCertificate::Plain(c) => verify_expansion(&g, &c),
                    AnyCertificate::Odd(c) => verify_odd_expansion(&g, &c),
                },
                (_, Some(path), _) => verify_partition(&g, &parse_partition(&read_file(&path)?).map_err(bad)?),
                (_, _, Some(path)) => verify_coloring(&g, &parse_coloring(&read_file(&path)?).map_err(bad)?),
                _ => return Err(Failure::Usage("one of --cert, --partition, --coloring is required".into())),
            };
            Ok(io.report(&r))
        }
        Command::Lift { input, cert, t, budget } => {
            let g = io.graph(&input)?;
            let q = quotient_of(&g);
            let cert_h = match (cert, t) {
                (Some(path), _) => match parse_certificate(&read_file(&path)?)
                    .map_err(|e| Failure::Usage(e.to_string()))?
                {
                    AnyCertificate::Plain(c) => c,
                    AnyCertificate::Odd(c) => c.base,
                },
                (None, Some(t)) => match find_expansion(q.h(), t, budget.budgets().search)? {
                    Some(c) => c,
                    None => {
                        io.out.push_str("NOT FOUND\n");
                        return Ok(1);
                    }
                },
                (None, None) => return Err(Failure::Usage("either --cert or -t is required".into())),
            };
            match lift_expansion(&g, &q, &cert_h) {
                Ok(odd) => {
                    io.out.push_str(&render_odd_certificate(&odd));
                    comment(&mut io.out, &verify_odd_expansion(&g, &odd).to_string());
                    Ok(0)
                }
                Err(e) => {
                    writeln!(io.err, "{e}").unwrap();
                    Ok(1)
                }
            }
        }
        Command::Report { input, t, budget } => {
            let g = io.graph(&input)?;
            let r = reduction_report(&g, t, budget.budgets())?;
            write!(io.out, "{r}").unwrap();
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Bench { n, p, seeds, budget } => {
            for &pr in &p.0 {
                if !(0.0..=1.0).contains(&pr) {
                    return Err(Failure::Usage(format!("p must lie in [0, 1], got {pr}")));
                }
            }
            if n.0.is_empty() || p.0.is_empty() || seeds.0.is_empty() || n.0.contains(&0) {
                return Err(Failure::Usage("bench grid needs positive n and non-empty lists".into()));
            }
            io.out.push_str(&bench_csv(&n.0, &p.0, &seeds.0, budget.budgets().exact));
            Ok(0)
        }
    }
}

pub const BENCH_HEADER: &str = "n,p,seed,parts,chi_H,composed_palette,chi_G_exact,ratio";

/// One CSV row per `(n, p, seed)` in grid order. Cells whose exact coloring
/// runs out of budget are left empty.
pub fn bench_csv(ns: &[u64], ps: &[f64], seeds: &[u64], exact: ExactBudget) -> String {
    let mut out = String::from("# oddminor-bench v1\n");
    out.push_str(BENCH_HEADER);
    out.push('\n');
    for &n in ns {
        for &p in ps {
            for &seed in seeds {
                let g = generate(GraphSpec::Gnp { n: n as usize, p }, seed).expect("grid validated");
                let q = quotient_of(&g);
                let (chi_h, composed, ratio) = match color_exact(q.h(), exact) {
                    Ok(c_h) => {
                        let composed = compose_coloring(&q, &c_h).expect("exact coloring is proper").palette();
                        let chi = c_h.palette();
                        (chi.to_string(), composed.to_string(), format!("{:.4}", composed as f64 / chi as f64))
                    }
                    Err(_) => (String::new(), String::new(), String::new()),
                };
                let chi_g = color_exact(&g, exact).map(|c| c.palette().to_string()).unwrap_or_default();
                writeln!(out, "{n},{p},{seed},{},{chi_h},{composed},{chi_g},{ratio}", q.h().n()).unwrap();
            }
        }
    }
    out
}
