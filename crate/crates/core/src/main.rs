use std::collections::HashMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use edgebetti::generate::{chordal_graphs_up_to, random_chordal_sample, trees_up_to, ENUMERATE_MAX_VERTICES};
use edgebetti::homology::betti_table_with;
use edgebetti::verify::{table_diff, HARNESS_MAX_VERTICES};
use edgebetti::{
    betti_single, extremal_positions, families, find_certificate, Error, FieldSpec, Graph, SweepOptions,
    TableFormat, VerificationReport, Verifier,
};

/// Graded Betti tables of edge ideals, extremal Betti numbers and bouquet
/// certificates.
#[derive(Parser)]
#[command(name = "edgebetti", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family graph (path-star R | star-triangle R | grb R B | gpr1 P R).
    Gen {
        family: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the graded Betti table.
    Betti {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        compute: ComputeArgs,
        /// grid, json or csv.
        #[arg(long, default_value = "grid")]
        format: String,
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
        /// Print the single number β_{i,i+j}.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        cell: Option<Vec<usize>>,
        /// Recompute over a second field and fail on any difference.
        #[arg(long, value_name = "FIELD")]
        check_field: Option<String>,
    },
    /// Regularity, projective dimension and extremal Betti numbers as JSON.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        compute: ComputeArgs,
    },
    /// Search a strongly disjoint set of bouquets of type (I, J).
    Cert {
        i: usize,
        j: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Replay the structural claims; exits 1 if any report fails.
    Verify {
        #[command(subcommand)]
        scope: VerifyScope,
        #[command(flatten)]
        compute: ComputeArgs,
        /// Include runtimes in the reports.
        #[arg(long, global = true)]
        timings: bool,
    },
    /// Convert a graph between the text and JSON formats.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: GraphFormat,
    },
}

#[derive(Subcommand)]
enum VerifyScope {
    /// Tree of r paths around z (default r = 1..6).
    FirstStep {
        #[arg(long = "r")]
        r: Option<String>,
    },
    /// The b-extremal family (default: all 2 <= b <= r with 2r + b <= 13).
    Theorem {
        #[arg(long = "r")]
        r: Option<String>,
        #[arg(long = "b")]
        b: Option<String>,
    },
    /// Certificate positions equal the Betti support on chordal graphs.
    #[command(alias = "kimura")]
    Support {
        #[command(flatten)]
        sweep: GraphSweep,
    },
    /// Trees with a single extremal Betti number (default: all 1 <= r < p, p + r <= 13).
    Gpr1 {
        #[arg(long = "p")]
        p: Option<String>,
        #[arg(long = "r")]
        r: Option<String>,
    },
    /// Regularity equals the induced matching number on chordal graphs.
    RegIndmatch {
        #[command(flatten)]
        sweep: GraphSweep,
    },
}

#[derive(Args)]
struct GraphSweep {
    #[command(flatten)]
    input: InputArgs,
    /// All chordal graphs up to isomorphism on at most N vertices.
    #[arg(long, value_name = "N")]
    all_chordal_upto: Option<usize>,
    /// All trees up to isomorphism on at most N vertices.
    #[arg(long, value_name = "N")]
    trees_upto: Option<usize>,
    /// N seeded random chordal graphs.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file in text or JSON format (`-` for stdin).
    input: Option<PathBuf>,
    /// Inline family, e.g. grb:5,3 or path-star:2.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    /// rational, gf2 or gfp:<p>.
    #[arg(long, default_value = "rational", global = true)]
    field: String,
    /// Worker threads for the subset sweep (0 = all cores).
    #[arg(long, env = "EDGEBETTI_JOBS", default_value_t = 0, global = true)]
    jobs: usize,
}

impl ComputeArgs {
    fn sweep(&self) -> Result<SweepOptions, Error> {
        Ok(SweepOptions { field: self.field.parse()?, jobs: self.jobs })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    Json,
}

fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Text => g.to_text(),
        GraphFormat::Json => g.to_json() + "\n",
    }
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_graph(input: &InputArgs) -> Result<Graph, Failure> {
    match (&input.input, &input.family) {
        (Some(path), None) => Ok(Graph::parse(&read_input(path)?)?),
        (None, Some(spec)) => Ok(families::parse_family_spec(spec)?),
        (Some(_), Some(_)) => Err(Failure::Usage("give either a graph file or --family, not both".into())),
        (None, None) => Err(Failure::Usage("no graph given: pass a file or --family".into())),
    }
}

/// Inclusive integer range whose ends may refer to other parameters, as in
/// `2..4`, `2..r` or `r+1..p-1`.
fn parse_range(spec: &str, env: &HashMap<&str, usize>) -> Result<Vec<usize>, Failure> {
    let bound = |s: &str| -> Result<usize, Failure> {
        let s = s.trim();
        if let Ok(v) = s.parse() {
            return Ok(v);
        }
        let (name, offset) = match s.find(['+', '-']) {
            Some(k) => {
                let off: i64 = s[k + 1..]
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad range bound `{s}`")))?;
                (&s[..k], if &s[k..k + 1] == "-" { -off } else { off })
            }
            None => (s, 0),
        };
        let base = env
            .get(name)
            .ok_or_else(|| Failure::Usage(format!("unknown name `{name}` in range `{spec}`")))?;
        Ok((*base as i64 + offset).max(0) as usize)
    };
    match spec.split_once("..") {
        Some((lo, hi)) => Ok((bound(lo)?..=bound(hi)?).collect()),
        None => Ok(vec![bound(spec)?]),
    }
}

fn emit(reports: &[VerificationReport], timings: bool) -> Result<(), Failure> {
    for rep in reports {
        println!("{}", rep.to_json_line(timings));
    }
    let failed = reports.iter().filter(|r| r.failed()).count();
    let skipped = reports.iter().filter(|r| r.status == edgebetti::verify::Status::Skipped).count();
    eprintln!(
        "{} reports: {} pass, {} fail, {} skipped",
        reports.len(),
        reports.len() - failed - skipped,
        failed,
        skipped
    );
    if failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn sweep_graphs(s: &GraphSweep) -> Result<Vec<Graph>, Failure> {
    let mut graphs = Vec::new();
    if s.input.input.is_some() || s.input.family.is_some() {
        graphs.push(load_graph(&s.input)?);
    }
    let capped = |n: usize| -> Result<usize, Failure> {
        if n > ENUMERATE_MAX_VERTICES {
            Err(Failure::Usage(format!("enumeration is capped at {ENUMERATE_MAX_VERTICES} vertices")))
        } else {
            Ok(n)
        }
    };
    if let Some(n) = s.all_chordal_upto {
        graphs.extend(chordal_graphs_up_to(capped(n)?));
    }
    if let Some(n) = s.trees_upto {
        graphs.extend(trees_up_to(capped(n)?));
    }
    if let Some(count) = s.random {
        if s.max_n == 0 {
            return Err(Failure::Usage("--max-n must be positive".into()));
        }
        graphs.extend(random_chordal_sample(count, s.max_n, s.seed).into_iter().map(|(_, g)| g));
    }
    if graphs.is_empty() {
        return Err(Failure::Usage(
            "no graphs: pass a file, --family, --all-chordal-upto, --trees-upto or --random".into(),
        ));
    }
    Ok(graphs)
}

fn run_verify(scope: &VerifyScope, verifier: Verifier, timings: bool) -> Result<(), Failure> {
    let mut reports = Vec::new();
    match scope {
        VerifyScope::FirstStep { r } => {
            let rs = parse_range(r.as_deref().unwrap_or("1..6"), &HashMap::new())?;
            for r in rs {
                reports.push(verifier.first_step(r)?);
            }
        }
        VerifyScope::Theorem { r, b } => {
            let explicit = r.is_some() || b.is_some();
            let rs = parse_range(r.as_deref().unwrap_or("2..5"), &HashMap::new())?;
            for r in rs {
                let env = HashMap::from([("r", r)]);
                for b in parse_range(b.as_deref().unwrap_or("2..r"), &env)? {
                    if b < 2 || b > r {
                        continue;
                    }
                    if !explicit && 2 * r + b > HARNESS_MAX_VERTICES {
                        continue;
                    }
                    reports.push(verifier.theorem(r, b)?);
                }
            }
        }
        VerifyScope::Gpr1 { p, r } => {
            let explicit = p.is_some() || r.is_some();
            let ps = parse_range(p.as_deref().unwrap_or("2..12"), &HashMap::new())?;
            for p in ps {
                let env = HashMap::from([("p", p)]);
                for r in parse_range(r.as_deref().unwrap_or("1..p-1"), &env)? {
                    if r == 0 || r >= p {
                        continue;
                    }
                    if !explicit && p + r > HARNESS_MAX_VERTICES {
                        continue;
                    }
                    reports.push(verifier.g_pr1(p, r)?);
                }
            }
        }
        VerifyScope::Support { sweep } => {
            for g in sweep_graphs(sweep)? {
                reports.push(verifier.support(&g)?);
            }
        }
        VerifyScope::RegIndmatch { sweep } => {
            for g in sweep_graphs(sweep)? {
                reports.push(verifier.reg_eq_indmatch(&g)?);
            }
        }
    }
    emit(&reports, timings)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { family, params, format, output } => {
            let g = families::build_family(&family, &params)?;
            let text = write_graph(&g, format);
            match output {
                Some(path) => std::fs::write(path, text).map_err(Error::from)?,
                None => print!("{text}"),
            }
        }
        Command::Betti { input, compute, format, json, cell, check_field } => {
            let g = load_graph(&input)?;
            let opts = compute.sweep()?;
            if let Some(cell) = cell {
                let (i, j) = (cell[0], cell[1]);
                match betti_single(&g, i, j, opts.field) {
                    Ok(v) => println!("{v}"),
                    Err(e @ Error::CellOutOfRange { .. }) => {
                        eprintln!("note: {e}");
                        println!("0");
                    }
                    Err(e) => return Err(e.into()),
                }
                return Ok(());
            }
            let format: TableFormat = if json { TableFormat::Json } else { format.parse()? };
            let table = betti_table_with(&g, opts)?;
            print!("{}", table.render(format));
            if let Some(other) = check_field {
                let other: FieldSpec = other.parse()?;
                let second = betti_table_with(&g, SweepOptions { field: other, ..opts })?;
                let diff = table_diff(&table, &second);
                if !diff.is_empty() {
                    eprintln!("tables over {} and {} differ:", opts.field, other);
                    for (i, j, a, b) in diff {
                        eprintln!("  β_{{{i},{}}}: {a} vs {b}", i + j);
                    }
                    return Err(Failure::Verification);
                }
                eprintln!("tables over {} and {} agree", opts.field, other);
            }
        }
        Command::Analyze { input, compute } => {
            let g = load_graph(&input)?;
            let table = betti_table_with(&g, compute.sweep()?)?;
            let report = extremal_positions(&table);
            println!("{}", serde_json::to_string(&report).map_err(Error::from)?);
        }
        Command::Cert { i, j, input } => {
            let g = load_graph(&input)?;
            if !g.is_chordal() {
                eprintln!("warning: graph is not chordal; a certificate need not match a nonzero Betti number");
            }
            match find_certificate(&g, i, j) {
                Some(c) => println!("{}", c.to_json()),
                None => println!("none"),
            }
        }
        Command::Verify { scope, compute, timings } => {
            run_verify(&scope, Verifier::new(compute.sweep()?), timings)?;
        }
        Command::Convert { input, to } => {
            let g = Graph::parse(&read_input(&input)?)?;
            print!("{}", write_graph(&g, to));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
