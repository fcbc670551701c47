use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use bilift::classify::{classify_pair_with, Case, ClassifyOptions};
use bilift::enumerate::{sweep, Check, SearchRange};
use bilift::families::{designated_edge, exceptional_pair, gen, ExceptionalId, FamilySpec};
use bilift::format::{parse_graph, to_json, to_text};
use bilift::isomorphism::{find_switch_certificate, two_isomorphic, CertificateOutcome, DEFAULT_DEPTH};
use bilift::matroid::{
    check_minor_identities, graphic_circuits, lift_circuits, rank_graphic, rank_lift,
    CircuitFamily,
};
use bilift::{EdgeSet, Error, Label, Multigraph};

#[derive(Parser)]
#[command(name = "bilift", version)]
#[command(about = "Bicircular lift matroids of multigraphs")]
struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the output to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Matroid {
    #[default]
    Lift,
    Graphic,
}

#[derive(Subcommand)]
enum Command {
    /// Circuits of the lift (or graphic) matroid
    Circuits {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        matroid: Matroid,
    },
    /// Rank of an edge set (default: the whole ground set)
    Rank {
        graph: PathBuf,
        /// Comma-separated labels
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<Label>>,
        #[arg(long, value_enum, default_value_t)]
        matroid: Matroid,
    },
    /// Whether two graphs have the same lift (or graphic) matroid; exit 1 if not
    Equal {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        matroid: Matroid,
    },
    /// Whether two graphs are 2-isomorphic; exit 1 if not
    TwoIso { g1: PathBuf, g2: PathBuf },
    /// Search for a sequence of moves turning g1 into g2; exit 1 if none is found
    Certify {
        g1: PathBuf,
        g2: PathBuf,
        /// Largest number of moves
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Which case of the classification a pair with equal lift matroids is in
    Classify {
        g1: PathBuf,
        g2: PathBuf,
        /// Also search for a move certificate of at most this many moves
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Deletion and contraction identities at every edge (or one); exit 1 on failure
    CheckMinors {
        graph: PathBuf,
        #[arg(long)]
        edge: Option<Label>,
    },
    /// Emit a named graph or an exceptional pair
    Gen(GenArgs),
    /// Sweep a range of small graphs; exit 1 if any claim fails
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// k (complete graph K_m), k2m (m parallel edges), k3 (K_3^{k,l,m}), split-k4
    #[arg(long, conflicts_with = "exceptional")]
    family: Option<String>,
    /// Family parameters, comma-separated
    #[arg(long, value_delimiter = ',')]
    params: Vec<usize>,
    /// Exceptional family id
    #[arg(long, required_unless_present = "family")]
    exceptional: Option<ExceptionalId>,
    #[arg(long, requires = "exceptional")]
    n: Option<usize>,
    /// Emit JSON graphs instead of the text format
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    max_v: usize,
    #[arg(long)]
    max_e: usize,
    #[arg(long, default_value_t = 0)]
    min_v: usize,
    #[arg(long, default_value_t = 0)]
    min_e: usize,
    /// Comma-separated checks (default: all)
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<Check>>,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    two_edge_connected: bool,
    #[arg(long)]
    cosimple: bool,
    #[arg(long)]
    loopless: bool,
}

/// What a command produced: a JSON value, its human-readable rendering, and
/// whether the verdict was positive.
struct Output {
    json: serde_json::Value,
    pretty: String,
    ok: bool,
    /// Print `pretty` even without `--pretty`: the output is a graph file.
    raw: bool,
}

impl Output {
    fn new(value: impl Serialize, pretty: String, ok: bool) -> Self {
        Output {
            json: serde_json::to_value(value).expect("reports serialize"),
            pretty,
            ok,
            raw: false,
        }
    }
}

enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Library(Option<PathBuf>, Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Library(Some(path), e) => write!(f, "{}: {e}", path.display()),
            Failure::Library(None, e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(None, e)
    }
}

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    parse_graph(&text).map_err(|e| Failure::Library(Some(path.to_path_buf()), e))
}

fn circuits_of(g: &Multigraph, matroid: Matroid) -> CircuitFamily {
    match matroid {
        Matroid::Lift => lift_circuits(g),
        Matroid::Graphic => graphic_circuits(g),
    }
}

fn set_text(set: &EdgeSet) -> String {
    let labels: Vec<String> = set.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", labels.join(", "))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Circuits { graph, matroid } => {
            let family = circuits_of(&read_graph(graph)?, *matroid);
            let mut pretty = format!("{} circuits\n", family.len());
            for c in family.circuits() {
                let _ = writeln!(pretty, "  {}", set_text(&c));
            }
            Ok(Output::new(&family, pretty, true))
        }
        Command::Rank { graph, set, matroid } => {
            let g = read_graph(graph)?;
            let set: EdgeSet = match set {
                Some(labels) => labels.iter().copied().collect(),
                None => g.ground(),
            };
            let rank = match matroid {
                Matroid::Lift => rank_lift(&g, &set)?,
                Matroid::Graphic => rank_graphic(&g, &set)?,
            };
            let independent = rank == set.len();
            let pretty = format!(
                "rank {rank} of {} ({})\n",
                set_text(&set),
                if independent { "independent" } else { "dependent" }
            );
            Ok(Output::new(
                json!({ "set": set, "rank": rank, "independent": independent }),
                pretty,
                true,
            ))
        }
        Command::Equal { g1, g2, matroid } => {
            let (a, b) = (read_graph(g1)?, read_graph(g2)?);
            let equal = circuits_of(&a, *matroid) == circuits_of(&b, *matroid);
            Ok(Output::new(json!({ "equal": equal }), format!("equal: {equal}\n"), equal))
        }
        Command::TwoIso { g1, g2 } => {
            let verdict = two_isomorphic(&read_graph(g1)?, &read_graph(g2)?)?;
            Ok(Output::new(
                json!({ "two_isomorphic": verdict }),
                format!("2-isomorphic: {verdict}\n"),
                verdict,
            ))
        }
        Command::Certify { g1, g2, depth } => {
            let (a, b) = (read_graph(g1)?, read_graph(g2)?);
            let outcome = find_switch_certificate(&a, &b, *depth)?;
            let pretty = match &outcome {
                CertificateOutcome::Found { certificate } => {
                    let mut s = format!("{} moves\n", certificate.moves.len());
                    for m in &certificate.moves {
                        let _ = writeln!(s, "  {}", serde_json::to_string(m).expect("moves serialize"));
                    }
                    s
                }
                CertificateOutcome::NotFound => "not 2-isomorphic\n".into(),
                CertificateOutcome::BoundExceeded { depth_limit } => {
                    format!("no certificate within {depth_limit} moves\n")
                }
            };
            let ok = outcome.certificate().is_some();
            Ok(Output::new(&outcome, pretty, ok))
        }
        Command::Classify { g1, g2, depth } => {
            let (a, b) = (read_graph(g1)?, read_graph(g2)?);
            let options = ClassifyOptions {
                certificate_depth: *depth,
            };
            let c = classify_pair_with(&a, &b, &options)?;
            let mut pretty = format!("case: {}\n", c.case.name());
            for note in &c.notes {
                let _ = writeln!(pretty, "note: {note}");
            }
            let ok = c.case != Case::Unclassified;
            Ok(Output::new(&c, pretty, ok))
        }
        Command::CheckMinors { graph, edge } => {
            let g = read_graph(graph)?;
            let labels: Vec<Label> = match edge {
                Some(l) => vec![*l],
                None => g.labels().collect(),
            };
            let reports = labels
                .iter()
                .map(|&l| check_minor_identities(&g, l))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(|r| r.holds());
            let mut pretty = String::new();
            for r in &reports {
                let _ = writeln!(
                    pretty,
                    "edge {} ({}): {}",
                    r.edge,
                    if r.is_loop { "loop" } else { "link" },
                    if r.holds() { "holds" } else { "FAILS" }
                );
            }
            Ok(Output::new(&reports, pretty, ok))
        }
        Command::Gen(args) => generate(args, cli.out.as_deref()),
        Command::Verify(args) => {
            let mut range = SearchRange::new(args.max_v, args.max_e)
                .min_vertices(args.min_v)
                .min_edges(args.min_e);
            range.connected = args.connected;
            range.two_edge_connected = args.two_edge_connected;
            range.cosimple = args.cosimple;
            range.loopless = args.loopless;
            let checks = args.checks.clone().unwrap_or_else(|| Check::ALL.to_vec());
            let report = sweep(&range, &checks)?;
            let mut pretty = format!(
                "{} graphs, {} labeled equal-lift pairs, {} ms\n",
                report.graphs, report.equal_lift_pairs, report.wall_time_ms
            );
            for (check, s) in &report.stats {
                let _ = writeln!(
                    pretty,
                    "{check:<22} checked {:>8}  skipped {:>8}  violations {}",
                    s.checked, s.skipped, s.violations
                );
            }
            for (case, n) in &report.case_counts {
                let _ = writeln!(pretty, "{case:<32} {n}");
            }
            for v in &report.violations {
                let _ = writeln!(pretty, "VIOLATION {}: {}", v.check, v.message);
            }
            let ok = report.is_clean();
            Ok(Output::new(&report, pretty, ok))
        }
    }
}

fn family_spec(name: &str, params: &[usize]) -> Result<FamilySpec, Failure> {
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Failure::Usage(format!("--family {name} takes {n} parameter(s)")))
        }
    };
    match name {
        "k" | "k4" => {
            let m = if name == "k4" { 4 } else { arity(1).map(|_| params[0])? };
            Ok(FamilySpec::Complete { m })
        }
        "k2m" => arity(1).map(|_| FamilySpec::Banana { m: params[0] }),
        "k3" => arity(3).map(|_| FamilySpec::Triangle {
            k: params[0],
            l: params[1],
            m: params[2],
        }),
        "split-k4" => arity(1).map(|_| FamilySpec::SplitK4 { k: params[0] }),
        _ => Err(Failure::Usage(format!("unknown family `{name}`"))),
    }
}

fn generate(args: &GenArgs, out: Option<&Path>) -> Result<Output, Failure> {
    let render = |g: &Multigraph| if args.json { to_json(g) } else { to_text(g) };
    if let Some(name) = &args.family {
        let g = gen(&family_spec(name, &args.params)?)?;
        return Ok(Output {
            json: serde_json::to_value(&g).expect("graphs serialize"),
            pretty: render(&g),
            ok: true,
            raw: true,
        });
    }
    let id = args.exceptional.expect("clap requires a family or an id");
    let n = args.n.unwrap_or(id.min_n());
    let (g1, g2) = exceptional_pair(id, n)?;
    let e = designated_edge(id, &g1);
    let pair = json!({ "id": id, "n": n, "designated_edge": e, "g1": g1, "g2": g2 });
    if let Some(dir) = out {
        // a pair goes to a directory: g1, g2 and a JSON summary
        fs::create_dir_all(dir).map_err(|err| Failure::Io(dir.to_path_buf(), err))?;
        let ext = if args.json { "json" } else { "g" };
        for (name, g) in [("g1", &g1), ("g2", &g2)] {
            let path = dir.join(format!("{name}.{ext}"));
            fs::write(&path, render(g)).map_err(|err| Failure::Io(path, err))?;
        }
        let path = dir.join("pair.json");
        let text = serde_json::to_string_pretty(&pair).expect("pair serializes") + "\n";
        fs::write(&path, text).map_err(|err| Failure::Io(path, err))?;
    }
    let pretty = format!(
        "{id} n={n} designated edge {e}\n# G1\n{}# G2\n{}",
        to_text(&g1),
        to_text(&g2)
    );
    Ok(Output::new(pair, pretty, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let output = match run(&cli) {
        Ok(output) => output,
        Err(failure) => {
            eprintln!("error: {failure}");
            return ExitCode::from(2);
        }
    };
    let exceptional_dir = matches!(&cli.command, Command::Gen(args) if args.exceptional.is_some());
    let text = if cli.pretty || output.raw {
        output.pretty
    } else {
        serde_json::to_string(&output.json).expect("json values serialize") + "\n"
    };
    match cli.out.as_deref().filter(|_| !exceptional_dir) {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if output.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
