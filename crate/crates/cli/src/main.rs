mod session;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use qlan_topo::oracle::lc::{lc_orbit, DEFAULT_ORBIT_CAP};
use qlan_topo::oracle::suite::{measurement_suite, recipe_suite};
use qlan_topo::{Graph, QlanNetwork, RecipeKind, RecipeParams, RecipeReport, Side, VertexId};
use serde::Serialize;

use session::Session;

/// Largest network size certified on the stabilizer oracle by `verify --recipes`.
const VERIFY_ORACLE_QUBITS: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "qlantopo", version, about = "Artificial topologies between two QLANs via graph-state measurements")]
struct Cli {
    /// Session file carrying state between invocations.
    #[arg(long, global = true, env = "QW_SESSION", default_value = "qlantopo-session.json")]
    session: PathBuf,

    /// Print machine-readable JSON instead of the text summary.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampling modes. Reserved: no command samples randomness yet.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distribute star states in two QLANs of the given sizes.
    Build {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=32))]
        n1: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=32))]
        n2: u32,
    },
    /// Join the two stars with one remote CZ between the super-nodes.
    Merge,
    /// Run a named recipe on the merged network.
    Apply {
        #[arg(value_parser = parse_recipe)]
        recipe: RecipeKind,
        /// QLAN whose clients the topology is built around.
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        /// 1-based client index in the target QLAN.
        #[arg(long)]
        client_i: Option<u32>,
        /// 1-based client index in the other QLAN.
        #[arg(long)]
        client_j: Option<u32>,
        /// Also print the graph before and after as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Measure out every vertex of the last target topology not in the list.
    Restrict {
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_vertex)]
        keep: Vec<VertexId>,
    },
    /// Run the stabilizer oracle suites.
    #[command(group(ArgGroup::new("scope").required(true).args(["exhaustive", "recipes"])))]
    Verify {
        /// Certify every vertex and basis of every graph with up to N vertices.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..=6))]
        exhaustive: Option<u32>,
        /// Check every recipe on the size grid 2..=nmax.
        #[arg(long, requires = "nmax")]
        recipes: bool,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=8))]
        nmax: Option<u32>,
    },
    /// Write a graph from the session as DOT or JSON.
    Export {
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long, value_enum)]
        what: What,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the local-complementation orbit of a session graph.
    Orbit {
        #[arg(long, value_enum, default_value_t = What::Result)]
        what: What,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Shared,
    Result,
}

fn parse_recipe(s: &str) -> Result<RecipeKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = RecipeKind::ALL.iter().map(|k| k.cli_name()).collect();
        format!("unknown recipe; expected one of {}", names.join(", "))
    })
}

fn parse_vertex(s: &str) -> Result<VertexId, String> {
    s.trim().parse().map_err(|e| format!("{e}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data") + "\n"
}

fn describe_network(net: &QlanNetwork) -> String {
    let l = &net.ledger;
    let mut out = format!(
        "QLAN 1: {} nodes, QLAN 2: {} nodes\n",
        net.qlan1.size(),
        net.qlan2.size()
    );
    if let Some(g) = &net.shared_graph {
        let _ = writeln!(out, "shared graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    }
    let _ = writeln!(
        out,
        "EPR pairs: generated {}, consumed intra {}, consumed inter {}",
        l.epr_generated, l.epr_consumed_intra, l.epr_consumed_inter
    );
    out
}

fn describe_report(r: &RecipeReport) -> String {
    let side = match r.params.target_side {
        Side::Left => "left",
        Side::Right => "right",
    };
    let mut out = format!("recipe {} (target side {side})\n", r.kind);
    out.push_str("plan:\n");
    for (k, spec) in r.plan.iter().enumerate() {
        let _ = writeln!(out, "  {k}: {spec}");
    }
    let _ = writeln!(out, "result:   {}", r.result);
    let _ = writeln!(out, "expected: {}", r.expected);
    let _ = writeln!(out, "matched: {}", r.matched);
    out
}

fn pick<'s>(session: &'s Session, what: What) -> Result<&'s Graph> {
    match what {
        What::Shared => session.shared(),
        What::Result => session.result(),
    }
}

/// Text for standard output, and whether the command succeeded.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let path: &Path = &cli.session;
    match &cli.command {
        Command::Build { n1, n2 } => {
            let net = QlanNetwork::build(*n1 as usize, *n2 as usize)?;
            let session = Session::new(net);
            session.save(path)?;
            let net = session.network()?;
            Ok(Outcome::ok(if cli.json { to_json(net) } else { describe_network(net) }))
        }
        Command::Merge => {
            let mut session = Session::load(path)?;
            let merged = session.network()?.merge_remote_cz()?;
            session.network = Some(merged);
            session.reports.clear();
            session.save(path)?;
            let net = session.network()?;
            Ok(Outcome::ok(if cli.json { to_json(net) } else { describe_network(net) }))
        }
        Command::Apply { recipe, side, client_i, client_j, dot } => {
            let mut session = Session::load(path)?;
            let params = RecipeParams { target_side: (*side).into(), client_j: *client_j, client_i: *client_i };
            let report = qlan_topo::apply(session.network()?, *recipe, &params)?;
            let mut text = if cli.json { to_json(&report) } else { describe_report(&report) };
            if *dot {
                text.push_str(&report.base.to_dot("before"));
                text.push_str(&report.result.to_dot("after"));
            }
            session.reports.push(report);
            session.save(path)?;
            Ok(Outcome::ok(text))
        }
        Command::Restrict { keep } => {
            let mut session = Session::load(path)?;
            let keep: BTreeSet<VertexId> = keep.iter().copied().collect();
            let report = session.last_report()?.restrict(&keep)?;
            let text = if cli.json { to_json(&report) } else { describe_report(&report) };
            session.reports.push(report);
            session.save(path)?;
            Ok(Outcome::ok(text))
        }
        Command::Verify { exhaustive: Some(n), .. } => {
            let report = measurement_suite(*n as usize)?;
            let text = if cli.json {
                to_json(&report)
            } else {
                format!(
                    "measurement certification, graphs with 1..={n} vertices: {} graphs, {} cases, {} failed\n",
                    report.graphs,
                    report.cases.len(),
                    report.failed
                )
            };
            Ok(Outcome { text, ok: report.passed() })
        }
        Command::Verify { nmax, .. } => {
            let nmax = nmax.context("--nmax is required with --recipes")? as usize;
            let report = recipe_suite(nmax, VERIFY_ORACLE_QUBITS)?;
            let text = if cli.json {
                to_json(&report)
            } else {
                let mut out = format!("recipe grid, QLAN sizes 2..={nmax}: {} cases, {} failed\n", report.cases.len(), report.failed);
                for kind in RecipeKind::ALL {
                    let cases: Vec<_> = report.cases.iter().filter(|c| c.case.kind == kind).collect();
                    let unmatched = cases.iter().filter(|c| !c.matched).count();
                    let oracle_fail = cases.iter().filter(|c| c.lc_equivalent == Some(false)).count();
                    let _ = writeln!(
                        out,
                        "  {:<16} cases {:>4}  closed form mismatches {:>4}  oracle failures {:>4}",
                        kind.cli_name(),
                        cases.len(),
                        unmatched,
                        oracle_fail
                    );
                }
                out
            };
            Ok(Outcome { text, ok: report.passed() })
        }
        Command::Export { format, what, out } => {
            let session = Session::load(path)?;
            let g = pick(&session, *what)?;
            let name = match what {
                What::Shared => "shared",
                What::Result => "result",
            };
            let bytes = match format {
                Format::Dot => g.to_dot(name),
                Format::Json => to_json(g),
            };
            match out {
                Some(file) => {
                    std::fs::write(file, &bytes).with_context(|| format!("cannot write {}", file.display()))?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(bytes)),
            }
        }
        Command::Orbit { what, cap } => {
            let session = Session::load(path)?;
            let orbit = lc_orbit(pick(&session, *what)?, *cap)?;
            let text = if cli.json {
                to_json(&orbit)
            } else {
                let status = if orbit.truncated { "truncated at cap" } else { "complete" };
                let mut out = format!("orbit size {} ({status})\n", orbit.len());
                for g in &orbit.members {
                    let _ = writeln!(out, "  {g}");
                }
                out
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
