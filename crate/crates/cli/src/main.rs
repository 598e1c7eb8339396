//! Command-line front end: instance generation, conflict-graph
//! construction, feasibility queries, admission-control runs (centralized
//! reference or simulated distributed execution), and reproducible
//! experiments.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qosadm::distalgo::admission_control_reference;
use qosadm::experiment::{run_experiment, ExperimentName, ExperimentSpec};
use qosadm::feasibility::{
    check_d1_condition, check_degree_condition, check_row_constraints, check_shannon_condition,
    clique_bound, fractional_chromatic_index, fractional_chromatic_number_lp, imperfection_ratio,
};
use qosadm::gen;
use qosadm::io;
use qosadm::interference::{primary_conflict_graph, protocol_conflict_graph, ConflictGraph};
use qosadm::rational::{format_rational, parse_rational, rat_int};
use qosadm::simnet::run_distributed;

#[derive(Parser)]
#[command(
    name = "qosadm",
    about = "Admission control for wireless link demands under conflict-graph interference",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named or random instance.
    Gen(GenArgs),
    /// Build and print the conflict graph of an instance.
    Conflict(ConflictArgs),
    /// Exact duration oracle plus every admission condition on one instance.
    Feas(FeasArgs),
    /// Run the distance-d admission-control algorithm.
    Admit(AdmitArgs),
    /// Run a named experiment; exits nonzero unless every check passes.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Subcommand)]
enum GenKind {
    /// Cycle C_n.
    Cycle {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Path on n nodes.
    Path {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Star on n nodes (node 0 is the hub).
    Star {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random graph with exact rational edge probability.
    RandomGraph {
        n: usize,
        /// Edge probability, e.g. 1/2.
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random line network; spacing holds by construction.
    RandomLineNetwork {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow two-receiver transmissions.
        #[arg(long)]
        multicast: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConflictArgs {
    /// Network graph file (primary interference model).
    #[arg(long, conflicts_with = "line_network")]
    network: Option<PathBuf>,
    /// Line network file (protocol interference model).
    #[arg(long)]
    line_network: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FeasArgs {
    /// Network graph file; demands are per link.
    #[arg(long, conflicts_with = "conflict")]
    network: Option<PathBuf>,
    /// Conflict graph file; demands are per vertex.
    #[arg(long)]
    conflict: Option<PathBuf>,
    /// Demand file (`u v p/q` lines for networks, `v p/q` for conflict graphs).
    #[arg(long)]
    demands: PathBuf,
    /// Also evaluate the distance-d local bound.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AdmitArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long)]
    demands: PathBuf,
    /// Degree of centralization (d = 0 uses the per-node 2/3 check).
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, value_enum, default_value_t = Mode::Reference)]
    mode: Mode,
    /// Write the message trace (simulate mode).
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Reference,
    Simulate,
}

#[derive(Args)]
struct ExperimentArgs {
    /// One of: odd-cycle-schedule, bound-tightness, sigma-line-sweep,
    /// row-worst-case, oracle-crosscheck.
    name: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random instances (sweeps).
    #[arg(long)]
    instances: Option<usize>,
    /// Cycle lengths, comma separated (odd-cycle-schedule).
    #[arg(long, value_delimiter = ',')]
    n_values: Option<Vec<usize>>,
    /// Degrees of centralization, comma separated (bound-tightness).
    #[arg(long, value_delimiter = ',')]
    d_values: Option<Vec<usize>>,
    /// Write the machine-readable JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run_gen(args: GenArgs) -> Result<()> {
    match args.kind {
        GenKind::Cycle { n, out } => emit(&out, &io::write_graph(&gen::cycle(n)?)),
        GenKind::Path { n, out } => emit(&out, &io::write_graph(&gen::path(n)?)),
        GenKind::Star { n, out } => emit(&out, &io::write_graph(&gen::star(n)?)),
        GenKind::RandomGraph { n, p, seed, out } => {
            let p = parse_rational(&p)?;
            emit(&out, &io::write_graph(&gen::random_graph(n, &p, seed)?))
        }
        GenKind::RandomLineNetwork {
            n,
            seed,
            multicast,
            out,
        } => {
            let net = if multicast {
                gen::random_line_network_mixed(n, seed)?
            } else {
                gen::random_line_network(n, seed)?
            };
            emit(&out, &io::write_line_network(&net))
        }
    }
}

fn run_conflict(args: ConflictArgs) -> Result<()> {
    let mut text = String::new();
    match (&args.network, &args.line_network) {
        (Some(path), None) => {
            let network = io::parse_graph(&read(path)?)?;
            let gc = primary_conflict_graph(&network);
            text.push_str("# conflict graph (primary interference model)\n");
            for (v, link) in gc.labels().iter().enumerate() {
                text.push_str(&format!("# vertex {v}: link {} {}\n", link.0, link.1));
            }
            text.push_str(&io::write_graph(gc.graph()));
        }
        (None, Some(path)) => {
            let net = io::parse_line_network(&read(path)?)?;
            let gc = protocol_conflict_graph(&net);
            text.push_str("# conflict graph (protocol interference model)\n");
            if !net.spacing_satisfied() {
                text.push_str(&format!(
                    "# spacing constraint violated at indices {:?}\n",
                    net.spacing_violations()
                ));
            }
            for (v, t) in gc.labels().iter().enumerate() {
                text.push_str(&format!("# vertex {v}: tx {t}\n"));
            }
            text.push_str(&io::write_graph(gc.graph()));
        }
        _ => bail!("pass exactly one of --network or --line-network"),
    }
    emit(&args.out, &text)
}

fn condition_line(name: &str, threshold: &str, verdict: &qosadm::feasibility::FeasibilityVerdict) -> String {
    format!(
        "condition {name} bound {} threshold {threshold} {}\n",
        format_rational(&verdict.bound_value),
        if verdict.accepted { "accept" } else { "reject" }
    )
}

fn run_feas(args: FeasArgs) -> Result<()> {
    let mut text = String::new();
    match (&args.network, &args.conflict) {
        (Some(path), None) => {
            let g = io::parse_graph(&read(path)?)?;
            let tau = io::parse_edge_demands(&read(&args.demands)?)?;
            text.push_str(&format!(
                "instance network nodes {} links {}\n",
                g.node_count(),
                g.edge_count()
            ));
            let exact = fractional_chromatic_index(&g, &tau)?;
            text.push_str(&format!("oracle duration {}\n", format_rational(&exact)));
            text.push_str(&format!(
                "feasible {}\n",
                if exact <= rat_int(1) { "yes" } else { "no" }
            ));

            let gc = primary_conflict_graph(&g);
            let weights = gc.vertex_demands(&tau)?;
            let lp = fractional_chromatic_number_lp(&gc, &weights)?;
            text.push_str(&format!("lp duration {}\n", format_rational(&lp.value)));

            text.push_str(&condition_line(
                "shannon",
                "2/3",
                &check_shannon_condition(&g, &tau)?,
            ));
            text.push_str(&condition_line("d1", "4/5", &check_d1_condition(&g, &tau)?));
            text.push_str(&condition_line(
                "degree",
                "1",
                &check_degree_condition(&gc, &weights)?,
            ));
            text.push_str(&condition_line(
                "row",
                "1",
                &check_row_constraints(&gc, &weights, &rat_int(1))?,
            ));

            let (clique, _) = clique_bound(&gc, &weights)?;
            let imp = imperfection_ratio(&gc)?;
            let scaled = &imp * &clique;
            text.push_str(&format!("clique bound {}\n", format_rational(&clique)));
            text.push_str(&format!("imperfection ratio {}\n", format_rational(&imp)));
            text.push_str(&format!(
                "condition scaled-clique bound {} threshold 1 {}\n",
                format_rational(&scaled),
                if scaled <= rat_int(1) { "accept" } else { "reject" }
            ));

            if let Some(d) = args.d {
                if d >= 1 {
                    let (bound, node) =
                        qosadm::distalgo::global_local_bound(&g, &tau, d)?;
                    text.push_str(&format!(
                        "local bound d {} value {} at node {}\n",
                        d,
                        format_rational(&bound),
                        node.map_or("-".into(), |v| v.to_string())
                    ));
                }
            }
        }
        (None, Some(path)) => {
            let gc = ConflictGraph::from_graph(io::parse_graph(&read(path)?)?);
            let tau = io::parse_vertex_demands(&read(&args.demands)?)?;
            text.push_str(&format!(
                "instance conflict-graph vertices {}\n",
                gc.vertex_count()
            ));
            let lp = fractional_chromatic_number_lp(&gc, &tau)?;
            text.push_str(&format!("lp duration {}\n", format_rational(&lp.value)));
            text.push_str(&format!(
                "feasible {}\n",
                if lp.value <= rat_int(1) { "yes" } else { "no" }
            ));
            text.push_str(&condition_line(
                "degree",
                "1",
                &check_degree_condition(&gc, &tau)?,
            ));
            text.push_str(&condition_line(
                "row",
                "1",
                &check_row_constraints(&gc, &tau, &rat_int(1))?,
            ));
            let (clique, _) = clique_bound(&gc, &tau)?;
            text.push_str(&format!("clique bound {}\n", format_rational(&clique)));
        }
        _ => bail!("pass exactly one of --network or --conflict"),
    }
    emit(&args.out, &text)
}

fn run_admit(args: AdmitArgs) -> Result<()> {
    let g = io::parse_graph(&read(&args.network)?)?;
    let tau = io::parse_edge_demands(&read(&args.demands)?)?;
    let report = match args.mode {
        Mode::Reference => admission_control_reference(&g, &tau, args.d)?,
        Mode::Simulate => {
            let (report, trace) = run_distributed(&g, &tau, args.d)?;
            if let Some(path) = &args.trace {
                fs::write(path, trace.export())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            report
        }
    };
    if args.mode == Mode::Reference && args.trace.is_some() {
        bail!("--trace needs --mode simulate");
    }
    let mut text = report.to_string();
    if !report.all_accepted() {
        // Informational: what the accepted flows alone would cost.
        let accepted = report.accepted_links();
        let entries = g.edges().iter().map(|e| {
            let value = if accepted.contains(e) {
                tau.get(e).cloned().unwrap_or_else(|| rat_int(0))
            } else {
                rat_int(0)
            };
            (e.endpoints(), value)
        });
        let sub = qosadm::feasibility::DemandVector::new(entries.collect::<Vec<_>>())?;
        let value = fractional_chromatic_index(&g, &sub)?;
        text.push_str(&format!(
            "accepted subdemand duration {}\n",
            format_rational(&value)
        ));
    }
    emit(&args.out, &text)
}

fn run_experiment_cmd(args: ExperimentArgs) -> Result<bool> {
    let name: ExperimentName = args.name.parse()?;
    let mut spec = ExperimentSpec::new(name).with_seed(args.seed);
    if let Some(instances) = args.instances {
        spec.instances = instances;
    }
    if let Some(n_values) = args.n_values {
        spec.n_values = n_values;
    }
    if let Some(d_values) = args.d_values {
        spec.d_values = d_values;
    }
    let report = run_experiment(&spec)?;
    print!("{}", report.human_table());
    if let Some(path) = &args.out {
        fs::write(path, report.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.all_pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => run_gen(args).map(|_| true),
        Command::Conflict(args) => run_conflict(args).map(|_| true),
        Command::Feas(args) => run_feas(args).map(|_| true),
        Command::Admit(args) => run_admit(args).map(|_| true),
        Command::Experiment(args) => run_experiment_cmd(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
