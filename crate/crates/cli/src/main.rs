//! Command-line front end for the interaction toolkit.
//!
//! Interaction arguments accept a JSON file path, `-` for stdin, or a
//! `zoo:<name>[:p1,p2]` pseudo-path naming a built-in. Exit codes: 0 ok,
//! 1 domain error, 2 resource guard, 3 I/O; errors are a single
//! `error: <kind>: <message>` line on stderr.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use interactions::{
    box_product, check_iq_bounded, classify, compute_consv, identify, is_exchangeable,
    is_separable, parse_family, wedge, zoo, Configuration, Error, FamilyGraph, Interaction,
    IqVerdict, WedgeSpec, DEFAULT_BUDGET, DEFAULT_FAMILY,
};
use serde::{Deserialize, Serialize};

const BUDGET_ENV: &str = "INTERACTIONS_BUDGET";

#[derive(Parser)]
#[command(
    name = "interactions",
    version,
    about = "Analyze, classify, combine, and check interactions",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conserved quantities, predicates, and components of one interaction
    Analyze {
        /// Interaction: file path, '-' for stdin, or zoo:<name>[:p1,p2]
        spec: String,
        /// Also locate the interaction in the small-state class catalog
        #[arg(long)]
        identify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the equivalence classes on kappa + 1 states
    Classify {
        kappa: usize,
        /// Keep only classes whose conserved quantities separate the states
        #[arg(long)]
        separable: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bounded irreducibility check over a family of site graphs
    Iq {
        /// Interaction: file path, '-' for stdin, or zoo:<name>[:p1,p2]
        spec: String,
        /// Graph family, e.g. paths:2..5,cycles:3..4,star:4,complete:3
        #[arg(long, default_value = DEFAULT_FAMILY)]
        graphs: String,
        /// Largest configuration count per graph (overrides INTERACTIONS_BUDGET)
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Wedge sum or box product of two interactions
    Combine(CombineArgs),
    /// Render the associated graph as DOT, components labeled by conserved values
    ExportDot {
        /// Interaction: file path, '-' for stdin, or zoo:<name>[:p1,p2]
        spec: String,
        /// Output file (stdout when absent)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Built-in interactions
    #[command(subcommand)]
    Zoo(ZooCommand),
}

#[derive(Args)]
#[command(group(
    clap::ArgGroup::new("operation").required(true).args(["wedge", "box_factors"])
))]
struct CombineArgs {
    /// Wedge sum: glue the two interactions at one state each
    #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"])]
    wedge: Option<Vec<String>>,
    /// Box product: product states, one factor moves per step
    #[arg(long = "box", num_args = 2, value_names = ["LEFT", "RIGHT"])]
    box_factors: Option<Vec<String>>,
    /// State of the left factor glued by the wedge
    #[arg(long, default_value_t = 0)]
    base_left: usize,
    /// State of the right factor glued by the wedge
    #[arg(long, default_value_t = 0)]
    base_right: usize,
    /// Output file (stdout when absent)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ZooCommand {
    /// Names, parameters, and one-line descriptions
    List,
    /// Write one built-in interaction as JSON
    Build {
        name: String,
        params: Vec<usize>,
        /// Output file (stdout when absent)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A command failure, split by exit code.
#[derive(Debug)]
enum Failure {
    Domain(String),
    Guard(String),
    Io(String),
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Domain(_) => "domain",
            Failure::Guard(_) => "guard",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Guard(m) | Failure::Io(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Guard(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("bad arguments")
                .trim_start_matches("error: ");
            eprintln!("error: domain: {first}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}: {}", f.kind(), f.message().replace('\n', "; "));
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze { spec, identify, format } => cmd_analyze(&spec, identify, format),
        Command::Classify { kappa, separable, format } => cmd_classify(kappa, separable, format),
        Command::Iq { spec, graphs, budget, format } => cmd_iq(&spec, &graphs, budget, format),
        Command::Combine(args) => cmd_combine(args),
        Command::ExportDot { spec, output } => cmd_export_dot(&spec, output.as_deref()),
        Command::Zoo(ZooCommand::List) => cmd_zoo_list(),
        Command::Zoo(ZooCommand::Build { name, params, output }) => {
            cmd_zoo_build(&name, &params, output.as_deref())
        }
    }
}

// ---------------------------------------------------------------------------
// input plumbing

/// Read an interaction from a file path, stdin (`-`), or a `zoo:` pseudo-path.
fn load_interaction(spec: &str) -> Result<Interaction, Failure> {
    if let Some(rest) = spec.strip_prefix("zoo:") {
        let (name, params) = parse_zoo_spec(rest)?;
        return zoo::build(name, &params).map_err(Failure::from);
    }
    let text = if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Io(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(spec).map_err(|e| Failure::Io(format!("cannot read {spec}: {e}")))?
    };
    Interaction::from_json_str(&text).map_err(Failure::from)
}

/// Split `name[:p1,p2,...]` into the zoo name and numeric parameters.
fn parse_zoo_spec(rest: &str) -> Result<(&str, Vec<usize>), Failure> {
    let (name, raw) = match rest.split_once(':') {
        Some((n, p)) => (n, p),
        None => (rest, ""),
    };
    let mut params = Vec::new();
    if !raw.is_empty() {
        for piece in raw.split(',') {
            let p = piece.trim().parse().map_err(|_| {
                Failure::Domain(format!("zoo parameter {piece:?} is not an unsigned integer"))
            })?;
            params.push(p);
        }
    }
    Ok((name, params))
}

/// Budget precedence: flag, then environment variable, then the default.
fn resolve_budget(flag: Option<u64>, env: Option<&str>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env {
        None => Ok(DEFAULT_BUDGET),
        Some(raw) => raw.trim().parse().map_err(|_| {
            Failure::Domain(format!("{BUDGET_ENV} must be an unsigned integer, got {raw:?}"))
        }),
    }
}

/// Write to the path, or to stdout when no path was given.
fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// analyze

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct AnalysisReport {
    states: Vec<String>,
    /// Directed edges, self-loops excluded.
    edge_count: usize,
    dim: usize,
    /// Reduced basis rows, exact rational entries.
    basis: Vec<Vec<String>>,
    /// The same rows scaled to primitive integer vectors.
    integer_basis: Vec<Vec<String>>,
    separable: bool,
    exchangeable: bool,
    components: Vec<ComponentReport>,
    /// Catalog class name, when identification was requested and the class
    /// is a named one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    class: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct ComponentReport {
    vertices: Vec<[usize; 2]>,
    /// Conserved value tuple shared by every vertex of the cell, as sums of
    /// the integer basis rows.
    values: Vec<String>,
}

/// Conserved values of a vertex under the integer-scaled basis rows.
fn integer_values(scaled: &[Vec<interactions::BigInt>], v: (usize, usize)) -> Vec<String> {
    scaled.iter().map(|row| (&row[v.0] + &row[v.1]).to_string()).collect()
}

fn build_analysis(inter: &Interaction, want_identify: bool) -> Result<AnalysisReport, Failure> {
    let basis = compute_consv(inter);
    let scaled = basis.integer_vectors();
    let components = inter
        .components()
        .cells()
        .iter()
        .map(|cell| ComponentReport {
            vertices: cell.iter().map(|&(a, b)| [a, b]).collect(),
            values: integer_values(&scaled, cell[0]),
        })
        .collect();
    let class = if want_identify {
        identify(inter).map_err(Failure::from)?.name
    } else {
        None
    };
    Ok(AnalysisReport {
        states: inter.states().labels().to_vec(),
        edge_count: inter.edge_count(),
        dim: basis.dim(),
        basis: basis
            .vectors()
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect(),
        integer_basis: basis
            .integer_vectors()
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect(),
        separable: is_separable(inter),
        exchangeable: is_exchangeable(inter),
        components,
        class,
    })
}

fn cmd_analyze(spec: &str, want_identify: bool, format: Format) -> Result<(), Failure> {
    let inter = load_interaction(spec)?;
    let report = build_analysis(&inter, want_identify)?;
    match format {
        Format::Json => emit(&to_json(&report), None),
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "states ({}): {}\n",
                report.states.len(),
                report.states.join(" ")
            ));
            out.push_str(&format!("directed edges (loops omitted): {}\n", report.edge_count));
            out.push_str(&format!("conserved dimension: {}\n", report.dim));
            if !report.integer_basis.is_empty() {
                out.push_str("basis rows (integer form):\n");
                for row in &report.integer_basis {
                    out.push_str(&format!("  ({})\n", row.join(", ")));
                }
            }
            out.push_str(&format!("separable: {}\n", yesno(report.separable)));
            out.push_str(&format!("exchangeable: {}\n", yesno(report.exchangeable)));
            out.push_str(&format!("components ({}):\n", report.components.len()));
            for c in &report.components {
                let vs: Vec<String> = c
                    .vertices
                    .iter()
                    .map(|&[a, b]| format!("({},{})", report.states[a], report.states[b]))
                    .collect();
                out.push_str(&format!("  values ({}): {}\n", c.values.join(", "), vs.join(" ")));
            }
            if want_identify {
                match &report.class {
                    Some(name) => out.push_str(&format!("class: {name}\n")),
                    None => out.push_str("class: (unnamed)\n"),
                }
            }
            emit(&out, None)
        }
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// ---------------------------------------------------------------------------
// classify

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct ClassifyReport {
    kappa: usize,
    separable_only: bool,
    total: usize,
    /// Classes per conserved dimension, indexed by dimension.
    dim_counts: Vec<usize>,
    classes: Vec<ClassReport>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct ClassReport {
    dim: usize,
    separable: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    name: Option<String>,
    representative: InteractionDoc,
}

/// The interchange shape of an interaction: full symmetric closure, sorted,
/// self-loops omitted.
#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct InteractionDoc {
    states: Vec<String>,
    edges: Vec<[[usize; 2]; 2]>,
}

impl From<&Interaction> for InteractionDoc {
    fn from(inter: &Interaction) -> Self {
        InteractionDoc {
            states: inter.states().labels().to_vec(),
            edges: inter
                .edges()
                .filter(|(u, v)| u != v)
                .map(|&((a, b), (c, d))| [[a, b], [c, d]])
                .collect(),
        }
    }
}

fn cmd_classify(kappa: usize, separable_only: bool, format: Format) -> Result<(), Failure> {
    let catalog = classify(kappa, separable_only).map_err(Failure::from)?;
    let report = ClassifyReport {
        kappa,
        separable_only,
        total: catalog.len(),
        dim_counts: catalog.dim_counts(),
        classes: catalog
            .classes
            .iter()
            .map(|c| ClassReport {
                dim: c.dim,
                separable: c.separable,
                name: c.name.clone(),
                representative: InteractionDoc::from(&c.representative),
            })
            .collect(),
    };
    match format {
        Format::Json => emit(&to_json(&report), None),
        Format::Text => {
            let mut out = String::new();
            out.push_str("class  dim  separable  edges  name\n");
            for (i, c) in report.classes.iter().enumerate() {
                out.push_str(&format!(
                    "{:>5}  {:>3}  {:>9}  {:>5}  {}\n",
                    i,
                    c.dim,
                    yesno(c.separable),
                    c.representative.edges.len() / 2,
                    c.name.as_deref().unwrap_or("-")
                ));
            }
            let by_dim: Vec<String> = report
                .dim_counts
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &n)| n > 0)
                .map(|(d, n)| format!("{d}:{n}"))
                .collect();
            out.push_str(&format!(
                "{} class(es) on {} states (by dim: {})\n",
                report.total,
                kappa + 1,
                by_dim.join(", ")
            ));
            emit(&out, None)
        }
    }
}

// ---------------------------------------------------------------------------
// iq

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct IqJsonReport {
    derived: DerivedDoc,
    rows: Vec<IqRowDoc>,
    verdict: IqVerdictDoc,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct DerivedDoc {
    separable: bool,
    exchangeable: bool,
    /// Two states no conserved quantity tells apart, when any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    separability_witness: Option<[usize; 2]>,
    /// A pair that cannot reach its own swap, when any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    exchangeability_witness: Option<[usize; 2]>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct IqRowDoc {
    graph: FamilyGraph,
    configs: u64,
    components: usize,
    fibers: usize,
    matched: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
#[serde(tag = "status", rename_all = "lowercase")]
enum IqVerdictDoc {
    Pass,
    Fail {
        graph: FamilyGraph,
        witness: (Configuration, Configuration),
    },
}

fn cmd_iq(spec: &str, graphs: &str, budget: Option<u64>, format: Format) -> Result<(), Failure> {
    let inter = load_interaction(spec)?;
    let family = parse_family(graphs).map_err(Failure::from)?;
    let budget = resolve_budget(budget, std::env::var(BUDGET_ENV).ok().as_deref())?;
    let report = check_iq_bounded(&inter, &family, budget).map_err(Failure::from)?;
    let doc = IqJsonReport {
        derived: DerivedDoc {
            separable: report.derived.separable,
            exchangeable: report.derived.exchangeable,
            separability_witness: report.derived.separability_witness.map(|(s, t)| [s, t]),
            exchangeability_witness: report.derived.exchangeability_witness.map(|(s, t)| [s, t]),
        },
        rows: report
            .rows
            .iter()
            .map(|r| IqRowDoc {
                graph: r.graph,
                configs: r.configs,
                components: r.components,
                fibers: r.fibers,
                matched: r.matched,
            })
            .collect(),
        verdict: match &report.verdict {
            IqVerdict::Pass => IqVerdictDoc::Pass,
            IqVerdict::Fail { graph, witness } => IqVerdictDoc::Fail {
                graph: *graph,
                witness: witness.clone(),
            },
        },
    };
    match format {
        Format::Json => emit(&to_json(&doc), None),
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "separable: {}{}\n",
                yesno(doc.derived.separable),
                doc.derived
                    .separability_witness
                    .map(|[s, t]| format!(" (states {s} and {t} are indistinguishable)"))
                    .unwrap_or_default()
            ));
            out.push_str(&format!(
                "exchangeable: {}{}\n",
                yesno(doc.derived.exchangeable),
                doc.derived
                    .exchangeability_witness
                    .map(|[s, t]| format!(" (({s},{t}) cannot reach ({t},{s}))"))
                    .unwrap_or_default()
            ));
            if !doc.rows.is_empty() {
                out.push_str("graph         configs  components  fibers  match\n");
                for r in &doc.rows {
                    out.push_str(&format!(
                        "{:<12} {:>8}  {:>10}  {:>6}  {}\n",
                        r.graph.to_string(),
                        r.configs,
                        r.components,
                        r.fibers,
                        yesno(r.matched)
                    ));
                }
            }
            match &doc.verdict {
                IqVerdictDoc::Pass => {
                    out.push_str("verdict: PASS (certifies the tested family only)\n");
                }
                IqVerdictDoc::Fail { graph, witness } => {
                    out.push_str(&format!(
                        "verdict: FAIL on {graph}: {} and {} share conserved sums but cannot reach each other\n",
                        witness.0, witness.1
                    ));
                }
            }
            emit(&out, None)
        }
    }
}

// ---------------------------------------------------------------------------
// combine / export / zoo

fn cmd_combine(args: CombineArgs) -> Result<(), Failure> {
    let result = if let Some(specs) = &args.wedge {
        let left = load_interaction(&specs[0])?;
        let right = load_interaction(&specs[1])?;
        wedge(&WedgeSpec {
            left,
            right,
            base_left: args.base_left,
            base_right: args.base_right,
        })
        .map_err(Failure::from)?
    } else {
        let specs = args.box_factors.as_ref().expect("clap enforces the operation group");
        let left = load_interaction(&specs[0])?;
        let right = load_interaction(&specs[1])?;
        box_product(&left, &right).map_err(Failure::from)?
    };
    let mut text = result.to_json_string();
    text.push('\n');
    emit(&text, args.output.as_deref())
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text of the associated graph: one node per ordered state pair, one
/// undirected edge per move, components grouped into clusters labeled with
/// their conserved value tuples.
fn render_dot(inter: &Interaction) -> String {
    let scaled = compute_consv(inter).integer_vectors();
    let labels = inter.states().labels();
    let node = |v: (usize, usize)| dot_quote(&format!("({},{})", labels[v.0], labels[v.1]));
    let mut out = String::from("graph interaction {\n");
    out.push_str("  node [shape=box];\n");
    for (i, cell) in inter.components().cells().iter().enumerate() {
        let values = integer_values(&scaled, cell[0]);
        out.push_str(&format!("  subgraph cluster_{i} {{\n"));
        out.push_str(&format!(
            "    label={};\n",
            dot_quote(&format!("values ({})", values.join(", ")))
        ));
        for &v in cell {
            out.push_str(&format!("    {};\n", node(v)));
        }
        out.push_str("  }\n");
    }
    for &(u, v) in inter.edges() {
        if u < v {
            out.push_str(&format!("  {} -- {};\n", node(u), node(v)));
        }
    }
    out.push_str("}\n");
    out
}

fn cmd_export_dot(spec: &str, output: Option<&Path>) -> Result<(), Failure> {
    let inter = load_interaction(spec)?;
    emit(&render_dot(&inter), output)
}

fn cmd_zoo_list() -> Result<(), Failure> {
    let entries = zoo::entries();
    let shown: Vec<(String, &str)> = entries
        .iter()
        .map(|e| {
            let mut head = e.name.to_string();
            for p in e.params.split_whitespace() {
                head.push_str(&format!(" <{p}>"));
            }
            (head, e.description)
        })
        .collect();
    let width = shown.iter().map(|(h, _)| h.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (head, desc) in &shown {
        out.push_str(&format!("{head:<width$}  {desc}\n"));
    }
    emit(&out, None)
}

fn cmd_zoo_build(name: &str, params: &[usize], output: Option<&Path>) -> Result<(), Failure> {
    let inter = zoo::build(name, params).map_err(Failure::from)?;
    let mut text = inter.to_json_string();
    text.push('\n');
    emit(&text, output)
}

// ---------------------------------------------------------------------------
