//! Command-line front end for power-graph degree queries.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 spec parse error,
//! 3 element/spec mismatch, 4 enumeration budget exceeded. All numeric JSON
//! payloads are decimal strings so arbitrary-precision values survive
//! round-trips.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use powergraph_core::{
    build_directed, canonicalize, degree_histogram, degree_triple, edge_count, export, is_complete,
    parse_group_spec, verify, BudgetError, CanonicalAbelianGroup, CoordinateMap, DegreeHistogram,
    ElementError, Nat, ParseError, VerifyReport,
};

const DEFAULT_BUDGET: u64 = 65536;

#[derive(Parser)]
#[command(
    name = "powergraph",
    version,
    about = "Vertex degrees in power graphs of finite abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree of one element: order, order type, directed degrees, undirected degree
    Degree(DegreeArgs),
    /// Degree histogram of the whole group, computed without enumerating elements
    Histogram(GroupArgs),
    /// Number of edges in the power graph
    Edges(GroupArgs),
    /// Whether the power graph is complete
    Complete(GroupArgs),
    /// Check the degree formulas against the brute-force oracle graph
    Verify(VerifyArgs),
    /// Emit the brute-force power graph as DOT or an edge list
    Export(ExportArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Group spec, e.g. Z4xZ2 or 12,3
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DegreeArgs {
    /// Group spec, e.g. Z4xZ2 or 12,3
    #[arg(long)]
    group: String,
    /// Element as comma-separated residues, one per factor
    #[arg(long, allow_hyphen_values = true)]
    element: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify a single group
    #[arg(
        long,
        required_unless_present = "order_max",
        conflicts_with = "order_max"
    )]
    group: Option<String>,
    /// Sweep every abelian group of order up to this bound
    #[arg(long)]
    order_max: Option<u64>,
    /// Largest group order the oracle may enumerate
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Print one comparison line per element
    #[arg(short, long)]
    verbose: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    /// Group spec, e.g. Z4xZ2 or 12,3
    #[arg(long)]
    group: String,
    #[arg(long, value_enum)]
    format: ExportFormat,
    /// Largest group order the oracle may enumerate
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Edges,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Element(String),
    #[error("{0}")]
    Budget(#[from] BudgetError),
}

impl From<ElementError> for CliError {
    fn from(e: ElementError) -> Self {
        CliError::Element(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Element(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((stdout, code)) => {
            print!("{stdout}");
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(String, u8), CliError> {
    match command {
        Command::Degree(args) => cmd_degree(args).map(|out| (out, 0)),
        Command::Histogram(args) => cmd_histogram(args).map(|out| (out, 0)),
        Command::Edges(args) => cmd_edges(args).map(|out| (out, 0)),
        Command::Complete(args) => cmd_complete(args).map(|out| (out, 0)),
        Command::Verify(args) => cmd_verify(args),
        Command::Export(args) => cmd_export(args).map(|out| (out, 0)),
    }
}

fn parse_group(spec: &str) -> Result<(CanonicalAbelianGroup, CoordinateMap), CliError> {
    let parsed = parse_group_spec(spec)?;
    Ok(canonicalize(&parsed))
}

/// Decimal residues, one per factor, reduced modulo their factors.
fn parse_residues(text: &str, factors: &[u64]) -> Result<Vec<u64>, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != factors.len() {
        return Err(ElementError::ResidueCountMismatch {
            expected: factors.len(),
            actual: parts.len(),
        }
        .into());
    }
    parts
        .iter()
        .zip(factors)
        .enumerate()
        .map(|(index, (part, &factor))| {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ElementError::InvalidResidue {
                    index,
                    text: (*part).to_string(),
                }
                .into());
            }
            let value: Nat = part.parse().expect("digit runs parse");
            Ok(u64::try_from(value % Nat::from(factor)).expect("reduced below a u64 factor"))
        })
        .collect()
}

fn cmd_degree(args: DegreeArgs) -> Result<String, CliError> {
    let (group, map) = parse_group(&args.group)?;
    let residues = parse_residues(&args.element, map.factors())?;
    let element = map.map_element(&residues)?;

    let order_type = group.order_type(&element);
    let triple = degree_triple::<Nat>(&group, &element);
    let degree = triple.undirected();
    let element_order = group.element_order::<Nat>(&element);
    let element_echo = residues
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");

    Ok(match args.format {
        Format::Text => {
            let type_echo = group
                .primes()
                .zip(order_type.per_prime())
                .map(|(p, ts)| {
                    let ts: Vec<String> = ts.iter().map(u32::to_string).collect();
                    format!("{p}:[{}]", ts.join(","))
                })
                .collect::<Vec<_>>()
                .join(" ");
            format!(
                "group: {}\ncanonical: {}\norder: {}\nelement: {}\nelement order: {}\n\
                 order type: {}\nout-degree: {}\nin-degree: {}\nbidirectional: {}\ndegree: {}\n",
                args.group.trim(),
                group.canonical_name(),
                group.order::<Nat>(),
                element_echo,
                element_order,
                type_echo,
                triple.out_deg,
                triple.in_deg,
                triple.bidir,
                degree
            )
        }
        Format::Json => {
            let order_type_json: Map<String, Value> = group
                .primes()
                .zip(order_type.per_prime())
                .map(|(p, ts)| {
                    (
                        p.to_string(),
                        Value::from(ts.iter().map(u32::to_string).collect::<Vec<_>>()),
                    )
                })
                .collect();
            let payload = json!({
                "group": args.group.trim(),
                "canonical": group.canonical_name(),
                "order": group.order::<Nat>().to_string(),
                "element": element_echo,
                "element_order": element_order.to_string(),
                "order_type": order_type_json,
                "out_degree": triple.out_deg.to_string(),
                "in_degree": triple.in_deg.to_string(),
                "bidirectional": triple.bidir.to_string(),
                "degree": degree.to_string(),
            });
            format!("{payload}\n")
        }
        Format::Csv => format!(
            "out_degree,in_degree,bidirectional,degree\n{},{},{},{}\n",
            triple.out_deg, triple.in_deg, triple.bidir, degree
        ),
    })
}

fn cmd_histogram(args: GroupArgs) -> Result<String, CliError> {
    let (group, _) = parse_group(&args.group)?;
    let histogram = degree_histogram::<Nat>(&group);
    Ok(render_histogram(&histogram, args.format))
}

fn render_histogram(histogram: &DegreeHistogram<Nat>, format: Format) -> String {
    match format {
        // ascending by degree; one `degree,count` row per distinct degree
        Format::Text | Format::Csv => {
            let mut out = String::new();
            for (degree, count) in histogram.counts() {
                writeln!(out, "{degree},{count}").unwrap();
            }
            out
        }
        Format::Json => {
            let map: Map<String, Value> = histogram
                .counts()
                .iter()
                .map(|(d, c)| (d.to_string(), Value::from(c.to_string())))
                .collect();
            format!("{}\n", Value::Object(map))
        }
    }
}

fn cmd_edges(args: GroupArgs) -> Result<String, CliError> {
    let (group, _) = parse_group(&args.group)?;
    let edges = edge_count::<Nat>(&group);
    Ok(match args.format {
        Format::Text | Format::Csv => format!("{edges}\n"),
        Format::Json => {
            let payload = json!({
                "group": args.group.trim(),
                "canonical": group.canonical_name(),
                "edge_count": edges.to_string(),
            });
            format!("{payload}\n")
        }
    })
}

fn cmd_complete(args: GroupArgs) -> Result<String, CliError> {
    let (group, _) = parse_group(&args.group)?;
    let complete = is_complete(&group);
    Ok(match args.format {
        Format::Text | Format::Csv => format!("{complete}\n"),
        Format::Json => {
            let payload = json!({
                "group": args.group.trim(),
                "canonical": group.canonical_name(),
                "complete": complete,
            });
            format!("{payload}\n")
        }
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<(String, u8), CliError> {
    let groups: Vec<CanonicalAbelianGroup> = match (&args.group, args.order_max) {
        (Some(spec), _) => vec![parse_group(spec)?.0],
        (None, Some(max)) => powergraph_core::classify::abelian_groups_up_to(max),
        (None, None) => unreachable!("clap requires one of --group / --order-max"),
    };

    let mut out = String::new();
    let mut total_mismatches = 0usize;
    let mut all_ok = true;
    let mut group_reports = Vec::new();

    for group in &groups {
        let report: VerifyReport<Nat> = verify(group, args.budget)?;
        total_mismatches += report.mismatches();
        all_ok &= report.is_ok();
        if args.format == Format::Text {
            render_verify_text(&mut out, &report, args.verbose);
        }
        group_reports.push(report);
    }

    match args.format {
        Format::Text => {
            let status = if all_ok { "ok" } else { "FAILED" };
            writeln!(
                out,
                "checked {} group{}: {total_mismatches} mismatches ({status})",
                groups.len(),
                if groups.len() == 1 { "" } else { "s" }
            )
            .unwrap();
        }
        Format::Csv => {
            out.push_str("group,order,mismatches,edges_formula,edges_oracle,histograms_match\n");
            for report in &group_reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    report.group_name,
                    report.order,
                    report.mismatches(),
                    report.formula_edge_count,
                    report.oracle_edge_count,
                    report.formula_histogram == report.oracle_histogram
                )
                .unwrap();
            }
        }
        Format::Json => {
            let groups_json: Vec<Value> = group_reports
                .iter()
                .map(|report| {
                    json!({
                        "group": report.group_name,
                        "order": report.order.to_string(),
                        "mismatches": report.mismatches().to_string(),
                        "edge_count_formula": report.formula_edge_count.to_string(),
                        "edge_count_oracle": report.oracle_edge_count.to_string(),
                        "histograms_match": report.formula_histogram == report.oracle_histogram,
                    })
                })
                .collect();
            let payload = json!({
                "groups": groups_json,
                "total_mismatches": total_mismatches.to_string(),
                "ok": all_ok,
            });
            writeln!(out, "{payload}").unwrap();
        }
    }

    Ok((out, u8::from(!all_ok)))
}

fn render_verify_text(out: &mut String, report: &VerifyReport<Nat>, verbose: bool) {
    writeln!(
        out,
        "{}: order {}, {} mismatches, edges {}/{}, histograms {}",
        report.group_name,
        report.order,
        report.mismatches(),
        report.formula_edge_count,
        report.oracle_edge_count,
        if report.formula_histogram == report.oracle_histogram {
            "match"
        } else {
            "DIFFER"
        }
    )
    .unwrap();
    if verbose {
        for check in &report.checks {
            writeln!(
                out,
                "  [{}] {}: formula {} deg={} | oracle {} deg={} {}",
                check.index,
                check.element,
                check.formula,
                check.formula_degree,
                check.oracle,
                check.oracle_degree,
                if check.matches() { "ok" } else { "MISMATCH" }
            )
            .unwrap();
        }
    }
}

fn cmd_export(args: ExportArgs) -> Result<String, CliError> {
    let (group, map) = parse_group(&args.group)?;
    let directed = build_directed(&group, args.budget)?;
    let undirected = directed.to_undirected();
    Ok(match args.format {
        ExportFormat::Dot => {
            // vertices labeled by user-coordinate residue tuples
            let labels: Vec<String> = directed
                .vertices()
                .iter()
                .map(|e| {
                    let residues = map
                        .unmap_element(e)
                        .expect("vertices share the group shape");
                    residues
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            export::render_dot(&undirected, &labels, &group.canonical_name())
        }
        ExportFormat::Edges => export::render_edge_list(&undirected),
    })
}
