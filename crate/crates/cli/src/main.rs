//! `pf`: a command-line front end for matching theory on small graphs.
//!
//! Exit codes: 0 success, 1 negative mathematical answer (non-Pfaffian, no
//! witness, nothing found), 2 usage or input errors, 3 budget exhaustion.

use pfaffian_cli::{format, verify};

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use pfaffian_core::characterize::{
    find_witness, is_reducible_to_even_subdivision, SearchBounds, TargetKind,
};
use pfaffian_core::fixtures::{builtin_by_name, Fixture};
use pfaffian_core::graph::{subdivide_edge, Graph, VertexId};
use pfaffian_core::matching::{central_circuits, enumerate_one_factors, EnumBudget};
use pfaffian_core::nearbip::find_near_bipartite_pairs;
use pfaffian_core::orient::{clockwise_parity, sign_table};
use pfaffian_core::pfaffian::{
    find_intractable_set, find_pfaffian_orientation_with, is_pfaffian_orientation_with,
};
use pfaffian_core::{Edge, Error, Orientation};

use format::{
    certificate_json, cycle_text, factor_json, factor_text, parse_graph, parse_orientation,
    sign_str, sign_table_json, vertex_name, witness_json, write_graph, write_orientation,
};

#[derive(Parser)]
#[command(name = "pf", version, about = "Matching theory on small graphs: 1-factors, signs, Pfaffian orientations, near-bipartite structure and forbidden-structure witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) | Err(_) => Err(String::from("must be a positive integer")),
        Ok(v) => Ok(v),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(String::from("must be a positive integer")),
        Ok(v) => Ok(v),
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Input graph: a file path or builtin:<k33|gamma1|gamma2|gamma1_sec6|gamma2_sec6>
    input: String,
    /// Orientation file (`a <origin> <terminus>` lines); builtins default to
    /// their published orientation
    #[arg(long)]
    orientation: Option<PathBuf>,
    /// Reduction target
    #[arg(long, default_value = "k33")]
    target: String,
    /// Maximum number of odd-circuit contractions in searches
    #[arg(long, default_value_t = 5)]
    max_depth: usize,
    /// Node budget for searches
    #[arg(long, default_value_t = 1_000_000, value_parser = positive_u64)]
    budget: u64,
    /// Maximum intractable-set size
    #[arg(long, default_value_t = 8, value_parser = positive_usize)]
    subset_bound: usize,
    /// Vertex cap for circuit enumeration
    #[arg(long, default_value_t = 16, value_parser = positive_usize)]
    max_vertices: usize,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Worker threads for verification sweeps (output is independent of the
    /// worker count)
    #[arg(long, default_value_t = 1, value_parser = positive_usize)]
    jobs: usize,
}

#[derive(Args)]
struct SubdivideArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Edge to subdivide, as `u,v`
    #[arg(long)]
    edge: String,
    /// Replacement path length (odd lengths are even subdivisions)
    #[arg(long, default_value_t = 3)]
    length: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Worker threads (output is independent of the worker count)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List all 1-factors
    Matchings(CommonArgs),
    /// Sign table of the 1-factors under an orientation
    Signs(CommonArgs),
    /// Central circuits and their clockwise parities under an orientation
    Parity(CommonArgs),
    /// Decide the Pfaffian property; find an orientation or check a given one
    Check(CommonArgs),
    /// Near-bipartite certificates (edge pairs with bipartition and factor)
    Nearbip(CommonArgs),
    /// Search for a forbidden-structure witness
    Witness(CommonArgs),
    /// Search for a reduction to an even subdivision of the target
    Reduce(CommonArgs),
    /// Subdivide an edge and print the resulting graph
    Subdivide(SubdivideArgs),
    /// Run every built-in verification suite
    VerifyPaper(VerifyArgs),
}

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

struct Input {
    graph: Graph,
    labels: BTreeMap<VertexId, String>,
    fixture: Option<Fixture>,
}

fn usage_err(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn load_input(spec: &str) -> Result<Input, u8> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let fx = builtin_by_name(name).map_err(|_| usage_err(format!("unknown builtin '{name}'")))?;
        let labels = fx.labels.iter().map(|(&v, &c)| (v, c.to_string())).collect();
        return Ok(Input { graph: fx.graph.clone(), labels, fixture: Some(fx) });
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| usage_err(format!("cannot read '{spec}': {e}")))?;
    let parsed = parse_graph(&text).map_err(|e| usage_err(format!("{spec}: {e}")))?;
    Ok(Input { graph: parsed.graph, labels: parsed.labels, fixture: None })
}

fn load_orientation(args: &CommonArgs, input: &Input) -> Result<Orientation, u8> {
    if let Some(path) = &args.orientation {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage_err(format!("cannot read '{}': {e}", path.display())))?;
        return parse_orientation(&text, &input.graph)
            .map_err(|e| usage_err(format!("{}: {e}", path.display())));
    }
    if let Some(fx) = &input.fixture {
        return Ok(fx.orientation.clone());
    }
    Err(usage_err("this subcommand needs --orientation (or a builtin input)"))
}

fn core_err(e: Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
        other => usage_err(other),
    }
}

fn enum_budget(args: &CommonArgs) -> EnumBudget {
    EnumBudget {
        max_vertices: args.max_vertices,
        max_circuits: (args.budget as usize).max(2_000_000),
    }
}

fn search_bounds(args: &CommonArgs) -> SearchBounds {
    let d = SearchBounds::default();
    SearchBounds {
        max_depth: args.max_depth,
        node_budget: args.budget,
        scan_budget: d.scan_budget.max(args.budget),
        chordless_only: d.chordless_only,
    }
}

fn cmd_matchings(args: &CommonArgs) -> u8 {
    let input = match load_input(&args.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let factors = enumerate_one_factors(&input.graph);
    if args.json {
        println!("{}", json!(factors.iter().map(factor_json).collect::<Vec<_>>()));
    } else {
        for f in &factors {
            println!("{}", factor_text(f, &input.labels));
        }
    }
    if factors.is_empty() {
        EXIT_NO
    } else {
        EXIT_OK
    }
}

fn cmd_signs(args: &CommonArgs) -> u8 {
    let input = match load_input(&args.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let o = match load_orientation(args, &input) {
        Ok(o) => o,
        Err(code) => return code,
    };
    let table = match sign_table(&input.graph, &o) {
        Ok(t) => t,
        Err(Error::NoFactors) => {
            eprintln!("no 1-factors");
            return EXIT_NO;
        }
        Err(e) => return core_err(e),
    };
    if args.json {
        println!("{}", sign_table_json(&table));
    } else {
        let rendered: Vec<String> =
            table.rows.iter().map(|(f, _)| factor_text(f, &input.labels)).collect();
        let width = rendered.iter().map(String::len).max().unwrap_or(0);
        for (text, (_, s)) in rendered.iter().zip(&table.rows) {
            println!("{text:width$}  {}", sign_str(*s));
        }
    }
    EXIT_OK
}

fn cmd_parity(args: &CommonArgs) -> u8 {
    let input = match load_input(&args.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let o = match load_orientation(args, &input) {
        Ok(o) => o,
        Err(code) => return code,
    };
    let circuits = match central_circuits(&input.graph, &enum_budget(args)) {
        Ok(c) => c,
        Err(e) => return core_err(e),
    };
    let mut rows = Vec::new();
    for c in &circuits {
        match clockwise_parity(c, &o) {
            Ok(p) => rows.push((c, p)),
            Err(e) => return core_err(e),
        }
    }
    if args.json {
        let arr: Vec<_> = rows
            .iter()
            .map(|(c, p)| json!({"circuit": c.sense_or_canonical(), "parity": p.to_string()}))
            .collect();
        println!("{}", json!(arr));
    } else {
        for (c, p) in &rows {
            println!("{}: clockwise {p}", cycle_text(c, &input.labels));
        }
    }
    EXIT_OK
}

fn cmd_check(args: &CommonArgs) -> u8 {
    let input = match load_input(&args.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let budget = enum_budget(args);
    if args.orientation.is_some() {
        let o = match load_orientation(args, &input) {
            Ok(o) => o,
            Err(code) => return code,
        };
        return match is_pfaffian_orientation_with(&input.graph, &o, &budget) {
            Ok(true) => {
                println!("{}", if args.json { "{\"pfaffian_orientation\":true}".into() } else { "Pfaffian orientation".to_string() });
                EXIT_OK
            }
            Ok(false) => {
                println!("{}", if args.json { "{\"pfaffian_orientation\":false}".into() } else { "not a Pfaffian orientation".to_string() });
                EXIT_NO
            }
            Err(e) => core_err(e),
        };
    }
    match find_pfaffian_orientation_with(&input.graph, &budget) {
        Ok(Some(o)) => {
            if args.json {
                println!(
                    "{}",
                    json!({"pfaffian": true, "orientation": o.pairs().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>()})
                );
            } else {
                println!("Pfaffian");
                print!("{}", write_orientation(&o));
            }
            EXIT_OK
        }
        Ok(None) => {
            // Report an intractable set as the negative certificate; its
            // existence does not depend on the orientation used.
            let o = Orientation::low_to_high(&input.graph);
            let set = match find_intractable_set(&input.graph, &o, args.subset_bound, &budget) {
                Ok(s) => s,
                Err(e) => return core_err(e),
            };
            if args.json {
                let set_json = set.as_ref().map(|s| {
                    s.circuits
                        .iter()
                        .zip(&s.parities)
                        .map(|(ac, p)| {
                            json!({"circuit": ac.cycle.sense_or_canonical(), "parity": p.to_string()})
                        })
                        .collect::<Vec<_>>()
                });
                println!("{}", json!({"pfaffian": false, "intractable_set": set_json}));
            } else {
                println!("non-Pfaffian");
                match &set {
                    Some(s) => {
                        for (ac, p) in s.circuits.iter().zip(&s.parities) {
                            println!(
                                "intractable: {} clockwise {p}",
                                cycle_text(&ac.cycle, &input.labels)
                            );
                        }
                    }
                    None => println!(
                        "no intractable set of size at most {} (raise --subset-bound)",
                        args.subset_bound
                    ),
                }
            }
            EXIT_NO
        }
        Err(e) => core_err(e),
    }
}

fn cmd_nearbip(args: &CommonArgs) -> u8 {
    let input = match load_input(&args.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let certs = match find_near_bipartite_pairs(&input.graph) {
        Ok(c) => c,
        Err(e) => return core_err(e),
    };
    if args.json {
        println!("{}", json!(certs.iter().map(certificate_json).collect::<Vec<_>>()));
    } else {
        for c in &certs {
            println!(
                "e1=({},{}) e2=({},{}) factor={}",
                vertex_name(&input.labels, c.e1.lo()),
                vertex_name(&input.labels, c.e1.hi()),
                vertex_name(&input.labels, c.e2.lo()),
                vertex_name(&input.labels, c.e2.hi()),
                factor_text(&c.factor, &input.labels),
            );
        }
    }
    if certs.is_empty() {
        EXIT_NO
    } else {
        EXIT_OK
    }
}

fn cmd_witness(args: &CommonArgs) -> u8 {
    let input = match load_input(&args.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    match find_witness(&input.graph, &search_bounds(args)) {
        Ok(Some(w)) => {
            println!("{}", witness_json(&w));
            EXIT_OK
        }
        Ok(None) => {
            if args.json {
                println!("null");
            } else {
                println!("no witness found within bounds");
            }
            EXIT_NO
        }
        Err(e) => core_err(e),
    }
}

fn cmd_reduce(args: &CommonArgs) -> u8 {
    let input = match load_input(&args.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let target = match TargetKind::parse(&args.target) {
        Ok(t) => t,
        Err(_) => return usage_err(format!("unknown target '{}'", args.target)),
    };
    match is_reducible_to_even_subdivision(&input.graph, target, &search_bounds(args)) {
        Ok(Some(steps)) => {
            if args.json {
                println!(
                    "{}",
                    json!({
                        "target": target.name(),
                        "steps": steps.iter().map(|s| json!(s.circuit.sense_or_canonical())).collect::<Vec<_>>(),
                    })
                );
            } else {
                for s in &steps {
                    println!("contract {}", cycle_text(&s.circuit, &input.labels));
                }
            }
            EXIT_OK
        }
        Ok(None) => {
            if args.json {
                println!("null");
            } else {
                println!("not reducible to an even subdivision of {} within bounds", target.name());
            }
            EXIT_NO
        }
        Err(e) => core_err(e),
    }
}

fn cmd_subdivide(args: &SubdivideArgs) -> u8 {
    let input = match load_input(&args.common.input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let Some((a, b)) = args.edge.split_once(',') else {
        return usage_err("--edge expects 'u,v'");
    };
    let (Ok(u), Ok(v)) = (a.trim().parse::<VertexId>(), b.trim().parse::<VertexId>()) else {
        return usage_err("--edge expects two vertex ids");
    };
    if u == v {
        return usage_err("--edge endpoints must differ");
    }
    if args.length == 0 {
        return usage_err("--length must be positive");
    }
    match subdivide_edge(&input.graph, Edge::new(u, v), args.length) {
        Ok(g) => {
            print!("{}", write_graph(&g, &input.labels));
            EXIT_OK
        }
        Err(e) => usage_err(e),
    }
}

fn main() -> ExitCode {
    // Die quietly on closed pipes, like other line-oriented tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Matchings(a) => cmd_matchings(a),
        Command::Signs(a) => cmd_signs(a),
        Command::Parity(a) => cmd_parity(a),
        Command::Check(a) => cmd_check(a),
        Command::Nearbip(a) => cmd_nearbip(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Subdivide(a) => cmd_subdivide(a),
        Command::VerifyPaper(a) => verify::cmd_verify_paper(a.jobs, a.json),
    };
    ExitCode::from(code)
}
