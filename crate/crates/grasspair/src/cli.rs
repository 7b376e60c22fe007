//! Command-line front door: enumeration dumps, graph exports, catalog
//! listings, verification driver, and summary statistics.  All output is
//! deterministic for a given argument vector; randomized checks take an
//! explicit seed.
//!
//! Exit codes: 0 on success (including skipped checks), 1 when a
//! verification check fails, 2 on unknown subcommands or invalid parameters.

use std::io::{self, Write};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::FieldTable;
use crate::grassmann::{gaussian_binomial, Ambient, Grassmannian, Subspace};
use crate::pairs::{
    build_graph, build_graph_with_ceiling, PairSpace, Relation, RelationGraph, SpaceKind,
};
use crate::transforms::{catalog, PairTransformation, Shape, DEFAULT_CATALOG_CEILING};
use crate::verify::cliques::{maximal_cliques, DEFAULT_CLIQUE_VERTEX_CEILING};
use crate::verify::{run_named_check, CheckConfig, VerificationReport};

#[derive(Parser)]
#[command(
    name = "grasspair",
    version,
    about = "Exact finite-geometry engine for Grassmannians and complementary subspace pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for parallel loops (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

/// Parameters of the ambient space V = GF(q)^n with distinguished dimension k.
#[derive(Args)]
struct SpaceArgs {
    /// Ambient dimension n.
    #[arg(long)]
    n: usize,
    /// Distinguished subspace dimension k, 1 <= k <= n-1.
    #[arg(long)]
    k: usize,
    /// Field order q (a prime power).
    #[arg(long)]
    q: u64,
    /// Reduction polynomial for non-prime q: comma-separated base-p
    /// coefficients in ascending degree order, e.g. `1,1,1` for x^2+x+1.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u8>>,
}

impl SpaceArgs {
    fn ambient(&self) -> Result<Ambient> {
        let field = FieldTable::from_order(self.q, self.poly.as_deref())?;
        Ambient::new(field, self.n, self.k)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Complementary pairs only.
    G,
    /// The whole product of the two Grassmannians.
    Full,
}

impl KindArg {
    fn to_kind(self) -> SpaceKind {
        match self {
            KindArg::G => SpaceKind::Complementary,
            KindArg::Full => SpaceKind::FullProduct,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    /// One component equal, the other adjacent.
    Adj,
    /// Exactly one component equal.
    Close,
}

impl RelationArg {
    fn to_relation(self) -> Relation {
        match self {
            RelationArg::Adj => Relation::Adjacency,
            RelationArg::Close => Relation::Closeness,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List the canonical bases of all subspaces of one dimension.
    EnumGrassmannian {
        #[command(flatten)]
        space: SpaceArgs,
        /// Subspace dimension to enumerate (default: k).
        #[arg(long)]
        dim: Option<usize>,
        /// Print only the number of subspaces.
        #[arg(long)]
        count_only: bool,
    },
    /// List the points (s_id, u_id) of the pair space.
    EnumPairs {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = KindArg::G)]
        kind: KindArg,
        /// Print only the number of points.
        #[arg(long)]
        count_only: bool,
    },
    /// Export a relation graph on the pair space.
    Graph {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = KindArg::G)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = RelationArg::Adj)]
        relation: RelationArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Vertex ceiling for graph construction.
        #[arg(long)]
        ceiling: Option<usize>,
    },
    /// List the catalog of pair transformations.
    Catalog {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = KindArg::G)]
        kind: KindArg,
        /// Size ceiling for catalog enumeration.
        #[arg(long)]
        ceiling: Option<u128>,
        /// Print only the number of transformations.
        #[arg(long)]
        count_only: bool,
    },
    /// Run a verification check (or `all`).
    Verify {
        /// theorem3 | lemma3 | lemma5 | thmC | thmA | full-product |
        /// connectivity | involutions | all
        name: String,
        #[command(flatten)]
        space: SpaceArgs,
        /// Seed for the randomized samples inside some checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex ceiling for full automorphism-group enumeration.
        #[arg(long)]
        ceiling: Option<usize>,
        /// Emit machine-readable JSON reports instead of human lines.
        #[arg(long)]
        json: bool,
    },
    /// Print the sizes of every Grassmannian, the pair spaces, and the
    /// relation graphs.
    Stats {
        #[command(flatten)]
        space: SpaceArgs,
    },
}

/// Serialized form of a relation graph; `edges` lists each edge once with
/// ascending ids.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphExport {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub kind: String,
    pub relation: String,
    pub vertices: usize,
    pub edges: Vec<(u32, u32)>,
}

/// Parses the argument vector and executes it, writing to stdout.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut stdout = io::stdout().lock();
    run_to(args, &mut stdout)
}

/// Same as [`run`], but writing to the given sink (used by tests).
pub fn run_to<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // Ignore failure: the global pool can only be configured once per
        // process, and a repeat configuration request changes nothing.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn execute<W: Write>(command: Command, out: &mut W) -> std::result::Result<i32, String> {
    match command {
        Command::EnumGrassmannian {
            space,
            dim,
            count_only,
        } => {
            let ambient = space.ambient().map_err(|e| e.to_string())?;
            let dim = dim.unwrap_or(ambient.k());
            let grass = Grassmannian::enumerate(&ambient, dim).map_err(|e| e.to_string())?;
            if count_only {
                w(out, format_args!("{}\n", grass.len()))?;
            } else {
                for (id, s) in grass.iter().enumerate() {
                    w(out, format_args!("{},{}\n", id, render_basis(s)))?;
                }
            }
            Ok(0)
        }
        Command::EnumPairs {
            space,
            kind,
            count_only,
        } => {
            let ambient = space.ambient().map_err(|e| e.to_string())?;
            let pairs = PairSpace::enumerate(&ambient, kind.to_kind()).map_err(|e| e.to_string())?;
            if count_only {
                w(out, format_args!("{}\n", pairs.len()))?;
            } else {
                for p in pairs.points() {
                    w(out, format_args!("{},{},{}\n", p.id, p.s, p.u))?;
                }
            }
            Ok(0)
        }
        Command::Graph {
            space,
            kind,
            relation,
            format,
            ceiling,
        } => {
            let ambient = space.ambient().map_err(|e| e.to_string())?;
            let pairs = PairSpace::enumerate(&ambient, kind.to_kind()).map_err(|e| e.to_string())?;
            let graph = match ceiling {
                Some(c) => build_graph_with_ceiling(&pairs, relation.to_relation(), c),
                None => build_graph(&pairs, relation.to_relation()),
            }
            .map_err(|e| e.to_string())?;
            match format {
                FormatArg::Csv => write_csv(out, &graph)?,
                FormatArg::Dot => write_dot(out, &pairs, &graph)?,
                FormatArg::Json => write_json(out, &ambient, kind, relation, &graph)?,
            }
            Ok(0)
        }
        Command::Catalog {
            space,
            kind,
            ceiling,
            count_only,
        } => {
            let ambient = space.ambient().map_err(|e| e.to_string())?;
            let pairs = PairSpace::enumerate(&ambient, kind.to_kind()).map_err(|e| e.to_string())?;
            let maps = catalog(&pairs, ceiling.unwrap_or(DEFAULT_CATALOG_CEILING))
                .map_err(|e| e.to_string())?;
            if count_only {
                w(out, format_args!("{}\n", maps.len()))?;
            } else {
                for (idx, map) in maps.iter().enumerate() {
                    w(out, format_args!("{}\t{}\n", idx, render_transformation(map)))?;
                }
            }
            Ok(0)
        }
        Command::Verify {
            name,
            space,
            seed,
            ceiling,
            json,
        } => {
            let ambient = space.ambient().map_err(|e| e.to_string())?;
            let mut config = CheckConfig {
                seed,
                ..CheckConfig::default()
            };
            if let Some(c) = ceiling {
                config.vertex_ceiling = c;
            }
            let reports = run_named_check(&name, &ambient, &config).map_err(|e| e.to_string())?;
            if json {
                let rendered =
                    serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
                w(out, format_args!("{rendered}\n"))?;
            } else {
                for report in &reports {
                    w(out, format_args!("{}\n", report.human_line()))?;
                }
            }
            Ok(exit_code_for(&reports))
        }
        Command::Stats { space } => {
            let ambient = space.ambient().map_err(|e| e.to_string())?;
            write_stats(out, &ambient).map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

/// 1 iff any report failed; skipped checks do not fail the run.
fn exit_code_for(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::passed) {
        0
    } else {
        1
    }
}

fn w<W: Write>(out: &mut W, args: std::fmt::Arguments<'_>) -> std::result::Result<(), String> {
    out.write_fmt(args).map_err(|e| e.to_string())
}

/// Rows of the canonical basis, `;`-separated; entries are digit-joined for
/// small fields and `:`-joined otherwise.
fn render_basis(s: &Subspace) -> String {
    let rows: Vec<String> = (0..s.basis().rows())
        .map(|r| {
            let row = s.basis().row(r);
            if s.field().order() <= 10 {
                row.iter().map(|e| e.to_string()).collect::<String>()
            } else {
                row.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(":")
            }
        })
        .collect();
    if rows.is_empty() {
        "-".to_string()
    } else {
        rows.join(";")
    }
}

fn render_table(table: &[u32]) -> String {
    table
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_transformation(map: &PairTransformation) -> String {
    let shape = match map.shape() {
        Shape::Product => "product",
        Shape::Swap => "swap",
    };
    format!(
        "{}\t{}\t{}",
        shape,
        render_table(map.first()),
        render_table(map.second())
    )
}

/// One `a,b` line per edge, both orders ascending.
fn write_csv<W: Write>(out: &mut W, graph: &RelationGraph) -> std::result::Result<(), String> {
    for (a, b) in graph.edges() {
        w(out, format_args!("{a},{b}\n"))?;
    }
    Ok(())
}

/// Undirected DOT graph; vertex names are point ids, labels the (s_id, u_id)
/// coordinates.
fn write_dot<W: Write>(
    out: &mut W,
    space: &Arc<PairSpace>,
    graph: &RelationGraph,
) -> std::result::Result<(), String> {
    w(out, format_args!("graph pairs {{\n"))?;
    for p in space.points() {
        w(
            out,
            format_args!("  {} [label=\"({},{})\"];\n", p.id, p.s, p.u),
        )?;
    }
    for (a, b) in graph.edges() {
        w(out, format_args!("  {a} -- {b};\n"))?;
    }
    w(out, format_args!("}}\n"))?;
    Ok(())
}

fn write_json<W: Write>(
    out: &mut W,
    ambient: &Ambient,
    kind: KindArg,
    relation: RelationArg,
    graph: &RelationGraph,
) -> std::result::Result<(), String> {
    let export = GraphExport {
        n: ambient.n(),
        k: ambient.k(),
        q: ambient.q(),
        kind: match kind {
            KindArg::G => "g".to_string(),
            KindArg::Full => "full".to_string(),
        },
        relation: match relation {
            RelationArg::Adj => "adj".to_string(),
            RelationArg::Close => "close".to_string(),
        },
        vertices: graph.len(),
        edges: graph.edges(),
    };
    let rendered = serde_json::to_string_pretty(&export).map_err(|e| e.to_string())?;
    w(out, format_args!("{rendered}\n"))
}

fn write_stats<W: Write>(out: &mut W, ambient: &Ambient) -> Result<()> {
    let (n, _k, q) = (ambient.n(), ambient.k(), ambient.q());
    let err = |e: crate::error::Error| e;
    for i in 0..=n {
        let _ = writeln!(out, "|G_{i}| = {}", gaussian_binomial(n, i, q));
    }
    let complementary = PairSpace::enumerate(ambient, SpaceKind::Complementary).map_err(err)?;
    let full = PairSpace::enumerate(ambient, SpaceKind::FullProduct).map_err(err)?;
    let _ = writeln!(out, "|G| = {}", complementary.len());
    let _ = writeln!(out, "full product points = {}", full.len());
    for relation in [Relation::Adjacency, Relation::Closeness] {
        let graph = build_graph(&complementary, relation)?;
        let cliques = maximal_cliques(&graph, DEFAULT_CLIQUE_VERTEX_CEILING)?;
        let _ = writeln!(
            out,
            "{} on G: {} edges, {} maximal cliques",
            relation.label(),
            graph.edge_count(),
            cliques.len()
        );
    }
    Ok(())
}
