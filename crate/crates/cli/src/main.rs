//! `spinal`: synthesize, embed, verify and search spinal quadrangulations.
//!
//! Exit codes: 0 success, 1 verification failure or nothing found,
//! 2 invalid or infeasible input, 3 budget exhausted.

mod cache;
mod error;
mod io;
mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spinal_core::chromatic::{ChromaticSolver, DEFAULT_VERTEX_LIMIT};
use spinal_core::embedding::{
    parse_embedding, quadrangulations, write_embedding, EmbeddingError, EnumerationBudget, DEFAULT_ENUMERATION_BUDGET,
};
use spinal_core::graph::Graph;
use spinal_core::interlace::interlacement;
use spinal_core::recipe::SpineRecipe;
use spinal_core::search::{quadrangulation_genus, search_quad_embedding, SearchConfig, DEFAULT_SEARCH_BUDGET};
use spinal_core::synthesis::{self, MinimalityReport, SpectrumReport};
use spinal_core::text::{parse_graph, write_graph};
use spinal_core::{embed_interlacement_traced, trace_faces, verify_quadrangulation, Execution, RotationSystem};

use crate::cache::Cache;
use crate::error::CliError;
use crate::io::{read_text, write_atomic};
use crate::manifest::Recorder;

#[derive(Parser)]
#[command(name = "spinal", version, about = "Spinal quadrangulations of orientable surfaces")]
struct Cli {
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a spine with a prescribed genus and chromatic number or order.
    Synth(SynthArgs),
    /// Quadrangulate the interlacement of a spine graph.
    Embed(EmbedArgs),
    /// Write the interlacement of a spine graph.
    Interlace(InterlaceArgs),
    /// Check that an embedding file is a quadrangulation.
    Verify(VerifyArgs),
    /// Look for a quadrangulation of a graph with a given genus.
    Search(SearchArgs),
    /// Tabulate order bounds per genus as CSV.
    Atlas(AtlasArgs),
}

#[derive(Args)]
struct CacheArgs {
    /// Directory for cached embeddings.
    #[arg(long, env = "SPINAL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["chroma", "order"]))]
struct SynthArgs {
    #[arg(long)]
    genus: u64,
    /// Chromatic number of the spine (and of the quadrangulation).
    #[arg(long)]
    chroma: Option<u64>,
    /// Order of the quadrangulation; must be even.
    #[arg(long)]
    order: Option<u64>,
    #[arg(long, default_value = "spinal-out")]
    out_dir: PathBuf,
    /// Largest spine the exact chromatic solver will attempt.
    #[arg(long, env = "SPINAL_CHROMATIC_LIMIT", default_value_t = DEFAULT_VERTEX_LIMIT)]
    chromatic_limit: usize,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct EmbedArgs {
    /// Spine graph file.
    spine: PathBuf,
    #[arg(long, short)]
    out: PathBuf,
    /// Also write the construction steps as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct InterlaceArgs {
    spine: PathBuf,
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    embedding: PathBuf,
    /// Require this genus instead of the one recorded in the file.
    #[arg(long)]
    genus: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Backtracking over partial rotations.
    Backtrack,
    /// Full enumeration of the rotation space.
    Enumerate,
}

#[derive(Args)]
struct SearchArgs {
    graph: PathBuf,
    #[arg(long)]
    genus: usize,
    #[arg(long, value_enum, default_value = "backtrack")]
    method: Method,
    /// Node budget for backtracking.
    #[arg(long, env = "SPINAL_SEARCH_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Rotation-system budget for enumeration.
    #[arg(long, env = "SPINAL_ENUM_BUDGET", default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    enum_budget: u128,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AtlasArgs {
    #[arg(long)]
    max_genus: u64,
    /// CSV path; stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn load_graph(path: &Path) -> Result<(Graph, String), CliError> {
    let text = read_text(path)?;
    let g = parse_graph(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok((g, text))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct SynthReport {
    recipe: SpineRecipe,
    genus: usize,
    order: usize,
    faces: usize,
    spine_chromatic_number: Option<usize>,
    minimality: MinimalityReport,
    spectrum: SpectrumReport,
}

fn synth(args: SynthArgs) -> Result<(), CliError> {
    let mut rec = Recorder::new("synth");
    rec.arg("genus", args.genus);
    let recipe = match (args.chroma, args.order) {
        (Some(n), _) => {
            rec.arg("chroma", n);
            synthesis::spine_for_chromatic(args.genus, n)
        }
        (None, Some(order)) => {
            rec.arg("order", order);
            if order % 2 == 1 {
                return Err(CliError::Invalid(format!("order {order} is odd; spinal quadrangulations have order 2p")));
            }
            synthesis::spine_for_order(args.genus, order / 2)
        }
        (None, None) => unreachable!("clap requires one of --chroma and --order"),
    }
    .map_err(CliError::invalid)?;
    let spine = recipe.materialize().map_err(CliError::invalid)?;

    let cache = Cache::new(args.cache.cache_dir);
    let (rs, faces, status) = cache.spinal_embedding(&spine)?;
    rec.cache(status.as_str());
    let report =
        verify_quadrangulation(&rs, Some(args.genus as usize)).map_err(|e| CliError::Verification(e.to_string()))?;
    if !report.passed() {
        return Err(CliError::Verification(format!("{:?}", report.failures)));
    }

    let chi = ChromaticSolver::with_limit(args.chromatic_limit).chromatic_number(&spine).ok();
    if let (Some(n), Some(chi)) = (args.chroma, chi) {
        if chi as u64 != n {
            return Err(CliError::Verification(format!("spine has chromatic number {chi}, expected {n}")));
        }
    }
    let order = rs.graph().vertex_count();
    let minimality = if args.order.is_some() {
        let m = recipe.removed_edges.len() as u64;
        synthesis::minimality_certificate(recipe.base_order as u64, m, order as u64)
    } else {
        synthesis::assess_order(args.genus, order as u64)
    }
    .map_err(|e| CliError::Verification(e.to_string()))?;
    let summary = SynthReport {
        recipe,
        genus: faces.genus,
        order,
        faces: faces.faces.len(),
        spine_chromatic_number: chi,
        minimality,
        spectrum: synthesis::spectrum_report(args.genus),
    };

    let dir = &args.out_dir;
    rec.output(&dir.join("spine.txt"), write_graph(&spine).as_bytes())?;
    rec.output(&dir.join("interlaced.txt"), write_graph(rs.graph()).as_bytes())?;
    rec.output(&dir.join("embedding.json"), write_embedding(&rs, Some(faces.genus), Some(&faces.faces)).as_bytes())?;
    rec.output(&dir.join("report.json"), json_line(&summary).as_bytes())?;
    rec.finish(&dir.join("manifest.json"))?;
    println!(
        "genus {} order {} faces {} verdict {}",
        summary.genus,
        summary.order,
        summary.faces,
        serde_json::to_value(summary.minimality.verdict).unwrap().as_str().unwrap()
    );
    Ok(())
}

fn embed(args: EmbedArgs) -> Result<(), CliError> {
    let mut rec = Recorder::new("embed");
    let (spine, text) = load_graph(&args.spine)?;
    rec.input(&args.spine, text.as_bytes());
    let (rs, faces, status) = if let Some(trace_path) = &args.trace {
        let (rs, trace) = embed_interlacement_traced(&spine)?;
        rec.output(trace_path, trace.to_json_lines().as_bytes())?;
        let faces = trace_faces(&rs).map_err(|e| CliError::Verification(e.to_string()))?;
        (rs, faces, cache::CacheStatus::Off)
    } else {
        Cache::new(args.cache.cache_dir).spinal_embedding(&spine)?
    };
    rec.cache(status.as_str());
    rec.output(&args.out, write_embedding(&rs, Some(faces.genus), Some(&faces.faces)).as_bytes())?;
    if let Some(path) = &args.manifest {
        rec.finish(path)?;
    }
    println!("genus {} order {} faces {}", faces.genus, rs.graph().vertex_count(), faces.faces.len());
    Ok(())
}

fn interlace(args: InterlaceArgs) -> Result<(), CliError> {
    let (spine, _) = load_graph(&args.spine)?;
    let il = interlacement(&spine).map_err(CliError::invalid)?;
    write_atomic(&args.out, write_graph(il.graph()).as_bytes())
}

fn verify(args: VerifyArgs) -> Result<(), CliError> {
    let text = read_text(&args.embedding)?;
    let file = parse_embedding(&text).map_err(CliError::invalid)?;
    let rs = file.rotation_system().map_err(CliError::invalid)?;
    // the file's own genus claim is checked unless overridden
    let expected = args.genus.or(usize::try_from(file.genus).ok());
    let report = verify_quadrangulation(&rs, expected).map_err(CliError::invalid)?;
    print!("{}", json_line(&report));
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} failure(s)", report.failures.len())))
    }
}

fn search(args: SearchArgs, exec: Execution) -> Result<(), CliError> {
    let (g, _) = load_graph(&args.graph)?;
    if !g.is_connected() {
        return Err(CliError::Invalid("graph is disconnected".into()));
    }
    let found: Option<RotationSystem> = match args.method {
        Method::Backtrack => {
            let config = SearchConfig { node_budget: args.budget, execution: exec };
            search_quad_embedding(&g, args.genus, config).map_err(|e| match e {
                spinal_core::SearchError::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
                _ => CliError::invalid(e),
            })?
        }
        Method::Enumerate => {
            let all = quadrangulations(&g, EnumerationBudget(args.enum_budget), exec).map_err(|e| match e {
                EmbeddingError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
                _ => CliError::invalid(e),
            })?;
            all.into_iter().find(|rs| trace_faces(rs).is_ok_and(|f| f.genus == args.genus))
        }
    };
    let Some(rs) = found else {
        let why = match quadrangulation_genus(g.vertex_count(), g.edge_count()) {
            Some(genus) if genus == args.genus => "exhaustive search".to_owned(),
            Some(genus) => format!("the Euler identity forces genus {genus}"),
            None => "the Euler identity admits no genus for these counts".to_owned(),
        };
        return Err(CliError::NotFound(format!("no quadrangulation of genus {} exists: {why}", args.genus)));
    };
    let report = verify_quadrangulation(&rs, Some(args.genus)).map_err(|e| CliError::Verification(e.to_string()))?;
    if !report.passed() {
        return Err(CliError::Verification(format!("{:?}", report.failures)));
    }
    let faces = trace_faces(&rs).map_err(|e| CliError::Verification(e.to_string()))?;
    let text = write_embedding(&rs, Some(faces.genus), Some(&faces.faces));
    match &args.out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    eprintln!("found genus {} quadrangulation with {} faces", faces.genus, faces.faces.len());
    Ok(())
}

fn atlas(args: AtlasArgs, exec: Execution) -> Result<(), CliError> {
    let csv = synthesis::atlas_csv(&synthesis::atlas(args.max_genus, exec));
    match &args.out {
        Some(path) => write_atomic(path, csv.as_bytes()),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let result = match cli.command {
        Command::Synth(a) => synth(a),
        Command::Embed(a) => embed(a),
        Command::Interlace(a) => interlace(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a, exec),
        Command::Atlas(a) => atlas(a, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spinal: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
