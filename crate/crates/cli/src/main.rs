use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gemtorus::catalog::{Family, SurfaceKind};
use gemtorus::genus::{min_regular_genus, CyclicPermutation};
use gemtorus::group::{first_homology, fundamental_group};
use gemtorus::iso::{find_shift_isomorphisms, is_isomorphic, ShiftIsomorphism};
use gemtorus::reproduce::{reproduce, Theorem};
use gemtorus::torus::{build_mapping_torus, classify_orientability};
use gemtorus::{decode, encode, export_dot, ColoredGraph, Error};
use serde_json::json;

/// Crystallizations of PL manifolds, their mapping tori and invariants.
#[derive(Parser)]
#[command(name = "gemtorus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or emit catalog crystallizations.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Report invariants of a graph document.
    Analyze(AnalyzeArgs),
    /// Mapping-torus construction.
    #[command(subcommand)]
    Torus(TorusCommand),
    /// Recompute the figures claimed for a family of mapping tori.
    Reproduce(ReproduceArgs),
    /// Export a graph document to another format.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Print the available families.
    List,
    /// Write one catalog graph as a document.
    Emit(EmitArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Sphere,
    SphereBundle,
    Lens,
    Projective,
    Surface,
}

#[derive(Args)]
struct EmitArgs {
    family: FamilyName,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// rp2, klein, torus or genus2
    #[arg(long)]
    kind: Option<String>,
    /// Emit the twisted sphere bundle.
    #[arg(long)]
    non_orientable: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Sweep all cyclic color arrangements for the regular genus.
    #[arg(long)]
    genus: bool,
    /// First homology from the presentation on colors I and J.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    h1: Option<Vec<usize>>,
    /// Report bipartiteness (orientability).
    #[arg(long)]
    orientable: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum TorusCommand {
    /// Build the mapping torus of a crystallization.
    Build(TorusArgs),
}

#[derive(Args)]
struct TorusArgs {
    file: PathBuf,
    /// Gluing isomorphism: `auto` or a file holding a JSON vertex map.
    #[arg(long, default_value = "auto")]
    iso: String,
    /// Closing isomorphism: `auto` (same as --iso) or a file.
    #[arg(long, default_value = "auto")]
    iso2: String,
    /// Check the boundary components of every partial graph.
    #[arg(long)]
    intermediates: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// 1.1, 1.2, 1.3 or 1.4
    #[arg(long)]
    theorem: String,
    /// Sphere-bundle dimension (1.1) or projective dimension (1.3).
    #[arg(long)]
    d: Vec<usize>,
    /// Lens parameter (1.2).
    #[arg(long)]
    q: Vec<usize>,
    /// Number of projective-plane summands (1.4).
    #[arg(long)]
    h: Vec<usize>,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand)]
enum ExportCommand {
    /// Graphviz DOT.
    Dot(DotArgs),
}

#[derive(Args)]
struct DotArgs {
    file: PathBuf,
    /// Cyclic color arrangement used to order nodes, e.g. 0,2,4,1,3.
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<usize>>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Why a command failed; each maps to a distinct exit code.
enum Failure {
    Validation(String),
    Input(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read_graph(path: &Path) -> Result<ColoredGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(decode(&text)?)
}

fn write_out(output: Option<&Path>, text: &str) -> CmdResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => match std::io::stdout().write_all(text.as_bytes()) {
            // A closed reader (`| head`) is not our failure.
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Input(e.to_string())),
            _ => Ok(()),
        },
    }
}

fn catalog_list() -> CmdResult {
    let rows = [
        ("sphere", "--d N", "N >= 1", "S^d, 2 vertices"),
        ("sphere-bundle", "--d N [--non-orientable]", "N >= 3", "S^(d-1) x S^1, 2(d+1) vertices"),
        ("lens", "--q N", "N >= 2", "L(q,1), 4q vertices"),
        ("projective", "--d N", "2 <= N <= 20", "RP^d, 2^d vertices"),
        ("surface", "--kind K", "rp2|klein|torus|genus2", "closed surfaces"),
    ];
    let mut out = String::new();
    for (name, flags, range, what) in rows {
        out += &format!("{name:<14} {flags:<26} {range:<24} {what}\n");
    }
    write_out(None, &out)
}

fn catalog_emit(args: EmitArgs) -> CmdResult {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Input(format!("this family needs --{flag}")));
    let family = match args.family {
        FamilyName::Sphere => Family::Sphere { d: need(args.d, "d")? },
        FamilyName::SphereBundle => Family::SphereBundle {
            d: need(args.d, "d")?,
            orientable: !args.non_orientable,
        },
        FamilyName::Lens => Family::Lens { q: need(args.q, "q")? },
        FamilyName::Projective => Family::Projective { d: need(args.d, "d")? },
        FamilyName::Surface => {
            let kind = args.kind.ok_or_else(|| Failure::Input("surface needs --kind".into()))?;
            Family::Surface {
                kind: kind.parse::<SurfaceKind>()?,
            }
        }
    };
    let entry = family.build()?;
    write_out(args.output.as_deref(), &encode(&entry.graph))
}

fn analyze(args: AnalyzeArgs) -> CmdResult {
    let g = read_graph(&args.file)?;
    let flags = g.flags();
    let mut report = json!({
        "colors": g.color_count(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "regular": flags.regular,
        "connected": flags.connected,
        "contracted": flags.contracted,
    });
    let mut lines = vec![
        format!("colors: {}", g.color_count()),
        format!("vertices: {}", g.vertex_count()),
        format!("edges: {}", g.edge_count()),
        format!("regular: {}", flags.regular),
        format!("connected: {}", flags.connected),
        format!(
            "contracted: {}",
            flags.contracted.map_or("n/a".to_string(), |c| c.to_string())
        ),
    ];
    if args.orientable {
        let orientable = g.is_bipartite();
        report["orientable"] = json!(orientable);
        lines.push(format!("orientable: {orientable}"));
    }
    if args.genus {
        let genus = min_regular_genus(&g)?;
        report["min_rho"] = json!(genus.min_rho.to_string());
        report["minimizing"] = json!(genus.minimizing);
        report["gem_complexity"] = json!(genus.gem_complexity);
        lines.push(format!("min rho: {} at {}", genus.min_rho, genus.minimizing));
        lines.push(format!("gem-complexity bound: {}", genus.gem_complexity));
    }
    if let Some(pair) = args.h1 {
        let presentation = fundamental_group(&g, pair[0], pair[1])?;
        let h1 = first_homology(&presentation);
        report["presentation"] = json!(presentation.to_string());
        report["h1"] = json!(h1.to_string());
        lines.push(format!("pi1: {presentation}"));
        lines.push(format!("H1: {h1}"));
    }
    let out = if args.json {
        format!("{report}\n")
    } else {
        lines.iter().map(|l| format!("{l}\n")).collect()
    };
    write_out(None, &out)
}

fn read_iso(spec: &str, g: &ColoredGraph) -> Result<Option<ShiftIsomorphism>, Failure> {
    if spec == "auto" {
        return Ok(None);
    }
    let text = fs::read_to_string(spec).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
    let map: Vec<usize> =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{spec}: expected a JSON vertex map: {e}")))?;
    Ok(Some(ShiftIsomorphism::new(1, g.color_count(), map)))
}

fn torus_build(args: TorusArgs) -> CmdResult {
    let base = read_graph(&args.file)?;
    let iso = match read_iso(&args.iso, &base)? {
        Some(iso) => iso,
        None => find_shift_isomorphisms(&base, 1)?
            .into_iter()
            .next()
            .ok_or_else(|| Failure::Validation("the graph has no shift-1 isomorphism".into()))?,
    };
    let closing = read_iso(&args.iso2, &base)?.unwrap_or_else(|| iso.clone());
    let build = build_mapping_torus(&base, &iso, &closing, args.intermediates)?;
    let report = classify_orientability(&build);
    eprintln!(
        "mapping torus: {} vertices, {} colors, {}",
        build.result.vertex_count(),
        build.result.color_count(),
        if report.orientable { "orientable" } else { "non-orientable" }
    );
    for (k, partial) in build.intermediates.iter().enumerate() {
        let boundary = partial.boundary_graph()?;
        let mut matching = 0;
        for i in 0..boundary.components.len() {
            if is_isomorphic(&boundary.component_graph(i)?, &base, true).is_some() {
                matching += 1;
            }
        }
        eprintln!(
            "stage {}: {} boundary components, {matching} isomorphic to the base",
            k + 1,
            boundary.components.len()
        );
        if boundary.components.len() != 2 || matching != 2 {
            return Err(Failure::Validation(format!("stage {} has an unexpected boundary", k + 1)));
        }
    }
    write_out(args.output.as_deref(), &encode(&build.result))
}

fn run_reproduce(args: ReproduceArgs) -> CmdResult {
    let theorem: Theorem = args.theorem.parse()?;
    let given = [("d", &args.d), ("q", &args.q), ("h", &args.h)];
    let mut params = Vec::new();
    for (name, values) in given {
        if values.is_empty() {
            continue;
        }
        if name != theorem.param_name() {
            return Err(Failure::Input(format!(
                "theorem {theorem} takes --{}, not --{name}",
                theorem.param_name()
            )));
        }
        params.extend(values.iter().copied());
    }
    let rows = reproduce(theorem, &params)?;
    let mut out;
    if args.json {
        out = serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n";
    } else {
        out = format!(
            "{:<4} {:<4} {:<34} {:>8}  {:<30} {:>14} {:<2} {:<14}\n",
            "ok", "thm", "subject", "vertices", "quantity", "computed", "", "claimed"
        );
        for r in &rows {
            out += &format!(
                "{:<4} {:<4} {:<34} {:>8}  {:<30} {:>14} {:<2} {:<14}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.theorem.to_string(),
                r.subject,
                r.vertex_count,
                r.quantity,
                r.computed,
                r.relation.to_string(),
                r.claimed
            );
        }
    }
    write_out(None, &out)?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(Failure::Mismatch(format!("{failed} of {} rows failed", rows.len())));
    }
    Ok(())
}

fn export(cmd: ExportCommand) -> CmdResult {
    let ExportCommand::Dot(args) = cmd;
    let g = read_graph(&args.file)?;
    let eps = match args.eps {
        Some(order) => {
            if order.len() != g.color_count() {
                return Err(Failure::Input(format!("--eps must list all {} colors", g.color_count())));
            }
            Some(CyclicPermutation::new(&order)?)
        }
        None => None,
    };
    write_out(args.output.as_deref(), &export_dot(&g, eps.as_ref()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Catalog(CatalogCommand::List) => catalog_list(),
        Command::Catalog(CatalogCommand::Emit(args)) => catalog_emit(args),
        Command::Analyze(args) => analyze(args),
        Command::Torus(TorusCommand::Build(args)) => torus_build(args),
        Command::Reproduce(args) => run_reproduce(args),
        Command::Export(cmd) => export(cmd),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
