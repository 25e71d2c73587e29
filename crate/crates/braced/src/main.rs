use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use braced::io::{
    read_json, read_placement, BracedJson, CatalogJson, GraphJson, ParseError, ReductionJson, StepJson,
};
use braced::parallel;
use braced::verify::{self, Section, Verifier, DEFAULT_SEED};
use braced_core::enumerate::{brace_sets, completeness_bound, EnumError};
use braced_core::hypercyl::{self, Placement4, RigidityReport, Verdict};
use braced_core::mixed_norm::{self, Placement3};
use braced_core::{check_34, find_irreducibles, BracedTriangulation, Catalog};
use clap::{Parser, Subcommand};
use serde_json::json;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_FAILED: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "braced", version, about = "Braced sphere triangulations and their rigidity")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "BRACED_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for enumeration and sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a braced triangulation and check its invariants.
    Validate { file: PathBuf },
    /// List the faces of a braced triangulation.
    Faces { file: PathBuf },
    /// Contract edges until irreducible and print the base and the trace.
    Reduce { file: PathBuf },
    /// Stream every triangulation, or braced triangulation, up to a size.
    Enumerate {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        braces: usize,
        /// Print per-size counts instead of the objects.
        #[arg(long)]
        count_only: bool,
    },
    /// Print the irreducible catalog for one or two braces.
    Catalog {
        b: usize,
        /// Search bound; defaults to the bound that makes the search complete.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Decide (3,4)-tightness of a graph.
    CheckTight { file: PathBuf },
    /// Classify infinitesimal rigidity at a given or random placement.
    Rigidity {
        #[command(subcommand)]
        setting: RigiditySetting,
    },
    /// Run the reproducibility suite.
    #[command(name = "verify-paper")]
    Verify {
        /// all, combinatorics (2, 3, 4), hypercyl (5), mixed (6) or sparsity.
        #[arg(long, default_value = "all")]
        section: Section,
        /// Run a single numbered criterion instead of a section.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        criterion: Option<u8>,
        /// Catalog file to compare against the enumerated one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RigiditySetting {
    /// Frameworks on the hypercylinder x² + y² + z² = 1 in four dimensions.
    Hypercyl {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        placement: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        trials: u64,
    },
    /// Frameworks in three dimensions under the mixed (2,p)-norm.
    Mixed {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        placement: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        trials: u64,
    },
}

/// A failed command: what to print and how to exit.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }

    fn failed(message: impl ToString) -> Self {
        Failure { code: EXIT_FAILED, message: message.to_string() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_FAILED, message: format!("write failed: {e}") }
    }
}

type Outcome = Result<u8, Failure>;

fn emit(value: &serde_json::Value) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)
}

fn load_braced(path: &Path) -> Result<BracedTriangulation, Failure> {
    let j: BracedJson = read_json(path)?;
    j.build().map_err(|e| Failure::failed(format!("{}: {e}", path.display())))
}

fn enum_failure(e: EnumError) -> Failure {
    Failure::usage(e)
}

fn catalog_for(b: usize) -> Option<Catalog> {
    match b {
        1 | 2 => find_irreducibles(completeness_bound(b), b).ok(),
        _ => None,
    }
}

fn validate(file: &Path) -> Outcome {
    let j: BracedJson = read_json(file)?;
    match j.build() {
        Ok(g) => {
            emit(&json!({
                "valid": true,
                "n": g.n(),
                "edges": g.tri().num_edges(),
                "faces": g.tri().faces().len(),
                "braces": g.b(),
                "contractible_edges": g.contractible_edges().len(),
                "irreducible": g.is_irreducible(),
            }))?;
            eprintln!("valid: {} vertices, {} braces", g.n(), g.b());
            Ok(EXIT_OK)
        }
        Err(e) => {
            emit(&json!({ "valid": false, "error": e.to_string() }))?;
            eprintln!("invalid: {e}");
            Ok(EXIT_FAILED)
        }
    }
}

fn faces(file: &Path) -> Outcome {
    let g = load_braced(file)?;
    let faces: Vec<[u32; 3]> = g.tri().faces().iter().map(|f| f.vertices()).collect();
    emit(&json!({ "faces": faces }))?;
    eprintln!("{} faces", faces.len());
    Ok(EXIT_OK)
}

fn reduce(file: &Path) -> Outcome {
    let g = load_braced(file)?;
    let (base, trace) = g.reduce();
    let name = catalog_for(g.b()).and_then(|c| c.find(&base).map(|e| e.name.clone()));
    let out = ReductionJson {
        irreducible: BracedJson::from(&base),
        catalog_name: name.clone(),
        steps: trace.steps.iter().map(StepJson::from).collect(),
    };
    emit(&serde_json::to_value(&out).expect("serializable"))?;
    eprintln!(
        "{} contractions to an irreducible on {} vertices{}",
        trace.len(),
        base.n(),
        name.map(|n| format!(" ({n})")).unwrap_or_default()
    );
    Ok(EXIT_OK)
}

fn enumerate(n_max: usize, braces: usize, count_only: bool, jobs: usize) -> Outcome {
    if braces > 2 {
        return Err(enum_failure(EnumError::UnsupportedBraceCount(braces)));
    }
    let levels = parallel::levels_up_to(n_max, jobs).map_err(enum_failure)?;
    let mut out = BufWriter::new(io::stdout().lock());
    let mut total = 0usize;
    for level in &levels {
        let Some(n) = level.first().map(|t| t.n()) else { continue };
        let mut count = 0usize;
        for t in level {
            let sets = if braces == 0 { vec![Vec::new()] } else { brace_sets(t, braces) };
            for s in sets {
                count += 1;
                if !count_only {
                    let g = BracedTriangulation::new(t.clone(), s).expect("brace sets are non-edges");
                    serde_json::to_writer(&mut out, &BracedJson::from(&g)).expect("serializable");
                    writeln!(out)?;
                }
            }
        }
        if count_only {
            writeln!(out, "{}", json!({ "n": n, "count": count }))?;
        }
        eprintln!("n = {n}: {count}");
        total += count;
    }
    out.flush()?;
    eprintln!("total: {total}");
    Ok(EXIT_OK)
}

fn catalog(b: usize, n_max: Option<usize>) -> Outcome {
    if !(1..=2).contains(&b) {
        return Err(enum_failure(EnumError::UnsupportedBraceCount(b)));
    }
    let n_max = n_max.unwrap_or_else(|| completeness_bound(b));
    let (cat, complete) = match find_irreducibles(n_max, b) {
        Ok(c) => (c, true),
        Err(EnumError::IncompleteBound { partial, bound, .. }) => {
            eprintln!("warning: below the completeness bound {bound}; the catalog may be partial");
            (partial, false)
        }
        Err(e) => return Err(enum_failure(e)),
    };
    emit(&serde_json::to_value(CatalogJson::from(&cat)).expect("serializable"))?;
    for m in &cat.members {
        eprintln!("{} ({} vertices)", m.name, m.graph.n());
    }
    eprintln!("{} irreducibles{}", cat.len(), if complete { "" } else { " (partial)" });
    Ok(EXIT_OK)
}

fn check_tight(file: &Path) -> Outcome {
    let gj: GraphJson = read_json(file)?;
    let g = gj.build().map_err(|e| Failure::failed(format!("{}: {e}", file.display())))?;
    let v = check_34(&g);
    emit(&json!({
        "vertices": g.n(),
        "edges": g.num_edges(),
        "tight": v.tight,
        "sparse": v.sparse,
        "witness": v.witness,
    }))?;
    eprintln!("{}", if v.tight { "(3,4)-tight" } else if v.sparse { "(3,4)-sparse, not tight" } else { "not (3,4)-sparse" });
    Ok(if v.tight { EXIT_OK } else { EXIT_FAILED })
}

fn report_json(r: &RigidityReport, seed: Option<u64>, p: Option<f64>) -> serde_json::Value {
    let s = &r.rank_result.singular_values;
    let ratio = if r.rank > 0 { s[r.rank - 1] / r.rank_result.sigma_max() } else { 0.0 };
    json!({
        "verdict": format!("{:?}", r.verdict),
        "rank": r.rank,
        "expected_rank": r.expected_rank,
        "kernel_dim": r.kernel_dim,
        "trivial_dim": r.trivial_dim,
        "gap": if r.rank_result.gap.is_finite() { json!(r.rank_result.gap) } else { json!("inf") },
        "smallest_retained_ratio": ratio,
        "seed": seed,
        "p": p,
    })
}

fn verdict_exit(v: Verdict) -> u8 {
    match v {
        Verdict::Rigid => EXIT_OK,
        Verdict::Flexible => EXIT_FAILED,
        Verdict::IllConditioned | Verdict::NotFull => EXIT_INCONCLUSIVE,
    }
}

/// Classifies at the given placement, or at random ones seeded `seed, seed + 1, ...`
/// until a verdict is confident.
fn rigidity(
    graph: &Path,
    placement: Option<&Path>,
    trials: u64,
    seed: u64,
    p: Option<f64>,
    classify: impl Fn(&braced_core::Graph, Option<&Path>, u64) -> Result<RigidityReport, Failure>,
) -> Outcome {
    let gj: GraphJson = read_json(graph)?;
    let g = gj.build().map_err(|e| Failure::failed(format!("{}: {e}", graph.display())))?;
    let mut last = None;
    let attempts = if placement.is_some() { 1 } else { trials.max(1) };
    for i in 0..attempts {
        let s = seed.wrapping_add(i);
        let r = classify(&g, placement, s)?;
        let done = r.verdict.is_confident();
        last = Some((r, s));
        if done {
            break;
        }
    }
    let (r, s) = last.expect("at least one attempt");
    emit(&report_json(&r, placement.is_none().then_some(s), p))?;
    eprintln!("{:?}: rank {} of {}", r.verdict, r.rank, r.expected_rank);
    Ok(verdict_exit(r.verdict))
}

fn hypercyl_at(g: &braced_core::Graph, placement: Option<&Path>, seed: u64) -> Result<RigidityReport, Failure> {
    let q = match placement {
        Some(path) => Placement4::new(read_placement::<4>(path)?).map_err(Failure::usage)?,
        None => hypercyl::random_placement(g.n(), seed),
    };
    hypercyl::classify(g, &q).map_err(Failure::usage)
}

fn mixed_at(p: f64) -> impl Fn(&braced_core::Graph, Option<&Path>, u64) -> Result<RigidityReport, Failure> {
    move |g, placement, seed| {
        let q = match placement {
            Some(path) => Placement3::new(read_placement::<3>(path)?).map_err(Failure::usage)?,
            None => mixed_norm::random_placement(g.n(), seed),
        };
        mixed_norm::classify(g, &q, p).map_err(Failure::usage)
    }
}

fn verify_suite(section: Section, criterion: Option<u8>, catalog: Option<&Path>, seed: u64, jobs: usize) -> Outcome {
    let mut v = Verifier::new(seed, jobs);
    if let Some(path) = catalog {
        v = v.with_catalog_file(read_json(path)?);
    }
    let reports = match criterion {
        Some(c) => vec![v.run(c, &verify::BOTH)],
        None => v.run_section(section),
    };
    for r in &reports {
        emit(&serde_json::to_value(r).expect("serializable"))?;
        eprintln!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    eprintln!("{} of {} criteria passed", reports.len() - failed, reports.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Faces { file } => faces(&file),
        Command::Reduce { file } => reduce(&file),
        Command::Enumerate { n_max, braces, count_only } => enumerate(n_max, braces, count_only, cli.jobs),
        Command::Catalog { b, n_max } => catalog(b, n_max),
        Command::CheckTight { file } => check_tight(&file),
        Command::Rigidity { setting } => match setting {
            RigiditySetting::Hypercyl { graph, placement, trials } => {
                rigidity(&graph, placement.as_deref(), trials, cli.seed, None, hypercyl_at)
            }
            RigiditySetting::Mixed { p, graph, placement, trials } => {
                rigidity(&graph, placement.as_deref(), trials, cli.seed, Some(p), mixed_at(p))
            }
        },
        Command::Verify { section, criterion, catalog } => {
            verify_suite(section, criterion, catalog.as_deref(), cli.seed, cli.jobs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
