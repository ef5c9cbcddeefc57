//! Command-line frontend: classification, family generation, patch builds,
//! Heesch search, lemma verification, aperiodicity reports, dual tiles and
//! SVG rendering.
//!
//! Exit codes: 0 success / verdict as claimed, 1 invalid input, 2
//! inconclusive (budget), 3 claim violation or internal invariant failure.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tessella::aperiodicity::{self, ForcingVerdict, Verdict};
use tessella::cyclic::{format_rational, CyclicType};
use tessella::doc;
use tessella::families::{self, EvenSizeAssignment};
use tessella::fractions;
use tessella::geometry;
use tessella::heesch::{self, HeeschOutcome, SearchBudget};
use tessella::layout;
use tessella::patch::Patch;
use tessella::svg::{render_svg, RenderSpec};

#[derive(Parser)]
#[command(
    name = "tessella",
    about = "Combinatorics of homogeneous hyperbolic tilings",
    version
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a cyclic type by its exact angle sum.
    Classify { tuple: String },
    /// Generate a tuple family instance.
    Family(FamilyArgs),
    /// Grow a patch with the given number of complete layers.
    Build(BuildArgs),
    /// Exhaustive layer search with certificates.
    Heesch(HeeschArgs),
    /// Verify the forced F1 chain of a kn/knp instance.
    ForcedChain(ChainArgs),
    /// Verify the unit-fraction lemma statements by enumeration.
    Lemmas(LemmasArgs),
    /// Derive the triangle/pentagon double-counting obstruction.
    Aperiodicity(AperiodicityArgs),
    /// Corner forcing report for the dual tile of a prime-structured type.
    Forcing {
        #[arg(long = "type")]
        tuple: String,
    },
    /// Dual tile geometry: corner angles, side lengths, area.
    Dual {
        #[arg(long = "type")]
        tuple: String,
    },
    /// Render a patch document to SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// One of: kbar, kn, knp, ka.
    which: String,
    /// Family index (kbar: i, kn/knp: n).
    #[arg(long)]
    n: Option<u32>,
    /// Even-size assignment: "auto" or a comma list l=k,l=k,...
    #[arg(long, default_value = "auto")]
    evens: String,
    /// ka parameters, comma separated.
    #[arg(long)]
    klm: Option<String>,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long = "type")]
    tuple: Option<String>,
    /// Family spec like kn:2, knp:1, ka:7,11,13.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 2)]
    layers: u32,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct HeeschArgs {
    #[arg(long = "type")]
    tuple: String,
    #[arg(long, default_value_t = 3)]
    max_layers: u32,
    /// Node budget; also via TESSELLA_BUDGET_NODES.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Worker threads; also via TESSELLA_THREADS.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    witness: Option<std::path::PathBuf>,
    #[arg(long)]
    certificate: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ChainArgs {
    /// kn or knp.
    #[arg(long, default_value = "kn")]
    family: String,
    #[arg(long)]
    n: u32,
    /// Consistency depth: 0 corner fans only, 1 adds the first ring, n adds
    /// further rings.
    #[arg(long, default_value_t = 1)]
    rings: u32,
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
}

#[derive(Args)]
struct LemmasArgs {
    #[arg(long, default_value_t = 97)]
    max_prime: u32,
    #[arg(long, default_value_t = 3)]
    max_list_size: usize,
}

#[derive(Args)]
struct AperiodicityArgs {
    /// ka parameters, comma separated.
    #[arg(long)]
    klm: String,
    /// Cross-check against a patch document.
    #[arg(long)]
    census: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    patch: std::path::PathBuf,
    #[arg(long)]
    out: std::path::PathBuf,
    /// Straight chords instead of geodesic arcs.
    #[arg(long)]
    chords: bool,
    #[arg(long, default_value_t = 1000)]
    size: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok().and_then(|s| s.parse().ok())
}

fn parse_tuple(s: &str) -> Result<CyclicType, String> {
    s.parse::<CyclicType>().map_err(|e| e.to_string())
}

fn parse_family(spec: &str) -> Result<families::FamilyInstance, String> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "kn" => {
            let n: u32 = rest.parse().map_err(|_| format!("bad kn index {rest:?}"))?;
            families::kn(n).map_err(|e| e.to_string())
        }
        "knp" => {
            let n: u32 = rest.parse().map_err(|_| format!("bad knp index {rest:?}"))?;
            families::kn_prime(n).map_err(|e| e.to_string())
        }
        "ka" => {
            let parts: Vec<u32> = rest
                .split(',')
                .map(|p| p.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| format!("bad ka parameters {rest:?}"))?;
            if parts.len() != 3 {
                return Err("ka needs three parameters".into());
            }
            families::ka(parts[0], parts[1], parts[2]).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown family {other:?}")),
    }
}

fn write_file(path: &std::path::Path, contents: &str) -> Result<(), String> {
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Classify { tuple } => {
            let t = parse_tuple(&tuple)?;
            let theta = t.angle_sum();
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "type": t.entries(),
                        "angle_sum": format_rational(&theta),
                        "class": t.classify().to_string(),
                    })
                );
            } else {
                println!("{} {}", t.classify(), format_rational(&theta));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Family(args) => {
            let inst = match args.which.as_str() {
                "kbar" => {
                    let i = args.n.ok_or("kbar needs --n")?;
                    let a = match args.evens.as_str() {
                        "auto" => {
                            EvenSizeAssignment::default_for_indices(&families::kbar_indices(i))
                        }
                        list => parse_evens(list)?,
                    };
                    let tuple = families::kbar(i, &a).map_err(|e| e.to_string())?;
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({"kind": "kbar", "i": i, "tuple": tuple.entries()})
                        );
                    } else {
                        println!("{tuple}");
                    }
                    return Ok(ExitCode::SUCCESS);
                }
                "kn" => {
                    let n = args.n.ok_or("kn needs --n")?;
                    match args.evens.as_str() {
                        "auto" => families::kn(n).map_err(|e| e.to_string())?,
                        list => {
                            families::kn_with(n, &parse_evens(list)?).map_err(|e| e.to_string())?
                        }
                    }
                }
                "knp" => {
                    families::kn_prime(args.n.ok_or("knp needs --n")?).map_err(|e| e.to_string())?
                }
                "ka" => {
                    let klm = args.klm.ok_or("ka needs --klm a,b,c")?;
                    let parts: Vec<u32> = klm
                        .split(',')
                        .map(|p| p.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| "bad --klm")?;
                    if parts.len() != 3 {
                        return Err("--klm needs three values".into());
                    }
                    families::ka(parts[0], parts[1], parts[2]).map_err(|e| e.to_string())?
                }
                other => return Err(format!("unknown family {other:?}")),
            };
            for w in &inst.warnings {
                eprintln!("warning: {w}");
            }
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "kind": format!("{:?}", inst.kind),
                        "tuple": inst.tuple.entries(),
                        "degree": inst.tuple.degree(),
                        "angle_sum": format_rational(&inst.tuple.angle_sum()),
                    })
                );
            } else {
                println!("{}", inst.tuple);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Build(args) => {
            let t = match (&args.tuple, &args.family) {
                (Some(t), None) => parse_tuple(t)?,
                (None, Some(f)) => parse_family(f)?.tuple,
                _ => return Err("build needs exactly one of --type / --family".into()),
            };
            let mut p = Patch::new_fan(&t, 0, false).map_err(|e| e.to_string())?;
            for layer in 2..=args.layers {
                let snapshot = p.boundary_vertices_cw();
                p.reserve_for_closure(&snapshot);
                let mut budget = env_u64("TESSELLA_BUDGET_NODES").unwrap_or(100_000_000);
                let out = tessella::patch::complete_vertices_with(
                    &mut p,
                    &snapshot,
                    &mut budget,
                    tessella::patch::UndoPolicy::Window(4096),
                );
                if !out.completed {
                    eprintln!("layer {layer} did not close");
                    return Ok(ExitCode::from(if out.budget_exhausted { 2 } else { 3 }));
                }
                p.force_layer_advance();
            }
            let violations = p.validate();
            if !violations.is_empty() {
                eprintln!(
                    "internal: built patch fails validation: {:?}",
                    violations[0]
                );
                return Ok(ExitCode::from(3));
            }
            let document = doc::encode_patch(&p);
            let text = doc::to_json(&document);
            match &args.out {
                Some(path) => write_file(path, &text)?,
                None => println!("{text}"),
            }
            if !json {
                eprintln!(
                    "built {} layers: {} faces, {} vertices, boundary {}",
                    p.completed_layers(),
                    p.face_count(),
                    p.vertex_count(),
                    p.boundary_len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Heesch(args) => {
            let t = parse_tuple(&args.tuple)?;
            let budget = SearchBudget {
                max_nodes: args
                    .budget_nodes
                    .or_else(|| env_u64("TESSELLA_BUDGET_NODES"))
                    .unwrap_or(u64::MAX),
                max_millis: None,
            };
            let threads = args
                .threads
                .or_else(|| env_u64("TESSELLA_THREADS").map(|v| v as usize))
                .unwrap_or(1);
            let r = heesch::heesch_number(&t, args.max_layers, budget, threads)
                .map_err(|e| e.to_string())?;
            if let Some(path) = &args.witness {
                write_file(path, &doc::to_json(&doc::encode_patch(&r.witness)))?;
            }
            if let Some(path) = &args.certificate {
                let cert = r.certificate.as_ref().map(|c| {
                    serde_json::json!({
                        "blocked_layer": c.blocked_layer,
                        "explored_nodes": c.explored_nodes,
                        "dead_end_words": c.dead_end_words,
                    })
                });
                write_file(path, &serde_json::to_string_pretty(&cert).unwrap())?;
            }
            let (label, code) = match &r.outcome {
                HeeschOutcome::Exact(r) => (format!("Exact({r})"), ExitCode::SUCCESS),
                HeeschOutcome::AtLeast(r) => (format!("AtLeast({r})"), ExitCode::SUCCESS),
                HeeschOutcome::Inconclusive { layers_confirmed } => (
                    format!("Inconclusive(layers_confirmed={layers_confirmed})"),
                    ExitCode::from(2),
                ),
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "type": t.entries(),
                        "outcome": label,
                        "witness_layers": r.witness.completed_layers(),
                    })
                );
            } else {
                println!("{label}");
            }
            Ok(code)
        }
        Command::ForcedChain(args) => {
            let inst = match args.family.as_str() {
                "kn" => families::kn(args.n).map_err(|e| e.to_string())?,
                "knp" => families::kn_prime(args.n).map_err(|e| e.to_string())?,
                other => {
                    return Err(format!("forced-chain family must be kn/knp, got {other:?}"))
                }
            };
            let report = heesch::forced_chain_verify(&inst, args.n, args.rings, args.budget)
                .map_err(|e| e.to_string())?;
            if json {
                let levels: Vec<_> = report
                    .levels
                    .iter()
                    .map(|l| {
                        serde_json::json!({
                            "level": l.level,
                            "central": l.central_size,
                            "seed": l.seed,
                            "extensions": l.extensions.clone(),
                            "all_f1": l.all_f1,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({"levels": levels, "blocked": report.blocked})
                );
            } else {
                for l in &report.levels {
                    println!(
                        "level {} ({}-gon, seed {:?}): {} extensions, all_f1={}",
                        l.level,
                        l.central_size,
                        l.seed,
                        l.extensions.len(),
                        l.all_f1
                    );
                }
                println!("blocked at last level: {}", report.blocked);
            }
            Ok(if report.verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Lemmas(args) => {
            let report = fractions::verify_lemmas(args.max_prime, args.max_list_size);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "max_prime": report.max_prime,
                        "max_list_size": report.max_list_size,
                        "instances": report.instances_checked,
                        "solutions": report.solutions_seen,
                        "counterexamples": report.counterexamples.len(),
                    })
                );
            } else if report.verified() {
                println!(
                    "verified: {} instances, {} solutions, no counterexamples",
                    report.instances_checked, report.solutions_seen
                );
            } else {
                println!("COUNTEREXAMPLES FOUND: {:?}", report.counterexamples);
            }
            Ok(if report.verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Aperiodicity(args) => {
            let parts: Vec<u32> = args
                .klm
                .split(',')
                .map(|p| p.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| "bad --klm")?;
            if parts.len() != 3 {
                return Err("--klm needs three values".into());
            }
            let inst = families::ka(parts[0], parts[1], parts[2]).map_err(|e| e.to_string())?;
            let verdict =
                aperiodicity::periodicity_contradiction(&inst.tuple).map_err(|e| e.to_string())?;
            if let Some(path) = &args.census {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                let document = doc::from_json(&text).map_err(|e| e.to_string())?;
                let patch = doc::decode_patch(&document).map_err(|e| e.to_string())?;
                let census = aperiodicity::incidence_census(&patch, 3, 5);
                println!(
                    "census cross-check: triangle profiles {:?}, pentagon profiles {:?}",
                    census.profiles.get(&(3, 5)),
                    census.profiles.get(&(5, 3))
                );
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            } else {
                println!(
                    "triangle profile {:?} (ratio 1:5), pentagon profile {:?} (ratio 1:3): {:?}",
                    verdict.triangle_profile, verdict.pentagon_profile, verdict.verdict
                );
            }
            Ok(match verdict.verdict {
                Verdict::Contradiction => ExitCode::SUCCESS,
                Verdict::NoObstruction => ExitCode::from(3),
            })
        }
        Command::Forcing { tuple } => {
            let t = parse_tuple(&tuple)?;
            let report = aperiodicity::monotile_forcing(&t).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for line in &report.explanation {
                    println!("{line}");
                }
                println!("verdict: {:?}", report.verdict);
            }
            Ok(match report.verdict {
                ForcingVerdict::AllVerticesMonotype => ExitCode::SUCCESS,
                ForcingVerdict::Unforced => ExitCode::from(3),
            })
        }
        Command::Dual { tuple } => {
            let t = parse_tuple(&tuple)?;
            let dual = geometry::dual_tile(&t).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "corner_sizes": dual.corner_sizes,
                        "corner_angles": dual.corner_angles,
                        "side_lengths": dual.side_lengths,
                        "side_length_of_type": dual.side_length_of_type.0,
                        "area": dual.area,
                    })
                );
            } else {
                println!("side length of type: {}", dual.side_length_of_type.0);
                println!("corner angles: {:?}", dual.corner_angles);
                println!("side lengths: {:?}", dual.side_lengths);
                println!("area: {}", dual.area);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render(args) => {
            let text = std::fs::read_to_string(&args.patch).map_err(|e| e.to_string())?;
            let document = doc::from_json(&text).map_err(|e| e.to_string())?;
            let patch = doc::decode_patch(&document).map_err(|e| e.to_string())?;
            let disk = layout::layout_patch(&patch).map_err(|e| e.to_string())?;
            let spec = RenderSpec {
                size: args.size,
                geodesic: !args.chords,
                ..Default::default()
            };
            let svg = render_svg(&disk, &spec);
            write_file(&args.out, &svg)?;
            if !json {
                eprintln!(
                    "rendered {} faces to {}",
                    patch.face_count(),
                    args.out.display()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_evens(list: &str) -> Result<EvenSizeAssignment, String> {
    let mut map = std::collections::BTreeMap::new();
    for part in list.split(',') {
        let (l, k) = part
            .split_once('=')
            .ok_or_else(|| format!("bad evens entry {part:?}, expected l=k"))?;
        let l: u32 = l.trim().parse().map_err(|_| "bad evens index")?;
        let k: u32 = k.trim().parse().map_err(|_| "bad evens size")?;
        map.insert(l, k);
    }
    EvenSizeAssignment::new(map).map_err(|e| e.to_string())
}
