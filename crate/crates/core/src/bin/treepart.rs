//! `treepart` command line. Exit codes: 0 success, 1 reject/invalid with a
//! `RESULT ...` line on stdout, 2 usage or I/O error.

use std::error::Error;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use treepart::bridge::{tcd_bound, tcd_to_subdivision_tp, tp_lift_subdivision, Subdivided};
use treepart::decomp::{verify_domino, verify_tcd, verify_td, verify_tp, VerifyError};
use treepart::exact::{exact_domino_tw, exact_tpw, Exact};
use treepart::frontend::Strategy;
use treepart::gadgets::{self, DominoReduction, TcmisGadget, TcmisInstance};
use treepart::io;
use treepart::pipeline::{self, PipelineOutcome, PipelineParams, RejectionCertificate, Step1};
use treepart::separator::{b_reduction, build_gb, PairCriterion};
use treepart::wood::WoodConstants;
use treepart::Graph;

type Res<T> = Result<T, Box<dyn Error + Send + Sync>>;

#[derive(Parser)]
#[command(name = "treepart", version, about = "Tree-partitions of bounded-degree graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the approximation pipeline.
    Decompose(DecomposeArgs),
    /// Check a decomposition file against a graph.
    Verify {
        kind: Kind,
        graph: PathBuf,
        decomp: PathBuf,
    },
    /// Exact tree-partition-width (small graphs).
    ExactTpw(ExactArgs),
    /// Exact domino treewidth (small graphs).
    ExactDomino(ExactArgs),
    /// Write `G^b` over all vertex pairs.
    Gb {
        #[arg(short)]
        b: usize,
        graph: PathBuf,
        #[arg(short)]
        out: PathBuf,
        /// Count disjoint paths in G instead of separators in G - uv.
        #[arg(long)]
        disjoint_paths: bool,
    },
    /// Generate an instance.
    Gen(GenArgs),
    /// Tree-partitions of subdivisions.
    Bridge(BridgeArgs),
    /// Run the pipeline over a directory of .gr files.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tp,
    Td,
    Domino,
    Tcd,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(short)]
    k: usize,
    /// exact | heur:min-fill | heur:min-degree | import:FILE
    #[arg(long, default_value = "heur:min-fill")]
    step1: String,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    disjoint_paths: bool,
    graph: PathBuf,
    #[arg(short)]
    out: PathBuf,
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Where to write a rejection certificate as JSON.
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    graph: PathBuf,
    /// Where to write the optimal decomposition.
    #[arg(short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Output .gr (stdout when absent).
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    /// JSON-lines sidecar for gadget registries.
    #[arg(long, global = true)]
    meta: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    Grid {
        m: usize,
    },
    Wall {
        m: usize,
    },
    Fan {
        m: usize,
    },
    Kbip {
        a: usize,
        b: usize,
    },
    /// Every edge of TREE replaced by M subdivided parallel edges.
    Multitree {
        tree: PathBuf,
        m: usize,
    },
    Gnp {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Tree {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// TCMIS reduction from a JSON instance.
    Tcmis {
        instance: PathBuf,
    },
    /// Domino treewidth reduction of GRAPH for target K.
    Domino {
        graph: PathBuf,
        k: usize,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["from_tcd", "lift"])))]
struct BridgeArgs {
    /// IN.gr IN.tcd
    #[arg(long, num_args = 2, value_names = ["GR", "TCD"])]
    from_tcd: Option<Vec<PathBuf>>,
    /// IN.gr IN.tp
    #[arg(long, num_args = 2, value_names = ["GR", "TP"], requires = "counts")]
    lift: Option<Vec<PathBuf>>,
    #[arg(long)]
    counts: Option<PathBuf>,
    /// Subdivided graph.
    #[arg(short)]
    out: PathBuf,
    /// Its tree-partition.
    #[arg(long)]
    tp: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    corpus: PathBuf,
    #[arg(short, num_args = 1.., required = true)]
    k: Vec<usize>,
    #[arg(long)]
    report: PathBuf,
    #[arg(long, default_value = "heur:min-fill")]
    step1: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn result(ok: bool, line: String) -> ExitCode {
    println!("RESULT {line}");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_step1(s: &str, seed: u64) -> Res<Step1> {
    Ok(match s {
        "exact" => Step1::Exact,
        "heur:min-fill" => Step1::Heuristic {
            strategy: Strategy::MinFill,
            seed,
        },
        "heur:min-degree" => Step1::Heuristic {
            strategy: Strategy::MinDegree,
            seed,
        },
        _ => match s.strip_prefix("import:") {
            Some(path) => Step1::Import(PathBuf::from(path)),
            None => return Err(format!("unknown --step1 `{s}`").into()),
        },
    })
}

fn criterion(disjoint_paths: bool) -> PairCriterion {
    if disjoint_paths {
        PairCriterion::DisjointPaths
    } else {
        PairCriterion::SeparatorInGMinusEdge
    }
}

/// Variant name of a verifier error in kebab case.
fn reason(e: &VerifyError) -> String {
    let dbg = match e {
        VerifyError::Structural(s) => format!("{s:?}"),
        VerifyError::Violation(v) => format!("{v:?}"),
    };
    let name: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(c.to_ascii_lowercase());
    }
    out
}

fn cert_line(cert: &RejectionCertificate) -> String {
    let detail = match cert {
        RejectionCertificate::TreewidthLb { lb, source } => format!("lb={lb} source={source:?}"),
        RejectionCertificate::LargeComponent { vertices, b } => format!("size={} b={b}", vertices.len()),
        RejectionCertificate::BlockDegree {
            degree, threshold, b, ..
        } => format!("degree={degree} threshold={threshold} b={b}"),
    };
    format!("status=reject reason={} {detail}", cert.kind())
}

fn run(cmd: Cmd) -> Res<ExitCode> {
    match cmd {
        Cmd::Decompose(a) => decompose(a),
        Cmd::Verify { kind, graph, decomp } => verify(kind, &graph, &decomp),
        Cmd::ExactTpw(a) => {
            let g = io::read_gr(&a.graph)?;
            Ok(match exact_tpw(&g, a.kmax)? {
                Exact::Width { width, witness } => {
                    if let Some(out) = &a.out {
                        io::write(out, &io::emit_tp(&witness, g.n()))?;
                    }
                    result(true, format!("status=ok tpw={width}"))
                }
                Exact::Greater => result(false, format!("status=above kmax={}", a.kmax)),
            })
        }
        Cmd::ExactDomino(a) => {
            let g = io::read_gr(&a.graph)?;
            Ok(match exact_domino_tw(&g, a.kmax)? {
                Exact::Width { width, witness } => {
                    if let Some(out) = &a.out {
                        io::write(out, &io::emit_td(&witness, g.n()))?;
                    }
                    result(true, format!("status=ok domino_tw={width}"))
                }
                Exact::Greater => result(false, format!("status=above kmax={}", a.kmax)),
            })
        }
        Cmd::Gb {
            b,
            graph,
            out,
            disjoint_paths,
        } => {
            let g = io::read_gr(&graph)?;
            let pairs: Vec<(usize, usize)> = (0..g.n()).flat_map(|u| (u + 1..g.n()).map(move |v| (u, v))).collect();
            let gb = build_gb(&g, b, &pairs, criterion(disjoint_paths), true);
            let red = b_reduction(&g, &gb);
            io::write(&out, &io::emit_gr(&gb))?;
            Ok(result(
                true,
                format!("status=ok edges={} max_component={}", gb.m(), red.max_weight()),
            ))
        }
        Cmd::Gen(a) => generate(a),
        Cmd::Bridge(a) => bridge(a),
        Cmd::Bench(a) => bench(a),
    }
}

fn decompose(a: DecomposeArgs) -> Res<ExitCode> {
    let g = io::read_gr(&a.graph)?;
    let mut params = PipelineParams::new(a.k);
    params.step1 = parse_step1(&a.step1, a.seed)?;
    params.b_override = a.b;
    params.criterion = criterion(a.disjoint_paths);
    let outcome = pipeline::run(&g, &params)?;
    if let Some(path) = &a.trace {
        let text: String = outcome.trace().iter().map(|r| r.to_line() + "\n").collect();
        io::write(path, &text)?;
    }
    Ok(match outcome {
        PipelineOutcome::Partition { tp, width, .. } => {
            io::write(&a.out, &io::emit_tp(&tp, g.n()))?;
            result(true, format!("status=accept width={width}"))
        }
        PipelineOutcome::Reject { cert, .. } => {
            if let Some(path) = &a.cert {
                io::write(path, &(serde_json::to_string(&cert)? + "\n"))?;
            }
            result(false, cert_line(&cert))
        }
    })
}

fn verify(kind: Kind, graph: &Path, decomp: &Path) -> Res<ExitCode> {
    let g = io::read_gr(graph)?;
    let mismatch = |n: usize| {
        result(
            false,
            format!("status=invalid reason=vertex-count declared={n} graph={}", g.n()),
        )
    };
    let outcome = match kind {
        Kind::Tp => {
            let (tp, n) = io::read_tp(decomp)?;
            if n != g.n() {
                return Ok(mismatch(n));
            }
            verify_tp(&g, &tp).map(|w| format!("width={w}"))
        }
        Kind::Td | Kind::Domino => {
            let (td, n) = io::read_td(decomp)?;
            if n != g.n() {
                return Ok(mismatch(n));
            }
            let check = if matches!(kind, Kind::Td) {
                verify_td
            } else {
                verify_domino
            };
            check(&g, &td).map(|w| format!("width={w}"))
        }
        Kind::Tcd => {
            let (tcd, declared, n) = io::read_tcd(decomp)?;
            if n != g.n() {
                return Ok(mismatch(n));
            }
            match verify_tcd(&g, &tcd) {
                Ok(r) if r.width != declared => {
                    return Ok(result(
                        false,
                        format!(
                            "status=invalid reason=width-mismatch declared={declared} actual={}",
                            r.width
                        ),
                    ))
                }
                other => other.map(|r| format!("width={} nice={}", r.width, r.nice)),
            }
        }
    };
    Ok(match outcome {
        Ok(detail) => result(true, format!("status=valid {detail}")),
        Err(e) => {
            eprintln!("{e}");
            result(false, format!("status=invalid reason={}", reason(&e)))
        }
    })
}

/// 1-indexed inclusive `[first, last]` of a vertex range.
fn span(r: &Range<usize>) -> [usize; 2] {
    [r.start + 1, r.end]
}

fn tcmis_meta(gad: &TcmisGadget) -> Vec<Value> {
    let mut rec = vec![json!({
        "kind": "tcmis",
        "k": gad.k, "r": gad.r, "L": gad.l, "N": gad.n_sub,
        "root": gad.root,
        "edge_nodes": gad.edge_nodes,
        "overshoot": gad.overshoot,
        "max_degree": gad.max_degree,
        "degree_bound": gad.degree_bound(),
    })];
    for (id, t) in gad.trunk.iter().enumerate() {
        rec.push(json!({
            "kind": "trunk", "id": id, "original": t.original, "parent": t.parent,
            "p": t.p, "marks": t.marks, "clique": span(&t.clique), "size": t.clique.len(),
        }));
    }
    for c in &gad.chains {
        let cliques: Vec<[usize; 2]> = c.cliques.iter().map(span).collect();
        let sizes: Vec<usize> = c.cliques.iter().map(Range::len).collect();
        rec.push(json!({
            "kind": "chain", "node": c.node, "color": c.color, "top": c.top,
            "cliques": cliques, "sizes": sizes,
        }));
    }
    for e in &gad.clusters {
        rec.push(json!({"kind": "cluster", "clique": span(&e.clique), "cluster": span(&e.cluster)}));
    }
    rec
}

fn domino_meta(red: &DominoReduction) -> Vec<Value> {
    let mut rec = vec![json!({"kind": "domino", "k": red.k, "d": red.d, "L": red.l, "M": red.m})];
    for (v, c) in red.c.iter().enumerate() {
        rec.push(json!({"kind": "clique", "v": v + 1, "vertices": span(c)}));
    }
    for (w, s) in red.s.iter().enumerate() {
        rec.push(json!({"kind": "s", "w": w + 1, "y": s.start + 1, "vertices": span(s)}));
    }
    for &(u, v, z) in &red.z {
        rec.push(json!({"kind": "z", "u": u + 1, "v": v + 1, "z": z + 1}));
    }
    rec
}

fn generate(a: GenArgs) -> Res<ExitCode> {
    let (g, meta): (Graph, Option<Vec<Value>>) = match a.family {
        Family::Grid { m } => (gadgets::gen_grid(m), None),
        Family::Wall { m } => (gadgets::gen_wall(m), None),
        Family::Fan { m } => (gadgets::gen_fan(m), None),
        Family::Kbip { a, b } => (gadgets::gen_complete_bipartite(a, b), None),
        Family::Multitree { tree, m } => (gadgets::gen_multiple_tree(&io::read_gr(&tree)?, m), None),
        Family::Gnp { n, p, seed } => (gadgets::gen_gnp(n, p, seed), None),
        Family::Tree { n, seed } => (gadgets::gen_random_tree(n, seed), None),
        Family::Tcmis { instance } => {
            let text = std::fs::read_to_string(&instance).map_err(|e| format!("{}: {e}", instance.display()))?;
            let inst: TcmisInstance = serde_json::from_str(&text)?;
            let gad = gadgets::gen_tcmis_gadget(&inst)?;
            let meta = tcmis_meta(&gad);
            (gad.h, Some(meta))
        }
        Family::Domino { graph, k } => {
            let red = gadgets::gen_domino_reduction(&io::read_gr(&graph)?, k)?;
            let meta = domino_meta(&red);
            (red.h, Some(meta))
        }
    };
    let text = io::emit_gr(&g);
    match &a.out {
        Some(path) => io::write(path, &text)?,
        None => print!("{text}"),
    }
    if let (Some(path), Some(meta)) = (&a.meta, meta) {
        io::write(path, &io::emit_jsonl(&meta))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn bridge(a: BridgeArgs) -> Res<ExitCode> {
    let (out, k, bound): (Subdivided, usize, usize) = if let Some(p) = &a.from_tcd {
        let g = io::read_gr(&p[0])?;
        let (tcd, _, _) = io::read_tcd(&p[1])?;
        let k = verify_tcd(&g, &tcd)?.width;
        (tcd_to_subdivision_tp(&g, &tcd)?, k, tcd_bound(k))
    } else {
        let p = a.lift.as_ref().expect("clap enforces one mode");
        let g = io::read_gr(&p[0])?;
        let (tp, _) = io::read_tp(&p[1])?;
        let counts = io::read_counts(a.counts.as_ref().expect("clap enforces --counts"), &g)?;
        let k = tp.width();
        (tp_lift_subdivision(&g, &tp, &counts)?, k, k * (k + 1))
    };
    io::write(&a.out, &io::emit_gr(&out.graph))?;
    io::write(&a.tp, &io::emit_tp(&out.tp, out.graph.n()))?;
    let width = out.tp.width();
    Ok(result(
        width <= bound,
        format!(
            "status={} width={width} k={k} bound={bound}",
            if width <= bound { "ok" } else { "bound-exceeded" }
        ),
    ))
}

fn bench(a: BenchArgs) -> Res<ExitCode> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(&a.corpus)
        .map_err(|e| format!("{}: {e}", a.corpus.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "gr"))
        .collect();
    files.sort();
    let step1 = parse_step1(&a.step1, 0)?;
    let jobs: Vec<(&PathBuf, usize)> = files.iter().flat_map(|f| a.k.iter().map(move |&k| (f, k))).collect();
    let rows: Vec<Res<Vec<String>>> = jobs
        .par_iter()
        .map(|&(path, k)| -> Res<Vec<String>> {
            let g = io::read_gr(path)?;
            let mut params = PipelineParams::new(k);
            params.step1 = step1.clone();
            params.parallel = false;
            let outcome = pipeline::run(&g, &params)?;
            let field = |step: &str, key: &str| {
                outcome
                    .trace()
                    .iter()
                    .find(|r| r.step == step)
                    .and_then(|r| r.get(key))
                    .map(|v| v.to_string())
                    .unwrap_or_default()
            };
            let (status, cert, width) = match &outcome {
                PipelineOutcome::Partition { width, .. } => ("accept", String::new(), width.to_string()),
                PipelineOutcome::Reject { cert, .. } => ("reject", cert.kind().to_string(), String::new()),
            };
            let bound = match (
                field("decompose", "w").parse::<usize>(),
                field("partition", "delta_h").parse::<usize>(),
            ) {
                (Ok(w), Ok(d)) => format!("{:.1}", WoodConstants::new(w, d).bound()),
                _ => String::new(),
            };
            let name = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok(vec![
                name,
                g.n().to_string(),
                g.m().to_string(),
                k.to_string(),
                status.to_string(),
                cert,
                width,
                field("decompose", "w"),
                field("gb", "b"),
                field("gb", "gb_edges"),
                field("gb", "max_component"),
                field("partition", "delta_h"),
                bound,
                field("decompose", "millis"),
                field("gb", "millis"),
                field("reduce", "millis"),
                field("partition", "millis"),
                field("expand", "millis"),
            ])
        })
        .collect();
    let mut csv = csv::Writer::from_path(&a.report)?;
    csv.write_record([
        "instance",
        "n",
        "m",
        "k",
        "status",
        "certificate",
        "width",
        "w",
        "b",
        "gb_edges",
        "max_component",
        "delta_h",
        "wood_bound",
        "decompose_ms",
        "gb_ms",
        "reduce_ms",
        "partition_ms",
        "expand_ms",
    ])?;
    let count = rows.len();
    for row in rows {
        csv.write_record(row?)?;
    }
    csv.flush()?;
    Ok(result(true, format!("status=ok rows={count}")))
}
