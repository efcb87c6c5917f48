//! `sigmacol`: command-line front end for the sigma-colouring toolkit.
//!
//! One command per process; everything is plain text in and text/CSV out,
//! and seeded commands are byte-deterministic. Exit codes: 0 success,
//! 1 usage error, 2 validation failure (with the violated invariant named).

use clap::{Args, Parser, Subcommand};
use sigmacol::colouring::{
    self, ChromaticOutcome, GreedyOutcome, ListAssignment, PipelineOutcome,
    PipelineParams,
};
use sigmacol::graph::{degeneracy_ordering, EmbeddedGraph, SimpleGraph};
use sigmacol::hardcore::{activities_from_marginals, ActivityVector, HardcoreModel};
use sigmacol::polytope::{
    chi_f_by_bisection, edmonds_membership, fractional_chromatic_index, MarginalVector,
    DEFAULT_MATCHING_BUDGET,
};
use sigmacol::scalar::parse_scalar;
use sigmacol::sigma::{self, SigmaSystem};
use sigmacol::{clique, discharge, io, kahn, reduction, zeta_star, Colour, EdgeId, Rational};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sigmacol", version, about = "Sigma-colouring toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one of the built-in families.
    Gen(GenArgs),
    /// Validate instance files against their invariants.
    Check(CheckArgs),
    /// Maximum Σ-clique of an instance.
    Clique(CliqueArgs),
    /// Greedy, exact or pipeline Σ-colouring.
    Colour(ColourArgs),
    /// Discharging: structure detection and charge ledgers.
    Discharge(DischargeArgs),
    /// Reduce a detected S3 structure to G0 / Σ0.
    Reduce(ReduceArgs),
    /// Matching polytope queries.
    Polytope(PolytopeArgs),
    /// Hardcore distributions over matchings.
    Hardcore(HardcoreArgs),
    /// The randomized list edge-colouring engine.
    Kahn(KahnArgs),
    /// Instance statistics.
    Report(ReportArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family: wegner | borodin | subdivided-complete.
    family: String,
    /// Size parameter for wegner/borodin.
    #[arg(long)]
    k: Option<u32>,
    /// Size parameter for subdivided-complete.
    #[arg(long)]
    n: Option<u32>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    /// Instance file (embedded if it has a surface_chi header).
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    sigma: Option<PathBuf>,
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Vertex colouring to validate against the instance.
    #[arg(long)]
    colouring: Option<PathBuf>,
}

#[derive(Args)]
struct CliqueArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Use Σ = N (clique of the square).
    #[arg(long)]
    square: bool,
    /// Σ-system file.
    #[arg(long)]
    sigma: Option<PathBuf>,
    /// Cyclic clique via the face-vertex reduction (embedded input).
    #[arg(long)]
    cyclic: bool,
    #[arg(long, default_value_t = clique::DEFAULT_CLIQUE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct ColourArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// greedy | exact | pipeline.
    #[arg(long)]
    mode: String,
    #[arg(long)]
    sigma: Option<PathBuf>,
    /// Σ = N shortcut.
    #[arg(long)]
    square: bool,
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Uniform palette {0..k} when no list file is given.
    #[arg(long)]
    colours: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    zeta: Option<i64>,
    #[arg(long, default_value_t = 0.2)]
    delta: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DischargeArgs {
    /// detect | ledger.
    verb: String,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    zeta: Option<i64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    sigma: PathBuf,
    #[arg(long)]
    zeta: Option<i64>,
    #[arg(long)]
    beta: Option<usize>,
    /// Output prefix: writes <prefix>.graph and <prefix>.sigma.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Colour lists for the host vertices (needed for --emit-h).
    #[arg(long)]
    lists: Option<PathBuf>,
    /// A partial colouring of V minus Y (needed for --emit-h).
    #[arg(long)]
    partial: Option<PathBuf>,
    /// Write the multigraph list edge-colouring instance here.
    #[arg(long)]
    emit_h: Option<PathBuf>,
}

#[derive(Args)]
struct PolytopeArgs {
    /// member | chi-f.
    verb: String,
    #[arg(short, long)]
    input: PathBuf,
    /// Marginal vector file (`x <edge-id> <rational>` lines).
    #[arg(long)]
    x: Option<PathBuf>,
    /// Scale λ for membership, as a rational.
    #[arg(long, default_value = "1")]
    scale: String,
    /// Cross-check chi-f against the hull oracle bisection.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct HardcoreArgs {
    /// fit | sample | marginals.
    verb: String,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    x: Option<PathBuf>,
    #[arg(long)]
    lam: Option<PathBuf>,
    #[arg(long, default_value_t = 0.2)]
    delta: f64,
    #[arg(short = 'n', long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct KahnArgs {
    /// run.
    verb: String,
    /// Matching-instance file: edge + list (+ sigma) lines.
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    retries: usize,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long = "T", alias = "t")]
    t: Option<usize>,
    #[arg(long, default_value_t = 0.2)]
    delta: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    telemetry: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    sigma: Option<PathBuf>,
}

fn main() -> ExitCode {
    // die quietly when a pipe closes instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    env_logger::init();
    if let Ok(cap) = std::env::var("SIGMA_COLOUR_THREADS") {
        // all kernels are sequential; the cap is accepted and logged
        log::info!("thread cap requested: {cap} (kernels run single-threaded)");
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn header(seed: Option<u64>) -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut h = format!("# sigmacol {}\n", env!("CARGO_PKG_VERSION"));
    if let Some(s) = seed {
        let _ = writeln!(h, "# seed={s}");
    }
    let _ = writeln!(h, "# args={}", args.join(" "));
    h
}

fn read(path: &Path) -> sigmacol::Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        sigmacol::Error::Validation(format!("cannot read {}: {e}", path.display()))
    })
}

fn write_out(path: &Path, content: &str) -> sigmacol::Result<()> {
    std::fs::write(path, content).map_err(|e| {
        sigmacol::Error::Validation(format!("cannot write {}: {e}", path.display()))
    })
}

/// Load a graph file: embedded when a surface_chi header is present.
fn load_graph(path: &Path) -> sigmacol::Result<(SimpleGraph, Option<EmbeddedGraph>)> {
    let text = read(path)?;
    if text.lines().any(|l| l.trim_start().starts_with("surface_chi")) {
        let e = io::parse_embedded(&text)?;
        Ok((e.graph().clone(), Some(e)))
    } else {
        Ok((io::parse_simple_graph(&text)?, None))
    }
}

fn load_sigma_for(
    g: &SimpleGraph,
    square: bool,
    sigma: &Option<PathBuf>,
) -> sigmacol::Result<SigmaSystem> {
    let s = match (square, sigma) {
        (true, _) => SigmaSystem::full_neighbourhood(g),
        (false, Some(p)) => io::parse_sigma(&read(p)?)?,
        (false, None) => SigmaSystem::empty(),
    };
    s.validate(g)?;
    Ok(s)
}

fn dispatch(cli: Cli) -> sigmacol::Result<()> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Check(a) => cmd_check(a),
        Command::Clique(a) => cmd_clique(a),
        Command::Colour(a) => cmd_colour(a),
        Command::Discharge(a) => cmd_discharge(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Polytope(a) => cmd_polytope(a),
        Command::Hardcore(a) => cmd_hardcore(a),
        Command::Kahn(a) => cmd_kahn(a),
        Command::Report(a) => cmd_report(a),
    }
}

fn cmd_gen(a: GenArgs) -> sigmacol::Result<()> {
    let mut out = header(None);
    match a.family.as_str() {
        "wegner" => {
            let k = a.k.ok_or_else(|| usage("gen wegner needs --k"))?;
            out.push_str(&io::write_embedded(&sigma::wegner(k)?));
        }
        "borodin" => {
            let k = a.k.ok_or_else(|| usage("gen borodin needs --k"))?;
            out.push_str(&io::write_embedded(&sigma::borodin(k)?));
        }
        "subdivided-complete" | "subdivided_complete" => {
            let n = a.n.ok_or_else(|| usage("gen subdivided-complete needs --n"))?;
            let (g, s) = sigma::subdivided_complete(n)?;
            out.push_str(&io::write_simple_graph(&g));
            out.push_str(&io::write_sigma(&s));
        }
        other => return Err(usage(&format!("unknown family `{other}`"))),
    }
    write_out(&a.output, &out)?;
    println!("wrote {}", a.output.display());
    Ok(())
}

fn usage(msg: &str) -> sigmacol::Error {
    sigmacol::Error::Precondition(msg.to_string())
}

fn cmd_check(a: CheckArgs) -> sigmacol::Result<()> {
    let (g, embedded) = load_graph(&a.input)?;
    if let Some(e) = &embedded {
        let trace = e.trace_faces()?;
        let total: usize = trace.walks.iter().map(|w| w.degree()).sum();
        if total != 2 * g.edge_count() {
            return Err(sigmacol::Error::Validation(
                "face double counting failed".into(),
            ));
        }
        println!(
            "embedded ok: chi={} cellular={} faces={}",
            e.surface_chi(),
            e.is_cellular() as u8,
            trace.face_count()
        );
    } else {
        println!("graph ok: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    }
    let s = match &a.sigma {
        Some(p) => {
            let s = io::parse_sigma(&read(p)?)?;
            s.validate(&g)?;
            println!("sigma ok: beta={}", s.beta());
            s
        }
        None => SigmaSystem::empty(),
    };
    let lists = match &a.lists {
        Some(p) => {
            let l = ListAssignment::new(io::parse_lists(&read(p)?)?);
            l.covers(&g)?;
            println!("lists ok: min size {}", l.min_size());
            Some(l)
        }
        None => None,
    };
    if let Some(p) = &a.colouring {
        let col = colouring::Colouring {
            assignment: io::parse_colouring(&read(p)?)?,
        };
        colouring::validate_colouring(&g, &s, &col, lists.as_ref())?;
        println!("colouring ok");
    }
    Ok(())
}

fn cmd_clique(a: CliqueArgs) -> sigmacol::Result<()> {
    let (g, embedded) = load_graph(&a.input)?;
    let outcome = if a.cyclic {
        let e = embedded.ok_or_else(|| usage("--cyclic needs an embedded input"))?;
        sigma::cyclic_instance(&e)?.cyclic_clique_number(a.budget)?
    } else {
        let s = load_sigma_for(&g, a.square, &a.sigma)?;
        sigma::sigma_clique_number(&g, &s, a.budget)?
    };
    println!("{}", outcome.size());
    let tag = if outcome.is_exact() { "exact" } else { "lower-bound (budget exceeded)" };
    println!("# {tag}; witness: {:?}", outcome.witness());
    Ok(())
}

fn cmd_colour(a: ColourArgs) -> sigmacol::Result<()> {
    let (g, embedded) = load_graph(&a.input)?;
    let mut s = load_sigma_for(&g, a.square, &a.sigma)?;
    if !a.square && a.sigma.is_none() {
        // sigma lines may live in the instance file itself
        s = io::parse_sigma(&read(&a.input)?)?;
        s.validate(&g)?;
    }
    let lists = match (&a.lists, a.colours) {
        (Some(p), _) => ListAssignment::new(io::parse_lists(&read(p)?)?),
        (None, Some(k)) => ListAssignment::uniform(&g, k),
        (None, None) => ListAssignment::uniform(&g, g.vertex_count() as u32),
    };
    match a.mode.as_str() {
        "exact" => {
            match colouring::exact_sigma_chromatic(&g, &s, colouring::DEFAULT_SOLVER_NODE_BUDGET)? {
                ChromaticOutcome::Exact(k) => println!("{k}"),
                ChromaticOutcome::Bounds { lower, upper } => {
                    println!("# exact bound unavailable");
                    println!("bounds {lower} {upper}");
                }
            }
            Ok(())
        }
        "greedy" => {
            let order = degeneracy_ordering(&g);
            match colouring::greedy_sigma_colouring(&g, &s, &lists, &order)? {
                GreedyOutcome::Coloured(c) => {
                    emit_colouring(&a.output, a.seed, &c.assignment)?;
                    println!("coloured {} vertices", c.assignment.len());
                    Ok(())
                }
                GreedyOutcome::Failed { at_vertex } => Err(sigmacol::Error::Validation(format!(
                    "greedy failed at vertex {at_vertex}"
                ))),
            }
        }
        "pipeline" => {
            let e = embedded.ok_or_else(|| usage("pipeline needs an embedded input"))?;
            let params = PipelineParams {
                zeta: a.zeta,
                delta: a.delta,
                seed: a.seed,
                ..Default::default()
            };
            match colouring::pipeline_sigma_colour(&e, &s, &lists, &params)? {
                PipelineOutcome::Coloured { colouring, trace } => {
                    emit_colouring(&a.output, a.seed, &colouring.assignment)?;
                    for t in &trace {
                        println!("# {t}");
                    }
                    println!("coloured {} vertices", colouring.assignment.len());
                    Ok(())
                }
                PipelineOutcome::Failed { stage, detail, .. } => Err(
                    sigmacol::Error::Validation(format!("pipeline failed at {stage}: {detail}")),
                ),
            }
        }
        other => Err(usage(&format!("unknown mode `{other}`"))),
    }
}

fn emit_colouring(
    out: &Option<PathBuf>,
    seed: u64,
    assignment: &BTreeMap<u32, Colour>,
) -> sigmacol::Result<()> {
    let mut text = header(Some(seed));
    text.push_str(&io::write_colouring(assignment));
    match out {
        Some(p) => write_out(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_discharge(a: DischargeArgs) -> sigmacol::Result<()> {
    let text = read(&a.input)?;
    let e = io::parse_embedded(&text)?;
    let zeta = a.zeta.unwrap_or_else(|| zeta_star(e.surface_chi()));
    match a.verb.as_str() {
        "detect" => {
            let mut out = header(None);
            match discharge::detect_structure(&e, zeta)? {
                discharge::DetectOutcome::Witness(w) => {
                    let report = discharge::validate_witness(&e, &w)?;
                    out.push_str(&format_witness(&w, &report));
                }
                discharge::DetectOutcome::NoneFound { reason } => {
                    let _ = writeln!(out, "witness none zeta {zeta}");
                    let _ = writeln!(out, "# {reason}");
                }
            }
            match &a.output {
                Some(p) => write_out(p, &out)?,
                None => print!("{out}"),
            }
            Ok(())
        }
        "ledger" => {
            let ledger = discharge::compute_charges(&e, zeta);
            let mut out = header(None);
            let _ = writeln!(out, "vertex,initial,final,transfers");
            for (v, &init) in &ledger.initial {
                let transfers: Vec<String> = ledger
                    .transfers
                    .iter()
                    .filter(|t| t.from == *v || t.to == *v)
                    .map(|t| format!("{}:{}->{}:{}", t.rule, t.from, t.to, t.amount))
                    .collect();
                let _ = writeln!(
                    out,
                    "{v},{init},{},{}",
                    ledger.final_[v],
                    transfers.join(";")
                );
            }
            let _ = writeln!(
                out,
                "# totals: initial={} final={}",
                ledger.initial_total(),
                ledger.final_total()
            );
            match &a.output {
                Some(p) => write_out(p, &out)?,
                None => print!("{out}"),
            }
            Ok(())
        }
        other => Err(usage(&format!("unknown discharge verb `{other}`"))),
    }
}

fn format_witness(w: &discharge::StructureWitness, report: &discharge::ValidationReport) -> String {
    let mut out = String::new();
    match w {
        discharge::StructureWitness::S1 { zeta } => {
            let _ = writeln!(out, "witness S1 zeta {zeta}");
        }
        discharge::StructureWitness::S2 { zeta, v, big_neighbour } => {
            let big = big_neighbour
                .map(|b| b.to_string())
                .unwrap_or_else(|| "none".into());
            let _ = writeln!(out, "witness S2 zeta {zeta} v {v} big {big}");
        }
        discharge::StructureWitness::S3 { zeta, x, y, xy } => {
            let _ = writeln!(out, "witness S3 zeta {zeta}");
            let xs: Vec<String> = x.iter().map(|v| v.to_string()).collect();
            let ys: Vec<String> = y.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "X: {}", xs.join(" "));
            let _ = writeln!(out, "Y: {}", ys.join(" "));
            for (y, (a, b)) in xy {
                let _ = writeln!(out, "Xy {y}: {a} {b}");
            }
        }
    }
    let _ = writeln!(out, "# valid={} mode={:?}", report.valid as u8, report.mode);
    for v in &report.violations {
        let _ = writeln!(out, "# violation: {v}");
    }
    out
}

fn cmd_reduce(a: ReduceArgs) -> sigmacol::Result<()> {
    let e = io::parse_embedded(&read(&a.input)?)?;
    let s = io::parse_sigma(&read(&a.sigma)?)?;
    s.validate(e.graph())?;
    let zeta = a.zeta.unwrap_or_else(|| zeta_star(e.surface_chi()));
    match discharge::detect_structure(&e, zeta)? {
        discharge::DetectOutcome::Witness(w @ discharge::StructureWitness::S3 { .. }) => {
            let beta = a.beta.unwrap_or_else(|| {
                s.beta().max(e.graph().max_degree()).max(1) * 4
            });
            let red = reduction::build_reduced_instance(&e, &s, &w, beta)?;
            // write artifacts before any chatter so a closed pipe cannot
            // leave them missing
            if let Some(prefix) = &a.output {
                let gpath = prefix.with_extension("graph");
                let spath = prefix.with_extension("sigma");
                write_out(&gpath, &(header(None) + &io::write_embedded(&red.g0)))?;
                write_out(&spath, &(header(None) + &io::write_sigma(&red.sigma0)))?;
                println!("wrote {} and {}", gpath.display(), spath.display());
            }
            if let Some(hpath) = &a.emit_h {
                let lists = a
                    .lists
                    .as_ref()
                    .ok_or_else(|| usage("--emit-h needs --lists"))?;
                let partial = a
                    .partial
                    .as_ref()
                    .ok_or_else(|| usage("--emit-h needs --partial"))?;
                let lists = ListAssignment::new(io::parse_lists(&read(lists)?)?);
                let partial = io::parse_colouring(&read(partial)?)?;
                let mi = reduction::build_matching_instance(&e, &s, &w, &partial, &lists, zeta)?;
                write_out(hpath, &(header(None) + &io::write_matching_instance(&mi)))?;
                println!("wrote {}", hpath.display());
            }
            println!(
                "reduced: {} -> {} vertices, {} moves",
                e.graph().vertex_count(),
                red.g0.graph().vertex_count(),
                red.trace.len()
            );
            for m in &red.trace {
                println!("# y {} {:?}", m.y, m.kind);
            }
            Ok(())
        }
        discharge::DetectOutcome::Witness(w) => Err(sigmacol::Error::Validation(format!(
            "detector found {} rather than S3; nothing to reduce",
            w.kind()
        ))),
        discharge::DetectOutcome::NoneFound { reason } => {
            Err(sigmacol::Error::Validation(format!("no structure found: {reason}")))
        }
    }
}

fn cmd_polytope(a: PolytopeArgs) -> sigmacol::Result<()> {
    let h = io::parse_multigraph(&read(&a.input)?)?;
    match a.verb.as_str() {
        "member" => {
            let xfile = a.x.as_ref().ok_or_else(|| usage("member needs --x"))?;
            let x = MarginalVector::new(io::parse_vector::<Rational>(&read(xfile)?, "x")?);
            let scale: Rational = parse_scalar(&a.scale)
                .ok_or_else(|| usage("--scale must be a rational"))?;
            let verdict = edmonds_membership(&h, &x, scale)?;
            println!("{}", if verdict.inside { "inside" } else { "outside" });
            if let Some(c) = &verdict.violated {
                println!("# violated: {c:?}");
            }
            println!("# mode={:?}", verdict.mode);
            Ok(())
        }
        "chi-f" => {
            let chi = fractional_chromatic_index(&h)?;
            println!("{chi}");
            if a.verify {
                let searched = chi_f_by_bisection(&h, 1e-9)?;
                println!("# bisection: {searched}");
            }
            Ok(())
        }
        other => Err(usage(&format!("unknown polytope verb `{other}`"))),
    }
}

fn cmd_hardcore(a: HardcoreArgs) -> sigmacol::Result<()> {
    let h = io::parse_multigraph(&read(&a.input)?)?;
    match a.verb.as_str() {
        "fit" => {
            let xfile = a.x.as_ref().ok_or_else(|| usage("fit needs --x"))?;
            let x = MarginalVector::new(io::parse_vector::<f64>(&read(xfile)?, "x")?);
            let lam = activities_from_marginals(&h, &x, a.delta, DEFAULT_MATCHING_BUDGET)?;
            let mut out = header(None);
            out.push_str(&io::write_vector(&lam.values, "lam"));
            match &a.output {
                Some(p) => write_out(p, &out)?,
                None => print!("{out}"),
            }
            Ok(())
        }
        "marginals" => {
            let lamfile = a.lam.as_ref().ok_or_else(|| usage("marginals needs --lam"))?;
            let lam = ActivityVector::new(io::parse_vector::<f64>(&read(lamfile)?, "lam")?)?;
            let model = HardcoreModel::new(h, lam, DEFAULT_MATCHING_BUDGET)?;
            let mut out = header(None);
            out.push_str(&io::write_vector(&model.marginals().values, "x"));
            match &a.output {
                Some(p) => write_out(p, &out)?,
                None => print!("{out}"),
            }
            Ok(())
        }
        "sample" => {
            let lamfile = a.lam.as_ref().ok_or_else(|| usage("sample needs --lam"))?;
            let lam = ActivityVector::new(io::parse_vector::<f64>(&read(lamfile)?, "lam")?)?;
            let model = HardcoreModel::new(h, lam, DEFAULT_MATCHING_BUDGET)?;
            let mut counts: BTreeMap<Vec<EdgeId>, u64> = BTreeMap::new();
            for i in 0..a.samples {
                *counts.entry(model.sample_matching(a.seed, i)).or_default() += 1;
            }
            let mut out = header(Some(a.seed));
            for (m, c) in &counts {
                let ids: Vec<String> = m.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(out, "matching [{}] count {c}", ids.join(" "));
            }
            match &a.output {
                Some(p) => write_out(p, &out)?,
                None => print!("{out}"),
            }
            Ok(())
        }
        other => Err(usage(&format!("unknown hardcore verb `{other}`"))),
    }
}

fn cmd_kahn(a: KahnArgs) -> sigmacol::Result<()> {
    if a.verb != "run" {
        return Err(usage(&format!("unknown kahn verb `{}`", a.verb)));
    }
    let text = read(&a.input)?;
    let h = io::parse_multigraph(&text)?;
    let lists: BTreeMap<EdgeId, BTreeSet<Colour>> = io::parse_lists(&text)?;
    let params = kahn::KahnParams {
        k: None,
        s: a.s,
        t: a.t,
        retries: a.retries,
        seed: a.seed,
        delta: a.delta,
    };
    match kahn::run(&h, &lists, &params)? {
        kahn::RunOutcome::Success {
            colouring,
            telemetry,
            attempts,
        } => {
            let mut out = header(Some(a.seed));
            out.push_str(&io::write_colouring(&colouring));
            match &a.output {
                Some(p) => write_out(p, &out)?,
                None => print!("{out}"),
            }
            // the telemetry CSV rides along with the colouring by default
            let tpath = a.telemetry.clone().or_else(|| {
                a.output
                    .as_ref()
                    .map(|p| p.with_extension("telemetry.csv"))
            });
            if let Some(tpath) = tpath {
                let mut csv = header(Some(a.seed));
                let _ = writeln!(csv, "step,colour,matched,remaining_edges");
                for row in &telemetry {
                    let _ = writeln!(
                        csv,
                        "{},{},{},{}",
                        row.step, row.colour, row.matched, row.remaining_edges
                    );
                }
                write_out(&tpath, &csv)?;
            }
            println!("success after {attempts} attempt(s)");
            Ok(())
        }
        kahn::RunOutcome::Failure { report } => Err(sigmacol::Error::Validation(format!(
            "engine failed: {report}"
        ))),
    }
}

fn cmd_report(a: ReportArgs) -> sigmacol::Result<()> {
    let (g, embedded) = load_graph(&a.input)?;
    println!("vertices {}", g.vertex_count());
    println!("edges {}", g.edge_count());
    println!("max_degree {}", g.max_degree());
    println!("connected {}", g.is_connected() as u8);
    let d = degeneracy_ordering(&g);
    println!("degeneracy {}", d.q);
    if let Some(e) = &embedded {
        let trace = e.trace_faces()?;
        println!("surface_chi {}", e.surface_chi());
        println!("cellular {}", e.is_cellular() as u8);
        println!("faces {}", trace.face_count());
        println!("max_face_order {}", trace.max_order());
        println!("euler_residual {}", e.euler_residual()?);
    }
    if let Some(p) = &a.sigma {
        let s = io::parse_sigma(&read(p)?)?;
        s.validate(&g)?;
        println!("beta {}", s.beta());
        println!("sigma_entries {}", s.entries().count());
    }
    Ok(())
}
