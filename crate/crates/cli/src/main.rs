use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lca_orient::generators::{AdversarialInstance, AdversarialShape};
use lca_orient::harness::{
    self, adversarial_attack, component_census, default_attack_budget, loglog_fit,
    AttackStrategy, CensusMode, RunReport,
};
use lca_orient::io::{read_edge_list, write_edge_list};
use lca_orient::report::{write_csv, Envelope};
use lca_orient::{Algorithm, BuiltGraph, Graph, GraphSpec, OrientParams};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(name = "lca-orient", version, about = "Run local computation algorithms for orientation and forest coloring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orient every edge with an LCA and check the out-degree guarantee.
    Orient(OrientArgs),
    /// Color every vertex of a forest and check properness.
    Color(ColorArgs),
    /// Measure monochromatic or percolated component sizes.
    Census(CensusArgs),
    /// Orient the hidden red star of adversarial instances.
    Attack(AttackArgs),
    /// Fit the growth of max probes per query over a sweep of n.
    Scaling(ScalingArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
}

#[derive(Args, Serialize, Clone)]
struct Source {
    /// Generator spec, `name:key=value,...`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    graph: Option<String>,
    /// Edge-list file.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Serialize, Clone)]
struct Output {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials run with seeds seed, seed + 1, ...
    #[arg(long, default_value_t = 1)]
    trials: u64,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Serialize)]
struct AlgParams {
    /// Out-degree target.
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Declared arboricity; defaults to the generator's.
    #[arg(long)]
    alpha: Option<u32>,
    /// Declared maximum degree; defaults to the generator's.
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long, default_value_t = OrientParams::DEFAULT_C_SAMPLE)]
    c_sample: f64,
}

#[derive(Args, Serialize)]
struct OrientArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_parser = parse_orientation_alg)]
    alg: Algorithm,
    #[command(flatten)]
    params: AlgParams,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct ColorArgs {
    #[command(flatten)]
    source: Source,
    /// Edge labels; the palette has 2^labels colors.
    #[arg(long, default_value_t = 2)]
    labels: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct CensusArgs {
    #[command(flatten)]
    source: Source,
    /// Keep each edge with this probability.
    #[arg(long, conflicts_with = "palette", required_unless_present = "palette")]
    p: Option<f64>,
    /// Split edges into this many uniform color classes.
    #[arg(long)]
    palette: Option<u32>,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Degree bound used in the concentration bound; defaults to the
    /// generator's, else the graph's maximum degree.
    #[arg(long)]
    delta: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct AttackArgs {
    /// Adversarial instance spec, `adv:r=..,n=..` or `adv:s=..,t=..`.
    #[arg(long)]
    instance: String,
    /// `blind-id` or an orientation algorithm id.
    #[arg(long, default_value = "blind-id")]
    strategy: String,
    /// Target out-degree; defaults to the instance's r, else 2.
    #[arg(long)]
    r: Option<u32>,
    /// Probes per query; defaults to floor(0.001 sqrt(n) / r).
    #[arg(long, conflicts_with = "unlimited")]
    budget: Option<u64>,
    #[arg(long)]
    unlimited: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct ScalingArgs {
    /// Family spec; its `n` is replaced by each sweep point.
    #[arg(long)]
    graph: String,
    /// Comma-separated sizes, at least four.
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    #[arg(long, value_parser = parse_orientation_alg)]
    alg: Algorithm,
    #[command(flatten)]
    params: AlgParams,
    /// Use r = ceil(sqrt(n)) at every sweep point.
    #[arg(long)]
    r_sqrt_n: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct GenArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_orientation_alg(s: &str) -> Result<Algorithm, String> {
    let alg: Algorithm = s.parse().map_err(|e: lca_orient::Error| e.to_string())?;
    if alg.answers_edges() {
        Ok(alg)
    } else {
        Err(format!("{alg} colors vertices; use the color subcommand"))
    }
}

struct Loaded {
    spec: Option<GraphSpec>,
    built: BuiltGraph,
}

impl Source {
    fn spec(&self) -> anyhow::Result<Option<GraphSpec>> {
        self.graph.as_deref().map(str::parse).transpose().map_err(Into::into)
    }

    fn load(&self, seed: u64) -> anyhow::Result<Loaded> {
        let spec = self.spec()?;
        let built = match (&spec, &self.input) {
            (Some(spec), _) => spec.build(seed)?,
            (None, Some(path)) => {
                let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
                BuiltGraph::Plain(read_edge_list(BufReader::new(file))?.graph)
            }
            (None, None) => bail!("one of --graph or --input is required"),
        };
        Ok(Loaded { spec, built })
    }
}

impl Output {
    fn seeds(&self) -> Vec<u64> {
        (0..self.trials).map(|i| self.seed.wrapping_add(i)).collect()
    }

    fn emit<T: Serialize>(&self, envelope: &Envelope<T>, records: Vec<Value>) -> anyhow::Result<()> {
        let mut sink: Box<dyn Write> = match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        };
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut sink, envelope)?;
                writeln!(sink)?;
            }
            Format::Csv => write_csv(&records, &mut sink)?,
        }
        sink.flush()?;
        Ok(())
    }
}

fn timing(start: Instant) -> Value {
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({ "timestamp": timestamp, "wall_ms": start.elapsed().as_secs_f64() * 1e3 })
}

fn orient_params(args: &AlgParams, spec: Option<&GraphSpec>, g: &Graph) -> OrientParams {
    let mut p = OrientParams::new(g.n(), args.r);
    p.alpha = args.alpha.or(spec.map(GraphSpec::declared_alpha)).unwrap_or(1);
    p.max_degree = args.delta.or(spec.and_then(GraphSpec::declared_max_degree));
    p.c_sample = args.c_sample;
    p
}

fn run_records(runs: &[RunReport]) -> anyhow::Result<Vec<Value>> {
    runs.iter().map(|r| Ok(serde_json::to_value(r)?)).collect()
}

/// Writes the report; a failed verdict maps to the violation exit code.
fn finish<T: Serialize>(
    command: &str,
    output: &Output,
    params: Value,
    results: T,
    records: Vec<Value>,
    passed: bool,
    start: Instant,
) -> anyhow::Result<u8> {
    let envelope = Envelope::new(command, output.seeds(), params, results, timing(start));
    output.emit(&envelope, records)?;
    Ok(if passed { 0 } else { EXIT_VIOLATION })
}

fn cmd_orient(args: &OrientArgs) -> anyhow::Result<u8> {
    let start = Instant::now();
    let mut runs = Vec::new();
    for seed in args.output.seeds() {
        let loaded = args.source.load(seed)?;
        let g = loaded.built.graph();
        let p = orient_params(&args.params, loaded.spec.as_ref(), g);
        let (_, report) = harness::run_orientation(g, args.alg, &p, seed)?;
        runs.push(report);
    }
    let passed = runs.iter().all(RunReport::passed);
    let max = runs
        .iter()
        .filter_map(|r| r.orientation.as_ref().map(|o| o.max_out_degree))
        .max();
    let records = run_records(&runs)?;
    let results = json!({ "passed": passed, "max_out_degree": max, "runs": runs });
    finish("orient", &args.output, serde_json::to_value(args)?, results, records, passed, start)
}

fn cmd_color(args: &ColorArgs) -> anyhow::Result<u8> {
    let start = Instant::now();
    let mut runs = Vec::new();
    for seed in args.output.seeds() {
        let loaded = args.source.load(seed)?;
        let g = loaded.built.graph();
        let mut p = OrientParams::new(g.n(), 1);
        p.labels = args.labels;
        let (_, report) = harness::run_coloring(g, &p, seed)?;
        runs.push(report);
    }
    let passed = runs.iter().all(RunReport::passed);
    let records = run_records(&runs)?;
    let results = json!({ "passed": passed, "runs": runs });
    finish("color", &args.output, serde_json::to_value(args)?, results, records, passed, start)
}

fn cmd_census(args: &CensusArgs) -> anyhow::Result<u8> {
    let start = Instant::now();
    let mode = match (args.p, args.palette) {
        (Some(p), _) => CensusMode::Keep { p },
        (None, Some(palette)) => CensusMode::Palette { palette },
        (None, None) => bail!("one of --p or --palette is required"),
    };
    let mut runs = Vec::new();
    for seed in args.output.seeds() {
        let loaded = args.source.load(seed)?;
        let g = loaded.built.graph();
        if let Some(v) = harness::find_cycle_vertex(g) {
            return Err(lca_orient::Error::NotAForest(v).into());
        }
        let delta = args
            .delta
            .or(loaded.spec.as_ref().and_then(GraphSpec::declared_max_degree))
            .unwrap_or(g.max_degree().max(2) as u32);
        runs.push(component_census(g, mode, seed, delta, args.eps)?);
    }
    let exceedances = runs.iter().filter(|c| c.exceeds_bound).count();
    let records = runs
        .iter()
        .map(|c| {
            json!({
                "seed": c.seed, "n": c.n, "delta": c.delta, "eps": c.eps,
                "density": c.mode.density(), "max_component": c.max_component,
                "bound": c.bound, "bound_applies": c.bound_applies,
                "exceeds_bound": c.exceeds_bound,
            })
        })
        .collect();
    let results = json!({ "exceedances": exceedances, "trials": runs.len(), "runs": runs });
    // Exceedances are reported, not failed on: the bound holds with high probability only.
    finish("census", &args.output, serde_json::to_value(args)?, results, records, true, start)
}

fn attack_strategy(args: &AttackArgs, inst: &AdversarialInstance, r: u32) -> anyhow::Result<AttackStrategy> {
    if args.strategy == "blind-id" {
        return Ok(AttackStrategy::BlindId);
    }
    let algorithm = parse_orientation_alg(&args.strategy).map_err(|e| anyhow!(e))?;
    let budget = if args.unlimited {
        None
    } else {
        Some(args.budget.unwrap_or_else(|| default_attack_budget(inst, r)))
    };
    Ok(AttackStrategy::Algorithm { algorithm, r, budget })
}

fn cmd_attack(args: &AttackArgs) -> anyhow::Result<u8> {
    let start = Instant::now();
    let spec: GraphSpec = args.instance.parse()?;
    let shape = match spec {
        GraphSpec::Adversarial(shape) => shape,
        other => bail!("--instance must be an adv: spec, got {other}"),
    };
    let r = args.r.unwrap_or(match shape {
        AdversarialShape::Derived { r, .. } => r,
        AdversarialShape::Explicit { .. } => 2,
    });
    let mut runs = Vec::new();
    for seed in args.output.seeds() {
        let BuiltGraph::Adversarial(inst) = spec.build(seed)? else {
            unreachable!("adv specs build adversarial instances")
        };
        let strategy = attack_strategy(args, &inst, r)?;
        runs.push(adversarial_attack(&inst, strategy, seed)?);
    }
    let k = runs.len().max(1) as f64;
    let mean = runs.iter().map(|a| a.center_out_degree as f64).sum::<f64>() / k;
    let violations = runs.iter().filter(|a| a.center_out_degree > r).count();
    let records = runs.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
    let results = json!({
        "r": r,
        "mean_center_out_degree": mean,
        "violations": violations,
        "trials": runs.len(),
        "runs": runs,
    });
    // The attack demonstrates failures; it does not fail itself.
    finish("attack", &args.output, serde_json::to_value(args)?, results, records, true, start)
}

fn theoretical_slope(args: &ScalingArgs, spec: &GraphSpec) -> Option<f64> {
    match args.alg {
        Algorithm::HighDegree => Some(0.0),
        Algorithm::BoundedForest => {
            let delta = args.params.delta.or(spec.declared_max_degree())? as f64;
            Some(1.0 - (args.params.r as f64).ln() / delta.ln())
        }
        Algorithm::ColorForest => Some(if args.r_sqrt_n { 0.5 } else { 1.0 }),
        _ => None,
    }
}

fn cmd_scaling(args: &ScalingArgs) -> anyhow::Result<u8> {
    let start = Instant::now();
    let family: GraphSpec = args.graph.parse()?;
    let mut points = Vec::new();
    let mut runs = Vec::new();
    for &n in &args.ns {
        let spec = family.with_n(n)?;
        let mut worst = 0u64;
        for seed in args.output.seeds() {
            let g = spec.build(seed)?.into_graph();
            let mut p = orient_params(&args.params, Some(&spec), &g);
            if args.r_sqrt_n {
                p.r = (n as f64).sqrt().ceil() as u32;
            }
            let (_, report) = harness::run_orientation(&g, args.alg, &p, seed)?;
            worst = worst.max(report.probes.total.max);
            runs.push(report);
        }
        points.push((n, worst));
    }
    let fit = loglog_fit(
        &points
            .iter()
            .map(|&(n, w)| (n as f64, w.max(1) as f64))
            .collect::<Vec<_>>(),
    )?;
    let records = points
        .iter()
        .map(|&(n, w)| json!({ "n": n, "max_probes": w }))
        .collect();
    let results = json!({
        "points": points.iter().map(|&(n, w)| json!({ "n": n, "max_probes": w })).collect::<Vec<_>>(),
        "fit": fit,
        "theoretical_slope": theoretical_slope(args, &family),
        "runs": runs,
    });
    let passed = runs.iter().all(RunReport::passed);
    finish("scaling", &args.output, serde_json::to_value(args)?, results, records, passed, start)
}

fn cmd_gen(args: &GenArgs) -> anyhow::Result<u8> {
    let spec: GraphSpec = args.graph.parse()?;
    let g = spec.build(args.seed)?.into_graph();
    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_edge_list(&g, BufWriter::new(file))?;
        }
        None => write_edge_list(&g, io::stdout().lock())?,
    }
    Ok(0)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<lca_orient::Error>() {
        Some(e) if e.is_guarantee_violation() => EXIT_VIOLATION,
        Some(e) if e.is_precondition() => EXIT_PRECONDITION,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Orient(a) => cmd_orient(a),
        Command::Color(a) => cmd_color(a),
        Command::Census(a) => cmd_census(a),
        Command::Attack(a) => cmd_attack(a),
        Command::Scaling(a) => cmd_scaling(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
