use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use critset::analysis::{analyze, AnalysisReport};
use critset::fixtures::{fixture_names, load_unchecked, validate_fixture};
use critset::harness::{conjecture_scan, run, select, ConjectureReport, CorpusSpec, RunOptions, RunReport, Source};
use critset::parse::{parse_graph, Format};
use critset::props::{registry, Invariants, Verdict};
use critset::{Graph, Limits, Status};

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const USAGE: u8 = 2;
const LIMITS: u8 = 3;

#[derive(Parser)]
#[command(name = "critset", version, about = "Critical-set invariants of finite simple graphs")]
struct Cli {
    /// Largest n for subset-enumeration cross-checks.
    #[arg(long, global = true, default_value_t = Limits::default().oracle)]
    oracle_limit: usize,
    /// Skip every enumeration-based cross-check.
    #[arg(long, global = true)]
    no_oracle: bool,
    /// Exit with status 3 when any check was skipped for size.
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads for corpus runs.
    #[arg(long, global = true, env = "CRITSET_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Dimacs,
}

#[derive(Args)]
struct Input {
    file: PathBuf,
    /// Input format; detected from the contents when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant of one graph.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate registry properties on one graph.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        property: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Registry properties on seeded random graphs.
    Fuzz {
        /// Vertex count or inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        /// Edge probabilities, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Registry properties on every labeled graph with exactly n vertices.
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Registry properties on a corpus described by a TOML file.
    Run {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Scan for graphs with |ker| + |diadem| > 2 alpha or 2 alpha > |core| + |corona|.
    Conjecture {
        /// Every labeled graph with at most this many vertices.
        #[arg(long, required_unless_present = "corpus", conflicts_with = "corpus")]
        max_n: Option<usize>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Bundled example graphs.
    Fixtures {
        #[arg(value_enum, default_value = "list")]
        action: FixtureAction,
        #[arg(long)]
        json: bool,
    },
    /// List the property registry.
    Properties,
}

#[derive(Args)]
struct RunArgs {
    /// Property names, comma separated; all when omitted.
    #[arg(long, value_delimiter = ',')]
    properties: Vec<String>,
    /// Shrink failing graphs.
    #[arg(long)]
    shrink: bool,
    /// Keep every result in the JSON report.
    #[arg(long)]
    all_results: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureAction {
    List,
    Verify,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a, b))
        }
        None => parse(s).map(|n| (n, n)),
    }
}

impl Cli {
    fn limits(&self) -> Limits {
        Limits {
            oracle: self.oracle_limit,
            use_oracle: !self.no_oracle,
            ..Limits::default()
        }
    }
}

fn read_graph(input: &Input) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(&input.file).with_context(|| format!("reading {}", input.file.display()))?;
    let format = match input.format {
        Some(FormatArg::EdgeList) => Format::EdgeList,
        Some(FormatArg::Dimacs) => Format::Dimacs,
        None => Format::detect(&text),
    };
    parse_graph(&text, format).with_context(|| format!("parsing {}", input.file.display()))
}

fn read_corpus(path: &Path, limits: Limits, cli: &Cli) -> anyhow::Result<CorpusSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut spec = CorpusSpec::from_toml(&text).with_context(|| format!("parsing {}", path.display()))?;
    // flags given on the command line override the file
    if cli.no_oracle {
        spec.limits.use_oracle = false;
    }
    if cli.oracle_limit != Limits::default().oracle {
        spec.limits.oracle = limits.oracle;
    }
    Ok(spec)
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

fn print_analysis(r: &AnalysisReport) {
    let yes = |b: bool| if b { "yes" } else { "no" };
    println!("n = {}, m = {}, bipartite: {}, KE: {}", r.n, r.m, yes(r.bipartite), r.ke.map_or("n/a", yes));
    println!("d = {}, alpha = {}, mu = {}, def = {}", r.d, opt(r.alpha), r.mu, r.deficiency);
    println!("ker     = {}", braces(&r.ker));
    println!("diadem  = {}", braces(&r.diadem));
    println!("witness = {}", braces(&r.witness));
    println!("core    = {}", r.core.as_deref().map_or("n/a".into(), braces));
    println!("corona  = {}", r.corona.as_deref().map_or("n/a".into(), braces));
    if let Some(o) = &r.ore {
        println!("A = {}, B = {}", braces(&o.side_a), braces(&o.side_b));
        println!("delta0(A) = {}, delta0(B) = {}", o.delta0_a, o.delta0_b);
        println!("ker_A = {}, ker_B = {}", braces(&o.ker_a), braces(&o.ker_b));
        println!("diadem_A = {}, diadem_B = {}", braces(&o.diadem_a), braces(&o.diadem_b));
    }
    let claimed = r.ke == Some(true);
    for c in &r.ke_identities {
        let tag = if claimed { "" } else { " (not KE)" };
        println!("  [{}] {}{tag}", status(&c.status), c.name);
    }
    for c in &r.ore_identities {
        println!("  [{}] {}", status(&c.status), c.name);
    }
    for (k, v) in &r.methods {
        println!("method {k}: {v}");
    }
    for l in &r.limits_hit {
        println!("limit: {l}");
    }
}

fn status(s: &Status) -> String {
    match s {
        Status::Holds => "holds".into(),
        Status::Fails => "FAILS".into(),
        Status::Skipped(r) => format!("skipped: {r}"),
    }
}

fn cmd_analyze(cli: &Cli, input: &Input, json: bool) -> anyhow::Result<u8> {
    let g = read_graph(input)?;
    let r = analyze(&g, &cli.limits())?;
    if json {
        print_json(&r)?;
    } else {
        print_analysis(&r);
    }
    Ok(if cli.strict && !r.limits_hit.is_empty() { LIMITS } else { OK })
}

fn cmd_check(cli: &Cli, input: &Input, names: &[String], json: bool) -> anyhow::Result<u8> {
    let g = read_graph(input)?;
    let props = if names.is_empty() { registry() } else { select(names)? };
    let inv = Invariants::new(&g, cli.limits());
    let results: Vec<_> = props.iter().map(|p| p.evaluate(&inv)).collect();
    if json {
        print_json(&results)?;
    } else {
        for r in &results {
            let line = match &r.verdict {
                Verdict::Holds => "holds".to_string(),
                Verdict::Fails => format!("FAILS {}", serde_json::to_string(&r.witness)?),
                Verdict::NotApplicable(why) => format!("fails applicability: {why}"),
                Verdict::Skipped(why) => format!("skipped: {why}"),
                Verdict::Error(e) => format!("ERROR {e}"),
            };
            println!("{}: {line}", r.property);
        }
    }
    if results.iter().any(|r| r.verdict.is_failure()) {
        return Ok(VIOLATION);
    }
    let skipped = results.iter().any(|r| matches!(r.verdict, Verdict::Skipped(_)));
    Ok(if cli.strict && skipped { LIMITS } else { OK })
}

fn cmd_run(cli: &Cli, spec: CorpusSpec, args: &RunArgs) -> anyhow::Result<u8> {
    let props = select(&args.properties)?;
    let options = RunOptions {
        keep_all: args.all_results,
        shrink: args.shrink,
    };
    let r = run(&spec, &props, &options)?;
    if args.json {
        print_json(&r)?;
    } else {
        print_run(&r)?;
    }
    Ok(if r.failure_count() > 0 {
        VIOLATION
    } else if cli.strict && r.skipped_count() > 0 {
        LIMITS
    } else {
        OK
    })
}

fn print_run(r: &RunReport) -> anyhow::Result<()> {
    println!("{} graphs, {} properties", r.graphs, r.properties.len());
    for s in &r.summary {
        println!(
            "{:<40} holds {:>7}  fails {:>3}  n/a {:>7}  skipped {:>6}{}",
            s.property,
            s.holds,
            s.fails + s.errors,
            s.not_applicable,
            s.skipped,
            if s.errors > 0 { format!("  ({} errors)", s.errors) } else { String::new() }
        );
    }
    for f in &r.failures {
        println!("FAIL {} on {}: {}", f.result.property, f.graph_id, serde_json::to_string(&f.result)?);
        println!("  graph {}", serde_json::to_string(&f.graph)?);
        if let Some(s) = &f.shrunk {
            println!("  shrunk {}", serde_json::to_string(s)?);
        }
    }
    println!("failures: {}, skipped: {}", r.failure_count(), r.skipped_count());
    Ok(())
}

fn cmd_conjecture(cli: &Cli, spec: CorpusSpec, json: bool) -> anyhow::Result<u8> {
    let r = conjecture_scan(&spec)?;
    if json {
        print_json(&r)?;
    } else {
        print_conjecture(&r)?;
    }
    Ok(if !r.violations.is_empty() {
        VIOLATION
    } else if cli.strict && !r.skipped.is_empty() {
        LIMITS
    } else {
        OK
    })
}

fn print_conjecture(r: &ConjectureReport) -> anyhow::Result<()> {
    println!("{} graphs, {} measured, {} skipped", r.graphs, r.measured, r.skipped.len());
    println!(" n    graphs  min slack  min upper slack  strict  core critical  ker = core");
    for b in &r.buckets {
        println!(
            "{:>2} {:>9} {:>10} {:>16} {:>7} {:>14} {:>11}",
            b.n, b.graphs, b.min_slack, b.min_upper_slack, b.strict, b.core_critical, b.ker_eq_core
        );
    }
    for s in &r.skipped {
        println!("skipped {}: {}", s.graph_id, s.reason);
    }
    for v in &r.violations {
        println!("VIOLATION ({:?}) on {}: {}", v.bound, v.graph_id, serde_json::to_string(&v.measurement)?);
        if let Some(s) = &v.shrunk {
            println!("  shrunk {}", serde_json::to_string(s)?);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FixtureVerdict {
    name: String,
    ok: bool,
    checks: Vec<critset::fixtures::FixtureCheck>,
}

fn cmd_fixtures(action: FixtureAction, json: bool) -> anyhow::Result<u8> {
    match action {
        FixtureAction::List => {
            for name in fixture_names() {
                let f = load_unchecked(name)?;
                println!("{name:<12} {}.edges  n = {}, m = {}", f.stem, f.graph.n(), f.graph.m());
            }
            Ok(OK)
        }
        FixtureAction::Verify => {
            let mut all = Vec::new();
            for name in fixture_names() {
                let checks = validate_fixture(&load_unchecked(name)?)?;
                let ok = checks.iter().all(|c| c.ok);
                all.push(FixtureVerdict { name: name.to_string(), ok, checks });
            }
            if json {
                print_json(&all)?;
            } else {
                for v in &all {
                    let flagged = v.checks.iter().filter(|c| c.divergence).count();
                    println!("{:<12} {} ({} checks, {flagged} flagged divergences)", v.name, if v.ok { "ok" } else { "FAILED" }, v.checks.len());
                    for c in v.checks.iter().filter(|c| !c.ok || c.divergence) {
                        let tag = if c.divergence { "divergence" } else { "mismatch" };
                        println!("  {tag} {}: stated {}, computed {}", c.field, c.expected, c.computed);
                    }
                }
            }
            Ok(if all.iter().all(|v| v.ok) { OK } else { VIOLATION })
        }
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<u8> {
    let limits = cli.limits();
    match &cli.command {
        Command::Analyze { input, json } => cmd_analyze(cli, input, *json),
        Command::Check { input, property, json, .. } => cmd_check(cli, input, property, *json),
        Command::Fuzz { n, p, count, seed, run } => {
            let spec = CorpusSpec {
                sources: vec![Source::Random { n_min: n.0, n_max: n.1, p: p.clone(), count: *count, seed: *seed }],
                limits,
            };
            cmd_run(cli, spec, run)
        }
        Command::Exhaustive { n, run } => {
            let spec = CorpusSpec { sources: vec![Source::Exhaustive { n: *n }], limits };
            cmd_run(cli, spec, run)
        }
        Command::Run { corpus, run } => cmd_run(cli, read_corpus(corpus, limits, cli)?, run),
        Command::Conjecture { max_n, corpus, json } => {
            let spec = match (max_n, corpus) {
                (Some(k), _) => CorpusSpec::exhaustive_up_to(*k, limits),
                (None, Some(path)) => read_corpus(path, limits, cli)?,
                (None, None) => bail!("one of --max-n or --corpus is required"),
            };
            cmd_conjecture(cli, spec, *json)
        }
        Command::Fixtures { action, json } => cmd_fixtures(*action, *json),
        Command::Properties => {
            for p in registry() {
                println!("{:<40} {}", p.name, p.statement);
            }
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: worker pool: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
