//! Corpus runs over the property registry, the conjecture scan and
//! counterexample shrinking.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::RngExt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, AnalysisReport, SCHEMA};
use crate::checks::Limits;
use crate::critical::{diadem, is_critical_set, ker};
use crate::error::{Error, Result};
use crate::fixtures::{fixture, fixture_names};
use crate::generate::{exhaustive, gnp_with, keyed_rng, EXHAUSTIVE_MAX_N};
use crate::graph::Graph;
use crate::mis::{alpha, core_and_corona, core_corona_by_deletion};
use crate::parse::{parse_graph, Format};
use crate::props::{property, registry, Applicability, Invariants, Outcome, Property, PropertyResult, Verdict};

/// Graphs evaluated in parallel before results are merged in order.
const CHUNK: usize = 2048;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Source {
    /// Every bundled fixture.
    Fixtures,
    /// All labeled graphs on exactly `n` vertices.
    Exhaustive { n: usize },
    /// `count` graphs; graph `k` draws `n` and `p` from the stream keyed by
    /// `(seed, k)`.
    Random {
        n_min: usize,
        n_max: usize,
        p: Vec<f64>,
        count: u64,
        seed: u64,
    },
    Files { paths: Vec<PathBuf> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    pub sources: Vec<Source>,
    #[serde(default)]
    pub limits: Limits,
}

impl CorpusSpec {
    pub fn from_toml(text: &str) -> Result<CorpusSpec> {
        toml::from_str(text).map_err(|e| Error::Corpus(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("corpus specs serialize")
    }

    /// Exhaustive sources for every `n` in `0..=max_n`.
    pub fn exhaustive_up_to(max_n: usize, limits: Limits) -> CorpusSpec {
        CorpusSpec {
            sources: (0..=max_n).map(|n| Source::Exhaustive { n }).collect(),
            limits,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub id: String,
    pub graph: Graph,
}

fn validate_source(s: &Source) -> Result<()> {
    match s {
        Source::Exhaustive { n } if *n > EXHAUSTIVE_MAX_N => Err(Error::Corpus(format!(
            "exhaustive n = {n} exceeds {EXHAUSTIVE_MAX_N}"
        ))),
        Source::Random { n_min, n_max, p, .. } => {
            if n_min > n_max {
                return Err(Error::Corpus(format!("empty range {n_min}..={n_max}")));
            }
            if p.is_empty() || p.iter().any(|x| !(0.0..=1.0).contains(x)) {
                return Err(Error::Corpus(format!("edge probabilities {p:?} must be nonempty and in [0, 1]")));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// The `k`-th graph of a random source.
pub fn random_member(n_min: usize, n_max: usize, p: &[f64], seed: u64, k: u64) -> Graph {
    let mut rng = keyed_rng(seed, k);
    let n = rng.random_range(n_min..=n_max);
    let p = p[rng.random_range(0..p.len())];
    gnp_with(n, p, &mut rng).expect("probability validated")
}

/// The corpus in order. Files are read up front so an unreadable source is
/// reported before any work starts.
pub fn corpus(spec: &CorpusSpec) -> Result<impl Iterator<Item = CorpusGraph> + use<>> {
    let mut parts: Vec<Box<dyn Iterator<Item = CorpusGraph> + Send>> = Vec::new();
    for source in &spec.sources {
        validate_source(source)?;
        match source.clone() {
            Source::Fixtures => {
                let mut graphs = Vec::new();
                for name in fixture_names() {
                    graphs.push(CorpusGraph {
                        id: format!("fixture:{name}"),
                        graph: fixture(name)?.graph,
                    });
                }
                parts.push(Box::new(graphs.into_iter()));
            }
            Source::Exhaustive { n } => {
                let stream = exhaustive(n)?;
                parts.push(Box::new((0..stream.total()).map(move |mask| CorpusGraph {
                    id: format!("exhaustive:{n}:{mask}"),
                    graph: stream.graph(mask),
                })));
            }
            Source::Random {
                n_min,
                n_max,
                p,
                count,
                seed,
            } => parts.push(Box::new((0..count).map(move |k| CorpusGraph {
                id: format!("random:{seed}:{k}"),
                graph: random_member(n_min, n_max, &p, seed, k),
            }))),
            Source::Files { paths } => {
                let mut graphs = Vec::new();
                for path in paths {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))?;
                    let graph = parse_graph(&text, Format::detect(&text))
                        .map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))?;
                    graphs.push(CorpusGraph {
                        id: format!("file:{}", path.display()),
                        graph,
                    });
                }
                parts.push(Box::new(graphs.into_iter()));
            }
        }
    }
    Ok(parts.into_iter().flatten())
}

/// Evaluates `f` over the corpus in parallel chunks, feeding results to
/// `sink` in corpus order.
fn for_each_ordered<T: Send>(
    spec: &CorpusSpec,
    f: impl Fn(&CorpusGraph) -> T + Sync,
    mut sink: impl FnMut(CorpusGraph, T) -> Result<()>,
) -> Result<()> {
    let mut graphs = corpus(spec)?;
    loop {
        let chunk: Vec<CorpusGraph> = graphs.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(());
        }
        let out: Vec<T> = chunk.par_iter().map(&f).collect();
        for (g, t) in chunk.into_iter().zip(out) {
            sink(g, t)?;
        }
    }
}

/// A graph as plain data, enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphRecord {
    pub fn of(g: &Graph) -> GraphRecord {
        GraphRecord {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let g = Graph::from_edges(self.n, &edges)?;
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertySummary {
    pub property: String,
    pub holds: u64,
    pub fails: u64,
    pub errors: u64,
    pub not_applicable: u64,
    pub skipped: u64,
    pub skip_reasons: BTreeMap<String, u64>,
}

impl PropertySummary {
    fn record(&mut self, v: &Verdict) {
        match v {
            Verdict::Holds => self.holds += 1,
            Verdict::Fails => self.fails += 1,
            Verdict::Error(_) => self.errors += 1,
            Verdict::NotApplicable(_) => self.not_applicable += 1,
            Verdict::Skipped(reason) => {
                self.skipped += 1;
                *self.skip_reasons.entry(reason.clone()).or_default() += 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub graph_id: String,
    pub graph: GraphRecord,
    pub result: PropertyResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrunk: Option<GraphRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphResults {
    pub graph_id: String,
    pub results: Vec<PropertyResult>,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Keep every result, not only failures.
    pub keep_all: bool,
    /// Shrink each failing graph.
    pub shrink: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub corpus: CorpusSpec,
    pub properties: Vec<String>,
    pub graphs: u64,
    pub summary: Vec<PropertySummary>,
    pub failures: Vec<FailureRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<GraphResults>,
}

impl RunReport {
    pub fn failure_count(&self) -> u64 {
        self.summary.iter().map(|s| s.fails + s.errors).sum()
    }

    pub fn skipped_count(&self) -> u64 {
        self.summary.iter().map(|s| s.skipped).sum()
    }
}

/// Registry properties by name; an empty selection means all of them.
pub fn select(names: &[String]) -> Result<Vec<Property>> {
    if names.is_empty() {
        return Ok(registry());
    }
    names.iter().map(|n| property(n)).collect()
}

pub fn run(spec: &CorpusSpec, properties: &[Property], options: &RunOptions) -> Result<RunReport> {
    let limits = spec.limits;
    let mut summary: Vec<PropertySummary> = properties
        .iter()
        .map(|p| PropertySummary {
            property: p.name.to_string(),
            ..Default::default()
        })
        .collect();
    let mut failures = Vec::new();
    let mut results = Vec::new();
    let mut graphs = 0;
    for_each_ordered(
        spec,
        |cg| crate::props::evaluate_all(&cg.graph, &limits, properties),
        |cg, rs| {
            graphs += 1;
            for ((s, r), p) in summary.iter_mut().zip(&rs).zip(properties) {
                s.record(&r.verdict);
                if r.verdict.is_failure() {
                    let shrunk = if options.shrink && r.verdict == Verdict::Fails {
                        Some(GraphRecord::of(&shrink_with(&cg.graph, p, &limits)?))
                    } else {
                        None
                    };
                    failures.push(FailureRecord {
                        graph_id: cg.id.clone(),
                        graph: GraphRecord::of(&cg.graph),
                        result: r.clone(),
                        shrunk,
                    });
                }
            }
            if options.keep_all {
                results.push(GraphResults {
                    graph_id: cg.id,
                    results: rs,
                });
            }
            Ok(())
        },
    )?;
    Ok(RunReport {
        schema: SCHEMA,
        corpus: spec.clone(),
        properties: properties.iter().map(|p| p.name.to_string()).collect(),
        graphs,
        summary,
        failures,
        results,
    })
}

fn fails(g: &Graph, p: &Property, limits: &Limits) -> bool {
    p.evaluate_on(g, limits).verdict == Verdict::Fails
}

/// Greedy deletion to a local minimum: vertices by id, then edges in
/// lexicographic order, repeated until nothing can go.
pub fn shrink_with(g: &Graph, p: &Property, limits: &Limits) -> Result<Graph> {
    if !fails(g, p, limits) {
        return Err(Error::PropertyHolds(p.name.to_string()));
    }
    let mut cur = g.clone();
    loop {
        let mut changed = false;
        let mut v = 0;
        while v < cur.n() {
            let (h, _) = cur.without(&crate::VertexSet::singleton(v));
            if fails(&h, p, limits) {
                cur = h;
                changed = true;
            } else {
                v += 1;
            }
        }
        let mut i = 0;
        loop {
            let Some((a, b)) = cur.edges().nth(i) else { break };
            let h = cur.without_edge(a, b);
            if fails(&h, p, limits) {
                cur = h;
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
}

/// [`shrink_with`] for a registry property or the conjecture predicate.
pub fn shrink(g: &Graph, name: &str, limits: &Limits) -> Result<Graph> {
    let p = if name == CONJECTURE.name {
        CONJECTURE
    } else {
        property(name)?
    };
    shrink_with(g, &p, limits)
}

fn conjecture_check(inv: &Invariants) -> Result<Outcome> {
    let lhs = inv.ker().len() + inv.diadem().len();
    let two_alpha = 2 * inv.alpha()?;
    Outcome::check(lhs <= two_alpha, || {
        let mut w = crate::props::Witness::new();
        w.insert("ker".into(), inv.ker().into());
        w.insert("diadem".into(), inv.diadem().into());
        w.insert("two_alpha".into(), two_alpha.into());
        w
    })
}

/// The open inequality `|ker| + |diadem| <= 2 alpha`, kept out of the
/// registry since it is not a theorem.
pub const CONJECTURE: Property = Property {
    name: "conjecture.ker_diadem_le_two_alpha",
    statement: "|ker| + |diadem| <= 2 alpha",
    applicability: Applicability::Always,
    check: conjecture_check,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    pub n: usize,
    pub ker_plus_diadem: usize,
    pub two_alpha: usize,
    pub core_plus_corona: usize,
    pub core_critical: bool,
    pub ker_eq_core: bool,
}

impl Measurement {
    /// `2 alpha - |ker| - |diadem|`.
    pub fn slack(&self) -> i64 {
        self.two_alpha as i64 - self.ker_plus_diadem as i64
    }

    /// `|core| + |corona| - 2 alpha`.
    pub fn upper_slack(&self) -> i64 {
        self.core_plus_corona as i64 - self.two_alpha as i64
    }
}

pub fn measure(g: &Graph, limits: &Limits) -> Result<Measurement> {
    let a = alpha(g, limits.alpha)?;
    let (core, corona) = if g.n() <= limits.enumeration {
        let p = core_and_corona(g, limits.enumeration)?;
        (p.core, p.corona)
    } else {
        core_corona_by_deletion(g, limits.alpha)?
    };
    let k = ker(g);
    Ok(Measurement {
        n: g.n(),
        ker_plus_diadem: k.len() + diadem(g).len(),
        two_alpha: 2 * a,
        core_plus_corona: core.len() + corona.len(),
        core_critical: is_critical_set(g, &core)?,
        ker_eq_core: k == core,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBucket {
    pub n: usize,
    pub graphs: u64,
    pub min_slack: i64,
    pub min_slack_graph: String,
    pub min_upper_slack: i64,
    pub min_upper_slack_graph: String,
    /// Graphs with `|ker| + |diadem| < 2 alpha`.
    pub strict: u64,
    pub core_critical: u64,
    pub ker_eq_core: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `|ker| + |diadem| <= 2 alpha`.
    Lower,
    /// `2 alpha <= |core| + |corona|`.
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub graph_id: String,
    pub bound: Bound,
    pub measurement: Measurement,
    pub graph: GraphRecord,
    pub bundle: AnalysisReport,
    pub shrunk: Option<GraphRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipRecord {
    pub graph_id: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub schema: u32,
    pub corpus: CorpusSpec,
    pub graphs: u64,
    pub measured: u64,
    pub buckets: Vec<ScanBucket>,
    pub violations: Vec<Violation>,
    pub skipped: Vec<SkipRecord>,
}

pub fn conjecture_scan(spec: &CorpusSpec) -> Result<ConjectureReport> {
    let limits = spec.limits;
    let mut buckets: BTreeMap<usize, ScanBucket> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut skipped = Vec::new();
    let (mut graphs, mut measured) = (0, 0);
    for_each_ordered(
        spec,
        |cg| measure(&cg.graph, &limits),
        |cg, m| {
            graphs += 1;
            let m = match m {
                Ok(m) => m,
                Err(e) if e.is_limit() => {
                    skipped.push(SkipRecord {
                        graph_id: cg.id,
                        reason: e.to_string(),
                    });
                    return Ok(());
                }
                Err(e) => return Err(e),
            };
            measured += 1;
            let b = buckets.entry(m.n).or_insert_with(|| ScanBucket {
                n: m.n,
                graphs: 0,
                min_slack: i64::MAX,
                min_slack_graph: String::new(),
                min_upper_slack: i64::MAX,
                min_upper_slack_graph: String::new(),
                strict: 0,
                core_critical: 0,
                ker_eq_core: 0,
            });
            b.graphs += 1;
            if m.slack() < b.min_slack {
                b.min_slack = m.slack();
                b.min_slack_graph = cg.id.clone();
            }
            if m.upper_slack() < b.min_upper_slack {
                b.min_upper_slack = m.upper_slack();
                b.min_upper_slack_graph = cg.id.clone();
            }
            b.strict += u64::from(m.slack() > 0);
            b.core_critical += u64::from(m.core_critical);
            b.ker_eq_core += u64::from(m.ker_eq_core);
            for (bound, broken, p) in [
                (Bound::Lower, m.slack() < 0, CONJECTURE),
                (Bound::Upper, m.upper_slack() < 0, property("s6.core_corona_sandwich")?),
            ] {
                if broken {
                    violations.push(Violation {
                        graph_id: cg.id.clone(),
                        bound,
                        measurement: m.clone(),
                        graph: GraphRecord::of(&cg.graph),
                        bundle: analyze(&cg.graph, &limits)?,
                        shrunk: Some(GraphRecord::of(&shrink_with(&cg.graph, &p, &limits)?)),
                    });
                }
            }
            Ok(())
        },
    )?;
    Ok(ConjectureReport {
        schema: SCHEMA,
        corpus: spec.clone(),
        graphs,
        measured,
        buckets: buckets.into_values().collect(),
        violations,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::generate::{generate, Family};

    fn alpha_le_two(inv: &Invariants) -> Result<Outcome> {
        let a = inv.alpha()?;
        Outcome::check(a <= 2, || {
            let mut w = crate::props::Witness::new();
            w.insert("alpha".into(), a.into());
            w
        })
    }

    const SYNTHETIC: Property = Property {
        name: "synthetic.alpha_le_two",
        statement: "alpha <= 2",
        applicability: Applicability::Always,
        check: alpha_le_two,
    };

    #[test]
    fn shrink_synthetic_on_p5() {
        let p5 = generate(&Family::Path { n: 5 }).unwrap();
        let lim = Limits::default();
        let s = shrink_with(&p5, &SYNTHETIC, &lim).unwrap();
        assert_eq!((s.n(), s.m()), (3, 0));
        assert!(fails(&s, &SYNTHETIC, &lim));
        assert_eq!(shrink_with(&s, &SYNTHETIC, &lim).unwrap(), s);
        let p4 = generate(&Family::Path { n: 4 }).unwrap();
        assert_eq!(shrink_with(&p4, &SYNTHETIC, &lim), Err(Error::PropertyHolds(SYNTHETIC.name.into())));
    }

    #[test]
    fn exhaustive_five_zhang() {
        let spec = CorpusSpec {
            sources: vec![Source::Exhaustive { n: 5 }],
            limits: Limits::default(),
        };
        let r = run(&spec, &select(&["zhang.d_eq_id".into()]).unwrap(), &RunOptions::default()).unwrap();
        assert_eq!(r.graphs, 1024);
        assert_eq!(r.summary[0].holds, 1024);
        assert_eq!(r.failure_count(), 0);
    }

    #[test]
    fn random_corpus_is_keyed() {
        let spec = CorpusSpec {
            sources: vec![Source::Random { n_min: 12, n_max: 12, p: vec![0.25], count: 20, seed: 7 }],
            limits: Limits::default(),
        };
        let all: Vec<CorpusGraph> = corpus(&spec).unwrap().collect();
        assert_eq!(all[13].graph, random_member(12, 12, &[0.25], 7, 13));
        let a = serde_json::to_string(&run(&spec, &registry(), &RunOptions::default()).unwrap()).unwrap();
        let b = serde_json::to_string(&run(&spec, &registry(), &RunOptions::default()).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn corpus_spec_toml() {
        let text = r#"
[[sources]]
kind = "exhaustive"
n = 3

[[sources]]
kind = "random"
n_min = 8
n_max = 9
p = [0.3]
count = 4
seed = 1

[limits]
oracle = 12
"#;
        let spec = CorpusSpec::from_toml(text).unwrap();
        assert_eq!(spec.limits.oracle, 12);
        assert_eq!(CorpusSpec::from_toml(&spec.to_toml()).unwrap(), spec);
        assert_eq!(corpus(&spec).unwrap().count(), 8 + 4);
        assert!(CorpusSpec::from_toml("[[sources]]\nkind = \"bogus\"").is_err());
        let unreadable = CorpusSpec {
            sources: vec![Source::Files { paths: vec!["/nonexistent/graph.edges".into()] }],
            limits: Limits::default(),
        };
        assert!(matches!(corpus(&unreadable).err(), Some(Error::Corpus(_))));
    }

    #[test]
    fn scan_small_and_fixtures() {
        let r = conjecture_scan(&CorpusSpec::exhaustive_up_to(5, Limits::default())).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.measured, r.graphs);
        assert!(r.buckets.iter().all(|b| b.min_slack >= 0 && b.min_upper_slack >= 0));

        let g = fixture("fig222.G1").unwrap().graph;
        assert!(measure(&g, &Limits::default()).unwrap().slack() > 0);
    }

    #[test]
    fn scan_reports_skips() {
        let limits = Limits { alpha: 8, ..Limits::default() };
        let spec = CorpusSpec {
            sources: vec![Source::Random { n_min: 10, n_max: 10, p: vec![0.5], count: 3, seed: 0 }],
            limits,
        };
        let r = conjecture_scan(&spec).unwrap();
        assert_eq!((r.graphs, r.measured, r.skipped.len()), (3, 0, 3));
    }
}
