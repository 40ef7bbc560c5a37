//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Sub-checks listed in `KNOWN_RED` are expected to fail on the bundled edge
//! lists. They still print FAIL; the process only exits nonzero for
//! unexpected failures, or for any failure when `ACCEPTANCE_STRICT=1`.

use std::time::{Duration, Instant};

use critset::critical::{critical_difference, critical_independent_witness, diadem, is_critical_set, ker};
use critset::fixtures::load_unchecked;
use critset::generate::exhaustive;
use critset::harness::{conjecture_scan, corpus, run, CorpusSpec, RunOptions, Source};
use critset::ke::{is_ke_via_critical, is_koenig_egervary};
use critset::matching::maximum_matching_general;
use critset::mis::{alpha, core_and_corona, enumerate_maximum_independent_sets};
use critset::ore::{delta0, side_diadem, side_kernel};
use critset::props::registry;
use critset::{oracle, BipartitePartition, Graph, Limits, Side, VertexSet};

/// Wall-clock budgets, inclusive.
const FIXTURE_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_BUDGET: Duration = Duration::from_secs(600);
/// Set comparisons are exact; there is no numeric tolerance anywhere.
const EXHAUSTIVE_MAX: usize = 6;
const RANDOM_COUNT: u64 = 1000;
const RANDOM_SEED: u64 = 20_240_601;

/// `(criterion, sub-check)` pairs that fail on the bundled graphs.
const KNOWN_RED: &[(u32, &str)] = &[(1, "fig511 diadem")];

struct Criterion {
    id: u32,
    title: &'static str,
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
    elapsed: Duration,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn expect(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(format!("{name}: {}", detail()));
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, want: T) {
        let ok = got == want;
        self.expect(name, ok, || format!("expected {want:?}, computed {got:?}"));
    }

    fn budget(&mut self, limit: Duration) {
        let e = self.elapsed;
        self.expect("runtime", e <= limit, || format!("{e:?} > {limit:?}"));
    }

    fn is_known_red(&self, failure: &str) -> bool {
        KNOWN_RED.iter().any(|(id, name)| *id == self.id && failure.starts_with(&format!("{name}:")))
    }
}

fn labels(g: &Graph, names: &[&str]) -> VertexSet {
    g.set_from_labels(names).unwrap()
}

fn show(g: &Graph, s: &VertexSet) -> String {
    format!("{{{}}}", g.labels_of(s).join(","))
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, "fixture reproduction");
    let start = Instant::now();
    let lim = Limits::default();
    let graph = |name: &str| load_unchecked(name).unwrap().graph;

    let g = graph("fig511");
    let mis = core_and_corona(&g, lim.enumeration).unwrap();
    c.eq("fig511 d", critical_difference(&g), 1);
    c.eq("fig511 core", show(&g, &mis.core), show(&g, &labels(&g, &["v1", "v2", "v6", "v10"])));
    let want = labels(&g, &["v1", "v2", "v3", "v4", "v6", "v7", "v10"]);
    c.eq("fig511 diadem", show(&g, &diadem(&g)), show(&g, &want));
    for set in [
        &["v1", "v2", "v3", "v4"][..],
        &["v1", "v2"],
        &["v1", "v2", "v3"],
        &["v1", "v2", "v3", "v4", "v6", "v7"],
    ] {
        let s = labels(&g, set);
        c.expect(&format!("fig511 {} critical", show(&g, &s)), is_critical_set(&g, &s).unwrap(), || "not critical".into());
    }

    let g = graph("fig101");
    let mis = core_and_corona(&g, lim.enumeration).unwrap();
    c.eq("fig101 core", show(&g, &mis.core), "{a,b}".into());
    c.eq("fig101 V - corona", show(&g, &mis.corona.complement(g.n())), "{c,d}".into());

    for (name, want) in [("fig333.G1", "{a,b}"), ("fig333.G2", "{q,x,y,z}"), ("fig333.G3", "{t,u,v,w}")] {
        let g = graph(name);
        c.eq(&format!("{name} core"), show(&g, &core_and_corona(&g, lim.enumeration).unwrap().core), want.into());
    }
    let g = graph("fig333.G2");
    c.eq("fig333.G2 ker", show(&g, &ker(&g)), "{x,y,z}".into());
    let g = graph("fig333.G3");
    c.eq("fig333.G3 ker", show(&g, &ker(&g)), "{u,v}".into());

    let g = graph("fig177.G");
    let mut got: Vec<String> = critset::critical::minimal_positive_independent_sets(&g, lim.oracle)
        .unwrap()
        .iter()
        .map(|s| show(&g, s))
        .collect();
    got.sort();
    c.eq("fig177 minimal positive sets", got, vec!["{u,v,w}".to_string(), "{x,y}".to_string()]);

    let g = graph("fig222.G1");
    c.eq("fig222.G1 ker", show(&g, &ker(&g)), "{x,y}".into());
    let core = core_and_corona(&g, lim.enumeration).unwrap().core;
    c.eq("fig222.G1 core", core, labels(&g, &["x", "y", "u", "v"]));
    let g = graph("fig222.G2");
    c.eq("fig222.G2 ker", show(&g, &ker(&g)), "{}".into());
    c.eq("fig222.G2 core", show(&g, &core_and_corona(&g, lim.enumeration).unwrap().core), "{w}".into());

    let g = graph("fig233");
    let a = labels(&g, &["a1", "a2", "a3", "a4", "a5", "a6"]);
    let parts = BipartitePartition::new(a.clone(), a.complement(g.n()));
    c.eq("fig233 delta0(A)", delta0(&g, &parts, Side::A).unwrap(), 1);
    c.eq("fig233 delta0(B)", delta0(&g, &parts, Side::B).unwrap(), 2);
    c.eq("fig233 ker_A", show(&g, &side_kernel(&g, &parts, Side::A).unwrap()), "{a1,a2}".into());
    c.eq("fig233 diadem_A", show(&g, &side_diadem(&g, &parts, Side::A).unwrap()), "{a1,a2,a3,a4,a5}".into());
    c.eq("fig233 diadem_B", show(&g, &side_diadem(&g, &parts, Side::B).unwrap()), "{b2,b3,b4,b5,b6,b7}".into());

    let g = graph("fig1777");
    c.eq("fig1777 KE", is_koenig_egervary(&g, lim.alpha).unwrap(), false);
    let mis = core_and_corona(&g, lim.enumeration).unwrap();
    c.eq("fig1777 |core| + |corona|", mis.core.len() + mis.corona.len(), 13);
    c.eq("fig1777 2 alpha", 2 * mis.alpha, 12);

    c.elapsed = start.elapsed();
    c.budget(FIXTURE_BUDGET);
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, "oracle equivalence, exhaustive n <= 6");
    let start = Instant::now();
    let lim = Limits::default();
    let mut mismatches = [0u64; 6];
    let mut graphs = 0u64;
    for n in 0..=EXHAUSTIVE_MAX {
        for g in exhaustive(n).unwrap() {
            graphs += 1;
            let d = critical_difference(&g);
            let all = oracle::critical_difference(&g);
            mismatches[0] += u64::from(d != all || all != oracle::independent_critical_difference(&g));
            let sets = oracle::critical_independent_sets(&g);
            mismatches[1] += u64::from(ker(&g) != oracle::intersection(&sets));
            mismatches[2] += u64::from(diadem(&g) != oracle::union(&sets));
            mismatches[3] += u64::from(maximum_matching_general(&g).len() != oracle::mu(&g));
            let ke = is_koenig_egervary(&g, lim.alpha).unwrap();
            mismatches[4] += u64::from(ke != is_ke_via_critical(&g, &lim).unwrap());
            if let Some(p) = g.bipartition() {
                let mu = maximum_matching_general(&g).len() as i64;
                for parts in [p.clone(), p.swapped()] {
                    for side in [Side::A, Side::B] {
                        let s = parts.side(side);
                        let side_sets = oracle::side_critical_sets(&g, s);
                        let d0 = delta0(&g, &parts, side).unwrap();
                        let bad = d0 != s.len() as i64 - mu
                            || d0 != oracle::delta0(&g, s)
                            || side_kernel(&g, &parts, side).unwrap() != oracle::intersection(&side_sets)
                            || side_diadem(&g, &parts, side).unwrap() != oracle::union(&side_sets);
                        mismatches[5] += u64::from(bad);
                    }
                }
            }
        }
    }
    let names = [
        "(a) d = max d(X) = max over independent X",
        "(b) ker = intersection of critical independent sets",
        "(c) diadem = union of critical independent sets",
        "(d) blossom mu = brute-force mu",
        "(e) KE characterizations agree",
        "(f) Ore rules match subset enumeration",
    ];
    for (name, m) in names.iter().zip(mismatches) {
        c.eq(name, m, 0);
    }
    c.notes.push(format!("{graphs} graphs"));
    c.elapsed = start.elapsed();
    c.budget(ORACLE_BUDGET);
    c
}

fn corpus_spec() -> CorpusSpec {
    let mut spec = CorpusSpec::exhaustive_up_to(EXHAUSTIVE_MAX, Limits::default());
    spec.sources.push(Source::Random {
        n_min: 8,
        n_max: 14,
        p: vec![0.15, 0.3, 0.5],
        count: RANDOM_COUNT,
        seed: RANDOM_SEED,
    });
    spec.sources.push(Source::Fixtures);
    spec
}

fn criterion_3(spec: &CorpusSpec) -> Criterion {
    let mut c = Criterion::new(3, "theorem suite");
    let start = Instant::now();
    let r = run(spec, &registry(), &RunOptions::default()).unwrap();
    for s in &r.summary {
        c.eq(&s.property, s.fails + s.errors, 0);
    }
    c.eq("properties evaluated", r.properties.len(), registry().len());
    for f in r.failures.iter().take(5) {
        c.notes.push(format!("{} on {}: {:?}", f.result.property, f.graph_id, f.result.witness));
    }
    c.notes.push(format!("{} graphs, {} skipped results", r.graphs, r.skipped_count()));
    c.elapsed = start.elapsed();
    c
}

fn criterion_4(spec: &CorpusSpec) -> Criterion {
    let mut c = Criterion::new(4, "conjecture scan");
    let start = Instant::now();
    let r = conjecture_scan(spec).unwrap();
    c.eq("violations", r.violations.len(), 0);
    c.eq("skipped", r.skipped.len(), 0);
    for b in &r.buckets {
        c.expect(&format!("n = {} slack", b.n), b.min_slack >= 0 && b.min_upper_slack >= 0, || format!("{b:?}"));
        c.notes.push(format!("n={} min slack {} / {}", b.n, b.min_slack, b.min_upper_slack));
    }
    c.elapsed = start.elapsed();
    c
}

fn criterion_5(spec: &CorpusSpec) -> Criterion {
    let mut c = Criterion::new(5, "extraction soundness");
    let start = Instant::now();
    let mut misses = 0u64;
    let mut graphs = 0u64;
    for cg in corpus(spec).unwrap() {
        let g = &cg.graph;
        let w = critical_independent_witness(g);
        graphs += 1;
        if !g.is_independent(&w).unwrap() || g.difference(&w).unwrap() != critical_difference(g) {
            misses += 1;
            c.notes.push(cg.id);
        }
    }
    c.eq("witness misses", misses, 0);
    c.notes.push(format!("{graphs} graphs"));
    c.elapsed = start.elapsed();
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new(6, "determinism");
    let start = Instant::now();
    let spec = CorpusSpec {
        sources: vec![Source::Random { n_min: 12, n_max: 12, p: vec![0.25], count: 500, seed: 7 }],
        limits: Limits::default(),
    };
    let report = || serde_json::to_string(&run(&spec, &registry(), &RunOptions { keep_all: true, shrink: false }).unwrap()).unwrap();
    c.expect("run report", report() == report(), || "reports differ".into());
    let scan = || serde_json::to_string(&conjecture_scan(&spec).unwrap()).unwrap();
    c.expect("conjecture report", scan() == scan(), || "reports differ".into());
    let g = load_unchecked("fig1777").unwrap().graph;
    let analysis = || serde_json::to_string(&critset::analysis::analyze(&g, &Limits::default()).unwrap()).unwrap();
    c.expect("analysis report", analysis() == analysis(), || "reports differ".into());
    let mis = || enumerate_maximum_independent_sets(&g, 20).unwrap();
    c.expect("enumeration order", mis() == mis() && alpha(&g, 40).unwrap() == 6, || "differs".into());
    c.elapsed = start.elapsed();
    c
}

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let spec = corpus_spec();
    let criteria = [
        criterion_1(),
        criterion_2(),
        criterion_3(&spec),
        criterion_4(&spec),
        criterion_5(&spec),
        criterion_6(),
    ];
    let mut unexpected = 0;
    let mut stale = Vec::new();
    for c in &criteria {
        let verdict = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {} ({} checks, {:.2?})",
            c.id, c.title, c.checks, c.elapsed
        );
        for f in &c.failures {
            let tag = if c.is_known_red(f) { "known" } else { "unexpected" };
            println!("     {tag}: {f}");
            if !c.is_known_red(f) || strict {
                unexpected += 1;
            }
        }
        for n in &c.notes {
            println!("     {n}");
        }
        for (id, name) in KNOWN_RED {
            if *id == c.id && !c.failures.iter().any(|f| f.starts_with(&format!("{name}:"))) {
                stale.push(format!("criterion {id} `{name}` now passes; drop it from KNOWN_RED"));
            }
        }
    }
    for s in &stale {
        println!("STALE {s}");
    }
    if unexpected > 0 || !stale.is_empty() {
        std::process::exit(1);
    }
}
