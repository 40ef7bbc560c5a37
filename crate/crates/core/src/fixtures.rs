//! Hand-drawn example graphs with the values stated for them, checked every
//! time a fixture is loaded.

use serde::{Deserialize, Serialize};

use crate::checks::Limits;
use crate::critical::{
    critical_difference, diadem, is_critical_independent, is_critical_set, ker,
    minimal_positive_independent_sets,
};
use crate::error::{Error, Result};
use crate::graph::{BipartitePartition, Graph, Side};
use crate::ke::is_koenig_egervary;
use crate::matching::{maximum_matching_general, saturating_matching};
use crate::mis::{core_and_corona, maximum_critical_independent_set};
use crate::ore::{is_side_critical, ore_profile};
use crate::parse::{parse_graph, Format};
use crate::vertex_set::VertexSet;

macro_rules! registry {
    ($($name:literal => $stem:literal),* $(,)?) => {
        const REGISTRY: &[(&str, &str, &str, &str)] = &[$(
            (
                $name,
                $stem,
                include_str!(concat!("../../../fixtures/", $stem, ".edges")),
                include_str!(concat!("../../../fixtures/", $stem, ".expect.toml")),
            ),
        )*];
    };
}

registry! {
    "fig101" => "fig101",
    "fig511" => "fig511",
    "fig22.G1" => "fig22_g1",
    "fig22.G2" => "fig22_g2",
    "fig333.G1" => "fig333_g1",
    "fig333.G2" => "fig333_g2",
    "fig333.G3" => "fig333_g3",
    "fig177.G" => "fig177_g",
    "fig233" => "fig233",
    "fig14.G1" => "fig14_g1",
    "fig14.G2" => "fig14_g2",
    "fig222.G1" => "fig222_g1",
    "fig222.G2" => "fig222_g2",
    "fig1777" => "fig1777",
    "fig17888.G1" => "fig17888_g1",
    "fig17888.G2" => "fig17888_g2",
}

type Labels = Vec<String>;

#[derive(Clone, Debug, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub d: Option<i64>,
    pub alpha: Option<usize>,
    pub is_ke: Option<bool>,
    pub bipartite: Option<bool>,
    pub perfect_matching: Option<bool>,
    pub core_is_critical: Option<bool>,
    pub corona_is_critical: Option<bool>,
    pub ker_eq_core: Option<bool>,
    pub diadem_eq_corona: Option<bool>,
    pub core_plus_corona: Option<usize>,
    pub ker_diadem_below_two_alpha: Option<bool>,
    pub ncore_union_corona_is_v: Option<bool>,
    pub core: Option<Labels>,
    pub corona_complement: Option<Labels>,
    pub ker: Option<Labels>,
    pub diadem: Option<Labels>,
    pub max_critical_independent: Option<Labels>,
    pub corona_over_diadem: Option<Labels>,
    pub minimal_positive_sets: Option<Vec<Labels>>,
    pub critical_sets: Option<Vec<Labels>>,
    pub critical_independent_sets: Option<Vec<Labels>>,
    #[serde(default)]
    pub neighborhood: Vec<NeighborhoodExpect>,
    #[serde(default)]
    pub difference: Vec<DifferenceExpect>,
    #[serde(default)]
    pub deletion: Vec<DeletionExpect>,
    #[serde(default)]
    pub saturating: Vec<SaturatingExpect>,
    pub ore: Option<OreExpect>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NeighborhoodExpect {
    pub set: Labels,
    pub equals: Labels,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DifferenceExpect {
    pub set: Labels,
    pub value: i64,
}

/// `d(G - vertex)`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DeletionExpect {
    pub vertex: String,
    pub d: i64,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SaturatingExpect {
    pub from: Labels,
    pub into: Labels,
    pub exists: bool,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OreExpect {
    pub side_a: Labels,
    pub delta0_a: Option<i64>,
    pub delta0_b: Option<i64>,
    pub ker_a: Option<Labels>,
    pub ker_b: Option<Labels>,
    pub diadem_a: Option<Labels>,
    pub diadem_b: Option<Labels>,
    pub a_critical_sets: Option<Vec<Labels>>,
    pub b_critical_sets: Option<Vec<Labels>>,
}

/// A stated value that this edge list does not reproduce. Validation checks
/// that the computed value still differs and reports it.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Divergence {
    pub field: String,
    pub stated: Stated,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Stated {
    Int(i64),
    Set(Labels),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct Sidecar {
    expect: Expect,
    #[serde(default)]
    divergence: Vec<Divergence>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    /// File stem under `fixtures/`.
    pub stem: String,
    pub graph: Graph,
    pub expect: Expect,
    pub divergences: Vec<Divergence>,
}

impl Fixture {
    /// The bipartition named by the sidecar, or the computed one.
    pub fn partition(&self) -> Option<BipartitePartition> {
        match &self.expect.ore {
            Some(o) => {
                let a = self.graph.set_from_labels(&o.side_a).ok()?;
                Some(BipartitePartition::new(a.clone(), a.complement(self.graph.n())))
            }
            None => self.graph.bipartition(),
        }
    }
}

/// One compared value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub field: String,
    pub ok: bool,
    pub expected: String,
    pub computed: String,
    /// True for recorded divergences: `ok` then means "still diverges".
    pub divergence: bool,
}

pub fn fixture_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|r| r.0).collect()
}

/// Parses a fixture without validating it.
pub fn load_unchecked(name: &str) -> Result<Fixture> {
    let &(name, stem, edges, sidecar) = REGISTRY
        .iter()
        .find(|r| r.0 == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let graph = parse_graph(edges, Format::EdgeList)?;
    let side: Sidecar = toml::from_str(sidecar)
        .map_err(|e| Error::FixtureValidation { name: name.into(), failures: vec![e.to_string()] })?;
    Ok(Fixture {
        name: name.to_string(),
        stem: stem.to_string(),
        graph,
        expect: side.expect,
        divergences: side.divergence,
    })
}

/// Loads a fixture and fails unless every stated value is reproduced.
pub fn fixture(name: &str) -> Result<Fixture> {
    let f = load_unchecked(name)?;
    let failures: Vec<String> = validate_fixture(&f)?
        .into_iter()
        .filter(|c| !c.ok)
        .map(|c| format!("{}: expected {}, computed {}", c.field, c.expected, c.computed))
        .collect();
    if failures.is_empty() {
        Ok(f)
    } else {
        Err(Error::FixtureValidation { name: f.name, failures })
    }
}

fn fmt_set(g: &Graph, s: &VertexSet) -> String {
    format!("{{{}}}", g.labels_of(s).join(","))
}

struct Checker<'a> {
    g: &'a Graph,
    out: Vec<FixtureCheck>,
}

impl Checker<'_> {
    fn set(&self, labels: &[String]) -> Result<VertexSet> {
        self.g.set_from_labels(labels)
    }

    fn push(&mut self, field: &str, ok: bool, expected: String, computed: String) {
        self.out.push(FixtureCheck { field: field.into(), ok, expected, computed, divergence: false });
    }

    fn value<T: PartialEq + std::fmt::Debug>(&mut self, field: &str, want: Option<T>, got: impl FnOnce() -> Result<T>) -> Result<()> {
        if let Some(w) = want {
            let g = got()?;
            self.push(field, w == g, format!("{w:?}"), format!("{g:?}"));
        }
        Ok(())
    }

    fn set_value(&mut self, field: &str, want: &Option<Labels>, got: impl FnOnce() -> Result<VertexSet>) -> Result<()> {
        if let Some(w) = want {
            let w = self.set(w)?;
            let g = got()?;
            let (es, cs) = (fmt_set(self.g, &w), fmt_set(self.g, &g));
            self.push(field, w == g, es, cs);
        }
        Ok(())
    }

    fn each_set(&mut self, field: &str, want: &Option<Vec<Labels>>, test: impl Fn(&VertexSet) -> Result<bool>) -> Result<()> {
        for w in want.iter().flatten() {
            let s = self.set(w)?;
            let ok = test(&s)?;
            self.push(field, ok, fmt_set(self.g, &s), ok.to_string());
        }
        Ok(())
    }
}

/// Compares every stated value with the computed one. Divergences produce a
/// check that passes while the computed value still differs from the
/// stated one.
pub fn validate_fixture(f: &Fixture) -> Result<Vec<FixtureCheck>> {
    let g = &f.graph;
    let e = &f.expect;
    let limits = Limits::default();
    let mis = core_and_corona(g, limits.enumeration)?;
    let (ker_g, diadem_g) = (ker(g), diadem(g));
    let two_alpha = 2 * mis.alpha;
    let mut c = Checker { g, out: Vec::new() };

    c.value("d", e.d, || Ok(critical_difference(g)))?;
    c.value("alpha", e.alpha, || Ok(mis.alpha))?;
    c.value("is_ke", e.is_ke, || is_koenig_egervary(g, limits.alpha))?;
    c.value("bipartite", e.bipartite, || Ok(g.is_bipartite()))?;
    c.value("perfect_matching", e.perfect_matching, || Ok(2 * maximum_matching_general(g).len() == g.n()))?;
    c.value("core_is_critical", e.core_is_critical, || is_critical_set(g, &mis.core))?;
    c.value("corona_is_critical", e.corona_is_critical, || is_critical_set(g, &mis.corona))?;
    c.value("ker_eq_core", e.ker_eq_core, || Ok(ker_g == mis.core))?;
    c.value("diadem_eq_corona", e.diadem_eq_corona, || Ok(diadem_g == mis.corona))?;
    c.value("core_plus_corona", e.core_plus_corona, || Ok(mis.core.len() + mis.corona.len()))?;
    c.value("ker_diadem_below_two_alpha", e.ker_diadem_below_two_alpha, || {
        Ok(ker_g.len() + diadem_g.len() < two_alpha)
    })?;
    c.value("ncore_union_corona_is_v", e.ncore_union_corona_is_v, || {
        Ok(g.open_nbhd(&mis.core).union(&mis.corona) == g.vertices())
    })?;
    c.set_value("core", &e.core, || Ok(mis.core.clone()))?;
    c.set_value("corona_complement", &e.corona_complement, || Ok(mis.corona.complement(g.n())))?;
    c.set_value("ker", &e.ker, || Ok(ker_g.clone()))?;
    c.set_value("diadem", &e.diadem, || Ok(diadem_g.clone()))?;
    c.set_value("max_critical_independent", &e.max_critical_independent, || {
        maximum_critical_independent_set(g, limits.oracle)
    })?;
    c.set_value("corona_over_diadem", &e.corona_over_diadem, || Ok(mis.corona.difference(&diadem_g)))?;
    if let Some(want) = &e.minimal_positive_sets {
        let mut w: Vec<VertexSet> = want.iter().map(|l| c.set(l)).collect::<Result<_>>()?;
        w.sort();
        let got = minimal_positive_independent_sets(g, limits.oracle)?;
        let show = |v: &[VertexSet]| v.iter().map(|s| fmt_set(g, s)).collect::<Vec<_>>().join(" ");
        c.push("minimal_positive_sets", w == got, show(&w), show(&got));
    }
    c.each_set("critical_sets", &e.critical_sets, |s| is_critical_set(g, s))?;
    c.each_set("critical_independent_sets", &e.critical_independent_sets, |s| is_critical_independent(g, s))?;
    for n in &e.neighborhood {
        let (x, want) = (c.set(&n.set)?, c.set(&n.equals)?);
        let got = g.neighborhood(&x, false)?;
        c.push("neighborhood", got == want, fmt_set(g, &want), fmt_set(g, &got));
    }
    for d in &e.difference {
        let got = g.difference(&c.set(&d.set)?)?;
        c.push("difference", got == d.value, d.value.to_string(), got.to_string());
    }
    for d in &e.deletion {
        let v = g.vertex_by_label(&d.vertex)?;
        let got = critical_difference(&g.without(&VertexSet::singleton(v)).0);
        c.push("deletion", got == d.d, d.d.to_string(), got.to_string());
    }
    for s in &e.saturating {
        let got = saturating_matching(g, &c.set(&s.from)?, &c.set(&s.into)?)?.exists();
        c.push("saturating", got == s.exists, s.exists.to_string(), got.to_string());
    }
    let ore = match (&e.ore, f.partition()) {
        (Some(o), Some(parts)) => {
            let p = ore_profile(g, &parts)?;
            c.value("ore.delta0_a", o.delta0_a, || Ok(p.delta0_a))?;
            c.value("ore.delta0_b", o.delta0_b, || Ok(p.delta0_b))?;
            c.set_value("ore.ker_a", &o.ker_a, || Ok(p.ker_a.clone()))?;
            c.set_value("ore.ker_b", &o.ker_b, || Ok(p.ker_b.clone()))?;
            c.set_value("ore.diadem_a", &o.diadem_a, || Ok(p.diadem_a.clone()))?;
            c.set_value("ore.diadem_b", &o.diadem_b, || Ok(p.diadem_b.clone()))?;
            c.each_set("ore.a_critical_sets", &o.a_critical_sets, |s| is_side_critical(g, &parts, Side::A, s))?;
            c.each_set("ore.b_critical_sets", &o.b_critical_sets, |s| is_side_critical(g, &parts, Side::B, s))?;
            Some(p)
        }
        _ => None,
    };
    for d in &f.divergences {
        let unsupported = || Error::FixtureValidation {
            name: f.name.clone(),
            failures: vec![format!("divergence on unsupported field `{}`", d.field)],
        };
        let (stated, computed) = match (&d.stated, d.field.split_once(':')) {
            (Stated::Int(want), Some(("deletion", label))) => {
                let v = g.vertex_by_label(label)?;
                let got = critical_difference(&g.without(&VertexSet::singleton(v)).0);
                (want.to_string(), got.to_string())
            }
            (Stated::Set(want), None) => {
                let got = match (d.field.as_str(), &ore) {
                    ("diadem", _) => diadem_g.clone(),
                    ("ker", _) => ker_g.clone(),
                    ("core", _) => mis.core.clone(),
                    ("ker_b", Some(p)) => p.ker_b.clone(),
                    ("ker_a", Some(p)) => p.ker_a.clone(),
                    _ => return Err(unsupported()),
                };
                (fmt_set(g, &c.set(want)?), fmt_set(g, &got))
            }
            _ => return Err(unsupported()),
        };
        c.out.push(FixtureCheck {
            field: d.field.clone(),
            ok: stated != computed,
            expected: stated,
            computed,
            divergence: true,
        });
    }
    Ok(c.out)
}
