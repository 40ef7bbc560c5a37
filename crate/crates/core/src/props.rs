//! Registry of graph properties, each evaluated as a predicate on one graph.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::RngExt;
use serde::{Deserialize, Serialize};

use crate::checks::{Limits, Status, Value};
use crate::critical::{
    critical_difference, critical_independent_witness, diadem, enumerate_critical_independent_sets,
    is_critical_set, ker, matching_into, minimal_positive_independent_sets, verify_ker_characterization,
};
use crate::error::{Error, Result};
use crate::generate::keyed_rng;
use crate::graph::{BipartitePartition, Graph, Side};
use crate::ke::{is_ke_via_critical, is_koenig_egervary, ke_identity_checks};
use crate::matching::{maximum_matching_general, Matching};
use crate::mis::{alpha, core_corona_by_deletion, enumerate_maximum_independent_sets, MisProfile};
use crate::oracle;
use crate::ore::{delta0, ore_profile, ore_report, side_critical_sets, side_diadem, side_kernel};
use crate::vertex_set::VertexSet;

/// Sampled pairs for the supermodularity check.
const SUPERMODULAR_PAIRS: u64 = 64;
/// Critical sets compared pairwise by the closure check.
const CLOSURE_SAMPLE: usize = 48;
/// Critical independent sets run through the ker characterization.
const TH9_SAMPLE: usize = 64;

pub type Witness = BTreeMap<String, Value>;

macro_rules! witness {
    ($($k:literal => $v:expr),* $(,)?) => {{
        let mut w = Witness::new();
        $(w.insert($k.to_string(), Value::from($v));)*
        w
    }};
}

/// Lazily computed invariants of one graph, shared by every property
/// evaluated on it.
pub struct Invariants<'g> {
    g: &'g Graph,
    limits: Limits,
    d: OnceCell<i64>,
    ker: OnceCell<VertexSet>,
    diadem: OnceCell<VertexSet>,
    witness: OnceCell<VertexSet>,
    matching: OnceCell<Matching>,
    parts: OnceCell<Option<BipartitePartition>>,
    alpha: OnceCell<Result<usize>>,
    mis_sets: OnceCell<Result<Vec<VertexSet>>>,
    mis: OnceCell<Result<MisProfile>>,
    cis: OnceCell<Result<Vec<VertexSet>>>,
    maximal_cis: OnceCell<Result<Vec<VertexSet>>>,
    critical_sets: OnceCell<Result<Vec<VertexSet>>>,
    minimal_positive: OnceCell<Result<Vec<VertexSet>>>,
}

fn cached<T>(cell: &OnceCell<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl<'g> Invariants<'g> {
    pub fn new(g: &'g Graph, limits: Limits) -> Self {
        Invariants {
            g,
            limits,
            d: OnceCell::new(),
            ker: OnceCell::new(),
            diadem: OnceCell::new(),
            witness: OnceCell::new(),
            matching: OnceCell::new(),
            parts: OnceCell::new(),
            alpha: OnceCell::new(),
            mis_sets: OnceCell::new(),
            mis: OnceCell::new(),
            cis: OnceCell::new(),
            maximal_cis: OnceCell::new(),
            critical_sets: OnceCell::new(),
            minimal_positive: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Errors unless subset scans are allowed on this graph.
    pub fn oracle_guard(&self, what: &'static str) -> Result<usize> {
        let n = self.g.n();
        let limit = self.limits.oracle_for(n, what)?.min(oracle::MAX_N);
        if n > limit {
            return Err(Error::LimitExceeded { what, n, limit });
        }
        Ok(limit)
    }

    pub fn d(&self) -> i64 {
        *self.d.get_or_init(|| critical_difference(self.g))
    }

    pub fn ker(&self) -> &VertexSet {
        self.ker.get_or_init(|| ker(self.g))
    }

    pub fn diadem(&self) -> &VertexSet {
        self.diadem.get_or_init(|| diadem(self.g))
    }

    pub fn witness(&self) -> &VertexSet {
        self.witness.get_or_init(|| critical_independent_witness(self.g))
    }

    pub fn matching(&self) -> &Matching {
        self.matching.get_or_init(|| maximum_matching_general(self.g))
    }

    pub fn mu(&self) -> usize {
        self.matching().len()
    }

    pub fn parts(&self) -> Option<&BipartitePartition> {
        self.parts.get_or_init(|| self.g.bipartition()).as_ref()
    }

    pub fn alpha(&self) -> Result<usize> {
        cached(&self.alpha, || alpha(self.g, self.limits.alpha)).copied()
    }

    pub fn maximum_independent_sets(&self) -> Result<&[VertexSet]> {
        cached(&self.mis_sets, || enumerate_maximum_independent_sets(self.g, self.limits.enumeration))
            .map(Vec::as_slice)
    }

    pub fn mis(&self) -> Result<&MisProfile> {
        cached(&self.mis, || {
            let sets = self.maximum_independent_sets()?;
            Ok(MisProfile {
                alpha: sets.first().map_or(0, VertexSet::len),
                count: sets.len() as u64,
                core: oracle::intersection(sets),
                corona: oracle::union(sets),
            })
        })
    }

    pub fn core(&self) -> Result<&VertexSet> {
        Ok(&self.mis()?.core)
    }

    pub fn corona(&self) -> Result<&VertexSet> {
        Ok(&self.mis()?.corona)
    }

    /// `α + μ = n`, decided without `α` for bipartite graphs.
    pub fn is_ke(&self) -> Result<bool> {
        if self.parts().is_some() {
            return Ok(true);
        }
        Ok(self.alpha()? + self.mu() == self.g.n())
    }

    /// All critical independent sets, sorted.
    pub fn critical_independent_sets(&self) -> Result<&[VertexSet]> {
        cached(&self.cis, || {
            let limit = self.oracle_guard("critical independent set enumeration")?;
            enumerate_critical_independent_sets(self.g, limit)
        })
        .map(Vec::as_slice)
    }

    /// Inclusion-maximal critical independent sets, sorted.
    pub fn maximal_critical_independent_sets(&self) -> Result<&[VertexSet]> {
        cached(&self.maximal_cis, || {
            let all = self.critical_independent_sets()?;
            Ok(all
                .iter()
                .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
                .cloned()
                .collect())
        })
        .map(Vec::as_slice)
    }

    /// Every critical set, independent or not, sorted.
    pub fn critical_sets(&self) -> Result<&[VertexSet]> {
        cached(&self.critical_sets, || {
            self.oracle_guard("critical set enumeration")?;
            let mut sets = oracle::critical_sets(self.g);
            sets.sort();
            Ok(sets)
        })
        .map(Vec::as_slice)
    }

    pub fn minimal_positive_sets(&self) -> Result<&[VertexSet]> {
        cached(&self.minimal_positive, || {
            let limit = self.oracle_guard("minimal positive set enumeration")?;
            minimal_positive_independent_sets(self.g, limit)
        })
        .map(Vec::as_slice)
    }
}

/// When a property is meaningful; decided before its check runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Applicability {
    Always,
    Bipartite,
    Ke,
    KerNonEmpty,
    CoreCritical,
}

impl Applicability {
    /// `Some(reason)` when the property does not apply.
    pub fn rejects(self, inv: &Invariants) -> Result<Option<&'static str>> {
        Ok(match self {
            Applicability::Always => None,
            Applicability::Bipartite => inv.parts().is_none().then_some("not bipartite"),
            Applicability::Ke => (!inv.is_ke()?).then_some("not KE"),
            Applicability::KerNonEmpty => inv.ker().is_empty().then_some("ker is empty"),
            Applicability::CoreCritical => {
                (!is_critical_set(inv.graph(), inv.core()?)?).then_some("core is not critical")
            }
        })
    }
}

/// Result of a property's check function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub holds: bool,
    pub witness: Witness,
}

impl Outcome {
    pub fn holds() -> Result<Outcome> {
        Ok(Outcome {
            holds: true,
            witness: Witness::new(),
        })
    }

    pub fn fails(witness: Witness) -> Result<Outcome> {
        Ok(Outcome { holds: false, witness })
    }

    pub fn check(holds: bool, witness: impl FnOnce() -> Witness) -> Result<Outcome> {
        if holds {
            Outcome::holds()
        } else {
            Outcome::fails(witness())
        }
    }
}

pub type CheckFn = fn(&Invariants) -> Result<Outcome>;

#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub statement: &'static str,
    pub applicability: Applicability,
    pub check: CheckFn,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Property").field("name", &self.name).finish_non_exhaustive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable(String),
    Skipped(String),
    /// The check itself errored for a reason other than a limit.
    Error(String),
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::Fails | Verdict::Error(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Wall time of the check; left out of serialized reports.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Property {
    pub fn evaluate(&self, inv: &Invariants) -> PropertyResult {
        let start = Instant::now();
        let mut witness = None;
        let verdict = match self.applicability.rejects(inv) {
            Err(e) if e.is_limit() => Verdict::Skipped(e.to_string()),
            Err(e) => Verdict::Error(e.to_string()),
            Ok(Some(reason)) => Verdict::NotApplicable(reason.to_string()),
            Ok(None) => match (self.check)(inv) {
                Ok(o) if o.holds => Verdict::Holds,
                Ok(o) => {
                    witness = Some(o.witness);
                    Verdict::Fails
                }
                Err(e) if e.is_limit() => Verdict::Skipped(e.to_string()),
                Err(e) => Verdict::Error(e.to_string()),
            },
        };
        PropertyResult {
            property: self.name.to_string(),
            verdict,
            witness,
            elapsed: start.elapsed(),
        }
    }

    /// Evaluates on a fresh invariant cache.
    pub fn evaluate_on(&self, g: &Graph, limits: &Limits) -> PropertyResult {
        self.evaluate(&Invariants::new(g, *limits))
    }
}

macro_rules! property {
    ($name:literal, $app:ident, $statement:literal, $check:expr) => {
        Property {
            name: $name,
            statement: $statement,
            applicability: Applicability::$app,
            check: $check,
        }
    };
}

/// Every registered property, in a fixed order.
pub fn registry() -> Vec<Property> {
    vec![
        property!("zhang.d_eq_id", Always, "d(G) equals the largest difference of an independent set", zhang),
        property!("th4i.supermodular", Always, "d(A u B) + d(A n B) >= d(A) + d(B)", supermodular),
        property!("th4ii.critical_closure", Always, "unions and intersections of critical sets are critical", closure),
        property!("th4iii.unique_minimal_ker", Always, "ker is the unique inclusion-minimal critical independent set", unique_minimal_ker),
        property!("cor.diadem_critical", Always, "diadem is a critical set", diadem_critical),
        property!("cor2.ke_core_corona_critical", Ke, "on KE graphs core and corona are critical", ke_core_corona_critical),
        property!("s2.core_in_maximal_critical", CoreCritical, "a critical core lies in every maximal critical independent set", core_in_maximal),
        property!("rem.corona_contains_maximal_critical", Always, "every maximal critical independent set lies inside corona", corona_contains_maximal),
        property!("prop_del.i", Always, "d(G - v) = d(G) - 1 exactly for v in ker", deletion_ker),
        property!("prop_del.ii", Always, "for v in ker, ker(G - v) lies inside ker - v", deletion_ker_shrinks),
        property!("th2.matching_into_critical", Always, "each critical independent S has a matching from N(S) into S", matching_into_critical),
        property!("th3.extends_to_maximum", Always, "each critical independent set lies in a maximum independent set", extends_to_maximum),
        property!("th9.ker_characterization", Always, "no tight set in N(A) iff every vertex of A is avoidable, iff A = ker", ker_characterization),
        property!("th1.ker_union_minimal", KerNonEmpty, "ker is the union of the minimal positive independent sets", ker_union_minimal),
        property!("prop3.minimal_positive_diff_one", Always, "minimal positive independent sets have difference 1", minimal_positive_diff_one),
        property!("prop.min_size_bound", KerNonEmpty, "a smallest positive independent set has size <= |ker| - d + 1", min_size_bound),
        property!("th6.ker_subset_core", Always, "ker lies inside core", ker_subset_core),
        property!("cor1.d_ge_alpha_minus_mu", Always, "d >= alpha - mu", d_ge_alpha_minus_mu),
        property!("th10.bipartite_ker_eq_core", Bipartite, "on bipartite graphs ker = core", bipartite_ker_eq_core),
        property!("Th5.ke_matching_structure", Ke, "a maximum matching matches V - S into S for every maximum S, and N(core) into core", ke_matching_structure),
        property!("th8.ke_difference_identities", Ke, "on KE graphs d = |core| - |N(core)| = alpha - mu = def", ke_difference_identities),
        property!("th5.ke_iff_all_mis_critical", Always, "G is KE iff every maximum independent set is critical", ke_iff_all_mis_critical),
        property!("th11.ke_identities", Ke, "the KE identities on core, corona, ker and diadem", ke_identities),
        property!("th11ii.diadem_subset_corona", Always, "diadem lies inside corona", diadem_subset_corona),
        property!("Cor1.ore_disjointness", Bipartite, "ker_A and its neighborhood avoid every B-critical set", ore_disjointness),
        property!("Th4.ore_relations", Bipartite, "side-critical sets combine into critical sets and match into themselves", ore_relations),
        property!("s5.bipartite_ker_diadem", Bipartite, "side kernels and diadems assemble ker and diadem, |ker| + |diadem| = 2 alpha", bipartite_ker_diadem),
        property!("s6.core_corona_sandwich", Always, "2 alpha <= |core| + |corona|", core_corona_sandwich),
        property!("s1.pendant_in_diadem", Always, "a pendant vertex outside a K2 component lies in diadem", pendant_in_diadem),
        property!("s1.ncore_outside_corona", Always, "N(core) is disjoint from corona", ncore_outside_corona),
        property!("ke.equivalence", Always, "alpha + mu = n iff some maximum independent set is critical", ke_equivalence),
        property!("ke.is_ke", Ke, "alpha + mu = n", ke_is_ke),
        property!("ext.witness_soundness", Always, "the extracted witness is independent with difference d", witness_soundness),
        property!("oracle.ker_diadem_agreement", Always, "ker, diadem and d agree with subset enumeration", ker_diadem_agreement),
        property!("oracle.matching", Always, "the blossom matching is valid and maximum", oracle_matching),
        property!("oracle.mis", Always, "alpha, the maximum independent sets and the deletion route agree with subset enumeration", oracle_mis),
        property!("oracle.ore_rules", Bipartite, "delta0, side kernels and side diadems agree with subset enumeration", oracle_ore_rules),
    ]
}

pub fn property(name: &str) -> Result<Property> {
    registry()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownProperty(name.to_string()))
}

/// Every registered property on one graph.
pub fn evaluate_all(g: &Graph, limits: &Limits, properties: &[Property]) -> Vec<PropertyResult> {
    let inv = Invariants::new(g, *limits);
    properties.iter().map(|p| p.evaluate(&inv)).collect()
}

fn zhang(inv: &Invariants) -> Result<Outcome> {
    inv.oracle_guard("subset scan")?;
    let g = inv.graph();
    let all = oracle::critical_difference(g);
    let independent = oracle::independent_critical_difference(g);
    Outcome::check(inv.d() == all && all == independent, || {
        witness! {"d" => inv.d(), "max_all" => all, "max_independent" => independent}
    })
}

fn supermodular(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    for k in 0..SUPERMODULAR_PAIRS {
        let mut rng = keyed_rng(g.fingerprint(), k);
        let mut a = VertexSet::new();
        let mut b = VertexSet::new();
        for v in 0..g.n() {
            if rng.random_bool(0.5) {
                a.insert(v);
            }
            if rng.random_bool(0.5) {
                b.insert(v);
            }
        }
        let lhs = g.diff(&a.union(&b)) + g.diff(&a.intersection(&b));
        let rhs = g.diff(&a) + g.diff(&b);
        if lhs < rhs {
            return Outcome::fails(witness! {"a" => a, "b" => b, "lhs" => lhs, "rhs" => rhs});
        }
    }
    Outcome::holds()
}

fn closure(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let sets = inv.critical_sets()?;
    let stride = sets.len().div_ceil(CLOSURE_SAMPLE).max(1);
    let sample: Vec<&VertexSet> = sets.iter().step_by(stride).collect();
    let d = inv.d();
    for (i, x) in sample.iter().enumerate() {
        for y in &sample[i..] {
            for (op, z) in [("union", x.union(y)), ("intersection", x.intersection(y))] {
                if g.diff(&z) != d {
                    let mut w = witness! {"x" => *x, "y" => *y, "difference" => g.diff(&z), "d" => d};
                    w.insert(op.to_string(), Value::from(z));
                    return Outcome::fails(w);
                }
            }
        }
    }
    Outcome::holds()
}

fn unique_minimal_ker(inv: &Invariants) -> Result<Outcome> {
    let sets = inv.critical_independent_sets()?;
    let minimal: Vec<&VertexSet> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| t.len() < s.len() && t.is_subset(s)))
        .collect();
    Outcome::check(minimal == [inv.ker()], || {
        let mut w = witness! {"ker" => inv.ker(), "minimal_count" => minimal.len()};
        if let Some(other) = minimal.iter().find(|m| **m != inv.ker()) {
            w.insert("other_minimal".into(), Value::from(*other));
        }
        w
    })
}

fn diadem_critical(inv: &Invariants) -> Result<Outcome> {
    let diff = inv.graph().diff(inv.diadem());
    Outcome::check(diff == inv.d(), || witness! {"diadem" => inv.diadem(), "difference" => diff, "d" => inv.d()})
}

fn ke_core_corona_critical(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let (core, corona) = (inv.core()?, inv.corona()?);
    let ok = is_critical_set(g, core)? && is_critical_set(g, corona)?;
    Outcome::check(ok, || {
        witness! {
            "core" => core, "core_difference" => g.diff(core),
            "corona" => corona, "corona_difference" => g.diff(corona), "d" => inv.d(),
        }
    })
}

fn core_in_maximal(inv: &Invariants) -> Result<Outcome> {
    let core = inv.core()?;
    match inv.maximal_critical_independent_sets()?.iter().find(|s| !core.is_subset(s)) {
        Some(s) => Outcome::fails(witness! {"core" => core, "maximal_critical" => s}),
        None => Outcome::holds(),
    }
}

fn corona_contains_maximal(inv: &Invariants) -> Result<Outcome> {
    let corona = inv.corona()?;
    match inv.maximal_critical_independent_sets()?.iter().find(|s| !s.is_subset(corona)) {
        Some(s) => Outcome::fails(witness! {"corona" => corona, "maximal_critical" => s}),
        None => Outcome::holds(),
    }
}

fn deletion_ker(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let brute = oracle::intersection(inv.critical_independent_sets()?);
    for v in g.vertices().iter() {
        let dv = critical_difference(&g.without(&VertexSet::singleton(v)).0);
        if (dv == inv.d() - 1) != brute.contains(v) {
            return Outcome::fails(witness! {"vertex" => v, "d" => inv.d(), "d_minus_v" => dv, "ker" => &brute});
        }
    }
    Outcome::holds()
}

fn deletion_ker_shrinks(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    for v in inv.ker().iter() {
        let (h, map) = g.without(&VertexSet::singleton(v));
        let back = map.backward(&ker(&h));
        let mut rest = inv.ker().clone();
        rest.remove(v);
        if !back.is_subset(&rest) {
            return Outcome::fails(witness! {"vertex" => v, "ker" => inv.ker(), "ker_minus_v" => back});
        }
    }
    Outcome::holds()
}

fn matching_into_critical(inv: &Invariants) -> Result<Outcome> {
    for s in inv.critical_independent_sets()? {
        if !matching_into(inv.graph(), s).exists() {
            return Outcome::fails(witness! {"s" => s, "n_s" => inv.graph().open_nbhd(s)});
        }
    }
    Outcome::holds()
}

fn extends_to_maximum(inv: &Invariants) -> Result<Outcome> {
    let omega = inv.maximum_independent_sets()?;
    match inv.critical_independent_sets()?.iter().find(|s| !omega.iter().any(|m| s.is_subset(m))) {
        Some(s) => Outcome::fails(witness! {"s" => s, "alpha" => inv.mis()?.alpha}),
        None => Outcome::holds(),
    }
}

fn ker_characterization(inv: &Invariants) -> Result<Outcome> {
    let sets = inv.critical_independent_sets()?;
    let stride = sets.len().div_ceil(TH9_SAMPLE).max(1);
    let mut sample: Vec<&VertexSet> = sets.iter().step_by(stride).collect();
    sample.push(inv.ker());
    for a in sample {
        let c = verify_ker_characterization(inv.graph(), a)?;
        if !c.conditions_agree() || c.is_ker() != (a == inv.ker()) {
            let mut w = witness! {
                "a" => a, "ker" => inv.ker(),
                "no_tight_set" => c.no_tight_set,
                "matchings_avoid_each_vertex" => c.matchings_avoid_each_vertex,
            };
            if let Some(t) = &c.tight_set {
                w.insert("tight_set".into(), Value::from(t));
            }
            return Outcome::fails(w);
        }
    }
    Outcome::holds()
}

fn ker_union_minimal(inv: &Invariants) -> Result<Outcome> {
    let union = oracle::union(inv.minimal_positive_sets()?);
    Outcome::check(&union == inv.ker(), || witness! {"ker" => inv.ker(), "union" => union})
}

fn minimal_positive_diff_one(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    match inv.minimal_positive_sets()?.iter().find(|s| g.diff(s) != 1) {
        Some(s) => Outcome::fails(witness! {"s" => s, "difference" => g.diff(s)}),
        None => Outcome::holds(),
    }
}

fn min_size_bound(inv: &Invariants) -> Result<Outcome> {
    let sets = inv.minimal_positive_sets()?;
    let smallest = sets.iter().min_by_key(|s| s.len()).ok_or(Error::Corpus(
        "ker is nonempty but no positive independent set was found".into(),
    ))?;
    let bound = inv.ker().len() as i64 - inv.d() + 1;
    Outcome::check(smallest.len() as i64 <= bound, || {
        witness! {"smallest" => smallest, "size" => smallest.len(), "bound" => bound}
    })
}

fn ker_subset_core(inv: &Invariants) -> Result<Outcome> {
    let core = inv.core()?;
    Outcome::check(inv.ker().is_subset(core), || witness! {"ker" => inv.ker(), "core" => core})
}

fn d_ge_alpha_minus_mu(inv: &Invariants) -> Result<Outcome> {
    let (a, mu) = (inv.alpha()? as i64, inv.mu() as i64);
    Outcome::check(inv.d() >= a - mu, || witness! {"d" => inv.d(), "alpha" => a, "mu" => mu})
}

fn bipartite_ker_eq_core(inv: &Invariants) -> Result<Outcome> {
    let core = inv.core()?;
    Outcome::check(inv.ker() == core, || witness! {"ker" => inv.ker(), "core" => core})
}

fn ke_matching_structure(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let m = inv.matching();
    let matched_into = |from: &VertexSet, into: &VertexSet| {
        from.iter().find(|&v| !m.mate(v).is_some_and(|u| into.contains(u)))
    };
    for s in inv.maximum_independent_sets()? {
        if let Some(v) = matched_into(&s.complement(g.n()), s) {
            return Outcome::fails(witness! {"maximum_independent" => s, "unmatched" => v});
        }
    }
    let core = inv.core()?;
    let n_core = g.open_nbhd(core);
    if let Some(v) = matched_into(&n_core, core) {
        return Outcome::fails(witness! {"core" => core, "unmatched" => v});
    }
    let outside = inv.corona()?.complement(g.n());
    Outcome::check(n_core == outside, || witness! {"n_core" => n_core, "v_minus_corona" => outside})
}

fn ke_difference_identities(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let core = inv.core()?;
    let a = inv.alpha()? as i64;
    let mu = inv.mu() as i64;
    let values = [g.diff(core), a - mu, g.n() as i64 - 2 * mu];
    Outcome::check(values.iter().all(|&x| x == inv.d()), || {
        witness! {"d" => inv.d(), "core_difference" => values[0], "alpha_minus_mu" => values[1], "def" => values[2]}
    })
}

fn ke_iff_all_mis_critical(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let ke = inv.is_ke()?;
    let mut non_critical = None;
    for s in inv.maximum_independent_sets()? {
        if !is_critical_set(g, s)? {
            non_critical = Some(s);
            break;
        }
    }
    Outcome::check(ke == non_critical.is_none(), || {
        let mut w = witness! {"is_ke" => ke};
        if let Some(s) = non_critical {
            w.insert("non_critical_maximum".into(), Value::from(s));
        }
        w
    })
}

fn ke_identities(inv: &Invariants) -> Result<Outcome> {
    let checks = ke_identity_checks(inv.graph(), inv.limits())?;
    match checks.iter().find(|c| c.status != Status::Holds) {
        Some(c) => {
            let mut w = witness! {"identity" => Value::Labels(vec![c.name.clone()])};
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                w.insert("lhs".into(), l.clone());
                w.insert("rhs".into(), r.clone());
            }
            Outcome::fails(w)
        }
        None => Outcome::holds(),
    }
}

fn diadem_subset_corona(inv: &Invariants) -> Result<Outcome> {
    let corona = inv.corona()?;
    Outcome::check(inv.diadem().is_subset(corona), || witness! {"diadem" => inv.diadem(), "corona" => corona})
}

/// The partition and its swap.
fn labelings(inv: &Invariants) -> Vec<BipartitePartition> {
    let p = inv.parts().expect("applicability checked");
    vec![p.clone(), p.swapped()]
}

fn ore_disjointness(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    for parts in labelings(inv) {
        let prof = ore_profile(g, &parts)?;
        let clash = |x: &VertexSet, y: &VertexSet| {
            !x.is_disjoint(&g.open_nbhd(y)) || !g.open_nbhd(x).is_disjoint(y)
        };
        if clash(&prof.ker_a, &prof.ker_b) {
            return Outcome::fails(witness! {"side_a" => &parts.side_a, "ker_a" => prof.ker_a, "ker_b" => prof.ker_b});
        }
        for y in side_critical_sets(g, &parts, Side::B, inv.limits())? {
            if clash(&prof.ker_a, &y) {
                return Outcome::fails(witness! {"side_a" => &parts.side_a, "ker_a" => prof.ker_a, "b_critical" => y});
            }
        }
    }
    Outcome::holds()
}

/// Fails on the first failing ore check in `range`; a skipped check makes
/// the whole property a skip.
fn ore_checks(inv: &Invariants, range: std::ops::Range<usize>) -> Result<Outcome> {
    let g = inv.graph();
    for parts in labelings(inv) {
        let report = ore_report(g, &parts, inv.limits())?;
        for c in &report.checks[range.clone()] {
            match &c.status {
                Status::Holds => {}
                Status::Fails => {
                    let mut w = witness! {
                        "side_a" => &parts.side_a,
                        "identity" => Value::Labels(vec![c.name.clone()]),
                    };
                    if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                        w.insert("lhs".into(), l.clone());
                        w.insert("rhs".into(), r.clone());
                    }
                    return Outcome::fails(w);
                }
                Status::Skipped(_) => {
                    let limit = inv.limits().oracle.min(inv.limits().enumeration);
                    return Err(Error::LimitExceeded { what: "ore enumeration checks", n: g.n(), limit });
                }
            }
        }
    }
    Outcome::holds()
}

fn ore_relations(inv: &Invariants) -> Result<Outcome> {
    ore_checks(inv, 0..5)
}

fn bipartite_ker_diadem(inv: &Invariants) -> Result<Outcome> {
    ore_checks(inv, 5..10)
}

fn core_corona_sandwich(inv: &Invariants) -> Result<Outcome> {
    let mis = inv.mis()?;
    let upper = mis.core.len() + mis.corona.len();
    Outcome::check(2 * mis.alpha <= upper, || {
        witness! {"two_alpha" => 2 * mis.alpha, "core_plus_corona" => upper}
    })
}

fn pendant_in_diadem(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let missing = g
        .vertices()
        .iter()
        .find(|&v| g.degree(v) == 1 && g.degree(g.neighbors(v)[0]) > 1 && !inv.diadem().contains(v));
    match missing {
        Some(v) => Outcome::fails(witness! {"pendant" => v, "diadem" => inv.diadem()}),
        None => Outcome::holds(),
    }
}

fn ncore_outside_corona(inv: &Invariants) -> Result<Outcome> {
    let n_core = inv.graph().open_nbhd(inv.core()?);
    let corona = inv.corona()?;
    Outcome::check(n_core.is_disjoint(corona), || witness! {"n_core" => &n_core, "corona" => corona})
}

fn ke_equivalence(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let by_alpha = is_koenig_egervary(g, inv.limits().alpha)?;
    let by_critical = is_ke_via_critical(g, inv.limits())?;
    Outcome::check(by_alpha == by_critical, || {
        witness! {"alpha_plus_mu" => by_alpha, "maximum_critical_is_maximum" => by_critical}
    })
}

fn ke_is_ke(inv: &Invariants) -> Result<Outcome> {
    let (a, mu) = (inv.alpha()?, inv.mu());
    Outcome::check(a + mu == inv.graph().n(), || witness! {"alpha" => a, "mu" => mu, "n" => inv.graph().n()})
}

fn witness_soundness(inv: &Invariants) -> Result<Outcome> {
    let g = inv.graph();
    let w = inv.witness();
    Outcome::check(g.independent(w) && g.diff(w) == inv.d(), || {
        witness! {"witness" => w, "independent" => g.independent(w), "difference" => g.diff(w), "d" => inv.d()}
    })
}

fn ker_diadem_agreement(inv: &Invariants) -> Result<Outcome> {
    inv.oracle_guard("subset scan")?;
    let g = inv.graph();
    let mut brute = oracle::critical_independent_sets(g);
    brute.sort();
    let listed = inv.critical_independent_sets()?;
    if brute != listed {
        return Outcome::fails(witness! {"listed" => listed.len(), "brute_force" => brute.len()});
    }
    let (k, dm) = (oracle::intersection(&brute), oracle::union(&brute));
    Outcome::check(&k == inv.ker() && &dm == inv.diadem(), || {
        witness! {"ker" => inv.ker(), "ker_oracle" => k, "diadem" => inv.diadem(), "diadem_oracle" => dm}
    })
}

fn oracle_matching(inv: &Invariants) -> Result<Outcome> {
    inv.oracle_guard("matching scan")?;
    let brute = oracle::mu(inv.graph());
    let m = inv.matching();
    Outcome::check(m.is_valid_for(inv.graph()) && m.len() == brute, || {
        witness! {"mu" => m.len(), "mu_oracle" => brute, "valid" => m.is_valid_for(inv.graph())}
    })
}

fn oracle_mis(inv: &Invariants) -> Result<Outcome> {
    inv.oracle_guard("independent set scan")?;
    let g = inv.graph();
    let mut brute = oracle::maximum_independent_sets(g);
    brute.sort();
    if inv.maximum_independent_sets()? != brute.as_slice() || inv.alpha()? != oracle::alpha(g) {
        return Outcome::fails(witness! {
            "alpha" => inv.alpha()?, "alpha_oracle" => oracle::alpha(g),
            "count" => inv.maximum_independent_sets()?.len(), "count_oracle" => brute.len(),
        });
    }
    let (core, corona) = core_corona_by_deletion(g, inv.limits().alpha)?;
    Outcome::check(&core == inv.core()? && &corona == inv.corona()?, || {
        witness! {"core" => inv.core().unwrap(), "core_by_deletion" => core, "corona" => inv.corona().unwrap(), "corona_by_deletion" => corona}
    })
}

fn oracle_ore_rules(inv: &Invariants) -> Result<Outcome> {
    inv.oracle_guard("side subset scan")?;
    let g = inv.graph();
    for parts in labelings(inv) {
        for side in [Side::A, Side::B] {
            let s = parts.side(side);
            let sets = oracle::side_critical_sets(g, s);
            let got = (delta0(g, &parts, side)?, side_kernel(g, &parts, side)?, side_diadem(g, &parts, side)?);
            let want = (oracle::delta0(g, s), oracle::intersection(&sets), oracle::union(&sets));
            if got != want {
                return Outcome::fails(witness! {
                    "side" => s, "delta0" => got.0, "delta0_oracle" => want.0,
                    "kernel" => got.1, "kernel_oracle" => want.1,
                    "diadem" => got.2, "diadem_oracle" => want.2,
                });
            }
        }
    }
    Outcome::holds()
}
