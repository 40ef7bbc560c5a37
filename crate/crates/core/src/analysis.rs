//! The full invariant bundle of one graph, with sets rendered as labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::checks::{Check, Limits, Value};
use crate::critical::{critical_difference, critical_independent_witness, diadem, ker};
use crate::error::Result;
use crate::graph::Graph;
use crate::ke::ke_identity_checks;
use crate::matching::maximum_matching_general;
use crate::mis::{alpha, core_and_corona, core_corona_by_deletion};
use crate::oracle;
use crate::ore::{ore_profile, ore_report};
use crate::vertex_set::VertexSet;

pub const SCHEMA: u32 = 1;

type Labels = Vec<String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OreSummary {
    pub side_a: Labels,
    pub side_b: Labels,
    pub delta0_a: i64,
    pub delta0_b: i64,
    pub ker_a: Labels,
    pub ker_b: Labels,
    pub diadem_a: Labels,
    pub diadem_b: Labels,
}

/// Agreement of the polynomial answers with subset enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleAgreement {
    pub d: bool,
    pub ker: bool,
    pub diadem: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub n: usize,
    pub m: usize,
    pub bipartite: bool,
    /// `None` when `α` was out of reach.
    pub ke: Option<bool>,
    pub d: i64,
    pub alpha: Option<usize>,
    pub mu: usize,
    pub deficiency: usize,
    pub ker: Labels,
    pub diadem: Labels,
    pub witness: Labels,
    pub core: Option<Labels>,
    pub corona: Option<Labels>,
    /// Number of maximum independent sets, when they were enumerated.
    pub maximum_independent_sets: Option<u64>,
    pub ore: Option<OreSummary>,
    /// KE identities, evaluated on every graph; they are only claimed when
    /// `ke` is true.
    pub ke_identities: Vec<Check>,
    /// Bipartite identities on the computed bipartition.
    pub ore_identities: Vec<Check>,
    pub oracle: Option<OracleAgreement>,
    pub methods: BTreeMap<String, String>,
    pub limits: Limits,
    pub limits_hit: Vec<String>,
}

/// `Ok(None)` for limit errors, recorded in `hit`.
fn within<T>(hit: &mut Vec<String>, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e) if e.is_limit() => {
            hit.push(e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn relabel(g: &Graph, checks: Vec<Check>) -> Vec<Check> {
    let conv = |v: Option<Value>| match v {
        Some(Value::Set(s)) => Some(Value::Labels(g.labels_of(&s))),
        other => other,
    };
    checks
        .into_iter()
        .map(|c| Check {
            lhs: conv(c.lhs),
            rhs: conv(c.rhs),
            ..c
        })
        .collect()
}

pub fn analyze(g: &Graph, limits: &Limits) -> Result<AnalysisReport> {
    let mut hit = Vec::new();
    let mut methods = BTreeMap::new();
    let labels = |s: &VertexSet| g.labels_of(s);
    let parts = g.bipartition();
    let mu = maximum_matching_general(g).len();
    let d = critical_difference(g);
    let k = ker(g);
    let dm = diadem(g);
    methods.insert("d".into(), "double-cover matching".into());
    methods.insert("ker".into(), "deletion rule".into());
    methods.insert("diadem".into(), "forcing rule".into());

    let alpha_value = match &parts {
        // König
        Some(_) => {
            methods.insert("alpha".into(), "n - mu".into());
            Some(g.n() - mu)
        }
        None => {
            methods.insert("alpha".into(), "branch and bound".into());
            within(&mut hit, alpha(g, limits.alpha))?
        }
    };
    let ke = alpha_value.map(|a| a + mu == g.n());

    let mut count = None;
    let core_corona = match within(&mut hit, core_and_corona(g, limits.enumeration))? {
        Some(p) => {
            methods.insert("core".into(), "enumeration".into());
            count = Some(p.count);
            Some((p.core, p.corona))
        }
        None => {
            let r = within(&mut hit, core_corona_by_deletion(g, limits.alpha))?;
            if r.is_some() {
                methods.insert("core".into(), "deletion".into());
            }
            r
        }
    };

    let ke_identities = match within(&mut hit, ke_identity_checks(g, limits))? {
        Some(c) => relabel(g, c),
        None => Vec::new(),
    };

    let (ore, ore_identities) = match &parts {
        Some(p) => {
            let prof = ore_profile(g, p)?;
            let summary = OreSummary {
                side_a: labels(&prof.side_a),
                side_b: labels(&prof.side_b),
                delta0_a: prof.delta0_a,
                delta0_b: prof.delta0_b,
                ker_a: labels(&prof.ker_a),
                ker_b: labels(&prof.ker_b),
                diadem_a: labels(&prof.diadem_a),
                diadem_b: labels(&prof.diadem_b),
            };
            (Some(summary), relabel(g, ore_report(g, p, limits)?.checks))
        }
        None => (None, Vec::new()),
    };

    let oracle_check = limits
        .oracle_for(g.n(), "subset scan")
        .map(|l| l.min(oracle::MAX_N))
        .and_then(|limit| {
            if g.n() > limit {
                Err(crate::Error::LimitExceeded { what: "subset scan", n: g.n(), limit })
            } else {
                Ok(())
            }
        });
    let oracle = within(&mut hit, oracle_check)?.map(|()| {
        let sets = oracle::critical_independent_sets(g);
        OracleAgreement {
            d: oracle::critical_difference(g) == d,
            ker: oracle::intersection(&sets) == k,
            diadem: oracle::union(&sets) == dm,
        }
    });
    if oracle.is_some() {
        for key in ["d", "ker", "diadem"] {
            methods.entry(key.into()).and_modify(|m: &mut String| m.push_str(" + oracle"));
        }
    }

    Ok(AnalysisReport {
        schema: SCHEMA,
        n: g.n(),
        m: g.m(),
        bipartite: parts.is_some(),
        ke,
        d,
        alpha: alpha_value,
        mu,
        deficiency: g.n() - 2 * mu,
        ker: labels(&k),
        diadem: labels(&dm),
        witness: labels(&critical_independent_witness(g)),
        core: core_corona.as_ref().map(|(c, _)| labels(c)),
        corona: core_corona.as_ref().map(|(_, c)| labels(c)),
        maximum_independent_sets: count,
        ore,
        ke_identities,
        ore_identities,
        oracle,
        methods,
        limits: *limits,
        limits_hit: hit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::generate::{generate, Family};

    fn strs(v: &[&str]) -> Labels {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fig511_bundle() {
        let g = fixture("fig511").unwrap().graph;
        let r = analyze(&g, &Limits::default()).unwrap();
        assert_eq!(r.d, 1);
        assert_eq!(r.core, Some(strs(&["v1", "v2", "v6", "v10"])));
        assert_eq!(r.ke, Some(true));
        assert!(r.ke_identities.iter().all(Check::holds));
        assert_eq!(r.oracle, Some(OracleAgreement { d: true, ker: true, diadem: true }));
        assert!(r.limits_hit.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let g = fixture("fig233").unwrap().graph;
        let r = analyze(&g, &Limits::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn limits_are_recorded() {
        let g = generate(&Family::Cycle { n: 25 }).unwrap();
        let limits = Limits { use_oracle: false, enumeration: 10, ..Limits::default() };
        let r = analyze(&g, &limits).unwrap();
        assert!(r.oracle.is_none());
        assert_eq!(r.methods["core"], "deletion");
        assert!(!r.limits_hit.is_empty());
        assert_eq!(r.methods["d"], "double-cover matching");
    }
}
