//! König-Egerváry recognition and the identities that hold on KE graphs.

use serde::Serialize;

use crate::checks::{Check, Limits};
use crate::critical::{critical_difference, diadem, is_critical_set, ker};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::maximum_matching_general;
use crate::mis::{alpha, core_and_corona, maximum_critical_independent_set};

/// `α + μ = n`. Bipartite graphs are accepted without computing `α`.
pub fn is_koenig_egervary(g: &Graph, alpha_limit: usize) -> Result<bool> {
    if g.is_bipartite() {
        return Ok(true);
    }
    Ok(alpha(g, alpha_limit)? + maximum_matching_general(g).len() == g.n())
}

/// Some maximum independent set is critical, i.e. a largest critical
/// independent set has size `α`.
pub fn is_ke_via_critical(g: &Graph, limits: &Limits) -> Result<bool> {
    let limit = limits.oracle_for(g.n(), "critical independent set enumeration")?;
    Ok(maximum_critical_independent_set(g, limit)?.len() == alpha(g, limits.alpha)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeReport {
    pub is_ke: bool,
    pub alpha: usize,
    pub mu: usize,
    pub d: i64,
    pub deficiency: usize,
    pub identity_checks: Vec<Check>,
}

/// Evaluates every KE identity; refuses graphs that are not KE.
pub fn ke_identities(g: &Graph, limits: &Limits) -> Result<KeReport> {
    let a = alpha(g, limits.alpha)?;
    let mu = maximum_matching_general(g).len();
    if a + mu != g.n() {
        return Err(Error::NotKoenigEgervary);
    }
    Ok(KeReport {
        is_ke: true,
        alpha: a,
        mu,
        d: critical_difference(g),
        deficiency: g.n() - 2 * mu,
        identity_checks: ke_identity_checks(g, limits)?,
    })
}

/// The KE identities evaluated on any graph. Off the KE class some of them
/// fail, which is how non-KE examples are told apart.
pub fn ke_identity_checks(g: &Graph, limits: &Limits) -> Result<Vec<Check>> {
    let a = alpha(g, limits.alpha)?;
    let mu = maximum_matching_general(g).len();
    let mis = core_and_corona(g, limits.enumeration)?;
    let d = critical_difference(g);
    let def = g.n() - 2 * mu;
    let ker = ker(g);
    let diadem = diadem(g);
    let n_core = g.open_nbhd(&mis.core);
    let outside = mis.corona.complement(g.n());
    let two_alpha = 2 * a as i64;
    Ok(vec![
        Check::equal("d = |core| - |N(core)|", d, mis.core.len() as i64 - n_core.len() as i64),
        Check::equal("d = alpha - mu", d, a as i64 - mu as i64),
        Check::equal("d = def", d, def as i64),
        Check::equal("|corona| + |core| = 2 alpha", mis.corona.len() + mis.core.len(), 2 * a),
        Check::equal("diadem = corona", &diadem, &mis.corona),
        Check::equal("N(core) = V - corona", &n_core, &outside),
        Check::truth("core is critical", is_critical_set(g, &mis.core)?),
        Check::truth("corona is critical", is_critical_set(g, &mis.corona)?),
        Check::compare(
            "|ker| + |diadem| <= 2 alpha",
            (ker.len() + diadem.len()) as i64 <= two_alpha,
            (ker.len() + diadem.len()) as i64,
            two_alpha,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::generate::{exhaustive, generate, Family};
    use crate::vertex_set::VertexSet;

    #[test]
    fn recognition_on_fixtures() {
        let lim = Limits::default();
        for (name, want) in [
            ("fig222.G1", true),
            ("fig22.G1", false),
            ("fig233", true),
            ("fig1777", false),
            ("fig511", true),
        ] {
            let g = fixture(name).unwrap().graph;
            assert_eq!(is_koenig_egervary(&g, 40).unwrap(), want, "{name}");
            assert_eq!(is_ke_via_critical(&g, &lim).unwrap(), want, "{name}");
        }
        let c4 = generate(&Family::Cycle { n: 4 }).unwrap();
        assert!(is_ke_via_critical(&c4, &lim).unwrap());
    }

    #[test]
    fn identities_on_fig222() {
        let lim = Limits::default();
        let g1 = fixture("fig222.G1").unwrap().graph;
        let r = ke_identities(&g1, &lim).unwrap();
        assert!(r.identity_checks.iter().all(Check::holds), "{:?}", r.identity_checks);
        let k = ker(&g1);
        assert_eq!(k, g1.set_from_labels(&["x", "y"]).unwrap());

        let g2 = fixture("fig222.G2").unwrap().graph;
        let r = ke_identities(&g2, &lim).unwrap();
        assert_eq!(r.deficiency, 0);
        assert_eq!(ker(&g2), VertexSet::new());
        assert!(r.identity_checks.iter().all(Check::holds));

        let g = fixture("fig17888.G1").unwrap().graph;
        assert!(ke_identities(&g, &lim).unwrap().identity_checks.iter().all(Check::holds));
    }

    #[test]
    fn non_ke_is_an_error() {
        let g = fixture("fig22.G1").unwrap().graph;
        assert_eq!(ke_identities(&g, &Limits::default()), Err(Error::NotKoenigEgervary));
    }

    #[test]
    fn fig1777_breaks_the_sandwich_equality() {
        let g = fixture("fig1777").unwrap().graph;
        let checks = ke_identity_checks(&g, &Limits::default()).unwrap();
        let c = checks.iter().find(|c| c.name == "|corona| + |core| = 2 alpha").unwrap();
        assert!(c.fails());
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (Some(13usize.into()), Some(12usize.into())));
    }

    #[test]
    fn exhaustive_characterizations_agree() {
        let lim = Limits::default();
        for n in 0..=6 {
            for g in exhaustive(n).unwrap() {
                let ke = is_koenig_egervary(&g, 40).unwrap();
                assert_eq!(ke, is_ke_via_critical(&g, &lim).unwrap());
                assert_eq!(ke, crate::oracle::alpha(&g) + crate::oracle::mu(&g) == n);
                if ke {
                    let r = ke_identities(&g, &lim).unwrap();
                    assert!(r.identity_checks.iter().all(Check::holds));
                }
            }
        }
    }
}
