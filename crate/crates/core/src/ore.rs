//! Ore deficiency on a fixed bipartition: `δ₀`, side-critical sets, side
//! kernels and side diadems.
//!
//! `δ₀(A) = |A| - μ` follows from `α = |B| + δ₀(A)` together with König's
//! `α = n - μ`.

use serde::Serialize;

use crate::checks::{Check, Limits};
use crate::critical::{critical_difference, diadem, enumerate_critical_independent_sets, is_critical_set, ker, matching_into};
use crate::error::{Error, Result};
use crate::graph::{BipartitePartition, Graph, Side};
use crate::matching::hopcroft_karp;
use crate::mis::{alpha, core_and_corona};
use crate::oracle;
use crate::vertex_set::VertexSet;

/// How many side-critical sets of each side feed the pairwise union check.
const PAIR_SAMPLE: usize = 32;

fn mu(g: &Graph, parts: &BipartitePartition) -> usize {
    let adj: Vec<Vec<usize>> = parts.side_a.iter().map(|u| g.neighbors(u).to_vec()).collect();
    hopcroft_karp(&adj, g.n()).size
}

fn delta0_unchecked(g: &Graph, parts: &BipartitePartition, side: Side) -> i64 {
    parts.side(side).len() as i64 - mu(g, parts) as i64
}

pub fn delta0(g: &Graph, parts: &BipartitePartition, side: Side) -> Result<i64> {
    parts.validate(g)?;
    Ok(delta0_unchecked(g, parts, side))
}

pub fn is_side_critical(g: &Graph, parts: &BipartitePartition, side: Side, x: &VertexSet) -> Result<bool> {
    parts.validate(g)?;
    if !x.is_subset(parts.side(side)) {
        return Err(Error::NotWithinSide);
    }
    Ok(g.diff(x) == delta0_unchecked(g, parts, side))
}

/// `δ₀` of `side` after deleting `w`.
fn delta0_without(g: &Graph, parts: &BipartitePartition, side: Side, w: &VertexSet) -> i64 {
    let (h, map) = g.without(w);
    delta0_unchecked(&h, &parts.restrict(&map), side)
}

/// Vertices of `side` whose deletion lowers `δ₀(side)` by exactly one.
pub fn side_kernel(g: &Graph, parts: &BipartitePartition, side: Side) -> Result<VertexSet> {
    parts.validate(g)?;
    let d0 = delta0_unchecked(g, parts, side);
    Ok(parts
        .side(side)
        .iter()
        .filter(|&v| delta0_without(g, parts, side, &VertexSet::singleton(v)) == d0 - 1)
        .collect())
}

/// Vertices `v` of `side` with `1 - |N(v)| + δ₀(side - v in G - N[v]) = δ₀(side)`.
pub fn side_diadem(g: &Graph, parts: &BipartitePartition, side: Side) -> Result<VertexSet> {
    parts.validate(g)?;
    let d0 = delta0_unchecked(g, parts, side);
    Ok(parts
        .side(side)
        .iter()
        .filter(|&v| {
            let mut closed = g.adjacency(v).clone();
            closed.insert(v);
            1 - g.degree(v) as i64 + delta0_without(g, parts, side, &closed) == d0
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OreProfile {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    pub delta0_a: i64,
    pub delta0_b: i64,
    pub ker_a: VertexSet,
    pub ker_b: VertexSet,
    pub diadem_a: VertexSet,
    pub diadem_b: VertexSet,
}

pub fn ore_profile(g: &Graph, parts: &BipartitePartition) -> Result<OreProfile> {
    Ok(OreProfile {
        side_a: parts.side_a.clone(),
        side_b: parts.side_b.clone(),
        delta0_a: delta0(g, parts, Side::A)?,
        delta0_b: delta0(g, parts, Side::B)?,
        ker_a: side_kernel(g, parts, Side::A)?,
        ker_b: side_kernel(g, parts, Side::B)?,
        diadem_a: side_diadem(g, parts, Side::A)?,
        diadem_b: side_diadem(g, parts, Side::B)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OreReport {
    pub profile: OreProfile,
    pub checks: Vec<Check>,
}

/// Side-critical sets by subset enumeration.
pub fn side_critical_sets(g: &Graph, parts: &BipartitePartition, side: Side, limits: &Limits) -> Result<Vec<VertexSet>> {
    parts.validate(g)?;
    let what = "side-critical set enumeration";
    let limit = limits.oracle_for(g.n(), what)?.min(oracle::MAX_N);
    if g.n() > limit {
        return Err(Error::LimitExceeded { what, n: g.n(), limit });
    }
    let mut sets = oracle::side_critical_sets(g, parts.side(side));
    sets.sort();
    Ok(sets)
}

/// The profile plus the ten bipartite identities. Enumeration-based checks
/// are skipped when the graph exceeds `limits`.
pub fn ore_report(g: &Graph, parts: &BipartitePartition, limits: &Limits) -> Result<OreReport> {
    let p = ore_profile(g, parts)?;
    let d = critical_difference(g);
    let mu = mu(g, parts);
    let ker_g = ker(g);
    let diadem_g = diadem(g);
    let (na, nb) = (p.side_a.len() as i64, p.side_b.len() as i64);
    let mut checks = vec![Check::equal("d = delta0(A) + delta0(B)", d, p.delta0_a + p.delta0_b)];

    checks.push(Check::guarded("alpha = |A| + delta0(B) = |B| + delta0(A) = mu + d", || {
        let a = alpha(g, limits.alpha)? as i64;
        let rhs = [na + p.delta0_b, nb + p.delta0_a, mu as i64 + d];
        Ok(Check::compare(
            "alpha = |A| + delta0(B) = |B| + delta0(A) = mu + d",
            rhs.iter().all(|&x| x == a),
            a,
            rhs[0],
        ))
    })?);

    let sides = || -> Result<(Vec<VertexSet>, Vec<VertexSet>)> {
        Ok((
            side_critical_sets(g, parts, Side::A, limits)?,
            side_critical_sets(g, parts, Side::B, limits)?,
        ))
    };

    checks.push(Check::guarded("X u Y is critical for side-critical X, Y", || {
        let (xs, ys) = sides()?;
        for x in xs.iter().take(PAIR_SAMPLE) {
            for y in ys.iter().take(PAIR_SAMPLE) {
                let u = x.union(y);
                if !is_critical_set(g, &u)? {
                    return Ok(Check::compare("X u Y is critical for side-critical X, Y", false, g.diff(&u), d));
                }
            }
        }
        Ok(Check::truth("X u Y is critical for side-critical X, Y", true))
    })?);

    checks.push(Check::guarded("Z n A and Z n B are side-critical", || {
        let limit = limits.oracle_for(g.n(), "critical independent set enumeration")?;
        for z in enumerate_critical_independent_sets(g, limit)? {
            let za = z.intersection(&p.side_a);
            let zb = z.intersection(&p.side_b);
            if g.diff(&za) != p.delta0_a || g.diff(&zb) != p.delta0_b {
                return Ok(Check::compare("Z n A and Z n B are side-critical", false, &z, g.diff(&za) + g.diff(&zb)));
            }
        }
        Ok(Check::truth("Z n A and Z n B are side-critical", true))
    })?);

    checks.push(Check::guarded("matching from N(X) into X for side-critical X", || {
        let (xs, ys) = sides()?;
        for x in xs.iter().chain(&ys) {
            if !matching_into(g, x).exists() {
                return Ok(Check::compare("matching from N(X) into X for side-critical X", false, x, g.open_nbhd(x)));
            }
        }
        Ok(Check::truth("matching from N(X) into X for side-critical X", true))
    })?);

    checks.push(Check::equal("ker_A u ker_B = ker", p.ker_a.union(&p.ker_b), &ker_g));
    // König: a bipartite graph has alpha = n - mu
    let two_alpha = 2 * (g.n() - mu) as i64;
    checks.push(Check::equal("|ker| + |diadem| = 2 alpha", ker_g.len() + diadem_g.len(), two_alpha as usize));
    let lhs = p.ker_a.len() + p.diadem_b.len();
    let rhs = p.ker_b.len() + p.diadem_a.len();
    checks.push(Check::compare(
        "|ker_A| + |diadem_B| = |ker_B| + |diadem_A| = alpha",
        lhs == rhs && (lhs as i64) * 2 == two_alpha,
        lhs,
        rhs,
    ));
    checks.push(Check::equal("diadem_A u diadem_B = diadem", p.diadem_a.union(&p.diadem_b), &diadem_g));
    checks.push(Check::guarded("ker = core", || {
        let core = core_and_corona(g, limits.enumeration)?.core;
        Ok(Check::equal("ker = core", &ker_g, &core))
    })?);

    Ok(OreReport { profile: p, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::generate::{exhaustive, generate, Family};

    fn fig233() -> (Graph, BipartitePartition) {
        let g = fixture("fig233").unwrap().graph;
        let side_a = g.set_from_labels(&["a1", "a2", "a3", "a4", "a5", "a6"]).unwrap();
        let parts = BipartitePartition::new(side_a.clone(), side_a.complement(g.n()));
        (g, parts)
    }

    #[test]
    fn fig233_profile() {
        let (g, parts) = fig233();
        assert_eq!(g.bipartition().unwrap(), parts);
        let s = |l: &[&str]| g.set_from_labels(l).unwrap();
        let p = ore_profile(&g, &parts).unwrap();
        assert_eq!((p.delta0_a, p.delta0_b), (1, 2));
        assert_eq!(p.ker_a, s(&["a1", "a2"]));
        assert_eq!(p.diadem_a, s(&["a1", "a2", "a3", "a4", "a5"]));
        assert_eq!(p.diadem_b, s(&["b2", "b3", "b4", "b5", "b6", "b7"]));
        assert_eq!(p.ker_b, s(&["b5", "b6", "b7"]));
        assert!(is_side_critical(&g, &parts, Side::A, &s(&["a1", "a2", "a3", "a4"])).unwrap());
        assert!(is_side_critical(&g, &parts, Side::B, &s(&["b4", "b5", "b6", "b7"])).unwrap());
        assert!(!is_side_critical(&g, &parts, Side::A, &VertexSet::new()).unwrap());
        assert_eq!(
            is_side_critical(&g, &parts, Side::A, &s(&["b1"])),
            Err(Error::NotWithinSide)
        );
        assert_eq!(critical_difference(&g), 3);
        let r = ore_report(&g, &parts, &Limits::default()).unwrap();
        assert!(r.checks.iter().all(Check::holds), "{:#?}", r.checks);
    }

    #[test]
    fn complete_bipartite() {
        let g = generate(&Family::CompleteBipartite { a: 3, b: 2 }).unwrap();
        let parts = g.bipartition().unwrap();
        let p = ore_profile(&g, &parts).unwrap();
        assert_eq!((p.delta0_a, p.delta0_b), (1, 0));
        assert_eq!(p.ker_a, parts.side_a);
        assert_eq!(ker(&g), parts.side_a);
        assert_eq!(core_and_corona(&g, 20).unwrap().core, parts.side_a);

        let c4 = generate(&Family::Cycle { n: 4 }).unwrap();
        let cp = c4.bipartition().unwrap();
        let p = ore_profile(&c4, &cp).unwrap();
        assert!(p.ker_a.is_empty() && p.ker_b.is_empty());
        assert_eq!(critical_difference(&c4), p.delta0_a + p.delta0_b);
    }

    #[test]
    fn exhaustive_rules_match_oracle() {
        let lim = Limits::default();
        for n in 0..=6 {
            for g in exhaustive(n).unwrap() {
                let Some(parts) = g.bipartition() else { continue };
                for ps in [parts.clone(), parts.swapped()] {
                    let r = ore_report(&g, &ps, &lim).unwrap();
                    assert!(r.checks.iter().all(Check::holds), "{:?}", g.edges().collect::<Vec<_>>());
                    for side in [Side::A, Side::B] {
                        let sets = side_critical_sets(&g, &ps, side, &lim).unwrap();
                        let d0 = delta0(&g, &ps, side).unwrap();
                        assert_eq!(d0, oracle::delta0(&g, ps.side(side)));
                        assert_eq!(side_kernel(&g, &ps, side).unwrap(), oracle::intersection(&sets));
                        assert_eq!(side_diadem(&g, &ps, side).unwrap(), oracle::union(&sets));
                    }
                }
            }
        }
    }
}
