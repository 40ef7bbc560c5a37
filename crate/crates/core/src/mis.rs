//! Exact maximum independent sets by branch and bound.

use serde::Serialize;

use crate::critical::{check_limit, for_each_critical_independent_set};
use crate::error::Result;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Default vertex limit for [`alpha`].
pub const DEFAULT_ALPHA_LIMIT: usize = 40;
/// Default vertex limit for enumerating all maximum independent sets.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

struct Solver {
    adj: Vec<u64>,
}

impl Solver {
    fn new(g: &Graph) -> Self {
        Solver {
            adj: g.adjacency_bits().expect("limit checked by caller"),
        }
    }

    /// Number of cliques in a greedy clique cover of `cand`; bounds α(G[cand]).
    fn clique_cover(&self, cand: u64) -> u32 {
        let mut rest = cand;
        let mut cliques = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let mut pool = rest & self.adj[v];
            rest &= !(1 << v);
            while pool != 0 {
                let u = pool.trailing_zeros() as usize;
                rest &= !(1 << u);
                pool &= self.adj[u] & !(1 << u);
            }
            cliques += 1;
        }
        cliques
    }

    /// Vertex of largest degree inside `cand` (smallest id on ties), with
    /// that degree.
    fn pivot(&self, cand: u64) -> (usize, u32) {
        let mut best = (usize::MAX, 0);
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let deg = (self.adj[v] & cand).count_ones();
            if best.0 == usize::MAX || deg > best.1 {
                best = (v, deg);
            }
        }
        best
    }

    /// Vertices of `cand` with no neighbor in `cand`.
    fn isolated(&self, cand: u64) -> u64 {
        let mut out = 0;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[v] & cand == 0 {
                out |= 1 << v;
            }
        }
        out
    }

    fn alpha(&self, set: u64, cand: u64, best: &mut u32) {
        let forced = self.isolated(cand);
        let set = set | forced;
        let cand = cand & !forced;
        let size = set.count_ones();
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + self.clique_cover(cand) <= *best {
            return;
        }
        let (v, _) = self.pivot(cand);
        self.alpha(set | 1 << v, cand & !self.adj[v] & !(1 << v), best);
        self.alpha(set, cand & !(1 << v), best);
    }

    /// Every independent `S ⊇ set` drawn from `cand` with `|S| = target`.
    fn enumerate(&self, set: u64, cand: u64, target: u32, f: &mut dyn FnMut(u64)) {
        // an isolated candidate can always be added, so every
        // maximum extension contains it
        let forced = self.isolated(cand);
        let set = set | forced;
        let cand = cand & !forced;
        let size = set.count_ones();
        if size > target {
            return;
        }
        if cand == 0 {
            if size == target {
                f(set);
            }
            return;
        }
        if size + self.clique_cover(cand) < target {
            return;
        }
        let (v, _) = self.pivot(cand);
        self.enumerate(set | 1 << v, cand & !self.adj[v] & !(1 << v), target, f);
        self.enumerate(set, cand & !(1 << v), target, f);
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Independence number.
pub fn alpha(g: &Graph, limit: usize) -> Result<usize> {
    check_limit(g, "independence number", limit)?;
    let mut best = 0;
    Solver::new(g).alpha(0, full_mask(g.n()), &mut best);
    Ok(best as usize)
}

/// Calls `f` on every maximum independent set, in branching order.
pub fn for_each_maximum_independent_set(
    g: &Graph,
    limit: usize,
    mut f: impl FnMut(VertexSet),
) -> Result<usize> {
    check_limit(g, "maximum independent set enumeration", limit)?;
    let solver = Solver::new(g);
    let mut best = 0;
    solver.alpha(0, full_mask(g.n()), &mut best);
    solver.enumerate(0, full_mask(g.n()), best, &mut |s| f(VertexSet::from_bits(s)));
    Ok(best as usize)
}

/// All maximum independent sets, sorted.
pub fn enumerate_maximum_independent_sets(g: &Graph, limit: usize) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for_each_maximum_independent_set(g, limit, |s| out.push(s))?;
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MisProfile {
    pub alpha: usize,
    pub count: u64,
    pub core: VertexSet,
    pub corona: VertexSet,
}

/// Core and corona from the full enumeration; `count` is exact.
pub fn core_and_corona(g: &Graph, limit: usize) -> Result<MisProfile> {
    let mut core: Option<VertexSet> = None;
    let mut corona = VertexSet::new();
    let mut count = 0;
    let alpha = for_each_maximum_independent_set(g, limit, |s| {
        count += 1;
        corona.union_with(&s);
        match &mut core {
            Some(c) => c.intersect_with(&s),
            None => core = Some(s),
        }
    })?;
    Ok(MisProfile {
        alpha,
        count,
        core: core.unwrap_or_default(),
        corona,
    })
}

/// Core and corona from `n + 1` independence numbers each: `v` is in the core
/// iff `α(G - v) < α`, and in the corona iff `1 + α(G - N[v]) = α`.
pub fn core_corona_by_deletion(g: &Graph, limit: usize) -> Result<(VertexSet, VertexSet)> {
    let a = alpha(g, limit)?;
    let mut core = VertexSet::new();
    let mut corona = VertexSet::new();
    for v in 0..g.n() {
        if alpha(&g.without(&VertexSet::singleton(v)).0, limit)? < a {
            core.insert(v);
        }
        let mut closed = g.adjacency(v).clone();
        closed.insert(v);
        if 1 + alpha(&g.without(&closed).0, limit)? == a {
            corona.insert(v);
        }
    }
    Ok((core, corona))
}

/// A largest critical independent set (the least in set order among ties).
pub fn maximum_critical_independent_set(g: &Graph, limit: usize) -> Result<VertexSet> {
    let mut best: Option<VertexSet> = None;
    for_each_critical_independent_set(g, limit, |s| {
        let better = match &best {
            None => true,
            Some(b) => s.len() > b.len() || (s.len() == b.len() && s < *b),
        };
        if better {
            best = Some(s);
        }
    })?;
    Ok(best.expect("the empty set or better is always critical"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::generate::{exhaustive, generate, Family};
    use crate::oracle;

    fn fam(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&fam(Family::CompleteBipartite { a: 3, b: 2 }), 40).unwrap(), 3);
        assert_eq!(alpha(&fam(Family::Cycle { n: 4 }), 40).unwrap(), 2);
        assert_eq!(alpha(&fixture("fig1777").unwrap().graph, 40).unwrap(), 6);
        assert_eq!(alpha(&Graph::empty(0), 40).unwrap(), 0);
        assert!(alpha(&Graph::empty(41), 40).unwrap_err().is_limit());
    }

    #[test]
    fn enumeration_examples() {
        let c4 = fam(Family::Cycle { n: 4 });
        let want: Vec<VertexSet> = [0b0101, 0b1010].map(VertexSet::from_bits).to_vec();
        assert_eq!(enumerate_maximum_independent_sets(&c4, 20).unwrap(), want);
        let k3 = fam(Family::Complete { n: 3 });
        assert_eq!(enumerate_maximum_independent_sets(&k3, 20).unwrap().len(), 3);
        let k5 = fam(Family::Complete { n: 5 });
        let p = core_and_corona(&k5, 20).unwrap();
        assert_eq!((p.core, p.corona, p.count), (VertexSet::new(), VertexSet::full(5), 5));
    }

    #[test]
    fn fixture_cores() {
        let f = fixture("fig101").unwrap();
        let p = core_and_corona(&f.graph, 20).unwrap();
        assert_eq!(p.core, f.graph.set_from_labels(&["a", "b"]).unwrap());
        let outside = p.corona.complement(f.graph.n());
        assert_eq!(outside, f.graph.set_from_labels(&["c", "d"]).unwrap());

        let g3 = fixture("fig333.G3").unwrap().graph;
        let want = g3.set_from_labels(&["t", "u", "v", "w"]).unwrap();
        assert_eq!(core_and_corona(&g3, 20).unwrap().core, want);
        let m = maximum_critical_independent_set(&g3, 20).unwrap();
        assert_eq!(m, g3.set_from_labels(&["t", "u", "v"]).unwrap());

        let g1 = fixture("fig222.G1").unwrap().graph;
        let want = g1.set_from_labels(&["x", "y", "u", "v"]).unwrap();
        assert_eq!(core_and_corona(&g1, 20).unwrap().core, want);
    }

    #[test]
    fn maximum_critical_small() {
        let c4 = fam(Family::Cycle { n: 4 });
        assert_eq!(maximum_critical_independent_set(&c4, 20).unwrap().len(), 2);
        assert_eq!(
            maximum_critical_independent_set(&Graph::empty(1), 20).unwrap(),
            VertexSet::singleton(0)
        );
    }

    #[test]
    fn exhaustive_agreement_with_oracle() {
        for n in 0..=6 {
            for g in exhaustive(n).unwrap() {
                let mut want = oracle::maximum_independent_sets(&g);
                want.sort();
                assert_eq!(alpha(&g, 40).unwrap(), oracle::alpha(&g));
                assert_eq!(enumerate_maximum_independent_sets(&g, 20).unwrap(), want);
                let p = core_and_corona(&g, 20).unwrap();
                assert_eq!(p.count as usize, want.len());
                assert_eq!(p.core, oracle::intersection(&want));
                assert_eq!(p.corona, oracle::union(&want));
                assert_eq!(core_corona_by_deletion(&g, 40).unwrap(), (p.core, p.corona));
            }
        }
    }
}
