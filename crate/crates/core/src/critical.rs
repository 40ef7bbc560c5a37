//! Critical difference, critical independent sets, ker and diadem.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartitePartition, Graph};
use crate::matching::{alternating_reach, hall, hopcroft_karp, saturate, Saturation};
use crate::vertex_set::VertexSet;

/// Default vertex limit for the enumeration routines.
pub const DEFAULT_ORACLE_LIMIT: usize = 20;
/// Enumeration works on machine words, so no configured limit may exceed this.
pub const HARD_LIMIT: usize = 64;

/// The bipartite double cover: `v⁺ = v`, `v⁻ = n + v`, and `v⁺w⁻` is an edge
/// iff `vw` is an edge of the base graph.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub h: Graph,
    pub n: usize,
}

impl DoubleCover {
    pub fn up(&self, v: usize) -> usize {
        v
    }

    pub fn down(&self, v: usize) -> usize {
        self.n + v
    }

    /// Base vertex of a cover vertex.
    pub fn base(&self, x: usize) -> usize {
        x % self.n
    }

    pub fn parts(&self) -> BipartitePartition {
        let up = (0..self.n).collect();
        let down = (self.n..2 * self.n).collect();
        BipartitePartition::new(up, down)
    }
}

pub fn double_cover(g: &Graph) -> DoubleCover {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .flat_map(|(u, v)| [(u, n + v), (v, n + u)])
        .collect();
    DoubleCover {
        h: Graph::from_edges(2 * n, &edges).expect("double cover is simple"),
        n,
    }
}

/// Adjacency of the `+` side of the double cover, read straight off `g`.
fn cover_adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
}

/// `d(G) = α(H) - n = n - μ(H)` for the double cover `H`.
pub fn critical_difference(g: &Graph) -> i64 {
    let m = hopcroft_karp(&cover_adjacency(g), g.n());
    g.n() as i64 - m.size as i64
}

/// An independent set attaining `d(G)`.
///
/// The `+` half `P` of a König maximum independent set of the double cover is
/// a critical set, and `P - N(P)` is returned.
pub fn critical_independent_witness(g: &Graph) -> VertexSet {
    let adj = cover_adjacency(g);
    let m = hopcroft_karp(&adj, g.n());
    let free = (0..g.n()).filter(|&v| m.left[v] == usize::MAX);
    let (reach, _) = alternating_reach(&adj, &m, free);
    let p: VertexSet = (0..g.n()).filter(|&v| reach[v]).collect();
    p.difference(&g.open_nbhd(&p))
}

pub fn is_critical_set(g: &Graph, x: &VertexSet) -> Result<bool> {
    Ok(g.difference(x)? == critical_difference(g))
}

pub fn is_critical_independent(g: &Graph, x: &VertexSet) -> Result<bool> {
    Ok(g.is_independent(x)? && is_critical_set(g, x)?)
}

/// Vertices whose deletion lowers `d` by exactly one.
pub fn ker(g: &Graph) -> VertexSet {
    let d = critical_difference(g);
    (0..g.n())
        .filter(|&v| critical_difference(&g.without(&VertexSet::singleton(v)).0) == d - 1)
        .collect()
}

/// Vertices `v` with `1 - |N(v)| + d(G - N[v]) = d(G)`.
pub fn diadem(g: &Graph) -> VertexSet {
    let d = critical_difference(g);
    (0..g.n())
        .filter(|&v| {
            let mut closed = g.adjacency(v).clone();
            closed.insert(v);
            1 - g.degree(v) as i64 + critical_difference(&g.without(&closed).0) == d
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Polynomial,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalProfile {
    pub d: i64,
    pub witness: VertexSet,
    pub ker: VertexSet,
    pub diadem: VertexSet,
    pub method: Method,
}

pub fn critical_profile(g: &Graph) -> CriticalProfile {
    CriticalProfile {
        d: critical_difference(g),
        witness: critical_independent_witness(g),
        ker: ker(g),
        diadem: diadem(g),
        method: Method::Polynomial,
    }
}

/// The same profile assembled from the enumerated critical independent sets;
/// the witness is the largest one (first in enumeration order among ties).
pub fn critical_profile_oracle(g: &Graph, limit: usize) -> Result<CriticalProfile> {
    let sets = enumerate_critical_independent_sets(g, limit)?;
    let mut ker = sets[0].clone();
    let mut diadem = VertexSet::new();
    let mut witness = &sets[0];
    for s in &sets {
        ker.intersect_with(s);
        diadem.union_with(s);
        if s.len() > witness.len() {
            witness = s;
        }
    }
    Ok(CriticalProfile {
        d: g.diff(witness),
        witness: witness.clone(),
        ker,
        diadem,
        method: Method::Oracle,
    })
}

pub(crate) fn check_limit(g: &Graph, what: &'static str, limit: usize) -> Result<()> {
    let limit = limit.min(HARD_LIMIT);
    if g.n() > limit {
        return Err(Error::LimitExceeded { what, n: g.n(), limit });
    }
    Ok(())
}

/// Depth-first walk over independent sets in increasing-id order, pruned by
/// `|I| + |candidates| - |N(I)|`, the best difference any extension can reach.
struct IndependentWalk<'a> {
    adj: &'a [u64],
    n: usize,
}

impl IndependentWalk<'_> {
    /// Calls `visit(I, N(I))` on every independent set whose subtree may reach
    /// `floor`; `visit` returns whether to descend further.
    fn run(&self, floor: i64, visit: &mut dyn FnMut(u64, u64) -> bool) {
        self.go(0, 0, 0, floor, visit);
    }

    fn go(&self, set: u64, nbhd: u64, start: usize, floor: i64, visit: &mut dyn FnMut(u64, u64) -> bool) {
        let above = if start >= 64 { 0 } else { !0u64 << start };
        let all = if self.n == 64 { !0 } else { (1u64 << self.n) - 1 };
        let cand = all & above & !(set | nbhd);
        let bound = set.count_ones() as i64 + cand.count_ones() as i64 - nbhd.count_ones() as i64;
        if bound < floor {
            return;
        }
        if !visit(set, nbhd) {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.go(set | 1 << v, nbhd | self.adj[v], v + 1, floor, visit);
        }
    }
}

fn diff_of(set: u64, nbhd: u64) -> i64 {
    set.count_ones() as i64 - nbhd.count_ones() as i64
}

/// Calls `f` on every critical independent set, in depth-first order.
pub fn for_each_critical_independent_set(
    g: &Graph,
    limit: usize,
    mut f: impl FnMut(VertexSet),
) -> Result<()> {
    check_limit(g, "critical independent set enumeration", limit)?;
    let adj = g.adjacency_bits().expect("checked against the hard limit");
    let d = critical_difference(g);
    let walk = IndependentWalk { adj: &adj, n: g.n() };
    walk.run(d, &mut |set, nbhd| {
        if diff_of(set, nbhd) == d {
            f(VertexSet::from_bits(set));
        }
        true
    });
    Ok(())
}

/// All critical independent sets, sorted.
pub fn enumerate_critical_independent_sets(g: &Graph, limit: usize) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for_each_critical_independent_set(g, limit, |s| out.push(s))?;
    out.sort();
    Ok(out)
}

/// Inclusion-minimal independent sets with positive difference, sorted.
pub fn minimal_positive_independent_sets(g: &Graph, limit: usize) -> Result<Vec<VertexSet>> {
    check_limit(g, "minimal positive set enumeration", limit)?;
    let adj = g.adjacency_bits().expect("checked against the hard limit");
    let walk = IndependentWalk { adj: &adj, n: g.n() };
    let mut found: Vec<u64> = Vec::new();
    // A positive set is recorded and not extended; every minimal one is
    // reached because all its prefixes are non-positive.
    walk.run(1, &mut |set, nbhd| {
        if diff_of(set, nbhd) > 0 {
            found.push(set);
            false
        } else {
            true
        }
    });
    found.sort_by_key(|s| (s.count_ones(), *s));
    let mut minimal: Vec<u64> = Vec::new();
    for s in found {
        if !minimal.iter().any(|&m| m & s == m) {
            minimal.push(s);
        }
    }
    let mut out: Vec<VertexSet> = minimal.into_iter().map(VertexSet::from_bits).collect();
    out.sort();
    Ok(out)
}

/// Both ker tests for a critical independent set `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KerCharacterization {
    /// No nonempty `B ⊆ N(A)` has `|N(B) ∩ A| = |B|`.
    pub no_tight_set: bool,
    /// For every `v ∈ A` there is a matching from `N(A)` into `A - v`.
    pub matchings_avoid_each_vertex: bool,
    pub tight_set: Option<VertexSet>,
    pub blocking_vertex: Option<usize>,
}

impl KerCharacterization {
    pub fn is_ker(&self) -> bool {
        self.no_tight_set && self.matchings_avoid_each_vertex
    }

    pub fn conditions_agree(&self) -> bool {
        self.no_tight_set == self.matchings_avoid_each_vertex
    }
}

pub fn verify_ker_characterization(g: &Graph, a: &VertexSet) -> Result<KerCharacterization> {
    if !is_critical_independent(g, a)? {
        return Err(Error::NotCriticalIndependent);
    }
    let na = g.open_nbhd(a);
    let tight_set = find_tight_set(g, a, &na);
    let blocking_vertex = a.iter().find(|&v| {
        let mut rest = a.clone();
        rest.remove(v);
        !saturate(g, &na, &rest).exists()
    });
    Ok(KerCharacterization {
        no_tight_set: tight_set.is_none(),
        matchings_avoid_each_vertex: blocking_vertex.is_none(),
        tight_set,
        blocking_vertex,
    })
}

/// A nonempty `B ⊆ N(A)` with `|N(B) ∩ A| = |B|`.
///
/// Doubling one `u ∈ N(A)` turns every tight set through `u` into a Hall
/// violator; since `A` is critical, `N(A)` itself has no violator.
fn find_tight_set(g: &Graph, a: &VertexSet, na: &VertexSet) -> Option<VertexSet> {
    let from = na.to_vec();
    let row = |x: usize| -> Vec<usize> {
        g.neighbors(x).iter().copied().filter(|&y| a.contains(y)).collect()
    };
    let base: Vec<Vec<usize>> = from.iter().map(|&x| row(x)).collect();
    for (i, &u) in from.iter().enumerate() {
        let mut adj = base.clone();
        adj.push(base[i].clone());
        let owner = |slot: usize| if slot == from.len() { u } else { from[slot] };
        if let Err(bad) = hall(&adj, g.n()) {
            let b: VertexSet = bad.into_iter().map(owner).collect();
            if !b.is_empty() && g.open_nbhd(&b).intersection_len(a) == b.len() {
                return Some(b);
            }
        }
    }
    None
}

/// Result of asking for a matching from `N(S)` into `S`.
pub fn matching_into(g: &Graph, s: &VertexSet) -> Saturation {
    saturate(g, &g.open_nbhd(s).difference(s), s)
}
