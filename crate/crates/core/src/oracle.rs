//! Exhaustive reference computations over all vertex subsets.
//!
//! Nothing here shares code with the polynomial routines; each function is a
//! direct scan of the definition. All of them are exponential in `n` and
//! assert `n <= MAX_N`.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const MAX_N: usize = 24;

fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= MAX_N, "oracle called on n = {}", g.n());
    let mut adj = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn nbhd(adj: &[u64], x: u64) -> u64 {
    let mut out = 0;
    let mut rest = x;
    while rest != 0 {
        out |= adj[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    out
}

fn diff(adj: &[u64], x: u64) -> i64 {
    x.count_ones() as i64 - nbhd(adj, x).count_ones() as i64
}

fn independent(adj: &[u64], x: u64) -> bool {
    nbhd(adj, x) & x == 0
}

fn subsets(n: usize) -> std::ops::Range<u64> {
    0..1u64 << n
}

fn to_set(x: u64) -> VertexSet {
    VertexSet::from_bits(x)
}

/// `max d(X)` over all `X ⊆ V`.
pub fn critical_difference(g: &Graph) -> i64 {
    let adj = masks(g);
    subsets(g.n()).map(|x| diff(&adj, x)).max().unwrap_or(0)
}

/// `max d(I)` over independent `I`.
pub fn independent_critical_difference(g: &Graph) -> i64 {
    let adj = masks(g);
    subsets(g.n())
        .filter(|&x| independent(&adj, x))
        .map(|x| diff(&adj, x))
        .max()
        .unwrap_or(0)
}

/// Every `X ⊆ V` with `d(X) = d(G)`, in increasing mask order.
pub fn critical_sets(g: &Graph) -> Vec<VertexSet> {
    let adj = masks(g);
    let d = critical_difference(g);
    subsets(g.n()).filter(|&x| diff(&adj, x) == d).map(to_set).collect()
}

/// Every independent `I` with `d(I) = d(G)`, in increasing mask order.
pub fn critical_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let adj = masks(g);
    let d = independent_critical_difference(g);
    subsets(g.n())
        .filter(|&x| independent(&adj, x) && diff(&adj, x) == d)
        .map(to_set)
        .collect()
}

/// Inclusion-minimal independent sets of positive difference.
pub fn minimal_positive_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let adj = masks(g);
    let positive: Vec<u64> = subsets(g.n())
        .filter(|&x| independent(&adj, x) && diff(&adj, x) > 0)
        .collect();
    positive
        .iter()
        .filter(|&&x| !positive.iter().any(|&y| y != x && y & x == y))
        .map(|&x| to_set(x))
        .collect()
}

pub fn alpha(g: &Graph) -> usize {
    let adj = masks(g);
    subsets(g.n())
        .filter(|&x| independent(&adj, x))
        .map(|x| x.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn maximum_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let adj = masks(g);
    let a = alpha(g) as u32;
    subsets(g.n())
        .filter(|&x| x.count_ones() == a && independent(&adj, x))
        .map(to_set)
        .collect()
}

/// Matching number by dynamic programming over vertex subsets.
pub fn mu(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    let mut best = vec![0u8; 1 << n];
    for mask in 1u64..1 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut b = best[rest as usize];
        let mut cand = adj[v] & rest;
        while cand != 0 {
            let u = cand.trailing_zeros();
            cand &= cand - 1;
            b = b.max(1 + best[(rest & !(1 << u)) as usize]);
        }
        best[mask as usize] = b;
    }
    best[(1usize << n) - 1] as usize
}

/// Subsets of `side` in increasing mask order.
fn side_subsets(side: &VertexSet) -> impl Iterator<Item = u64> {
    let full = side.bits().expect("side within oracle range");
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
        Some(cur)
    })
}

/// `max |X| - |N(X)|` over `X ⊆ side`.
pub fn delta0(g: &Graph, side: &VertexSet) -> i64 {
    let adj = masks(g);
    side_subsets(side).map(|x| diff(&adj, x)).max().unwrap_or(0)
}

/// Subsets of `side` attaining `delta0`.
pub fn side_critical_sets(g: &Graph, side: &VertexSet) -> Vec<VertexSet> {
    let adj = masks(g);
    let d = delta0(g, side);
    side_subsets(side).filter(|&x| diff(&adj, x) == d).map(to_set).collect()
}

pub fn intersection(family: &[VertexSet]) -> VertexSet {
    let mut it = family.iter();
    let Some(first) = it.next() else {
        return VertexSet::new();
    };
    it.fold(first.clone(), |acc, s| acc.intersection(s))
}

pub fn union(family: &[VertexSet]) -> VertexSet {
    family.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
}
