//! Maximum matchings: Hopcroft-Karp for bipartite graphs, Edmonds' blossom
//! algorithm in general, König covers and Hall violators.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartitePartition, Graph};
use crate::vertex_set::VertexSet;

const NIL: usize = usize::MAX;
const INF: u32 = u32::MAX;

/// A matching as a partner map; `mate[v] == Some(u)` iff `mate[u] == Some(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { mate: vec![None; n] }
    }

    /// Builds a matching from explicit pairs; fails if two pairs share a vertex.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matching::empty(n);
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v || m.mate[u].is_some() || m.mate[v].is_some() {
                return Err(Error::InvalidFamily(format!("pair {u}-{v} is not disjoint")));
            }
            m.mate[u] = Some(v);
            m.mate[v] = Some(u);
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate.get(v).copied().flatten()
    }

    pub fn is_saturated(&self, v: usize) -> bool {
        self.mate(v).is_some()
    }

    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    /// `M(A)`: the partners of the saturated members of `a`.
    pub fn image(&self, a: &VertexSet) -> VertexSet {
        a.iter().filter_map(|v| self.mate(v)).collect()
    }

    pub fn saturates(&self, a: &VertexSet) -> bool {
        a.iter().all(|v| self.is_saturated(v))
    }

    /// Every pair is an edge of `g` and the partner map is an involution.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.mate.len() == g.n()
            && self.mate.iter().enumerate().all(|(u, m)| match *m {
                None => true,
                Some(v) => g.has_edge(u, v) && self.mate[v] == Some(u),
            })
    }
}

/// Result of a bipartite matching between left slots and right vertices.
#[derive(Clone, Debug)]
pub(crate) struct SlotMatching {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub size: usize,
}

/// Hopcroft-Karp on `adj[slot] = sorted right neighbors`.
pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> SlotMatching {
    let nl = adj.len();
    let mut m = SlotMatching {
        left: vec![NIL; nl],
        right: vec![NIL; n_right],
        size: 0,
    };
    let mut dist = vec![INF; nl];
    let mut queue = VecDeque::new();
    loop {
        queue.clear();
        for u in 0..nl {
            if m.left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match m.right[v] {
                    NIL => found = true,
                    w if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return m;
        }
        let mut next = vec![0usize; nl];
        for u in 0..nl {
            if m.left[u] == NIL && augment(u, adj, &mut m, &mut dist, &mut next) {
                m.size += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    m: &mut SlotMatching,
    dist: &mut [u32],
    next: &mut [usize],
) -> bool {
    while next[u] < adj[u].len() {
        let v = adj[u][next[u]];
        next[u] += 1;
        let w = m.right[v];
        if w == NIL || (dist[w] == dist[u] + 1 && augment(w, adj, m, dist, next)) {
            m.left[u] = v;
            m.right[v] = u;
            return true;
        }
    }
    dist[u] = INF;
    false
}

/// Slots and right vertices reachable from `starts` by alternating paths
/// (non-matching edges left to right, matching edges back).
pub(crate) fn alternating_reach(
    adj: &[Vec<usize>],
    m: &SlotMatching,
    starts: impl IntoIterator<Item = usize>,
) -> (Vec<bool>, Vec<bool>) {
    let mut left = vec![false; adj.len()];
    let mut right = vec![false; m.right.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in starts {
        if !left[s] {
            left[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if right[v] || m.left[u] == v {
                continue;
            }
            right[v] = true;
            let w = m.right[v];
            if w != NIL && !left[w] {
                left[w] = true;
                queue.push_back(w);
            }
        }
    }
    (left, right)
}

/// Either a matching saturating every slot, or the slots alternating-reachable
/// from the first unsaturated slot, which violate Hall's condition.
pub(crate) fn hall(adj: &[Vec<usize>], n_right: usize) -> std::result::Result<SlotMatching, Vec<usize>> {
    let m = hopcroft_karp(adj, n_right);
    match m.left.iter().position(|&v| v == NIL) {
        None => Ok(m),
        Some(free) => {
            let (reached, _) = alternating_reach(adj, &m, [free]);
            Err((0..adj.len()).filter(|&s| reached[s]).collect())
        }
    }
}

fn side_adjacency(g: &Graph, parts: &BipartitePartition) -> (Vec<usize>, Vec<Vec<usize>>) {
    let left: Vec<usize> = parts.side_a.to_vec();
    let adj = left.iter().map(|&u| g.neighbors(u).to_vec()).collect();
    (left, adj)
}

pub fn maximum_matching_bipartite(g: &Graph, parts: &BipartitePartition) -> Result<Matching> {
    parts.validate(g)?;
    let (left, adj) = side_adjacency(g, parts);
    let sm = hopcroft_karp(&adj, g.n());
    let mut m = Matching::empty(g.n());
    for (i, &u) in left.iter().enumerate() {
        if sm.left[i] != NIL {
            m.mate[u] = Some(sm.left[i]);
            m.mate[sm.left[i]] = Some(u);
        }
    }
    Ok(m)
}

/// A maximum independent set of a bipartite graph: the complement of the
/// König cover built from a maximum matching.
pub fn bipartite_max_independent_set(g: &Graph, parts: &BipartitePartition) -> Result<VertexSet> {
    parts.validate(g)?;
    let (left, adj) = side_adjacency(g, parts);
    let sm = hopcroft_karp(&adj, g.n());
    let free = (0..left.len()).filter(|&i| sm.left[i] == NIL);
    let (reach_l, reach_r) = alternating_reach(&adj, &sm, free);
    let mut out: VertexSet = (0..left.len()).filter(|&i| reach_l[i]).map(|i| left[i]).collect();
    out.extend(parts.side_b.iter().filter(|&v| !reach_r[v]));
    Ok(out)
}

/// Maximum matching of an arbitrary graph by Edmonds' blossom contraction.
pub fn maximum_matching_general(g: &Graph) -> Matching {
    let n = g.n();
    let mut mate = vec![NIL; n];
    for v in 0..n {
        if mate[v] == NIL {
            if let Some(&u) = g.neighbors(v).iter().find(|&&u| mate[u] == NIL) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    let mut b = Blossom::new(n);
    for root in 0..n {
        if mate[root] == NIL {
            if let Some(mut v) = b.find_path(g, &mate, root) {
                while v != NIL {
                    let pv = b.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    Matching {
        mate: mate.into_iter().map(|u| (u != NIL).then_some(u)).collect(),
    }
}

struct Blossom {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Blossom {
            parent: vec![NIL; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NIL {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Endpoint of an augmenting path from `root`, with `parent` links set.
    fn find_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = mate.len();
        self.used.fill(false);
        self.parent.fill(NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NIL && self.parent[mate[to]] != NIL) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if mate[to] == NIL {
                        return Some(to);
                    }
                    self.used[mate[to]] = true;
                    self.queue.push_back(mate[to]);
                }
            }
        }
        None
    }
}

/// `|V| - 2 mu`.
pub fn deficiency(g: &Graph) -> usize {
    g.n() - 2 * maximum_matching_general(g).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Saturation {
    Matched(Matching),
    /// `B ⊆ from` with `|N(B) ∩ into| < |B|`.
    Violator(VertexSet),
}

impl Saturation {
    pub fn exists(&self) -> bool {
        matches!(self, Saturation::Matched(_))
    }
}

/// A matching saturating `from` that uses only edges into `into`, or a Hall
/// violator inside `from`.
pub fn saturating_matching(g: &Graph, from: &VertexSet, into: &VertexSet) -> Result<Saturation> {
    g.check_subset(from)?;
    g.check_subset(into)?;
    if !from.is_disjoint(into) {
        return Err(Error::NotDisjoint);
    }
    Ok(saturate(g, from, into))
}

pub(crate) fn saturate(g: &Graph, from: &VertexSet, into: &VertexSet) -> Saturation {
    let slots = from.to_vec();
    let adj: Vec<Vec<usize>> = slots
        .iter()
        .map(|&u| g.neighbors(u).iter().copied().filter(|&v| into.contains(v)).collect())
        .collect();
    match hall(&adj, g.n()) {
        Ok(sm) => {
            let mut m = Matching::empty(g.n());
            for (i, &u) in slots.iter().enumerate() {
                m.mate[u] = Some(sm.left[i]);
                m.mate[sm.left[i]] = Some(u);
            }
            Saturation::Matched(m)
        }
        Err(bad) => Saturation::Violator(bad.into_iter().map(|i| slots[i]).collect()),
    }
}
