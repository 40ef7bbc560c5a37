//! Immutable simple undirected graphs on dense vertex ids.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A finite simple graph on vertices `0..n`.
///
/// Adjacency is stored twice: as sorted neighbor lists for traversal and as
/// bitsets for set arithmetic. Labels are only used for parsing and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<usize>>,
    adjacency: Vec<VertexSet>,
    labels: Option<Vec<String>>,
    edge_count: usize,
}

/// Old-to-new vertex correspondence produced by [`Graph::delete_vertices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).collect(),
        }
    }

    /// Images of the surviving members of `set`.
    pub fn forward(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .filter_map(|v| self.old_to_new.get(v).copied().flatten())
            .collect()
    }

    pub fn backward(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.new_to_old[v]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitePartition {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl BipartitePartition {
    pub fn new(side_a: VertexSet, side_b: VertexSet) -> Self {
        BipartitePartition { side_a, side_b }
    }

    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::A => &self.side_a,
            Side::B => &self.side_b,
        }
    }

    pub fn swapped(&self) -> Self {
        BipartitePartition::new(self.side_b.clone(), self.side_a.clone())
    }

    /// Checks that the sides partition `V(g)` and that every edge crosses.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        if !self.side_a.is_disjoint(&self.side_b) {
            return Err(Error::InvalidPartition("sides overlap".into()));
        }
        if self.side_a.union(&self.side_b) != VertexSet::full(n) {
            return Err(Error::InvalidPartition("sides do not cover V".into()));
        }
        for (u, v) in g.edges() {
            if self.side_a.contains(u) == self.side_a.contains(v) {
                return Err(Error::InvalidPartition(format!(
                    "edge {u}-{v} does not cross the sides"
                )));
            }
        }
        Ok(())
    }

    /// The partition induced on the survivors of a vertex deletion.
    pub fn restrict(&self, map: &IdMap) -> Self {
        BipartitePartition::new(map.forward(&self.side_a), map.forward(&self.side_b))
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, repeated edges and ids `>= n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut neighbors = vec![Vec::new(); n];
        let mut adjacency = vec![VertexSet::with_universe(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidFamily(format!("self-loop at {u}")));
            }
            if !adjacency[u].insert(v) {
                return Err(Error::InvalidFamily(format!("duplicate edge {u}-{v}")));
            }
            adjacency[v].insert(u);
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Graph {
            neighbors,
            adjacency,
            labels: None,
            edge_count: edges.len(),
        })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, &[]).expect("edgeless graph is valid")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::InvalidFamily(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn adjacency(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].contains(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label, or the decimal id.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.label(v)).collect()
    }

    pub fn vertex_by_label(&self, label: &str) -> Result<usize> {
        let found = match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&v| v < self.n()),
        };
        found.ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        labels
            .iter()
            .map(|l| self.vertex_by_label(l.as_ref()))
            .collect()
    }

    pub fn check_subset(&self, x: &VertexSet) -> Result<()> {
        match x.last() {
            Some(v) if v >= self.n() => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// `N(x)` (or `N[x]` when `closed`). The open neighborhood may meet `x`.
    pub fn neighborhood(&self, x: &VertexSet, closed: bool) -> Result<VertexSet> {
        self.check_subset(x)?;
        let mut out = self.open_nbhd(x);
        if closed {
            out.union_with(x);
        }
        Ok(out)
    }

    /// `|x| - |N(x)|` with the open neighborhood.
    pub fn difference(&self, x: &VertexSet) -> Result<i64> {
        self.check_subset(x)?;
        Ok(self.diff(x))
    }

    pub fn is_independent(&self, x: &VertexSet) -> Result<bool> {
        self.check_subset(x)?;
        Ok(self.independent(x))
    }

    pub(crate) fn open_nbhd(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::with_universe(self.n());
        for v in x {
            out.union_with(&self.adjacency[v]);
        }
        out
    }

    pub(crate) fn diff(&self, x: &VertexSet) -> i64 {
        x.len() as i64 - self.open_nbhd(x).len() as i64
    }

    pub(crate) fn independent(&self, x: &VertexSet) -> bool {
        x.iter().all(|v| self.adjacency[v].is_disjoint(x))
    }

    /// `G - w`: the subgraph induced on the remaining vertices, renumbered
    /// in increasing id order.
    pub fn delete_vertices(&self, w: &VertexSet) -> Result<(Graph, IdMap)> {
        self.check_subset(w)?;
        Ok(self.without(w))
    }

    pub(crate) fn without(&self, w: &VertexSet) -> (Graph, IdMap) {
        let n = self.n();
        let mut old_to_new = vec![None; n];
        let mut new_to_old = Vec::with_capacity(n);
        for v in 0..n {
            if !w.contains(v) {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter_map(|(u, v)| Some((old_to_new[u]?, old_to_new[v]?)))
            .collect();
        let mut g = Graph::from_edges(new_to_old.len(), &edges).expect("induced subgraph is simple");
        if let Some(labels) = &self.labels {
            g.labels = Some(new_to_old.iter().map(|&v| labels[v].clone()).collect());
        }
        (g, IdMap { old_to_new, new_to_old })
    }

    /// The same graph without the edge `uv` (unchanged if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter(|&e| e != (u.min(v), u.max(v)))
            .collect();
        let mut g = Graph::from_edges(self.n(), &edges).expect("subgraph is simple");
        g.labels = self.labels.clone();
        g
    }

    /// Two-coloring by breadth-first layering; each component's smallest
    /// vertex goes to side A. `None` if there is an odd cycle.
    pub fn bipartition(&self) -> Option<BipartitePartition> {
        let n = self.n();
        let mut color: Vec<Option<Side>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(Side::A);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are colored");
                for &v in &self.neighbors[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(cu.other());
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let side_a = (0..n).filter(|&v| color[v] == Some(Side::A)).collect();
        let side_b = (0..n).filter(|&v| color[v] == Some(Side::B)).collect();
        Some(BipartitePartition::new(side_a, side_b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Connected components, each as a vertex set, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = VertexSet::with_universe(n);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Adjacency rows as machine words, when `n <= 64`.
    pub(crate) fn adjacency_bits(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adjacency
                .iter()
                .map(|s| s.bits().expect("n <= 64"))
                .collect(),
        )
    }

    /// A stable 64-bit fingerprint of `(n, edge list)` (FNV-1a).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        feed(self.n() as u64);
        for (u, v) in self.edges() {
            feed(u as u64);
            feed(v as u64);
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn neighborhoods_on_c4() {
        let g = c4();
        assert_eq!(g.neighborhood(&set(&[0]), true).unwrap(), set(&[0, 1, 3]));
        assert_eq!(g.neighborhood(&set(&[0]), false).unwrap(), set(&[1, 3]));
        assert_eq!(g.neighborhood(&VertexSet::new(), false).unwrap(), VertexSet::new());
        // open neighborhood of a non-independent set meets the set
        assert_eq!(g.neighborhood(&set(&[0, 1]), false).unwrap(), set(&[0, 1, 2, 3]));
        assert!(g.neighborhood(&set(&[4]), false).is_err());
    }

    #[test]
    fn difference_basics() {
        assert_eq!(Graph::empty(1).difference(&set(&[0])).unwrap(), 1);
        assert_eq!(c4().difference(&VertexSet::new()).unwrap(), 0);
        assert_eq!(c4().difference(&set(&[0, 2])).unwrap(), 0);
        assert_eq!(c4().difference(&set(&[0, 1, 2, 3])).unwrap(), 0);
    }

    #[test]
    fn independence() {
        let g = c4();
        assert!(g.is_independent(&VertexSet::new()).unwrap());
        assert!(g.is_independent(&set(&[0, 2])).unwrap());
        assert!(!g.is_independent(&set(&[0, 1])).unwrap());
    }

    #[test]
    fn deleting_from_c4_gives_p3() {
        let (h, map) = c4().delete_vertices(&set(&[0])).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(map.new_to_old, vec![1, 2, 3]);
        assert_eq!(map.old_to_new[0], None);

        let (same, id) = c4().delete_vertices(&VertexSet::new()).unwrap();
        assert_eq!(same, c4());
        assert_eq!(id, IdMap::identity(4));
    }

    #[test]
    fn bipartition_of_c4_and_k3() {
        let p = c4().bipartition().unwrap();
        assert_eq!(p.side_a, set(&[0, 2]));
        assert_eq!(p.side_b, set(&[1, 3]));
        p.validate(&c4()).unwrap();
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k3.bipartition().is_none());
    }

    #[test]
    fn bipartition_per_component() {
        // components {0,3} and {1,2}: smallest vertex of each goes to A
        let g = Graph::from_edges(4, &[(0, 3), (2, 1)]).unwrap();
        let p = g.bipartition().unwrap();
        assert_eq!(p.side_a, set(&[0, 1]));
        assert_eq!(g.components(), vec![set(&[0, 3]), set(&[1, 2])]);
    }

    #[test]
    fn validate_rejects_non_crossing_edges() {
        let g = c4();
        let bad = BipartitePartition::new(set(&[0, 1]), set(&[2, 3]));
        assert!(matches!(bad.validate(&g), Err(Error::InvalidPartition(_))));
        let short = BipartitePartition::new(set(&[0]), set(&[1, 3]));
        assert!(short.validate(&g).is_err());
    }
}
