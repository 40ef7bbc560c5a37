//! Deterministic graph families and the exhaustive labeled-graph stream.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` accepted by [`exhaustive`].
pub const EXHAUSTIVE_MAX_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Empty { n: usize },
    Gnp { n: usize, p: f64, seed: u64 },
    RandomBipartite { a: usize, b: usize, p: f64, seed: u64 },
}

/// Generator for the `index`-th member of a seeded stream, reproducible in
/// isolation.
pub fn keyed_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidFamily(format!("p = {p} outside [0, 1]")))
    }
}

/// `G(n, p)` drawn from `rng`, pairs visited in lexicographic order.
pub fn gnp_with(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    check_p(p)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn generate(family: &Family) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = match *family {
        Family::Path { n } => (1..n).map(|v| (v - 1, v)).collect(),
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::InvalidFamily(format!("cycle needs n >= 3, got {n}")));
            }
            (0..n).map(|v| (v, (v + 1) % n)).collect()
        }
        Family::Complete { n } => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        Family::CompleteBipartite { a, b } => (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect(),
        Family::Empty { .. } => Vec::new(),
        Family::Gnp { n, p, seed } => return gnp_with(n, p, &mut keyed_rng(seed, 0)),
        Family::RandomBipartite { a, b, p, seed } => {
            check_p(p)?;
            let mut rng = keyed_rng(seed, 0);
            let mut edges = Vec::new();
            for u in 0..a {
                for v in a..a + b {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
    };
    let n = match *family {
        Family::Path { n }
        | Family::Cycle { n }
        | Family::Complete { n }
        | Family::Empty { n }
        | Family::Gnp { n, .. } => n,
        Family::CompleteBipartite { a, b } | Family::RandomBipartite { a, b, .. } => a + b,
    };
    Graph::from_edges(n, &edges)
}

/// Every labeled graph on `0..n`, in increasing order of the edge bitmask
/// over lexicographically ordered pairs.
pub fn exhaustive(n: usize) -> Result<Exhaustive> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::LimitExceeded {
            what: "exhaustive enumeration",
            n,
            limit: EXHAUSTIVE_MAX_N,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(Exhaustive {
        n,
        total: 1u64 << pairs.len(),
        pairs,
        next: 0,
    })
}

pub struct Exhaustive {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    total: u64,
}

impl Exhaustive {
    pub fn total(&self) -> u64 {
        self.total
    }

    /// The graph with edge mask `mask`.
    pub fn graph(&self, mask: u64) -> Graph {
        let edges: Vec<_> = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(self.n, &edges).expect("pairs are distinct")
    }
}

impl Iterator for Exhaustive {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.total {
            return None;
        }
        let g = self.graph(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Exhaustive {}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn named_families() {
        let k32 = generate(&Family::CompleteBipartite { a: 3, b: 2 }).unwrap();
        assert_eq!((k32.n(), k32.m()), (5, 6));
        let p = k32.bipartition().unwrap();
        assert_eq!((p.side_a.len(), p.side_b.len()), (3, 2));
        assert_eq!(generate(&Family::Cycle { n: 5 }).unwrap().m(), 5);
        assert_eq!(generate(&Family::Complete { n: 5 }).unwrap().m(), 10);
        assert_eq!(generate(&Family::Path { n: 0 }).unwrap().n(), 0);
        assert!(generate(&Family::Cycle { n: 2 }).is_err());
        assert!(generate(&Family::Gnp { n: 3, p: 1.5, seed: 0 }).is_err());
    }

    #[test]
    fn gnp_is_deterministic() {
        let f = Family::Gnp { n: 10, p: 0.3, seed: 42 };
        let a = generate(&f).unwrap();
        let b = generate(&f).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        let c = generate(&Family::Gnp { n: 10, p: 0.3, seed: 43 }).unwrap();
        assert_ne!(a.edges().collect::<Vec<_>>(), c.edges().collect::<Vec<_>>());
    }

    #[test]
    fn keyed_streams_are_independent_of_order() {
        let x: u64 = keyed_rng(7, 3).random();
        let _: u64 = keyed_rng(7, 2).random();
        assert_eq!(x, keyed_rng(7, 3).random::<u64>());
        assert_ne!(x, keyed_rng(7, 4).random::<u64>());
    }

    #[test]
    fn random_bipartite_is_bipartite() {
        let g = generate(&Family::RandomBipartite { a: 6, b: 7, p: 0.5, seed: 1 }).unwrap();
        assert!(g.is_bipartite());
    }

    #[test]
    fn exhaustive_counts_without_duplicates() {
        for n in 0..=5 {
            let stream = exhaustive(n).unwrap();
            let want = 1u64 << (n * n.saturating_sub(1) / 2);
            assert_eq!(stream.total(), want);
            let seen: HashSet<Vec<(usize, usize)>> =
                stream.map(|g| g.edges().collect()).collect();
            assert_eq!(seen.len() as u64, want);
        }
        assert_eq!(exhaustive(3).unwrap().count(), 8);
        assert!(exhaustive(8).is_err());
    }
}
