//! Seeded random test graphs. Everything here is a pure function of the
//! seed, so sweeps are reproducible byte for byte.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphs::{Graph, VertexSet};

pub const DEFAULT_SEED: u64 = 20_130_917;
pub const CORPUS_SIZE: usize = 25;
pub const PAIR_COUNT: usize = 10;

/// Random connected graph on `n` vertices: a random spanning tree plus
/// each remaining pair with probability `density`.
pub fn random_connected(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        edges.push((parent.min(order[k]), parent.max(order[k])));
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if !edges.contains(&(a, b)) && rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    Graph::new(n, &edges).expect("generated edges are simple")
}

/// `count` connected graphs with `min_n <= n <= max_n`.
pub fn random_corpus(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            let density = rng.gen_range(0.1..0.7);
            random_connected(&mut rng, n, density)
        })
        .collect()
}

/// The 25-graph corpus on 2 to 5 vertices.
pub fn default_corpus(seed: u64) -> Vec<Graph> {
    random_corpus(seed, CORPUS_SIZE, 2, 5)
}

/// A graph together with a vertex subset to restrict to.
#[derive(Debug, Clone)]
pub struct InducedPair {
    pub graph: Graph,
    pub subset: VertexSet,
}

impl InducedPair {
    pub fn induced(&self) -> Graph {
        self.graph.induced_subgraph(self.subset).expect("subset is nonempty and in range")
    }
}

/// `count` pairs `(G, W)` with `3 <= n <= 5` and `2 <= |W| < n`.
pub fn induced_pairs(seed: u64, count: usize) -> Vec<InducedPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=5);
            let density = rng.gen_range(0.2..0.8);
            let graph = random_connected(&mut rng, n, density);
            let size = rng.gen_range(2..n);
            let mut verts: Vec<usize> = (1..=n).collect();
            verts.shuffle(&mut rng);
            let subset = verts[..size].iter().copied().collect();
            InducedPair { graph, subset }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_connected() {
        let a = default_corpus(DEFAULT_SEED);
        let b = default_corpus(DEFAULT_SEED);
        assert_eq!(a.len(), CORPUS_SIZE);
        for (g, h) in a.iter().zip(&b) {
            assert_eq!(g.edges(), h.edges());
            assert!(g.is_connected());
            assert!((2..=5).contains(&g.n()));
        }
        let c = default_corpus(DEFAULT_SEED + 1);
        assert!(a.iter().zip(&c).any(|(g, h)| g.n() != h.n() || g.edges() != h.edges()));
    }

    #[test]
    fn pairs_are_proper_subsets() {
        let pairs = induced_pairs(DEFAULT_SEED, PAIR_COUNT);
        assert_eq!(pairs.len(), PAIR_COUNT);
        for p in &pairs {
            let k = p.subset.len();
            assert!(k >= 2 && k < p.graph.n());
            assert!(p.subset.is_subset(p.graph.vertices()));
            assert_eq!(p.induced().n(), k);
        }
    }
}
